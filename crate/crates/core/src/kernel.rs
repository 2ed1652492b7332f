//! Truncated Gaussian kernels and separable zero-padded convolution.
//!
//! The kernel is the unnormalized similarity `exp(-d^2 / (2 sigma^2))`, so the
//! centre weight is exactly 1. Two axis passes over the grid reproduce the full
//! 2D stamp `w(dx) * w(dy)` inside the truncation square.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::ScalarGrid;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    sigma: f64,
    radius: usize,
    weights: Vec<f64>,
}

impl Kernel {
    /// `radius = None` truncates at `ceil(3 * sigma)` cells.
    pub fn new(sigma: f64, radius: Option<usize>) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "kernel sigma must be positive and finite, got {sigma}"
            )));
        }
        let radius = match radius {
            Some(0) => {
                return Err(Error::InvalidParameter("kernel radius must be >= 1".into()))
            }
            Some(r) => r,
            None => ((3.0 * sigma).ceil() as usize).max(1),
        };
        let denom = 2.0 * sigma * sigma;
        let weights: Vec<f64> = (0..=2 * radius)
            .map(|i| {
                let d = i as f64 - radius as f64;
                (-(d * d) / denom).exp()
            })
            .collect();
        if weights[0] <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "radius {radius} is too wide for sigma {sigma}: edge weights underflow"
            )));
        }
        Ok(Kernel {
            sigma,
            radius,
            weights,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Axis weights, length `2 * radius + 1`, centre weight 1.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weight for a signed axis offset; zero outside the truncation radius.
    pub fn weight(&self, offset: isize) -> f64 {
        let r = self.radius as isize;
        if offset.abs() > r {
            0.0
        } else {
            self.weights[(offset + r) as usize]
        }
    }

    pub fn heap_bytes(&self) -> usize {
        self.weights.capacity() * std::mem::size_of::<f64>()
    }
}

/// Shorthand for [`Kernel::new`].
pub fn build_kernel(sigma: f64, radius: Option<usize>) -> Result<Kernel> {
    Kernel::new(sigma, radius)
}

/// Convolves `grid` with the separable 2D kernel, treating cells beyond the
/// border as zero. Output has the input's dimensions.
pub fn convolve(grid: &ScalarGrid, kernel: &Kernel) -> ScalarGrid {
    let (w, h) = grid.dims();
    let r = kernel.radius() as isize;
    let weights = kernel.weights();
    let src = grid.values();

    let mut rows = vec![0.0; w * h];
    for y in 0..h {
        let line = &src[y * w..(y + 1) * w];
        let out = &mut rows[y * w..(y + 1) * w];
        for (x, o) in out.iter_mut().enumerate() {
            let lo = (x as isize - r).max(0) as usize;
            let hi = ((x as isize + r) as usize).min(w - 1);
            let mut acc = 0.0;
            for (j, v) in line[lo..=hi].iter().enumerate() {
                acc += v * weights[(lo + j + r as usize) - x];
            }
            *o = acc;
        }
    }

    let mut out = ScalarGrid::zeros(w, h).expect("dimensions already validated");
    let dst = out.values_mut();
    for y in 0..h {
        let lo = (y as isize - r).max(0) as usize;
        let hi = ((y as isize + r) as usize).min(h - 1);
        let row_out = &mut dst[y * w..(y + 1) * w];
        for yy in lo..=hi {
            let k = weights[(yy + r as usize) - y];
            let row_in = &rows[yy * w..(yy + 1) * w];
            for (o, v) in row_out.iter_mut().zip(row_in) {
                *o += k * v;
            }
        }
    }
    out
}
