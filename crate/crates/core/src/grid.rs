//! Dense row-major scalar grids over level cells.
//!
//! Grids back every field in the model: occupancy, heat, confidence,
//! uncertainty and acquisition. Values are finite, with one exception: the
//! acquisition field marks masked cells with `f64::INFINITY` so they can never
//! win an argmin. NaN is never stored.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cell coordinate. `x` is the column, `y` the row (row 0 is the top/north edge).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub x: usize,
    pub y: usize,
}

impl Cell {
    pub const fn new(x: usize, y: usize) -> Self {
        Cell { x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarGrid {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl ScalarGrid {
    pub fn zeros(width: usize, height: usize) -> Result<Self> {
        Self::filled(width, height, 0.0)
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter(format!(
                "grid dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        if value.is_nan() {
            return Err(Error::InvalidParameter("grid fill value is NaN".into()));
        }
        Ok(ScalarGrid {
            width,
            height,
            values: vec![value; width * height],
        })
    }

    /// Builds a grid from row-major values. All values must be finite.
    pub fn from_vec(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter(format!(
                "grid dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        if values.len() != width * height {
            return Err(Error::InvalidParameter(format!(
                "expected {} values for a {width}x{height} grid, got {}",
                width * height,
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite value {} at index {i}",
                values[i]
            )));
        }
        Ok(ScalarGrid {
            width,
            height,
            values,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    #[inline]
    pub fn contains(&self, cell: Cell) -> bool {
        cell.x < self.width && cell.y < self.height
    }

    #[inline]
    pub fn index(&self, cell: Cell) -> usize {
        cell.y * self.width + cell.x
    }

    #[inline]
    pub fn cell_at(&self, index: usize) -> Cell {
        Cell::new(index % self.width, index / self.width)
    }

    #[inline]
    pub fn get(&self, cell: Cell) -> f64 {
        self.values[self.index(cell)]
    }

    /// Panics on out-of-bounds cells and non-finite values.
    #[inline]
    pub fn set(&mut self, cell: Cell, value: f64) {
        assert!(value.is_finite(), "grid values must be finite");
        let i = self.index(cell);
        self.values[i] = value;
    }

    pub fn check_cell(&self, cell: Cell) -> Result<()> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(Error::InvalidCell {
                x: cell.x,
                y: cell.y,
                width: self.width,
                height: self.height,
            })
        }
    }

    pub(crate) fn check_dims(&self, other: (usize, usize)) -> Result<()> {
        if self.dims() == other {
            Ok(())
        } else {
            Err(Error::Shape {
                expected: self.dims(),
                found: other,
            })
        }
    }

    /// Largest value, ignoring infinities. `None` when no finite value exists.
    pub fn max_finite(&self) -> Option<f64> {
        self.values
            .iter()
            .copied()
            .filter(|v| v.is_finite())
            .fold(None, |acc, v| Some(acc.map_or(v, |m: f64| m.max(v))))
    }

    pub fn min_finite(&self) -> Option<f64> {
        self.values
            .iter()
            .copied()
            .filter(|v| v.is_finite())
            .fold(None, |acc, v| Some(acc.map_or(v, |m: f64| m.min(v))))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> ScalarGrid {
        ScalarGrid {
            width: self.width,
            height: self.height,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Heap bytes held by the value buffer.
    pub fn heap_bytes(&self) -> usize {
        self.values.capacity() * std::mem::size_of::<f64>()
    }

    /// CSV text: one line per grid row, comma-separated, shortest round-trip floats.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.values.len() * 4);
        for row in self.values.chunks(self.width) {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut width = None;
        let mut height = 0;
        for (row, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut n = 0;
            for (col, field) in line.split(',').enumerate() {
                let v: f64 = field.trim().parse().map_err(|_| Error::Parse {
                    row,
                    col,
                    msg: format!("not a number: {field:?}"),
                })?;
                values.push(v);
                n += 1;
            }
            match width {
                None => width = Some(n),
                Some(w) if w != n => {
                    return Err(Error::Parse {
                        row,
                        col: n,
                        msg: format!("row has {n} fields, expected {w}"),
                    })
                }
                _ => {}
            }
            height += 1;
        }
        ScalarGrid::from_vec(width.unwrap_or(0), height, values)
    }

    /// 8-bit ASCII PGM (P2). Finite values are min-max scaled to 0..=255;
    /// infinite cells are written as 0. A constant grid maps to 255 when its
    /// value is positive and to 0 otherwise.
    pub fn to_pgm(&self) -> String {
        let lo = self.min_finite().unwrap_or(0.0);
        let hi = self.max_finite().unwrap_or(0.0);
        let span = hi - lo;
        let mut out = format!("P2\n{} {}\n255\n", self.width, self.height);
        for row in self.values.chunks(self.width) {
            for (i, &v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                let level = if !v.is_finite() {
                    0
                } else if span > 0.0 {
                    (((v - lo) / span) * 255.0).round() as u8
                } else if v > 0.0 {
                    255
                } else {
                    0
                };
                write!(out, "{level}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}
