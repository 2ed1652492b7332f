//! Lower-confidence-bound acquisition over the masked cell set.

use rand::Rng;

use crate::error::{Error, Result};
use crate::grid::{Cell, ScalarGrid};
use crate::surrogate::{apply_mask, NavMask};

/// Value written to masked cells of the acquisition field.
pub const MASKED: f64 = f64::INFINITY;

#[derive(Debug, Clone, PartialEq)]
pub struct AcquisitionResult {
    pub field: ScalarGrid,
    pub target: Cell,
    /// Number of valid cells sharing the minimum value.
    pub tie_count: usize,
}

/// `a = f - u` on valid cells, [`MASKED`] elsewhere.
pub fn acquisition_field(f: &ScalarGrid, u: &ScalarGrid, mask: &NavMask) -> Result<ScalarGrid> {
    f.check_dims(u.dims())?;
    f.check_dims(mask.dims())?;
    let values = f
        .values()
        .iter()
        .zip(u.values())
        .map(|(fv, uv)| fv - uv)
        .collect();
    let lcb = ScalarGrid::from_vec(f.width(), f.height(), values)?;
    apply_mask(&lcb, mask, MASKED)
}

/// Picks the valid cell minimizing `a`, breaking exact ties uniformly at random.
pub fn select_target<R: Rng + ?Sized>(
    a: &ScalarGrid,
    mask: &NavMask,
    rng: &mut R,
) -> Result<AcquisitionResult> {
    a.check_dims(mask.dims())?;
    let mut best = f64::INFINITY;
    let mut ties: Vec<usize> = Vec::new();
    for (i, &v) in a.values().iter().enumerate() {
        if !mask.is_valid_index(i) || v.is_nan() || v == MASKED {
            continue;
        }
        if v < best {
            best = v;
            ties.clear();
            ties.push(i);
        } else if v == best {
            ties.push(i);
        }
    }
    if ties.is_empty() {
        // Either no valid cells, or every valid cell carries the sentinel.
        return Err(Error::EmptyMask);
    }
    let pick = if ties.len() == 1 {
        ties[0]
    } else {
        ties[rng.gen_range(0..ties.len())]
    };
    Ok(AcquisitionResult {
        field: a.clone(),
        target: a.cell_at(pick),
        tie_count: ties.len(),
    })
}
