//! Exploration quality metrics. Both coverage and distance-to-uniform are
//! computed over NavMesh-valid cells only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::ScalarGrid;
use crate::surrogate::NavMask;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub coverage: f64,
    pub dist_uniform: f64,
    pub ghost_passes: u64,
    pub steps: u64,
    pub seed: u64,
}

/// Fraction of valid cells visited at least once.
pub fn coverage(occupancy: &ScalarGrid, mask: &NavMask) -> Result<f64> {
    occupancy.check_dims(mask.dims())?;
    let mut valid = 0usize;
    let mut visited = 0usize;
    for (&o, &ok) in occupancy.values().iter().zip(mask.as_slice()) {
        if ok {
            valid += 1;
            if o > 0.0 {
                visited += 1;
            }
        }
    }
    if valid == 0 {
        return Err(Error::EmptyMask);
    }
    Ok(visited as f64 / valid as f64)
}

/// Total-variation distance between the heat distribution over valid cells
/// and the uniform distribution over the same cells.
pub fn distance_to_uniform(heat: &ScalarGrid, mask: &NavMask) -> Result<f64> {
    heat.check_dims(mask.dims())?;
    let (n, total) = heat
        .values()
        .iter()
        .zip(mask.as_slice())
        .filter(|(_, &ok)| ok)
        .fold((0usize, 0.0f64), |(n, t), (&h, _)| (n + 1, t + h));
    if n == 0 {
        return Err(Error::EmptyMask);
    }
    if !(total > 0.0) {
        return Err(Error::UndefinedDistribution);
    }
    // 0.5 * sum |h/T - 1/N| rewritten over a common denominator; with count
    // data every numerator term is an exact integer.
    let n_f = n as f64;
    let sum: f64 = heat
        .values()
        .iter()
        .zip(mask.as_slice())
        .filter(|(_, &ok)| ok)
        .map(|(&h, _)| (h * n_f - total).abs())
        .sum();
    Ok(sum / (2.0 * n_f * total))
}

pub fn normalize_vs_baseline(metric: f64, baseline: f64) -> Result<f64> {
    if baseline == 0.0 {
        return Err(Error::DivideByZero);
    }
    if !(baseline > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "baseline metric must be positive, got {baseline}"
        )));
    }
    Ok(metric / baseline)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(w: usize, h: usize, v: Vec<f64>) -> ScalarGrid {
        ScalarGrid::from_vec(w, h, v).unwrap()
    }

    #[test]
    fn coverage_ratios() {
        let mask = NavMask::all_valid(5, 4).unwrap();
        let mut occ = vec![0.0; 20];
        for v in occ.iter_mut().take(5) {
            *v = 1.0;
        }
        assert_eq!(coverage(&grid(5, 4, occ), &mask).unwrap(), 0.25);
        assert_eq!(coverage(&grid(5, 4, vec![1.0; 20]), &mask).unwrap(), 1.0);
        assert_eq!(coverage(&grid(5, 4, vec![0.0; 20]), &mask).unwrap(), 0.0);
    }

    #[test]
    fn coverage_ignores_invalid_cells() {
        let mask = NavMask::new(2, 2, vec![true, false, true, false]).unwrap();
        let occ = grid(2, 2, vec![1.0, 1.0, 0.0, 1.0]);
        assert_eq!(coverage(&occ, &mask).unwrap(), 0.5);
        assert!(coverage(&ScalarGrid::zeros(3, 3).unwrap(), &mask).is_err());
    }

    #[test]
    fn distance_examples() {
        let mask = NavMask::all_valid(2, 2).unwrap();
        assert_eq!(distance_to_uniform(&grid(2, 2, vec![3.0; 4]), &mask).unwrap(), 0.0);
        assert_eq!(
            distance_to_uniform(&grid(2, 2, vec![5.0, 0.0, 0.0, 0.0]), &mask).unwrap(),
            0.75
        );
        assert!(matches!(
            distance_to_uniform(&ScalarGrid::zeros(2, 2).unwrap(), &mask),
            Err(Error::UndefinedDistribution)
        ));
    }

    #[test]
    fn heat_on_invalid_cells_is_ignored() {
        let mask = NavMask::new(3, 1, vec![true, true, false]).unwrap();
        let d = distance_to_uniform(&grid(3, 1, vec![1.0, 1.0, 50.0]), &mask).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn normalization() {
        assert!((normalize_vs_baseline(0.63, 0.25).unwrap() - 2.52).abs() < 1e-12);
        assert_eq!(normalize_vs_baseline(0.4, 0.4).unwrap(), 1.0);
        assert!((normalize_vs_baseline(0.12, 0.30).unwrap() - 0.4).abs() < 1e-12);
        assert!(matches!(normalize_vs_baseline(1.0, 0.0), Err(Error::DivideByZero)));
    }

    proptest! {
        #[test]
        fn scale_invariant(v in prop::collection::vec(0.0f64..10.0, 16), k in 0.01f64..100.0) {
            prop_assume!(v.iter().sum::<f64>() > 0.0);
            let mask = NavMask::all_valid(4, 4).unwrap();
            let a = distance_to_uniform(&grid(4, 4, v.clone()), &mask).unwrap();
            let b = distance_to_uniform(&grid(4, 4, v.iter().map(|x| x * k).collect()), &mask).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&a));
        }

        #[test]
        fn single_cell_mass(n in 1usize..64, at in any::<prop::sample::Index>(), mass in 0.1f64..1e6) {
            let mut v = vec![0.0; n];
            v[at.index(n)] = mass;
            let mask = NavMask::all_valid(n, 1).unwrap();
            let d = distance_to_uniform(&grid(n, 1, v), &mask).unwrap();
            prop_assert!((d - (n as f64 - 1.0) / n as f64).abs() < 1e-12);
        }

        #[test]
        fn single_count_is_exact(n in 1usize..4096, count in 1u32..1000) {
            let mut v = vec![0.0; n];
            v[n - 1] = count as f64;
            let mask = NavMask::all_valid(n, 1).unwrap();
            let d = distance_to_uniform(&grid(n, 1, v), &mask).unwrap();
            prop_assert_eq!(d, (n as f64 - 1.0) / n as f64);
        }
    }
}
