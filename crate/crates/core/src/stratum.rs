//! Strata of the closed sets Ω̄_{k,λ} by singular values.

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_STRATUM_TOL: f64 = 1e-9;

/// i unit singular values, rank j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StratumLabel {
    pub i: usize,
    pub j: usize,
}

impl StratumLabel {
    /// Closure order: `self` lies in the closure of `other`.
    pub fn in_closure_of(&self, other: &StratumLabel) -> bool {
        other.i <= self.i && self.i <= self.j && self.j <= other.j
    }
}

impl std::fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stratum {
    Inside(StratumLabel),
    Outside,
}

/// Classifies descending singular values. Values exactly `tol` away from 1 (or 0)
/// count toward the smaller index.
pub fn classify_stratum(sv: &[f64], k: usize, lambda: usize, tol: f64) -> Result<Stratum> {
    if k > lambda || lambda > sv.len() {
        return Err(Error::InvalidArgument(format!(
            "need k ≤ λ ≤ rank, got k = {k}, λ = {lambda}, rank = {}",
            sv.len()
        )));
    }
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be nonnegative, got {tol}")));
    }
    if sv.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument("singular values must be sorted descending".into()));
    }
    if let Some(bad) = sv.iter().find(|&&s| !(0.0..=1.0 + tol).contains(&s)) {
        return Err(Error::InvalidArgument(format!("singular value {bad} outside [0, 1+tol]")));
    }
    let i = sv.iter().filter(|&&s| 1.0 - s < tol).count();
    let j = sv.iter().filter(|&&s| s > tol).count();
    Ok(if k <= i && i <= j && j <= lambda {
        Stratum::Inside(StratumLabel { i, j })
    } else {
        Stratum::Outside
    })
}

/// All labels (i, j) with k ≤ i ≤ j ≤ λ.
pub fn strata(k: usize, lambda: usize) -> Vec<StratumLabel> {
    (k..=lambda).flat_map(|i| (i..=lambda).map(move |j| StratumLabel { i, j })).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(i: usize, j: usize) -> Stratum {
        Stratum::Inside(StratumLabel { i, j })
    }

    #[test]
    fn examples() {
        let t = DEFAULT_STRATUM_TOL;
        assert_eq!(classify_stratum(&[1.0, 0.5], 1, 2, t).unwrap(), lab(1, 2));
        assert_eq!(classify_stratum(&[1.0, 1.0], 1, 2, t).unwrap(), lab(2, 2));
        assert_eq!(classify_stratum(&[1.0, 0.0], 1, 2, t).unwrap(), lab(1, 1));
        assert_eq!(classify_stratum(&[0.5, 0.0], 1, 2, t).unwrap(), Stratum::Outside);
        assert_eq!(classify_stratum(&[0.9, 0.5, 0.2], 0, 2, t).unwrap(), Stratum::Outside);
    }

    #[test]
    fn tie_goes_to_smaller_index() {
        assert_eq!(classify_stratum(&[0.75, 0.25], 0, 2, 0.25).unwrap(), lab(0, 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(classify_stratum(&[0.2, 0.5], 0, 2, 1e-9).is_err());
        assert!(classify_stratum(&[1.5, 0.5], 0, 2, 1e-9).is_err());
        assert!(classify_stratum(&[0.5, -0.1], 0, 2, 1e-9).is_err());
        assert!(classify_stratum(&[0.5], 0, 2, 1e-9).is_err());
        assert!(classify_stratum(&[0.5, 0.2], 2, 1, 1e-9).is_err());
    }

    #[test]
    fn closure_order() {
        let all = strata(1, 3);
        assert_eq!(all.len(), 6);
        let top = StratumLabel { i: 1, j: 3 };
        assert!(all.iter().all(|l| l.in_closure_of(&top)));
        let center = StratumLabel { i: 1, j: 1 };
        assert!(!StratumLabel { i: 2, j: 2 }.in_closure_of(&center));
        assert!(center.in_closure_of(&StratumLabel { i: 1, j: 2 }));
    }
}
