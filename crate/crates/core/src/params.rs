//! Structure constants (r, a, b) of an irreducible hermitian Jordan triple.

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{as_nonneg_int, format_rational, q, Q};

/// Concrete polynomial model: row vectors (r = 1) or r × s matrices (a = 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixShape {
    pub rows: usize,
    pub cols: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureParams {
    r: usize,
    a: Q,
    b: Q,
    d: Q,
    p: Q,
    model: Option<MatrixShape>,
}

impl StructureParams {
    pub fn new(r: usize, a: Q, b: Q) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("rank r must be positive".into()));
        }
        if !a.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "multiplicity a must be positive, got {}",
                format_rational(&a)
            )));
        }
        if b.is_negative() {
            return Err(Error::InvalidParameter(format!(
                "multiplicity b must be nonnegative, got {}",
                format_rational(&b)
            )));
        }
        let rq = q(r as i64);
        let d = &rq + &b * &rq + &a * &rq * (&rq - Q::one()) / q(2);
        let p = q(2) + &a * (&rq - Q::one()) + &b;
        let model = match as_nonneg_int(&b) {
            Some(bi) if r == 1 => Some(MatrixShape { rows: 1, cols: 1 + bi as usize }),
            Some(bi) if a == q(2) => Some(MatrixShape { rows: r, cols: r + bi as usize }),
            _ => None,
        };
        Ok(Self { r, a, b, d, p, model })
    }

    /// Parameters of ℂ^{rows×cols}, rows ≤ cols.
    pub fn matrix(rows: usize, cols: usize) -> Result<Self> {
        if rows > cols {
            return Err(Error::InvalidParameter(format!(
                "matrix model needs rows ≤ cols, got {rows}×{cols}"
            )));
        }
        if rows == 1 {
            return Self::new(1, q(2), q(cols as i64 - 1));
        }
        Self::new(rows, q(2), q((cols - rows) as i64))
    }

    /// The unit ball of ℂ^d.
    pub fn ball(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("ball dimension must be positive".into()));
        }
        Self::matrix(1, d)
    }

    pub fn r(&self) -> usize {
        self.r
    }
    pub fn a(&self) -> &Q {
        &self.a
    }
    pub fn b(&self) -> &Q {
        &self.b
    }
    pub fn d(&self) -> &Q {
        &self.d
    }
    pub fn p(&self) -> &Q {
        &self.p
    }
    pub fn model(&self) -> Option<MatrixShape> {
        self.model
    }

    pub fn d_over_r(&self) -> Q {
        &self.d / q(self.r as i64)
    }

    /// ν_k = d/r + (a/2)(r − k); at k = 0 this is the placeholder p − 1 + a/2.
    pub fn nu_k(&self, k: usize) -> Result<Q> {
        if k > self.r {
            return Err(Error::InvalidArgument(format!("k = {k} exceeds rank {}", self.r)));
        }
        Ok(self.d_over_r() + &self.a / q(2) * q(self.r as i64 - k as i64))
    }

    /// Genus p_k = 2 + a(r − k − 1) + b of the Peirce-0 triple of a rank-k tripotent.
    pub fn genus_k(&self, k: usize) -> Result<Q> {
        if k > self.r {
            return Err(Error::InvalidArgument(format!("k = {k} exceeds rank {}", self.r)));
        }
        Ok(q(2) + &self.a * q(self.r as i64 - k as i64 - 1) + &self.b)
    }

    /// Parameters (r − 1, a, b) of the Peirce-0 triple of a minimal tripotent.
    pub fn reduced(&self) -> Result<Self> {
        if self.r == 1 {
            return Err(Error::InvalidArgument("rank-1 triple has trivial Peirce-0 space".into()));
        }
        Self::new(self.r - 1, self.a.clone(), self.b.clone())
    }

    pub fn w_sub(&self) -> WSub {
        let discrete = (1..=self.r).map(|j| self.nu_k(j).expect("j ≤ r")).collect();
        WSub { discrete, ray_start: &self.p - Q::one() }
    }
}

/// The set {ν_j : 1 ≤ j ≤ r} ∪ (p − 1, ∞).
#[derive(Clone, Debug, PartialEq)]
pub struct WSub {
    pub discrete: Vec<Q>,
    pub ray_start: Q,
}

impl WSub {
    pub fn contains(&self, nu: &Q) -> bool {
        nu > &self.ray_start || self.discrete.iter().any(|x| x == nu)
    }

    pub fn contains_f64(&self, nu: f64, tol: f64) -> bool {
        let start = crate::scalar::to_f64(&self.ray_start);
        nu > start + tol
            || self.discrete.iter().any(|x| (crate::scalar::to_f64(x) - nu).abs() <= tol)
    }
}

impl std::fmt::Display for WSub {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let items: Vec<String> = self.discrete.iter().map(format_rational).collect();
        write!(f, "{{{}}} ∪ ({}, ∞)", items.join(", "), format_rational(&self.ray_start))
    }
}

/// a/2 as an exact rational.
pub(crate) fn half(a: &Q) -> Q {
    a / q(2)
}
