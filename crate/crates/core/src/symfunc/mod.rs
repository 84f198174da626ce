//! Symmetric polynomials in the monomial basis.

mod jack;
mod schur;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::params::StructureParams;
use crate::partition::Partition;
use crate::scalar::{binomial, to_f64, Q};

pub use jack::{jack_spherical, laplace_coefficient};
pub use schur::{kostka, principal_spec, schur};

/// Σ c_ν m_ν in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SymPoly {
    nvars: usize,
    coeffs: BTreeMap<Partition, Q>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, coeffs: BTreeMap::new() }
    }

    pub fn monomial(nu: Partition, nvars: usize) -> Result<Self> {
        if nu.len() > nvars {
            return Err(Error::InvalidArgument(format!("{nu} has more than {nvars} parts")));
        }
        let mut p = Self::zero(nvars);
        p.coeffs.insert(nu, Q::one());
        Ok(p)
    }

    pub(crate) fn from_map(nvars: usize, mut coeffs: BTreeMap<Partition, Q>) -> Self {
        coeffs.retain(|_, c| !c.is_zero());
        Self { nvars, coeffs }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, nu: &Partition) -> Q {
        self.coeffs.get(nu).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::from_map(self.nvars, self.coeffs.iter().map(|(k, v)| (k.clone(), v * s)).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.coeffs.clone();
        for (k, v) in &other.coeffs {
            *out.entry(k.clone()).or_insert_with(Q::zero) += v;
        }
        Ok(Self::from_map(self.nvars, out))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let a = self.expand();
        let b = other.expand();
        let mut prod: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *prod.entry(e).or_insert_with(Q::zero) += ca * cb;
            }
        }
        Ok(Self::collect(self.nvars, &prod))
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::InvalidArgument(format!(
                "variable count mismatch: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    /// Full expansion into exponent vectors of length `nvars`.
    pub fn expand(&self) -> BTreeMap<Vec<u32>, Q> {
        let mut out = BTreeMap::new();
        for (nu, c) in &self.coeffs {
            for e in distinct_permutations(&nu.padded(self.nvars)) {
                out.insert(e, c.clone());
            }
        }
        out
    }

    /// Reads off monomial coefficients of a symmetric polynomial given in expanded form.
    pub fn collect(nvars: usize, expanded: &BTreeMap<Vec<u32>, Q>) -> Self {
        let coeffs = expanded
            .iter()
            .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
            .map(|(e, c)| (Partition::from_sorted(e.clone()), c.clone()))
            .collect();
        Self::from_map(nvars, coeffs)
    }

    pub fn eval_exact(&self, point: &[Q]) -> Result<Q> {
        self.check_point(point.len())?;
        let mut acc = Q::zero();
        for (e, c) in self.expand() {
            let mut t = c;
            for (x, &k) in point.iter().zip(&e) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        self.check_point(point.len())?;
        Ok(self.compile().eval_unchecked(point))
    }

    fn check_point(&self, len: usize) -> Result<()> {
        if len != self.nvars {
            return Err(Error::InvalidArgument(format!(
                "point has {len} coordinates, polynomial has {} variables",
                self.nvars
            )));
        }
        Ok(())
    }

    /// Floating-point evaluator with precomputed terms, for repeated evaluation.
    pub fn compile(&self) -> CompiledPoly {
        let terms = self
            .expand()
            .into_iter()
            .map(|(e, c)| (e, to_f64(&c)))
            .collect::<Vec<_>>();
        let max_deg = terms.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0);
        CompiledPoly { nvars: self.nvars, max_deg: max_deg as usize, terms }
    }
}

#[derive(Clone, Debug)]
pub struct CompiledPoly {
    nvars: usize,
    max_deg: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl CompiledPoly {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.nvars {
            return Err(Error::InvalidArgument("point length mismatch".into()));
        }
        Ok(self.eval_unchecked(point))
    }

    fn eval_unchecked(&self, point: &[f64]) -> f64 {
        let stride = self.max_deg + 1;
        let mut powers = vec![1.0; self.nvars * stride];
        for (v, &x) in point.iter().enumerate() {
            for k in 1..stride {
                powers[v * stride + k] = powers[v * stride + k - 1] * x;
            }
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().enumerate().fold(*c, |acc, (v, &k)| acc * powers[v * stride + k as usize])
            })
            .sum()
    }
}

/// Distinct permutations of a multiset, in lexicographic order.
pub fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// dim P_µ(V) for the ball (r = 1) and the matrix triples (a = 2).
pub fn dim_isotype(mu: &Partition, params: &StructureParams) -> Result<u64> {
    let shape = params.model().ok_or_else(|| {
        Error::Unsupported("isotype dimensions need a concrete polynomial model".into())
    })?;
    if mu.len() > shape.rows {
        return Ok(0);
    }
    let dim = if shape.rows == 1 {
        let m = mu.weight() as u64;
        binomial(shape.cols as u64 + m - 1, m)
    } else {
        (principal_spec(mu, shape.rows)? * principal_spec(mu, shape.cols)?).to_integer()
    };
    num_traits::ToPrimitive::to_u64(&dim)
        .ok_or_else(|| Error::Unsupported("isotype dimension overflows u64".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;
    use crate::scalar::{q, qr};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn permutations() {
        assert_eq!(distinct_permutations(&[1, 0, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[2, 1, 0]).len(), 6);
        assert_eq!(distinct_permutations(&[]).len(), 1);
    }

    #[test]
    fn eval_constant_and_monomial() {
        let m = SymPoly::monomial(p(&[2, 1]), 2).unwrap();
        assert_eq!(m.eval_exact(&[q(1), q(1)]).unwrap(), q(2));
        assert_eq!(m.eval_exact(&[q(2), q(3)]).unwrap(), q(4 * 3 + 2 * 9));
        assert!((m.eval(&[2.0, 3.0]).unwrap() - 30.0).abs() < 1e-12);
        let c = SymPoly::monomial(Partition::empty(), 3).unwrap().scale(&qr(5, 2));
        assert_eq!(c.eval_exact(&[q(0), q(0), q(0)]).unwrap(), qr(5, 2));
        assert!(m.eval(&[1.0]).is_err());
    }

    #[test]
    fn dims_of_models() {
        let ball = StructureParams::ball(2).unwrap();
        assert_eq!(dim_isotype(&p(&[1]), &ball).unwrap(), 2);
        assert_eq!(dim_isotype(&p(&[3]), &ball).unwrap(), 4);
        assert_eq!(dim_isotype(&Partition::empty(), &ball).unwrap(), 1);
        let m22 = StructureParams::matrix(2, 2).unwrap();
        assert_eq!(dim_isotype(&p(&[1]), &m22).unwrap(), 4);
        assert_eq!(dim_isotype(&p(&[1, 1]), &m22).unwrap(), 1);
        let generic = StructureParams::new(2, q(1), q(0)).unwrap();
        assert!(dim_isotype(&p(&[1]), &generic).is_err());
    }

    #[test]
    fn dims_fill_polynomial_space() {
        // Σ_{|µ|=n} d_µ = C(n + rs − 1, n) on ℂ^{r×s}
        for (r, s) in [(1, 3), (2, 2), (2, 3), (3, 3)] {
            let params = StructureParams::matrix(r, s).unwrap();
            for n in 0..=5u32 {
                let total: u64 =
                    partitions_of(n, r).iter().map(|mu| dim_isotype(mu, &params).unwrap()).sum();
                let expect = binomial((n as usize + r * s - 1) as u64, n as u64);
                assert_eq!(num_bigint::BigInt::from(total), expect, "{r}×{s} n={n}");
            }
        }
    }
}
