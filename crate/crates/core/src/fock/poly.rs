//! Exact polynomials on ℂ^{r×s} with Gaussian-rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{factorial, format_gq, gq_real, gq_zero, scale_gq, GQ, Q};

/// A matrix of Gaussian rationals, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GQ>,
}

impl GaussMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GQ>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}×{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![gq_zero(); rows * cols] }
    }

    /// The matrix unit e_ij (0-based).
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.entries[i * cols + j] = gq_real(Q::one());
        m
    }

    /// e_11 + … + e_ii.
    pub fn diagonal_tripotent(rows: usize, cols: usize, i: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for d in 0..i.min(rows).min(cols) {
            m.entries[d * cols + d] = gq_real(Q::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[GQ] {
        &self.entries
    }
    pub fn get(&self, i: usize, j: usize) -> &GQ {
        &self.entries[i * self.cols + j]
    }
}

/// Σ c_A z^A where A runs over r×s exponent matrices (flattened row-major).
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPoly {
    rows: usize,
    cols: usize,
    terms: BTreeMap<Vec<u32>, GQ>,
}

impl MatrixPoly {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, terms: BTreeMap::new() }
    }

    pub fn constant(rows: usize, cols: usize, c: GQ) -> Self {
        let mut p = Self::zero(rows, cols);
        if !c.is_zero() {
            p.terms.insert(vec![0; rows * cols], c);
        }
        p
    }

    pub fn one(rows: usize, cols: usize) -> Self {
        Self::constant(rows, cols, gq_real(Q::one()))
    }

    /// The coordinate z_ij (0-based).
    pub fn var(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        Self::monomial(rows, cols, unit_exponent(rows, cols, i, j), gq_real(Q::one()))
    }

    pub fn monomial(rows: usize, cols: usize, exps: Vec<u32>, c: GQ) -> Self {
        debug_assert_eq!(exps.len(), rows * cols);
        let mut p = Self::zero(rows, cols);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(rows: usize, cols: usize, terms: impl IntoIterator<Item = (Vec<u32>, GQ)>) -> Result<Self> {
        let mut p = Self::zero(rows, cols);
        for (e, c) in terms {
            if e.len() != rows * cols {
                return Err(Error::InvalidArgument(format!(
                    "exponent of length {} for shape {rows}×{cols}",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// v*(z) = (z|v) = Σ conj(v_ij) z_ij.
    pub fn linear_form(v: &GaussMatrix) -> Self {
        let mut p = Self::zero(v.rows(), v.cols());
        for i in 0..v.rows() {
            for j in 0..v.cols() {
                p.add_term(unit_exponent(v.rows(), v.cols(), i, j), v.get(i, j).conj());
            }
        }
        p
    }

    /// det z for square shapes.
    pub fn determinant(n: usize) -> Self {
        let mut p = Self::zero(n, n);
        for (perm, sign) in permutations_with_sign(n) {
            let mut e = vec![0u32; n * n];
            for (i, &j) in perm.iter().enumerate() {
                e[i * n + j] = 1;
            }
            p.add_term(e, gq_real(Q::from_integer(sign.into())));
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: Vec<u32>, c: GQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, GQ> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> GQ {
        self.terms.get(e).cloned().unwrap_or_else(gq_zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn homogeneous_part(&self, n: u32) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == n)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn truncate(&self, max_degree: u32) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn check_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::InvalidArgument(format!(
                "shape mismatch: {}×{} vs {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn scale(&self, s: &GQ) -> Self {
        let mut out = Self::zero(self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect();
        out
    }

    pub fn scale_q(&self, s: &Q) -> Self {
        let mut out = Self::zero(self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), scale_gq(s, c))).collect();
        out
    }

    /// ∂/∂z_ij.
    pub fn derivative(&self, i: usize, j: usize) -> Self {
        let idx = i * self.cols + j;
        let mut out = Self::zero(self.rows, self.cols);
        for (e, c) in &self.terms {
            if e[idx] > 0 {
                let mut e2 = e.clone();
                e2[idx] -= 1;
                out.add_term(e2, scale_gq(&Q::from_integer(e[idx].into()), c));
            }
        }
        out
    }

    /// ∂_v = Σ v_ij ∂/∂z_ij, the Fischer adjoint of multiplication by v*.
    pub fn directional_derivative(&self, v: &GaussMatrix) -> Self {
        let mut out = Self::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let vij = v.get(i, j);
                if !vij.is_zero() {
                    out = &out + &self.derivative(i, j).scale(vij);
                }
            }
        }
        out
    }

    /// z ↦ conj(p(z̄)): conjugated coefficients.
    pub fn conj_coeffs(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
        }
    }

    pub fn eval(&self, point: &GaussMatrix) -> Result<GQ> {
        if (point.rows(), point.cols()) != (self.rows, self.cols) {
            return Err(Error::InvalidArgument("evaluation point has the wrong shape".into()));
        }
        let mut acc = gq_zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.entries().iter().zip(e) {
                for _ in 0..k {
                    t = &t * x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Row and column sums of an exponent matrix, the torus weight of the monomial.
    pub(crate) fn margins(rows: usize, cols: usize, e: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let mut rs = vec![0u32; rows];
        let mut cs = vec![0u32; cols];
        for i in 0..rows {
            for j in 0..cols {
                rs[i] += e[i * cols + j];
                cs[j] += e[i * cols + j];
            }
        }
        (rs, cs)
    }
}

pub(crate) fn unit_exponent(rows: usize, cols: usize, i: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0u32; rows * cols];
    e[i * cols + j] = 1;
    e
}

pub(crate) fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations_with_sign(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((v, sign));
        }
    }
    out
}

impl Add for &MatrixPoly {
    type Output = MatrixPoly;
    fn add(self, rhs: &MatrixPoly) -> MatrixPoly {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MatrixPoly {
    type Output = MatrixPoly;
    fn sub(self, rhs: &MatrixPoly) -> MatrixPoly {
        self + &(-rhs)
    }
}

impl Neg for &MatrixPoly {
    type Output = MatrixPoly;
    fn neg(self) -> MatrixPoly {
        MatrixPoly {
            rows: self.rows,
            cols: self.cols,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &MatrixPoly {
    type Output = MatrixPoly;
    fn mul(self, rhs: &MatrixPoly) -> MatrixPoly {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let mut out = MatrixPoly::zero(self.rows, self.cols);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

/// α! = ∏ α_ij!.
pub(crate) fn exponent_factorial(e: &[u32]) -> Q {
    Q::from_integer(e.iter().map(|&k| factorial(k)).product())
}

/// (p|q)_F = Σ p_α conj(q_α) α!.
pub fn fischer_pairing(p: &MatrixPoly, q: &MatrixPoly) -> Result<GQ> {
    p.check_shape(q)?;
    let mut acc = gq_zero();
    let (small, large, swap) =
        if p.terms.len() <= q.terms.len() { (p, q, false) } else { (q, p, true) };
    for (e, c) in &small.terms {
        if let Some(d) = large.terms.get(e) {
            let prod = if swap { d * c.conj() } else { c * d.conj() };
            acc += scale_gq(&exponent_factorial(e), &prod);
        }
    }
    Ok(acc)
}

/// ‖p‖²_F.
pub fn fischer_norm_sq(p: &MatrixPoly) -> Q {
    p.terms
        .iter()
        .map(|(e, c)| exponent_factorial(e) * (&c.re * &c.re + &c.im * &c.im))
        .fold(Q::zero(), |a, b| a + b)
}

impl fmt::Display for MatrixPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", format_gq(c))?;
            for (idx, &k) in e.iter().enumerate() {
                if k > 0 {
                    let (i, j) = (idx / self.cols + 1, idx % self.cols + 1);
                    write!(f, "·z{i}{j}")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
