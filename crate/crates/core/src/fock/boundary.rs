//! Boundary limits along h_c^n = e^{n(z|c)} for the tripotent c = e₁₁.

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::isotype::FockSpace;
use super::poly::MatrixPoly;
use super::toeplitz::{apply, Symbol};
use crate::error::{Error, Result};
use crate::hypergeom::HypergeomType;
use crate::scalar::{gq_real, q, to_f64, Q};

/// Largest admissible relative truncation error of h_c^n in the type norm.
pub const BOUNDARY_TAIL_TOL: f64 = 1e-3;

/// f^{(c)}(ζ) = f(c + ζ) for c = e₁₁ + … + e_ii, ζ in the lower right (rows−i)×(cols−i) block.
pub fn restrict_symbol(f: &MatrixPoly, i: usize) -> Result<MatrixPoly> {
    let (rows, cols) = (f.rows(), f.cols());
    if i > rows.min(cols) {
        return Err(Error::InvalidArgument(format!(
            "tripotent of rank {i} does not fit a {rows}×{cols} model"
        )));
    }
    let (r2, c2) = (rows - i, cols - i);
    let mut out = MatrixPoly::zero(r2, c2);
    'terms: for (e, c) in f.terms() {
        let mut e2 = vec![0u32; r2 * c2];
        for k in 0..rows {
            for l in 0..cols {
                let x = e[k * cols + l];
                if x == 0 {
                    continue;
                }
                if k >= i && l >= i {
                    e2[(k - i) * c2 + (l - i)] = x;
                } else if k != l {
                    continue 'terms;
                }
            }
        }
        out.add_term(e2, c.clone());
    }
    Ok(out)
}

fn restrict(symbol: &Symbol, i: usize) -> Result<Symbol> {
    Ok(match symbol {
        Symbol::Holomorphic(p) => Symbol::Holomorphic(restrict_symbol(p, i)?),
        Symbol::AntiHolomorphic(p) => Symbol::AntiHolomorphic(restrict_symbol(p, i)?),
    })
}

/// Places a polynomial in ζ on the lower right block of ℂ^{rows×cols}.
pub fn embed_peirce_zero(f: &MatrixPoly, rows: usize, cols: usize) -> Result<MatrixPoly> {
    if f.rows() > rows || f.cols() > cols || rows - f.rows() != cols - f.cols() {
        return Err(Error::InvalidArgument(format!(
            "cannot embed a {}×{} block into {rows}×{cols}",
            f.rows(),
            f.cols()
        )));
    }
    let i = rows - f.rows();
    let mut out = MatrixPoly::zero(rows, cols);
    for (e, c) in f.terms() {
        let mut e2 = vec![0u32; rows * cols];
        for k in 0..f.rows() {
            for l in 0..f.cols() {
                e2[(k + i) * cols + (l + i)] = e[k * f.cols() + l];
            }
        }
        out.add_term(e2, c.clone());
    }
    Ok(out)
}

fn ln_rising(x: &Q, s: u32) -> f64 {
    let x = to_f64(x);
    (0..s).map(|k| (x + k as f64).abs().ln()).sum()
}

/// sqrt of (bound on Σ_{s>D} t_s) / Σ_{s≤D} t_s with t_s = n^{2s}/(s!)² ‖z₁₁^s‖²_type.
pub fn tail_bound(ty: &HypergeomType, n: u32, degree: u32) -> Result<f64> {
    let ty = ty.simplified();
    let ln_n = (n.max(1) as f64).ln();
    let ln_t = |s: u32| -> f64 {
        let coef: f64 = ty.x().iter().map(|x| ln_rising(x, s)).sum::<f64>()
            - ty.y().iter().map(|y| ln_rising(y, s)).sum::<f64>();
        2.0 * s as f64 * ln_n - statrs::function::gamma::ln_gamma(s as f64 + 1.0) + coef
    };
    if n == 0 {
        return Ok(0.0);
    }
    let terms: Vec<f64> = (0..=degree).map(ln_t).collect();
    let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let ln_sum = top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln();
    let big_s = degree as f64 + 1.0;
    let (x, y) = (ty.x(), ty.y());
    if y.iter().chain(x).any(|v| to_f64(v) + big_s <= 0.0) {
        return Err(Error::Inconclusive(format!("degree {degree} too small for a monotone tail")));
    }
    let y0 = to_f64(&y[y.len() - 1]);
    let mut rho = (n as f64).powi(2) / (big_s + 1.0) / (y0 + big_s);
    for (xi, yi) in x.iter().zip(y) {
        rho *= ((to_f64(xi) + big_s) / (to_f64(yi) + big_s)).max(1.0);
    }
    if rho >= 1.0 {
        return Ok(f64::INFINITY);
    }
    let ln_tail = ln_t(degree + 1) - (1.0 - rho).ln();
    Ok((0.5 * (ln_tail - ln_sum)).exp())
}

/// Smallest truncation degree whose tail bound is below the admissible tolerance.
pub fn boundary_degree(ty: &HypergeomType, n: u32) -> Result<u32> {
    for d in n..n.saturating_mul(8).max(64) {
        if matches!(tail_bound(ty, n, d), Ok(t) if t < BOUNDARY_TAIL_TOL) {
            return Ok(d);
        }
    }
    Err(Error::Inconclusive(format!("no admissible truncation degree for n = {n}")))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryResidual {
    pub n: u32,
    pub degree: u32,
    pub residual: f64,
    pub tail_bound: f64,
}

/// ‖T(f)(h q) − h·T^c(f^{(c)}) q‖ / ‖h q‖ in the type norm, h the degree-D truncation of e^{n z₁₁}.
///
/// `q` lives on the Peirce-0 block and T^c carries the limit type.
pub fn boundary_residual(
    space: &FockSpace,
    ty: &HypergeomType,
    symbol: &Symbol,
    q_small: &MatrixPoly,
    tripotent_rank: usize,
    n: u32,
    degree: u32,
) -> Result<BoundaryResidual> {
    if tripotent_rank != 1 {
        return Err(Error::Unsupported(format!(
            "boundary residual implemented for c = e₁₁ only, got rank {tripotent_rank}"
        )));
    }
    let (rows, cols) = (space.rows(), space.cols());
    if rows == 0 || (q_small.rows(), q_small.cols()) != (rows - 1, cols - 1) {
        return Err(Error::InvalidArgument("q must live on the Peirce-0 block of e₁₁".into()));
    }
    let tail = tail_bound(ty, n, degree)?;
    if tail >= BOUNDARY_TAIL_TOL {
        return Err(Error::Inconclusive(format!(
            "tail bound {tail:.3e} at degree {degree}, n = {n}; raise the degree"
        )));
    }
    let h = peaking_truncation(rows, cols, n, degree);
    let hq = &h * &embed_peirce_zero(q_small, rows, cols)?;
    let lhs = apply(space, ty, symbol, &hq)?;
    let small = FockSpace::new(rows - 1, cols - 1);
    let limit = ty.limit_type();
    let tq = apply(&small, &limit, &restrict(symbol, 1)?, q_small)?;
    let rhs = &h * &embed_peirce_zero(&tq, rows, cols)?;
    let den = space.type_norm_sq(ty, &hq)?;
    if den.is_zero() {
        return Err(Error::Degenerate("h q has zero type norm".into()));
    }
    let num = space.type_norm_sq(ty, &(&lhs - &rhs))?;
    Ok(BoundaryResidual { n, degree, residual: to_f64(&(num / den)).sqrt(), tail_bound: tail })
}

fn peaking_truncation(rows: usize, cols: usize, n: u32, degree: u32) -> MatrixPoly {
    let mut h = MatrixPoly::zero(rows, cols);
    let mut coef = Q::one();
    for s in 0..=degree {
        if s > 0 {
            coef = coef * q(n as i64) / q(s as i64);
        }
        let mut e = vec![0u32; rows * cols];
        e[0] = s;
        h = &h + &MatrixPoly::monomial(rows, cols, e, gq_real(coef.clone()));
    }
    h
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticFormLimit {
    /// (T(f) h q | h q) / ‖h q‖² in the type inner product.
    pub value: Complex64,
    /// (T^c(f^{(c)}) q | q) / ‖q‖² for the limit type on the Peirce-0 block.
    pub limit: Complex64,
    pub tail_bound: f64,
}

fn to_c64(z: &crate::scalar::GQ) -> Complex64 {
    Complex64::new(to_f64(&z.re), to_f64(&z.im))
}

/// Normalized quadratic form of T(f) along h_c^n q against its boundary value.
pub fn boundary_quadratic_form(
    space: &FockSpace,
    ty: &HypergeomType,
    symbol: &Symbol,
    q_small: &MatrixPoly,
    n: u32,
    degree: u32,
) -> Result<QuadraticFormLimit> {
    let (rows, cols) = (space.rows(), space.cols());
    if rows == 0 || (q_small.rows(), q_small.cols()) != (rows - 1, cols - 1) {
        return Err(Error::InvalidArgument("q must live on the Peirce-0 block of e₁₁".into()));
    }
    let tail = tail_bound(ty, n, degree)?;
    if tail >= BOUNDARY_TAIL_TOL {
        return Err(Error::Inconclusive(format!("tail bound {tail:.3e} at degree {degree}, n = {n}")));
    }
    let hq = &peaking_truncation(rows, cols, n, degree) * &embed_peirce_zero(q_small, rows, cols)?;
    let den = space.type_norm_sq(ty, &hq)?;
    let small = FockSpace::new(rows - 1, cols - 1);
    let limit_ty = ty.limit_type();
    let den_c = small.type_norm_sq(&limit_ty, q_small)?;
    if den.is_zero() || den_c.is_zero() {
        return Err(Error::Degenerate("vanishing norm".into()));
    }
    let num = space.type_pairing(ty, &apply(space, ty, symbol, &hq)?, &hq)?;
    let tq = apply(&small, &limit_ty, &restrict(symbol, 1)?, q_small)?;
    let num_c = small.type_pairing(&limit_ty, &tq, q_small)?;
    Ok(QuadraticFormLimit {
        value: to_c64(&num) / to_f64(&den),
        limit: to_c64(&num_c) / to_f64(&den_c),
        tail_bound: tail,
    })
}

/// r_{n+1} ≤ r_n (up to rounding) over the second half of the sequence.
pub fn eventually_nonincreasing(seq: &[f64]) -> bool {
    let start = seq.len() / 2;
    seq[start..].windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::GaussMatrix;
    use crate::hypergeom::make_type;
    use crate::params::StructureParams;

    #[test]
    fn restriction_examples() {
        let z11 = MatrixPoly::var(2, 2, 0, 0);
        assert_eq!(restrict_symbol(&z11, 1).unwrap(), MatrixPoly::one(1, 1));
        let det = MatrixPoly::determinant(2);
        assert_eq!(restrict_symbol(&det, 1).unwrap(), MatrixPoly::var(1, 1, 0, 0));
        assert_eq!(restrict_symbol(&det, 0).unwrap(), det);
        assert!(restrict_symbol(&det, 3).is_err());
        let z22 = MatrixPoly::var(1, 1, 0, 0);
        assert_eq!(embed_peirce_zero(&z22, 2, 2).unwrap(), MatrixPoly::var(2, 2, 1, 1));
    }

    #[test]
    fn constant_symbol_has_zero_residual() {
        let params = StructureParams::matrix(2, 2).unwrap();
        let ty = make_type(&params, 1, 2, None).unwrap();
        let fs = FockSpace::new(2, 2);
        let sym = Symbol::Holomorphic(MatrixPoly::one(2, 2).scale_q(&q(2)));
        let d = boundary_degree(&ty, 5).unwrap();
        let r = boundary_residual(&fs, &ty, &sym, &MatrixPoly::one(1, 1), 1, 5, d).unwrap();
        assert_eq!(r.residual, 0.0);
        assert!(r.tail_bound < BOUNDARY_TAIL_TOL);
    }

    #[test]
    fn small_degree_is_inconclusive() {
        let params = StructureParams::matrix(2, 2).unwrap();
        let ty = make_type(&params, 1, 2, None).unwrap();
        let fs = FockSpace::new(2, 2);
        let sym = Symbol::linear_conj(&GaussMatrix::unit(2, 2, 1, 1));
        let err = boundary_residual(&fs, &ty, &sym, &MatrixPoly::one(1, 1), 1, 10, 5).unwrap_err();
        assert!(matches!(err, Error::Inconclusive(_)));
    }

    #[test]
    fn ball_quadratic_form_tends_to_evaluation() {
        let params = StructureParams::ball(2).unwrap();
        let ty = make_type(&params, 1, 1, None).unwrap();
        let fs = FockSpace::new(1, 2);
        let sym = Symbol::Holomorphic(MatrixPoly::var(1, 2, 0, 0));
        let one = MatrixPoly::one(0, 1);
        let mut last = f64::INFINITY;
        for n in [2, 8, 32] {
            let f = boundary_quadratic_form(&fs, &ty, &sym, &one, n, boundary_degree(&ty, n).unwrap()).unwrap();
            assert_eq!(f.limit, Complex64::new(1.0, 0.0));
            let err = (f.value - f.limit).norm();
            assert!(err < last);
            last = err;
        }
        assert!(eventually_nonincreasing(&[3.0, 1.0, 2.0, 1.0, 0.5]));
        assert!(!eventually_nonincreasing(&[3.0, 1.0, 0.5, 1.0]));
    }

    #[test]
    fn tail_bound_decreases_with_degree() {
        let params = StructureParams::matrix(2, 2).unwrap();
        let ty = make_type(&params, 1, 2, None).unwrap();
        let a = tail_bound(&ty, 10, 30).unwrap();
        let b = tail_bound(&ty, 10, 40).unwrap();
        assert!(b < a && b < 1e-3);
    }
}
