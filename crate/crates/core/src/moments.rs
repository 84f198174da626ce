//! Rank-one moment problem: is a formal type realized by a radial measure on [0, 1]?

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{FromPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergeom::HypergeomType;
use crate::partition::Partition;
use crate::scalar::{format_rational, q, rising, to_f64, Q};

pub const DEFAULT_HANKEL_SIZE: usize = 12;
pub const DEFAULT_HANKEL_TOL: f64 = 1e-10;

/// ρ₀, …, ρ_M with ρ_m = (d)_m · coefficient((m)).
#[derive(Clone, Debug)]
pub struct MomentSequence {
    pub d: u32,
    pub ty: HypergeomType,
    pub exact: Vec<Q>,
    pub values: Vec<f64>,
}

/// The rank-one type with x = [] and y = [ν].
pub fn rank_one_type(nu: &Q) -> HypergeomType {
    HypergeomType::new(Vec::new(), vec![nu.clone()], q(2), 1).expect("one denominator parameter")
}

pub fn radial_moments(d: u32, ty: &HypergeomType, max_order: usize) -> Result<MomentSequence> {
    if ty.ell() != 1 {
        return Err(Error::Unsupported(format!("moment test is rank one only, type has ell = {}", ty.ell())));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let exact: Vec<Q> = (0..=max_order)
        .map(|m| Ok(rising(&q(d as i64), m as u32) * ty.coefficient(&Partition::row(m as u32))?))
        .collect::<Result<_>>()?;
    let values = exact.iter().map(to_f64).collect();
    Ok(MomentSequence { d, ty: ty.clone(), exact, values })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HausdorffResult {
    pub feasible: bool,
    pub min_eig_h: f64,
    pub min_eig_dh: f64,
}

fn min_eigenvalue(m: &[Vec<Q>]) -> f64 {
    let n = m.len();
    let mat = DMatrix::from_fn(n, n, |i, j| to_f64(&m[i][j]));
    SymmetricEigen::new(mat).eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Exact positive semidefiniteness by symmetric elimination with diagonal pivoting.
pub fn is_psd_exact(m: &[Vec<Q>]) -> bool {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut active: Vec<usize> = (0..a.len()).collect();
    while !active.is_empty() {
        let (pos, &piv) = active.iter().enumerate().max_by(|x, y| a[*x.1][*x.1].cmp(&a[*y.1][*y.1])).expect("nonempty");
        let d = a[piv][piv].clone();
        if d < Q::zero() {
            return false;
        }
        active.remove(pos);
        if d.is_zero() {
            // the largest remaining diagonal vanishes, so a PSD remainder is zero
            return active.iter().all(|&i| a[piv][i].is_zero() && active.iter().all(|&j| a[i][j].is_zero()));
        }
        for &i in &active {
            if a[i][piv].is_zero() {
                continue;
            }
            let f = &a[i][piv] / &d;
            for &j in &active {
                let t = &f * &a[piv][j];
                a[i][j] -= t;
            }
        }
    }
    true
}

fn shifted(m: &[Vec<Q>], tol: &Q) -> Vec<Vec<Q>> {
    let mut out = m.to_vec();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] += tol;
    }
    out
}

/// Hankel matrices of (ρ_m) and (ρ_m − ρ_{m+1}) must both have smallest eigenvalue ≥ −tol.
pub fn hausdorff_test(seq: &MomentSequence, size: usize, tol: f64) -> Result<HausdorffResult> {
    if size == 0 || 2 * size > seq.exact.len() - 1 {
        return Err(Error::InvalidArgument(format!(
            "Hankel size {size} needs at least {} moments, have {}",
            2 * size + 1,
            seq.exact.len()
        )));
    }
    let rho = &seq.exact;
    let h: Vec<Vec<Q>> = (0..size).map(|i| (0..size).map(|j| rho[i + j].clone()).collect()).collect();
    let dh: Vec<Vec<Q>> =
        (0..size).map(|i| (0..size).map(|j| &rho[i + j] - &rho[i + j + 1]).collect()).collect();
    let tol_q = Q::from_f64(tol).ok_or_else(|| Error::InvalidArgument(format!("tolerance {tol} is not finite")))?;
    let decide = |m: &[Vec<Q>], eig: f64| -> bool {
        if eig.abs() < 10.0 * tol {
            is_psd_exact(&shifted(m, &tol_q))
        } else {
            eig >= -tol
        }
    };
    let (eh, edh) = (min_eigenvalue(&h), min_eigenvalue(&dh));
    Ok(HausdorffResult { feasible: decide(&h, eh) && decide(&dh, edh), min_eig_h: eh, min_eig_dh: edh })
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub d: u32,
    #[serde(serialize_with = "ser_rational")]
    pub nu: Q,
    pub feasible: bool,
    pub min_eig_h: f64,
    pub min_eig_dh: f64,
}

fn ser_rational<S: serde::Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

/// Hausdorff test of the type {y = ν} for every ν of the grid.
pub fn w_sub_scan(d: u32, grid: &[Q], size: usize, tol: f64) -> Result<Vec<ScanRow>> {
    grid.par_iter()
        .map(|nu| {
            if *nu <= Q::zero() {
                return Err(Error::InvalidParameter(format!("ν = {} must be positive", format_rational(nu))));
            }
            let seq = radial_moments(d, &rank_one_type(nu), 2 * size)?;
            let r = hausdorff_test(&seq, size, tol)?;
            Ok(ScanRow { d, nu: nu.clone(), feasible: r.feasible, min_eig_h: r.min_eig_h, min_eig_dh: r.min_eig_dh })
        })
        .collect()
}

/// Membership in the rank-one set {d} ∪ (d, ∞).
pub fn in_rank_one_w_sub(d: u32, nu: &Q) -> bool {
    *nu >= q(d as i64)
}
