use num_traits::One;

use super::poly::{permutations_with_sign, GaussMatrix, MatrixPoly};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::{gq_real, q, Q};

fn det(m: &[Vec<MatrixPoly>], rows: usize, cols: usize) -> MatrixPoly {
    let n = m.len();
    let mut out = MatrixPoly::zero(rows, cols);
    for (perm, sign) in permutations_with_sign(n) {
        let mut t = MatrixPoly::one(rows, cols);
        for (i, &j) in perm.iter().enumerate() {
            t = &t * &m[i][j];
            if t.is_zero() {
                break;
            }
        }
        out = &out + &t.scale_q(&q(sign));
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// The P_µ component of z ↦ e^{(z|w)}: s_µ(z w*) / ∏ hooks, via the dual Jacobi–Trudi determinant.
pub fn fock_kernel(mu: &Partition, w: &GaussMatrix) -> Result<MatrixPoly> {
    let (rows, cols) = (w.rows(), w.cols());
    if mu.len() > rows.min(cols) {
        return Err(Error::InvalidArgument(format!(
            "partition {mu} longer than the rank {} of the model",
            rows.min(cols)
        )));
    }
    // A_ik = Σ_j z_ij conj(w_kj)
    let a: Vec<Vec<MatrixPoly>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|k| {
                    let mut p = MatrixPoly::zero(rows, cols);
                    for j in 0..cols {
                        p = &p + &MatrixPoly::var(rows, cols, i, j).scale(&w.get(k, j).conj());
                    }
                    p
                })
                .collect()
        })
        .collect();
    let elem: Vec<MatrixPoly> = (0..=rows)
        .map(|k| {
            let mut acc = MatrixPoly::zero(rows, cols);
            for s in subsets(rows, k) {
                let minor: Vec<Vec<MatrixPoly>> =
                    s.iter().map(|&i| s.iter().map(|&j| a[i][j].clone()).collect()).collect();
                acc = &acc + &det(&minor, rows, cols);
            }
            acc
        })
        .collect();
    let e = |k: i64| -> MatrixPoly {
        if k < 0 || k as usize > rows {
            MatrixPoly::zero(rows, cols)
        } else {
            elem[k as usize].clone()
        }
    };
    let conj = mu.conjugate();
    let l = conj.len();
    let m: Vec<Vec<MatrixPoly>> = (0..l)
        .map(|i| (0..l).map(|j| e(conj.parts()[i] as i64 - i as i64 + j as i64)).collect())
        .collect();
    let hooks: Q = mu.hooks().iter().map(|&h| q(h as i64)).fold(Q::one(), |acc, h| acc * h);
    Ok(det(&m, rows, cols).scale_q(&(Q::one() / hooks)))
}

/// (z|w)^n / n!.
pub fn fock_kernel_degree(n: u32, w: &GaussMatrix) -> MatrixPoly {
    let lin = MatrixPoly::linear_form(w);
    let mut out = MatrixPoly::one(w.rows(), w.cols());
    for k in 1..=n {
        out = (&out * &lin).scale(&gq_real(Q::one() / q(k as i64)));
    }
    out
}
