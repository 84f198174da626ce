//! Gauss–Jacobi rules on [0, 1] for the weight t^β (1 − t)^α.

use nalgebra::{DMatrix, SymmetricEigen};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct GaussJacobi {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Recurrence coefficients on [−1, 1] for the weight (1 − x)^α (1 + x)^β.
fn recurrence(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let diag = (0..n)
        .map(|k| {
            if k == 0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                let s = 2.0 * k as f64 + ab;
                (beta * beta - alpha * alpha) / (s * (s + 2.0))
            }
        })
        .collect();
    let off = (1..n)
        .map(|k| {
            let kf = k as f64;
            let s = 2.0 * kf + ab;
            if k == 1 {
                (4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))).sqrt()
            } else {
                (4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0)))
                    .sqrt()
            }
        })
        .collect();
    (diag, off)
}

/// Orthonormal (up to the factor √µ₀) p_n(x), p_n'(x) and Σ_{k<n} p_k(x)².
fn evaluate(x: f64, diag: &[f64], off: &[f64]) -> (f64, f64, f64) {
    let n = diag.len();
    let (mut p_prev, mut p) = (0.0, 1.0);
    let (mut d_prev, mut d) = (0.0, 0.0);
    let mut christoffel = 0.0;
    for k in 0..n {
        christoffel += p * p;
        let b_k = if k == 0 { 0.0 } else { off[k - 1] };
        let b_next = if k + 1 < n { off[k] } else { 1.0 };
        let p_next = ((x - diag[k]) * p - b_k * p_prev) / b_next;
        let d_next = (p + (x - diag[k]) * d - b_k * d_prev) / b_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    (p, d, christoffel)
}

pub fn ln_beta(x: f64, y: f64) -> f64 {
    ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)
}

/// n-point rule with ∫₀¹ t^{power_t}(1−t)^{power_one_minus_t} f(t) dt ≈ Σ w_i f(t_i),
/// exact for polynomials of degree ≤ 2n − 1.
pub fn gauss_jacobi_unit(n: usize, power_t: f64, power_one_minus_t: f64) -> Result<GaussJacobi> {
    if n == 0 {
        return Err(Error::InvalidArgument("quadrature needs at least one node".into()));
    }
    if !(power_t > -1.0 && power_one_minus_t > -1.0) {
        return Err(Error::NonIntegrable(format!(
            "Jacobi exponents must exceed −1, got t^{power_t} (1−t)^{power_one_minus_t}"
        )));
    }
    let (alpha, beta) = (power_one_minus_t, power_t);
    let (diag, off) = recurrence(n, alpha, beta);
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jac[(k, k)] = diag[k];
        if k + 1 < n {
            jac[(k, k + 1)] = off[k];
            jac[(k + 1, k)] = off[k];
        }
    }
    let mut xs: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    xs.sort_by(|a, b| a.total_cmp(b));
    let mu0 = ln_beta(beta + 1.0, alpha + 1.0).exp();
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for x0 in xs {
        let mut x = x0;
        for _ in 0..3 {
            let (p, d, _) = evaluate(x, &diag, &off);
            if d == 0.0 {
                break;
            }
            let step = p / d;
            if !step.is_finite() || step.abs() > 1e-6 {
                break;
            }
            x -= step;
        }
        let (_, _, christoffel) = evaluate(x, &diag, &off);
        nodes.push(0.5 * (1.0 + x));
        weights.push(mu0 / christoffel);
    }
    Ok(GaussJacobi { nodes, weights })
}

/// Pairwise summation; the reduction order depends only on the length.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 16 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}
