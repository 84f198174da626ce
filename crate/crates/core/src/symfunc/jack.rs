use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::SymPoly;
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::scalar::{q, Q};

/// Coefficient of m_ν in D m_λ, where D = Σ x_i²∂_i² + a Σ_{i<j} (x_i²∂_i − x_j²∂_j)/(x_i − x_j).
pub fn laplace_coefficient(lambda: &Partition, nu: &Partition, n: usize, a: &Q) -> Q {
    if lambda.weight() != nu.weight() {
        return Q::zero();
    }
    let t = nu.padded(n);
    if lambda == nu {
        let diag: i64 = t.iter().map(|&x| x as i64 * (x as i64 - 1)).sum();
        let pairs: i64 = t.iter().enumerate().map(|(i, &x)| x as i64 * (n - 1 - i) as i64).sum();
        return q(diag) + a * q(pairs);
    }
    let source = lambda.padded(n);
    let mut acc = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            let mut pool = source.clone();
            let mut ok = true;
            for (k, &v) in t.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                match pool.iter().position(|&x| x == v) {
                    Some(pos) => {
                        pool.swap_remove(pos);
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let (hi, lo) = (pool[0].max(pool[1]), pool[0].min(pool[1]));
            if hi > lo && lo < t[i] && t[i] < hi {
                acc += (hi - lo) as i64;
            }
        }
    }
    a * q(acc)
}

/// Spherical polynomial Φ_µ in n variables with Φ_µ(1ⁿ) = 1: the Jack polynomial
/// with parameter 2/a, obtained by back-substitution in the m-basis.
pub fn jack_spherical(mu: &Partition, n: usize, a: &Q) -> Result<SymPoly> {
    if mu.len() > n {
        return Err(Error::InvalidArgument(format!("{mu} has more than {n} parts")));
    }
    if !a.is_positive() {
        return Err(Error::InvalidParameter("multiplicity a must be positive".into()));
    }
    let basis: Vec<Partition> =
        partitions_of(mu.weight(), n).into_iter().filter(|nu| mu.dominates(nu)).collect();
    let eig = laplace_coefficient(mu, mu, n, a);
    let mut u: Vec<Q> = Vec::with_capacity(basis.len());
    for (idx, nu) in basis.iter().enumerate() {
        if idx == 0 {
            u.push(Q::one());
            continue;
        }
        let gap = &eig - laplace_coefficient(nu, nu, n, a);
        if gap.is_zero() {
            return Err(Error::Degenerate(format!(
                "eigenvalue of {mu} repeats at {nu} for a = {a}"
            )));
        }
        let mut rhs = Q::zero();
        for (rho, u_rho) in basis[..idx].iter().zip(&u) {
            if !u_rho.is_zero() {
                rhs += u_rho * laplace_coefficient(rho, nu, n, a);
            }
        }
        u.push(rhs / gap);
    }
    let norm: Q = basis
        .iter()
        .zip(&u)
        .map(|(nu, c)| c * Q::from_integer(nu.orbit_size(n).into()))
        .sum();
    let coeffs: BTreeMap<Partition, Q> =
        basis.into_iter().zip(u).map(|(nu, c)| (nu, c / &norm)).collect();
    Ok(SymPoly::from_map(n, coeffs))
}
