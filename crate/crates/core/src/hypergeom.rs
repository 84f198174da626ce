//! Multivariate Pochhammer symbols and hypergeometric types.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::params::{half, StructureParams};
use crate::partition::Partition;
use crate::scalar::{format_rational, q, rising, rising_f64, to_f64, Q};

/// (ν)_µ = ∏_j (ν − (a/2)(j−1))_{m_j}.
pub fn pochhammer(nu: &Q, mu: &Partition, a: &Q) -> Q {
    let h = half(a);
    let mut acc = Q::one();
    for (j, &m) in mu.parts().iter().enumerate() {
        acc *= rising(&(nu - &h * q(j as i64)), m);
    }
    acc
}

pub fn pochhammer_f64(nu: f64, mu: &Partition, a: f64) -> f64 {
    mu.parts()
        .iter()
        .enumerate()
        .map(|(j, &m)| rising_f64(nu - 0.5 * a * j as f64, m))
        .product()
}

/// Moment coefficients µ ↦ ∏(x_i)_µ / ∏(y_i)_µ for partitions of length ≤ ell.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeomType {
    x: Vec<Q>,
    y: Vec<Q>,
    a: Q,
    ell: usize,
}

impl HypergeomType {
    pub fn new(x: Vec<Q>, y: Vec<Q>, a: Q, ell: usize) -> Result<Self> {
        if y.len() != x.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "type needs |y| = |x| + 1, got |x| = {}, |y| = {}",
                x.len(),
                y.len()
            )));
        }
        Ok(Self { x, y, a, ell })
    }

    pub fn x(&self) -> &[Q] {
        &self.x
    }
    pub fn y(&self) -> &[Q] {
        &self.y
    }
    pub fn a(&self) -> &Q {
        &self.a
    }
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn coefficient(&self, mu: &Partition) -> Result<Q> {
        if mu.len() > self.ell {
            return Err(Error::InvalidArgument(format!(
                "partition {mu} longer than type rank {}",
                self.ell
            )));
        }
        let mut num = Q::one();
        for x in &self.x {
            num *= pochhammer(x, mu, &self.a);
        }
        let mut den = Q::one();
        for y in &self.y {
            den *= pochhammer(y, mu, &self.a);
        }
        if den.is_zero() {
            return Err(Error::Pole(format!("denominator of coefficient {mu} vanishes")));
        }
        Ok(num / den)
    }

    pub fn coefficient_f64(&self, mu: &Partition) -> Result<f64> {
        self.coefficient(mu).map(|c| to_f64(&c))
    }

    /// Removes numerator/denominator pairs that agree, which leaves every coefficient unchanged.
    pub fn simplified(&self) -> Self {
        let mut y = self.y.clone();
        let mut x = Vec::with_capacity(self.x.len());
        for xi in &self.x {
            match y.iter().position(|yj| yj == xi) {
                Some(pos) => {
                    y.remove(pos);
                }
                None => x.push(xi.clone()),
            }
        }
        Self { x, y, a: self.a.clone(), ell: self.ell }
    }

    fn canonical(&self) -> (Vec<Q>, Vec<Q>) {
        let s = self.simplified();
        let (mut x, mut y) = (s.x, s.y);
        x.sort();
        y.sort();
        (x, y)
    }

    /// Same parameter multisets after cancellation, same a and ell.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.a == other.a && self.ell == other.ell && self.canonical() == other.canonical()
    }

    /// Every parameter exceeds a(ell − 1)/2, which makes all coefficients finite and positive.
    pub fn is_admissible(&self) -> bool {
        let floor = half(&self.a) * q(self.ell as i64 - 1);
        self.x.iter().chain(&self.y).all(|p| p > &floor)
    }

    /// Type of the boundary limit: all parameters shifted by −a/2 and rank bound lowered by one.
    pub fn limit_type(&self) -> Self {
        let h = half(&self.a);
        Self {
            x: self.x.iter().map(|v| v - &h).collect(),
            y: self.y.iter().map(|v| v - &h).collect(),
            a: self.a.clone(),
            ell: self.ell.saturating_sub(1),
        }
    }
}

impl std::fmt::Display for HypergeomType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fmt = |v: &[Q]| v.iter().map(format_rational).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "x = [{}], y = [{}], a = {}, ell = {}",
            fmt(&self.x),
            fmt(&self.y),
            format_rational(&self.a),
            self.ell
        )
    }
}

/// Type of the measure with k unit and λ − k free singular values; k = 0 needs ν > p − 1.
pub fn make_type(
    params: &StructureParams,
    k: usize,
    lambda: usize,
    nu: Option<&Q>,
) -> Result<HypergeomType> {
    if k > lambda || lambda > params.r() {
        return Err(Error::InvalidArgument(format!(
            "need 0 ≤ k ≤ λ ≤ r, got k = {k}, λ = {lambda}, r = {}",
            params.r()
        )));
    }
    let y0 = match (k, nu) {
        (0, Some(nu)) => {
            let floor = params.p() - Q::one();
            if nu <= &floor {
                return Err(Error::InvalidArgument(format!(
                    "weight ν = {} must exceed p − 1 = {}",
                    format_rational(nu),
                    format_rational(&floor)
                )));
            }
            nu.clone()
        }
        (0, None) => {
            return Err(Error::InvalidArgument("k = 0 requires an explicit weight ν".into()))
        }
        (_, Some(_)) => {
            return Err(Error::InvalidArgument("weight ν is only meaningful for k = 0".into()))
        }
        (_, None) => params.nu_k(k)?,
    };
    let a = params.a().clone();
    let h = half(&a);
    let x = vec![params.nu_k(lambda)?, &h * q(lambda as i64)];
    let y = vec![y0, params.d_over_r(), &h * q(params.r() as i64)];
    Ok(HypergeomType::new(x, y, a, lambda)?.simplified())
}
