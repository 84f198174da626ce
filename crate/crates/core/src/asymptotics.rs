//! Large-argument behaviour of Σ ∏Γ(n+β)/∏Γ(n+µ) xⁿ/n! and the peaking-function moments built from it.

use std::io::Write;

use num_traits::{One, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::hypergeom::HypergeomType;
use crate::params::half;
use crate::partition::Partition;
use crate::scalar::{q, rising, to_f64, Q};

/// Term count cap of the series evaluation.
pub const SERIES_CAP: usize = 1_000_000;
/// Terms below this fraction of the largest one are negligible.
pub const TERM_CUTOFF: f64 = 1e-18;
/// 20 consecutive negligible terms end the summation.
const NEGLIGIBLE_RUN: usize = 20;

/// Limit of x^{−θ/2} e^{−2√x} F(x) when q̂ = p̂ + 1, obtained from I₀(z) ~ e^z/√(2πz).
pub const WRIGHT_LIMIT: f64 = 0.282_094_791_773_878_14;

#[derive(Clone, Debug, PartialEq)]
pub struct WrightSeriesSpec {
    pub beta: Vec<f64>,
    pub mu: Vec<f64>,
}

impl WrightSeriesSpec {
    pub fn new(beta: Vec<f64>, mu: Vec<f64>) -> Result<Self> {
        if let Some(v) = beta.iter().chain(&mu).find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::InvalidParameter(format!("series parameters must be positive, got {v}")));
        }
        Ok(Self { beta, mu })
    }

    pub fn kappa(&self) -> f64 {
        1.0 + self.mu.len() as f64 - self.beta.len() as f64
    }

    pub fn theta(&self) -> f64 {
        (self.mu.len() as f64 - self.beta.len() as f64) / 2.0 + self.beta.iter().sum::<f64>()
            - self.mu.iter().sum::<f64>()
    }
}

/// Kahan-compensated running sum.
#[derive(Default)]
struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// ln F(x).
pub fn wright_eval(spec: &WrightSeriesSpec, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument(format!("series argument must be ≥ 0, got {x}")));
    }
    let ln0: f64 = spec.beta.iter().map(|&b| ln_gamma(b)).sum::<f64>() - spec.mu.iter().map(|&m| ln_gamma(m)).sum::<f64>();
    if x == 0.0 {
        return Ok(ln0);
    }
    let ln_x = x.ln();
    let cut = TERM_CUTOFF.ln();
    let mut logs = vec![ln0];
    let mut cur = ln0;
    let mut max = ln0;
    let mut run = 0;
    for n in 0..SERIES_CAP {
        let nf = n as f64;
        cur += spec.beta.iter().map(|&b| (nf + b).ln()).sum::<f64>() - spec.mu.iter().map(|&m| (nf + m).ln()).sum::<f64>()
            + ln_x
            - (nf + 1.0).ln();
        if !cur.is_finite() {
            return Err(Error::NonIntegrable(format!("series term overflow at n = {}", n + 1)));
        }
        logs.push(cur);
        if cur > max {
            max = cur;
            run = 0;
        } else if cur - max < cut {
            run += 1;
            if run >= NEGLIGIBLE_RUN {
                let mut acc = Kahan::default();
                for l in &logs {
                    acc.add((l - max).exp());
                }
                return Ok(max + acc.sum.ln());
            }
        } else {
            run = 0;
        }
    }
    Err(Error::SeriesCap(SERIES_CAP))
}

/// x^{−θ/2} e^{−2√x} F(x) on each grid point.
pub fn wright_scaled_limit(spec: &WrightSeriesSpec, grid: &[f64]) -> Result<Vec<f64>> {
    if spec.mu.len() != spec.beta.len() + 1 {
        return Err(Error::InvalidArgument(format!(
            "scaled limit needs q̂ = p̂ + 1, got p̂ = {}, q̂ = {}",
            spec.beta.len(),
            spec.mu.len()
        )));
    }
    let theta = spec.theta();
    grid.iter()
        .map(|&x| {
            if !(x > 0.0) {
                return Err(Error::InvalidArgument(format!("grid point {x} must be positive")));
            }
            let v = (wright_eval(spec, x)? - 2.0 * x.sqrt() - theta / 2.0 * x.ln()).exp();
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::NonIntegrable(format!("scaled series diverges at x = {x}")));
            }
            Ok(v)
        })
        .collect()
}

/// x = 4^j for j in the range.
pub fn geometric_grid(j_min: u32, j_max: u32) -> Vec<f64> {
    (j_min..=j_max).map(|j| 4f64.powi(j as i32)).collect()
}

/// Rows x, scaled value, delta to the previous row.
pub fn write_convergence_csv<W: Write>(out: W, grid: &[f64], values: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "scaled_value", "delta"])?;
    for (i, (x, v)) in grid.iter().zip(values).enumerate() {
        let delta = if i == 0 { String::new() } else { format!("{:.12e}", v - values[i - 1]) };
        w.write_record([format!("{x:.12e}"), format!("{v:.12e}"), delta])?;
    }
    w.flush()?;
    Ok(())
}

/// θ = 1/2 + Σx_i − Σy_i.
pub fn theta_of_type(ty: &HypergeomType) -> Q {
    let sx: Q = ty.x().iter().cloned().sum();
    let sy: Q = ty.y().iter().cloned().sum();
    Q::new(1.into(), 2.into()) + sx - sy
}

/// Moment of |N_{λ⁺}|² against |e^{n z₁₁}|²/‖e^{n z₁₁}‖² for an ℓ-hypergeometric type and λ of length ≤ ℓ − 1.
#[derive(Clone, Debug)]
pub struct PeakingMomentSpec {
    ty: HypergeomType,
    lam: Vec<u32>,
}

impl PeakingMomentSpec {
    pub fn new(ty: HypergeomType, lam: &Partition) -> Result<Self> {
        let ell = ty.ell();
        if ell == 0 || lam.len() + 1 > ell {
            return Err(Error::InvalidArgument(format!("λ = {lam} needs length ≤ ℓ − 1 with ℓ = {ell}")));
        }
        let spec = Self { ty, lam: lam.padded(ell - 1) };
        spec.check_positive()?;
        Ok(spec)
    }

    pub fn ty(&self) -> &HypergeomType {
        &self.ty
    }
    pub fn ell(&self) -> usize {
        self.ty.ell()
    }
    pub fn lam(&self) -> Partition {
        Partition::from_unsorted(self.lam.clone())
    }

    fn lam1(&self) -> u32 {
        self.lam.first().copied().unwrap_or(0)
    }

    /// Numerator and denominator parameters of F_λ, exact.
    pub fn series_parameters(&self) -> (Vec<Q>, Vec<Q>) {
        let h = half(self.ty.a());
        let ell = self.ell();
        let l1 = q(self.lam1() as i64);
        let mut num: Vec<Q> = self.ty.x().iter().map(|x| &l1 + x).collect();
        let mut den: Vec<Q> = self.ty.y().iter().map(|y| &l1 + y).collect();
        num.push(&l1 + Q::one() + &h * q(ell as i64 - 1));
        if ell >= 2 {
            den.push(Q::one() + &h);
        }
        for j in 2..ell {
            let d = q(self.lam1() as i64 - self.lam[j - 1] as i64) + Q::one();
            num.push(&d + &h * q(j as i64 - 1));
            den.push(&d + &h * q(j as i64));
        }
        (num, den)
    }

    fn check_positive(&self) -> Result<()> {
        let base = Self { ty: self.ty.clone(), lam: vec![0; self.lam.len()] };
        for (num, den) in [self.series_parameters(), base.series_parameters()] {
            if let Some(v) = num.iter().chain(&den).find(|v| **v <= Q::zero()) {
                return Err(Error::Pole(format!("Gamma argument {} is not positive", crate::scalar::format_rational(v))));
            }
        }
        Ok(())
    }

    pub fn wright_spec(&self) -> WrightSeriesSpec {
        let (num, den) = self.series_parameters();
        WrightSeriesSpec { beta: num.iter().map(to_f64).collect(), mu: den.iter().map(to_f64).collect() }
    }

    fn base(&self) -> Self {
        Self { ty: self.ty.clone(), lam: vec![0; self.lam.len()] }
    }

    /// ∏(x_i − a/2)_λ / ∏(y_i − a/2)_λ, the limit-type coefficient.
    pub fn target(&self) -> Result<Q> {
        self.ty.limit_type().coefficient(&self.lam())
    }

    /// B(λ₁ + s)/B(s) as an exact rational function value.
    fn rho(&self, s: u32) -> Q {
        let h = half(self.ty.a());
        let ell = self.ell();
        let l1 = self.lam1();
        let sq = q(s as i64);
        let mut v = rising(&(&sq + Q::one() + &h * q(ell as i64 - 1)), l1);
        for x in self.ty.x() {
            v *= rising(&(&sq + x), l1);
        }
        for y in self.ty.y() {
            v /= rising(&(&sq + y), l1);
        }
        for j in 1..ell {
            let d = l1 - self.lam[j - 1];
            v *= rising(&(&sq + Q::one() + &h * q(j as i64 - 1)), d);
            v /= rising(&(&sq + Q::one() + &h * q(j as i64)), d);
        }
        v
    }

    /// ln of n^{2s}/(s!)² B(s) up to an s-independent constant, by its term ratio.
    fn ln_weight_step(&self, n: u32, s: u32) -> f64 {
        let h = to_f64(&half(self.ty.a()));
        let ell = self.ell() as f64;
        let sf = s as f64;
        let mut v = 2.0 * (n as f64).ln() - 2.0 * (sf + 1.0).ln() + (sf + 1.0 + h * (ell - 1.0)).ln();
        for x in self.ty.x() {
            v += (sf + to_f64(x)).ln();
        }
        for y in self.ty.y() {
            v -= (sf + to_f64(y)).ln();
        }
        for j in 1..self.ell() {
            let jf = j as f64;
            v += (sf + 1.0 + h * (jf - 1.0)).ln() - (sf + 1.0 + h * jf).ln();
        }
        v
    }
}

/// R(n) = target · Σ_s w_s ρ(s) / Σ_s w_s with w_s = n^{2s}/(s!)² B(s) and exact ρ(s) = B(λ₁+s)/B(s).
pub fn peaking_moment_ratio(spec: &PeakingMomentSpec, n: u32) -> Result<f64> {
    let target = to_f64(&spec.target()?);
    if spec.lam1() == 0 {
        return Ok(target);
    }
    let cut = TERM_CUTOFF.ln();
    let mut logs = vec![0.0];
    let mut cur = 0.0f64;
    let mut max = 0.0f64;
    let mut run = 0;
    let mut s = 0u32;
    while run < NEGLIGIBLE_RUN {
        if s as usize >= SERIES_CAP {
            return Err(Error::SeriesCap(SERIES_CAP));
        }
        cur += spec.ln_weight_step(n, s);
        s += 1;
        logs.push(cur);
        if cur > max {
            max = cur;
            run = 0;
        } else if cur - max < cut {
            run += 1;
        }
    }
    let (mut num, mut den) = (Kahan::default(), Kahan::default());
    for (s, l) in logs.iter().enumerate() {
        let w = (l - max).exp();
        if w == 0.0 {
            continue;
        }
        let r = spec.rho(s as u32);
        num.add(w * r.to_f64().unwrap_or_else(|| to_f64(&r)));
        den.add(w);
    }
    Ok(target * num.sum / den.sum)
}

/// The same ratio through ln F_λ(n²) − ln F_0(n²).
pub fn peaking_moment_ratio_series(spec: &PeakingMomentSpec, n: u32) -> Result<f64> {
    let target = to_f64(&spec.target()?);
    let x = (n as f64).powi(2);
    let diff = wright_eval(&spec.wright_spec(), x)? - wright_eval(&spec.base().wright_spec(), x)?;
    Ok(target * diff.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::make_type;
    use crate::params::StructureParams;
    use crate::scalar::qr;
    use approx::assert_relative_eq;

    fn bessel() -> WrightSeriesSpec {
        WrightSeriesSpec::new(vec![], vec![1.0]).unwrap()
    }

    #[test]
    fn bessel_values() {
        assert!(wright_eval(&bessel(), 0.0).unwrap().abs() < 1e-15);
        // Σ 1/(n!)², summed directly
        let mut direct = 0.0;
        let mut t = 1.0;
        for n in 0..30 {
            if n > 0 {
                t /= (n * n) as f64;
            }
            direct += t;
        }
        assert_relative_eq!(wright_eval(&bessel(), 1.0).unwrap().exp(), direct, max_relative = 1e-14);
        assert_relative_eq!(direct, 2.279_585_302_336_067, max_relative = 1e-14);
    }

    #[test]
    fn cancelling_parameters_give_exponential() {
        let s = WrightSeriesSpec::new(vec![2.5, 0.75], vec![0.75, 2.5]).unwrap();
        for x in [0.5, 3.0, 40.0] {
            assert_relative_eq!(wright_eval(&s, x).unwrap(), x, max_relative = 1e-13);
        }
    }

    #[test]
    fn scaled_limit_bessel_constant() {
        let v = wright_scaled_limit(&bessel(), &geometric_grid(5, 12)).unwrap();
        assert!((v.last().unwrap() - WRIGHT_LIMIT).abs() < 1e-4);
        assert!(wright_scaled_limit(&WrightSeriesSpec::new(vec![1.0], vec![1.0]).unwrap(), &[4.0]).is_err());
        // prepending equal entries does not move the limit
        let w = WrightSeriesSpec::new(vec![1.5], vec![1.5, 1.0]).unwrap();
        let vw = wright_scaled_limit(&w, &geometric_grid(5, 12)).unwrap();
        assert_relative_eq!(v[7], vw[7], max_relative = 1e-9);
    }

    #[test]
    fn theta_examples() {
        let params = StructureParams::new(2, q(2), q(0)).unwrap();
        let ty = make_type(&params, 1, 2, None).unwrap();
        assert_eq!(theta_of_type(&ty), qr(-5, 2));
        for k in 1..=2 {
            let t = make_type(&params, k, 2, None).unwrap();
            assert_eq!(theta_of_type(&t), qr(1, 2) - params.nu_k(k).unwrap());
        }
    }

    #[test]
    fn theta_of_lists_matches_type() {
        let params = StructureParams::new(3, q(2), q(1)).unwrap();
        for (k, nu) in [(0, Some(qr(15, 2))), (1, None), (2, None)] {
            let ty = make_type(&params, k, 3, nu.as_ref()).unwrap();
            for lam in [vec![], vec![1], vec![2, 1], vec![3, 3]] {
                let spec = PeakingMomentSpec::new(ty.clone(), &Partition::new(lam.clone()).unwrap()).unwrap_or_else(|e| panic!("{ty} {lam:?} {e}"));
                let (num, den) = spec.series_parameters();
                assert_eq!(den.len(), num.len() + 1);
                let theta = qr(1, 2) + num.iter().cloned().sum::<Q>() - den.iter().cloned().sum::<Q>();
                assert_eq!(theta, theta_of_type(&ty));
            }
        }
    }

    #[test]
    fn trivial_ratios() {
        let params = StructureParams::new(2, q(2), q(0)).unwrap();
        let ty = make_type(&params, 1, 2, None).unwrap();
        let spec = PeakingMomentSpec::new(ty, &Partition::empty()).unwrap();
        assert_eq!(peaking_moment_ratio(&spec, 17).unwrap(), 1.0);
        assert_relative_eq!(peaking_moment_ratio_series(&spec, 17).unwrap(), 1.0, max_relative = 1e-14);
        let disk = make_type(&StructureParams::new(1, q(2), q(0)).unwrap(), 1, 1, None).unwrap();
        let spec = PeakingMomentSpec::new(disk, &Partition::empty()).unwrap();
        assert_eq!(peaking_moment_ratio(&spec, 50).unwrap(), 1.0);
    }

    #[test]
    fn two_routes_agree() {
        let params = StructureParams::new(2, q(2), q(0)).unwrap();
        let ty = make_type(&params, 1, 2, None).unwrap();
        let spec = PeakingMomentSpec::new(ty, &Partition::row(1)).unwrap();
        assert_eq!(spec.target().unwrap(), qr(1, 2));
        for n in [1, 10, 50, 200] {
            let a = peaking_moment_ratio(&spec, n).unwrap();
            let b = peaking_moment_ratio_series(&spec, n).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-10);
        }
    }

    #[test]
    fn target_is_shifted_pochhammer_ratio() {
        let params = StructureParams::new(3, q(2), q(1)).unwrap();
        for (k, lambda, lam) in [(1, 3, vec![2, 1]), (2, 3, vec![3]), (1, 2, vec![2])] {
            let ty = make_type(&params, k, lambda, None).unwrap();
            let lam = Partition::new(lam).unwrap();
            let spec = PeakingMomentSpec::new(ty.clone(), &lam).unwrap();
            let h = qr(1, 1);
            let mut want = Q::one();
            for x in ty.x() {
                want *= crate::hypergeom::pochhammer(&(x - &h), &lam, ty.a());
            }
            for y in ty.y() {
                want /= crate::hypergeom::pochhammer(&(y - &h), &lam, ty.a());
            }
            assert_eq!(spec.target().unwrap(), want);
        }
    }
}
