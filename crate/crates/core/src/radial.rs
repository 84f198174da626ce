//! Radial parts of the K-invariant measures and their spherical moments.

use std::io::Write;

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergeom::{make_type, pochhammer, HypergeomType};
use crate::params::{half, StructureParams};
use crate::partition::Partition;
use crate::quadrature::{gauss_jacobi_unit, pairwise_sum};
use crate::scalar::{as_nonneg_int, format_rational, q, to_f64, Q};
use crate::symfunc::{dim_isotype, jack_spherical};

/// Nodes per coordinate when the integrand is not a polynomial.
pub const NON_POLYNOMIAL_NODES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Lebesgue measure on the domain.
    Lebesgue,
    /// Riemann measure of the Kepler variety restricted to the Kepler ball.
    KeplerRiemann,
    /// Measure on the k-th boundary orbit.
    BoundaryOrbit,
    /// Weighted Bergman measure on the Kepler ball.
    BergmanWeighted,
    /// Boundary orbit intersected with a Kepler variety.
    BoundaryKepler,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Lebesgue => "lebesgue",
            Family::KeplerRiemann => "kepler_riemann",
            Family::BoundaryOrbit => "boundary_orbit",
            Family::BergmanWeighted => "bergman_weighted",
            Family::BoundaryKepler => "boundary_kepler",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lebesgue" => Family::Lebesgue,
            "kepler_riemann" => Family::KeplerRiemann,
            "boundary_orbit" => Family::BoundaryOrbit,
            "bergman_weighted" => Family::BergmanWeighted,
            "boundary_kepler" => Family::BoundaryKepler,
            _ => return Err(Error::Parse(format!("unknown measure family {s:?}"))),
        })
    }
}

/// Radial density on the free coordinates 1 > t_{k+1} ≥ … ≥ t_λ > 0.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialMeasureSpec {
    family: Family,
    params: StructureParams,
    k: usize,
    lambda: usize,
    nu: Option<Q>,
    power_t: Q,
    power_one_minus_t: Q,
}

impl RadialMeasureSpec {
    pub fn new(
        family: Family,
        params: &StructureParams,
        k: usize,
        lambda: usize,
        nu: Option<Q>,
    ) -> Result<Self> {
        let r = params.r();
        if k > lambda || lambda > r {
            return Err(Error::InvalidArgument(format!(
                "need 0 ≤ k ≤ λ ≤ r, got k = {k}, λ = {lambda}, r = {r}"
            )));
        }
        let shape_ok = match family {
            Family::Lebesgue => k == 0 && lambda == r,
            Family::KeplerRiemann | Family::BergmanWeighted => k == 0,
            Family::BoundaryOrbit => k >= 1 && lambda == r,
            Family::BoundaryKepler => k >= 1,
        };
        if !shape_ok {
            return Err(Error::InvalidArgument(format!(
                "family {} does not admit k = {k}, λ = {lambda} (r = {r})",
                family.name()
            )));
        }
        if (family == Family::BergmanWeighted) != nu.is_some() {
            return Err(Error::InvalidArgument(format!(
                "weight ν is required exactly for bergman_weighted, family is {}",
                family.name()
            )));
        }
        let a = params.a();
        let kepler_power = params.b() + a * q((r - lambda) as i64);
        let boundary_power = half(a) * q(k as i64 + 1) - q(1);
        let (power_t, power_one_minus_t) = match family {
            Family::Lebesgue => (params.b().clone(), q(0)),
            Family::KeplerRiemann => (kepler_power, q(0)),
            Family::BoundaryOrbit => (params.b().clone(), boundary_power),
            Family::BoundaryKepler => (kepler_power, boundary_power),
            Family::BergmanWeighted => {
                let nu = nu.as_ref().expect("checked above");
                if nu <= &(params.p() - q(1)) {
                    return Err(Error::NonIntegrable(format!(
                        "weight ν = {} must exceed p − 1 = {}",
                        format_rational(nu),
                        format_rational(&(params.p() - q(1)))
                    )));
                }
                (kepler_power, nu - params.p())
            }
        };
        if power_t <= q(-1) || power_one_minus_t <= q(-1) {
            return Err(Error::NonIntegrable(format!(
                "exponents t^{} (1−t)^{}",
                format_rational(&power_t),
                format_rational(&power_one_minus_t)
            )));
        }
        Ok(Self { family, params: params.clone(), k, lambda, nu, power_t, power_one_minus_t })
    }

    pub fn lebesgue(params: &StructureParams) -> Result<Self> {
        Self::new(Family::Lebesgue, params, 0, params.r(), None)
    }

    pub fn kepler_riemann(params: &StructureParams, lambda: usize) -> Result<Self> {
        Self::new(Family::KeplerRiemann, params, 0, lambda, None)
    }

    pub fn boundary_orbit(params: &StructureParams, k: usize) -> Result<Self> {
        Self::new(Family::BoundaryOrbit, params, k, params.r(), None)
    }

    pub fn bergman_weighted(params: &StructureParams, lambda: usize, nu: Q) -> Result<Self> {
        Self::new(Family::BergmanWeighted, params, 0, lambda, Some(nu))
    }

    pub fn boundary_kepler(params: &StructureParams, k: usize, lambda: usize) -> Result<Self> {
        Self::new(Family::BoundaryKepler, params, k, lambda, None)
    }

    /// The measure for (k, λ): weighted Bergman with ν when k = 0, otherwise the
    /// boundary orbit of the Kepler ball.
    pub fn for_orbit(params: &StructureParams, k: usize, lambda: usize, nu: Option<Q>) -> Result<Self> {
        if k == 0 {
            let nu = nu.ok_or_else(|| Error::InvalidArgument("k = 0 requires ν".into()))?;
            Self::bergman_weighted(params, lambda, nu)
        } else {
            Self::boundary_kepler(params, k, lambda)
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn params(&self) -> &StructureParams {
        &self.params
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn lambda(&self) -> usize {
        self.lambda
    }
    pub fn nu(&self) -> Option<&Q> {
        self.nu.as_ref()
    }
    pub fn power_t(&self) -> &Q {
        &self.power_t
    }
    pub fn power_one_minus_t(&self) -> &Q {
        &self.power_one_minus_t
    }
    pub fn free_count(&self) -> usize {
        self.lambda - self.k
    }
    pub fn zero_count(&self) -> usize {
        self.params.r() - self.lambda
    }

    /// Hypergeometric type the measure is expected to have.
    pub fn hypergeom_type(&self) -> Result<HypergeomType> {
        let p = self.params.p().clone();
        match self.family {
            Family::Lebesgue | Family::KeplerRiemann => make_type(&self.params, 0, self.lambda, Some(&p)),
            Family::BergmanWeighted => make_type(&self.params, 0, self.lambda, self.nu.as_ref()),
            Family::BoundaryOrbit | Family::BoundaryKepler => {
                make_type(&self.params, self.k, self.lambda, None)
            }
        }
    }

    /// Unnormalized density at strictly ordered free coordinates.
    pub fn density(&self, t: &[f64]) -> Result<f64> {
        let f = self.free_count();
        if f == 0 {
            return Err(Error::PointMass(format!(
                "k = λ = {}: the radial part is a point mass",
                self.k
            )));
        }
        if t.len() != f {
            return Err(Error::InvalidArgument(format!("expected {f} free coordinates, got {}", t.len())));
        }
        let inside = t.iter().all(|&x| x > 0.0 && x < 1.0) && t.windows(2).all(|w| w[0] >= w[1]);
        if !inside {
            return Err(Error::InvalidArgument(format!("{t:?} is outside the ordered cell")));
        }
        let (pt, pm, a) = self.exponents_f64();
        let mut v: f64 = t.iter().map(|&x| x.powf(pt) * (1.0 - x).powf(pm)).product();
        for i in 0..f {
            for j in i + 1..f {
                v *= (t[i] - t[j]).powf(a);
            }
        }
        Ok(v)
    }

    fn exponents_f64(&self) -> (f64, f64, f64) {
        (to_f64(&self.power_t), to_f64(&self.power_one_minus_t), to_f64(self.params.a()))
    }

    fn even_multiplicity(&self) -> bool {
        as_nonneg_int(self.params.a()).is_some_and(|a| a % 2 == 0)
    }

    /// Whether the default rule integrates spherical moments exactly.
    pub fn quadrature_is_exact(&self) -> bool {
        let f = self.free_count();
        if f <= 1 || self.even_multiplicity() {
            return true;
        }
        as_nonneg_int(self.params.a()).is_some() && as_nonneg_int(&self.power_one_minus_t).is_some()
    }

    /// Nodes per coordinate that integrate moments of weight ≤ `weight` exactly when possible.
    pub fn default_nodes(&self, weight: u32) -> usize {
        let f = self.free_count() as u64;
        if f == 0 {
            return 1;
        }
        let pairs = f * (f.saturating_sub(1)) / 2;
        let a_int = as_nonneg_int(self.params.a());
        if f == 1 || self.even_multiplicity() {
            let a = a_int.unwrap_or(0);
            let pt = self.power_t.ceil().to_integer().to_u64().unwrap_or(0);
            let deg = weight as u64 + a * pairs + pt;
            return (deg / 2 + 1) as usize;
        }
        match (a_int, as_nonneg_int(&self.power_one_minus_t)) {
            (Some(a), Some(beta)) => {
                let deg = weight as u64 + a * pairs + beta * (f - 1);
                (deg / 2 + 1) as usize
            }
            _ => NON_POLYNOMIAL_NODES,
        }
    }

    /// Tensor rule for ∫ density · g over the ordered cell.
    pub fn grid(&self, nodes: usize) -> Result<QuadGrid> {
        let f = self.free_count();
        if f == 0 {
            return Ok(QuadGrid { points: vec![Vec::new()], weights: vec![1.0] });
        }
        if nodes == 0 {
            return Err(Error::InvalidArgument("quadrature needs at least one node".into()));
        }
        let (pt, pm, a) = self.exponents_f64();
        if f == 1 || self.even_multiplicity() {
            let g = gauss_jacobi_unit(nodes, pt, pm)?;
            let fact: f64 = (1..=f).map(|i| i as f64).product();
            let mut points = Vec::new();
            let mut weights = Vec::new();
            for idx in MultiIndex::new(f, nodes) {
                let t: Vec<f64> = idx.iter().map(|&i| g.nodes[i]).collect();
                let mut w: f64 = idx.iter().map(|&i| g.weights[i]).product();
                for i in 0..f {
                    for j in i + 1..f {
                        w *= (t[i] - t[j]).abs().powf(a);
                    }
                }
                if w != 0.0 {
                    points.push(t);
                    weights.push(w / fact);
                }
            }
            return Ok(QuadGrid { points, weights });
        }
        // t_1 = u_1, t_i = t_{i−1} u_i maps the cube onto the ordered cell.
        let rules = (1..=f)
            .map(|l| {
                let m = (f - l + 1) as f64;
                let e = pt * m + (f - l) as f64 + a * m * (m - 1.0) / 2.0;
                let g = if l == 1 { pm } else { a };
                gauss_jacobi_unit(nodes, e, g)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for idx in MultiIndex::new(f, nodes) {
            let u: Vec<f64> = idx.iter().enumerate().map(|(l, &i)| rules[l].nodes[i]).collect();
            let mut w: f64 = idx.iter().enumerate().map(|(l, &i)| rules[l].weights[i]).product();
            let mut t = Vec::with_capacity(f);
            let mut acc = 1.0;
            for &ul in &u {
                acc *= ul;
                t.push(acc);
            }
            for ti in &t[1..] {
                w *= (1.0 - ti).powf(pm);
            }
            for i in 0..f {
                let mut ratio = 1.0;
                for j in i + 1..f {
                    ratio *= u[j];
                    if j >= i + 2 {
                        w *= (1.0 - ratio).powf(a);
                    }
                }
            }
            points.push(t);
            weights.push(w);
        }
        Ok(QuadGrid { points, weights })
    }

    /// Total mass of the unnormalized density; its reciprocal is the normalizing constant.
    pub fn normalize(&self, nodes: usize) -> Result<f64> {
        if self.free_count() == 0 {
            return Ok(1.0);
        }
        let mass = pairwise_sum(&self.grid(nodes)?.weights);
        Ok(1.0 / mass)
    }

    /// ∫ Φ_µ(1^k, t, 0^{r−λ}) against the normalized measure.
    pub fn moment_spherical(&self, mu: &Partition, nodes: Option<usize>) -> Result<f64> {
        let grid = self.grid(nodes.unwrap_or_else(|| self.default_nodes(mu.weight())))?;
        self.moment_on_grid(mu, &grid)
    }

    pub fn moment_on_grid(&self, mu: &Partition, grid: &QuadGrid) -> Result<f64> {
        if mu.len() > self.lambda {
            return Err(Error::InvalidArgument(format!(
                "{mu} is longer than λ = {}",
                self.lambda
            )));
        }
        let r = self.params.r();
        let phi = jack_spherical(mu, r, self.params.a())?.compile();
        let k = self.k;
        let values: Vec<f64> = grid
            .points
            .par_iter()
            .zip(&grid.weights)
            .map(|(t, w)| {
                let mut x = vec![0.0; r];
                x[..k].fill(1.0);
                x[k..k + t.len()].copy_from_slice(t);
                w * phi.eval(&x).expect("length r")
            })
            .collect();
        Ok(pairwise_sum(&values) / pairwise_sum(&grid.weights))
    }
}

/// Quadrature points on the free coordinates with weights that already include the density.
#[derive(Clone, Debug)]
pub struct QuadGrid {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

struct MultiIndex {
    cur: Option<Vec<usize>>,
    base: usize,
}

impl MultiIndex {
    fn new(len: usize, base: usize) -> Self {
        Self { cur: Some(vec![0; len]), base }
    }
}

impl Iterator for MultiIndex {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().expect("present");
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.cur = None;
                break;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < self.base {
                break;
            }
            cur[pos] = 0;
        }
        Some(out)
    }
}

fn rel_err(value: f64, target: f64) -> f64 {
    if target == 0.0 {
        value.abs()
    } else {
        ((value - target) / target).abs()
    }
}

/// (d/r)_µ · coefficient(µ) as an exact rational.
pub fn moment_target(params: &StructureParams, ty: &HypergeomType, mu: &Partition) -> Result<Q> {
    Ok(pochhammer(&params.d_over_r(), mu, params.a()) * ty.coefficient(mu)?)
}

/// Relative error of ∫ Φ_µ against (d/r)_µ · coefficient(µ).
pub fn check_radial_moment_identity(
    spec: &RadialMeasureSpec,
    ty: &HypergeomType,
    mu: &Partition,
    nodes: Option<usize>,
) -> Result<f64> {
    let target = to_f64(&moment_target(spec.params(), ty, mu)?);
    Ok(rel_err(spec.moment_spherical(mu, nodes)?, target))
}

/// Relative error of ∫ E_e^µ d M̃_{k,r} against d_µ / (ν_k)_µ, with E_e^µ = d_µ/(d/r)_µ · Φ_µ.
pub fn check_eq16(params: &StructureParams, k: usize, mu: &Partition, nodes: Option<usize>) -> Result<f64> {
    if params.model().is_none() || params.a() != &q(2) {
        return Err(Error::Unsupported("needs a matrix model with a = 2".into()));
    }
    let spec = RadialMeasureSpec::boundary_orbit(params, k)?;
    let d_mu = q(dim_isotype(mu, params)? as i64);
    let scale = &d_mu / pochhammer(&params.d_over_r(), mu, params.a());
    let lhs = to_f64(&scale) * spec.moment_spherical(mu, nodes)?;
    let target = d_mu / pochhammer(&params.nu_k(k)?, mu, params.a());
    if target.is_negative() {
        return Err(Error::Pole("negative target".into()));
    }
    Ok(rel_err(lhs, to_f64(&target)))
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentRow {
    pub family: &'static str,
    pub r: usize,
    pub a: String,
    pub b: String,
    pub k: usize,
    pub lambda: usize,
    pub nu: String,
    pub mu: String,
    pub moment: f64,
    pub target: f64,
    pub rel_err: f64,
}

impl MomentRow {
    pub fn compute(spec: &RadialMeasureSpec, mu: &Partition, nodes: Option<usize>) -> Result<Self> {
        let ty = spec.hypergeom_type()?;
        let moment = spec.moment_spherical(mu, nodes)?;
        let target = to_f64(&moment_target(spec.params(), &ty, mu)?);
        Ok(Self {
            family: spec.family().name(),
            r: spec.params().r(),
            a: format_rational(spec.params().a()),
            b: format_rational(spec.params().b()),
            k: spec.k(),
            lambda: spec.lambda(),
            nu: spec.nu().map(format_rational).unwrap_or_default(),
            mu: mu.to_string(),
            moment,
            target,
            rel_err: rel_err(moment, target),
        })
    }
}

pub fn write_moment_csv<W: Write>(rows: &[MomentRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_up_to;
    use crate::scalar::qr;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn disk_bergman() {
        let disk = StructureParams::ball(1).unwrap();
        let spec = RadialMeasureSpec::bergman_weighted(&disk, 1, q(3)).unwrap();
        assert!((spec.density(&[0.25]).unwrap() - 0.75).abs() < 1e-15);
        assert!((spec.normalize(4).unwrap() - 2.0).abs() < 1e-13);
        for m in 0..8u32 {
            let v = spec.moment_spherical(&Partition::row(m), None).unwrap();
            let exact = 2.0 / ((m as f64 + 1.0) * (m as f64 + 2.0));
            assert!((v - exact).abs() < 1e-13, "m={m}: {v}");
        }
    }

    #[test]
    fn boundary_orbit_exponent() {
        let s = StructureParams::matrix(2, 2).unwrap();
        let spec = RadialMeasureSpec::boundary_orbit(&s, 1).unwrap();
        assert_eq!(spec.power_one_minus_t(), &q(1));
        assert_eq!(spec.power_t(), &q(0));
        assert!((spec.normalize(3).unwrap() - 2.0).abs() < 1e-13);
        let v = spec.moment_spherical(&p(&[1]), None).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn point_masses() {
        let s = StructureParams::matrix(2, 2).unwrap();
        let shilov = RadialMeasureSpec::boundary_orbit(&s, 2).unwrap();
        assert!(matches!(shilov.density(&[]), Err(Error::PointMass(_))));
        assert_eq!(shilov.normalize(5).unwrap(), 1.0);
        for mu in partitions_up_to(4, 2) {
            assert!((shilov.moment_spherical(&mu, None).unwrap() - 1.0).abs() < 1e-14);
        }
        let ball = StructureParams::ball(2).unwrap();
        let hardy = RadialMeasureSpec::boundary_orbit(&ball, 1).unwrap();
        assert!((hardy.moment_spherical(&Partition::row(5), None).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn constructor_validation() {
        let s = StructureParams::matrix(2, 2).unwrap();
        assert!(RadialMeasureSpec::bergman_weighted(&s, 2, q(3)).is_err());
        assert!(RadialMeasureSpec::new(Family::Lebesgue, &s, 0, 1, None).is_err());
        assert!(RadialMeasureSpec::new(Family::BoundaryOrbit, &s, 0, 2, None).is_err());
        assert!(RadialMeasureSpec::new(Family::BoundaryKepler, &s, 1, 2, Some(q(5))).is_err());
        let spec = RadialMeasureSpec::boundary_kepler(&s, 1, 2).unwrap();
        assert!(spec.density(&[1.5]).is_err());
        assert!(spec.density(&[0.5, 0.2]).is_err());
    }

    #[test]
    fn degeneration_chain() {
        for s in [StructureParams::matrix(2, 3).unwrap(), StructureParams::new(3, q(1), q(2)).unwrap()] {
            let r = s.r();
            for k in 1..=r {
                let a = RadialMeasureSpec::boundary_kepler(&s, k, r).unwrap();
                let b = RadialMeasureSpec::boundary_orbit(&s, k).unwrap();
                assert_eq!(a.power_t(), b.power_t());
                assert_eq!(a.power_one_minus_t(), b.power_one_minus_t());
            }
            let leb = RadialMeasureSpec::lebesgue(&s).unwrap();
            let berg = RadialMeasureSpec::bergman_weighted(&s, r, s.p().clone()).unwrap();
            assert_eq!(leb.power_t(), berg.power_t());
            assert_eq!(leb.power_one_minus_t(), berg.power_one_minus_t());
            let pts = [0.9, 0.5, 0.1];
            assert_eq!(leb.density(&pts[..r]).unwrap(), berg.density(&pts[..r]).unwrap());
        }
    }

    #[test]
    fn boundary_exponent_matches_nu_minus_genus() {
        for s in [StructureParams::matrix(3, 4).unwrap(), StructureParams::new(3, qr(3, 2), q(1)).unwrap()] {
            for k in 1..=s.r() {
                let spec = RadialMeasureSpec::boundary_orbit(&s, k).unwrap();
                assert_eq!(spec.power_one_minus_t(), &(s.nu_k(k).unwrap() - s.genus_k(k).unwrap()));
            }
        }
    }

    #[test]
    fn hand_computed_kepler_boundary() {
        // r = 3, a = 2, k = 1, λ = 2: density t²(1−t), Φ_(1)(1, t, 0) = (1 + t)/3
        let s = StructureParams::matrix(3, 3).unwrap();
        let spec = RadialMeasureSpec::boundary_kepler(&s, 1, 2).unwrap();
        let v = spec.moment_spherical(&p(&[1]), None).unwrap();
        assert!((v - 8.0 / 15.0).abs() < 1e-13);
    }

    #[test]
    fn moments_decrease_in_nu() {
        let s = StructureParams::matrix(2, 2).unwrap();
        for mu in [p(&[1]), p(&[2, 1]), p(&[3])] {
            let mut prev = f64::INFINITY;
            for nu in [qr(7, 2), q(4), q(5), qr(13, 2), q(9)] {
                let spec = RadialMeasureSpec::bergman_weighted(&s, 2, nu).unwrap();
                let v = spec.moment_spherical(&mu, None).unwrap();
                assert!(v < prev, "µ={mu}");
                prev = v;
            }
        }
    }

    #[test]
    fn odd_multiplicity_rule_is_exact() {
        // (r, a, b) = (2, 1, 0), k = 0, λ = 2, ν = p + 1: the product map gives a polynomial integrand
        let s = StructureParams::new(2, q(1), q(0)).unwrap();
        let spec = RadialMeasureSpec::bergman_weighted(&s, 2, s.p() + q(1)).unwrap();
        assert!(spec.quadrature_is_exact());
        let ty = spec.hypergeom_type().unwrap();
        for mu in partitions_up_to(6, 2) {
            let err = check_radial_moment_identity(&spec, &ty, &mu, None).unwrap();
            assert!(err < 1e-12, "µ={mu}: {err}");
        }
    }

    #[test]
    fn eq16_examples() {
        let s = StructureParams::matrix(2, 2).unwrap();
        assert!(check_eq16(&s, 1, &p(&[1]), None).unwrap() < 1e-13);
        assert!(check_eq16(&s, 2, &p(&[1, 1]), None).unwrap() < 1e-13);
        assert!(check_eq16(&s, 1, &Partition::empty(), None).unwrap() < 1e-13);
        let generic = StructureParams::new(2, q(1), q(0)).unwrap();
        assert!(check_eq16(&generic, 1, &p(&[1]), None).is_err());
    }

    #[test]
    fn csv_has_header() {
        let disk = StructureParams::ball(1).unwrap();
        let spec = RadialMeasureSpec::bergman_weighted(&disk, 1, q(3)).unwrap();
        let row = MomentRow::compute(&spec, &Partition::row(2), None).unwrap();
        let mut buf = Vec::new();
        write_moment_csv(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("family,r,a,b,k,lambda,nu,mu,moment,target,rel_err\n"));
        assert!(text.contains("bergman_weighted,1,2,0,0,1,3,(2),"));
    }
}
