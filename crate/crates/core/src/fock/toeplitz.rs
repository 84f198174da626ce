use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::isotype::FockSpace;
use super::poly::{fischer_pairing, GaussMatrix, MatrixPoly};
use crate::error::{Error, Result};
use crate::hypergeom::HypergeomType;
use crate::params::half;
use crate::partition::{partitions_up_to, Partition};
use crate::scalar::{format_gq, q, scale_gq, GQ, Q};

/// Polynomial symbols and their complex conjugates.
#[derive(Clone, Debug, PartialEq)]
pub enum Symbol {
    Holomorphic(MatrixPoly),
    /// z ↦ conj(p(z)).
    AntiHolomorphic(MatrixPoly),
}

impl Symbol {
    /// v* : z ↦ (z|v).
    pub fn linear(v: &GaussMatrix) -> Self {
        Symbol::Holomorphic(MatrixPoly::linear_form(v))
    }

    /// conj(v*).
    pub fn linear_conj(v: &GaussMatrix) -> Self {
        Symbol::AntiHolomorphic(MatrixPoly::linear_form(v))
    }

    pub fn poly(&self) -> &MatrixPoly {
        match self {
            Symbol::Holomorphic(p) | Symbol::AntiHolomorphic(p) => p,
        }
    }

    pub fn degree(&self) -> u32 {
        self.poly().degree().unwrap_or(0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Holomorphic(p) => write!(f, "{p}"),
            Symbol::AntiHolomorphic(p) => write!(f, "conj({p})"),
        }
    }
}

fn check_model(space: &FockSpace, p: &MatrixPoly) -> Result<()> {
    if (p.rows(), p.cols()) != (space.rows(), space.cols()) {
        return Err(Error::InvalidArgument(format!(
            "polynomial of shape {}×{} in a {}×{} model",
            p.rows(),
            p.cols(),
            space.rows(),
            space.cols()
        )));
    }
    Ok(())
}

/// T(p)φ = π(p·πφ), π the projection onto isotypes of length ≤ ell.
fn apply_holomorphic(space: &FockSpace, ty: &HypergeomType, p: &MatrixPoly, f: &MatrixPoly) -> Result<MatrixPoly> {
    let inner = space.project_rank(f, ty.ell())?;
    space.project_rank(&(p * &inner), ty.ell())
}

/// Ratio coefficient(µ)/coefficient(µ − ε_j) written out as products.
fn lowering_weight(ty: &HypergeomType, mu: &Partition, j: usize) -> Result<Q> {
    let shift = half(ty.a()) * q(j as i64 - 1);
    let mj = q(mu.part(j) as i64);
    let factor = |x: &Q| x - &shift + &mj - Q::one();
    let num: Q = ty.x().iter().map(factor).fold(Q::one(), |a, b| a * b);
    let den: Q = ty.y().iter().map(factor).fold(Q::one(), |a, b| a * b);
    if den.is_zero() {
        return Err(Error::Pole(format!("lowering weight at {mu}, j = {j} has a vanishing denominator")));
    }
    Ok(num / den)
}

fn check_in_isotype(space: &FockSpace, ty: &HypergeomType, mu: &Partition, p: &MatrixPoly) -> Result<()> {
    check_model(space, p)?;
    if mu.len() > ty.ell() {
        return Err(Error::InvalidArgument(format!("{mu} is longer than the type rank {}", ty.ell())));
    }
    if &space.project(p, mu)? != p {
        return Err(Error::InvalidArgument(format!("polynomial does not lie in P_{mu}")));
    }
    Ok(())
}

/// T(conj v*) on p ∈ P_µ from the lowering weights applied to the components of ∂_v p.
pub fn adjoint_closed_form(
    space: &FockSpace,
    ty: &HypergeomType,
    v: &GaussMatrix,
    mu: &Partition,
    p: &MatrixPoly,
) -> Result<MatrixPoly> {
    check_in_isotype(space, ty, mu, p)?;
    closed_form_unchecked(space, ty, v, mu, p)
}

fn closed_form_unchecked(
    space: &FockSpace,
    ty: &HypergeomType,
    v: &GaussMatrix,
    mu: &Partition,
    p: &MatrixPoly,
) -> Result<MatrixPoly> {
    let dp = p.directional_derivative(v);
    let mut out = MatrixPoly::zero(space.rows(), space.cols());
    if dp.is_zero() {
        return Ok(out);
    }
    for j in 1..=mu.len() {
        let Some(nu) = mu.remove_box(j) else { continue };
        let comp = space.project(&dp, &nu)?;
        if comp.is_zero() {
            continue;
        }
        out = &out + &comp.scale_q(&lowering_weight(ty, mu, j)?);
    }
    Ok(out)
}

/// T(conj v*) on p ∈ P_µ from (T(conj v*)p | u)_type = (p | v* u)_type over bases of every P_{µ−ε_j}.
pub fn adjoint_brute_force(
    space: &FockSpace,
    ty: &HypergeomType,
    v: &GaussMatrix,
    mu: &Partition,
    p: &MatrixPoly,
) -> Result<MatrixPoly> {
    check_in_isotype(space, ty, mu, p)?;
    let lin = MatrixPoly::linear_form(v);
    let cmu = ty.coefficient(mu)?;
    let mut out = MatrixPoly::zero(space.rows(), space.cols());
    for j in 1..=mu.len() {
        let Some(nu) = mu.remove_box(j) else { continue };
        let basis = space.basis(&nu)?;
        let ratio = &cmu / ty.coefficient(&nu)?;
        for (u, g) in basis.vectors.iter().zip(&basis.gram) {
            if g.is_zero() {
                return Err(Error::Degenerate(format!("singular Gram in P_{nu}")));
            }
            let c = scale_gq(&(&ratio / g), &fischer_pairing(p, &(&lin * u))?);
            out = &out + &u.scale(&c);
        }
    }
    Ok(out)
}

/// T(conj v*) on an arbitrary polynomial, isotype by isotype.
fn apply_lowering(space: &FockSpace, ty: &HypergeomType, v: &GaussMatrix, f: &MatrixPoly) -> Result<MatrixPoly> {
    let mut out = MatrixPoly::zero(space.rows(), space.cols());
    for (mu, comp) in space.decompose(f)? {
        if mu.len() > ty.ell() {
            continue;
        }
        out = &out + &closed_form_unchecked(space, ty, v, &mu, &comp)?;
    }
    Ok(out)
}

/// T(symbol)φ. For conj(p) = Σ conj(p_α) conj(z)^α the operator is Σ conj(p_α) ∏ T(conj z_ij)^{α_ij}.
pub fn apply(space: &FockSpace, ty: &HypergeomType, symbol: &Symbol, f: &MatrixPoly) -> Result<MatrixPoly> {
    check_model(space, f)?;
    check_model(space, symbol.poly())?;
    match symbol {
        Symbol::Holomorphic(p) => apply_holomorphic(space, ty, p, f),
        Symbol::AntiHolomorphic(p) => {
            let start = space.project_rank(f, ty.ell())?;
            let (rows, cols) = (space.rows(), space.cols());
            let mut out = MatrixPoly::zero(rows, cols);
            for (alpha, c) in p.terms() {
                let mut cur = start.clone();
                for (idx, &k) in alpha.iter().enumerate() {
                    let unit = GaussMatrix::unit(rows, cols, idx / cols, idx % cols);
                    for _ in 0..k {
                        if cur.is_zero() {
                            break;
                        }
                        cur = apply_lowering(space, ty, &unit, &cur)?;
                    }
                }
                out = &out + &cur.scale(&c.conj());
            }
            Ok(out)
        }
    }
}

/// T(pq)φ = T(p)T(q)φ for holomorphic p, q.
pub fn check_multiplicativity(
    space: &FockSpace,
    ty: &HypergeomType,
    p: &MatrixPoly,
    q: &MatrixPoly,
    phi: &MatrixPoly,
    max_degree: u32,
) -> Result<bool> {
    let deg = |f: &MatrixPoly| f.degree().unwrap_or(0);
    if deg(p) + deg(q) + deg(phi) > max_degree {
        return Err(Error::InvalidArgument(format!(
            "degrees add up to {} above the cap {max_degree}",
            deg(p) + deg(q) + deg(phi)
        )));
    }
    let lhs = apply_holomorphic(space, ty, &(p * q), phi)?;
    let rhs = apply_holomorphic(space, ty, p, &apply_holomorphic(space, ty, q, phi)?)?;
    Ok(lhs == rhs)
}

/// Truncated Toeplitz operator in the orthogonal isotype bases; only nonzero blocks are stored.
#[derive(Clone, Debug)]
pub struct ToeplitzBlockMatrix {
    pub ty: HypergeomType,
    pub max_degree: u32,
    pub isotypes: Vec<Partition>,
    /// (µ_out, µ_in) ↦ matrix whose column b holds the coordinates of T u_b.
    pub blocks: BTreeMap<(Partition, Partition), Vec<Vec<GQ>>>,
}

impl ToeplitzBlockMatrix {
    pub fn block(&self, out: &Partition, inp: &Partition) -> Option<&Vec<Vec<GQ>>> {
        self.blocks.get(&(out.clone(), inp.clone()))
    }

    pub fn to_json(&self) -> Value {
        let blocks: serde_json::Map<String, Value> = self
            .blocks
            .iter()
            .map(|((o, i), m)| {
                let rows: Vec<Value> =
                    m.iter().map(|row| Value::from(row.iter().map(format_gq).collect::<Vec<_>>())).collect();
                (format!("{o}<-{i}"), Value::from(rows))
            })
            .collect();
        json!({
            "type": self.ty.to_string(),
            "max_degree": self.max_degree,
            "isotypes": self.isotypes.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "blocks": blocks,
        })
    }
}

pub fn toeplitz_matrix(
    space: &FockSpace,
    ty: &HypergeomType,
    symbol: &Symbol,
    max_degree: u32,
) -> Result<ToeplitzBlockMatrix> {
    if max_degree < symbol.degree() {
        return Err(Error::InvalidArgument(format!(
            "degree cap {max_degree} below the symbol degree {}",
            symbol.degree()
        )));
    }
    let isotypes = partitions_up_to(max_degree, ty.ell().min(space.rank()));
    let columns: Vec<Vec<((Partition, Partition), Vec<Vec<GQ>>)>> = isotypes
        .par_iter()
        .map(|inp| -> Result<_> {
            let basis = space.basis(inp)?;
            let images: Vec<MatrixPoly> =
                basis.vectors.iter().map(|u| apply(space, ty, symbol, u)).collect::<Result<_>>()?;
            let mut found = Vec::new();
            for out in &isotypes {
                let target = space.basis(out)?;
                let mut m = vec![vec![GQ::zero(); basis.len()]; target.len()];
                let mut nonzero = false;
                for (b, img) in images.iter().enumerate() {
                    let comp = space.project(img, out)?;
                    if comp.is_zero() {
                        continue;
                    }
                    for (a, c) in target.coordinates(&comp)?.into_iter().enumerate() {
                        nonzero |= !c.is_zero();
                        m[a][b] = c;
                    }
                }
                if nonzero {
                    found.push(((out.clone(), inp.clone()), m));
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;
    Ok(ToeplitzBlockMatrix {
        ty: ty.clone(),
        max_degree,
        isotypes,
        blocks: columns.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::make_type;
    use crate::params::StructureParams;
    use crate::scalar::{gq_real, qr, rising};

    #[test]
    fn ball_shift_weights() {
        let params = StructureParams::ball(3).unwrap();
        let nu = qr(7, 2);
        let ty = make_type(&params, 0, 1, Some(&nu)).unwrap();
        let fs = FockSpace::new(1, 3);
        let zbar = Symbol::linear_conj(&GaussMatrix::unit(1, 3, 0, 0));
        for m in 1..6u32 {
            let zm = MatrixPoly::monomial(1, 3, vec![m, 0, 0], gq_real(Q::one()));
            let got = apply(&fs, &ty, &zbar, &zm).unwrap();
            let want = MatrixPoly::monomial(1, 3, vec![m - 1, 0, 0], gq_real(q(m as i64) / (&nu + q(m as i64) - Q::one())));
            assert_eq!(got, want);
            // the shift is adjoint to multiplication by z1 in the norm m!/(ν)_m
            let norm = |k: u32| Q::from_integer(crate::scalar::factorial(k)) / rising(&nu, k);
            assert_eq!(q(m as i64) / (&nu + q(m as i64 - 1)), norm(m) / norm(m - 1));
        }
    }

    #[test]
    fn identity_symbol() {
        let params = StructureParams::matrix(2, 2).unwrap();
        let ty = make_type(&params, 1, 2, None).unwrap();
        let fs = FockSpace::new(2, 2);
        let t = toeplitz_matrix(&fs, &ty, &Symbol::Holomorphic(MatrixPoly::one(2, 2)), 3).unwrap();
        for ((o, i), m) in &t.blocks {
            assert_eq!(o, i);
            for (a, row) in m.iter().enumerate() {
                for (b, c) in row.iter().enumerate() {
                    assert_eq!(c, &if a == b { gq_real(Q::one()) } else { GQ::zero() });
                }
            }
        }
        assert_eq!(t.blocks.len(), t.isotypes.len());
    }

    #[test]
    fn adjoint_vanishes_on_constant_direction() {
        let params = StructureParams::matrix(2, 2).unwrap();
        let ty = make_type(&params, 0, 2, Some(&q(5))).unwrap();
        let fs = FockSpace::new(2, 2);
        let v = GaussMatrix::unit(2, 2, 0, 1);
        let p = MatrixPoly::var(2, 2, 1, 0);
        let mu = Partition::row(1);
        assert!(adjoint_closed_form(&fs, &ty, &v, &mu, &p).unwrap().is_zero());
        assert!(adjoint_brute_force(&fs, &ty, &v, &mu, &p).unwrap().is_zero());
    }

    #[test]
    fn multiplicativity_simple() {
        let params = StructureParams::matrix(2, 2).unwrap();
        let ty = make_type(&params, 1, 2, None).unwrap();
        let fs = FockSpace::new(2, 2);
        let z = MatrixPoly::var(2, 2, 0, 0);
        let one = MatrixPoly::one(2, 2);
        assert!(check_multiplicativity(&fs, &ty, &z, &z, &one, 2).unwrap());
        assert_eq!(apply(&fs, &ty, &Symbol::Holomorphic(&z * &z), &one).unwrap(), &z * &z);
        assert!(check_multiplicativity(&fs, &ty, &one.scale_q(&q(3)), &z, &one, 1).unwrap());
    }

    #[test]
    fn json_dump_keys() {
        let params = StructureParams::matrix(2, 2).unwrap();
        let ty = make_type(&params, 1, 2, None).unwrap();
        let fs = FockSpace::new(2, 2);
        let t = toeplitz_matrix(&fs, &ty, &Symbol::linear(&GaussMatrix::unit(2, 2, 0, 0)), 2).unwrap();
        let js = t.to_json();
        assert!(js["blocks"].get("(1)<-()").is_some());
        assert!(js["blocks"].get("()<-(1)").is_none());
    }
}
