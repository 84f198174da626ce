//! Peter–Weyl decomposition of polynomials on ℂ^{r×s}.
//!
//! Each torus weight space (fixed row and column sums) is split by the quadratic
//! Casimir Σ E_ik E_ki of gl(r), E_ik = Σ_j z_ij ∂/∂z_kj, which acts on P_µ by
//! Σ m_i (m_i + r + 1 − 2i).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use super::poly::{exponent_factorial, fischer_pairing, fischer_norm_sq, MatrixPoly};
use crate::error::{Error, Result};
use crate::hypergeom::HypergeomType;
use crate::params::StructureParams;
use crate::partition::{partitions_of, Partition};
use crate::scalar::{gq_real, gq_zero, q, scale_gq, GQ, Q};
use crate::symfunc::principal_spec;

type Margins = (Vec<u32>, Vec<u32>);

/// Monomials of one torus weight together with the isotypic projectors restricted to it.
#[derive(Debug)]
pub struct WeightSpace {
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    projectors: Vec<(Partition, Vec<Vec<Q>>)>,
}

impl WeightSpace {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }
    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }
    pub fn isotypes(&self) -> impl Iterator<Item = &Partition> {
        self.projectors.iter().map(|(p, _)| p)
    }
    fn projector(&self, mu: &Partition) -> Option<&Vec<Vec<Q>>> {
        self.projectors.iter().find(|(p, _)| p == mu).map(|(_, m)| m)
    }
}

/// Orthogonal basis of P_µ with its diagonal Fischer Gram.
#[derive(Debug, Clone)]
pub struct IsotypeBasis {
    pub mu: Partition,
    pub vectors: Vec<MatrixPoly>,
    pub gram: Vec<Q>,
}

impl IsotypeBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Coordinates c_a = (f|u_a)_F / g_a of the P_µ-component of f.
    pub fn coordinates(&self, f: &MatrixPoly) -> Result<Vec<GQ>> {
        self.vectors
            .iter()
            .zip(&self.gram)
            .map(|(u, g)| Ok(scale_gq(&(Q::one() / g), &fischer_pairing(f, u)?)))
            .collect()
    }
}

/// Polynomial model ℂ^{rows×cols} with caches for weight spaces and bases.
#[derive(Debug)]
pub struct FockSpace {
    rows: usize,
    cols: usize,
    weights: RwLock<HashMap<Margins, Arc<WeightSpace>>>,
    bases: RwLock<HashMap<Partition, Arc<IsotypeBasis>>>,
}

fn casimir_eigenvalue(mu: &Partition, rows: usize) -> i64 {
    mu.parts()
        .iter()
        .enumerate()
        .map(|(i, &m)| m as i64 * (m as i64 + rows as i64 + 1 - 2 * (i as i64 + 1)))
        .sum()
}

/// Exponent matrices with the given row and column sums.
fn contingency_tables(rs: &[u32], cs: &[u32]) -> Vec<Vec<u32>> {
    fn fill(
        rs: &[u32],
        cap: &mut Vec<u32>,
        row: usize,
        col: usize,
        left: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let cols = cap.len();
        if row == rs.len() {
            if cap.iter().all(|&c| c == 0) {
                out.push(cur.clone());
            }
            return;
        }
        if col == cols {
            if left == 0 {
                let next = rs.get(row + 1).copied().unwrap_or(0);
                fill(rs, cap, row + 1, 0, next, cur, out);
            }
            return;
        }
        let hi = left.min(cap[col]);
        let lo = if col + 1 == cols { left } else { 0 };
        if lo > hi {
            return;
        }
        for x in lo..=hi {
            cap[col] -= x;
            cur.push(x);
            fill(rs, cap, row, col + 1, left - x, cur, out);
            cur.pop();
            cap[col] += x;
        }
    }
    let mut out = Vec::new();
    if rs.is_empty() || cs.is_empty() {
        if rs.iter().chain(cs).all(|&x| x == 0) {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cap = cs.to_vec();
    fill(rs, &mut cap, 0, 0, rs[0], &mut Vec::new(), &mut out);
    out
}

/// Compositions of n into exactly `parts` nonnegative parts.
fn compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

impl FockSpace {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, weights: RwLock::new(HashMap::new()), bases: RwLock::new(HashMap::new()) }
    }

    pub fn for_params(params: &StructureParams) -> Result<Self> {
        let shape = params
            .model()
            .ok_or_else(|| Error::Unsupported("operator algebra needs a concrete polynomial model".into()))?;
        Ok(Self::new(shape.rows, shape.cols))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn rank(&self) -> usize {
        self.rows.min(self.cols)
    }

    fn check(&self, f: &MatrixPoly) -> Result<()> {
        if (f.rows(), f.cols()) != (self.rows, self.cols) {
            return Err(Error::InvalidArgument(format!(
                "polynomial of shape {}×{} in a {}×{} model",
                f.rows(),
                f.cols(),
                self.rows,
                self.cols
            )));
        }
        Ok(())
    }

    /// E_ik = Σ_j z_ij ∂/∂z_kj on a sparse integer vector.
    fn apply_e(&self, i: usize, k: usize, v: &BTreeMap<Vec<u32>, i64>) -> BTreeMap<Vec<u32>, i64> {
        let mut out = BTreeMap::new();
        for (e, c) in v {
            for j in 0..self.cols {
                let from = k * self.cols + j;
                if e[from] == 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[from] -= 1;
                e2[i * self.cols + j] += 1;
                *out.entry(e2).or_insert(0) += c * e[from] as i64;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn casimir(&self, e: &[u32]) -> BTreeMap<Vec<u32>, i64> {
        let start: BTreeMap<Vec<u32>, i64> = [(e.to_vec(), 1)].into_iter().collect();
        let mut out: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for i in 0..self.rows {
            for k in 0..self.rows {
                let inner = self.apply_e(k, i, &start);
                for (m, c) in self.apply_e(i, k, &inner) {
                    *out.entry(m).or_insert(0) += c;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn weight_space(&self, rs: &[u32], cs: &[u32]) -> Result<Arc<WeightSpace>> {
        let key = (rs.to_vec(), cs.to_vec());
        if let Some(ws) = self.weights.read().expect("cache lock").get(&key) {
            return Ok(ws.clone());
        }
        let ws = Arc::new(self.build_weight_space(rs, cs)?);
        self.weights.write().expect("cache lock").insert(key, ws.clone());
        Ok(ws)
    }

    fn build_weight_space(&self, rs: &[u32], cs: &[u32]) -> Result<WeightSpace> {
        let n: u32 = rs.iter().sum();
        let monomials = contingency_tables(rs, cs);
        let index: HashMap<Vec<u32>, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let rsort = Partition::from_unsorted(rs.to_vec());
        let csort = Partition::from_unsorted(cs.to_vec());
        let candidates: Vec<Partition> = partitions_of(n, self.rank())
            .into_iter()
            .filter(|nu| nu.dominates(&rsort) && nu.dominates(&csort))
            .collect();
        let eig: Vec<i64> = candidates.iter().map(|nu| casimir_eigenvalue(nu, self.rows)).collect();
        for a in 0..eig.len() {
            for b in a + 1..eig.len() {
                if eig[a] == eig[b] {
                    return Err(Error::Unsupported(format!(
                        "Casimir eigenvalue {} shared by {} and {}",
                        eig[a], candidates[a], candidates[b]
                    )));
                }
            }
        }
        let dim = monomials.len();
        let mut cas = vec![vec![Q::zero(); dim]; dim];
        for (col, m) in monomials.iter().enumerate() {
            for (img, c) in self.casimir(m) {
                let row = *index.get(&img).expect("Casimir preserves the weight");
                cas[row][col] = q(c);
            }
        }
        let identity: Vec<Vec<Q>> = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        let mut projectors = Vec::with_capacity(candidates.len());
        for (a, mu) in candidates.iter().enumerate() {
            let mut p = identity.clone();
            for (b, _) in candidates.iter().enumerate() {
                if a == b {
                    continue;
                }
                let denom = q(eig[a] - eig[b]);
                let factor: Vec<Vec<Q>> = (0..dim)
                    .map(|i| {
                        (0..dim)
                            .map(|j| {
                                let shift = if i == j { q(eig[b]) } else { Q::zero() };
                                (&cas[i][j] - shift) / &denom
                            })
                            .collect()
                    })
                    .collect();
                p = mat_mul(&factor, &p);
            }
            if p.iter().any(|row| row.iter().any(|x| !x.is_zero())) {
                projectors.push((mu.clone(), p));
            }
        }
        Ok(WeightSpace { monomials, index, projectors })
    }

    /// All isotypic components of f, keyed by partition.
    pub fn decompose(&self, f: &MatrixPoly) -> Result<BTreeMap<Partition, MatrixPoly>> {
        self.check(f)?;
        let mut groups: BTreeMap<Margins, Vec<(&Vec<u32>, &GQ)>> = BTreeMap::new();
        for (e, c) in f.terms() {
            groups.entry(MatrixPoly::margins(self.rows, self.cols, e)).or_default().push((e, c));
        }
        let mut out: BTreeMap<Partition, MatrixPoly> = BTreeMap::new();
        for ((rs, cs), terms) in groups {
            let ws = self.weight_space(&rs, &cs)?;
            let mut v = vec![gq_zero(); ws.dim()];
            for (e, c) in terms {
                v[ws.index[e]] = c.clone();
            }
            for (mu, p) in &ws.projectors {
                let comp = out.entry(mu.clone()).or_insert_with(|| MatrixPoly::zero(self.rows, self.cols));
                for (i, row) in p.iter().enumerate() {
                    let mut acc = gq_zero();
                    for (pij, vj) in row.iter().zip(&v) {
                        if !pij.is_zero() && !vj.is_zero() {
                            acc += scale_gq(pij, vj);
                        }
                    }
                    comp.add_term(ws.monomials[i].clone(), acc);
                }
            }
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    /// π_µ f.
    pub fn project(&self, f: &MatrixPoly, mu: &Partition) -> Result<MatrixPoly> {
        self.check(f)?;
        let mut out = MatrixPoly::zero(self.rows, self.cols);
        let n = mu.weight();
        let mut groups: BTreeMap<Margins, Vec<(&Vec<u32>, &GQ)>> = BTreeMap::new();
        for (e, c) in f.terms() {
            if e.iter().sum::<u32>() == n {
                groups.entry(MatrixPoly::margins(self.rows, self.cols, e)).or_default().push((e, c));
            }
        }
        for ((rs, cs), terms) in groups {
            let ws = self.weight_space(&rs, &cs)?;
            let Some(p) = ws.projector(mu) else { continue };
            let mut v = vec![gq_zero(); ws.dim()];
            for (e, c) in terms {
                v[ws.index[e]] = c.clone();
            }
            for (i, row) in p.iter().enumerate() {
                let mut acc = gq_zero();
                for (pij, vj) in row.iter().zip(&v) {
                    if !pij.is_zero() && !vj.is_zero() {
                        acc += scale_gq(pij, vj);
                    }
                }
                out.add_term(ws.monomials[i].clone(), acc);
            }
        }
        Ok(out)
    }

    /// Σ_{ℓ(µ) ≤ ell} π_µ f, the projection onto P^ell.
    pub fn project_rank(&self, f: &MatrixPoly, ell: usize) -> Result<MatrixPoly> {
        if ell >= self.rank() {
            self.check(f)?;
            return Ok(f.clone());
        }
        let mut out = MatrixPoly::zero(self.rows, self.cols);
        for (mu, comp) in self.decompose(f)? {
            if mu.len() <= ell {
                out = &out + &comp;
            }
        }
        Ok(out)
    }

    pub fn basis(&self, mu: &Partition) -> Result<Arc<IsotypeBasis>> {
        if let Some(b) = self.bases.read().expect("cache lock").get(mu) {
            return Ok(b.clone());
        }
        let b = Arc::new(self.build_basis(mu)?);
        self.bases.write().expect("cache lock").insert(mu.clone(), b.clone());
        Ok(b)
    }

    fn build_basis(&self, mu: &Partition) -> Result<IsotypeBasis> {
        let mut vectors = Vec::new();
        let mut gram = Vec::new();
        if mu.len() > self.rank() {
            return Ok(IsotypeBasis { mu: mu.clone(), vectors, gram });
        }
        let n = mu.weight();
        for rs in compositions(n, self.rows) {
            if !mu.dominates(&Partition::from_unsorted(rs.clone())) {
                continue;
            }
            for cs in compositions(n, self.cols) {
                if !mu.dominates(&Partition::from_unsorted(cs.clone())) {
                    continue;
                }
                let ws = self.weight_space(&rs, &cs)?;
                let Some(p) = ws.projector(mu) else { continue };
                let fact: Vec<Q> = ws.monomials.iter().map(|m| exponent_factorial(m)).collect();
                let inner = |x: &[Q], y: &[Q]| -> Q {
                    x.iter().zip(y).zip(&fact).filter(|((a, b), _)| !a.is_zero() && !b.is_zero()).map(|((a, b), f)| a * b * f).sum()
                };
                let mut local: Vec<(Vec<Q>, Q)> = Vec::new();
                for col in 0..ws.dim() {
                    let mut v: Vec<Q> = p.iter().map(|row| row[col].clone()).collect();
                    for (u, g) in &local {
                        let c = inner(&v, u) / g;
                        if !c.is_zero() {
                            for (vi, ui) in v.iter_mut().zip(u) {
                                *vi -= &c * ui;
                            }
                        }
                    }
                    if v.iter().any(|x| !x.is_zero()) {
                        let g = inner(&v, &v);
                        local.push((v, g));
                    }
                }
                for (v, g) in local {
                    let terms = ws.monomials.iter().cloned().zip(v.into_iter().map(gq_real));
                    vectors.push(MatrixPoly::from_terms(self.rows, self.cols, terms)?);
                    gram.push(g);
                }
            }
        }
        let expected = (principal_spec(mu, self.rows)? * principal_spec(mu, self.cols)?).to_integer();
        if num_bigint::BigInt::from(vectors.len()) != expected {
            return Err(Error::Degenerate(format!(
                "basis of P_{mu} has {} vectors, expected {expected}",
                vectors.len()
            )));
        }
        Ok(IsotypeBasis { mu: mu.clone(), vectors, gram })
    }

    /// (f|g)_type = Σ_{ℓ(µ) ≤ ell} coefficient(µ) (π_µ f | π_µ g)_F.
    pub fn type_pairing(&self, ty: &HypergeomType, f: &MatrixPoly, g: &MatrixPoly) -> Result<GQ> {
        let df = self.decompose(f)?;
        let dg = self.decompose(g)?;
        let mut acc = gq_zero();
        for (mu, pf) in &df {
            if mu.len() > ty.ell() {
                continue;
            }
            if let Some(pg) = dg.get(mu) {
                acc += scale_gq(&ty.coefficient(mu)?, &fischer_pairing(pf, pg)?);
            }
        }
        Ok(acc)
    }

    pub fn type_norm_sq(&self, ty: &HypergeomType, f: &MatrixPoly) -> Result<Q> {
        let mut acc = Q::zero();
        for (mu, pf) in self.decompose(f)? {
            if mu.len() <= ty.ell() {
                acc += ty.coefficient(&mu)? * fischer_norm_sq(&pf);
            }
        }
        Ok(acc)
    }
}
