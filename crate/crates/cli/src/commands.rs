use std::collections::BTreeMap;

use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::value::RawValue;

use symdomain::asymptotics::{peaking_moment_ratio, peaking_moment_ratio_series, PeakingMomentSpec};
use symdomain::fock::{
    adjoint_brute_force, adjoint_closed_form, apply, boundary_degree, boundary_quadratic_form, boundary_residual,
    check_multiplicativity, eventually_nonincreasing, toeplitz_matrix, FockSpace, GaussMatrix, MatrixPoly, Symbol,
    BOUNDARY_TAIL_TOL,
};
use symdomain::moments::{in_rank_one_w_sub, w_sub_scan, DEFAULT_HANKEL_SIZE, DEFAULT_HANKEL_TOL};
use symdomain::partition::partitions_up_to;
use symdomain::radial::{MomentRow, RadialMeasureSpec};
use symdomain::scalar::{format_rational, gq, parse_rational, q, qr, scale_gq, to_f64};
use symdomain::stratum::strata;
use symdomain::{make_type, pochhammer, Error, HypergeomType, Partition, StructureParams, Q};

use crate::report::{num, rel_err, CaseResult, RunReport};

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_)
        | Error::InvalidArgument(_)
        | Error::Parse(_)
        | Error::Pole(_)
        | Error::Unsupported(_) => 2,
        _ => 1,
    }
}

fn rational(s: &str) -> Result<Q, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

type Params = BTreeMap<String, String>;

fn echo(pairs: &[(&str, String)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn opt_q(v: &Option<Q>) -> String {
    v.as_ref().map(format_rational).unwrap_or_else(|| "none".into())
}

/// `RxS` for ℂ^{R×S} or `ball:D` for the unit ball of ℂ^D.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Matrix { rows: usize, cols: usize },
    Ball(usize),
}

impl Model {
    fn shape(&self) -> (usize, usize) {
        match *self {
            Model::Matrix { rows, cols } => (rows, cols),
            Model::Ball(d) => (1, d),
        }
    }

    fn params(&self) -> symdomain::Result<StructureParams> {
        match *self {
            Model::Matrix { rows, cols } => StructureParams::matrix(rows, cols),
            Model::Ball(d) => StructureParams::ball(d),
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Model::Matrix { rows, cols } => write!(f, "{rows}x{cols}"),
            Model::Ball(d) => write!(f, "ball:{d}"),
        }
    }
}

fn model(s: &str) -> Result<Model, String> {
    let bad = || format!("model must look like 2x3 or ball:3, got {s:?}");
    if let Some(d) = s.strip_prefix("ball:") {
        let d: usize = d.parse().map_err(|_| bad())?;
        return if d == 0 { Err(bad()) } else { Ok(Model::Ball(d)) };
    }
    let (r, c) = s.split_once('x').ok_or_else(bad)?;
    let rows: usize = r.parse().map_err(|_| bad())?;
    let cols: usize = c.parse().map_err(|_| bad())?;
    if rows == 0 || rows > cols {
        return Err(format!("matrix model needs 1 ≤ rows ≤ cols, got {s}"));
    }
    Ok(Model::Matrix { rows, cols })
}

/// `1`, `zIJ`, `zbarIJ` with 1-based digits; on a single row `zJ` also works.
fn parse_symbol(s: &str, rows: usize, cols: usize) -> symdomain::Result<Symbol> {
    if s == "1" {
        return Ok(Symbol::Holomorphic(MatrixPoly::one(rows, cols)));
    }
    let (conj, idx) = if let Some(rest) = s.strip_prefix("zbar") {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('z') {
        (false, rest)
    } else {
        return Err(Error::Parse(format!("symbol {s:?} is not 1, zIJ or zbarIJ")));
    };
    let digits: Vec<usize> = idx
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Parse(format!("bad index in symbol {s:?}")))?;
    let (i, j) = match digits[..] {
        [i, j] => (i, j),
        [j] if rows == 1 => (1, j),
        _ => return Err(Error::Parse(format!("symbol {s:?} needs two index digits"))),
    };
    if i == 0 || j == 0 || i > rows || j > cols {
        return Err(Error::InvalidArgument(format!("symbol {s:?} is outside the {rows}×{cols} model")));
    }
    let p = MatrixPoly::var(rows, cols, i - 1, j - 1);
    Ok(if conj { Symbol::AntiHolomorphic(p) } else { Symbol::Holomorphic(p) })
}

fn strict_close(case: String, value: f64, target: f64, tol: f64) -> CaseResult {
    CaseResult::close(case, value, target, tol)
}

fn count_case(case: String, mismatches: usize) -> CaseResult {
    CaseResult::new(case, mismatches as f64, 0.0, mismatches as f64, mismatches == 0)
}

// ---------------------------------------------------------------- params

#[derive(Args, Debug)]
pub struct ParamsArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_parser = rational, default_value = "2")]
    pub a: Q,
    #[arg(long, value_parser = rational, default_value = "0")]
    pub b: Q,
}

#[derive(Serialize)]
struct StrataEntry {
    k: usize,
    lambda: usize,
    labels: Vec<String>,
    closure: Vec<(String, String)>,
}

#[derive(Serialize)]
struct ParamsDetails {
    d: String,
    p: String,
    nu: Vec<String>,
    w_sub: String,
    strata: Vec<StrataEntry>,
}

pub fn params(args: &ParamsArgs) -> symdomain::Result<RunReport> {
    let sp = StructureParams::new(args.r, args.a.clone(), args.b.clone())?;
    let mut results = vec![
        CaseResult::new("d", to_f64(sp.d()), to_f64(sp.d()), 0.0, true),
        CaseResult::new("p", to_f64(sp.p()), to_f64(sp.p()), 0.0, true),
    ];
    let mut nu = Vec::new();
    for k in 1..=sp.r() {
        let v = sp.nu_k(k)?;
        results.push(CaseResult::new(format!("nu_{k}"), to_f64(&v), to_f64(&v), 0.0, true));
        nu.push(format_rational(&v));
    }
    let mut entries = Vec::new();
    for lambda in 0..=sp.r() {
        for k in 0..=lambda {
            let labels = strata(k, lambda);
            let mut closure = Vec::new();
            for x in &labels {
                for y in &labels {
                    if x != y && x.in_closure_of(y) {
                        closure.push((x.to_string(), y.to_string()));
                    }
                }
            }
            entries.push(StrataEntry { k, lambda, labels: labels.iter().map(|l| l.to_string()).collect(), closure });
        }
    }
    let details = ParamsDetails {
        d: format_rational(sp.d()),
        p: format_rational(sp.p()),
        nu,
        w_sub: sp.w_sub().to_string(),
        strata: entries,
    };
    let echoed = echo(&[("r", sp.r().to_string()), ("a", format_rational(sp.a())), ("b", format_rational(sp.b()))]);
    Ok(RunReport::new("params", echoed, results).with_details(&details))
}

// ---------------------------------------------------------------- radial-check

#[derive(Args, Debug)]
pub struct RadialArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_parser = rational, default_value = "2")]
    pub a: Q,
    #[arg(long, value_parser = rational, default_value = "0")]
    pub b: Q,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Rank bound of the Kepler ball; defaults to r.
    #[arg(long)]
    pub lambda: Option<usize>,
    /// Weight for k = 0; defaults to p + 1.
    #[arg(long, value_parser = rational)]
    pub nu: Option<Q>,
    #[arg(long, default_value_t = 6)]
    pub max_weight: u32,
    /// Quadrature nodes per coordinate; chosen from the degree when absent.
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

pub fn radial_check(args: &RadialArgs) -> symdomain::Result<RunReport> {
    let sp = StructureParams::new(args.r, args.a.clone(), args.b.clone())?;
    let lambda = args.lambda.unwrap_or(sp.r());
    let nu = match (&args.nu, args.k) {
        (None, 0) => Some(sp.p() + q(1)),
        (nu, _) => nu.clone(),
    };
    let spec = RadialMeasureSpec::for_orbit(&sp, args.k, lambda, nu.clone())?;
    let mut results = Vec::new();
    for mu in partitions_up_to(args.max_weight, lambda) {
        let row = MomentRow::compute(&spec, &mu, args.nodes)?;
        results.push(CaseResult::new(format!("mu={mu}"), row.moment, row.target, row.rel_err, row.rel_err <= args.tol));
    }
    let echoed = echo(&[
        ("r", sp.r().to_string()),
        ("a", format_rational(sp.a())),
        ("b", format_rational(sp.b())),
        ("k", args.k.to_string()),
        ("lambda", lambda.to_string()),
        ("nu", opt_q(&nu)),
        ("family", spec.family().name().to_string()),
        ("max_weight", args.max_weight.to_string()),
        ("nodes", args.nodes.map_or("auto".into(), |n| n.to_string())),
        ("tol", crate::report::fmt_float(args.tol)),
    ]);
    Ok(RunReport::new("radial-check", echoed, results))
}

// ---------------------------------------------------------------- toeplitz-check

#[derive(Args, Debug)]
pub struct ToeplitzArgs {
    #[arg(long, value_parser = model, default_value = "2x2")]
    pub model: Model,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Defaults to the rank of the model.
    #[arg(long)]
    pub lambda: Option<usize>,
    #[arg(long, value_parser = rational)]
    pub nu: Option<Q>,
    /// Degree cap of the truncated operators.
    #[arg(long, default_value_t = 4)]
    pub degree: u32,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
}

fn random_gq(rng: &mut ChaCha8Rng) -> symdomain::GQ {
    gq(q(rng.gen_range(-4..=4)), qr(rng.gen_range(-3..=3), 2))
}

fn random_poly(rng: &mut ChaCha8Rng, rows: usize, cols: usize, max_deg: u32) -> MatrixPoly {
    let mut p = MatrixPoly::zero(rows, cols);
    for _ in 0..rng.gen_range(1..=3) {
        let deg = rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; rows * cols];
        for _ in 0..deg {
            e[rng.gen_range(0..rows * cols)] += 1;
        }
        p = &p + &MatrixPoly::monomial(rows, cols, e, random_gq(rng));
    }
    p
}

fn type_of(sp: &StructureParams, k: usize, lambda: usize, nu: &Option<Q>) -> symdomain::Result<HypergeomType> {
    make_type(sp, k, lambda, nu.as_ref())
}

pub fn toeplitz_check(args: &ToeplitzArgs, seed: u64) -> symdomain::Result<RunReport> {
    let sp = args.model.params()?;
    let (rows, cols) = args.model.shape();
    let fs = FockSpace::new(rows, cols);
    let lambda = args.lambda.unwrap_or(sp.r());
    let ty = type_of(&sp, args.k, lambda, &args.nu)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = GaussMatrix::new(rows, cols, (0..rows * cols).map(|_| random_gq(&mut rng)).collect())?;
    let up = toeplitz_matrix(&fs, &ty, &Symbol::linear(&v), args.degree)?;
    let down = toeplitz_matrix(&fs, &ty, &Symbol::linear_conj(&v), args.degree)?;
    let ell = ty.ell().min(fs.rank());
    let mut results = Vec::new();

    let raise = up.blocks.keys().filter(|(o, i)| !(1..=ell).any(|j| i.add_box(j).as_ref() == Some(o))).count();
    let lower = down.blocks.keys().filter(|(o, i)| !(1..=ell).any(|j| i.remove_box(j).as_ref() == Some(o))).count();
    results.push(count_case("sparsity T(v*)".into(), raise));
    results.push(count_case("sparsity T(conj v*)".into(), lower));

    let mut relation = 0;
    for ((mu, nu), a) in &up.blocks {
        let (gmu, gnu) = (fs.basis(mu)?, fs.basis(nu)?);
        let ratio = ty.coefficient(mu)? / ty.coefficient(nu)?;
        let b = down.block(nu, mu);
        for (ia, row) in a.iter().enumerate() {
            for (ib, x) in row.iter().enumerate() {
                let want = scale_gq(&(&ratio * &gmu.gram[ia] / &gnu.gram[ib]), &x.conj());
                let got = b.map(|m| m[ib][ia].clone()).unwrap_or_else(symdomain::scalar::gq_zero);
                relation += usize::from(got != want);
            }
        }
    }
    results.push(count_case("adjoint relation of blocks".into(), relation));

    for mu in partitions_up_to(args.degree, ell).into_iter().filter(|m| !m.is_empty()) {
        let basis = fs.basis(&mu)?;
        let mut p = MatrixPoly::zero(rows, cols);
        for u in &basis.vectors {
            p = &p + &u.scale(&random_gq(&mut rng));
        }
        let mut mismatches = 0;
        for i in 0..rows {
            for j in 0..cols {
                let e = GaussMatrix::unit(rows, cols, i, j);
                let a = adjoint_closed_form(&fs, &ty, &e, &mu, &p)?;
                let b = adjoint_brute_force(&fs, &ty, &e, &mu, &p)?;
                mismatches += usize::from(a != b);
            }
        }
        results.push(count_case(format!("adjoint mu={mu}"), mismatches));
    }

    if rows == 1 {
        let zbar = Symbol::linear_conj(&GaussMatrix::unit(1, cols, 0, 0));
        for m in 1..=args.degree {
            let zm = MatrixPoly::monomial(1, cols, [vec![m], vec![0; cols - 1]].concat(), gq(q(1), q(0)));
            let image = apply(&fs, &ty, &zbar, &zm)?;
            let lower = [vec![m - 1], vec![0; cols - 1]].concat();
            let got = image.coeff(&lower);
            let row = |k: u32| Partition::row(k);
            let want = q(m as i64) * ty.coefficient(&row(m))? / ty.coefficient(&row(m - 1))?;
            let exact = got.im == Q::from_integer(0.into()) && got.re == want && image.terms().len() <= 1;
            results.push(CaseResult::new(
                format!("shift weight m={m}"),
                to_f64(&got.re),
                to_f64(&want),
                rel_err(to_f64(&got.re), to_f64(&want)),
                exact,
            ));
        }
    }

    for t in 0..args.trials {
        let budget = args.degree;
        let dp = rng.gen_range(0..=budget);
        let dq = rng.gen_range(0..=budget - dp);
        let p = random_poly(&mut rng, rows, cols, dp);
        let qq = random_poly(&mut rng, rows, cols, dq);
        let phi = random_poly(&mut rng, rows, cols, budget - dp - dq);
        let ok = check_multiplicativity(&fs, &ty, &p, &qq, &phi, budget)?;
        results.push(count_case(format!("multiplicativity trial {t}"), usize::from(!ok)));
    }

    let echoed = echo(&[
        ("model", args.model.to_string()),
        ("k", args.k.to_string()),
        ("lambda", lambda.to_string()),
        ("nu", opt_q(&args.nu)),
        ("type", ty.to_string()),
        ("degree", args.degree.to_string()),
        ("trials", args.trials.to_string()),
    ]);
    Ok(RunReport::new("toeplitz-check", echoed, results))
}

// ---------------------------------------------------------------- peaking

#[derive(Args, Debug)]
pub struct PeakingArgs {
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    #[arg(long, value_parser = rational, default_value = "2")]
    pub a: Q,
    #[arg(long, value_parser = rational, default_value = "0")]
    pub b: Q,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Defaults to r.
    #[arg(long)]
    pub lambda: Option<usize>,
    #[arg(long, value_parser = rational)]
    pub nu: Option<Q>,
    /// Partition of length ≤ ℓ − 1 carried by the conical polynomial.
    #[arg(long, value_parser = partition, default_value = "(1)")]
    pub partition: Partition,
    #[arg(long, default_value_t = 200)]
    pub n_max: u32,
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
}

pub fn peaking(args: &PeakingArgs) -> symdomain::Result<RunReport> {
    let sp = StructureParams::new(args.r, args.a.clone(), args.b.clone())?;
    let lambda = args.lambda.unwrap_or(sp.r());
    let ty = type_of(&sp, args.k, lambda, &args.nu)?;
    let spec = PeakingMomentSpec::new(ty.clone(), &args.partition)?;
    let target_q = spec.target()?;
    let target = to_f64(&target_q);
    let mut ns = Vec::new();
    let mut n = 25u32.min(args.n_max.max(1));
    while n < args.n_max {
        ns.push(n);
        n *= 2;
    }
    ns.push(args.n_max.max(1));
    let values: Vec<f64> = ns.iter().map(|&n| peaking_moment_ratio(&spec, n)).collect::<symdomain::Result<_>>()?;
    let mut results = Vec::new();
    for (i, (&n, &v)) in ns.iter().zip(&values).enumerate() {
        let err = rel_err(v, target);
        let pass = i + 1 < ns.len() || err <= args.tol;
        results.push(CaseResult::new(format!("R(n) n={n}"), v, target, err, pass));
    }
    for i in 0..ns.len().saturating_sub(1) {
        let (a, b) = ((values[i] - target).abs(), (values[i + 1] - target).abs());
        let trivial = a <= 1e-14 * target.abs() && b <= 1e-14 * target.abs();
        results.push(CaseResult::new(format!("decrease n={}->{}", ns[i], ns[i + 1]), b, a, rel_err(b, a), b < a || trivial));
    }
    let n_last = *ns.last().expect("nonempty");
    let series = peaking_moment_ratio_series(&spec, n_last)?;
    results.push(strict_close(format!("series route n={n_last}"), series, *values.last().expect("nonempty"), 1e-8));
    let h = &ty.a().clone() / q(2);
    let lam = spec.lam();
    let mut direct = Q::from_integer(1.into());
    for x in ty.x() {
        direct *= pochhammer(&(x - &h), &lam, ty.a());
    }
    for y in ty.y() {
        direct /= pochhammer(&(y - &h), &lam, ty.a());
    }
    results.push(CaseResult::new("limit-type coefficient", to_f64(&target_q), to_f64(&direct), 0.0, direct == target_q));
    let echoed = echo(&[
        ("r", sp.r().to_string()),
        ("a", format_rational(sp.a())),
        ("b", format_rational(sp.b())),
        ("k", args.k.to_string()),
        ("lambda", lambda.to_string()),
        ("nu", opt_q(&args.nu)),
        ("partition", args.partition.to_string()),
        ("type", ty.to_string()),
        ("n_max", args.n_max.to_string()),
        ("tol", crate::report::fmt_float(args.tol)),
    ]);
    Ok(RunReport::new("peaking", echoed, results))
}

// ---------------------------------------------------------------- boundary-rep

#[derive(Args, Debug)]
pub struct BoundaryArgs {
    #[arg(long, value_parser = model, default_value = "2x2")]
    pub model: Model,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Defaults to the rank of the model.
    #[arg(long)]
    pub lambda: Option<usize>,
    #[arg(long, value_parser = rational)]
    pub nu: Option<Q>,
    /// Rank of the diagonal tripotent c.
    #[arg(long, default_value_t = 1)]
    pub c: usize,
    /// Comma separated symbols; defaults to z22,zbar22 on matrices and z1 on balls.
    #[arg(long)]
    pub symbols: Option<String>,
    /// Polynomial on the Peirce-0 block: auto, 1 or zIJ in block coordinates.
    #[arg(long, default_value = "auto")]
    pub q: String,
    #[arg(long, default_value_t = 40)]
    pub n_max: u32,
    /// Fixed truncation degree; chosen per n from the tail bound when absent.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Also require |form − limit| ≤ TOL for the normalized quadratic form at n_max.
    #[arg(long, value_name = "TOL")]
    pub form_tol: Option<f64>,
}

#[derive(Serialize)]
struct Sequence {
    symbol: String,
    n: Vec<u32>,
    degree: Vec<u32>,
    residual: Vec<Box<RawValue>>,
    tail_bound: Vec<Box<RawValue>>,
}

pub fn boundary_rep(args: &BoundaryArgs) -> symdomain::Result<RunReport> {
    let sp = args.model.params()?;
    let (rows, cols) = args.model.shape();
    let fs = FockSpace::new(rows, cols);
    let lambda = args.lambda.unwrap_or(sp.r());
    let ty = type_of(&sp, args.k, lambda, &args.nu)?;
    let (sr, sc) = (rows - 1, cols - 1);
    let q_small = match args.q.as_str() {
        "auto" if sr > 0 => MatrixPoly::var(sr, sc, 0, 0),
        "auto" => MatrixPoly::one(sr, sc),
        other => parse_symbol(other, sr, sc).and_then(|s| match s {
            Symbol::Holomorphic(p) => Ok(p),
            Symbol::AntiHolomorphic(_) => Err(Error::InvalidArgument("q must be holomorphic".into())),
        })?,
    };
    let default_symbols = if rows == 1 { "z1" } else { "z22,zbar22" };
    let names: Vec<String> =
        args.symbols.as_deref().unwrap_or(default_symbols).split(',').map(|s| s.trim().to_string()).collect();
    if args.n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    let mut results = Vec::new();
    let mut seqs = Vec::new();
    for name in &names {
        let sym = parse_symbol(name, rows, cols)?;
        let mut seq = Sequence { symbol: name.clone(), n: vec![], degree: vec![], residual: vec![], tail_bound: vec![] };
        let mut res = Vec::new();
        let mut max_tail = 0f64;
        for n in 1..=args.n_max {
            let d = match args.degree {
                Some(d) => d,
                None => boundary_degree(&ty, n)?,
            };
            let r = boundary_residual(&fs, &ty, &sym, &q_small, args.c, n, d)?;
            max_tail = max_tail.max(r.tail_bound);
            res.push(r.residual);
            seq.n.push(n);
            seq.degree.push(d);
            seq.residual.push(num(r.residual));
            seq.tail_bound.push(num(r.tail_bound));
        }
        let last = *res.last().expect("n_max ≥ 1");
        results.push(CaseResult::new(
            format!("residual {name} eventually nonincreasing"),
            last,
            0.0,
            last,
            eventually_nonincreasing(&res),
        ));
        results.push(CaseResult::new(format!("tail bound {name}"), max_tail, BOUNDARY_TAIL_TOL, rel_err(max_tail, BOUNDARY_TAIL_TOL), max_tail < BOUNDARY_TAIL_TOL));
        if let Some(tol) = args.form_tol {
            let d = args.degree.map_or_else(|| boundary_degree(&ty, args.n_max), Ok)?;
            let f = boundary_quadratic_form(&fs, &ty, &sym, &q_small, args.n_max, d)?;
            let diff = (f.value - f.limit).norm();
            results.push(CaseResult::new(format!("quadratic form {name} n={}", args.n_max), f.value.re, f.limit.re, diff, diff <= tol));
        }
        seqs.push(seq);
    }
    let echoed = echo(&[
        ("model", args.model.to_string()),
        ("k", args.k.to_string()),
        ("lambda", lambda.to_string()),
        ("nu", opt_q(&args.nu)),
        ("type", ty.to_string()),
        ("c", args.c.to_string()),
        ("symbols", names.join(",")),
        ("q", q_small.to_string()),
        ("n_max", args.n_max.to_string()),
        ("degree", args.degree.map_or("auto".into(), |d| d.to_string())),
        ("form_tol", args.form_tol.map_or("none".into(), crate::report::fmt_float)),
    ]);
    Ok(RunReport::new("boundary-rep", echoed, results).with_details(&seqs))
}

// ---------------------------------------------------------------- moments

#[derive(Args, Debug)]
pub struct MomentsArgs {
    #[arg(long)]
    pub d: u32,
    /// Comma separated ν values; defaults to d−1/2, d−1/4, d, d+1/2, d+1, d+3.
    #[arg(long)]
    pub nu_grid: Option<String>,
    #[arg(long, default_value_t = DEFAULT_HANKEL_SIZE)]
    pub size: usize,
    #[arg(long, default_value_t = DEFAULT_HANKEL_TOL)]
    pub tol: f64,
}

#[derive(Serialize)]
struct TableRow {
    d: u32,
    nu: String,
    feasible: bool,
    min_eig_h: Box<RawValue>,
    min_eig_dh: Box<RawValue>,
}

pub fn moments(args: &MomentsArgs) -> symdomain::Result<RunReport> {
    let d = q(args.d as i64);
    let grid: Vec<Q> = match &args.nu_grid {
        Some(s) => s.split(',').map(|t| parse_rational(t.trim())).collect::<symdomain::Result<_>>()?,
        None => [qr(-1, 2), qr(-1, 4), q(0), qr(1, 2), q(1), q(3)]
            .iter()
            .map(|x| &d + x)
            .filter(|x| *x > q(0))
            .collect(),
    };
    let rows = w_sub_scan(args.d, &grid, args.size, args.tol)?;
    let mut results = Vec::new();
    let mut table = Vec::new();
    for row in &rows {
        let expected = in_rank_one_w_sub(args.d, &row.nu);
        let (v, t) = (f64::from(u8::from(row.feasible)), f64::from(u8::from(expected)));
        results.push(CaseResult::new(format!("nu={}", format_rational(&row.nu)), v, t, (v - t).abs(), row.feasible == expected));
        table.push(TableRow {
            d: row.d,
            nu: format_rational(&row.nu),
            feasible: row.feasible,
            min_eig_h: num(row.min_eig_h),
            min_eig_dh: num(row.min_eig_dh),
        });
    }
    let echoed = echo(&[
        ("d", args.d.to_string()),
        ("nu_grid", grid.iter().map(format_rational).collect::<Vec<_>>().join(",")),
        ("size", args.size.to_string()),
        ("tol", crate::report::fmt_float(args.tol)),
    ]);
    Ok(RunReport::new("moments", echoed, results).with_details(&table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_parsing() {
        assert_eq!(model("2x3").unwrap(), Model::Matrix { rows: 2, cols: 3 });
        assert_eq!(model("ball:4").unwrap(), Model::Ball(4));
        assert!(model("3x2").is_err());
        assert!(model("ball:0").is_err());
        assert!(model("disk").is_err());
    }

    #[test]
    fn symbol_parsing() {
        assert_eq!(parse_symbol("z22", 2, 2).unwrap(), Symbol::Holomorphic(MatrixPoly::var(2, 2, 1, 1)));
        assert_eq!(parse_symbol("zbar12", 2, 2).unwrap(), Symbol::AntiHolomorphic(MatrixPoly::var(2, 2, 0, 1)));
        assert_eq!(parse_symbol("z3", 1, 3).unwrap(), Symbol::Holomorphic(MatrixPoly::var(1, 3, 0, 2)));
        assert!(parse_symbol("z31", 2, 2).is_err());
        assert!(parse_symbol("w11", 2, 2).is_err());
    }
}
