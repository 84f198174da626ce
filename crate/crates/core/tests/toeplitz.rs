use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symdomain::fock::{
    adjoint_brute_force, adjoint_closed_form, apply, check_multiplicativity, toeplitz_matrix, FockSpace,
    GaussMatrix, MatrixPoly, Symbol,
};
use symdomain::partition::{partitions_of, partitions_up_to};
use symdomain::scalar::{binomial, gq, q, qr, scale_gq};
use symdomain::symfunc::dim_isotype;
use symdomain::{make_type, HypergeomType, StructureParams, Q};

fn types(params: &StructureParams) -> Vec<HypergeomType> {
    let mut out = Vec::new();
    for lambda in 1..=2 {
        for nu in [q(5), qr(9, 2)] {
            out.push(make_type(params, 0, lambda, Some(&nu)).unwrap());
        }
        for k in 1..=lambda {
            out.push(make_type(params, k, lambda, None).unwrap());
        }
    }
    out
}

fn random_element(rng: &mut ChaCha8Rng, fs: &FockSpace, mu: &symdomain::Partition) -> MatrixPoly {
    let basis = fs.basis(mu).unwrap();
    let mut p = MatrixPoly::zero(fs.rows(), fs.cols());
    for u in &basis.vectors {
        let c = gq(q(rng.gen_range(-4..=4)), qr(rng.gen_range(-3..=3), 2));
        p = &p + &u.scale(&c);
    }
    p
}

#[test]
fn closed_form_adjoint_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (r, s) in [(2, 2), (2, 3)] {
        let params = StructureParams::matrix(r, s).unwrap();
        let fs = FockSpace::new(r, s);
        for ty in types(&params) {
            for mu in partitions_up_to(4, ty.ell()) {
                let p = random_element(&mut rng, &fs, &mu);
                for i in 0..r {
                    for j in 0..s {
                        let v = GaussMatrix::unit(r, s, i, j);
                        let a = adjoint_closed_form(&fs, &ty, &v, &mu, &p).unwrap();
                        let b = adjoint_brute_force(&fs, &ty, &v, &mu, &p).unwrap();
                        assert_eq!(a, b, "{r}x{s} {ty} mu={mu} v=e{i}{j}");
                    }
                }
            }
        }
    }
}

#[test]
fn block_sparsity_and_adjoint_relation() {
    let params = StructureParams::matrix(2, 2).unwrap();
    let fs = FockSpace::new(2, 2);
    let ty = make_type(&params, 1, 2, None).unwrap();
    let v = GaussMatrix::new(2, 2, vec![gq(q(1), q(0)), gq(q(0), q(2)), gq(qr(1, 2), q(0)), gq(q(0), q(0))]).unwrap();
    let up = toeplitz_matrix(&fs, &ty, &Symbol::linear(&v), 4).unwrap();
    let down = toeplitz_matrix(&fs, &ty, &Symbol::linear_conj(&v), 4).unwrap();
    assert!(!up.blocks.is_empty());
    for (o, i) in up.blocks.keys() {
        assert!((1..=2).any(|j| i.add_box(j).as_ref() == Some(o)), "{o} <- {i}");
    }
    for (o, i) in down.blocks.keys() {
        assert!((1..=2).any(|j| i.remove_box(j).as_ref() == Some(o)), "{o} <- {i}");
    }
    for ((mu, nu), a) in &up.blocks {
        // B_{ba} = conj(A_{ab}) c(µ) g'_a / (c(ν) g_b)
        let b = down.block(nu, mu).expect("matching lowering block");
        let (gmu, gnu) = (fs.basis(mu).unwrap(), fs.basis(nu).unwrap());
        let ratio = ty.coefficient(mu).unwrap() / ty.coefficient(nu).unwrap();
        for (ia, row) in a.iter().enumerate() {
            for (ib, x) in row.iter().enumerate() {
                let want = scale_gq(&(&ratio * &gmu.gram[ia] / &gnu.gram[ib]), &x.conj());
                assert_eq!(b[ib][ia], want);
            }
        }
    }
}

#[test]
fn fock_completeness() {
    for (r, s) in [(1, 3), (2, 2), (2, 3)] {
        let params = StructureParams::matrix(r, s).unwrap();
        for n in 0..=5u32 {
            let total: u64 = partitions_of(n, r).iter().map(|mu| dim_isotype(mu, &params).unwrap()).sum();
            let monomials = binomial((r * s) as u64 + n as u64 - 1, n as u64);
            assert_eq!(num_bigint::BigInt::from(total), monomials, "{r}x{s} n={n}");
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: u32) -> MatrixPoly {
    let mut p = MatrixPoly::zero(2, 2);
    for _ in 0..rng.gen_range(1..=3) {
        let deg = rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; 4];
        for _ in 0..deg {
            e[rng.gen_range(0..4)] += 1;
        }
        p = &p + &MatrixPoly::monomial(2, 2, e, gq(q(rng.gen_range(-3..=3)), q(rng.gen_range(-2..=2))));
    }
    p
}

#[test]
fn multiplicativity_on_random_triples() {
    let params = StructureParams::matrix(2, 2).unwrap();
    let fs = FockSpace::new(2, 2);
    let ty = make_type(&params, 1, 2, None).unwrap();
    let ty1 = make_type(&params, 1, 1, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for t in 0..20 {
        let p = random_poly(&mut rng, 2);
        let qq = random_poly(&mut rng, 2);
        let phi = if t % 2 == 0 { MatrixPoly::determinant(2) } else { random_poly(&mut rng, 2) };
        assert!(check_multiplicativity(&fs, &ty, &p, &qq, &phi, 6).unwrap());
        assert!(check_multiplicativity(&fs, &ty1, &p, &qq, &phi, 6).unwrap());
    }
}

#[test]
fn hardy_ball_weights() {
    let params = StructureParams::ball(3).unwrap();
    let fs = FockSpace::new(1, 3);
    let ty = make_type(&params, 1, 1, None).unwrap();
    let zbar = Symbol::linear_conj(&GaussMatrix::unit(1, 3, 0, 0));
    for m in 1..6u32 {
        let zm = MatrixPoly::monomial(1, 3, vec![m, 0, 0], gq(Q::one(), Q::zero()));
        let got = apply(&fs, &ty, &zbar, &zm).unwrap();
        let w = q(m as i64) / q(3 + m as i64 - 1);
        assert_eq!(got, MatrixPoly::monomial(1, 3, vec![m - 1, 0, 0], gq(w, Q::zero())));
    }
}
