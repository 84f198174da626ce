use num_traits::{One, Zero};
use proptest::prelude::*;

use symdomain::fock::{fischer_norm_sq, fischer_pairing, MatrixPoly};
use symdomain::partition::partitions_up_to;
use symdomain::scalar::{format_rational, gq, parse_rational, q, qr};
use symdomain::stratum::{classify_stratum, strata, Stratum};
use symdomain::symfunc::{jack_spherical, principal_spec, schur};
use symdomain::{make_type, pochhammer, Partition, StructureParams, Q};

fn rational() -> impl Strategy<Value = Q> {
    (-60i64..=60, 1i64..=7).prop_map(|(n, d)| qr(n, d))
}

fn multiplicity() -> impl Strategy<Value = Q> {
    prop_oneof![Just(q(1)), Just(q(2)), Just(q(4)), Just(q(8)), Just(qr(2, 3))]
}

fn partition(max_weight: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    let all = partitions_up_to(max_weight, max_len);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn poly(rows: usize, cols: usize) -> impl Strategy<Value = MatrixPoly> {
    let term = (proptest::collection::vec(0u32..3, rows * cols), -4i64..=4, -4i64..=4);
    proptest::collection::vec(term, 0..5).prop_map(move |terms| {
        terms.into_iter().fold(MatrixPoly::zero(rows, cols), |acc, (e, re, im)| {
            &acc + &MatrixPoly::monomial(rows, cols, e, gq(q(re), qr(im, 2)))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pochhammer_rectangle_shift(nu in rational(), a in multiplicity(), r in 1usize..5, n in 0u32..5, seed in 0usize..1000) {
        let shapes = partitions_up_to(6, r);
        let mu = &shapes[seed % shapes.len()];
        let lhs = pochhammer(&nu, &mu.plus_rectangle(n, r), &a);
        let rhs = pochhammer(&(&nu + q(n as i64)), mu, &a) * pochhammer(&nu, &Partition::rectangle(n, r), &a);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn top_orbit_type_cancels_pochhammer(r in 1usize..4, a in multiplicity(), b in 0i64..3, k in 1usize..4, mu in partition(8, 3)) {
        prop_assume!(k <= r && mu.len() <= r);
        let params = StructureParams::new(r, a.clone(), q(b)).unwrap();
        let ty = make_type(&params, k, r, None).unwrap();
        let prod = ty.coefficient(&mu).unwrap() * pochhammer(&params.nu_k(k).unwrap(), &mu, &a);
        prop_assert!(prod.is_one());
    }

    #[test]
    fn limit_type_shifts_every_parameter(r in 2usize..5, a in multiplicity(), b in 0i64..3, k in 1usize..5, lambda in 1usize..5) {
        prop_assume!(k <= lambda && lambda <= r);
        let params = StructureParams::new(r, a.clone(), q(b)).unwrap();
        let red = params.reduced().unwrap();
        prop_assert_eq!(params.nu_k(k).unwrap() - &a / q(2), red.nu_k(k - 1).unwrap());
        let lim = make_type(&params, k, lambda, None).unwrap().limit_type();
        let nu = (k == 1).then(|| red.nu_k(0).unwrap());
        prop_assert!(lim.equivalent(&make_type(&red, k - 1, lambda - 1, nu.as_ref()).unwrap()));
    }

    #[test]
    fn spherical_polynomial_is_homogeneous_and_normalized(mu in partition(5, 3), n in 3usize..5, a in multiplicity(), t in rational(), x in proptest::collection::vec(rational(), 4)) {
        let phi = jack_spherical(&mu, n, &a).unwrap();
        let ones = vec![Q::one(); n];
        prop_assert!(phi.eval_exact(&ones).unwrap().is_one());
        let pt: Vec<Q> = x[..n].to_vec();
        let scaled: Vec<Q> = pt.iter().map(|v| v * &t).collect();
        let power = (0..mu.weight()).fold(Q::one(), |acc, _| acc * &t);
        prop_assert_eq!(phi.eval_exact(&scaled).unwrap(), power * phi.eval_exact(&pt).unwrap());
    }

    #[test]
    fn complex_case_is_normalized_schur(mu in partition(5, 3), n in 3usize..5) {
        let phi = jack_spherical(&mu, n, &q(2)).unwrap();
        let s = schur(&mu, n).unwrap();
        prop_assert_eq!(phi.scale(&principal_spec(&mu, n).unwrap()), s);
    }

    #[test]
    fn fischer_pairing_is_hermitian(f in poly(2, 2), g in poly(2, 2)) {
        let fg = fischer_pairing(&f, &g).unwrap();
        let gf = fischer_pairing(&g, &f).unwrap();
        prop_assert_eq!(fg, gf.conj());
        let ff = fischer_pairing(&f, &f).unwrap();
        prop_assert!(ff.im.is_zero());
        prop_assert_eq!(&ff.re, &fischer_norm_sq(&f));
        prop_assert!(ff.re >= Q::zero());
    }

    #[test]
    fn stratum_labels_are_disjoint(raw in proptest::collection::vec(0usize..6, 1..4), k in 0usize..3, lambda in 0usize..4) {
        let levels = [0.0, 0.3, 0.7, 1.0 - 1e-3, 1.0, 1.0];
        let mut sv: Vec<f64> = raw.iter().map(|&i| levels[i]).collect();
        sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
        prop_assume!(k <= lambda && lambda <= sv.len());
        let got = classify_stratum(&sv, k, lambda, 1e-9).unwrap();
        let ones = sv.iter().filter(|&&s| s == 1.0).count();
        let rank = sv.iter().filter(|&&s| s > 0.0).count();
        let member = k <= ones && rank <= lambda;
        match got {
            Stratum::Inside(l) => {
                prop_assert!(member);
                prop_assert_eq!(strata(k, lambda).iter().filter(|&&m| m == l).count(), 1);
                prop_assert_eq!((l.i, l.j), (ones, rank));
            }
            Stratum::Outside => prop_assert!(!member),
        }
    }

    #[test]
    fn conjugation_is_an_involution(mu in partition(10, 10)) {
        prop_assert_eq!(mu.conjugate().conjugate(), mu.clone());
        prop_assert_eq!(mu.conjugate().weight(), mu.weight());
    }

    #[test]
    fn rational_text_round_trip(x in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }
}
