use approx::assert_relative_eq;
use symdomain::fock::{boundary_degree, boundary_quadratic_form, boundary_residual, FockSpace, MatrixPoly, Symbol};
use symdomain::{make_type, StructureParams};

// Hardy space of the sphere in ℂ²: ‖z1^m‖² = 1/(m+1); h = exp(n z1).
fn hardy_oracle(n: u32) -> (f64, f64) {
    let nf = n as f64;
    let (mut hh, mut zh_h, mut zh_zh) = (0.0, 0.0, 0.0);
    let mut w = 1.0f64; // n^{2m}/(m!)² rescaled
    for m in 0..(40 * n + 40) {
        let mf = m as f64;
        hh += w / (mf + 1.0);
        zh_zh += w / (mf + 2.0);
        zh_h += w * nf / (mf + 1.0) / (mf + 2.0);
        w *= nf * nf / ((mf + 1.0) * (mf + 1.0));
        if w > 1e200 {
            w *= 1e-200;
            hh *= 1e-200;
            zh_h *= 1e-200;
            zh_zh *= 1e-200;
        }
    }
    let form = zh_h / hh;
    let residual = ((zh_zh - 2.0 * zh_h + hh) / hh).sqrt();
    (form, residual)
}

#[test]
fn ball_hardy_matches_sphere_oracle() {
    let params = StructureParams::ball(2).unwrap();
    let fs = FockSpace::new(1, 2);
    let ty = make_type(&params, 1, 1, None).unwrap();
    let z1 = Symbol::Holomorphic(MatrixPoly::var(1, 2, 0, 0));
    let one = MatrixPoly::one(0, 1);
    for n in [5u32, 10, 30] {
        let d = boundary_degree(&ty, n).unwrap();
        let (form, residual) = hardy_oracle(n);
        let r = boundary_residual(&fs, &ty, &z1, &one, 1, n, d).unwrap();
        assert_relative_eq!(r.residual, residual, max_relative = 1e-3);
        let f = boundary_quadratic_form(&fs, &ty, &z1, &one, n, d).unwrap();
        assert_relative_eq!(f.value.re, form, max_relative = 1e-3);
        assert_relative_eq!(f.limit.re, 1.0, max_relative = 1e-12);
    }
    // residual ≈ (2n)^{-1/2}
    let (_, r) = hardy_oracle(2000);
    assert!((r * (4000f64).sqrt() - 1.0).abs() < 0.05);
}
