use proptest::prelude::*;
use weddle_core::cubic::{
    hessian, is_smooth_cubic, j_invariant, j_short, weierstrass_reduce, weierstrass_reduce_numeric, JInvariant,
    Reduction, ShortWeierstrass,
};
use weddle_core::fixtures;
use weddle_core::poly::{int, rat, MultiPoly, Rat};
use weddle_core::solve::SolverConfig;
use weddle_core::weddle::weddle_matrix;

fn parse(s: &str) -> MultiPoly {
    MultiPoly::parse(s, Some(3)).unwrap()
}

fn witness(name: &str) -> MultiPoly {
    let sys = fixtures::load(name).unwrap().unwrap().system().unwrap().unwrap();
    weddle_matrix(&sys).unwrap().polynomial
}

fn exact_curve(f: &MultiPoly) -> ShortWeierstrass {
    match weierstrass_reduce(f, &SolverConfig::default()).unwrap() {
        Reduction::Exact { curve, .. } => curve,
        other => panic!("expected an exact reduction, got {other:?}"),
    }
}

/// `f(R x)` for an integer matrix `R`.
fn substituted(f: &MultiPoly, r: &[i64; 9]) -> MultiPoly {
    let images: Vec<MultiPoly> = (0..3)
        .map(|i| MultiPoly::linear_form(&[int(r[3 * i]), int(r[3 * i + 1]), int(r[3 * i + 2])]))
        .collect();
    f.substitute(&images).unwrap()
}

fn det3(r: &[i64; 9]) -> i64 {
    r[0] * (r[4] * r[8] - r[5] * r[7]) - r[1] * (r[3] * r[8] - r[5] * r[6]) + r[2] * (r[3] * r[7] - r[4] * r[6])
}

#[test]
fn witness_reductions_and_j_values() {
    let cfg = SolverConfig::default();
    let c1 = witness("witness-C1");
    let c2 = witness("witness-C2");
    assert_eq!(exact_curve(&c1), ShortWeierstrass::new(rat(-121, 48), rat(845, 864)));
    assert_eq!(exact_curve(&c2), ShortWeierstrass::new(rat(-1633, 48), rat(61201, 864)));
    assert_eq!(j_invariant(&c1, &cfg).unwrap(), JInvariant::Exact(rat(1771561, 612)));
    assert_eq!(j_invariant(&c2, &cfg).unwrap(), JInvariant::Exact(rat(4354703137, 352512)));
    assert!(is_smooth_cubic(&c1, &cfg).unwrap());
    assert!(is_smooth_cubic(&c2, &cfg).unwrap());
}

#[test]
fn j_from_the_short_form_formula() {
    // 256 · 27 a³ / (4 a³ + 27 b²), evaluated term by term.
    for (a, b) in [(rat(-121, 48), rat(845, 864)), (rat(-1633, 48), rat(61201, 864)), (int(2), int(-3))] {
        let a3: Rat = &a * &a * &a;
        let expected = int(256) * int(27) * &a3 / (int(4) * &a3 + int(27) * &b * &b);
        assert_eq!(j_short(&ShortWeierstrass::new(a, b)).unwrap(), expected);
    }
}

#[test]
fn numeric_path_agrees_with_the_exact_one() {
    let cfg = SolverConfig::default();
    for (name, j) in [("witness-C1", 1771561.0 / 612.0), ("witness-C2", 4354703137.0 / 352512.0)] {
        let n = weierstrass_reduce_numeric(&witness(name), &cfg).unwrap();
        assert!((n.j[0] - j).abs() < 1e-6 * j, "{name}: {n:?}");
        assert!(n.j[1].abs() < 1e-6 * j);
        assert!(n.flex_residual < 1e-8);
    }
    let fermat = weierstrass_reduce_numeric(&parse("x0^3 + x1^3 + x2^3"), &cfg).unwrap();
    assert!(fermat.j[0].abs() < 1e-6 && fermat.j[1].abs() < 1e-6);
}

#[test]
fn j_is_invariant_under_substitution() {
    let cfg = SolverConfig::default();
    let changes = [[1, 2, 0, -1, 1, 3, 2, 0, 1], [3, -1, 2, 1, 1, 0, -2, 4, 1], [0, 1, 1, 1, 0, 1, 1, 1, 0]];
    for (name, j) in [("witness-C1", 1771561.0 / 612.0), ("witness-C2", 4354703137.0 / 352512.0)] {
        let f = witness(name);
        for r in &changes {
            assert_ne!(det3(r), 0);
            let g = substituted(&f, r);
            let n = weierstrass_reduce_numeric(&g, &cfg).unwrap();
            assert!((n.j[0] - j).abs() < 1e-6 * j, "{name} {r:?}: {n:?}");
            let any = j_invariant(&g, &cfg).unwrap();
            assert!((any.as_f64() - j).abs() < 1e-6 * j, "{name} {r:?}: {any:?}");
        }
    }
}

#[test]
fn witnesses_are_not_projectively_equivalent() {
    let cfg = SolverConfig::default();
    assert_ne!(
        j_invariant(&witness("witness-C1"), &cfg).unwrap(),
        j_invariant(&witness("witness-C2"), &cfg).unwrap()
    );
}

#[test]
fn singular_and_malformed_inputs() {
    let cfg = SolverConfig::default();
    assert!(!is_smooth_cubic(&parse("x0*x1*x2"), &cfg).unwrap());
    assert!(!is_smooth_cubic(&parse("x0*x2^2 - x1^3 - x0*x1^2"), &cfg).unwrap());
    assert!(hessian(&parse("x0^2 + x1^2")).is_err());
    assert!(j_invariant(&parse("x0*x1 + x2^2"), &cfg).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hessian_is_symmetric_and_satisfies_euler(v in prop::collection::vec(-7i64..=7, 10)) {
        let terms = ["x0^3", "x0^2*x1", "x0^2*x2", "x0*x1^2", "x0*x1*x2", "x0*x2^2", "x1^3", "x1^2*x2", "x1*x2^2", "x2^3"];
        let f = terms.iter().zip(&v).fold(MultiPoly::zero(3), |acc, (t, c)| acc + parse(t).scale(&int(*c)));
        prop_assume!(!f.is_zero());
        let h = hessian(&f).unwrap();
        let grad = f.gradient();
        for j in 0..3 {
            let euler = (0..3).fold(MultiPoly::zero(3), |acc, i| acc + MultiPoly::var(i, 3) * h.get(i, j).clone());
            prop_assert_eq!(euler, grad[j].scale(&int(2)));
            for i in 0..3 {
                prop_assert_eq!(h.get(i, j), h.get(j, i));
                prop_assert_eq!(h.get(i, j), &grad[i].differentiate(j).unwrap());
            }
        }
    }
}
