use proptest::prelude::*;
use weddle_core::poly::{int, rat, Rat};
use weddle_core::tensor::{
    basis, decompose, extend, n1_part, n2_part, projector, projector_rank, random_n1, residual_part, restrict,
    skew_part, sym_part, SymmetryClass, Tensor3,
};

const CLASSES: [SymmetryClass; 4] = [
    SymmetryClass::Symmetric,
    SymmetryClass::Residual1,
    SymmetryClass::Residual2,
    SymmetryClass::SkewSymmetric,
];

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Entrywise permutation sums written out directly.
fn oracle_sym_skew(t: &Tensor3) -> (Tensor3, Tensor3) {
    let d = t.dim();
    let perms: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([1, 0, 2], -1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
    ];
    let build = |signed: bool| {
        Tensor3::from_fn(d, |i, j, k| {
            let idx = [i, j, k];
            let mut acc = int(0);
            for (p, s) in &perms {
                let v = t.get(idx[p[0]], idx[p[1]], idx[p[2]]).clone();
                acc += if signed { v * int(*s) } else { v };
            }
            acc / int(6)
        })
    };
    (build(false), build(true))
}

fn tensor_strategy() -> impl Strategy<Value = Tensor3> {
    (2usize..=4).prop_flat_map(|d| {
        prop::collection::vec(-9i64..=9, d * d * d).prop_map(move |v| {
            Tensor3::from_fn(d, |i, j, k| int(v[(k * d + i) * d + j]))
        })
    })
}

fn e(d: usize, i: usize, j: usize, k: usize) -> Tensor3 {
    Tensor3::basis_element(d, i, j, k)
}

fn combo(d: usize, terms: &[(i64, [usize; 3])]) -> Tensor3 {
    terms
        .iter()
        .fold(Tensor3::zeros(d), |acc, (c, [i, j, k])| acc.add(&e(d, *i, *j, *k).scale(&int(*c))))
}

proptest! {
    #[test]
    fn parts_sum_back_and_lie_in_their_classes(t in tensor_strategy()) {
        let parts = decompose(&t);
        prop_assert_eq!(parts.sum(), t.clone());
        prop_assert!(parts.sym.is_in(SymmetryClass::Symmetric));
        prop_assert!(parts.skew.is_in(SymmetryClass::SkewSymmetric));
        prop_assert!(parts.n1.in_n1());
        prop_assert!(parts.n2.is_in(SymmetryClass::Residual2));
        prop_assert_eq!(parts.n1.add(&parts.n2), residual_part(&t));
    }

    #[test]
    fn projectors_match_permutation_sums(t in tensor_strategy()) {
        let (s, a) = oracle_sym_skew(&t);
        prop_assert_eq!(sym_part(&t), s.clone());
        prop_assert_eq!(skew_part(&t), a.clone());
        prop_assert_eq!(residual_part(&t), t.sub(&s).sub(&a));
    }

    #[test]
    fn projectors_are_idempotent_and_orthogonal(t in tensor_strategy()) {
        for class in CLASSES {
            let p = projector(class).unwrap();
            prop_assert_eq!(p(&p(&t)), p(&t));
        }
        prop_assert!(n2_part(&n1_part(&t)).is_zero());
        prop_assert!(n1_part(&n2_part(&t)).is_zero());
        prop_assert!(residual_part(&sym_part(&t)).is_zero());
        prop_assert!(residual_part(&skew_part(&t)).is_zero());
    }

    #[test]
    fn restriction_undoes_extension(dim in 2usize..=5, seed in 0u64..1000, free in prop::collection::vec(-9i64..=9, 30)) {
        let s = random_n1(dim, seed);
        let grid: Vec<Vec<Rat>> = (0..dim)
            .map(|k| (0..=dim).map(|i| int(free[(k * (dim + 1) + i) % free.len()])).collect())
            .collect();
        let t = extend(&s, &grid).unwrap();
        prop_assert_eq!(t.dim(), dim + 1);
        prop_assert!(t.in_n1());
        prop_assert_eq!(restrict(&t).unwrap(), s);
    }
}

#[test]
fn projector_algebra_on_every_basis_tensor() {
    for d in 1..=4 {
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let t = e(d, i, j, k);
                    let p = decompose(&t);
                    assert_eq!(p.sum(), t);
                    assert_eq!(sym_part(&p.sym), p.sym);
                    assert_eq!(skew_part(&p.skew), p.skew);
                    assert_eq!(residual_part(&residual_part(&t)), residual_part(&t));
                    assert!(n1_part(&p.n2).is_zero() && n2_part(&p.n1).is_zero());
                }
            }
        }
    }
}

#[test]
fn projector_ranks_and_basis_sizes() {
    for n in 1..=5 {
        let d = n + 1;
        let expected = [
            binomial(n + 3, 3),
            2 * binomial(n + 2, 3),
            2 * binomial(n + 2, 3),
            binomial(n + 1, 3),
        ];
        let ranks: Vec<usize> = CLASSES.iter().map(|c| projector_rank(*c, d).unwrap()).collect();
        assert_eq!(ranks, expected, "dim {d}");
        assert_eq!(ranks.iter().sum::<usize>(), d * d * d);
        let sizes: Vec<usize> = CLASSES.iter().map(|c| basis(*c, d).unwrap().len()).collect();
        assert_eq!(sizes, expected, "dim {d}");
    }
    assert!(basis(SymmetryClass::PartialSym12, 3).is_err());
}

#[test]
fn residual_basis_in_two_dimensions() {
    let third = rat(1, 3);
    let b = basis(SymmetryClass::Residual1, 2).unwrap();
    let first = combo(2, &[(1, [1, 0, 0]), (1, [0, 1, 0]), (-2, [0, 0, 1])]).scale(&third);
    let second = combo(2, &[(2, [1, 1, 0]), (-1, [1, 0, 1]), (-1, [0, 1, 1])]).scale(&third);
    assert_eq!(b, vec![first, second]);
}

#[test]
fn residual_basis_in_three_dimensions() {
    let listed = vec![
        combo(3, &[(1, [1, 0, 0]), (1, [0, 1, 0]), (-2, [0, 0, 1])]),
        combo(3, &[(1, [2, 0, 0]), (1, [0, 2, 0]), (-2, [0, 0, 2])]),
        combo(3, &[(1, [2, 1, 1]), (1, [1, 2, 1]), (-2, [1, 1, 2])]),
        combo(3, &[(2, [1, 1, 0]), (-1, [1, 0, 1]), (-1, [0, 1, 1])]),
        combo(3, &[(2, [2, 2, 0]), (-1, [2, 0, 2]), (-1, [0, 2, 2])]),
        combo(3, &[(2, [2, 2, 1]), (-1, [2, 1, 2]), (-1, [1, 2, 2])]),
        combo(3, &[(1, [2, 1, 0]), (1, [1, 2, 0]), (-1, [0, 1, 2]), (-1, [1, 0, 2])]),
        combo(3, &[(1, [2, 0, 1]), (1, [0, 2, 1]), (-1, [0, 1, 2]), (-1, [1, 0, 2])]),
    ];
    let mut ours: Vec<Tensor3> = basis(SymmetryClass::Residual1, 3)
        .unwrap()
        .iter()
        .map(|t| t.scale(&int(3)))
        .collect();
    assert_eq!(ours.len(), listed.len());
    for t in &listed {
        let pos = ours.iter().position(|o| o == t).unwrap_or_else(|| panic!("missing {t}"));
        ours.remove(pos);
    }
}

#[test]
fn extension_of_the_two_parameter_tensor() {
    let (a, b, c, d, e_, f, g, h) = (int(2), int(-3), int(5), int(7), int(-1), int(4), int(6), int(-8));
    let two = int(2);
    let s = Tensor3::from_faces(&[
        vec![vec![int(0), a.clone()], vec![a.clone(), &two * &b]],
        vec![vec![-&two * &a, -b.clone()], vec![-b.clone(), int(0)]],
    ])
    .unwrap();
    assert!(s.in_n1());
    let free = vec![vec![c.clone(), d.clone(), e_.clone()], vec![f.clone(), g.clone(), h.clone()]];
    let t = extend(&s, &free).unwrap();
    let expected = Tensor3::from_faces(&[
        vec![
            vec![int(0), a.clone(), c.clone()],
            vec![a.clone(), &two * &b, d.clone()],
            vec![c.clone(), d.clone(), &two * &e_],
        ],
        vec![
            vec![-&two * &a, -b.clone(), f.clone()],
            vec![-b.clone(), int(0), g.clone()],
            vec![f.clone(), g.clone(), &two * &h],
        ],
        vec![
            vec![-&two * &c, -(&d + &f), -e_.clone()],
            vec![-(&d + &f), -&two * &g, -h.clone()],
            vec![-e_.clone(), -h.clone(), int(0)],
        ],
    ])
    .unwrap();
    assert_eq!(t, expected);
    assert_eq!(restrict(&t).unwrap(), s);
}

#[test]
fn residual_of_a_single_entry() {
    let n = residual_part(&e(2, 1, 0, 0));
    assert_eq!(n, combo(2, &[(2, [1, 0, 0]), (-1, [0, 1, 0]), (-1, [0, 0, 1])]).scale(&rat(1, 3)));
}

#[test]
fn random_cyclic_tensors_are_reproducible() {
    for dim in 2..=6 {
        assert_eq!(random_n1(dim, 42), random_n1(dim, 42));
        assert!(random_n1(dim, 42).in_n1());
    }
    assert_ne!(random_n1(4, 1), random_n1(4, 2));
}
