mod common;

use higher_hochschild::cdga::{dual_numbers, exterior, koszul, polynomial, GradedAlgebra};
use higher_hochschild::exactla::{kernel_basis, rank, Rational, SparseRationalMatrix};
use higher_hochschild::hochschild::{build_complex, Chain, induced_chain, induced_map, shuffle_product, BuildOptions, HochschildComplex};
use higher_hochschild::homology::{check_chain_map, homology};
use higher_hochschild::simplicial::{
    binomial, check_simplicial_identities, circle_gluing, disjoint_union, pushout, standard_model, FiniteSimplicialSet,
    SimplexRef, SimplicialMap,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn matrix(rows: usize, cols: usize, entries: Vec<(usize, usize, i64, i64)>) -> SparseRationalMatrix {
    SparseRationalMatrix::from_triplets(
        rows,
        cols,
        entries.into_iter().map(|(r, c, n, d)| (r % rows, c % cols, Rational::new(n, d))),
    )
}

fn sparse_matrix() -> impl Strategy<Value = SparseRationalMatrix> {
    (1usize..24, 1usize..24).prop_flat_map(|(r, c)| {
        prop::collection::vec((0..r, 0..c, -4i64..=4, 1i64..=3), 0..(r * c).min(60)).prop_map(move |e| matrix(r, c, e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in sparse_matrix()) {
        prop_assert_eq!(rank(&m) + kernel_basis(&m).dim(), m.cols());
        for v in kernel_basis(&m).basis() {
            prop_assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn row_rank_is_column_rank(m in sparse_matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_survives_rescaling(m in sparse_matrix(), n in 1i64..50, d in 1i64..50, neg in any::<bool>(), seed in any::<u64>()) {
        let c = Rational::new(if neg { -n } else { n }, d);
        prop_assert_eq!(rank(&m.scaled(&c)), rank(&m));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut nonzero = || Rational::new(rng.gen_range(1..=7) * if rng.gen() { 1 } else { -1 }, rng.gen_range(1..=5));
        let rows: Vec<Rational> = (0..m.rows()).map(|_| nonzero()).collect();
        let cols: Vec<Rational> = (0..m.cols()).map(|_| nonzero()).collect();
        let rescaled = SparseRationalMatrix::from_triplets(
            m.rows(),
            m.cols(),
            m.entries().map(|(r, j, x)| (r, j, x.clone() * rows[r].clone() * cols[j].clone())),
        );
        prop_assert_eq!(rank(&rescaled), rank(&m));
    }

    #[test]
    fn rationals_are_in_lowest_terms(n in -1000i64..1000, d in 1i64..1000, k in 1i64..50) {
        let x = Rational::new(n * k, d * k);
        prop_assert_eq!(x.clone(), Rational::new(n, d));
        prop_assert!(x.denom() > 0.into());
        prop_assert_eq!(num_gcd(&x), 1);
    }
}

fn num_gcd(x: &Rational) -> u64 {
    let (mut a, mut b) = (x.numer().magnitude().clone(), x.denom().magnitude().clone());
    if a == 0u32.into() {
        return 1;
    }
    while b != 0u32.into() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a.try_into().unwrap_or(0)
}

#[test]
fn rank_of_large_sparse_matrices() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for (rows, cols, nnz) in [(200, 200, 600), (200, 150, 900), (120, 200, 300)] {
        let entries: Vec<_> = (0..nnz)
            .map(|_| (rng.gen_range(0..rows), rng.gen_range(0..cols), rng.gen_range(-5..=5), rng.gen_range(1..=4)))
            .collect();
        let m = matrix(rows, cols, entries);
        let r = rank(&m);
        assert_eq!(r, rank(&m.transpose()));
        assert_eq!(r + kernel_basis(&m).dim(), cols);
    }
}

const MODELS: [&str; 13] = [
    "point",
    "delta(1)",
    "delta(2)",
    "delta(3)",
    "boundary_delta(2)",
    "sphere(1)",
    "sphere(2)",
    "interval",
    "square",
    "circle_minimal",
    "circle_two_cell",
    "cylinder",
    "torus_glued",
];

/// Closed-form level sizes, counted by hand from the nondegenerate simplices.
fn expected_level_size(model: &str, k: usize) -> usize {
    let delta = |n: usize| binomial(n + k + 1, k + 1);
    match model {
        "point" => 1,
        "delta(1)" | "interval" => delta(1),
        "delta(2)" => delta(2),
        "delta(3)" => delta(3),
        "boundary_delta(2)" => delta(2) - binomial(k, 2),
        "sphere(1)" | "circle_minimal" => 1 + k,
        "sphere(2)" => 1 + binomial(k, 2),
        "square" => (k + 2) * (k + 2),
        "circle_two_cell" => 2 + 2 * k,
        "cylinder" => (k + 2) * (k + 2) - (k + 2),
        "torus_glued" => (k + 1) * (k + 1),
        _ => unreachable!(),
    }
}

#[test]
fn level_sizes_match_closed_forms() {
    for model in MODELS {
        let x = standard_model(model).unwrap();
        for k in 0..=6 {
            assert_eq!(x.level_size(k), expected_level_size(model, k), "{model}, level {k}");
        }
    }
}

#[test]
fn simplicial_identities_hold() {
    for model in MODELS {
        let x = standard_model(model).unwrap();
        check_simplicial_identities(&x, 6).unwrap_or_else(|e| panic!("{model}: {e}"));
    }
}

/// Every simplicial map `x → t`, by exhaustive choice of generator images.
fn all_maps(x: &FiniteSimplicialSet, t: &FiniteSimplicialSet) -> Vec<SimplicialMap> {
    let choices: Vec<Vec<SimplexRef>> = (0..x.len()).map(|g| t.level(x.generator_dim(g))).collect();
    let mut out = Vec::new();
    let mut idx = vec![0; x.len()];
    loop {
        let images = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        if let Ok(f) = SimplicialMap::new(x.clone(), t.clone(), images) {
            out.push(f);
        }
        let mut p = 0;
        loop {
            if p == idx.len() {
                return out;
            }
            idx[p] += 1;
            if idx[p] < choices[p].len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

#[test]
fn pushout_is_universal() {
    let (f, g) = circle_gluing();
    let po = pushout(&f, &g).unwrap();
    for target in ["interval", "circle_minimal", "delta(2)"] {
        let t = standard_model(target).unwrap().with_basepoint(None).unwrap();
        let unpointed = |m: &SimplicialMap| {
            SimplicialMap::new(m.source().with_basepoint(None).unwrap(), m.target().with_basepoint(None).unwrap(), m.images().to_vec())
                .unwrap()
        };
        let (f, g, left, right) = (unpointed(&f), unpointed(&g), unpointed(&po.left), unpointed(&po.right));
        let from_w = all_maps(left.target(), &t);
        let mut cones = 0;
        for u in all_maps(f.target(), &t) {
            for v in all_maps(g.target(), &t) {
                if f.then(&u).unwrap() != g.then(&v).unwrap() {
                    continue;
                }
                cones += 1;
                let through: Vec<_> =
                    from_w.iter().filter(|h| left.then(h).unwrap() == u && right.then(h).unwrap() == v).collect();
                assert_eq!(through.len(), 1, "cone into {target}");
            }
        }
        assert!(cones > 1);
    }
}

fn build(space: &FiniteSimplicialSet, a: &GradedAlgebra, n_min: i32, normalized: bool) -> HochschildComplex {
    build_complex(space, a, None, n_min, &BuildOptions { normalized, max_basis: None }).unwrap()
}

fn dims(c: &HochschildComplex) -> Vec<usize> {
    let r = homology(c, false);
    (c.n_min()..=0).rev().map(|n| r.dim(n).unwrap()).collect()
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    (0..a.len()).map(|n| (0..=n).map(|i| a[i] * b[n - i]).sum()).collect()
}

fn test_algebras() -> Vec<GradedAlgebra> {
    vec![dual_numbers(), exterior(-1), polynomial(-2), koszul()]
}

#[test]
fn shuffle_laws_on_random_chains() {
    for space in ["point", "interval", "circle_minimal"] {
        let x = standard_model(space).unwrap();
        for (i, a) in test_algebras().into_iter().enumerate() {
            let c = build(&x, &a, -9, false);
            common::shuffle_trials(&c, 200, 200, 31 * i as u64 + space.len() as u64)
                .unwrap_or_else(|e| panic!("{space}, {}: {e}", a.name()));
        }
    }
}

#[test]
fn normalization_preserves_homology() {
    for space in ["point", "interval", "circle_minimal", "circle_two_cell", "sphere(2)", "boundary_delta(2)"] {
        let x = standard_model(space).unwrap();
        for a in test_algebras() {
            assert_eq!(dims(&build(&x, &a, -4, false)), dims(&build(&x, &a, -4, true)), "{space}, {}", a.name());
        }
    }
}

#[test]
fn disjoint_union_is_kunneth() {
    for (p, q) in [("point", "circle_minimal"), ("circle_minimal", "circle_minimal"), ("circle_minimal", "sphere(2)")] {
        let (x, y) = (standard_model(p).unwrap(), standard_model(q).unwrap());
        let xy = disjoint_union(&x, &y);
        for a in test_algebras() {
            let expect = convolve(&dims(&build(&x, &a, -4, true)), &dims(&build(&y, &a, -4, true)));
            assert_eq!(dims(&build(&xy, &a, -4, true)), expect, "{p} ⊔ {q}, {}", a.name());
        }
    }
}

#[test]
fn tensor_algebra_is_kunneth() {
    let x = standard_model("circle_minimal").unwrap();
    for (a, b) in [(dual_numbers(), exterior(-1)), (exterior(-1), polynomial(-2)), (dual_numbers(), dual_numbers())] {
        let ab = GradedAlgebra::tensor(&a, &b);
        let expect = convolve(&dims(&build(&x, &a, -4, true)), &dims(&build(&x, &b, -4, true)));
        assert_eq!(dims(&build(&x, &ab, -4, true)), expect, "{}", ab.name());
    }
}

#[test]
fn tensor_algebra_is_associative_on_dims() {
    let (a, b, c) = (dual_numbers(), exterior(-1), polynomial(-2));
    let left = GradedAlgebra::tensor(&GradedAlgebra::tensor(&a, &b), &c);
    let right = GradedAlgebra::tensor(&a, &GradedAlgebra::tensor(&b, &c));
    assert_eq!(left.dims(-8), right.dims(-8));
}

#[test]
fn koszul_algebra_is_acyclic() {
    let k = koszul();
    let point = standard_model("point").unwrap();
    assert_eq!(dims(&build(&point, &k, -6, false)), [1, 0, 0, 0, 0, 0, 0]);
}

#[test]
fn induced_maps_are_functorial_chain_maps() {
    let i = standard_model("interval").unwrap();
    let two_cell = standard_model("circle_two_cell").unwrap().with_basepoint(None).unwrap();
    let circle = standard_model("circle_minimal").unwrap().with_basepoint(None).unwrap();
    for a in [dual_numbers(), exterior(-1), koszul()] {
        let ci = build(&i, &a, -3, false);
        let ct = build(&two_cell, &a, -3, false);
        let cc = build(&circle, &a, -3, false);
        for f in all_maps(&i, &two_cell) {
            let ff = induced_map(&f, &ci, &ct).unwrap();
            check_chain_map(&ff, &ci, &ct).unwrap();
            for g in all_maps(&two_cell, &circle) {
                let gg = induced_map(&g, &ct, &cc).unwrap();
                let composite = induced_map(&f.then(&g).unwrap(), &ci, &cc).unwrap();
                assert_eq!(ff.then(&gg), composite, "{}", a.name());
            }
        }
        let id = induced_map(&SimplicialMap::identity(&two_cell), &ct, &ct).unwrap();
        for ((n, w), m) in &id.blocks {
            assert_eq!(*m, SparseRationalMatrix::identity(ct.block_len(*n, *w)));
        }
    }
}

#[test]
fn induced_maps_preserve_shuffle_products() {
    let i = standard_model("interval").unwrap();
    let two_cell = standard_model("circle_two_cell").unwrap().with_basepoint(None).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for a in [dual_numbers(), exterior(-1), koszul()] {
        let ci = build(&i, &a, -5, false);
        let ct = build(&two_cell, &a, -5, false);
        for f in all_maps(&i, &two_cell) {
            for _ in 0..20 {
                let (u, ku, ..) = common::random_chain(&ci, &mut rng, 2, -2);
                let (v, ..) = common::random_chain(&ci, &mut rng, 2.min(4 - ku), -2);
                let push = |c: &Chain| induced_chain(&f, &ci, &ct, c).unwrap();
                let lhs = push(&shuffle_product(&ci, &u, &v).unwrap());
                let rhs = shuffle_product(&ct, &push(&u), &push(&v)).unwrap();
                assert_eq!(lhs, rhs, "{}", a.name());
            }
        }
    }
}
