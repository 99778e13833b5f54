mod common;

use common::{kernel, op_norm, rank, subalgebra_generators, KnownSvd};
use opalg::ideals::{
    canonical_generator, countable_generator_truncated, finite_generator, generate_star_algebra, ideal_contains,
    is_zero_isolated_matrix, normalize_generators, verify_ideal_intersection, StarAlgebraBasis,
};
use opalg::linalg::{psd_order_holds, range_projection};
use opalg::random::{gaussian, haar_unitary, seeded, with_rank};
use opalg::{Error, Matrix32, Matrix64, Tolerance32, Tolerance64};
use proptest::prelude::*;
use rand::Rng;

fn tol() -> Tolerance64 {
    Tolerance64::default()
}

fn block_column(a1: &Matrix64, a2: &Matrix64) -> Matrix64 {
    let d = a1.rows();
    let mut m = Matrix64::zeros(2 * d, 2 * d);
    m.set_block(0, 0, a1);
    m.set_block(d, 0, a2);
    m
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn generator_generates_the_same_ideal(seed in any::<u64>(), d in 1usize..7, r in 0usize..7) {
        let a: Matrix64 = with_rank(&mut seeded(seed, 0), d, d, r.min(d));
        let g = canonical_generator(&a, &tol()).unwrap();
        prop_assert!(ideal_contains(&a, &g, &tol()).unwrap());
        prop_assert!(ideal_contains(&g, &a, &tol()).unwrap());
    }

    #[test]
    fn two_generators_collapse_to_one(seed in any::<u64>(), d in 1usize..6, r1 in 0usize..6, r2 in 0usize..6) {
        let mut rng = seeded(seed, 1);
        let a1: Matrix64 = with_rank(&mut rng, d, d, r1.min(d));
        let a2: Matrix64 = with_rank(&mut rng, d, d, r2.min(d));
        let g = finite_generator(&[a1.clone(), a2.clone()], &tol()).unwrap();
        let a = block_column(&a1, &a2);
        let at = block_column(&g, &Matrix64::zeros(d, d));
        prop_assert!(op_norm(&(&a.gram() - &at.gram())) <= 1e-8 * a.gram().fro_norm().max(1.0));
    }

    #[test]
    fn finite_generator_kernel_is_common_kernel(seed in any::<u64>(), d in 1usize..6, n in 1usize..5) {
        let mut rng = seeded(seed, 2);
        let gens: Vec<Matrix64> = (0..n).map(|_| {
            let r = rng.random_range(0..=d);
            with_rank(&mut rng, d, d, r)
        }).collect();
        let g = finite_generator(&gens, &tol()).unwrap();
        let refs: Vec<&Matrix64> = gens.iter().collect();
        let stacked = Matrix64::vstack(&refs).unwrap();
        prop_assert_eq!(rank(&g, 1e-7), rank(&stacked, 1e-9));
        for w in kernel(&stacked, 1e-9) {
            prop_assert!(common::norm(&g.apply(&w)) <= 1e-6 * common::norm(&w));
        }
    }

    #[test]
    fn finite_generator_ignores_order(seed in any::<u64>(), d in 1usize..5) {
        let mut rng = seeded(seed, 3);
        let gens: Vec<Matrix64> = (0..4).map(|_| gaussian(&mut rng, d, d)).collect();
        let base = finite_generator(&gens, &tol()).unwrap();
        for perm in [[3, 2, 1, 0], [1, 0, 3, 2], [2, 0, 3, 1]] {
            let shuffled: Vec<Matrix64> = perm.iter().map(|&i| gens[i].clone()).collect();
            prop_assert_eq!(&finite_generator(&shuffled, &tol()).unwrap(), &base);
        }
    }

    #[test]
    fn isolated_zero_sandwich(seed in any::<u64>(), d in 1usize..7, r in 0usize..7) {
        let b = KnownSvd::random(&mut seeded(seed, 4), d, r.min(d));
        let (isolated, gap) = is_zero_isolated_matrix(&b.b, &tol());
        prop_assert!(isolated);
        let expected = if b.rank == 0 { 0.0 } else { b.s[b.rank - 1].powi(2) };
        prop_assert!((gap - expected).abs() <= 1e-10);
        let aa = b.b.gram();
        let e = range_projection(&aa, &tol());
        prop_assert!(psd_order_holds(&e.scale(gap), &aa, &tol()).unwrap());
        prop_assert!(psd_order_holds(&aa, &e.scale(b.s[0].powi(2)), &tol()).unwrap());
    }

    #[test]
    fn intersections_agree(seed in any::<u64>(), d in 1usize..5) {
        let mut rng = seeded(seed, 5);
        let u1: Matrix64 = haar_unitary(&mut rng, d);
        let u2 = if rng.random_bool(0.5) { u1.clone() } else { haar_unitary(&mut rng, d) };
        let r1 = generate_star_algebra(&subalgebra_generators(&mut rng, d, &u1), d, &tol()).unwrap();
        let r2 = generate_star_algebra(&subalgebra_generators(&mut rng, d, &u2), d, &tol()).unwrap();
        let common = r1.intersection(&r2, &tol());
        let a = common.basis().iter().fold(Matrix64::zeros(d, d), |acc, m| {
            let c = common::c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            &acc + &m.scale_cx(c)
        });
        let report = verify_ideal_intersection(&r1, &r2, &a, &tol()).unwrap();
        prop_assert!(report.all_equal(), "{:?}", report);
    }

    #[test]
    fn countable_truncations_increase(seed in any::<u64>(), d in 1usize..5, n in 2usize..7) {
        let mut rng = seeded(seed, 6);
        let raw: Vec<Matrix64> = (0..n).map(|_| {
            let r = rng.random_range(0..=d);
            with_rank(&mut rng, d, d, r)
        }).collect();
        let gens = normalize_generators(&raw, &tol()).unwrap();
        for g in &gens {
            prop_assert!(op_norm(g) <= 1.0 + 1e-12);
        }
        let mut prev = Matrix64::zeros(d, d);
        for k in 1..=n {
            let b = countable_generator_truncated(&gens, k, &tol()).unwrap();
            let b2 = &b * &b;
            prop_assert!(psd_order_holds(&prev, &b2, &tol()).unwrap());
            prop_assert!(op_norm(&(&b2 - &prev)) <= 0.5f64.powi(k as i32) + 1e-12);
            let refs: Vec<&Matrix64> = raw[..k].iter().collect();
            prop_assert_eq!(rank(&b, 1e-6), rank(&Matrix64::vstack(&refs).unwrap(), 1e-9));
            prev = b2;
        }
    }
}

#[test]
fn containment_examples() {
    let p = Matrix64::from_real_diag(&[1.0, 0.0]);
    let i = Matrix64::identity(2);
    assert!(ideal_contains(&p, &i, &tol()).unwrap());
    assert!(!ideal_contains(&i, &p, &tol()).unwrap());
    assert_eq!(is_zero_isolated_matrix(&p, &tol()), (true, 1.0));
}

#[test]
fn countable_inputs_must_be_positive_contractions() {
    let big = Matrix64::identity(2).scale(2.0);
    assert!(matches!(
        countable_generator_truncated(&[big], 1, &tol()),
        Err(Error::NotContraction { index: 0, .. })
    ));
    let neg = Matrix64::from_real_diag(&[1.0, -0.5]);
    assert!(matches!(countable_generator_truncated(&[neg], 1, &tol()), Err(Error::NotPositive { .. })));
    let i = Matrix64::identity(2);
    assert!(matches!(countable_generator_truncated(&[i.clone()], 2, &tol()), Err(Error::InvalidCount(_))));
    assert!(matches!(finite_generator::<f64>(&[], &tol()), Err(Error::EmptyList)));
}

#[test]
fn generated_algebras_are_closed() {
    let mut rng = seeded(31, 0);
    for d in 1..=4 {
        let u: Matrix64 = haar_unitary(&mut rng, d);
        for _ in 0..10 {
            let alg = generate_star_algebra(&subalgebra_generators(&mut rng, d, &u), d, &tol()).unwrap();
            assert!(alg.closure_defect(&tol()) <= 1e-9);
            assert!(alg.residual(&Matrix64::identity(d), &tol()) <= 1e-9);
        }
    }
    assert_eq!(StarAlgebraBasis::<f64>::full(3).len(), 9);
    assert_eq!(StarAlgebraBasis::<f64>::diagonal(3).len(), 3);
}

#[test]
fn operand_outside_the_algebras_is_rejected() {
    let d = 3;
    let diag = StarAlgebraBasis::<f64>::diagonal(d);
    let full = StarAlgebraBasis::<f64>::full(d);
    let a: Matrix64 = gaussian(&mut seeded(32, 0), d, d);
    assert!(matches!(verify_ideal_intersection(&diag, &full, &a, &tol()), Err(Error::NotInIntersection { .. })));
}

#[test]
fn single_precision_containment() {
    let tol = Tolerance32::default();
    let mut rng = seeded(33, 0);
    for d in 1..=5 {
        let a: Matrix32 = gaussian(&mut rng, d, d);
        let g = canonical_generator(&a, &tol).unwrap();
        assert!(ideal_contains(&a, &g, &tol).unwrap());
        assert!(ideal_contains(&g, &a, &tol).unwrap());
    }
}
