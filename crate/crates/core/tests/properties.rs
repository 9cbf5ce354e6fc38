use num_complex::Complex64 as C;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use reflekt::affine::{build_affine_diagram, AffineMap, AffineSetup, AffineVector};
use reflekt::catalog::GroupId;
use reflekt::group::{Perm, ReflectionGroup};
use reflekt::lattices::build_root_system;
use reflekt::linalg::Matrix;
use reflekt::presentations::lemmas::GroupOps;
use reflekt::presentations::{Relation, Word};
use reflekt::rings::{RingElement, RingId};
use reflekt::weyl::{run_trials, WeylParams, WeylSetup};

const RINGS: [RingId; 6] = [
    RingId::Integers,
    RingId::Eisenstein,
    RingId::Gaussian,
    RingId::SqrtM2,
    RingId::SqrtM7,
    RingId::Cyclotomic(8),
];

fn element(ring: RingId) -> impl Strategy<Value = RingElement> {
    prop::collection::vec(-30i64..=30, ring.degree()).prop_map(move |c| RingElement::from_coeffs(ring, &c))
}

fn pair() -> impl Strategy<Value = (RingElement, RingElement)> {
    prop::sample::select(RINGS.to_vec()).prop_flat_map(|r| (element(r), element(r)))
}

fn close(a: C, b: C) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + b.norm())
}

proptest! {
    #[test]
    fn ring_ops_match_complex_embedding((a, b) in pair()) {
        prop_assert!(close((a + b).embed(), a.embed() + b.embed()));
        prop_assert!(close((a - b).embed(), a.embed() - b.embed()));
        prop_assert!(close((a * b).embed(), a.embed() * b.embed()));
        prop_assert!(close(a.conj().embed(), a.embed().conj()));
        prop_assert!(close(a.norm().embed(), C::new(a.embed().norm_sqr(), 0.0)));
        prop_assert_eq!((a * b).conj(), a.conj() * b.conj());
    }

    #[test]
    fn text_round_trips((a, _) in pair()) {
        prop_assert_eq!(RingElement::parse(a.ring(), &a.to_text()).unwrap(), a);
    }

    #[test]
    fn euclidean_division_shrinks((a, b) in pair()) {
        prop_assume!(!b.is_zero());
        if let Some((q, r)) = a.euclid_div(&b) {
            prop_assert_eq!(q * b + r, a);
            prop_assert!(r.absolute_norm().abs() < b.absolute_norm().abs());
        }
    }
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..3, prop::bool::ANY), 0..24)
        .prop_map(|v| Word::new(v.into_iter().map(|(g, s)| (g, if s { 1 } else { -1 }))))
}

/// Generators of `S_5`: a transposition, a 3-cycle and a 5-cycle.
fn s5() -> Vec<Perm> {
    vec![
        Perm::from_images(vec![1, 0, 2, 3, 4]),
        Perm::from_images(vec![1, 2, 0, 3, 4]),
        Perm::from_images(vec![1, 2, 3, 4, 0]),
    ]
}

proptest! {
    #[test]
    fn free_reduction_is_idempotent(w in word()) {
        prop_assert_eq!(Word::new(w.letters().iter().copied()), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| !(p[0].0 == p[1].0 && p[0].1 == -p[1].1)));
    }

    #[test]
    fn inverse_cancels(w in word()) {
        prop_assert!(w.mul(&w.inverse()).is_empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn eval_is_a_homomorphism(a in word(), b in word()) {
        let g = s5();
        prop_assert_eq!(a.mul(&b).eval(&g), a.eval(&g).mul(&b.eval(&g)));
        prop_assert!(a.mul(&a.inverse()).eval(&g).is_identity());
    }

    #[test]
    fn p_relation_expands_to_alternating_products(m in 2usize..9, k in 2usize..4) {
        let gens: Vec<usize> = (0..k).collect();
        let r = Relation::p(m, &gens);
        let lhs: Vec<usize> = (0..m).map(|i| gens[i % k]).collect();
        let rhs: Vec<usize> = (1..=m).map(|i| gens[i % k]).collect();
        prop_assert_eq!(&r.lhs, &Word::positive(&lhs));
        prop_assert_eq!(&r.rhs, &Word::positive(&rhs));
    }

    #[test]
    fn relations_are_conjugation_invariant(m in 2usize..7, c in word()) {
        let g = s5();
        let h = c.eval(&g);
        let conj: Vec<Perm> = g.iter().map(|x| h.mul(x).mul(&h.inv())).collect();
        let r = Relation::p(m, &[0, 1]);
        prop_assert_eq!(r.holds(&g), r.holds(&conj));
    }
}

fn apply_c(m: &Matrix, w: &[C]) -> Vec<C> {
    m.embed().iter().map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum()).collect()
}

fn group_setup(g: u32) -> WeylSetup {
    let rs = build_root_system(GroupId::Exceptional(g)).unwrap();
    WeylSetup::new(ReflectionGroup::full(rs).unwrap(), WeylParams::default())
}

/// `sym` is invariant and `α` equivariant under the group, checked on
/// random products of generating reflections.
#[test]
fn sym_and_alpha_are_equivariant() {
    for g in [4, 25, 29, 32] {
        let s = group_setup(g);
        let gens: Vec<Matrix> = (0..s.num_projective()).map(|i| s.group.rs.generator(i)).collect();
        let mut rng = ChaCha20Rng::seed_from_u64(g as u64);
        for _ in 0..20 {
            let w = s.random_start(&mut rng);
            let mut gw = w.clone();
            let mut word = Vec::new();
            for _ in 0..6 {
                let i = rng.random_range(0..gens.len());
                gw = apply_c(&gens[i], &gw);
                word.push(i);
            }
            assert!((s.sym(&w) - s.sym(&gw)).abs() < 1e-9, "G{g}");
            let mut ga = s.alpha(&w).unwrap();
            for &i in &word {
                ga = apply_c(&gens[i], &ga);
            }
            let agw = s.alpha(&gw).unwrap();
            let err = ga.iter().zip(&agw).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-9, "G{g}: {err}");
        }
    }
}

fn random_affine(gens: &[AffineMap], len: usize, rng: &mut ChaCha20Rng) -> AffineMap {
    let mut g = gens[0].compose(&gens[0].inverse());
    for _ in 0..len {
        let s = &gens[rng.random_range(0..gens.len())];
        g = if rng.random_bool(0.5) { g.compose(s) } else { g.compose(&s.inverse()) };
    }
    g
}

/// Group laws of the pair representation against the action on `K̃`, and
/// the conjugation law for translations, on 20 random words per group.
#[test]
fn affine_group_laws() {
    for g in [4, 25, 26, 32, 33, 34] {
        let setup = AffineSetup::new(GroupId::Exceptional(g)).unwrap();
        let weyl = WeylSetup::new(ReflectionGroup::full(setup.rs.clone()).unwrap(), WeylParams::default());
        let simple = run_trials(&weyl, 100, 1).unwrap().representative().expect("simple system").roots.clone();
        let diag = build_affine_diagram(&setup, &simple).unwrap();
        let mut gens: Vec<AffineMap> = simple.iter().map(|&i| setup.linear_generator(i)).collect();
        gens.push(setup.extending_generator(&diag.extending_vec).unwrap());
        let aspace = &setup.aspace;
        let vs: Vec<AffineVector> = aspace.test_vectors();
        let mut rng = ChaCha20Rng::seed_from_u64(g as u64);
        for _ in 0..20 {
            let a = random_affine(&gens, 5, &mut rng);
            let b = random_affine(&gens, 5, &mut rng);
            let c = random_affine(&gens, 5, &mut rng);
            assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)), "G{g} associativity");
            assert!(a.compose(&a.inverse()).is_identity(), "G{g} inverse");
            for v in &vs {
                assert_eq!(aspace.apply(&a.compose(&b), v), aspace.apply(&a, &aspace.apply(&b, v)), "G{g} action");
            }
            let x = diag.extending_vec.clone();
            let t = aspace.translation(&x).unwrap();
            let gx = a.linear.apply(&x);
            let lhs = a.compose(&t).compose(&a.inverse());
            assert!(aspace.same_action(&lhs, &aspace.translation(&gx).unwrap()), "G{g} conjugation");
        }
    }
}
