//! Library results against independent oracles: textbook group orders,
//! degree products, a floating-point reflection formula and enumeration by
//! brute force.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_complex::Complex64 as C;

use reflekt::catalog::{GroupId, WeylType, EXCEPTIONAL};
use reflekt::group::{Perm, ReflectionGroup};
use reflekt::lattices::build_root_system;
use reflekt::linalg::{embed_vector, form_f64};
use reflekt::presentations::coset::todd_coxeter;
use reflekt::presentations::lemmas::enumerate_elements;
use reflekt::presentations::verify::verify_group;
use reflekt::presentations::Presentation;
use reflekt::rings::root_of_unity;
use reflekt::weyl::{run_trials, WeylParams, WeylSetup};

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn coxeter_matrix(n: usize, edges: &[(usize, usize, usize)]) -> Vec<Vec<Option<usize>>> {
    let mut m = vec![vec![Some(2); n]; n];
    for &(i, j, k) in edges {
        m[i][j] = Some(k);
        m[j][i] = Some(k);
    }
    m
}

#[test]
fn todd_coxeter_matches_coxeter_group_orders() {
    let path = |n: usize| (0..n - 1).map(|i| (i, i + 1, 3)).collect::<Vec<_>>();
    let mut b3 = path(3);
    b3[1].2 = 4;
    let mut h3 = path(3);
    h3[1].2 = 5;
    let mut d4 = path(3);
    d4.push((1, 3, 3));
    let cases: Vec<(&str, usize, Vec<(usize, usize, usize)>, u64)> = vec![
        ("I2(5)", 2, vec![(0, 1, 5)], 10),
        ("A3", 3, path(3), factorial(4)),
        ("A4", 4, path(4), factorial(5)),
        ("B3", 3, b3, 8 * factorial(3)),
        ("H3", 3, h3, 120),
        ("D4", 4, d4, 8 * factorial(4)),
    ];
    for (name, n, edges, order) in cases {
        let names = (0..n).map(|i| format!("s{i}")).collect();
        let pres = Presentation::coxeter(names, &coxeter_matrix(n, &edges)).with_torsion(vec![2; n]);
        let table = todd_coxeter(&pres, &[], 100_000);
        assert_eq!(table.index(), Some(order as usize), "{name}");
    }
}

/// For a finite reflection group the order is the product of its degrees.
#[test]
fn stabilizer_chain_order_is_product_of_degrees() {
    for n in EXCEPTIONAL {
        let id = GroupId::Exceptional(n);
        let rs = build_root_system(id).unwrap();
        let degrees = rs.config.degrees.clone();
        let group = ReflectionGroup::full(rs).unwrap();
        if let Some(d) = degrees {
            let product: BigUint = d.iter().map(|&x| BigUint::from(x)).product();
            assert_eq!(group.order(), product, "{id}");
        }
    }
    for (t, n, order) in [
        (WeylType::A, 4, factorial(5)),
        (WeylType::B, 3, 48),
        (WeylType::D, 4, 192),
        (WeylType::E, 6, 51840),
    ] {
        let group = ReflectionGroup::full(build_root_system(GroupId::Weyl(t, n)).unwrap()).unwrap();
        assert_eq!(group.order(), BigUint::from(order), "{t:?}{n}");
    }
}

/// `|G(m,e,n)| = m^n n! / e`.
#[test]
fn imprimitive_orders() {
    for (m, e, n) in [(3, 1, 2), (3, 3, 3), (4, 2, 3), (4, 4, 3), (6, 2, 2)] {
        let id = GroupId::Imprimitive { m, e, n };
        let group = ReflectionGroup::full(build_root_system(id).unwrap()).unwrap();
        let order = (m as u64).pow(n) * factorial(n as u64) / e as u64;
        assert_eq!(group.order(), BigUint::from(order), "{id}");
    }
}

/// The stabilizer chain agrees with closing the generators by brute force.
#[test]
fn brute_force_closure_matches_stabilizer_chain() {
    for n in [4, 5, 8, 12, 25] {
        let rs = build_root_system(GroupId::Exceptional(n)).unwrap();
        let group = ReflectionGroup::full(rs).unwrap();
        let gens: Vec<Perm> = (0..group.rs.projective.len())
            .map(|i| group.perm(&group.rs.generator(i)).unwrap())
            .collect();
        let all = enumerate_elements(&gens, 10_000).unwrap();
        let distinct: HashSet<&Perm> = all.iter().collect();
        assert_eq!(BigUint::from(distinct.len()), group.order(), "G{n}");
    }
}

/// Generating reflections against `y − (1−u)⟨x,y⟩/|x|² x` in floating point.
#[test]
fn reflection_matrices_match_formula() {
    for n in [4, 5, 8, 26, 29, 33] {
        let rs = build_root_system(GroupId::Exceptional(n)).unwrap();
        let gram = rs.space.gram.embed();
        let dim = rs.rank();
        for (i, pr) in rs.projective.iter().enumerate() {
            let u = root_of_unity(rs.ring(), pr.gen_order).unwrap().embed();
            let x = embed_vector(&pr.rep.vec);
            let xx = form_f64(&gram, &x, &x);
            let m = rs.generator(i).embed();
            for j in 0..dim {
                let y: Vec<C> = (0..dim).map(|k| C::new((k == j) as u8 as f64, 0.0)).collect();
                let c = (C::new(1.0, 0.0) - u) * form_f64(&gram, &x, &y) / xx;
                for k in 0..dim {
                    let want = y[k] - c * x[k];
                    assert!((m[k][j] - want).norm() < 1e-9, "G{n} root {i}");
                }
            }
        }
    }
}

/// Pairwise least relations and reflection orders present the groups with
/// Coxeter's diagrams; the enumeration reproduces the known orders.
#[test]
fn diagram_presentations_certify() {
    for (n, order) in [(4u32, 24u64), (25, 648), (26, 1296), (32, 155_520)] {
        let id = GroupId::Exceptional(n);
        let rs = build_root_system(id).unwrap();
        let setup = WeylSetup::new(ReflectionGroup::full(rs).unwrap(), WeylParams::default());
        let report = run_trials(&setup, 50, 1).unwrap();
        let simple = report.representative().unwrap();
        let gens: Vec<Perm> = simple
            .roots
            .iter()
            .map(|&i| setup.group.perm(&setup.group.rs.generator(i)).unwrap())
            .collect();
        let v = verify_group(id, &gens, &setup.group.order(), 2_000_000).unwrap();
        assert!(v.relations_hold && v.generators_generate, "{id}");
        assert_eq!(v.certification.unwrap().order(), BigUint::from(order), "{id}");
    }
}
