//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout. The
//! process fails only if a criterion outside `EXPECTED_FAIL` fails, or if an
//! expected failure starts passing (so the list stays honest).

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_complex::Complex64 as C;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use reflekt::affine::{build_affine_diagram, verify_affine_generation, verify_identities, AffineSetup};
use reflekt::catalog::GroupId;
use reflekt::diagrams::{circ, circ_reduce, classify_eisenstein, eisenstein_path, CircReduction, Diagram};
use reflekt::group::{coxeter_element_check, Perm, ReflectionGroup};
use reflekt::lattices::build_root_system;
use reflekt::linalg::{Matrix, Vector};
use reflekt::presentations::verify::{verify_group, VerifyReport};
use reflekt::rings::{RingElement, RingId};
use reflekt::weyl::{
    generates, rho_n, rho_simple_system, run_trials, select_simple_system, TrialReport, WeylParams, WeylSetup,
};

/// Criteria known not to hold with this implementation; see the README.
const EXPECTED_FAIL: &[u32] = &[4, 10];

/// Tolerance on fixed points and on `δ_w(r) = 1`.
const WEYL_TOL: f64 = 1e-9;
const TRIALS: usize = 200;
const SEED: u64 = 1;
const MAX_COSETS: usize = 2_000_000;
const AFFINE_RADIUS: usize = 8;

const COMPLEX_GROUPS: [&str; 12] = ["g4", "g5", "g25", "g26", "g32", "g33", "g34", "g8", "g29", "g31", "g12", "g24"];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn group(name: &str) -> GroupId {
    name.parse().expect("known group")
}

fn setup_for(name: &str, params: WeylParams) -> WeylSetup {
    let rs = build_root_system(group(name)).expect("root system");
    WeylSetup::new(ReflectionGroup::full(rs).expect("group"), params)
}

/// Trial runs shared between criteria.
#[derive(Default)]
struct Runs {
    cache: BTreeMap<String, (WeylSetup, TrialReport)>,
}

impl Runs {
    fn get(&mut self, name: &str) -> &(WeylSetup, TrialReport) {
        self.cache.entry(name.to_string()).or_insert_with(|| {
            let s = setup_for(name, WeylParams::default());
            let r = run_trials(&s, TRIALS, SEED).expect("trials run");
            (s, r)
        })
    }

    fn simple_perms(&mut self, name: &str) -> Option<(Vec<Perm>, Vec<Matrix>)> {
        let (s, r) = self.get(name);
        let ss = r.representative()?;
        let mats: Vec<Matrix> = ss.roots.iter().map(|&i| s.group.rs.generator(i)).collect();
        let perms = mats.iter().map(|m| s.group.perm(m).ok()).collect::<Option<Vec<_>>>()?;
        Some((perms, mats))
    }
}

fn criterion1() -> Outcome {
    let expected = [
        ("g4", 4),
        ("g5", 8),
        ("g25", 12),
        ("g26", 21),
        ("g32", 40),
        ("g29", 40),
        ("g31", 60),
        ("g12", 12),
        ("g24", 21),
    ];
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for (g, n) in expected {
        let t = Instant::now();
        let count = build_root_system(group(g)).map(|rs| rs.projective.len());
        let el = t.elapsed();
        slowest = slowest.max(el);
        if count.as_ref().ok() != Some(&n) || el > Duration::from_secs(1) {
            bad.push(format!("{g}: {count:?} in {el:?}"));
        }
    }
    Outcome::new(bad.is_empty(), format!("9 groups, slowest {slowest:.2?}{}", failures(&bad)))
}

fn failures(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", bad.join("; "))
    }
}

fn eis(s: &str) -> RingElement {
    RingElement::parse(RingId::Eisenstein, s).unwrap()
}

/// Diagram with norm-3 vertices and `⟨x_i, x_j⟩ = −p` on the given edges.
fn tree(k: usize, edges: &[(usize, usize)]) -> Diagram {
    let e = RingId::Eisenstein;
    let mut g = Matrix::zeros(e, k, k);
    for i in 0..k {
        g.set(i, i, eis("3"));
    }
    for &(i, j) in edges {
        g.set(i, j, eis("-2-w"));
        g.set(j, i, eis("-2-w").conj());
    }
    Diagram::new(g).unwrap()
}

/// `Σ_x n_x ⟨a, x⟩` for every vertex `a`, evaluated in floating point.
fn numbering_residual(d: &Diagram, n: &[RingElement]) -> f64 {
    let g = d.gram();
    (0..d.size())
        .map(|a| (0..d.size()).map(|x| n[x].embed() * g.get(a, x).embed()).sum::<C>().norm())
        .fold(0.0, f64::max)
}

fn criterion2() -> Outcome {
    let t = Instant::now();
    let report = classify_eisenstein(5);
    let el = t.elapsed();
    let mut bad = Vec::new();
    let names: Vec<&str> = report.classes.iter().map(|c| c.name.as_str()).collect();
    if names != ["E2E", "E4E", "E6E", "E8E"] {
        bad.push(format!("classes {names:?}"));
    }
    // Every affine diagram found must carry a numbering that kills the gram
    // matrix and has an entry 1.
    for (d, n) in &report.affine {
        if numbering_residual(d, n) > 1e-9 || !n.iter().any(|x| x.is_one()) {
            bad.push(format!("rank-{} affine numbering not balanced", d.size()));
        }
    }
    let by_rank = |k: usize| report.affine.iter().filter(|(d, _)| d.size() == k).count();
    // Removing a vertex of Δ1 leaves E4, of Δ2, Δ3 leaves E6, of Δ4..Δ7 leaves E8.
    if by_rank(3) < 1 || by_rank(4) < 2 || by_rank(5) < 4 {
        bad.push(format!("affine per rank {:?}", (by_rank(3), by_rank(4), by_rank(5))));
    }
    for (d, _) in &report.affine {
        let k = d.size();
        let removable: Vec<usize> = (0..k)
            .filter(|&v| d.sub(&(0..k).filter(|&i| i != v).collect::<Vec<_>>()).is_connected())
            .collect();
        if !removable.iter().all(|&v| {
            let rest: Vec<usize> = (0..k).filter(|&i| i != v).collect();
            d.sub(&rest).same_class(&eisenstein_path(k - 1))
                || reflekt::diagrams::eisenstein_isometry(&d.sub(&rest), &eisenstein_path(k - 1)).is_some()
        }) {
            bad.push(format!("rank-{k} affine diagram minus a vertex is not E{}E", 2 * (k - 1)));
        }
    }
    let find = |d: &Diagram| report.affine.iter().find(|(a, _)| a.same_class(d));
    // Δ1: the 3-circuits that are neither E6 reductions.
    let circuits3: Vec<Diagram> = reflekt::rings::units(RingId::Eisenstein)
        .into_iter()
        .filter_map(|u| match circ_reduce(3, u).unwrap() {
            CircReduction::Indefinite { .. } => Some(circ(3, u).unwrap()),
            CircReduction::Definite { .. } => None,
        })
        .collect();
    if !circuits3.iter().any(|c| find(c).is_some()) {
        bad.push("no 3-circuit among the affine diagrams".into());
    }
    // Δ3: the star; its centre carries a numbering of norm 3 relative to the leaves.
    match find(&tree(4, &[(0, 1), (0, 2), (0, 3)])) {
        Some((d, n)) => {
            let centre = (0..4).find(|&v| (0..4).filter(|&u| u != v && d.adjacent(u, v)).count() == 3).unwrap();
            let leaves: Vec<f64> = (0..4).filter(|&v| v != centre).map(|v| n[v].embed().norm()).collect();
            let c = n[centre].embed().norm();
            if !leaves.iter().all(|l| (l - leaves[0]).abs() < 1e-9 && (c * c - 3.0 * l * l).abs() < 1e-9) {
                bad.push(format!("star numbering {n:?}"));
            }
        }
        None => bad.push("star not affine".into()),
    }
    // Δ4: the path on five vertices.
    if find(&tree(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])).is_none() {
        bad.push("5-path not affine".into());
    }
    let reduces = |k: usize, u: &str, target: usize| match circ_reduce(k, eis(u)) {
        Ok(CircReduction::Definite { diagram, .. }) => diagram.same_class(&eisenstein_path(target)),
        _ => false,
    };
    for (k, u, target) in [(3, "-1", 3), (3, "-1-w", 3), (4, "-1-w", 4)] {
        if !reduces(k, u, target) {
            bad.push(format!("Circ({k},{u}) does not reduce to E{}E", 2 * target));
        }
    }
    if el > Duration::from_secs(60) {
        bad.push(format!("took {el:?}"));
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "classes {names:?}, affine diagrams by rank 3/4/5 = {}/{}/{}, {el:.2?}{}",
            by_rank(3),
            by_rank(4),
            by_rank(5),
            failures(&bad)
        ),
    )
}

/// Coefficients of `v` in the basis `rows` (all real), by Gaussian elimination.
fn coefficients(rows: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    let n = rows.len();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| rows[j][i]).chain([v[i]]).collect()).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        a.swap(c, p);
        for r in 0..n {
            if r != c {
                let f = a[r][c] / a[c][c];
                for j in c..=n {
                    a[r][j] -= f * a[c][j];
                }
            }
        }
    }
    (0..n).map(|i| a[i][n] / a[i][i]).collect()
}

fn criterion3() -> Outcome {
    let mut bad = Vec::new();
    let params = WeylParams { weight_exponent: 0.0, ..WeylParams::default() };
    let mut checked = 0;
    for g in ["a2", "a3", "d4", "e6", "e8", "b2", "b3"] {
        let s = setup_for(g, params);
        let rs = &s.group.rs;
        let k = rs.config.k;
        let mut rng = ChaCha20Rng::seed_from_u64(SEED);
        for _ in 0..20 {
            let w0 = s.random_start(&mut rng);
            let w = s.alpha(&w0).unwrap();
            let w2 = s.alpha(&w).unwrap();
            let drift = w.iter().zip(&w2).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / s.norm(&w);
            if drift > WEYL_TOL {
                bad.push(format!("{g}: α(α(w0)) ≠ α(w0) by {drift:e}"));
                break;
            }
            let ss = select_simple_system(&s, &w, k);
            let delta: Vec<f64> = ss.roots.iter().map(|&i| s.pairing(i, &w).norm()).collect();
            if !ss.independent || delta.iter().any(|d| (d - 1.0).abs() > WEYL_TOL) {
                bad.push(format!("{g}: δ_w on Δ(w) = {delta:?}"));
                break;
            }
            // Classical simple system: every root positive on w is a
            // non-negative integer combination of Δ(w).
            let signed = |i: usize| -> Vec<f64> {
                let sign = s.pairing(i, &w).re.signum();
                rs.projective[i].rep.vec.iter().map(|x| sign * x.embed().re).collect()
            };
            let basis: Vec<Vec<f64>> = ss.roots.iter().map(|&i| signed(i)).collect();
            let classical = (0..rs.projective.len()).all(|i| {
                coefficients(&basis, &signed(i)).iter().all(|c| *c > -1e-9 && (c - c.round()).abs() < 1e-9)
            });
            if !classical {
                bad.push(format!("{g}: Δ(w) is not a simple system"));
                break;
            }
            checked += 1;
        }
    }
    for n in [2, 3, 4] {
        let s = setup_for(&format!("b{n}"), params);
        let rho = rho_n(n);
        // A start in the chamber of ρ^(n) lands exactly on ρ^(n).
        let w0: Vec<C> = (0..n).map(|i| C::new(0.5 + i as f64 + 0.01 * (i * i) as f64, 0.0)).collect();
        let w = s.to_ambient(&s.alpha(&s.from_ambient(&w0)).unwrap());
        let err = w.iter().zip(&rho).map(|(a, b)| (a - C::new(*b, 0.0)).norm()).fold(0.0, f64::max);
        // A generic start lands on a signed permutation of it.
        let mut rng = ChaCha20Rng::seed_from_u64(SEED + n as u64);
        let w1 = s.to_ambient(&s.alpha(&s.random_start(&mut rng)).unwrap());
        let mut abs: Vec<f64> = w1.iter().map(|z| z.norm()).collect();
        abs.sort_by(f64::total_cmp);
        let err1 = abs.iter().zip(&rho).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if err > WEYL_TOL || err1 > WEYL_TOL {
            bad.push(format!("B{n}: |w − ρ| = {err:e}, generic {err1:e}"));
        }
    }
    Outcome::new(bad.is_empty(), format!("{checked} starts over 7 Weyl groups; B2-B4 fixed point = ρ^(n){}", failures(&bad)))
}

fn criterion4(runs: &mut Runs) -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut summary = Vec::new();
    for g in COMPLEX_GROUPS {
        let (_, r) = runs.get(g);
        let clusters = r.sym_values.len();
        let want_clusters = if matches!(g, "g29" | "g31" | "g32") { 2 } else { 1 };
        let classes = r.diagram_class_counts.iter().filter(|c| c.independent > 0).count();
        let gc = &r.generation_check;
        let ok_conv = r.converged * 100 >= 95 * r.trials;
        let ok_gen = gc.independent > 0 && gc.independent_generating == gc.independent;
        summary.push(format!("{g}:{clusters}/{classes}"));
        if !ok_conv {
            bad.push(format!("{g}: {}/{} converged", r.converged, r.trials));
        }
        if clusters != want_clusters {
            bad.push(format!("{g}: {clusters} sym clusters, expected {want_clusters}"));
        }
        if classes != 1 {
            bad.push(format!("{g}: {classes} diagram classes"));
        }
        if !ok_gen {
            bad.push(format!("{g}: {}/{} independent systems generate", gc.independent_generating, gc.independent));
        }
    }
    let el = t.elapsed();
    if el > Duration::from_secs(600) {
        bad.push(format!("took {el:?}"));
    }
    Outcome::new(
        bad.is_empty(),
        format!("{TRIALS} trials each, clusters/classes {}, {el:.1?}{}", summary.join(" "), failures(&bad)),
    )
}

fn criterion5() -> Outcome {
    let t = Instant::now();
    let s = setup_for("g33", WeylParams::default());
    let r = run_trials(&s, 2000, SEED).expect("trials");
    let independent = r.records.iter().filter(|x| x.simple.as_ref().is_some_and(|ss| ss.independent)).count();
    let frac = independent as f64 / r.trials as f64;
    Outcome::new(
        frac > 0.0 && frac < 0.5,
        format!("G33: {independent}/{} trials give independent Δ(w) ({:.2}%), {:.1?}", r.trials, 100.0 * frac, t.elapsed()),
    )
}

fn verify_reports(runs: &mut Runs) -> BTreeMap<&'static str, Option<(VerifyReport, Duration)>> {
    let mut out = BTreeMap::new();
    for g in ["g29", "g31", "g33", "g34"] {
        let report = runs.simple_perms(g).and_then(|(perms, _)| {
            let order = runs.get(g).0.group.order();
            let t = Instant::now();
            verify_group(group(g), &perms, &order, MAX_COSETS).map(|r| (r, t.elapsed()))
        });
        out.insert(g, report);
    }
    out
}

fn criterion6(reports: &BTreeMap<&'static str, Option<(VerifyReport, Duration)>>) -> Outcome {
    let mut bad = Vec::new();
    let mut counted = 0;
    for (g, r) in reports {
        let Some((r, _)) = r else {
            bad.push(format!("{g}: no labeling"));
            continue;
        };
        counted += r.relations.len();
        if !r.relations_hold {
            bad.push(format!("{g}: relations fail"));
        }
        match &r.mutation {
            Some(m) if m.ok && m.consequences.iter().all(|c| c.holds) => {}
            _ => bad.push(format!("{g}: mutation maps or consequences fail")),
        }
    }
    let consequence = |g: &str, rel: &str| {
        reports[g].as_ref().is_some_and(|(r, _)| {
            r.mutation.as_ref().is_some_and(|m| m.consequences.iter().any(|c| c.relation == rel && c.holds))
        })
    };
    if !consequence("g33", "P(9; a4, a2, a1, a5)") {
        bad.push("P(9; a4, a2, a1, a5) missing in G33".into());
    }
    if !consequence("g29", "P(6; a2, a3, a4)") {
        bad.push("P(6; a2, a3, a4) missing in G29".into());
    }
    Outcome::new(bad.is_empty(), format!("{counted} relations over G29/G31/G33/G34, mutation maps inverse{}", failures(&bad)))
}

fn criterion7(reports: &BTreeMap<&'static str, Option<(VerifyReport, Duration)>>) -> Outcome {
    let mut bad = Vec::new();
    let mut total = Duration::ZERO;
    let mut orders = Vec::new();
    for (g, want) in [("g29", "7680"), ("g33", "51840"), ("g34", "39191040")] {
        let Some((r, el)) = &reports[g] else {
            bad.push(format!("{g}: no report"));
            continue;
        };
        total += *el;
        let got = r.certification.as_ref().map(|c| c.order.clone());
        orders.push(format!("{g}={}", got.clone().unwrap_or_default()));
        if got.as_deref() != Some(want) || r.group_order != want || !r.order_certified {
            bad.push(format!("{g}: certified {got:?}, group order {}", r.group_order));
        }
    }
    let first_subgroup = reports["g34"]
        .as_ref()
        .and_then(|(r, _)| r.certification.as_ref())
        .and_then(|c| c.steps.first())
        .map(|s| s.subgroup.join(","));
    if first_subgroup.as_deref() != Some("a1,a2,a3,a4,a5") {
        bad.push(format!("G34 chain starts at {first_subgroup:?}"));
    }
    if total > Duration::from_secs(300) {
        bad.push(format!("took {total:?}"));
    }
    Outcome::new(bad.is_empty(), format!("{}, {total:.1?}{}", orders.join(" "), failures(&bad)))
}

fn criterion8(runs: &mut Runs) -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut found = Vec::new();
    for (g, h) in [("g29", 20), ("g33", 18), ("g34", 42)] {
        let degrees = runs.get(g).0.group.rs.config.degrees.clone().unwrap_or_default();
        let Some((_, mats)) = runs.simple_perms(g) else {
            bad.push(format!("{g}: no simple system"));
            continue;
        };
        match coxeter_element_check(&mats, &degrees, 1000) {
            Ok(r) if r.ok() && r.order == h => found.push(format!("{g}: h={}", r.order)),
            Ok(r) => bad.push(format!("{g}: order {} phases {:?}", r.order, r.phases)),
            Err(e) => bad.push(format!("{g}: {e}")),
        }
    }
    let el = t.elapsed();
    if el > Duration::from_secs(60) {
        bad.push(format!("took {el:?}"));
    }
    Outcome::new(bad.is_empty(), format!("{}, {el:.1?}{}", found.join(" "), failures(&bad)))
}

fn criterion9(runs: &mut Runs) -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut balls = Vec::new();
    for g in ["g4", "g25", "g26", "g32", "g33", "g34"] {
        let setup = AffineSetup::new(group(g)).expect("supported");
        let Some(ss) = runs.get(g).1.representative().cloned() else {
            bad.push(format!("{g}: no simple system"));
            continue;
        };
        let diag = match build_affine_diagram(&setup, &ss.roots) {
            Ok(d) => d,
            Err(e) => {
                bad.push(format!("{g}: {e}"));
                continue;
            }
        };
        if !diag.ok() || numbering_residual(&diag.diagram, &diag.numbering_ring) > 1e-9 {
            bad.push(format!("{g}: numbering not balanced"));
        }
        if g == "g34" && !diag.has_automorphism_of_order(7) {
            bad.push(format!("G34 automorphism orders {:?}", diag.automorphism_orders));
        }
        match verify_affine_generation(&setup, &diag) {
            Ok(r) if r.ok() => {}
            other => bad.push(format!("{g}: generation {other:?}")),
        }
        match verify_identities(&setup, &diag, AFFINE_RADIUS) {
            Ok(r) if r.ok() => balls.push(format!("{g}:{}", r.ball_size)),
            other => bad.push(format!("{g}: identities {other:?}")),
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("ball sizes at radius {AFFINE_RADIUS}: {}, {:.1?}{}", balls.join(" "), t.elapsed(), failures(&bad)),
    )
}

/// Projective indices of the generators of `G(de,e,n)` drawn as its usual diagram:
/// `e_1` (if `e < de`), `e_2 − ζ e_1` (if `e > 1`), then `e_{i+1} − e_i`.
fn known_generators(s: &WeylSetup, m: u32, e: u32, n: usize) -> Option<BTreeSet<usize>> {
    let rs = &s.group.rs;
    let ring = rs.ring();
    let unit = |i: usize| -> Vector { (0..n).map(|j| RingElement::from_int(ring, (i == j) as i64)).collect() };
    let diff = |i: usize, j: usize, c: RingElement| -> Vector {
        unit(i).into_iter().zip(unit(j)).map(|(a, b)| a - c * b).collect()
    };
    let one = RingElement::one(ring);
    let mut vs = Vec::new();
    if e < m {
        vs.push(unit(0));
    }
    if e > 1 {
        vs.push(diff(1, 0, reflekt::rings::root_of_unity(ring, m)?));
    }
    for i in 1..n {
        vs.push(diff(i, i - 1, one));
    }
    vs.iter()
        .map(|v| {
            let b = rs.frame.to_basis(v).ok()?;
            (0..rs.projective.len()).find(|&p| {
                let r = &rs.projective[p].rep.vec;
                Matrix::from_rows(ring, &[r.clone(), b.clone()]).rank() == 1
            })
        })
        .collect()
}

fn criterion10() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut lines = Vec::new();
    let imprimitive = ["g(3,1,2)", "g(3,1,3)", "g(3,3,3)", "g(4,1,2)", "g(4,2,2)", "g(4,1,3)", "g(4,2,3)", "g(4,4,3)"];
    for g in ["g6", "g9"].into_iter().chain(imprimitive) {
        let s = setup_for(g, WeylParams::default());
        let r = run_trials(&s, 50, SEED).expect("trials");
        let gc = &r.generation_check;
        lines.push(format!("{g}:{}/{}", gc.generating, gc.tested));
        if gc.generating * 2 >= gc.tested {
            bad.push(format!("{g}: Δ(w) generates in {}/{} trials", gc.generating, gc.tested));
        }
        if let GroupId::Imprimitive { m, e, n } = group(g) {
            let rho = rho_simple_system(&s);
            let got: BTreeSet<usize> = rho.roots.iter().copied().collect();
            let known = known_generators(&s, m, e, n as usize);
            if !rho.independent || !generates(&s, &rho.roots).unwrap_or(false) || known.as_ref() != Some(&got) {
                bad.push(format!("{g}: Δ(ρ) = {:?}, known {known:?}", rho.texts));
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("Δ(w) generating/tested {}, {:.1?}{}", lines.join(" "), t.elapsed(), failures(&bad)),
    )
}

fn main() {
    let mut runs = Runs::default();
    let mut results: Vec<(u32, Outcome)> = Vec::new();
    let mut report = |n: u32, o: Outcome| {
        println!("criterion {n:2}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((n, o));
    };
    report(1, criterion1());
    report(2, criterion2());
    report(3, criterion3());
    report(4, criterion4(&mut runs));
    report(5, criterion5());
    let reports = verify_reports(&mut runs);
    report(6, criterion6(&reports));
    report(7, criterion7(&reports));
    report(8, criterion8(&mut runs));
    report(9, criterion9(&mut runs));
    report(10, criterion10());

    let unexpected: Vec<String> = results
        .iter()
        .filter(|(n, o)| o.pass == EXPECTED_FAIL.contains(n))
        .map(|(n, o)| format!("criterion {n} {}", if o.pass { "passed but is listed as failing" } else { "failed" }))
        .collect();
    let passed = results.iter().filter(|(_, o)| o.pass).count();
    println!("{passed}/{} criteria pass; expected failures {EXPECTED_FAIL:?}", results.len());
    if !unexpected.is_empty() {
        eprintln!("{}", unexpected.join("\n"));
        std::process::exit(1);
    }
}
