//! Checks of the cyclic-relation lemmas in finite groups and finite quotients.
//!
//! These are statements about infinite groups. Everything here tests
//! necessary conditions only: identities on concrete elements of finite
//! (or explicitly realized) groups and coset enumeration in finite quotients.

use std::collections::{HashSet, VecDeque};

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::coset::{todd_coxeter, CosetStatus};
use super::{Presentation, PresentationError, Relation};
use crate::group::Perm;

/// Which equivalence of the braid/commute lemma to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pattern {
    /// `x ~ y`: `P(4;x,y,z)` ⇔ `c_x(y) ⊥ z` ⇔ `c_y(z) ⊥ x` (and ⇔ `c_z(x) ⊥ y` if also `x ~ z`).
    A,
    /// `x ~ y`, `x ~ z`: `P(6;x,y,z)` ⇔ `c_x(y) ~ z` ⇔ `c_y(z) ~ x` ⇔ `c_z(x) ~ y`.
    B,
    /// `x,y,z,w` satisfy the `Ã_3` Coxeter relations: `P(9;x,y,z,w)` ⇔ `c_{xy}(z) ~ w`.
    C,
}

impl std::str::FromStr for Pattern {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Pattern::A),
            "b" => Ok(Pattern::B),
            "c" => Ok(Pattern::C),
            _ => Err(format!("unknown pattern {s}")),
        }
    }
}

/// Minimal group interface for the identity checks.
pub trait GroupOps: Clone + PartialEq {
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl GroupOps for Perm {
    /// Product `self · o`, acting as `o` first.
    fn mul(&self, o: &Self) -> Self {
        o.then(self)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
}

pub fn commutes<G: GroupOps>(x: &G, y: &G) -> bool {
    x.mul(y) == y.mul(x)
}

pub fn braids<G: GroupOps>(x: &G, y: &G) -> bool {
    x.mul(y).mul(x) == y.mul(x).mul(y)
}

/// `c_x(y) = x y x⁻¹`.
pub fn conj<G: GroupOps>(x: &G, y: &G) -> G {
    x.mul(y).mul(&x.inv())
}

/// Whether `P(m; gens)` holds.
pub fn p_holds<G: GroupOps>(m: usize, gens: &[G]) -> bool {
    let k = gens.len();
    let prod = |start: usize| {
        let mut acc = gens[start % k].clone();
        for i in start + 1..start + m {
            acc = acc.mul(&gens[i % k]);
        }
        acc
    };
    prod(0) == prod(1)
}

/// Outcome of one sample: `None` when the hypothesis fails, otherwise
/// whether the statements agree and the truth value of the first one.
fn check_sample<G: GroupOps>(pattern: Pattern, s: &[G]) -> Option<(bool, bool)> {
    match pattern {
        Pattern::A => {
            let (x, y, z) = (&s[0], &s[1], &s[2]);
            if !braids(x, y) {
                return None;
            }
            let mut v = vec![
                p_holds(4, &[x.clone(), y.clone(), z.clone()]),
                commutes(&conj(x, y), z),
                commutes(&conj(y, z), x),
            ];
            if braids(x, z) {
                v.push(commutes(&conj(z, x), y));
            }
            Some((v.iter().all(|&b| b == v[0]), v[0]))
        }
        Pattern::B => {
            let (x, y, z) = (&s[0], &s[1], &s[2]);
            if !braids(x, y) || !braids(x, z) {
                return None;
            }
            let v = [
                p_holds(6, &[x.clone(), y.clone(), z.clone()]),
                braids(&conj(x, y), z),
                braids(&conj(y, z), x),
                braids(&conj(z, x), y),
            ];
            Some((v.iter().all(|&b| b == v[0]), v[0]))
        }
        Pattern::C => {
            let (x, y, z, w) = (&s[0], &s[1], &s[2], &s[3]);
            let cox = braids(x, y) && braids(y, z) && braids(z, w) && braids(w, x) && commutes(x, z) && commutes(y, w);
            if !cox {
                return None;
            }
            let lhs = p_holds(9, &s[..4]);
            let rhs = braids(&conj(&x.mul(y), z), w);
            Some((lhs == rhs, lhs))
        }
    }
}

/// Tally of a lemma check over a sample of tuples.
#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaReport {
    pub pattern: Option<Pattern>,
    /// Tuples examined.
    pub examined: usize,
    /// Tuples satisfying the hypothesis.
    pub hypothesis: usize,
    /// Among those, how many satisfy the first statement.
    pub relation_true: usize,
    /// Tuples where the statements disagree.
    pub violations: usize,
}

impl LemmaReport {
    /// True when no violation was seen and both truth values occurred.
    pub fn holds(&self) -> bool {
        self.violations == 0 && self.hypothesis > 0
    }

    pub fn both_sides_seen(&self) -> bool {
        self.relation_true > 0 && self.relation_true < self.hypothesis
    }

    fn record(&mut self, r: Option<(bool, bool)>) {
        self.examined += 1;
        if let Some((agree, first)) = r {
            self.hypothesis += 1;
            self.relation_true += first as usize;
            self.violations += !agree as usize;
        }
    }
}

fn arity(p: Pattern) -> usize {
    if p == Pattern::C {
        4
    } else {
        3
    }
}

/// Checks the pattern on every tuple drawn from `elements`.
pub fn lemma44_exhaustive<G: GroupOps>(elements: &[G], pattern: Pattern) -> LemmaReport {
    let mut rep = LemmaReport { pattern: Some(pattern), ..Default::default() };
    let k = arity(pattern);
    let n = elements.len();
    let mut idx = vec![0usize; k];
    loop {
        let tuple: Vec<G> = idx.iter().map(|&i| elements[i].clone()).collect();
        rep.record(check_sample(pattern, &tuple));
        let mut j = 0;
        loop {
            if j == k {
                return rep;
            }
            idx[j] += 1;
            if idx[j] < n {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Checks the pattern on `samples` hypothesis-satisfying tuples drawn at
/// random from `elements` (at most `100 · samples` draws).
pub fn lemma44_sampled<G: GroupOps>(elements: &[G], pattern: Pattern, samples: usize, seed: u64) -> LemmaReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = LemmaReport { pattern: Some(pattern), ..Default::default() };
    let k = arity(pattern);
    while rep.hypothesis < samples && rep.examined < samples * 100 {
        let tuple: Vec<G> = (0..k).map(|_| elements.choose(&mut rng).unwrap().clone()).collect();
        rep.record(check_sample(pattern, &tuple));
    }
    rep
}

/// All elements of the permutation group generated by `gens` (breadth first).
pub fn enumerate_elements(gens: &[Perm], limit: usize) -> Option<Vec<Perm>> {
    let id = Perm::identity(gens.first()?.degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.then(s);
            if seen.insert(h.clone()) {
                if out.len() == limit {
                    return None;
                }
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Some(out)
}

/// An affine permutation of `ℤ^n`: `v ↦ σ(v) + t` with `σ(v)_{σ(i)} = v_i`.
/// The affine Weyl group of `Ã_{n-1}` is generated by the reflections
/// [`AffinePerm::reflection`] and acts faithfully this way.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePerm {
    pub perm: Vec<usize>,
    pub shift: Vec<i64>,
}

impl AffinePerm {
    pub fn identity(n: usize) -> Self {
        AffinePerm { perm: (0..n).collect(), shift: vec![0; n] }
    }

    /// Reflection in the hyperplane `v_i − v_j = k`.
    pub fn reflection(n: usize, i: usize, j: usize, k: i64) -> Self {
        let mut r = Self::identity(n);
        r.perm.swap(i, j);
        r.shift[i] = k;
        r.shift[j] = -k;
        r
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = self.shift.clone();
        for (i, &x) in v.iter().enumerate() {
            out[self.perm[i]] += x;
        }
        out
    }

    /// The Coxeter generators `s_0, …, s_{n-1}` of `Ã_{n-1}` in cyclic order.
    pub fn affine_generators(n: usize) -> Vec<AffinePerm> {
        let mut g = vec![Self::reflection(n, 0, n - 1, 1)];
        g.extend((0..n - 1).map(|i| Self::reflection(n, i, i + 1, 0)));
        g
    }
}

impl GroupOps for AffinePerm {
    fn mul(&self, o: &Self) -> Self {
        let n = self.perm.len();
        let shift = self.apply(&o.shift);
        let perm = (0..n).map(|i| self.perm[o.perm[i]]).collect();
        AffinePerm { perm, shift }
    }
    fn inv(&self) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
        }
        let mut shift = vec![0; n];
        for i in 0..n {
            shift[perm[i]] = -self.shift[i];
        }
        AffinePerm { perm, shift }
    }
}

/// Pattern (c) in the affine Weyl group of `Ã_3`: every quadruple of
/// affine reflections `v_i − v_j = k` with `|k| ≤ max_shift` that satisfies
/// the `Ã_3` Coxeter relations.
pub fn lemma44_affine(max_shift: i64) -> LemmaReport {
    let mut refl = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for k in -max_shift..=max_shift {
                refl.push(AffinePerm::reflection(4, i, j, k));
            }
        }
    }
    lemma44_exhaustive(&refl, Pattern::C)
}

/// Elements of the Coxeter group generated by `gens` of word length at most `len`.
pub fn word_ball<G: GroupOps + std::hash::Hash + Eq>(gens: &[G], id: G, len: usize) -> Vec<G> {
    let mut seen = HashSet::from([id.clone()]);
    let mut layer = vec![id.clone()];
    let mut out = vec![id];
    for _ in 0..len {
        let mut next = Vec::new();
        for g in &layer {
            for s in gens {
                let h = g.mul(s);
                if seen.insert(h.clone()) {
                    next.push(h.clone());
                    out.push(h);
                }
            }
        }
        layer = next;
    }
    out
}

/// `Cox(Ã_n, torsion)` on generators `x_0, …, x_n` (a polygon of braids).
pub fn affine_a_presentation(n: usize, torsion: usize) -> Presentation {
    let k = n + 1;
    let mut m = vec![vec![Some(2); k]; k];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = None;
        row[(i + 1) % k] = Some(3);
        row[(i + k - 1) % k] = Some(3);
    }
    if k == 2 {
        m[0][1] = None;
        m[1][0] = None;
    }
    let names = (0..k).map(|i| format!("x{i}")).collect();
    Presentation::coxeter(names, &m).with_torsion(vec![torsion; k])
}

/// Result of testing whether `P(m; x_0, …, x_n)` is cyclic in a quotient.
#[derive(Clone, Debug, Serialize)]
pub struct CyclicityReport {
    pub n: usize,
    pub m: usize,
    /// Order of `Cox(Ã_n, 2) / ⟨P(m; x_0..x_n)⟩`, when the enumeration completes.
    pub quotient_order: Option<usize>,
    /// Whether every rotation `P(m; x_j, …, x_{j−1})` holds in that quotient.
    pub cyclic: Option<bool>,
}

/// Imposes `P(m; x_0, …, x_n)` on `Cox(Ã_n, 2)`, enumerates the quotient and
/// tests the rotated relations in it. Only a finite quotient is examined, so
/// a `true` answer is a necessary condition, while `false` disproves cyclicity.
pub fn cyclicity_test(n: usize, m: usize, max_cosets: usize) -> Result<CyclicityReport, PresentationError> {
    if n < 2 || m < 2 {
        return Err(PresentationError::Certification(format!("cyclicity needs n ≥ 2 and m ≥ 2, got n={n}, m={m}")));
    }
    let k = n + 1;
    let gens: Vec<usize> = (0..k).collect();
    let pres = affine_a_presentation(n, 2).with_relations(vec![Relation::p(m, &gens)]);
    let table = todd_coxeter(&pres, &[], max_cosets);
    if table.status == CosetStatus::Capped {
        return Ok(CyclicityReport { n, m, quotient_order: None, cyclic: None });
    }
    let cyclic = (1..k).all(|j| {
        let rotated: Vec<usize> = (0..k).map(|i| (i + j) % k).collect();
        table.acts_trivially(&Relation::p(m, &rotated).relator())
    });
    Ok(CyclicityReport { n, m, quotient_order: table.index(), cyclic: Some(cyclic) })
}

/// Whether `P(m; gens)` holds for every rotation of `gens` in a concrete group.
pub fn cyclic_in_group(m: usize, gens: &[Perm]) -> bool {
    let k = gens.len();
    (0..k).all(|j| {
        let rot: Vec<Perm> = (0..k).map(|i| gens[(i + j) % k].clone()).collect();
        p_holds(m, &rot)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_perm_group_laws() {
        let g = AffinePerm::affine_generators(4);
        let id = AffinePerm::identity(4);
        for s in &g {
            assert_eq!(s.mul(s), id);
            assert_eq!(s.inv(), *s);
        }
        for i in 0..4 {
            assert!(braids(&g[i], &g[(i + 1) % 4]));
            assert!(commutes(&g[i], &g[(i + 2) % 4]));
        }
        let x = g[0].mul(&g[1]).mul(&g[2]);
        assert_eq!(x.mul(&x.inv()), id);
        let v = [3, -1, 4, 1];
        assert_eq!(x.apply(&g[2].apply(&v)), x.mul(&g[2]).apply(&v));
    }

    #[test]
    fn affine_a3_ball_is_infinite_like() {
        let g = AffinePerm::affine_generators(4);
        let ball = word_ball(&g, AffinePerm::identity(4), 6);
        let smaller = word_ball(&g, AffinePerm::identity(4), 5);
        assert!(ball.len() > smaller.len());
        assert!(!p_holds(9, &g));
    }

    #[test]
    fn pattern_a_in_symmetric_group() {
        let s: Vec<Perm> = (0..3)
            .map(|i| {
                let mut v: Vec<u32> = (0..4).collect();
                v.swap(i, i + 1);
                Perm::from_images(v)
            })
            .collect();
        let all = enumerate_elements(&s, 100).unwrap();
        assert_eq!(all.len(), 24);
        let rep = lemma44_exhaustive(&all, Pattern::A);
        assert!(rep.holds());
        assert!(rep.both_sides_seen());
    }

    #[test]
    fn cyclic_weyl_quotient() {
        let r = cyclicity_test(3, 3, 100_000).unwrap();
        assert_eq!(r.quotient_order, Some(24));
        assert_eq!(r.cyclic, Some(true));
    }
}
