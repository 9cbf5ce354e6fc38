//! Todd–Coxeter coset enumeration (HLT with lookahead) and recursive order
//! certification along a chain of generator subsets.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::{Presentation, PresentationError, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CosetStatus {
    Complete,
    Capped,
}

/// Action of the generators on the cosets; row `c`, column `2g` is `c·g`,
/// column `2g+1` is `c·g⁻¹`. Coset 0 is the subgroup.
#[derive(Clone, Debug, Serialize)]
pub struct CosetTable {
    pub num_gens: usize,
    pub rows: Vec<Vec<u32>>,
    pub live_count: usize,
    pub status: CosetStatus,
    /// Largest number of cosets alive at any time.
    pub max_live: usize,
}

impl CosetTable {
    pub fn index(&self) -> Option<usize> {
        (self.status == CosetStatus::Complete).then_some(self.live_count)
    }

    fn trace(&self, c: usize, w: &Word) -> usize {
        let mut c = c;
        for &(g, e) in w.letters() {
            let col = 2 * g + usize::from(e < 0);
            c = self.rows[c][col] as usize;
        }
        c
    }

    /// Full audit: every relator closes at every coset, the subgroup
    /// generators fix coset 0 and the columns are mutually inverse.
    pub fn audit(&self, pres: &Presentation, subgroup: &[Word]) -> bool {
        if self.status != CosetStatus::Complete {
            return false;
        }
        let n = self.rows.len();
        for (c, row) in self.rows.iter().enumerate() {
            for (col, &d) in row.iter().enumerate() {
                if d as usize >= n || self.rows[d as usize][col ^ 1] as usize != c {
                    return false;
                }
            }
        }
        let rels = pres.relators();
        (0..n).all(|c| rels.iter().all(|r| self.trace(c, r) == c)) && subgroup.iter().all(|w| self.trace(0, w) == 0)
    }

    /// True iff `w` acts trivially on every coset (for the trivial subgroup
    /// this means `w = 1` in the group).
    pub fn acts_trivially(&self, w: &Word) -> bool {
        (0..self.rows.len()).all(|c| self.trace(c, w) == c)
    }
}

const NONE: u32 = u32::MAX;

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    /// Union-find parent; `p[c] == c` for live cosets.
    p: Vec<u32>,
    queue: Vec<u32>,
    rels: Vec<Vec<u32>>,
    live: usize,
    max_live: usize,
    cap: usize,
}

struct Full;

impl Enumerator {
    fn get(&self, c: u32, x: u32) -> u32 {
        self.table[c as usize * self.cols + x as usize]
    }

    fn set(&mut self, c: u32, x: u32, d: u32) {
        self.table[c as usize * self.cols + x as usize] = d;
    }

    fn n(&self) -> usize {
        self.p.len()
    }

    fn new_coset(&mut self) -> Result<u32, Full> {
        if self.live >= self.cap {
            return Err(Full);
        }
        let c = self.p.len() as u32;
        self.p.push(c);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.max_live = self.max_live.max(self.live);
        Ok(c)
    }

    fn define(&mut self, c: u32, x: u32) -> Result<(), Full> {
        let d = self.new_coset()?;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, k: u32) -> u32 {
        let mut l = k;
        while self.p[l as usize] != l {
            l = self.p[l as usize];
        }
        let mut m = k;
        while self.p[m as usize] != l {
            let next = self.p[m as usize];
            self.p[m as usize] = l;
            m = next;
        }
        l
    }

    fn merge(&mut self, k: u32, l: u32) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.p[hi as usize] = lo;
            self.queue.push(hi);
            self.live -= 1;
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols as u32 {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, x ^ 1, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx);
                } else {
                    let nx = self.get(nu, x ^ 1);
                    if nx != NONE {
                        self.merge(mu, nx);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Scans `w` at `a`, defining new cosets when `fill` is set; closes a
    /// single gap by deduction and processes coincidences.
    fn scan(&mut self, a: u32, w: &[u32], fill: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = a;
        let mut i = 0usize;
        let mut b = a;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize] ^ 1) != NONE {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            } else if fill {
                self.define(f, w[i])?;
            } else {
                return Ok(());
            }
        }
    }

    fn is_live(&self, c: u32) -> bool {
        self.p[c as usize] == c
    }

    /// Scans every relator at every live coset without defining.
    fn lookahead(&mut self) {
        let mut c = 0u32;
        while (c as usize) < self.n() {
            if self.is_live(c) {
                for r in 0..self.rels.len() {
                    if !self.is_live(c) {
                        break;
                    }
                    let w = self.rels[r].clone();
                    let _ = self.scan(c, &w, false);
                }
            }
            c += 1;
        }
    }

    /// Renumbers live cosets consecutively; returns the new index of the
    /// first live coset at or after `at`.
    fn compact(&mut self, at: u32) -> u32 {
        let n = self.n();
        let mut map = vec![NONE; n];
        let mut next = 0u32;
        for c in 0..n {
            if self.p[c] == c as u32 {
                map[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..n {
            if map[c] == NONE {
                continue;
            }
            for x in 0..self.cols {
                let d = self.table[c * self.cols + x];
                table.push(if d == NONE { NONE } else { map[d as usize] });
            }
        }
        self.table = table;
        self.p = (0..next).collect();
        (at as usize..n).map(|c| map[c]).find(|&m| m != NONE).unwrap_or(next)
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup`.
pub fn todd_coxeter(pres: &Presentation, subgroup: &[Word], max_cosets: usize) -> CosetTable {
    let cols = 2 * pres.num_gens();
    let to_cols = |w: &Word| -> Vec<u32> {
        w.letters()
            .iter()
            .map(|&(g, e)| (2 * g + usize::from(e < 0)) as u32)
            .collect()
    };
    let rels: Vec<Vec<u32>> = pres.relators().iter().map(to_cols).collect();
    let mut en = Enumerator {
        cols,
        table: Vec::new(),
        p: Vec::new(),
        queue: Vec::new(),
        rels,
        live: 0,
        max_live: 0,
        cap: max_cosets.max(1),
    };
    let capped = |en: &Enumerator| CosetTable {
        num_gens: pres.num_gens(),
        rows: Vec::new(),
        live_count: en.live,
        status: CosetStatus::Capped,
        max_live: en.max_live,
    };
    let _ = en.new_coset();
    for w in subgroup {
        if en.scan(0, &to_cols(w), true).is_err() {
            return capped(&en);
        }
    }
    let mut a = 0u32;
    'main: while (a as usize) < en.n() {
        if en.is_live(a) {
            let mut r = 0;
            while r < en.rels.len() {
                if !en.is_live(a) {
                    break;
                }
                let w = en.rels[r].clone();
                if en.scan(a, &w, true).is_err() {
                    en.lookahead();
                    a = en.compact(a);
                    if en.live >= en.cap {
                        return capped(&en);
                    }
                    continue 'main;
                }
                r += 1;
            }
            let mut x = 0u32;
            while en.is_live(a) && (x as usize) < cols {
                if en.get(a, x) == NONE && en.define(a, x).is_err() {
                    en.lookahead();
                    a = en.compact(a);
                    if en.live >= en.cap {
                        return capped(&en);
                    }
                    continue 'main;
                }
                x += 1;
            }
        }
        a += 1;
    }
    en.compact(0);
    let rows: Vec<Vec<u32>> = en.table.chunks(cols).map(|c| c.to_vec()).collect();
    let complete = rows.iter().all(|r| r.iter().all(|&d| d != NONE));
    CosetTable {
        num_gens: pres.num_gens(),
        live_count: rows.len(),
        rows,
        status: if complete { CosetStatus::Complete } else { CosetStatus::Capped },
        max_live: en.max_live,
    }
}

/// One step of a certification chain.
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub generators: Vec<String>,
    pub subgroup: Vec<String>,
    pub index: usize,
    pub max_live: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certification {
    pub steps: Vec<ChainStep>,
    /// Product of the indices; an upper bound for the order of the group
    /// presented (each subgroup is a quotient of its own presentation).
    pub order: String,
}

impl Certification {
    pub fn order(&self) -> BigUint {
        self.order.parse().expect("decimal order")
    }
}

/// Order of the group presented by `pres`, computed as the product of the
/// indices `[⟨S_i⟩ : ⟨S_{i+1}⟩]` down `chain`, each enumerated in the
/// presentation restricted to `S_i`. The chain starts with all generators
/// implicitly and should end with the empty set; a non-empty last set is
/// enumerated directly over the trivial subgroup.
pub fn certify_order(
    pres: &Presentation,
    chain: &[Vec<usize>],
    max_cosets: usize,
) -> Result<Certification, PresentationError> {
    let mut sets: Vec<Vec<usize>> = vec![(0..pres.num_gens()).collect()];
    for s in chain {
        if s.iter().any(|&g| g >= pres.num_gens()) {
            return Err(PresentationError::Generator(*s.iter().max().unwrap()));
        }
        if !s.iter().all(|g| sets.last().unwrap().contains(g)) {
            return Err(PresentationError::Certification("chain is not decreasing".into()));
        }
        sets.push(s.clone());
    }
    if !sets.last().unwrap().is_empty() {
        sets.push(Vec::new());
    }
    let mut order = BigUint::one();
    let mut steps = Vec::new();
    for pair in sets.windows(2) {
        let (big, small) = (&pair[0], &pair[1]);
        let sub = pres.restrict(big);
        let local: Vec<Word> = small
            .iter()
            .map(|g| Word::gen(big.iter().position(|h| h == g).unwrap()))
            .collect();
        let table = todd_coxeter(&sub, &local, max_cosets);
        let index = table.index().ok_or(PresentationError::Capped(max_cosets))?;
        order *= BigUint::from(index);
        steps.push(ChainStep {
            generators: sub.names.clone(),
            subgroup: small.iter().map(|&g| pres.names[g].clone()).collect(),
            index,
            max_live: table.max_live,
        });
    }
    Ok(Certification {
        steps,
        order: order.to_string(),
    })
}

/// Searches for a chain of generator subsets along which every index
/// enumeration completes within `max_cosets`, then certifies along it.
/// Later generators are dropped first; a subset whose subsets all fail is
/// enumerated directly over the trivial subgroup.
pub fn certify_order_auto(pres: &Presentation, max_cosets: usize) -> Result<Certification, PresentationError> {
    let all: Vec<usize> = (0..pres.num_gens()).collect();
    let mut failed = HashSet::new();
    let mut chain = Vec::new();
    if !descend(pres, &all, max_cosets, &mut failed, &mut chain) {
        return Err(PresentationError::Capped(max_cosets));
    }
    chain.reverse();
    certify_order(pres, &chain, max_cosets)
}

fn descend(
    pres: &Presentation,
    set: &[usize],
    max_cosets: usize,
    failed: &mut HashSet<Vec<usize>>,
    chain: &mut Vec<Vec<usize>>,
) -> bool {
    if set.is_empty() {
        return true;
    }
    if failed.contains(set) {
        return false;
    }
    let sub = pres.restrict(set);
    for drop in (0..set.len()).rev() {
        let smaller: Vec<usize> = set.iter().copied().filter(|&g| g != set[drop]).collect();
        let local: Vec<Word> = (0..set.len()).filter(|&i| i != drop).map(Word::gen).collect();
        if todd_coxeter(&sub, &local, max_cosets).index().is_none() {
            continue;
        }
        if descend(pres, &smaller, max_cosets, failed, chain) {
            chain.push(smaller);
            return true;
        }
    }
    if todd_coxeter(&sub, &[], max_cosets).index().is_some() {
        chain.push(Vec::new());
        return true;
    }
    failed.insert(set.to_vec());
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::Relation;

    fn coxeter(m: &[Vec<Option<usize>>]) -> Presentation {
        let names = (0..m.len()).map(|i| format!("s{i}")).collect();
        Presentation::coxeter(names, m).with_torsion(vec![2; m.len()])
    }

    #[test]
    fn s3_has_six_cosets() {
        let p = coxeter(&[vec![None, Some(3)], vec![Some(3), None]]);
        let t = todd_coxeter(&p, &[], 1000);
        assert_eq!(t.index(), Some(6));
        assert!(t.audit(&p, &[]));
    }

    #[test]
    fn a4_weyl_group() {
        // S5 from the A4 Coxeter presentation
        let mut m = vec![vec![Some(2); 4]; 4];
        for i in 0..3 {
            m[i][i + 1] = Some(3);
            m[i + 1][i] = Some(3);
        }
        let p = coxeter(&m);
        assert_eq!(todd_coxeter(&p, &[], 10_000).index(), Some(120));
        let sub = vec![Word::gen(0), Word::gen(1), Word::gen(2)];
        let t = todd_coxeter(&p, &sub, 10_000);
        assert_eq!(t.index(), Some(5));
        assert!(t.audit(&p, &sub));
        let c = certify_order(&p, &[vec![0, 1, 2], vec![0, 1], vec![0]], 10_000).unwrap();
        assert_eq!(c.order(), BigUint::from(120u32));
    }

    #[test]
    fn e6_order() {
        let mut m = vec![vec![Some(2); 6]; 6];
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)] {
            m[a][b] = Some(3);
            m[b][a] = Some(3);
        }
        let p = coxeter(&m);
        let c = certify_order(&p, &[vec![0, 1, 2, 3, 4], vec![0, 1, 2, 3], vec![0, 1, 2], vec![0, 1], vec![0]], 100_000)
            .unwrap();
        assert_eq!(c.order(), BigUint::from(51840u32));
    }

    #[test]
    fn cap_is_reported() {
        // infinite dihedral group
        let p = Presentation::new(vec!["a".into(), "b".into()], vec![], Some(vec![2, 2]));
        let t = todd_coxeter(&p, &[], 500);
        assert_eq!(t.status, CosetStatus::Capped);
        assert!(certify_order(&p, &[], 500).is_err());
    }

    #[test]
    fn trivial_relator_detection() {
        let p = coxeter(&[vec![None, Some(3)], vec![Some(3), None]]);
        let t = todd_coxeter(&p, &[], 100);
        assert!(t.acts_trivially(&Relation::p(3, &[0, 1]).relator()));
        assert!(!t.acts_trivially(&Relation::p(2, &[0, 1]).relator()));
    }
}
