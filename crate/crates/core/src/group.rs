//! Matrix reflection groups acting on their root sets: permutation
//! representation, stabilizer chains, element orders and eigenvalues.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::lattices::RootSystem;
use crate::linalg::Matrix;
use crate::rings::{unit_order, units, RingElement};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("matrix does not preserve the root set")]
    NotPreservingRoots,
    #[error("matrix does not preserve the form")]
    NotUnitary,
    #[error("element order exceeds {0}")]
    OrderCap(u64),
    #[error("eigenvalue snapping residual {0:e} too large")]
    Snapping(f64),
}

/// A permutation of `0..n`; `p[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm(Vec<u32>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Self {
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self` then `o`.
    pub fn then(&self, o: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| o.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut r = Perm::identity(self.degree());
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                r = r.then(&b);
            }
            b = b.then(&b);
            e >>= 1;
        }
        r
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut l = 1u64;
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0u64;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j] as usize;
                len += 1;
            }
            l = l.lcm(&len);
        }
        l
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().position(|(i, &j)| i as u32 != j)
    }
}

/// An exact unitary matrix in lattice-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub mat: Matrix,
}

impl GroupElement {
    pub fn new(mat: Matrix) -> Self {
        GroupElement { mat }
    }

    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        GroupElement::new(self.mat.mul(&o.mat))
    }

    pub fn preserves_form(&self, gram: &Matrix) -> bool {
        self.mat.conj_transpose().mul(gram).mul(&self.mat) == *gram
    }
}

/// Permutation of the root indices induced by a matrix.
pub fn perm_of(rs: &RootSystem, mat: &Matrix) -> Result<Perm, GroupError> {
    let mut images = Vec::with_capacity(rs.roots.len());
    for r in &rs.roots {
        let img = mat.apply(&r.vec);
        let j = rs.root_index(&img).ok_or(GroupError::NotPreservingRoots)?;
        images.push(j as u32);
    }
    Ok(Perm(images))
}

struct Level {
    base_point: usize,
    gens: Vec<Perm>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(base_point: usize, n: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[base_point] = Some(Perm::identity(n));
        Level {
            base_point,
            gens: Vec::new(),
            transversal,
            orbit: vec![base_point],
            checked: HashSet::new(),
        }
    }

    fn extend_orbit(&mut self) {
        let mut i = 0;
        // revisit every orbit point with all generators; new points are appended
        while i < self.orbit.len() {
            let b = self.orbit[i];
            for g in &self.gens {
                let c = g.image(b);
                if self.transversal[c].is_none() {
                    let u = self.transversal[b].as_ref().unwrap().then(g);
                    self.transversal[c] = Some(u);
                    self.orbit.push(c);
                }
            }
            i += 1;
        }
    }
}

/// Deterministic Schreier–Sims stabilizer chain.
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn trivial(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    pub fn new(degree: usize, gens: &[Perm]) -> Self {
        let mut sc = StabChain::trivial(degree);
        for g in gens {
            sc.add_generator(g);
        }
        sc
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |a, l| a * BigUint::from(l.orbit.len()))
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Sifts `g` from level `start`: returns the residue and the level where
    /// sifting stopped.
    fn strip(&self, g: &Perm, start: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let b = h.image(level.base_point);
            match &level.transversal[b] {
                None => return (h, l),
                Some(u) => h = h.then(&u.inverse()),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (h, l) = self.strip(g, 0);
        l == self.levels.len() && h.is_identity()
    }

    /// Adds `g` to the group; returns false if it was already a member.
    pub fn add_generator(&mut self, g: &Perm) -> bool {
        let (h, j) = self.strip(g, 0);
        if j == self.levels.len() && h.is_identity() {
            return false;
        }
        self.insert_residue(h, 0, j);
        self.complete(j);
        true
    }

    fn insert_residue(&mut self, h: Perm, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = h.first_moved().expect("residue is not the identity");
            self.levels.push(Level::new(b, self.degree));
        }
        for l in from..=to {
            self.levels[l].gens.push(h.clone());
            self.levels[l].extend_orbit();
        }
    }

    /// Processes Schreier generators until every level is complete.
    fn complete(&mut self, start: usize) {
        let mut i = start.min(self.levels.len().saturating_sub(1)) as isize;
        'outer: while i >= 0 {
            let li = i as usize;
            let orbit = self.levels[li].orbit.clone();
            let ngens = self.levels[li].gens.len();
            for &b in &orbit {
                for x in 0..ngens {
                    if self.levels[li].checked.contains(&(b, x)) {
                        continue;
                    }
                    self.levels[li].checked.insert((b, x));
                    let level = &self.levels[li];
                    let gx = &level.gens[x];
                    let ub = level.transversal[b].as_ref().unwrap();
                    let c = gx.image(b);
                    let uc = level.transversal[c].as_ref().unwrap();
                    let sch = ub.then(gx).then(&uc.inverse());
                    if sch.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(&sch, li + 1);
                    if j == self.levels.len() && h.is_identity() {
                        continue;
                    }
                    self.insert_residue(h, li + 1, j);
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }
}

/// A root system together with the group generated by its reflections.
pub struct ReflectionGroup {
    pub rs: RootSystem,
    pub chain: StabChain,
    /// Matrices whose permutations were added to the chain.
    pub gens: Vec<Matrix>,
}

impl ReflectionGroup {
    /// The group generated by the configured reflection in every root.
    pub fn full(rs: RootSystem) -> Result<Self, GroupError> {
        let mats: Vec<Matrix> = (0..rs.projective.len()).map(|i| rs.generator(i)).collect();
        Self::generated_by(rs, &mats)
    }

    pub fn generated_by(rs: RootSystem, mats: &[Matrix]) -> Result<Self, GroupError> {
        let mut chain = StabChain::trivial(rs.roots.len());
        let mut gens = Vec::new();
        for m in mats {
            let p = perm_of(&rs, m)?;
            if chain.add_generator(&p) {
                gens.push(m.clone());
            }
        }
        Ok(ReflectionGroup { rs, chain, gens })
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn perm(&self, m: &Matrix) -> Result<Perm, GroupError> {
        perm_of(&self.rs, m)
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.perm(m).map(|p| self.chain.contains(&p)).unwrap_or(false)
    }

    /// Order of the cyclic group of reflections in `G` with mirror `r^⊥`.
    pub fn mirror_order(&self, proj: usize) -> u32 {
        let ring = self.rs.ring();
        let one = RingElement::one(ring);
        let r = &self.rs.projective[proj].rep.vec;
        let mut count = 1;
        for u in units(ring).iter().filter(|u| **u != one) {
            if let Ok(m) = self.rs.space.reflection_matrix(r, u) {
                if self.contains(&m) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Subgroup order generated by the given matrices.
    pub fn subgroup_order(&self, mats: &[Matrix]) -> Result<BigUint, GroupError> {
        let mut sc = StabChain::trivial(self.rs.roots.len());
        for m in mats {
            sc.add_generator(&self.perm(m)?);
        }
        Ok(sc.order())
    }

    pub fn summary(&self) -> GroupJson {
        GroupJson {
            group: self.rs.group.to_string(),
            order: self.order().to_string(),
            degrees: self.rs.config.degrees.clone(),
            base: self.chain.base(),
            num_roots: self.rs.roots.len(),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct GroupJson {
    pub group: String,
    pub order: String,
    pub degrees: Option<Vec<u32>>,
    pub base: Vec<usize>,
    pub num_roots: usize,
}

/// Least `n ≥ 1` with `g^n = 1`, by repeated multiplication.
pub fn element_order(g: &Matrix, cap: u64) -> Result<u64, GroupError> {
    let id = Matrix::identity(g.ring(), g.rows());
    let mut x = g.clone();
    for n in 1..=cap {
        if x == id {
            return Ok(n);
        }
        x = x.mul(g);
    }
    Err(GroupError::OrderCap(cap))
}

/// Eigenvalue phases `k/n` (as reduced pairs) of an element of order `n`.
pub fn eigenvalue_phases(g: &Matrix, n: u64) -> Result<Vec<(u64, u64)>, GroupError> {
    let dim = g.rows();
    let mut traces = Vec::with_capacity(n as usize);
    let mut x = Matrix::identity(g.ring(), dim);
    for _ in 0..n {
        traces.push(x.trace().embed());
        x = x.mul(g);
    }
    let mut out = Vec::new();
    let mut worst = 0f64;
    for k in 0..n {
        let mut m = Complex64::new(0.0, 0.0);
        for (j, t) in traces.iter().enumerate() {
            let ang = -2.0 * PI * (j as f64) * (k as f64) / n as f64;
            m += t * Complex64::from_polar(1.0, ang);
        }
        m /= n as f64;
        let snapped = m.re.round();
        worst = worst.max((m - Complex64::new(snapped, 0.0)).norm());
        for _ in 0..snapped.max(0.0) as usize {
            let gcd = k.gcd(&n).max(1);
            let (a, b) = if k == 0 { (0, 1) } else { (k / gcd, n / gcd) };
            out.push((a, b));
        }
    }
    if worst > 1e-6 || out.len() != dim {
        return Err(GroupError::Snapping(worst.max(1e-6)));
    }
    Ok(out)
}

/// Outcome of the search for a Coxeter element among orderings of a
/// generating set.
#[derive(Clone, Debug, Serialize)]
pub struct CoxeterElementReport {
    /// First ordering (indices into the generators) whose product has maximal order.
    pub permutation: Vec<usize>,
    pub order: u64,
    /// Eigenvalue phases of the product, as reduced fractions of a full turn.
    pub phases: Vec<(u64, u64)>,
    /// `(d_j − 1)/h` for the given degrees, `h` the largest degree.
    pub expected: Vec<(u64, u64)>,
    pub order_matches: bool,
    /// The phases of `p` or of `p⁻¹` equal the expected ones.
    pub phases_match: bool,
}

impl CoxeterElementReport {
    pub fn ok(&self) -> bool {
        self.order_matches && self.phases_match
    }
}

fn reduced(a: u64, b: u64) -> (u64, u64) {
    let a = a % b;
    if a == 0 {
        return (0, 1);
    }
    let g = a.gcd(&b);
    (a / g, b / g)
}

/// Tries every ordering of `gens`, keeps the first whose product has the
/// largest order and compares it with `h = max(degrees)` and the phases
/// `(d_j − 1)/h`.
pub fn coxeter_element_check(gens: &[Matrix], degrees: &[u32], cap: u64) -> Result<CoxeterElementReport, GroupError> {
    use itertools::Itertools;
    let first = gens.first().ok_or(GroupError::OrderCap(0))?;
    let mut best: Option<(u64, Vec<usize>, Matrix)> = None;
    for perm in (0..gens.len()).permutations(gens.len()) {
        let mut p = Matrix::identity(first.ring(), first.rows());
        for &i in &perm {
            p = p.mul(&gens[i]);
        }
        let ord = element_order(&p, cap)?;
        if best.as_ref().is_none_or(|b| ord > b.0) {
            best = Some((ord, perm, p));
        }
    }
    let (order, permutation, p) = best.expect("at least one ordering");
    let h = *degrees.iter().max().unwrap_or(&0) as u64;
    let mut phases = eigenvalue_phases(&p, order)?;
    phases.sort();
    let mut expected: Vec<(u64, u64)> = degrees.iter().map(|&d| reduced(d as u64 - 1, h.max(1))).collect();
    expected.sort();
    let mut inverse: Vec<(u64, u64)> = phases.iter().map(|&(a, b)| reduced(b - a, b)).collect();
    inverse.sort();
    Ok(CoxeterElementReport {
        permutation,
        order,
        order_matches: order == h,
        phases_match: phases == expected || inverse == expected,
        phases,
        expected,
    })
}

/// Orders of the units `u` for which `φ_r^u` lies in the group.
pub fn reflection_orders_in_group(g: &ReflectionGroup, proj: usize) -> Vec<u32> {
    let ring = g.rs.ring();
    let one = RingElement::one(ring);
    let r = &g.rs.projective[proj].rep.vec;
    let mut out: Vec<u32> = units(ring)
        .iter()
        .filter(|u| **u != one)
        .filter(|u| {
            g.rs.space
                .reflection_matrix(r, u)
                .map(|m| g.contains(&m))
                .unwrap_or(false)
        })
        .map(unit_order)
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{GroupId, WeylType};
    use crate::lattices::build_root_system;

    #[test]
    fn s3_order() {
        let a = Perm::from_images(vec![1, 0, 2]);
        let b = Perm::from_images(vec![0, 2, 1]);
        let sc = StabChain::new(3, &[a, b]);
        assert_eq!(sc.order(), BigUint::from(6u32));
    }

    #[test]
    fn weyl_a2_order() {
        let rs = build_root_system(GroupId::Weyl(WeylType::A, 2)).unwrap();
        let g = ReflectionGroup::full(rs).unwrap();
        assert_eq!(g.order(), BigUint::from(6u32));
    }

    #[test]
    fn perm_order_and_inverse() {
        let p = Perm::from_images(vec![1, 2, 0, 4, 3]);
        assert_eq!(p.order(), 6);
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
    }

    #[test]
    fn g4_reflection_order_and_phases() {
        let rs = build_root_system(GroupId::Exceptional(4)).unwrap();
        let m = rs.generator(0);
        assert_eq!(element_order(&m, 100).unwrap(), 3);
        assert_eq!(element_order(&Matrix::identity(rs.ring(), 2), 5).unwrap(), 1);
        let ph = eigenvalue_phases(&m, 3).unwrap();
        assert_eq!(ph, vec![(0, 1), (1, 3)]);
    }
}
