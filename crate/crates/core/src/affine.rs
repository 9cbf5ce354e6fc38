//! Affine reflection groups on `K̃ = K ⊕ 𝓔₀`.
//!
//! An element is stored as a pair `(x, g)` standing for `t_x ∘ g`, where
//! `t_x(y, n) = (y, n − ⟨x, y⟩/δ)` and `g` is a linear map of `K`. The
//! divisor `δ = |r|²/(1 − u)` comes from the reflections `φ_r^u` used for the
//! extending node: `p` for order-3 reflections in norm-3 roots, `1` for the
//! order-2 reflections of `G33`, `G34` in our normalization.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::catalog::GroupId;
use crate::diagrams::{find_balanced_numbering, indefinite_witness, is_balanced, proper_subdiagrams_definite, Diagram};
use crate::lattices::{build_root_system, HermitianSpace, RootSystem};
use crate::linalg::{form, vec_add, vec_scale, Matrix, Vector};
use crate::presentations::lemmas::{braids, commutes, p_holds, GroupOps};
use crate::rings::{root_of_unity, units, RingElement};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AffineError {
    #[error("⟨x, y⟩/δ is not integral for some lattice vector y")]
    NotIntegral,
    #[error("group {0} has no affine diagram here")]
    Unsupported(String),
    #[error("no extending root gives a balanced affine diagram")]
    NoExtension,
    #[error("root system: {0}")]
    Lattice(String),
}

/// A vector `(y, m)` of `K̃`. The form ignores `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineVector {
    pub y: Vector,
    pub m: RingElement,
}

/// `t_translation ∘ linear`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub translation: Vector,
    pub linear: Matrix,
}

impl AffineMap {
    pub fn identity(ring: crate::rings::RingId, n: usize) -> Self {
        AffineMap {
            translation: vec![RingElement::zero(ring); n],
            linear: Matrix::identity(ring, n),
        }
    }

    pub fn linear(g: Matrix) -> Self {
        let n = g.rows();
        AffineMap {
            translation: vec![RingElement::zero(g.ring()); n],
            linear: g,
        }
    }

    /// Semidirect law `(x, g)(y, h) = (x + g y, g h)`.
    pub fn compose(&self, o: &AffineMap) -> AffineMap {
        AffineMap {
            translation: vec_add(&self.translation, &self.linear.apply(&o.translation)),
            linear: self.linear.mul(&o.linear),
        }
    }

    /// Inverse, with `g⁻¹` found as a power of `g`.
    pub fn inverse(&self) -> AffineMap {
        let id = Matrix::identity(self.linear.ring(), self.linear.rows());
        let mut prev = id.clone();
        let mut cur = self.linear.clone();
        for _ in 0..10_000 {
            if cur == id {
                break;
            }
            prev = cur.clone();
            cur = cur.mul(&self.linear);
        }
        let inv = if self.linear == id { id } else { prev };
        let t = inv.apply(&self.translation);
        AffineMap {
            translation: t.into_iter().map(|x| -x).collect(),
            linear: inv,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(|x| x.is_zero())
    }
}

impl GroupOps for AffineMap {
    fn mul(&self, o: &Self) -> Self {
        self.compose(o)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
}

/// The lattice `K` with its divisor `δ`.
#[derive(Clone, Debug)]
pub struct AffineSpace {
    pub space: HermitianSpace,
    pub delta: RingElement,
}

impl AffineSpace {
    pub fn new(space: HermitianSpace, delta: RingElement) -> Self {
        AffineSpace { space, delta }
    }

    /// `δ = |r|²/(1 − u)`.
    pub fn for_reflection(space: HermitianSpace, norm: &RingElement, u: &RingElement) -> Result<Self, AffineError> {
        let one = RingElement::one(space.ring);
        let delta = norm.div_exact(&(one - *u)).ok_or(AffineError::NotIntegral)?;
        Ok(Self::new(space, delta))
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    fn basis(&self) -> Vec<Vector> {
        let ring = self.space.ring;
        (0..self.dim())
            .map(|i| {
                let mut e = vec![RingElement::zero(ring); self.dim()];
                e[i] = RingElement::one(ring);
                e
            })
            .collect()
    }

    /// Whether `⟨x, y⟩/δ` is integral for every lattice vector `y`.
    pub fn translation_defined(&self, x: &[RingElement]) -> bool {
        self.basis().iter().all(|e| self.delta.divides(&form(&self.space.gram, x, e)))
    }

    /// Whether `t_x` is defined for every `x ∈ K` (the `K′ ⊇ δ⁻¹K` hypothesis).
    pub fn all_translations_defined(&self) -> bool {
        self.basis().iter().all(|e| self.translation_defined(e))
    }

    /// Index of `{x ∈ K : t_x defined}` in `K`, for `δ` a unit or an
    /// associate of `p` (where `𝓔/δ = 𝔽_3` and `ω ≡ 1`).
    pub fn translation_index(&self) -> Option<BigInt> {
        if self.delta.is_unit() {
            return Some(BigInt::one());
        }
        let p = crate::diagrams::p_elem();
        if self.space.ring != crate::rings::RingId::Eisenstein || !(self.delta.divides(&p) && p.divides(&self.delta)) {
            return None;
        }
        // Rows of the map x ↦ (⟨x, e_i⟩ mod p)_i over 𝔽_3, one per e_j.
        let n = self.dim();
        let basis = self.basis();
        let mut rows: Vec<Vec<i64>> = basis
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|e| {
                        let c = form(&self.space.gram, x, e);
                        (c.coeffs()[0] + c.coeffs()[1]).rem_euclid(3)
                    })
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
            rows.swap(rank, piv);
            let inv = rows[rank][col];
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != 0 {
                    let f = rows[r][col] * inv % 3;
                    for c in 0..n {
                        rows[r][c] = (rows[r][c] - f * rows[rank][c]).rem_euclid(3);
                    }
                }
            }
            rank += 1;
        }
        Some(BigInt::from(3).pow(rank as u32))
    }

    /// `t_x(y, n) = (y, n − ⟨x, y⟩/δ)`.
    pub fn translation(&self, x: &[RingElement]) -> Result<AffineMap, AffineError> {
        if !self.translation_defined(x) {
            return Err(AffineError::NotIntegral);
        }
        Ok(AffineMap {
            translation: x.to_vec(),
            linear: Matrix::identity(self.space.ring, self.dim()),
        })
    }

    /// `φ^u_{(x,m)}`, as `φ^u_x ∘ t_z` with `⟨z, y⟩/δ = m(1 − u)⟨x, y⟩/|x|²`.
    pub fn reflection(&self, x: &[RingElement], m: &RingElement, u: &RingElement) -> Result<AffineMap, AffineError> {
        let ring = self.space.ring;
        let one = RingElement::one(ring);
        let lin = self
            .space
            .reflection_matrix(x, u)
            .map_err(|e| AffineError::Lattice(e.to_string()))?;
        let c = (*m * (one - *u) * self.delta)
            .div_exact(&self.space.norm(x))
            .ok_or(AffineError::NotIntegral)?;
        let z = vec_scale(c.conj(), x);
        if !self.translation_defined(&z) {
            return Err(AffineError::NotIntegral);
        }
        Ok(AffineMap {
            translation: lin.apply(&z),
            linear: lin,
        })
    }

    /// Action on `K̃`.
    pub fn apply(&self, g: &AffineMap, v: &AffineVector) -> AffineVector {
        let y = g.linear.apply(&v.y);
        let shift = form(&self.space.gram, &g.translation, &y)
            .div_exact(&self.delta)
            .expect("translation checked at construction");
        AffineVector { y, m: v.m - shift }
    }

    /// The reflection formula `v − (1 − u)⟨x, v⟩/|x|² (x, m)` applied
    /// directly in `K̃` with its degenerate form.
    pub fn reflect_direct(&self, x: &[RingElement], m: &RingElement, u: &RingElement, v: &AffineVector) -> AffineVector {
        let one = RingElement::one(self.space.ring);
        let ip = form(&self.space.gram, x, &v.y);
        let c = ((one - *u) * ip).div_exact(&self.space.norm(x)).expect("reflection preserves K");
        AffineVector {
            y: v.y.iter().zip(x).map(|(a, b)| *a - c * *b).collect(),
            m: v.m - c * *m,
        }
    }

    /// `(e_1, 0), …, (e_n, 0), (0, 1)`.
    pub fn test_vectors(&self) -> Vec<AffineVector> {
        let ring = self.space.ring;
        let zero = RingElement::zero(ring);
        let mut out: Vec<AffineVector> = self.basis().into_iter().map(|y| AffineVector { y, m: zero }).collect();
        out.push(AffineVector {
            y: vec![zero; self.dim()],
            m: RingElement::one(ring),
        });
        out
    }

    /// Equality of the actions on a basis of `K̃` (hence everywhere).
    pub fn same_action(&self, a: &AffineMap, b: &AffineMap) -> bool {
        self.test_vectors().iter().all(|v| self.apply(a, v) == self.apply(b, v))
    }
}

/// Least `m ≤ cap` with `P(m; a, b)`.
fn pair_order<G: GroupOps>(a: &G, b: &G, cap: usize) -> Option<usize> {
    (2..=cap).find(|&m| p_holds(m, &[a.clone(), b.clone()]))
}

/// The affine root system data for one group.
#[derive(Clone, Debug)]
pub struct AffineSetup {
    pub group: GroupId,
    pub rs: RootSystem,
    pub aspace: AffineSpace,
    /// Reflection order used for the extending node.
    pub order: u32,
    pub unit: RingElement,
}

impl AffineSetup {
    /// Supported: `G4, G25, G26, G32, G33, G34`.
    pub fn new(group: GroupId) -> Result<Self, AffineError> {
        if !matches!(group, GroupId::Exceptional(4 | 25 | 26 | 32 | 33 | 34)) {
            return Err(AffineError::Unsupported(group.to_string()));
        }
        let rs = build_root_system(group).map_err(|e| AffineError::Lattice(e.to_string()))?;
        let order = rs.projective.iter().map(|p| p.gen_order).max().unwrap_or(2);
        let unit = root_of_unity(rs.ring(), order).ok_or(AffineError::NotIntegral)?;
        let norm = rs
            .projective
            .iter()
            .find(|p| p.gen_order == order)
            .map(|p| p.rep.norm)
            .expect("some root has the maximal order");
        let aspace = AffineSpace::for_reflection(rs.space.clone(), &norm, &unit)?;
        Ok(AffineSetup { group, rs, aspace, order, unit })
    }

    /// Linear generator `φ_{(r,0)}` of projective root `i`.
    pub fn linear_generator(&self, i: usize) -> AffineMap {
        AffineMap::linear(self.rs.generator(i))
    }

    /// `φ^u_{(r,1)}` for the extending root `r`.
    pub fn extending_generator(&self, r: &[RingElement]) -> Result<AffineMap, AffineError> {
        self.aspace.reflection(r, &RingElement::one(self.rs.ring()), &self.unit)
    }
}

/// A Figure-4 style affine diagram: simple roots plus one extending root.
#[derive(Clone, Debug, Serialize)]
pub struct AffineDiagram {
    pub group: String,
    /// Projective root indices of the simple system.
    pub simple: Vec<usize>,
    /// Extending root in lattice coordinates (text).
    pub extending: Vec<String>,
    #[serde(skip)]
    pub extending_vec: Vector,
    #[serde(skip)]
    pub diagram: Diagram,
    pub gram: Vec<Vec<String>>,
    /// Balanced numbering, scaled so the extending node has weight 1 when possible.
    pub numbering: Vec<String>,
    #[serde(skip)]
    pub numbering_ring: Vec<RingElement>,
    pub balanced: bool,
    pub null_norm_zero: bool,
    pub proper_subdiagrams_definite: bool,
    /// Orders of the diagram automorphisms (vertex permutations up to units).
    pub automorphism_orders: Vec<u64>,
    pub dot: String,
}

impl AffineDiagram {
    pub fn automorphism_count(&self) -> usize {
        self.automorphism_orders.len()
    }

    pub fn has_automorphism_of_order(&self, k: u64) -> bool {
        self.automorphism_orders.contains(&k)
    }

    pub fn ok(&self) -> bool {
        self.balanced && self.null_norm_zero && self.proper_subdiagrams_definite
    }
}

/// Vertex permutations `σ` with units `u_i` such that
/// `⟨x_{σi}, x_{σj}⟩ = ū_i ⟨x_i, x_j⟩ u_j` for all `i, j`.
pub fn diagram_automorphisms(d: &Diagram) -> Vec<Vec<usize>> {
    let n = d.size();
    let g = d.gram();
    let us = units(d.ring());
    // Visit vertices so that each one after the first has an earlier neighbour.
    let mut order = vec![0usize];
    while order.len() < n {
        let next = (0..n)
            .filter(|v| !order.contains(v))
            .find(|&v| order.iter().any(|&o| !g.get(o, v).is_zero()))
            .or_else(|| (0..n).find(|v| !order.contains(v)))
            .unwrap();
        order.push(next);
    }
    let mut out = Vec::new();
    let mut sigma = vec![usize::MAX; n];
    let mut unit = vec![RingElement::one(d.ring()); n];
    fn go(
        depth: usize,
        order: &[usize],
        g: &Matrix,
        us: &[RingElement],
        sigma: &mut Vec<usize>,
        unit: &mut Vec<RingElement>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = order.len();
        if depth == n {
            out.push(sigma.clone());
            return;
        }
        let i = order[depth];
        for t in 0..n {
            if sigma.contains(&t) || g.get(t, t) != g.get(i, i) {
                continue;
            }
            let candidates: Vec<RingElement> = if depth == 0 { vec![RingElement::one(g.ring())] } else { us.to_vec() };
            for u in candidates {
                sigma[i] = t;
                unit[i] = u;
                let fits = order[..depth].iter().all(|&j| {
                    g.get(sigma[j], t) == unit[j].conj() * g.get(j, i) * u && g.get(t, sigma[j]) == u.conj() * g.get(i, j) * unit[j]
                });
                if fits {
                    go(depth + 1, order, g, us, sigma, unit, out);
                }
                sigma[i] = usize::MAX;
            }
        }
    }
    go(0, &order, g, &us, &mut sigma, &mut unit, &mut out);
    out.sort();
    out.dedup();
    out
}

fn perm_order(p: &[usize]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut l = 1u64;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut c = 0u64;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            c += 1;
        }
        l = num_integer::lcm(l, c);
    }
    l
}

/// Extends `simple` by one root of the setup's reflection order so that the
/// result carries a balanced numbering and every proper sub-diagram is
/// definite. Among valid extensions the most symmetric one is kept, ties
/// broken by the root's canonical text.
pub fn build_affine_diagram(setup: &AffineSetup, simple: &[usize]) -> Result<AffineDiagram, AffineError> {
    let rs = &setup.rs;
    let mut best: Option<(usize, Vec<String>, AffineDiagram)> = None;
    let mut seen_classes: HashMap<Diagram, usize> = HashMap::new();
    for (i, pr) in rs.projective.iter().enumerate() {
        if simple.contains(&i) || pr.gen_order != setup.order {
            continue;
        }
        let mut roots: Vec<Vector> = simple.iter().map(|&j| rs.projective[j].rep.vec.clone()).collect();
        roots.push(pr.rep.vec.clone());
        let d = Diagram::of_roots(&rs.space, &roots).map_err(|e| AffineError::Lattice(e.to_string()))?;
        if !d.is_connected() {
            continue;
        }
        let canon = d.canonical_form();
        let auts = match seen_classes.get(&canon) {
            Some(&a) => a,
            None => {
                let Some(_) = find_balanced_numbering(&d) else {
                    seen_classes.insert(canon, 0);
                    continue;
                };
                if !proper_subdiagrams_definite(&d) {
                    seen_classes.insert(canon, 0);
                    continue;
                }
                let a = diagram_automorphisms(&d).len();
                seen_classes.insert(canon, a);
                a
            }
        };
        if auts == 0 {
            continue;
        }
        let text = rs.text(i);
        let better = match &best {
            None => true,
            Some((a, t, _)) => auts > *a || (auts == *a && text < *t),
        };
        if better {
            let diag = assemble(setup, simple, &pr.rep.vec, d)?;
            best = Some((auts, text, diag));
        }
    }
    best.map(|b| b.2).ok_or(AffineError::NoExtension)
}

/// The affine diagram for a given extending root.
pub fn assemble(setup: &AffineSetup, simple: &[usize], r0: &[RingElement], d: Diagram) -> Result<AffineDiagram, AffineError> {
    let k = d.size();
    let mut numbering = find_balanced_numbering(&d).ok_or(AffineError::NoExtension)?;
    if let Some(scaled) = numbering.iter().map(|x| x.div_exact(&numbering[k - 1])).collect::<Option<Vec<_>>>() {
        numbering = scaled;
    }
    let auts = diagram_automorphisms(&d);
    let dot = d.to_dot_with(&format!("affine {}", setup.group), &[k - 1], Some(&numbering));
    Ok(AffineDiagram {
        group: setup.group.to_string(),
        simple: simple.to_vec(),
        extending: r0.iter().map(|x| x.to_string()).collect(),
        extending_vec: r0.to_vec(),
        gram: d.gram().to_text(),
        numbering: numbering.iter().map(|x| x.to_string()).collect(),
        balanced: is_balanced(&d, &numbering),
        null_norm_zero: indefinite_witness(&d, &numbering),
        proper_subdiagrams_definite: proper_subdiagrams_definite(&d),
        automorphism_orders: auts.iter().map(|p| perm_order(p)).collect(),
        numbering_ring: numbering,
        diagram: d,
        dot,
    })
}

/// Index of the `ℤ`-span of `vectors` in `𝓔^n` viewed as `ℤ^{2n}`; zero when
/// the span has lower rank.
pub fn z_span_index(vectors: &[Vector], n: usize, degree: usize) -> BigInt {
    let width = n * degree;
    let mut pivots: Vec<Option<Vec<BigInt>>> = vec![None; width];
    for v in vectors {
        let mut r: Vec<BigInt> = v.iter().flat_map(|x| x.coeffs()[..degree].iter().map(|&c| BigInt::from(c))).collect();
        for col in 0..width {
            if r[col].is_zero() {
                continue;
            }
            let Some(mut a) = pivots[col].take() else {
                pivots[col] = Some(r);
                break;
            };
            while !r[col].is_zero() {
                let q = &a[col] / &r[col];
                for j in col..width {
                    let t = &q * &r[j];
                    a[j] -= t;
                }
                std::mem::swap(&mut a, &mut r);
            }
            pivots[col] = Some(a);
        }
    }
    let mut idx = BigInt::one();
    for (c, p) in pivots.iter().enumerate() {
        match p {
            Some(r) => idx *= r[c].abs(),
            None => return BigInt::zero(),
        }
    }
    idx
}

/// Certificate that the affine generators generate `G̃`.
#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub orbit_size: usize,
    /// Index of the `ℤ`-span of the orbit in `K` (1 means it spans).
    pub span_index: String,
    /// Index in `K` of the lattice of `x` with `t_x` defined.
    pub translation_index: String,
    /// Orbit roots `x` for which `t_x` was rebuilt from the generators.
    pub certified: usize,
    pub failures: usize,
    /// Every `φ_{(r_j,0)}` lies in the linear group and they generate `G`.
    pub linear_generates: bool,
}

impl GenerationReport {
    pub fn ok(&self) -> bool {
        self.span_index == self.translation_index && self.failures == 0 && self.certified == self.orbit_size && self.linear_generates
    }
}

/// For every `x = g r_0` in the orbit of the extending root, rebuilds
/// `t_x = (φ_x)⁻¹ g φ_{(r_0,1)} g⁻¹` from words in the affine generators and
/// compares it with the translation; also checks that the orbit spans `K`.
pub fn verify_affine_generation(setup: &AffineSetup, diag: &AffineDiagram) -> Result<GenerationReport, AffineError> {
    let rs = &setup.rs;
    let aspace = &setup.aspace;
    let r0 = diag.extending_vec.clone();
    let gens: Vec<AffineMap> = diag.simple.iter().map(|&i| setup.linear_generator(i)).collect();
    let gen_inv: Vec<AffineMap> = gens.iter().map(|g| g.inverse()).collect();
    let ext = setup.extending_generator(&r0)?;
    let ring = rs.ring();
    let id = AffineMap::identity(ring, aspace.dim());
    let mut witness: HashMap<Vector, (AffineMap, AffineMap)> = HashMap::from([(r0.clone(), (id.clone(), id))]);
    let mut queue = vec![r0.clone()];
    while let Some(x) = queue.pop() {
        let (g, gi) = witness[&x].clone();
        for (s, si) in gens.iter().zip(&gen_inv) {
            let y = s.linear.apply(&x);
            if !witness.contains_key(&y) {
                witness.insert(y.clone(), (s.compose(&g), gi.compose(si)));
                queue.push(y);
            }
        }
    }
    let orbit: Vec<Vector> = witness.keys().cloned().collect();
    let index = z_span_index(&orbit, aspace.dim(), ring.degree());
    let unit_inv = setup.unit.conj();
    let zero = RingElement::zero(ring);
    let mut certified = 0;
    let mut failures = 0;
    for (x, (g, gi)) in &witness {
        let phi_x_inv = aspace.reflection(x, &zero, &unit_inv)?;
        let built = phi_x_inv.compose(g).compose(&ext).compose(gi);
        match aspace.translation(x) {
            Ok(t) if t == built && aspace.same_action(&t, &built) => certified += 1,
            _ => failures += 1,
        }
    }
    let mats: Vec<Matrix> = diag.simple.iter().map(|&i| rs.generator(i)).collect();
    let grp = crate::group::ReflectionGroup::full(rs.clone()).map_err(|e| AffineError::Lattice(e.to_string()))?;
    let linear_generates = grp.subgroup_order(&mats).map_err(|e| AffineError::Lattice(e.to_string()))? == grp.order();
    Ok(GenerationReport {
        orbit_size: orbit.len(),
        span_index: index.to_string(),
        translation_index: aspace.translation_index().map_or("?".to_string(), |i| i.to_string()),
        certified,
        failures,
        linear_generates,
    })
}

/// Lemma-level identities, each checked exactly on `K̃`.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub radius: usize,
    pub ball_size: usize,
    /// `t_x = (φ_x)⁻¹ ∘ φ_{(x,1)}` for every root of the extending order.
    pub translation_identity: (usize, usize),
    /// `φ_{(x,m)}` from the pair representation agrees with the direct formula.
    pub reflection_formula: (usize, usize),
    /// `t_x ∘ t_y = t_{x+y}` and `t_0 = 1` on pairs of roots.
    pub translation_group: (usize, usize),
    /// Composition in the pair representation matches composition of
    /// actions for `g s` with `|g| < radius` and `s` a generator (so every
    /// word of length `≤ radius`), and `g g⁻¹ = 1`.
    pub semidirect_law: (usize, usize),
    /// `g t_x g⁻¹ = t_{g(x)}` for every `g` in the ball.
    pub conjugation: (usize, usize),
    /// Extending node relates to each simple node as `r_0` does linearly.
    pub transfer: (usize, usize),
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        [
            self.translation_identity,
            self.reflection_formula,
            self.translation_group,
            self.semidirect_law,
            self.conjugation,
            self.transfer,
        ]
        .iter()
        .all(|&(pass, total)| total > 0 && pass == total)
    }
}

fn tally(acc: &mut (usize, usize), ok: bool) {
    acc.0 += ok as usize;
    acc.1 += 1;
}

/// Visits the elements of word length `≤ radius` in the affine generators
/// layer by layer, each with its inverse. An element one letter away from a
/// layer lies in the same or an adjacent layer, so only three layers are kept.
pub fn for_each_ball_layer(gens: &[AffineMap], radius: usize, mut visit: impl FnMut(usize, &[(AffineMap, AffineMap)])) -> usize {
    let first = &gens[0];
    let id = AffineMap::identity(first.linear.ring(), first.linear.rows());
    let inv: Vec<AffineMap> = gens.iter().map(|g| g.inverse()).collect();
    let mut letters: Vec<(AffineMap, AffineMap)> = gens.iter().cloned().zip(inv.iter().cloned()).collect();
    for (g, gi) in gens.iter().zip(&inv) {
        if g != gi {
            letters.push((gi.clone(), g.clone()));
        }
    }
    let mut older: HashSet<AffineMap> = HashSet::new();
    let mut layer = vec![(id.clone(), id)];
    let mut layer_set: HashSet<AffineMap> = layer.iter().map(|x| x.0.clone()).collect();
    let mut total = 0;
    for step in 0..=radius {
        visit(step, &layer);
        total += layer.len();
        if step == radius {
            break;
        }
        let mut next = Vec::new();
        let mut next_set = HashSet::new();
        for (g, gi) in &layer {
            for (s, si) in &letters {
                let h = g.compose(s);
                if older.contains(&h) || layer_set.contains(&h) || next_set.contains(&h) {
                    continue;
                }
                next_set.insert(h.clone());
                next.push((h, si.compose(gi)));
            }
        }
        older = std::mem::replace(&mut layer_set, next_set);
        layer = next;
    }
    total
}

/// Checks the translation identities, the semidirect law and conjugation
/// on the word ball of the given radius, and braid/commute transfer.
pub fn verify_identities(setup: &AffineSetup, diag: &AffineDiagram, radius: usize) -> Result<IdentityReport, AffineError> {
    let rs = &setup.rs;
    let aspace = &setup.aspace;
    let ring = rs.ring();
    let one = RingElement::one(ring);
    let zero = RingElement::zero(ring);
    let r0 = diag.extending_vec.clone();
    let tests = aspace.test_vectors();

    let mut translation_identity = (0, 0);
    let mut reflection_formula = (0, 0);
    let ext_roots: Vec<Vector> = rs
        .roots
        .iter()
        .enumerate()
        .filter(|(i, _)| rs.projective[rs.proj_of_root[*i]].gen_order == setup.order)
        .map(|(_, r)| r.vec.clone())
        .filter(|v| aspace.translation_defined(v))
        .collect();
    for x in &ext_roots {
        let t = aspace.translation(x)?;
        let phi_inv = aspace.reflection(x, &zero, &setup.unit.conj())?;
        let phi1 = aspace.reflection(x, &one, &setup.unit)?;
        tally(&mut translation_identity, aspace.same_action(&t, &phi_inv.compose(&phi1)));
        for m in units(ring).iter().chain([&zero]) {
            let Ok(g) = aspace.reflection(x, m, &setup.unit) else { continue };
            let ok = tests.iter().all(|v| aspace.apply(&g, v) == aspace.reflect_direct(x, m, &setup.unit, v));
            tally(&mut reflection_formula, ok);
        }
    }

    let mut translation_group = (0, 0);
    let t0 = aspace.translation(&vec![zero; aspace.dim()])?;
    tally(&mut translation_group, tests.iter().all(|v| aspace.apply(&t0, v) == *v));
    for x in ext_roots.iter().take(12) {
        for y in ext_roots.iter().take(12) {
            let lhs = aspace.translation(x)?.compose(&aspace.translation(y)?);
            let rhs = aspace.translation(&vec_add(x, y))?;
            tally(&mut translation_group, aspace.same_action(&lhs, &rhs));
        }
    }

    let mut gens: Vec<AffineMap> = diag.simple.iter().map(|&i| setup.linear_generator(i)).collect();
    gens.push(setup.extending_generator(&r0)?);
    let t_r0 = aspace.translation(&r0)?;
    let mut semidirect_law = (0, 0);
    let mut conjugation = (0, 0);
    let ball_size = for_each_ball_layer(&gens, radius, |step, layer| {
        let counts: Vec<(Option<bool>, bool)> = layer
            .par_iter()
            .map(|(g, gi)| {
                let law = (step < radius).then(|| {
                    gens.iter().all(|s| {
                    let gs = g.compose(s);
                        tests.iter().all(|v| aspace.apply(&gs, v) == aspace.apply(g, &aspace.apply(s, v)))
                    }) && g.compose(gi).is_identity()
                });
                let conj = g.compose(&t_r0).compose(gi);
                let conj_ok = aspace
                    .translation(&g.linear.apply(&r0))
                    .is_ok_and(|expect| aspace.same_action(&conj, &expect));
                (law, conj_ok)
            })
            .collect();
        for (law, conj_ok) in counts {
            if let Some(law) = law {
                tally(&mut semidirect_law, law);
            }
            tally(&mut conjugation, conj_ok);
        }
    });

    let mut transfer = (0, 0);
    let ext = gens.last().unwrap().clone();
    let lin0 = AffineMap::linear(rs.space.reflection_matrix(&r0, &setup.unit).map_err(|e| AffineError::Lattice(e.to_string()))?);
    for s in &gens[..gens.len() - 1] {
        let affine = (commutes(&ext, s), braids(&ext, s), pair_order(&ext, s, 12));
        let linear = (commutes(&lin0, s), braids(&lin0, s), pair_order(&lin0, s, 12));
        tally(&mut transfer, affine.0 == linear.0 && affine.1 == linear.1 && (affine.2.is_none() || affine.2 == linear.2));
    }

    Ok(IdentityReport {
        radius,
        ball_size,
        translation_identity,
        reflection_formula,
        translation_group,
        semidirect_law,
        conjugation,
        transfer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::RingId;

    fn g4() -> AffineSetup {
        AffineSetup::new(GroupId::Exceptional(4)).unwrap()
    }

    #[test]
    fn translations_form_a_group() {
        let s = g4();
        let n = s.aspace.dim();
        let zero = vec![RingElement::zero(RingId::Eisenstein); n];
        assert!(s.aspace.translation(&zero).unwrap().is_identity());
        let x = s.rs.roots[0].vec.clone();
        let minus: Vector = x.iter().map(|a| -*a).collect();
        let t = s.aspace.translation(&x).unwrap().compose(&s.aspace.translation(&minus).unwrap());
        assert!(t.is_identity());
    }

    #[test]
    fn e8_lattice_admits_all_translations() {
        let s = AffineSetup::new(GroupId::Exceptional(32)).unwrap();
        assert!(s.aspace.all_translations_defined());
    }

    #[test]
    fn linear_reflection_at_level_zero() {
        let s = g4();
        let x = s.rs.projective[0].rep.vec.clone();
        let zero = RingElement::zero(RingId::Eisenstein);
        let r = s.aspace.reflection(&x, &zero, &s.unit).unwrap();
        assert_eq!(r, AffineMap::linear(s.rs.generator(0)));
    }

    #[test]
    fn inverse_round_trip() {
        let s = g4();
        let x = s.rs.projective[1].rep.vec.clone();
        let g = s.extending_generator(&x).unwrap();
        assert!(g.compose(&g.inverse()).is_identity());
    }

    #[test]
    fn z_index_of_standard_basis() {
        let e = RingId::Eisenstein;
        let one = RingElement::one(e);
        let w = RingElement::generator(e);
        let z = RingElement::zero(e);
        let full = vec![vec![one, z], vec![w, z], vec![z, one], vec![z, w]];
        assert_eq!(z_span_index(&full, 2, 2), BigInt::one());
        let half = vec![vec![one.scale(2), z], vec![w, z], vec![z, one], vec![z, w]];
        assert_eq!(z_span_index(&half, 2, 2), BigInt::from(2));
        assert_eq!(z_span_index(&full[..3], 2, 2), BigInt::zero());
    }

    #[test]
    fn cycle_has_rotations() {
        let e = RingId::Eisenstein;
        let d = crate::diagrams::circ(3, RingElement::one(e)).unwrap();
        let orders: Vec<u64> = diagram_automorphisms(&d).iter().map(|p| perm_order(p)).collect();
        assert!(orders.contains(&3));
    }
}
