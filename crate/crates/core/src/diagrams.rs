//! Root diagrams: gram matrices up to vertex permutation and unit rescaling,
//! balanced numberings, circuits and the classification of Eisenstein root
//! lattices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::lattices::{eisenstein_path_gram, eisenstein_vectors_of_norm, real_form_stats_gram, HermitianSpace};
use crate::linalg::{form, null_space, Matrix, Vector};
use crate::rings::{units, RingElement, RingId};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("gram matrix is not Hermitian")]
    NotHermitian,
    #[error("empty diagram")]
    Empty,
    #[error("circuit length must be 3, 4 or 5, got {0}")]
    CircuitLength(usize),
}

/// A diagram, stored as its gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    gram: Matrix,
}

/// Canonical form together with how it was reached: vertex `i` of the
/// canonical diagram is `units[i]` times vertex `order[i]` of the original.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub diagram: Diagram,
    pub order: Vec<usize>,
    pub units: Vec<RingElement>,
}

impl Diagram {
    pub fn new(gram: Matrix) -> Result<Self, DiagramError> {
        if gram.rows() == 0 {
            return Err(DiagramError::Empty);
        }
        if !gram.is_hermitian() {
            return Err(DiagramError::NotHermitian);
        }
        Ok(Diagram { gram })
    }

    /// Gram matrix of a list of vectors.
    pub fn of_roots(space: &HermitianSpace, roots: &[Vector]) -> Result<Self, DiagramError> {
        let k = roots.len();
        let mut g = Matrix::zeros(space.ring, k, k);
        for i in 0..k {
            for j in 0..k {
                g.set(i, j, space.inner(&roots[i], &roots[j]));
            }
        }
        Diagram::new(g)
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn ring(&self) -> RingId {
        self.gram.ring()
    }

    pub fn size(&self) -> usize {
        self.gram.rows()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && !self.gram.get(i, j).is_zero()
    }

    /// Full sub-diagram on the given vertices.
    pub fn sub(&self, idx: &[usize]) -> Diagram {
        Diagram {
            gram: self.gram.principal(idx),
        }
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let a = comp[i];
                for b in 0..n {
                    if !seen[b] && self.adjacent(a, b) {
                        seen[b] = true;
                        comp.push(b);
                    }
                }
                i += 1;
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Positive definiteness. Leading minors are computed exactly when they
    /// are rational integers, otherwise from the embedding.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.size()).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            let d = self.gram.principal(&idx).det();
            match d.as_integer() {
                Some(n) => n > 0,
                None => d.embed().re > 1e-9,
            }
        })
    }

    /// Canonical representative under vertex permutation and unit rescaling.
    pub fn canonical(&self) -> Canonical {
        let us = units(self.ring());
        let mut parts: Vec<(Vec<RingElement>, Vec<usize>, Vec<RingElement>)> = self
            .components()
            .into_iter()
            .map(|c| {
                let (key, order, un) = canonical_connected(&self.gram, &c, &us);
                (key, order, un)
            })
            .collect();
        parts.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| a.0.cmp(&b.0)));
        let mut order = Vec::new();
        let mut unit_list = Vec::new();
        for (_, o, u) in parts {
            order.extend(o);
            unit_list.extend(u);
        }
        let n = self.size();
        let mut g = Matrix::zeros(self.ring(), n, n);
        for i in 0..n {
            for j in 0..n {
                let v = unit_list[i].conj() * self.gram.get(order[i], order[j]) * unit_list[j];
                g.set(i, j, v);
            }
        }
        Canonical {
            diagram: Diagram { gram: g },
            order,
            units: unit_list,
        }
    }

    pub fn canonical_form(&self) -> Diagram {
        self.canonical().diagram
    }

    /// Same diagram up to vertex permutation and unit rescaling.
    pub fn same_class(&self, other: &Diagram) -> bool {
        self.size() == other.size() && self.canonical_form() == other.canonical_form()
    }

    /// DOT rendering. Edge `x_j → x_i` carries `m_ij`; the label `−p` is
    /// omitted for Eisenstein diagrams whose vertices all have norm 3.
    pub fn to_dot(&self, name: &str) -> String {
        self.to_dot_with(name, &[], None)
    }

    /// DOT rendering with optional vertex numbering and vertices whose edges
    /// are drawn dotted.
    pub fn to_dot_with(&self, name: &str, dotted: &[usize], numbering: Option<&[RingElement]>) -> String {
        let n = self.size();
        let e = RingId::Eisenstein;
        let eis_norm3 = self.ring() == e
            && (0..n).all(|i| self.gram.get(i, i) == RingElement::from_int(e, 3));
        let minus_p = (self.ring() == e).then(|| -RingElement::parse(e, "2+w").unwrap());
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        for i in 0..n {
            let mut label = if eis_norm3 {
                format!("x{}", i + 1)
            } else {
                format!("x{}: {}", i + 1, self.gram.get(i, i))
            };
            if let Some(num) = numbering {
                let _ = write!(label, " [{}]", num[i]);
            }
            let _ = writeln!(s, "  x{} [label=\"{label}\"];", i + 1);
        }
        for i in 0..n {
            for j in i + 1..n {
                let m = self.gram.get(i, j);
                if m.is_zero() {
                    continue;
                }
                let mut attrs = Vec::new();
                if !(eis_norm3 && Some(m) == minus_p) {
                    attrs.push(format!("label=\"{m}\""));
                }
                if dotted.contains(&i) || dotted.contains(&j) {
                    attrs.push("style=dotted".to_string());
                }
                let a = if attrs.is_empty() {
                    String::new()
                } else {
                    format!(" [{}]", attrs.join(", "))
                };
                let _ = writeln!(s, "  x{} -> x{}{a};", j + 1, i + 1);
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Best column-by-column key over connected vertex orderings of one component.
fn canonical_connected(
    g: &Matrix,
    comp: &[usize],
    us: &[RingElement],
) -> (Vec<RingElement>, Vec<usize>, Vec<RingElement>) {
    struct Search<'a> {
        g: &'a Matrix,
        comp: &'a [usize],
        us: &'a [RingElement],
        best: Option<(Vec<RingElement>, Vec<usize>, Vec<RingElement>)>,
    }
    impl Search<'_> {
        fn go(&mut self, order: &mut Vec<usize>, un: &mut Vec<RingElement>, key: &mut Vec<RingElement>) {
            if order.len() == self.comp.len() {
                let better = match &self.best {
                    None => true,
                    Some((b, _, _)) => key.as_slice() < b.as_slice(),
                };
                if better {
                    self.best = Some((key.clone(), order.clone(), un.clone()));
                }
                return;
            }
            for &v in self.comp {
                if order.contains(&v) {
                    continue;
                }
                let first = order.iter().position(|&o| !self.g.get(o, v).is_zero());
                if !order.is_empty() && first.is_none() {
                    continue;
                }
                let u = match first {
                    None => RingElement::one(self.g.ring()),
                    Some(i) => {
                        let base = un[i].conj() * self.g.get(order[i], v);
                        *self.us.iter().min_by_key(|u| base * **u).unwrap()
                    }
                };
                let len = key.len();
                for (i, &o) in order.iter().enumerate() {
                    key.push(un[i].conj() * self.g.get(o, v) * u);
                }
                key.push(self.g.get(v, v));
                let prune = match &self.best {
                    Some((b, _, _)) => key[..] > b[..key.len()],
                    None => false,
                };
                if !prune {
                    order.push(v);
                    un.push(u);
                    self.go(order, un, key);
                    order.pop();
                    un.pop();
                }
                key.truncate(len);
            }
        }
    }
    let mut s = Search {
        g,
        comp,
        us,
        best: None,
    };
    s.go(&mut Vec::new(), &mut Vec::new(), &mut Vec::new());
    s.best.expect("component is nonempty")
}

fn eis(s: &str) -> RingElement {
    RingElement::parse(RingId::Eisenstein, s).expect("valid literal")
}

/// `p = 1 − ω̄ = 2 + ω`.
pub fn p_elem() -> RingElement {
    eis("2+w")
}

/// Diagram of `E_{2k}^E`.
pub fn eisenstein_path(k: usize) -> Diagram {
    Diagram {
        gram: eisenstein_path_gram(k),
    }
}

/// A balanced numbering: a null vector of the gram matrix with some entry
/// equal to one. Returns `None` when no null space vector can be so scaled.
pub fn find_balanced_numbering(d: &Diagram) -> Option<Vec<RingElement>> {
    for v in null_space(&d.gram) {
        for i in 0..v.len() {
            if v[i].is_zero() {
                continue;
            }
            let scaled: Option<Vec<RingElement>> = v.iter().map(|x| x.div_exact(&v[i])).collect();
            if let Some(s) = scaled {
                return Some(s);
            }
        }
    }
    None
}

/// Checks `Σ_x n_x ⟨a, x⟩ = 0` for every vertex `a` and that some `n_x = 1`.
pub fn is_balanced(d: &Diagram, numbering: &[RingElement]) -> bool {
    numbering.iter().any(|x| x.is_one()) && d.gram.apply(numbering).iter().all(|x| x.is_zero())
}

/// Lemma-style indefiniteness witness: `Σ n_x x` has norm zero and some
/// coefficient is one.
pub fn indefinite_witness(d: &Diagram, numbering: &[RingElement]) -> bool {
    numbering.iter().any(|x| x.is_one()) && form(&d.gram, numbering, numbering).is_zero()
}

/// `Circ_{k,u}`: a circuit with `⟨x_i, x_{i+1}⟩ = −p` and `⟨x_1, x_k⟩ = −up`.
pub fn circ(k: usize, u: RingElement) -> Result<Diagram, DiagramError> {
    if !(3..=5).contains(&k) {
        return Err(DiagramError::CircuitLength(k));
    }
    let mut g = eisenstein_path_gram(k);
    let e = -(u * p_elem());
    g.set(0, k - 1, e);
    g.set(k - 1, 0, e.conj());
    Diagram::new(g)
}

/// Outcome of reducing a circuit.
#[derive(Clone, Debug)]
pub enum CircReduction {
    /// New vertices (as coefficient rows over the circuit's vertices) whose
    /// diagram is the `E_{2k}^E` path.
    Definite { basis: Vec<Vector>, diagram: Diagram },
    /// A numbering giving a norm-zero vector.
    Indefinite { numbering: Vec<RingElement> },
}

/// Reduces `Circ_{k,u}` for `k ∈ {3,4,5}`.
pub fn circ_reduce(k: usize, u: RingElement) -> Result<CircReduction, DiagramError> {
    let d = circ(k, u)?;
    let z = eis("0");
    let one = eis("1");
    let wb = eis("-1-w");
    let p = p_elem();
    let unit = |i: usize, c: RingElement| -> Vector {
        let mut v = vec![z; k];
        v[i] = c;
        v
    };
    let candidate = match k {
        // x3' = x2 − ū x3
        3 => Some(vec![
            unit(0, one),
            unit(1, one),
            vec![z, one, -u.conj()],
        ]),
        // x4' = ω̄ x2 − p x3 − x4
        4 => Some(vec![
            unit(0, one),
            unit(1, one),
            unit(2, one),
            vec![z, wb, -p, -one],
        ]),
        _ => None,
    };
    if let Some(basis) = candidate {
        let sp = HermitianSpace::new(d.gram.clone());
        let nd = Diagram::of_roots(&sp, &basis)?;
        if nd.same_class(&eisenstein_path(k)) {
            return Ok(CircReduction::Definite { basis, diagram: nd });
        }
    }
    Ok(CircReduction::Indefinite {
        numbering: norm_zero_numbering(&d).expect("circuit is definite or has a witness"),
    })
}

/// Searches numberings with entries in `{0} ∪ E*` and first entry one for a
/// norm-zero combination.
pub fn norm_zero_numbering(d: &Diagram) -> Option<Vec<RingElement>> {
    if let Some(n) = find_balanced_numbering(d) {
        return Some(n);
    }
    let ring = d.ring();
    let mut choices = vec![RingElement::zero(ring)];
    choices.extend(units(ring));
    let k = d.size();
    let mut cur = vec![RingElement::one(ring); k];
    fn rec(i: usize, cur: &mut Vec<RingElement>, ch: &[RingElement], d: &Diagram) -> bool {
        if i == cur.len() {
            return form(&d.gram, cur, cur).is_zero();
        }
        for c in ch {
            cur[i] = *c;
            if rec(i + 1, cur, ch, d) {
                return true;
            }
        }
        false
    }
    rec(1, &mut cur, &choices, d).then_some(cur)
}

/// An isometry `L(a) → L(b)` of positive definite Eisenstein diagrams, as the
/// images of `a`'s vertices in `b`'s basis.
pub fn eisenstein_isometry(a: &Diagram, b: &Diagram) -> Option<Vec<Vector>> {
    let k = a.size();
    if k != b.size() || !a.is_positive_definite() || !b.is_positive_definite() {
        return None;
    }
    if real_form_stats_gram(&a.gram) != real_form_stats_gram(&b.gram) {
        return None;
    }
    // every vertex has norm 3 here; equal discriminants make an embedding onto
    let norms: Vec<i64> = (0..k).map(|i| a.gram.get(i, i).as_integer().unwrap_or(0)).collect();
    let mut pools = BTreeMap::new();
    for &n in &norms {
        if n <= 0 || n % 3 != 0 {
            return None;
        }
        pools.entry(n).or_insert_with(|| eisenstein_vectors_of_norm(&b.gram, n));
    }
    let mut images: Vec<Vector> = Vec::new();
    fn rec(
        i: usize,
        a: &Diagram,
        b: &Diagram,
        norms: &[i64],
        pools: &BTreeMap<i64, Vec<Vector>>,
        images: &mut Vec<Vector>,
    ) -> bool {
        if i == norms.len() {
            return true;
        }
        for y in &pools[&norms[i]] {
            let ok = (0..i).all(|j| form(&b.gram, &images[j], y) == a.gram.get(j, i));
            if ok {
                images.push(y.clone());
                if rec(i + 1, a, b, norms, pools, images) {
                    return true;
                }
                images.pop();
            }
        }
        false
    }
    rec(0, a, b, &norms, &pools, &mut images).then_some(images)
}

/// Why a diagram met during the classification was discarded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    /// Affine: balanced numbering, every proper sub-diagram definite.
    Affine,
    /// Positive semi-definite with a norm-zero vector but not affine.
    Singular,
    /// Has a vector of negative norm.
    Negative,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub name: String,
    pub gram: Vec<Vec<String>>,
    pub count_of_representatives_seen: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub max_rank: usize,
    pub classes: Vec<ClassEntry>,
    /// Representative diagram of each class, in the order of `classes`.
    #[serde(skip)]
    pub class_diagrams: Vec<Diagram>,
    /// Number of distinct connected diagrams examined at each rank.
    pub diagrams_per_rank: Vec<usize>,
    /// Discarded diagrams by reason.
    pub rejected: BTreeMap<Rejection, usize>,
    /// Canonical affine diagrams found, with a balanced numbering each.
    #[serde(skip)]
    pub affine: Vec<(Diagram, Vec<RingElement>)>,
}

/// Enumerates connected Eisenstein diagrams with norm-3 vertices and edges in
/// `{0} ∪ −pE*`, rank by rank, keeping the definite ones, and sorts them into
/// classes of isometric lattices.
pub fn classify_eisenstein(max_rank: usize) -> ClassificationReport {
    let e = RingId::Eisenstein;
    let us = units(e);
    let p = p_elem();
    let mut edge_choices = vec![RingElement::zero(e)];
    edge_choices.extend(us.iter().map(|u| -(*u * p)));

    let mut g1 = Matrix::zeros(e, 1, 1);
    g1.set(0, 0, RingElement::from_int(e, 3));
    let mut level: Vec<Diagram> = if max_rank >= 1 { vec![Diagram { gram: g1 }] } else { vec![] };
    let mut definite: Vec<Diagram> = level.clone();
    let mut per_rank = vec![level.len()];
    let mut rejected: BTreeMap<Rejection, usize> = BTreeMap::new();
    let mut affine: BTreeMap<Diagram, Vec<RingElement>> = BTreeMap::new();

    for k in 2..=max_rank {
        let mut seen: BTreeMap<Diagram, bool> = BTreeMap::new();
        for parent in &level {
            let m = k - 1;
            let total = edge_choices.len().pow(m as u32);
            for code in 0..total {
                let mut c = code;
                let mut edges = Vec::with_capacity(m);
                for _ in 0..m {
                    edges.push(edge_choices[c % edge_choices.len()]);
                    c /= edge_choices.len();
                }
                // rescaling the new vertex by a unit makes its first edge −p
                match edges.iter().find(|x| !x.is_zero()) {
                    None => continue,
                    Some(f) if *f != -p => continue,
                    _ => {}
                }
                let mut g = Matrix::zeros(e, k, k);
                for i in 0..m {
                    for j in 0..m {
                        g.set(i, j, parent.gram.get(i, j));
                    }
                    g.set(i, m, edges[i]);
                    g.set(m, i, edges[i].conj());
                }
                g.set(m, m, RingElement::from_int(e, 3));
                let d = Diagram { gram: g }.canonical_form();
                if seen.contains_key(&d) {
                    continue;
                }
                let pd = d.is_positive_definite();
                seen.insert(d, pd);
            }
        }
        let mut next = Vec::new();
        for (d, pd) in seen.iter() {
            if *pd {
                next.push(d.clone());
                continue;
            }
            let reason = match find_balanced_numbering(d) {
                Some(n) if is_psd(d) => {
                    if proper_subdiagrams_definite(d) {
                        affine.insert(d.clone(), n);
                        Rejection::Affine
                    } else {
                        Rejection::Singular
                    }
                }
                _ => Rejection::Negative,
            };
            *rejected.entry(reason).or_default() += 1;
        }
        per_rank.push(seen.len());
        definite.extend(next.iter().cloned());
        level = next;
    }

    let mut classes: Vec<(String, Diagram, usize)> = Vec::new();
    for d in definite {
        let k = d.size();
        let target = eisenstein_path(k);
        if let Some(entry) = classes.iter_mut().find(|c| c.1.size() == k && eisenstein_isometry(&d, &c.1).is_some()) {
            entry.2 += 1;
            continue;
        }
        let name = if eisenstein_isometry(&d, &target).is_some() {
            format!("E{}E", 2 * k)
        } else {
            format!("unnamed-rank-{k}")
        };
        classes.push((name, target_or(d, target), 1));
    }
    ClassificationReport {
        max_rank,
        class_diagrams: classes.iter().map(|c| c.1.clone()).collect(),
        classes: classes
            .into_iter()
            .map(|(name, d, count)| ClassEntry {
                name,
                gram: d.gram.to_text(),
                count_of_representatives_seen: count,
            })
            .collect(),
        diagrams_per_rank: per_rank,
        rejected,
        affine: affine.into_iter().collect(),
    }
}

fn target_or(d: Diagram, target: Diagram) -> Diagram {
    if eisenstein_isometry(&d, &target).is_some() {
        target
    } else {
        d
    }
}

/// Positive semi-definite: every principal minor is non-negative.
fn is_psd(d: &Diagram) -> bool {
    let n = d.size();
    (1..(1u32 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let det = d.gram.principal(&idx).det();
        match det.as_integer() {
            Some(v) => v >= 0,
            None => det.embed().re > -1e-9,
        }
    })
}

/// Every proper full sub-diagram is positive definite.
pub fn proper_subdiagrams_definite(d: &Diagram) -> bool {
    let n = d.size();
    (1..(1u32 << n) - 1).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        d.sub(&idx).is_positive_definite()
    })
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |d: &Diagram| {
            let n = d.size();
            let mut v = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    v.push(d.gram.get(i, j));
                }
            }
            (n, v)
        };
        key(self).cmp(&key(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_is_invariant_under_rescaling_and_permutation() {
        let d = eisenstein_path(3);
        let w = eis("w");
        // rescale vertex 2 by ω and swap vertices 0 and 2
        let t = [eis("1"), eis("1"), w];
        let perm = [2, 1, 0];
        let mut g = Matrix::zeros(RingId::Eisenstein, 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let (a, b) = (perm[i], perm[j]);
                g.set(i, j, t[a].conj() * d.gram.get(a, b) * t[b]);
            }
        }
        let d2 = Diagram::new(g).unwrap();
        assert_eq!(d.canonical_form(), d2.canonical_form());
    }

    #[test]
    fn positive_definite_has_no_numbering() {
        assert!(find_balanced_numbering(&eisenstein_path(4)).is_none());
    }

    #[test]
    fn circ_reductions() {
        for (k, u) in [(3, eis("-1")), (3, eis("-1-w")), (4, eis("-1-w"))] {
            match circ_reduce(k, u).unwrap() {
                CircReduction::Definite { diagram, .. } => {
                    assert!(diagram.same_class(&eisenstein_path(k)))
                }
                CircReduction::Indefinite { .. } => panic!("Circ_{k},{u} should reduce"),
            }
        }
        for u in units(RingId::Eisenstein) {
            assert!(matches!(circ_reduce(5, u).unwrap(), CircReduction::Indefinite { .. }));
        }
    }

    #[test]
    fn dot_output() {
        let s = eisenstein_path(1).to_dot("E2E");
        assert_eq!(s.matches("->").count(), 0);
        assert_eq!(s.matches("label=").count(), 1);
        let s = eisenstein_path(4).to_dot("E8E");
        assert_eq!(s.matches("->").count(), 3);
    }
}
