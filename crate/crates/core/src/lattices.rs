//! Hermitian lattices, reflections and root systems.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::catalog::{config, Construction, GroupConfig, GroupId};
use crate::linalg::{det_f64, form, vec_sub, Matrix, Vector};
use crate::rings::{root_of_unity, unit_order, units, RingElement, RingId};
use crate::zlattice::rational_det;

/// Largest root set the closure will build before giving up.
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("reflection does not preserve the lattice")]
    NotPreserving,
    #[error("closure exceeded {0} projective roots")]
    CapExceeded(usize),
    #[error("no reflection order configured for a root of norm {0}")]
    UnknownNorm(String),
    #[error("ring has no primitive {0}-th root of unity")]
    NoRootOfUnity(u32),
    #[error("vector is not in the lattice spanned by the basis")]
    NotInLattice,
    #[error("module basis reduction failed: division with remainder did not decrease the norm")]
    NotEuclidean,
    #[error("unknown named lattice {0:?}")]
    UnknownLattice(String),
}

/// A vector space with a Hermitian form, linear in the second variable.
#[derive(Clone, Debug)]
pub struct HermitianSpace {
    pub ring: RingId,
    pub dim: usize,
    pub gram: Matrix,
}

impl HermitianSpace {
    pub fn new(gram: Matrix) -> Self {
        HermitianSpace {
            ring: gram.ring(),
            dim: gram.rows(),
            gram,
        }
    }

    pub fn inner(&self, x: &[RingElement], y: &[RingElement]) -> RingElement {
        form(&self.gram, x, y)
    }

    pub fn norm(&self, x: &[RingElement]) -> RingElement {
        self.inner(x, x)
    }

    pub fn is_hermitian(&self) -> bool {
        self.gram.is_hermitian()
    }

    /// All leading principal minors positive, checked on the embedded gram.
    pub fn is_positive_definite(&self) -> bool {
        is_positive_definite(&self.gram)
    }

    /// `φ_x^u(y) = y − (1−u)⟨x,y⟩|x|^{−2} x`.
    pub fn reflect(
        &self,
        x: &[RingElement],
        u: &RingElement,
        y: &[RingElement],
    ) -> Result<Vector, LatticeError> {
        reflect_with(&self.gram, x, &self.norm(x), u, y)
    }

    /// Matrix of `φ_x^u` acting on coordinate columns.
    pub fn reflection_matrix(&self, x: &[RingElement], u: &RingElement) -> Result<Matrix, LatticeError> {
        reflection_matrix(&self.gram, x, u)
    }
}

pub fn is_positive_definite(gram: &Matrix) -> bool {
    let e = gram.embed();
    (1..=gram.rows()).all(|k| {
        let sub: Vec<Vec<_>> = e[..k].iter().map(|r| r[..k].to_vec()).collect();
        det_f64(sub).re > 1e-9
    })
}

pub(crate) fn reflect_with(
    gram: &Matrix,
    x: &[RingElement],
    x_norm: &RingElement,
    u: &RingElement,
    y: &[RingElement],
) -> Result<Vector, LatticeError> {
    let ip = form(gram, x, y);
    if ip.is_zero() {
        return Ok(y.to_vec());
    }
    let one = RingElement::one(u.ring());
    let c = ((one - *u) * ip)
        .div_exact(x_norm)
        .ok_or(LatticeError::NotPreserving)?;
    Ok(y.iter().zip(x).map(|(a, b)| *a - c * *b).collect())
}

pub fn reflection_matrix(gram: &Matrix, x: &[RingElement], u: &RingElement) -> Result<Matrix, LatticeError> {
    let n = gram.rows();
    let ring = gram.ring();
    let norm = form(gram, x, x);
    let mut m = Matrix::identity(ring, n);
    for j in 0..n {
        let mut e = vec![RingElement::zero(ring); n];
        e[j] = RingElement::one(ring);
        let img = reflect_with(gram, x, &norm, u, &e)?;
        for (i, v) in img.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// A root: a primitive lattice vector together with its mirror data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coordinates in the lattice basis.
    pub vec: Vector,
    /// Coordinates in the ambient space the root system was given in.
    pub ambient: Vector,
    pub norm: RingElement,
    /// Orders `n` such that `φ^u` with `u` a primitive `n`-th root of unity
    /// preserves the lattice and the root set.
    pub refl_orders: Vec<u32>,
}

/// A unit orbit of roots.
#[derive(Clone, Debug)]
pub struct ProjectiveRoot {
    pub rep: Root,
    pub orbit_size: usize,
    /// Order of the reflection used when this root serves as a generator.
    pub gen_order: u32,
}

/// How basis coordinates relate to the ambient coordinates.
#[derive(Clone, Debug)]
pub struct Frame {
    /// Basis vectors in ambient coordinates, in echelon form.
    pub basis: Vec<Vector>,
    pivots: Vec<usize>,
    /// Ambient form (before dividing by `scale`).
    pub ambient_gram: Matrix,
    pub scale: i64,
}

impl Frame {
    pub fn to_basis(&self, x: &[RingElement]) -> Result<Vector, LatticeError> {
        let ring = self.ambient_gram.ring();
        let mut rest = x.to_vec();
        let mut out = Vec::with_capacity(self.basis.len());
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = rest[p].div_exact(&b[p]).ok_or(LatticeError::NotInLattice)?;
            for (r, bv) in rest.iter_mut().zip(b) {
                *r = *r - c * *bv;
            }
            out.push(c);
        }
        if rest.iter().any(|r| !r.is_zero()) {
            return Err(LatticeError::NotInLattice);
        }
        let _ = ring;
        Ok(out)
    }

    pub fn to_ambient(&self, c: &[RingElement]) -> Vector {
        let ring = self.ambient_gram.ring();
        let m = self.ambient_gram.rows();
        let mut out = vec![RingElement::zero(ring); m];
        for (ci, b) in c.iter().zip(&self.basis) {
            for (o, bv) in out.iter_mut().zip(b) {
                *o += *ci * *bv;
            }
        }
        out
    }

    pub fn to_ambient_f64(&self, c: &[num_complex::Complex64]) -> Vec<num_complex::Complex64> {
        let m = self.ambient_gram.rows();
        let mut out = vec![num_complex::Complex64::new(0.0, 0.0); m];
        for (ci, b) in c.iter().zip(&self.basis) {
            for (o, bv) in out.iter_mut().zip(b) {
                *o += *ci * bv.embed();
            }
        }
        out
    }

    /// Solves for basis coordinates of an ambient float vector in the span.
    pub fn to_basis_f64(&self, x: &[num_complex::Complex64]) -> Vec<num_complex::Complex64> {
        let mut rest = x.to_vec();
        let mut out = Vec::with_capacity(self.basis.len());
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = rest[p] / b[p].embed();
            for (r, bv) in rest.iter_mut().zip(b) {
                *r -= c * bv.embed();
            }
            out.push(c);
        }
        out
    }
}

fn canonical_unit_multiple(v: &[RingElement], us: &[RingElement]) -> Vector {
    us.iter()
        .map(|u| v.iter().map(|x| *u * *x).collect::<Vector>())
        .min()
        .unwrap()
}

/// Closes a set of roots under the reflections they define. Roots are kept
/// projectively; each reflection is `φ_r^u` with `u = e^{2πi/o}` and `o`
/// given by `order_of(|r|²)`.
pub fn closure_under_reflections(
    gram: &Matrix,
    seeds: &[Vector],
    order_of: &dyn Fn(&RingElement) -> Option<u32>,
    cap: usize,
) -> Result<Vec<Vector>, LatticeError> {
    let ring = gram.ring();
    let us = units(ring);
    let mut reps: Vec<Vector> = Vec::new();
    let mut seen: HashSet<Vector> = HashSet::new();
    let mut data: Vec<(RingElement, RingElement)> = Vec::new();
    let mut add = |v: Vector,
                   reps: &mut Vec<Vector>,
                   data: &mut Vec<(RingElement, RingElement)>|
     -> Result<(), LatticeError> {
        let c = canonical_unit_multiple(&v, &us);
        if seen.insert(c.clone()) {
            if reps.len() >= cap {
                return Err(LatticeError::CapExceeded(cap));
            }
            let norm = form(gram, &c, &c);
            let o = order_of(&norm).ok_or_else(|| LatticeError::UnknownNorm(norm.to_string()))?;
            let u = root_of_unity(ring, o).ok_or(LatticeError::NoRootOfUnity(o))?;
            reps.push(c);
            data.push((norm, u));
        }
        Ok(())
    };
    for s in seeds {
        add(s.clone(), &mut reps, &mut data)?;
    }
    let mut done = 0;
    loop {
        let n = reps.len();
        for i in 0..n {
            let start = if i < done { done } else { 0 };
            for j in start..n {
                let (norm, u) = data[i];
                let img = reflect_with(gram, &reps[i], &norm, &u, &reps[j])?;
                add(img, &mut reps, &mut data)?;
                let (norm, u) = data[j];
                let img = reflect_with(gram, &reps[j], &norm, &u, &reps[i])?;
                add(img, &mut reps, &mut data)?;
            }
        }
        done = n;
        if reps.len() == n {
            break;
        }
    }
    Ok(reps)
}

fn abs_norm(x: &RingElement) -> i64 {
    x.absolute_norm().abs()
}

/// Basis of the module spanned by `vectors`, by Euclidean row reduction.
/// The result is in echelon form; returns the pivot columns as well.
pub fn module_basis(vectors: &[Vector]) -> Result<(Vec<Vector>, Vec<usize>), LatticeError> {
    let mut rows: Vec<Vector> = vectors
        .iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if rows.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let m = rows[0].len();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..m {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| (abs_norm(&rows[i][c]), i));
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut all_zero = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let (q, _) = rows[i][c]
                    .euclid_div(&rows[r][c])
                    .ok_or(LatticeError::NotEuclidean)?;
                let sub: Vector = rows[r].iter().map(|x| q * *x).collect();
                rows[i] = vec_sub(&rows[i], &sub);
                if !rows[i][c].is_zero() {
                    all_zero = false;
                }
            }
            if all_zero {
                break;
            }
        }
        if (r..rows.len()).any(|i| !rows[i][c].is_zero()) {
            pivots.push(c);
            r += 1;
        }
        rows.retain(|v| v.iter().any(|x| !x.is_zero()));
    }
    rows.truncate(r);
    // normalize pivots by units and reduce entries above them
    let ring = rows[0][0].ring();
    let us = units(ring);
    for (i, &p) in pivots.iter().enumerate() {
        let u = us
            .iter()
            .copied()
            .max_by_key(|u| (*u * rows[i][p]).coeffs().to_vec())
            .unwrap();
        rows[i] = rows[i].iter().map(|x| u * *x).collect();
        for j in 0..i {
            if rows[j][p].is_zero() {
                continue;
            }
            if let Some((q, _)) = rows[j][p].euclid_div(&rows[i][p]) {
                if !q.is_zero() {
                    let sub: Vector = rows[i].iter().map(|x| q * *x).collect();
                    rows[j] = vec_sub(&rows[j], &sub);
                }
            }
        }
    }
    Ok((rows, pivots))
}

/// A complete root system with its lattice coordinates.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub group: GroupId,
    pub config: GroupConfig,
    pub space: HermitianSpace,
    pub frame: Frame,
    pub roots: Vec<Root>,
    pub projective: Vec<ProjectiveRoot>,
    /// Projective class of each root.
    pub proj_of_root: Vec<usize>,
    index: HashMap<Vector, usize>,
}

impl RootSystem {
    pub fn ring(&self) -> RingId {
        self.space.ring
    }

    pub fn rank(&self) -> usize {
        self.space.dim
    }

    /// Index of a root given in basis coordinates.
    pub fn root_index(&self, v: &[RingElement]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Projective class of a nonzero multiple of a root.
    pub fn projective_index(&self, v: &[RingElement]) -> Option<usize> {
        self.root_index(v).map(|i| self.proj_of_root[i])
    }

    /// Generating reflection of projective root `i`.
    pub fn generator(&self, i: usize) -> Matrix {
        let pr = &self.projective[i];
        let u = root_of_unity(self.ring(), pr.gen_order).expect("checked at build");
        self.space
            .reflection_matrix(&pr.rep.vec, &u)
            .expect("checked at build")
    }

    /// Canonical text of projective root `i` (ambient coordinates).
    pub fn text(&self, i: usize) -> Vec<String> {
        self.projective[i]
            .rep
            .ambient
            .iter()
            .map(|x| x.to_string())
            .collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.ambient_gram.rows()
    }
}

/// JSON dump of a root system.
#[derive(Serialize, Debug, Clone)]
pub struct RootSystemJson {
    pub group: String,
    pub ring: RingId,
    pub dim: usize,
    pub roots: Vec<Vec<String>>,
    pub projective_count: usize,
    pub root_count: usize,
    pub norms: Vec<String>,
    pub gram: Vec<Vec<String>>,
}

impl RootSystem {
    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            group: self.group.to_string(),
            ring: self.ring(),
            dim: self.ambient_dim(),
            roots: (0..self.projective.len()).map(|i| self.text(i)).collect(),
            projective_count: self.projective.len(),
            root_count: self.roots.len(),
            norms: self
                .projective
                .iter()
                .map(|p| p.rep.norm.to_string())
                .collect(),
            gram: self.space.gram.to_text(),
        }
    }
}

pub fn build_root_system(group: GroupId) -> Result<RootSystem, LatticeError> {
    build_from_config(config(group), DEFAULT_CLOSURE_CAP)
}

pub fn build_from_config(cfg: GroupConfig, cap: usize) -> Result<RootSystem, LatticeError> {
    let ring = cfg.ring;
    let (seeds, ambient_gram, scale) = match &cfg.construction {
        Construction::Standard { seeds, scale } => {
            let m = seeds[0].len();
            (seeds.clone(), Matrix::identity(ring, m), *scale)
        }
        Construction::Gram { seeds, gram } => (seeds.clone(), gram.clone(), 1),
    };
    let scale_el = RingElement::from_int(ring, scale);
    let order_of = |n: &RingElement| cfg.order_for_norm(n);
    let reps = closure_under_reflections(&ambient_gram, &seeds, &order_of, cap)?;
    let (basis, pivots) = module_basis(&reps)?;
    let frame = Frame {
        basis,
        pivots,
        ambient_gram: ambient_gram.clone(),
        scale,
    };
    let n = frame.basis.len();
    let mut gram = Matrix::zeros(ring, n, n);
    for i in 0..n {
        for j in 0..n {
            let v = form(&ambient_gram, &frame.basis[i], &frame.basis[j]);
            let v = v.div_exact(&scale_el).ok_or(LatticeError::NotInLattice)?;
            gram.set(i, j, v);
        }
    }
    let space = HermitianSpace::new(gram);
    let us = units(ring);

    // canonical representatives: least unit multiple by ambient text
    let mut proj: Vec<(Vec<String>, Vector)> = reps
        .iter()
        .map(|r| {
            us.iter()
                .map(|u| {
                    let x: Vector = r.iter().map(|c| *u * *c).collect();
                    (x.iter().map(|c| c.to_string()).collect::<Vec<_>>(), x)
                })
                .min_by(|a, b| a.0.cmp(&b.0))
                .unwrap()
        })
        .collect();
    proj.sort_by(|a, b| a.0.cmp(&b.0));

    let mut roots = Vec::new();
    let mut proj_of_root = Vec::new();
    let mut index = HashMap::new();
    let mut projective = Vec::new();
    for (pi, (_, amb)) in proj.iter().enumerate() {
        let vec = frame.to_basis(amb)?;
        let amb_norm = form(&ambient_gram, amb, amb);
        let gen_order = cfg
            .order_for_norm(&amb_norm)
            .ok_or_else(|| LatticeError::UnknownNorm(amb_norm.to_string()))?;
        let norm = space.norm(&vec);
        let rep = Root {
            vec: vec.clone(),
            ambient: amb.clone(),
            norm,
            refl_orders: Vec::new(),
        };
        for u in &us {
            let x: Vector = vec.iter().map(|c| *u * *c).collect();
            let a: Vector = amb.iter().map(|c| *u * *c).collect();
            index.insert(x.clone(), roots.len());
            proj_of_root.push(pi);
            roots.push(Root {
                vec: x,
                ambient: a,
                norm,
                refl_orders: Vec::new(),
            });
        }
        projective.push(ProjectiveRoot {
            rep,
            orbit_size: us.len(),
            gen_order,
        });
    }
    let mut rs = RootSystem {
        group: cfg.id,
        config: cfg,
        space,
        frame,
        roots,
        projective,
        proj_of_root,
        index,
    };
    // reflection orders admitted by the lattice and the root set
    let one = RingElement::one(ring);
    let mut all_orders = Vec::new();
    for i in 0..rs.projective.len() {
        let mut orders = Vec::new();
        for u in us.iter().filter(|u| **u != one) {
            let Ok(m) = rs.space.reflection_matrix(&rs.projective[i].rep.vec, u) else {
                continue;
            };
            let ok = rs
                .projective
                .iter()
                .all(|p| rs.index.contains_key(&m.apply(&p.rep.vec)));
            if ok {
                orders.push(unit_order(u));
            }
        }
        orders.sort();
        orders.dedup();
        all_orders.push(orders);
    }
    for (i, o) in all_orders.into_iter().enumerate() {
        rs.projective[i].rep.refl_orders = o.clone();
        for r in rs.roots.iter_mut().skip(i * us.len()).take(us.len()) {
            r.refl_orders = o.clone();
        }
    }
    Ok(rs)
}

/// The named lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LatticeName {
    E2E,
    E4E,
    E6E,
    E8E,
    K10E,
    K12E,
    D4G,
    E8G,
}

#[derive(Clone, Debug)]
pub struct NamedLattice {
    pub name: LatticeName,
    /// Basis vectors in the ambient coordinates of the construction.
    pub basis: Vec<Vector>,
    pub space: HermitianSpace,
}

/// Gram matrix of `E_{2k}^E`: norms 3 and `⟨x_i, x_{i+1}⟩ = −p`.
pub fn eisenstein_path_gram(k: usize) -> Matrix {
    let e = RingId::Eisenstein;
    let p = RingElement::parse(e, "2+w").unwrap();
    let mut g = Matrix::zeros(e, k, k);
    for i in 0..k {
        g.set(i, i, RingElement::from_int(e, 3));
        if i + 1 < k {
            g.set(i, i + 1, -p);
            g.set(i + 1, i, -p.conj());
        }
    }
    g
}

pub fn named_lattice(name: LatticeName) -> Result<NamedLattice, LatticeError> {
    let path = |k: usize| {
        let g = eisenstein_path_gram(k);
        let basis = Matrix::identity(RingId::Eisenstein, k).row_vectors();
        Ok(NamedLattice {
            name,
            basis,
            space: HermitianSpace::new(g),
        })
    };
    let from_group = |g: u32| -> Result<NamedLattice, LatticeError> {
        let rs = build_root_system(GroupId::Exceptional(g))?;
        Ok(NamedLattice {
            name,
            basis: rs.frame.basis.clone(),
            space: rs.space.clone(),
        })
    };
    match name {
        LatticeName::E2E => path(1),
        LatticeName::E4E => path(2),
        LatticeName::E6E => path(3),
        LatticeName::E8E => path(4),
        LatticeName::K10E => from_group(33),
        LatticeName::K12E => from_group(34),
        LatticeName::D4G => from_group(8),
        LatticeName::E8G => from_group(29),
    }
}

/// True iff every basis inner product lies in `θE`.
pub fn check_theta_condition(l: &NamedLattice) -> bool {
    gram_in_theta(&l.space.gram)
}

pub fn gram_in_theta(g: &Matrix) -> bool {
    let theta = RingElement::parse(RingId::Eisenstein, "1+2w").unwrap();
    (0..g.rows()).all(|i| (0..g.cols()).all(|j| theta.divides(&g.get(i, j))))
}

/// Real form of an Eisenstein lattice: `Z`-basis `x_i, ω x_i` with the
/// bilinear form `(2/3) Re⟨x, y⟩`.
pub fn real_form_gram(g: &Matrix) -> Vec<Vec<BigRational>> {
    let e = RingId::Eisenstein;
    assert_eq!(g.ring(), e);
    let n = g.rows();
    let w = RingElement::generator(e);
    let one = RingElement::one(e);
    let scal = [one, w];
    let mut out = vec![vec![BigRational::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for a in 0..2 {
            for j in 0..n {
                for b in 0..2 {
                    let z = scal[a].conj() * scal[b] * g.get(i, j);
                    let c = z.coeffs();
                    // Re(c0 + c1 ω) = c0 − c1/2; times 2/3
                    let num = BigInt::from(2 * c[0] - c[1]);
                    out[2 * i + a][2 * j + b] = BigRational::new(num, BigInt::from(3));
                }
            }
        }
    }
    out
}

/// Discriminant and number of norm-2 vectors of the real form.
pub fn real_form_stats(l: &NamedLattice) -> (i64, usize) {
    real_form_stats_gram(&l.space.gram)
}

pub fn real_form_stats_gram(g: &Matrix) -> (i64, usize) {
    let rg = real_form_gram(g);
    let det = rational_det(rg.clone());
    let disc = det.to_integer().to_i64().expect("small discriminant");
    let count = count_vectors_of_norm(&rg, 2);
    (disc, count)
}

/// Counts `v ∈ Z^n` with `vᵀ A v = target` by Fincke–Pohst enumeration.
pub fn count_vectors_of_norm(a: &[Vec<BigRational>], target: i64) -> usize {
    vectors_of_norm(a, target).len()
}

/// All `v ∈ Z^n` with `vᵀ A v = target` for a positive definite `A`.
pub fn vectors_of_norm(a: &[Vec<BigRational>], target: i64) -> Vec<Vec<i64>> {
    let n = a.len();
    let af: Vec<Vec<f64>> = a
        .iter()
        .map(|r| r.iter().map(|x| x.to_f64().unwrap()).collect())
        .collect();
    // Cholesky-style decomposition q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)²
    let mut q = af.clone();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let bound = target as f64 + 1e-6;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(
        i: usize,
        rem: f64,
        q: &[Vec<f64>],
        x: &mut Vec<i64>,
        a: &[Vec<BigRational>],
        target: i64,
        out: &mut Vec<Vec<i64>>,
    ) {
        let n = q.len();
        let c: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
        let r = (rem / q[i][i]).max(0.0).sqrt();
        let lo = (c - r - 1e-9).ceil() as i64;
        let hi = (c + r + 1e-9).floor() as i64;
        for t in lo..=hi {
            x[i] = t;
            let d = t as f64 - c;
            let used = q[i][i] * d * d;
            if used > rem + 1e-9 {
                continue;
            }
            if i == 0 {
                if exact_norm(a, x) == BigRational::from_integer(BigInt::from(target)) {
                    out.push(x.clone());
                }
            } else {
                rec(i - 1, rem - used, q, x, a, target, out);
            }
        }
        x[i] = 0;
    }
    if n > 0 {
        rec(n - 1, bound, &q, &mut x, a, target, &mut out);
    }
    out
}

/// Vectors of an Eisenstein lattice with the given gram and norm, as
/// coordinates in the lattice basis.
pub fn eisenstein_vectors_of_norm(g: &Matrix, norm: i64) -> Vec<Vector> {
    let e = RingId::Eisenstein;
    let rg = real_form_gram(g);
    // real norm is (2/3) of the Hermitian norm
    assert_eq!((2 * norm) % 3, 0, "norm must be a multiple of 3");
    vectors_of_norm(&rg, 2 * norm / 3)
        .into_iter()
        .map(|z| {
            z.chunks(2)
                .map(|ab| RingElement::from_coeffs(e, &[ab[0], ab[1]]))
                .collect()
        })
        .collect()
}

fn exact_norm(a: &[Vec<BigRational>], x: &[i64]) -> BigRational {
    let mut acc = BigRational::zero();
    for i in 0..x.len() {
        if x[i] == 0 {
            continue;
        }
        for j in 0..x.len() {
            if x[j] != 0 {
                acc += &a[i][j] * BigRational::from_integer(BigInt::from(x[i] * x[j]));
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> RingElement {
        RingElement::parse(RingId::Eisenstein, s).unwrap()
    }

    #[test]
    fn reflection_fixes_mirror_and_scales_root() {
        let g = eisenstein_path_gram(2);
        let sp = HermitianSpace::new(g);
        let x = vec![e("1"), e("0")];
        let w = e("w");
        assert_eq!(sp.reflect(&x, &w, &x).unwrap(), vec![w, e("0")]);
        // y orthogonal to x: ⟨x,y⟩ = 3 y1 − p y2; take y = (p, 3)
        let y = vec![e("2+w"), e("3")];
        assert!(sp.inner(&x, &y).is_zero());
        assert_eq!(sp.reflect(&x, &w, &y).unwrap(), y);
    }

    #[test]
    fn reflection_has_order_of_unit() {
        let sp = HermitianSpace::new(eisenstein_path_gram(3));
        let x = vec![e("0"), e("w"), e("0")];
        let m = sp.reflection_matrix(&x, &e("w")).unwrap();
        assert!(m.pow(3).is_identity());
        assert!(!m.is_identity());
    }

    #[test]
    fn g4_closure() {
        let rs = build_root_system(GroupId::Exceptional(4)).unwrap();
        assert_eq!(rs.projective.len(), 4);
        assert_eq!(rs.roots.len(), 24);
        assert_eq!(rs.rank(), 2);
    }

    #[test]
    fn single_root_orbit() {
        let g = Matrix::identity(RingId::Eisenstein, 1);
        let seeds = vec![vec![e("1")]];
        let reps = closure_under_reflections(&g, &seeds, &|_| Some(3), 10).unwrap();
        assert_eq!(reps.len(), 1);
    }

    #[test]
    fn theta_condition_examples() {
        for n in [LatticeName::E2E, LatticeName::E4E, LatticeName::E6E, LatticeName::E8E] {
            assert!(check_theta_condition(&named_lattice(n).unwrap()));
        }
        let g = Matrix::from_rows(RingId::Eisenstein, &[vec![e("3"), e("1")], vec![e("1"), e("3")]]);
        assert!(!gram_in_theta(&g));
    }

    #[test]
    fn real_forms() {
        let cases = [
            (LatticeName::E2E, 3, 6),
            (LatticeName::E4E, 4, 24),
            (LatticeName::E6E, 3, 72),
            (LatticeName::E8E, 1, 240),
        ];
        for (n, disc, count) in cases {
            let l = named_lattice(n).unwrap();
            assert_eq!(real_form_stats(&l), (disc, count), "{n:?}");
        }
    }
}
