//! The map α, the functional sym, fixed-point iteration and the selection of
//! simple systems from the mirrors closest to a fixed point.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagrams::Diagram;
use crate::group::{GroupError, ReflectionGroup};
use crate::linalg::{form_f64, Matrix};
use crate::rings::RingId;

type C = Complex64;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum WeylError {
    #[error("vector lies on a mirror (distance {0:e}); reseed")]
    OnMirror(f64),
    #[error("zero vector")]
    Zero,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Iteration parameters.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct WeylParams {
    pub tol: f64,
    pub max_iter: usize,
    /// Number of consecutive small steps required.
    pub window: usize,
    /// Exponent `e` in the weight `o(r)^{-e}`.
    pub weight_exponent: f64,
}

impl Default for WeylParams {
    fn default() -> Self {
        WeylParams {
            tol: 1e-8,
            max_iter: 100_000,
            window: 20,
            weight_exponent: 2.0,
        }
    }
}

/// Minimum relative distance `|⟨r,w⟩|/(|r||w|)` a start vector must keep
/// from every mirror.
pub const START_MIRROR_MARGIN: f64 = 1e-6;
/// Distances closer than this at the `k`-th cut are reported as ties.
pub const TIE_TOL: f64 = 1e-6;
/// Squared step size at which post-convergence polishing stops.
pub const POLISH_TOL: f64 = 1e-26;
/// Sym values closer than this fall in one cluster.
pub const SYM_CLUSTER_TOL: f64 = 1e-6;

/// Float data for α and sym over the projective roots of a group.
pub struct WeylSetup {
    pub group: ReflectionGroup,
    /// `o(r)` for each projective root.
    pub orders: Vec<u32>,
    pub params: WeylParams,
    gram: Vec<Vec<C>>,
    /// Root vectors (basis coordinates) scaled to unit length.
    unit_roots: Vec<Vec<C>>,
    /// `G r / |r|`, so that `⟨r,w⟩/|r| = Σ conj(a_j) w_j`.
    duals: Vec<Vec<C>>,
    weights: Vec<f64>,
    texts: Vec<String>,
}

impl WeylSetup {
    pub fn new(group: ReflectionGroup, params: WeylParams) -> Self {
        let orders: Vec<u32> = (0..group.rs.projective.len())
            .map(|i| group.mirror_order(i))
            .collect();
        Self::with_orders(group, orders, params)
    }

    /// Uses the given `o(r)` instead of computing them from the group.
    pub fn with_orders(group: ReflectionGroup, orders: Vec<u32>, params: WeylParams) -> Self {
        let rs = &group.rs;
        let gram = rs.space.gram.embed();
        let mut unit_roots = Vec::new();
        let mut duals = Vec::new();
        let mut weights = Vec::new();
        let mut texts = Vec::new();
        for (i, pr) in rs.projective.iter().enumerate() {
            let v: Vec<C> = pr.rep.vec.iter().map(|x| x.embed()).collect();
            let n = form_f64(&gram, &v, &v).re.sqrt();
            let u: Vec<C> = v.iter().map(|x| x / n).collect();
            let d: Vec<C> = (0..v.len())
                .map(|j| (0..v.len()).map(|k| gram[j][k] * u[k]).sum())
                .collect();
            unit_roots.push(u);
            duals.push(d);
            let o = orders[i] as f64;
            weights.push(if params.weight_exponent == 0.0 {
                1.0
            } else {
                o.powf(-params.weight_exponent)
            });
            texts.push(rs.text(i).join(","));
        }
        WeylSetup {
            group,
            orders,
            params,
            gram,
            unit_roots,
            duals,
            weights,
            texts,
        }
    }

    pub fn rank(&self) -> usize {
        self.group.rs.rank()
    }

    pub fn num_projective(&self) -> usize {
        self.unit_roots.len()
    }

    pub fn norm(&self, w: &[C]) -> f64 {
        form_f64(&self.gram, w, w).re.max(0.0).sqrt()
    }

    /// `⟨r, w⟩ / |r|` for projective root `i`.
    pub fn pairing(&self, i: usize, w: &[C]) -> C {
        self.duals[i].iter().zip(w).map(|(a, b)| a.conj() * b).sum()
    }

    /// `sin d(r^⊥, w) = |⟨r,w⟩| / (|r||w|)` for every projective root.
    pub fn sin_distances(&self, w: &[C]) -> Vec<f64> {
        let n = self.norm(w);
        (0..self.num_projective())
            .map(|i| self.pairing(i, w).norm() / n)
            .collect()
    }

    /// `α(w) = Σ o(r)^{-e} (⟨r,w⟩/|⟨r,w⟩|) r/|r|`.
    pub fn alpha(&self, w: &[C]) -> Result<Vec<C>, WeylError> {
        let nw = self.norm(w);
        if nw == 0.0 {
            return Err(WeylError::Zero);
        }
        let mut out = vec![C::new(0.0, 0.0); w.len()];
        for i in 0..self.num_projective() {
            let ip = self.pairing(i, w);
            let a = ip.norm();
            if a / nw < 1e-12 {
                return Err(WeylError::OnMirror(a / nw));
            }
            let c = ip / a * self.weights[i];
            for (o, r) in out.iter_mut().zip(&self.unit_roots[i]) {
                *o += c * r;
            }
        }
        Ok(out)
    }

    /// `sym(w) = Σ μ_r |⟨r,w⟩| / |w|` with `μ_r = |r|^{-1} o(r)^{-e}`.
    pub fn sym(&self, w: &[C]) -> f64 {
        let nw = self.norm(w);
        (0..self.num_projective())
            .map(|i| self.weights[i] * self.pairing(i, w).norm())
            .sum::<f64>()
            / nw
    }

    /// Fubini–Study distance from `w` to the mirror of projective root `i`.
    pub fn fs_distance(&self, i: usize, w: &[C]) -> f64 {
        let s = self.pairing(i, w).norm() / self.norm(w);
        s.clamp(0.0, 1.0).asin()
    }

    /// A random start in basis coordinates. Real parts only for groups over
    /// the rational integers.
    pub fn random_start(&self, rng: &mut impl Rng) -> Vec<C> {
        let real = matches!(
            self.group.rs.ring(),
            RingId::Integers | RingId::Cyclotomic(1) | RingId::Cyclotomic(2)
        );
        loop {
            let w: Vec<C> = (0..self.rank())
                .map(|_| {
                    let re = rng.random_range(-1.0..=1.0);
                    let im = if real { 0.0 } else { rng.random_range(-1.0..=1.0) };
                    C::new(re, im)
                })
                .collect();
            if self.norm(&w) == 0.0 {
                continue;
            }
            let min = self.sin_distances(&w).into_iter().fold(f64::INFINITY, f64::min);
            if min >= START_MIRROR_MARGIN {
                return w;
            }
        }
    }

    /// Basis coordinates to ambient coordinates.
    pub fn to_ambient(&self, w: &[C]) -> Vec<C> {
        self.group.rs.frame.to_ambient_f64(w)
    }

    /// Ambient coordinates to basis coordinates.
    pub fn from_ambient(&self, x: &[C]) -> Vec<C> {
        self.group.rs.frame.to_basis_f64(x)
    }
}

/// Result of one run of the iteration.
#[derive(Clone, Debug, Serialize)]
pub struct WeylState {
    /// Basis coordinates; at convergence scaled so that `|w| = sym(w)`.
    /// After the stopping rule fires the iteration continues until the step
    /// stops shrinking, and `w` is that refined vector.
    pub w: Vec<[f64; 2]>,
    /// The iterate at which the stopping rule fired, scaled the same way.
    /// Δ(w) is read off this vector.
    pub w_stop: Vec<[f64; 2]>,
    pub sym_value: f64,
    /// Index of the first step of the successful window, or the number of
    /// steps taken when not converged.
    pub iterations: usize,
    pub converged: bool,
    pub trial_seed: u64,
    /// `|α(w) − w| / |w|` at the final vector.
    pub residual: f64,
    /// Steps after the first where sym decreased by more than `1e-9`.
    pub sym_decreases: usize,
}

impl WeylState {
    pub fn vector(&self) -> Vec<C> {
        self.w.iter().map(|z| C::new(z[0], z[1])).collect()
    }

    pub fn stop_vector(&self) -> Vec<C> {
        self.w_stop.iter().map(|z| C::new(z[0], z[1])).collect()
    }
}

fn pack(w: &[C]) -> Vec<[f64; 2]> {
    w.iter().map(|z| [z.re, z.im]).collect()
}

fn scale(w: &[C], s: f64) -> Vec<C> {
    w.iter().map(|z| z * s).collect()
}

/// Iterates `w ↦ α(w)` from `w0`, normalising each iterate.
pub fn iterate_from(setup: &WeylSetup, w0: &[C], seed: u64) -> Result<WeylState, WeylError> {
    let p = setup.params;
    let n0 = setup.norm(w0);
    if n0 == 0.0 {
        return Err(WeylError::Zero);
    }
    let mut w = scale(w0, 1.0 / n0);
    let mut run = 0usize;
    let mut prev_sym = f64::NEG_INFINITY;
    let mut decreases = 0;
    for n in 0..p.max_iter {
        let a = setup.alpha(&w)?;
        let na = setup.norm(&a);
        let next = scale(&a, 1.0 / na);
        let diff: Vec<C> = next.iter().zip(&w).map(|(x, y)| x - y).collect();
        let ratio = setup.norm(&diff).powi(2);
        let s = setup.sym(&next);
        if n > 0 && s < prev_sym - 1e-9 {
            decreases += 1;
        }
        prev_sym = s;
        w = next;
        if ratio < p.tol {
            run += 1;
            if run >= p.window {
                let polished = polish(setup, w.clone(), p.max_iter - n)?;
                return Ok(finish(setup, &w, &polished, n + 1 - p.window, true, seed, decreases));
            }
        } else {
            run = 0;
        }
    }
    Ok(finish(setup, &w, &w, p.max_iter, false, seed, decreases))
}

/// Keeps iterating after convergence is detected until the step stops
/// shrinking, so that sym values are accurate well below the cluster
/// tolerance.
fn polish(setup: &WeylSetup, mut w: Vec<C>, budget: usize) -> Result<Vec<C>, WeylError> {
    let mut best = f64::INFINITY;
    let mut stale = 0;
    for _ in 0..budget {
        let a = setup.alpha(&w)?;
        let next = scale(&a, 1.0 / setup.norm(&a));
        let diff: Vec<C> = next.iter().zip(&w).map(|(x, y)| x - y).collect();
        let ratio = setup.norm(&diff).powi(2);
        w = next;
        if ratio < POLISH_TOL {
            break;
        }
        if ratio < best {
            best = ratio;
            stale = 0;
        } else {
            stale += 1;
            if stale >= 500 {
                break;
            }
        }
    }
    Ok(w)
}

fn finish(
    setup: &WeylSetup,
    stop: &[C],
    w: &[C],
    iterations: usize,
    converged: bool,
    seed: u64,
    decreases: usize,
) -> WeylState {
    let s = setup.sym(w);
    let w = scale(w, s / setup.norm(w));
    let stop = scale(stop, setup.sym(stop) / setup.norm(stop));
    let residual = match setup.alpha(&w) {
        Ok(a) => {
            let d: Vec<C> = a.iter().zip(&w).map(|(x, y)| x - y).collect();
            setup.norm(&d) / setup.norm(&w)
        }
        Err(_) => f64::INFINITY,
    };
    WeylState {
        w: pack(&w),
        w_stop: pack(&stop),
        sym_value: s,
        iterations,
        converged,
        trial_seed: seed,
        residual,
        sym_decreases: decreases,
    }
}

/// Draws a random start from `seed` and iterates; a start whose orbit hits a
/// mirror is replaced by a fresh draw from the same stream.
pub fn iterate_to_fixed_point(setup: &WeylSetup, seed: u64) -> WeylState {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    loop {
        let w0 = setup.random_start(&mut rng);
        match iterate_from(setup, &w0, seed) {
            Ok(s) => return s,
            Err(WeylError::OnMirror(_)) => continue,
            Err(e) => panic!("iteration failed: {e}"),
        }
    }
}

/// The `k` projective roots whose mirrors are closest to `w`.
#[derive(Clone, Debug, Serialize)]
pub struct SimpleSystem {
    /// Indices into the group's projective roots.
    pub roots: Vec<usize>,
    pub texts: Vec<String>,
    pub distances: Vec<f64>,
    #[serde(skip)]
    pub gram: Matrix,
    /// Spanning rank equals `min(k, rank)`.
    pub independent: bool,
    /// The `k`-th and `(k+1)`-th distances agree within [`TIE_TOL`].
    pub tie: bool,
}

impl SimpleSystem {
    pub fn diagram(&self) -> Diagram {
        Diagram::new(self.gram.clone()).expect("gram of roots is Hermitian")
    }
}

/// Δ(w): sort projective roots by (distance, text) and keep the first `k`.
pub fn select_simple_system(setup: &WeylSetup, w: &[C], k: usize) -> SimpleSystem {
    select_with_approach(setup, w, None, k)
}

/// Like [`select_simple_system`], but runs of distances tied within
/// `TIE_TOL` at `w` are ordered by their distance from `approach` (an
/// iterate on the way to `w`) before falling back to text.
pub fn select_with_approach(setup: &WeylSetup, w: &[C], approach: Option<&[C]>, k: usize) -> SimpleSystem {
    let mut idx: Vec<(f64, usize)> = (0..setup.num_projective())
        .map(|i| (setup.fs_distance(i, w), i))
        .collect();
    idx.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut start = 0;
    for i in 1..=idx.len() {
        if i == idx.len() || idx[i].0 - idx[i - 1].0 >= TIE_TOL {
            idx[start..i].sort_by(|a, b| {
                let by_approach = match approach {
                    Some(v) => setup.fs_distance(a.1, v).partial_cmp(&setup.fs_distance(b.1, v)).unwrap(),
                    None => std::cmp::Ordering::Equal,
                };
                by_approach.then_with(|| setup.texts[a.1].cmp(&setup.texts[b.1]))
            });
            start = i;
        }
    }
    let k = k.min(idx.len());
    // a tie is only reported when the approach does not separate the cut
    let tie = idx.len() > k
        && k > 0
        && (idx[k].0 - idx[k - 1].0).abs() < TIE_TOL
        && approach.is_none_or(|v| {
            (setup.fs_distance(idx[k].1, v) - setup.fs_distance(idx[k - 1].1, v)).abs() < 1e-12
        });
    let roots: Vec<usize> = idx[..k].iter().map(|x| x.1).collect();
    let rs = &setup.group.rs;
    let vecs: Vec<_> = roots.iter().map(|&i| rs.projective[i].rep.vec.clone()).collect();
    let ring = rs.ring();
    let mut gram = Matrix::zeros(ring, k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, rs.space.inner(&vecs[i], &vecs[j]));
        }
    }
    let rank = if k == 0 { 0 } else { Matrix::from_rows(ring, &vecs).rank() };
    SimpleSystem {
        texts: roots.iter().map(|&i| setup.texts[i].clone()).collect(),
        distances: idx[..k].iter().map(|x| x.0).collect(),
        roots,
        gram,
        independent: rank == k.min(setup.rank()),
        tie,
    }
}

/// Reflection generators for a list of projective roots.
pub fn generators(setup: &WeylSetup, roots: &[usize]) -> Vec<Matrix> {
    roots.iter().map(|&i| setup.group.rs.generator(i)).collect()
}

/// True iff the reflections in `roots` generate the whole group.
pub fn generates(setup: &WeylSetup, roots: &[usize]) -> Result<bool, WeylError> {
    let o = setup.group.subgroup_order(&generators(setup, roots))?;
    Ok(o == setup.group.order())
}

/// Seed of trial `i` derived from the run seed.
pub fn trial_seed(seed: u64, i: u64) -> u64 {
    splitmix64(seed ^ splitmix64(i.wrapping_add(0x5851_f42d_4c95_7f2d)))
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Everything recorded about one trial.
#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    pub state: WeylState,
    /// Index into the report's sym clusters.
    pub cluster: Option<usize>,
    pub simple: Option<SimpleSystem>,
    /// Index into the report's diagram classes.
    pub class: Option<usize>,
    pub generates: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymCluster {
    pub value: f64,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramClassCount {
    pub gram: Vec<Vec<String>>,
    pub count: usize,
    /// Among these, how many were independent.
    pub independent: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationCheck {
    pub group_order: String,
    /// Max-sym trials whose Δ(w) was tested.
    pub tested: usize,
    pub generating: usize,
    /// Independent max-sym trials, and how many of them generate.
    pub independent: usize,
    pub independent_generating: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub group: String,
    pub trials: usize,
    pub seed: u64,
    pub k: usize,
    pub converged: usize,
    pub sym_values: Vec<SymCluster>,
    /// Classes of Δ(w) over the max-sym trials, by canonical gram.
    pub diagram_class_counts: Vec<DiagramClassCount>,
    pub generation_check: GenerationCheck,
    pub ties: usize,
    pub sym_decrease_events: usize,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

impl TrialReport {
    /// Diagram of the most frequent independent class.
    pub fn main_class(&self) -> Option<usize> {
        (0..self.diagram_class_counts.len())
            .filter(|&c| self.diagram_class_counts[c].independent > 0)
            .max_by_key(|&c| self.diagram_class_counts[c].independent)
    }

    /// First independent, generating simple system of the main class.
    pub fn representative(&self) -> Option<&SimpleSystem> {
        let main = self.main_class()?;
        self.records
            .iter()
            .filter(|r| r.class == Some(main) && r.generates != Some(false))
            .filter_map(|r| r.simple.as_ref())
            .find(|s| s.independent)
    }

    pub fn summary_line(&self) -> String {
        let syms: Vec<String> = self
            .sym_values
            .iter()
            .map(|c| format!("{:.9}x{}", c.value, c.count))
            .collect();
        format!(
            "{}: {}/{} converged; sym clusters [{}]; {} diagram classes; {}/{} max-sym systems generate",
            self.group,
            self.converged,
            self.trials,
            syms.join(", "),
            self.diagram_class_counts.len(),
            self.generation_check.generating,
            self.generation_check.tested,
        )
    }
}

/// Groups sorted values into clusters whose consecutive gaps are below `tol`.
pub fn cluster_values(values: &[f64], tol: f64) -> Vec<(f64, Vec<usize>)> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut out: Vec<(f64, Vec<usize>)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for i in idx {
        let v = values[i];
        match out.last_mut() {
            Some(c) if v - last < tol * v.abs().max(1.0) => c.1.push(i),
            _ => out.push((v, vec![i])),
        }
        last = v;
    }
    for c in out.iter_mut() {
        c.0 = c.1.iter().map(|&i| values[i]).sum::<f64>() / c.1.len() as f64;
    }
    out
}

/// Runs `n` independent trials in parallel and merges them by trial index.
pub fn run_trials(setup: &WeylSetup, n: usize, seed: u64) -> Result<TrialReport, WeylError> {
    let k = setup.group.rs.config.k;
    let states: Vec<WeylState> = (0..n)
        .into_par_iter()
        .map(|i| iterate_to_fixed_point(setup, trial_seed(seed, i as u64)))
        .collect();
    let mut records: Vec<TrialRecord> = states
        .into_iter()
        .enumerate()
        .map(|(index, state)| TrialRecord {
            index,
            state,
            cluster: None,
            simple: None,
            class: None,
            generates: None,
        })
        .collect();
    let conv: Vec<usize> = (0..n).filter(|&i| records[i].state.converged).collect();
    let values: Vec<f64> = conv.iter().map(|&i| records[i].state.sym_value).collect();
    let clusters = cluster_values(&values, SYM_CLUSTER_TOL);
    for (c, (_, members)) in clusters.iter().enumerate() {
        for &m in members {
            records[conv[m]].cluster = Some(c);
        }
    }
    let top = clusters.len().checked_sub(1);
    let max_trials: Vec<usize> = conv
        .iter()
        .copied()
        .filter(|&i| records[i].cluster.is_some() && records[i].cluster == top)
        .collect();

    let systems: Vec<(usize, SimpleSystem)> = max_trials
        .par_iter()
        .map(|&i| {
            let st = &records[i].state;
            let approach = st.stop_vector();
            (i, select_with_approach(setup, &st.vector(), Some(&approach), k))
        })
        .collect();

    let mut class_keys: Vec<Diagram> = Vec::new();
    let mut class_counts: Vec<DiagramClassCount> = Vec::new();
    let mut sets: BTreeMap<Vec<usize>, Option<bool>> = BTreeMap::new();
    for (_, s) in &systems {
        let mut key = s.roots.clone();
        key.sort();
        sets.insert(key, None);
    }
    let keys: Vec<Vec<usize>> = sets.keys().cloned().collect();
    let gen_results: Vec<Result<bool, WeylError>> = keys.par_iter().map(|r| generates(setup, r)).collect();
    let mut gen_map: HashMap<Vec<usize>, bool> = HashMap::new();
    for (key, r) in keys.into_iter().zip(gen_results) {
        gen_map.insert(key, r?);
    }

    let mut check = GenerationCheck {
        group_order: setup.group.order().to_string(),
        tested: 0,
        generating: 0,
        independent: 0,
        independent_generating: 0,
    };
    let mut ties = 0;
    for (i, s) in systems {
        let canon = s.diagram().canonical_form();
        let c = match class_keys.iter().position(|d| *d == canon) {
            Some(c) => c,
            None => {
                class_counts.push(DiagramClassCount {
                    gram: canon.gram().to_text(),
                    count: 0,
                    independent: 0,
                });
                class_keys.push(canon);
                class_keys.len() - 1
            }
        };
        class_counts[c].count += 1;
        let mut key = s.roots.clone();
        key.sort();
        let g = gen_map[&key];
        check.tested += 1;
        if g {
            check.generating += 1;
        }
        if s.independent {
            class_counts[c].independent += 1;
            check.independent += 1;
            if g {
                check.independent_generating += 1;
            }
        }
        if s.tie {
            ties += 1;
        }
        records[i].class = Some(c);
        records[i].generates = Some(g);
        records[i].simple = Some(s);
    }
    Ok(TrialReport {
        group: setup.group.rs.group.to_string(),
        trials: n,
        seed,
        k,
        converged: conv.len(),
        sym_values: clusters
            .iter()
            .map(|(v, m)| SymCluster {
                value: *v,
                count: m.len(),
            })
            .collect(),
        diagram_class_counts: class_counts,
        generation_check: check,
        ties,
        sym_decrease_events: records.iter().map(|r| r.state.sym_decreases).sum(),
        records,
    })
}

/// `ρ^{(n)} = (1, 1+√2, …, 1+(n−1)√2)`.
pub fn rho_n(n: usize) -> Vec<f64> {
    (0..n).map(|i| 1.0 + i as f64 * 2f64.sqrt()).collect()
}

/// Δ(ρ^{(n)}) for a group acting on ℂ^n in its standard coordinates.
pub fn rho_simple_system(setup: &WeylSetup) -> SimpleSystem {
    let n = setup.group.rs.frame.ambient_gram.rows();
    let w: Vec<C> = rho_n(n).into_iter().map(|x| C::new(x, 0.0)).collect();
    select_simple_system(setup, &setup.from_ambient(&w), setup.group.rs.config.k)
}

/// Hill-climbs `min_r d(r^⊥, w)` from a seeded random start: each step moves
/// `w` along the phase-aligned sum of the nearly closest roots and halves the
/// step when no improvement results. Returns basis coordinates.
pub fn max_mirror_distance(setup: &WeylSetup, seed: u64, step: f64, iters: usize) -> Vec<C> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let w0 = setup.random_start(&mut rng);
    climb_from(setup, &w0, step, iters)
}

pub fn climb_from(setup: &WeylSetup, w0: &[C], step: f64, iters: usize) -> Vec<C> {
    let min_dist = |w: &[C]| {
        (0..setup.num_projective())
            .map(|i| setup.fs_distance(i, w))
            .fold(FRAC_PI_2, f64::min)
    };
    let mut w = scale(w0, 1.0 / setup.norm(w0));
    let mut cur = min_dist(&w);
    let mut h = step;
    for _ in 0..iters {
        if h < 1e-14 {
            break;
        }
        let d: Vec<f64> = (0..setup.num_projective()).map(|i| setup.fs_distance(i, &w)).collect();
        let mut dir = vec![C::new(0.0, 0.0); w.len()];
        for (i, &di) in d.iter().enumerate() {
            if di <= cur + h {
                let ip = setup.pairing(i, &w);
                let c = ip / ip.norm().max(1e-300);
                for (o, r) in dir.iter_mut().zip(&setup.unit_roots[i]) {
                    *o += c * r;
                }
            }
        }
        let nd = setup.norm(&dir);
        if nd == 0.0 {
            break;
        }
        let cand: Vec<C> = w.iter().zip(&dir).map(|(a, b)| a + b * (h / nd)).collect();
        let cand = scale(&cand, 1.0 / setup.norm(&cand));
        let val = min_dist(&cand);
        if val > cur {
            w = cand;
            cur = val;
        } else {
            h /= 2.0;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{GroupId, WeylType};
    use crate::lattices::build_root_system;

    fn setup(id: GroupId, exp: f64) -> WeylSetup {
        let rs = build_root_system(id).unwrap();
        let g = ReflectionGroup::full(rs).unwrap();
        WeylSetup::new(
            g,
            WeylParams {
                weight_exponent: exp,
                ..Default::default()
            },
        )
    }

    #[test]
    fn b3_alpha_of_123() {
        let s = setup(GroupId::Weyl(WeylType::B, 3), 0.0);
        let w = s.from_ambient(&[C::new(1.0, 0.0), C::new(2.0, 0.0), C::new(3.0, 0.0)]);
        let a = s.to_ambient(&s.alpha(&w).unwrap());
        for (x, y) in a.iter().zip(rho_n(3)) {
            assert!((x - C::new(y, 0.0)).norm() < 1e-12, "{a:?}");
        }
    }

    #[test]
    fn sym_is_scale_invariant() {
        let s = setup(GroupId::Exceptional(4), 2.0);
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let w = s.random_start(&mut rng);
        let w2 = scale(&w, 7.5);
        assert!((s.sym(&w) - s.sym(&w2)).abs() < 1e-12);
    }

    #[test]
    fn splitmix_seeds_differ() {
        assert_ne!(trial_seed(1, 0), trial_seed(1, 1));
        assert_eq!(trial_seed(5, 9), trial_seed(5, 9));
    }

    #[test]
    fn clusters() {
        let c = cluster_values(&[1.0, 2.0, 1.0 + 1e-9, 2.0 - 1e-9], 1e-6);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].1.len(), 2);
    }
}
