//! Words, positive homogeneous relations `P(m; x₀..x_{k−1})`, finite
//! presentations and their evaluation in permutation groups.

pub mod braid;
pub mod coset;
pub mod lemmas;
pub mod verify;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::group::Perm;

pub use coset::{certify_order, todd_coxeter, CosetStatus, CosetTable, Certification};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generator {0} out of range")]
    Generator(usize),
    #[error("coset enumeration exceeded {0} cosets")]
    Capped(usize),
    #[error("{0}")]
    Certification(String),
}

/// A freely reduced word; each letter is a generator index and an exponent ±1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Word {
    letters: Vec<(usize, i8)>,
}

impl Word {
    pub fn new(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::new();
        for (g, e) in letters {
            assert!(e == 1 || e == -1, "exponent must be ±1");
            match out.last() {
                Some(&(h, f)) if h == g && f == -e => {
                    out.pop();
                }
                _ => out.push((g, e)),
            }
        }
        Word { letters: out }
    }

    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(g: usize) -> Self {
        Word { letters: vec![(g, 1)] }
    }

    /// Product of the listed generators, all with exponent 1.
    pub fn positive(gens: &[usize]) -> Self {
        Word::new(gens.iter().map(|&g| (g, 1)))
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn mul(&self, o: &Word) -> Word {
        Word::new(self.letters.iter().chain(o.letters.iter()).copied())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `c_x(y) = x y x⁻¹`.
    pub fn conj(x: &Word, y: &Word) -> Word {
        x.mul(y).mul(&x.inverse())
    }

    /// Replaces generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut w = Word::identity();
        for &(g, e) in &self.letters {
            let img = if e > 0 { images[g].clone() } else { images[g].inverse() };
            w = w.mul(&img);
        }
        w
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.0).max()
    }

    pub fn generators(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.letters.iter().map(|l| l.0).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// Evaluates the word as a permutation; the product `xy` acts as `y`
    /// first, matching matrix multiplication on column vectors.
    pub fn eval(&self, gens: &[Perm]) -> Perm {
        let n = gens.first().map(|p| p.degree()).unwrap_or(0);
        let mut acc = Perm::identity(n);
        for &(g, e) in &self.letters {
            let p = if e > 0 { gens[g].clone() } else { gens[g].inverse() };
            acc = p.then(&acc);
        }
        acc
    }

    /// Text with 1-based generator numbers, inverses negative.
    pub fn to_numbers(&self) -> String {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| format!("{}", (g as i64 + 1) * e as i64))
            .collect();
        parts.join(" ")
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| {
                let n = names.get(g).cloned().unwrap_or_else(|| format!("x{}", g + 1));
                if e > 0 {
                    n
                } else {
                    format!("{n}^-1")
                }
            })
            .collect();
        parts.join(" ")
    }
}

/// The `P(m; x₀..x_{k−1})` descriptor of a relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PTag {
    pub m: usize,
    pub gens: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
    pub tag: Option<PTag>,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Relation { lhs, rhs, tag: None }
    }

    /// `P(m; x₀..x_{k−1})`: `x₀x₁⋯x_{m−1} = x₁x₂⋯x_m`, indices mod `k`.
    pub fn p(m: usize, gens: &[usize]) -> Self {
        assert!(m >= 2 && !gens.is_empty());
        let k = gens.len();
        let lhs = Word::positive(&(0..m).map(|i| gens[i % k]).collect::<Vec<_>>());
        let rhs = Word::positive(&(1..=m).map(|i| gens[i % k]).collect::<Vec<_>>());
        Relation {
            lhs,
            rhs,
            tag: Some(PTag { m, gens: gens.to_vec() }),
        }
    }

    /// `g^n = 1`.
    pub fn torsion(g: usize, n: usize) -> Self {
        Relation::new(Word::gen(g).pow(n as i64), Word::identity())
    }

    /// `lhs · rhs⁻¹`.
    pub fn relator(&self) -> Word {
        self.lhs.mul(&self.rhs.inverse())
    }

    pub fn generators(&self) -> Vec<usize> {
        let mut g = self.lhs.generators();
        g.extend(self.rhs.generators());
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn substitute(&self, images: &[Word]) -> Relation {
        Relation::new(self.lhs.substitute(images), self.rhs.substitute(images))
    }

    /// Renames generators through `map` (old index → new index).
    pub fn relabel(&self, map: &[usize]) -> Relation {
        let images: Vec<Word> = map.iter().map(|&g| Word::gen(g)).collect();
        Relation {
            lhs: self.lhs.substitute(&images),
            rhs: self.rhs.substitute(&images),
            tag: self.tag.as_ref().map(|t| PTag {
                m: t.m,
                gens: t.gens.iter().map(|&g| map[g]).collect(),
            }),
        }
    }

    pub fn holds(&self, gens: &[Perm]) -> bool {
        self.lhs.eval(gens) == self.rhs.eval(gens)
    }

    pub fn display(&self, names: &[String]) -> String {
        match &self.tag {
            Some(t) => {
                let g: Vec<String> = t.gens.iter().map(|&i| names[i].clone()).collect();
                format!("P({}; {})", t.m, g.join(", "))
            }
            None => format!("{} = {}", self.lhs.display(names), self.rhs.display(names)),
        }
    }
}

/// Exact check of a relation on a permutation assignment of the generators.
pub fn verify_in_group(gens: &[Perm], rel: &Relation) -> bool {
    rel.holds(gens)
}

/// Least `m` in `2..=cap` with `P(m; x, y)` holding, if any.
pub fn pair_relation(x: &Perm, y: &Perm, cap: usize) -> Option<usize> {
    least_p(&[x.clone(), y.clone()], cap)
}

/// Least `m` in `2..=cap` with `P(m; x₀..x_{k−1})` holding, if any.
pub fn least_p(gens: &[Perm], cap: usize) -> Option<usize> {
    let idx: Vec<usize> = (0..gens.len()).collect();
    (2..=cap).find(|&m| Relation::p(m, &idx).holds(gens))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub names: Vec<String>,
    pub relations: Vec<Relation>,
    /// Order `n_i` imposed on generator `i` (`None` means no torsion relation).
    pub torsion: Option<Vec<usize>>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relations: Vec<Relation>, torsion: Option<Vec<usize>>) -> Self {
        Presentation { names, relations, torsion }
    }

    pub fn num_gens(&self) -> usize {
        self.names.len()
    }

    /// `Cox(D, ∞)` from an edge matrix: `m[i][j] = Some(m)` imposes `P(m; i, j)`.
    pub fn coxeter(names: Vec<String>, m: &[Vec<Option<usize>>]) -> Self {
        let n = names.len();
        let mut rels = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if let Some(k) = m[i][j] {
                    rels.push(Relation::p(k, &[i, j]));
                }
            }
        }
        Presentation::new(names, rels, None)
    }

    pub fn with_torsion(mut self, orders: Vec<usize>) -> Self {
        self.torsion = Some(orders);
        self
    }

    pub fn with_relations(mut self, rels: impl IntoIterator<Item = Relation>) -> Self {
        self.relations.extend(rels);
        self
    }

    /// All relators, torsion included, as words equal to 1.
    pub fn relators(&self) -> Vec<Word> {
        let mut out: Vec<Word> = Vec::new();
        if let Some(t) = &self.torsion {
            for (g, &n) in t.iter().enumerate() {
                if n > 0 {
                    out.push(Word::gen(g).pow(n as i64));
                }
            }
        }
        for r in &self.relations {
            let w = r.relator();
            if !w.is_empty() {
                out.push(w);
            }
        }
        out
    }

    /// The relations (and torsion) involving only the generators in `subset`,
    /// renumbered in the order given.
    pub fn restrict(&self, subset: &[usize]) -> Presentation {
        let mut map = vec![usize::MAX; self.num_gens()];
        for (new, &old) in subset.iter().enumerate() {
            map[old] = new;
        }
        let relations = self
            .relations
            .iter()
            .filter(|r| r.generators().iter().all(|&g| map[g] != usize::MAX))
            .map(|r| r.relabel(&map))
            .collect();
        Presentation {
            names: subset.iter().map(|&g| self.names[g].clone()).collect(),
            relations,
            torsion: self.torsion.as_ref().map(|t| subset.iter().map(|&g| t[g]).collect()),
        }
    }

    /// Relations (with their display text) that fail on the assignment.
    pub fn failures(&self, gens: &[Perm]) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(t) = &self.torsion {
            for (g, &n) in t.iter().enumerate() {
                if n > 0 && !gens[g].pow(n as i64).is_identity() {
                    out.push(format!("{}^{} = 1", self.names[g], n));
                }
            }
        }
        for r in &self.relations {
            if !r.holds(gens) {
                out.push(r.display(&self.names));
            }
        }
        out
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The line-based text format read by [`Presentation::from_str`].
    pub fn to_text(&self) -> String {
        let mut s = format!("gens {}\n", self.num_gens());
        s.push_str(&format!("names {}\n", self.names.join(" ")));
        for r in &self.relations {
            match &r.tag {
                Some(t) => {
                    let g: Vec<String> = t.gens.iter().map(|g| (g + 1).to_string()).collect();
                    s.push_str(&format!("rel P {} : {}\n", t.m, g.join(" ")));
                }
                None => s.push_str(&format!("rel W : {} = {}\n", r.lhs.to_numbers(), r.rhs.to_numbers())),
            }
        }
        if let Some(t) = &self.torsion {
            let v: Vec<String> = t.iter().map(|n| n.to_string()).collect();
            s.push_str(&format!("torsion {}\n", v.join(" ")));
        }
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{} | ", self.names.join(", "))?;
        let mut parts: Vec<String> = self.relations.iter().map(|r| r.display(&self.names)).collect();
        if let Some(t) = &self.torsion {
            for (g, n) in t.iter().enumerate() {
                if *n > 0 {
                    parts.push(format!("{}^{}", self.names[g], n));
                }
            }
        }
        write!(f, "{}⟩", parts.join(", "))
    }
}

fn parse_word(text: &str, n: usize, line: usize) -> Result<Word, PresentationError> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let v: i64 = tok.parse().map_err(|_| PresentationError::Parse {
            line,
            msg: format!("bad letter {tok:?}"),
        })?;
        if v == 0 || v.unsigned_abs() as usize > n {
            return Err(PresentationError::Parse {
                line,
                msg: format!("generator {v} out of range"),
            });
        }
        letters.push((v.unsigned_abs() as usize - 1, v.signum() as i8));
    }
    Ok(Word::new(letters))
}

impl FromStr for Presentation {
    type Err = PresentationError;

    /// Lines: `gens N`, optional `names a b ...`, `rel P m : i j k`,
    /// `rel W : 1 2 1 = 2 1 2`, `torsion n1 .. nN`. Generators are 1-based,
    /// negative numbers are inverses, `#` starts a comment.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut n: Option<usize> = None;
        let mut names: Option<Vec<String>> = None;
        let mut relations = Vec::new();
        let mut torsion = None;
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let err = |msg: &str| PresentationError::Parse {
                line,
                msg: msg.to_string(),
            };
            let mut parts = text.splitn(2, char::is_whitespace);
            let key = parts.next().unwrap_or("");
            let rest = parts.next().unwrap_or("").trim();
            match key {
                "gens" => n = Some(rest.parse().map_err(|_| err("bad generator count"))?),
                "names" => names = Some(rest.split_whitespace().map(String::from).collect()),
                "rel" => {
                    let n = n.ok_or_else(|| err("rel before gens"))?;
                    let (head, body) = rest.split_once(':').ok_or_else(|| err("missing ':'"))?;
                    let head: Vec<&str> = head.split_whitespace().collect();
                    match head.as_slice() {
                        ["P", m] => {
                            let m: usize = m.parse().map_err(|_| err("bad m"))?;
                            let w = parse_word(body, n, line)?;
                            if m < 2 || w.is_empty() || w.letters().iter().any(|l| l.1 < 0) {
                                return Err(err("P needs m >= 2 and positive generators"));
                            }
                            let gens: Vec<usize> = w.letters().iter().map(|l| l.0).collect();
                            relations.push(Relation::p(m, &gens));
                        }
                        ["W"] => {
                            let (l, r) = body.split_once('=').ok_or_else(|| err("missing '='"))?;
                            relations.push(Relation::new(parse_word(l, n, line)?, parse_word(r, n, line)?));
                        }
                        _ => return Err(err("expected 'P m' or 'W'")),
                    }
                }
                "torsion" => {
                    let v: Result<Vec<usize>, _> = rest.split_whitespace().map(str::parse).collect();
                    torsion = Some(v.map_err(|_| err("bad torsion"))?);
                }
                _ => return Err(err(&format!("unknown keyword {key:?}"))),
            }
        }
        let n = n.ok_or(PresentationError::Parse {
            line: 0,
            msg: "missing gens".into(),
        })?;
        let names = names.unwrap_or_else(|| (1..=n).map(|i| format!("x{i}")).collect());
        if names.len() != n {
            return Err(PresentationError::Parse {
                line: 0,
                msg: "names count differs from gens".into(),
            });
        }
        if let Some(t) = &torsion {
            let t: &Vec<usize> = t;
            if t.len() != n {
                return Err(PresentationError::Parse {
                    line: 0,
                    msg: "torsion count differs from gens".into(),
                });
            }
        }
        Ok(Presentation::new(names, relations, torsion))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_p_examples() {
        let r = Relation::p(2, &[0, 1]);
        assert_eq!(r.lhs, Word::positive(&[0, 1]));
        assert_eq!(r.rhs, Word::positive(&[1, 0]));
        let r = Relation::p(5, &[0, 1]);
        assert_eq!(r.lhs, Word::positive(&[0, 1, 0, 1, 0]));
        assert_eq!(r.rhs, Word::positive(&[1, 0, 1, 0, 1]));
        let r = Relation::p(4, &[0, 1, 2]);
        assert_eq!(r.lhs, Word::positive(&[0, 1, 2, 0]));
        assert_eq!(r.rhs, Word::positive(&[1, 2, 0, 1]));
    }

    #[test]
    fn free_reduction() {
        let w = Word::new([(0, 1), (1, 1), (1, -1), (0, -1), (2, 1)]);
        assert_eq!(w, Word::gen(2));
        let x = Word::positive(&[0, 1]);
        assert!(x.mul(&x.inverse()).is_empty());
    }

    #[test]
    fn text_round_trip() {
        let text = "gens 3\nrel P 4 : 1 2 3\nrel W : 1 2 1 = 2 1 -2\ntorsion 2 2 3\n";
        let p: Presentation = text.parse().unwrap();
        assert_eq!(p.num_gens(), 3);
        assert_eq!(p.relations[0], Relation::p(4, &[0, 1, 2]));
        let q: Presentation = p.to_text().parse().unwrap();
        assert_eq!(p, q);
        assert!("gens 2\nrel P 3 : 1 5\n".parse::<Presentation>().is_err());
        assert!("rel P 3 : 1 2\n".parse::<Presentation>().is_err());
    }

    #[test]
    fn commuting_transpositions() {
        let a = Perm::from_images(vec![1, 0, 2, 3]);
        let b = Perm::from_images(vec![0, 1, 3, 2]);
        assert!(verify_in_group(&[a.clone(), b.clone()], &Relation::p(2, &[0, 1])));
        let c = Perm::from_images(vec![0, 2, 1, 3]);
        assert_eq!(pair_relation(&a, &c, 10), Some(3));
    }

    #[test]
    fn word_evaluation_order() {
        // xy acts as y first
        let x = Perm::from_images(vec![1, 0, 2]);
        let y = Perm::from_images(vec![0, 2, 1]);
        let p = Word::positive(&[0, 1]).eval(&[x.clone(), y.clone()]);
        assert_eq!(p.image(1), x.image(y.image(1)));
    }
}
