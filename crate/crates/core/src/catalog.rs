//! Group identifiers and the configuration each root system is built from:
//! seed roots, the reflection order attached to each root norm, and known
//! orders and degrees used as cross-checks.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::linalg::{Matrix, Vector};
use crate::rings::{units, RingElement, RingId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeylType {
    A,
    B,
    D,
    E,
}

/// Identifies a reflection group with a built-in root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupId {
    /// Shephard–Todd exceptional group `G_n`.
    Exceptional(u32),
    /// `G(de, e, n)`, stored as `(m, e, n)` with `m = de`.
    Imprimitive { m: u32, e: u32, n: u32 },
    Weyl(WeylType, u32),
}

pub const EXCEPTIONAL: [u32; 14] = [4, 5, 6, 8, 9, 12, 24, 25, 26, 29, 31, 32, 33, 34];

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown group {0:?}")]
    Unknown(String),
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Exceptional(n) => write!(f, "G{n}"),
            GroupId::Imprimitive { m, e, n } => write!(f, "G({m},{e},{n})"),
            GroupId::Weyl(t, n) => write!(f, "{:?}{n}", t),
        }
    }
}

impl FromStr for GroupId {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || CatalogError::Unknown(s.to_string());
        let t = s.trim().to_ascii_lowercase();
        if let Some(rest) = t.strip_prefix("g(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<u32> = rest
                .split(',')
                .map(|x| x.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| unknown())?;
            if parts.len() != 3 {
                return Err(unknown());
            }
            let (m, e, n) = (parts[0], parts[1], parts[2]);
            if m == 0 || e == 0 || n < 2 || m % e != 0 || !RingId::Cyclotomic(m).is_supported() {
                return Err(unknown());
            }
            return Ok(GroupId::Imprimitive { m, e, n });
        }
        let (head, num) = t.split_at(1);
        let n: u32 = num.parse().map_err(|_| unknown())?;
        let id = match head {
            "g" if EXCEPTIONAL.contains(&n) => GroupId::Exceptional(n),
            "a" if n >= 1 => GroupId::Weyl(WeylType::A, n),
            "b" if n >= 2 => GroupId::Weyl(WeylType::B, n),
            "d" if n >= 4 => GroupId::Weyl(WeylType::D, n),
            "e" if (6..=8).contains(&n) => GroupId::Weyl(WeylType::E, n),
            _ => return Err(unknown()),
        };
        Ok(id)
    }
}

/// How the ambient space and seeds are given.
#[derive(Clone, Debug)]
pub enum Construction {
    /// Seeds in `O^m` with the standard form divided by `scale`.
    Standard { seeds: Vec<Vector>, scale: i64 },
    /// Seeds in coordinates with an explicit gram matrix.
    Gram { seeds: Vec<Vector>, gram: Matrix },
}

/// Everything needed to build one root system.
#[derive(Clone, Debug)]
pub struct GroupConfig {
    pub id: GroupId,
    pub ring: RingId,
    pub construction: Construction,
    /// Order of the generating reflection attached to a root of the given
    /// ambient norm.
    pub orders_by_norm: Vec<(RingElement, u32)>,
    pub known_order: Option<BigUint>,
    pub degrees: Option<Vec<u32>>,
    /// Minimal number of generating reflections.
    pub k: usize,
}

impl GroupConfig {
    pub fn order_for_norm(&self, norm: &RingElement) -> Option<u32> {
        self.orders_by_norm
            .iter()
            .find(|(n, _)| n == norm)
            .map(|(_, o)| *o)
    }
}

fn el(ring: RingId, s: &str) -> RingElement {
    RingElement::parse(ring, s).expect("valid literal")
}

fn v(ring: RingId, xs: &[&str]) -> Vector {
    xs.iter().map(|s| el(ring, s)).collect()
}

/// All distinct rearrangements of `x` (multiset permutations).
pub fn permutations(x: &[RingElement]) -> Vec<Vector> {
    let mut items = x.to_vec();
    items.sort();
    let mut out = Vec::new();
    loop {
        out.push(items.clone());
        // next lexicographic permutation
        let n = items.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| items[i] < items[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| items[j] > items[i]).unwrap();
        items.swap(i, j);
        items[i + 1..].reverse();
    }
    out
}

/// Cyclic rotations of `x`.
pub fn rotations(x: &[RingElement]) -> Vec<Vector> {
    (0..x.len())
        .map(|s| (0..x.len()).map(|i| x[(i + s) % x.len()]).collect())
        .collect()
}

fn prefixed(head: &[RingElement], tails: Vec<Vector>) -> Vec<Vector> {
    tails
        .into_iter()
        .map(|t| head.iter().cloned().chain(t).collect())
        .collect()
}

fn std_config(id: GroupId, ring: RingId, seeds: Vec<Vector>, scale: i64) -> GroupConfig {
    GroupConfig {
        id,
        ring,
        construction: Construction::Standard { seeds, scale },
        orders_by_norm: Vec::new(),
        known_order: None,
        degrees: None,
        k: 0,
    }
}

fn with_data(mut c: GroupConfig, orders: &[(&str, u32)], degrees: &[u32], k: usize) -> GroupConfig {
    c.orders_by_norm = orders.iter().map(|(n, o)| (el(c.ring, n), *o)).collect();
    c.known_order = Some(degrees.iter().fold(BigUint::one(), |a, &d| a * d));
    c.degrees = Some(degrees.to_vec());
    c.k = k;
    c
}

/// The Eisenstein seeds for `G4`.
fn g4_seeds() -> Vec<Vector> {
    let e = RingId::Eisenstein;
    let mut s: Vec<Vector> = ["1", "w", "-1-w"].iter().map(|u| v(e, &["1", "1", u])).collect();
    s.push(v(e, &["0", "0", "2+w"]));
    s
}

fn g25_seeds() -> Vec<Vector> {
    let e = RingId::Eisenstein;
    let mut s = permutations(&v(e, &["2+w", "0", "0"]));
    let pw = ["1", "w", "-1-w"];
    for a in pw {
        for b in pw {
            let bb = el(e, b).conj();
            s.push(vec![el(e, "1"), el(e, a), bb]);
        }
    }
    s
}

/// Minimal vectors of the complex Coxeter–Todd lattice
/// `{x ∈ E^6 : x_i ≡ x_j mod θ, Σ x_i ≡ 0 mod 3}`, of norm 6.
pub fn k12_minimal_vectors() -> Vec<Vector> {
    let e = RingId::Eisenstein;
    let theta = el(e, "1+2w");
    let zero = RingElement::zero(e);
    let us = units(e);
    let three = el(e, "3");
    let mut out = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            for a in &us {
                for b in &us {
                    if !theta.divides(&(*a + *b)) {
                        continue;
                    }
                    let mut x = vec![zero; 6];
                    x[i] = theta * *a;
                    x[j] = theta * *b;
                    out.push(x);
                }
            }
        }
    }
    let w = el(e, "w");
    for code in 0..729u32 {
        let ks: Vec<u32> = (0..6).map(|i| code / 3u32.pow(i) % 3).collect();
        let x: Vector = ks.iter().map(|&k| w.pow(k)).collect();
        let s: RingElement = x.iter().copied().sum();
        if three.divides(&s) {
            out.push(x.clone());
            out.push(x.iter().map(|c| -*c).collect());
        }
    }
    out
}

/// The vector whose orthogonal complement in `K12` is used for `K10`.
pub fn k10_normal() -> Vector {
    let e = RingId::Eisenstein;
    v(e, &["1+2w", "-1-2w", "0", "0", "0", "0"])
}

fn gaussian_g29_seeds() -> Vec<Vector> {
    let g = RingId::Gaussian;
    let mut s = permutations(&v(g, &["2", "0", "0", "0"]));
    let one = v(g, &["1"]);
    for sign in ["1", "-1"] {
        s.extend(prefixed(&one, permutations(&v(g, &[sign, "i", "i"]))));
        s.extend(prefixed(&one, permutations(&v(g, &[sign, "-i", "-i"]))));
        s.extend(prefixed(&one, permutations(&v(g, &[sign, "i", "-i"]))));
        let sq = if sign == "1" { "1+i" } else { "-1-i" };
        s.extend(permutations(&v(g, &["1+i", sq, "0", "0"])));
    }
    s
}

fn cartan_gram(t: WeylType, n: u32) -> Matrix {
    let n = n as usize;
    let z = RingId::Integers;
    let mut m = Matrix::zeros(z, n, n);
    let edge = |m: &mut Matrix, i: usize, j: usize| {
        m.set(i, j, RingElement::from_int(z, -1));
        m.set(j, i, RingElement::from_int(z, -1));
    };
    for i in 0..n {
        m.set(i, i, RingElement::from_int(z, 2));
    }
    match t {
        WeylType::E => {
            // Bourbaki labelling: 1-3-4-5-..., with 2 attached to 4
            edge(&mut m, 0, 2);
            edge(&mut m, 1, 3);
            for i in 2..n - 1 {
                edge(&mut m, i, i + 1);
            }
        }
        _ => unreachable!("only E-types use a Cartan gram"),
    }
    m
}

fn unit_vector(ring: RingId, n: usize, i: usize) -> Vector {
    let mut x = vec![RingElement::zero(ring); n];
    x[i] = RingElement::one(ring);
    x
}

/// Builds the configuration for a group id.
pub fn config(id: GroupId) -> GroupConfig {
    let e = RingId::Eisenstein;
    let g = RingId::Gaussian;
    match id {
        GroupId::Exceptional(4) => with_data(std_config(id, e, g4_seeds(), 1), &[("3", 3)], &[4, 6], 2),
        GroupId::Exceptional(5) => {
            let mut s = g4_seeds();
            s.push(v(e, &["2+w", "2+w", "0"]));
            for u in ["1", "w", "-1-w"] {
                let m2 = el(e, u).scale(-2);
                s.push(vec![el(e, "1"), el(e, "1"), m2]);
            }
            with_data(std_config(id, e, s, 1), &[("3", 3), ("6", 3)], &[6, 12], 2)
        }
        GroupId::Exceptional(25) => {
            with_data(std_config(id, e, g25_seeds(), 1), &[("3", 3)], &[6, 9, 12], 3)
        }
        GroupId::Exceptional(26) => {
            let mut s = g25_seeds();
            for u in ["1", "w", "-1-w"] {
                s.extend(permutations(&[el(e, "1"), -el(e, u), RingElement::zero(e)]));
            }
            with_data(std_config(id, e, s, 1), &[("2", 2), ("3", 3)], &[6, 12, 18], 3)
        }
        GroupId::Exceptional(32) => {
            let pw = ["1", "w", "-1-w"];
            let mut s = Vec::new();
            for a in pw {
                for b in pw {
                    s.push(vec![el(e, "0"), el(e, "1"), el(e, a), el(e, b).conj()]);
                    let tail = [el(e, a), -el(e, b).conj(), RingElement::zero(e)];
                    s.extend(prefixed(&[el(e, "1")], rotations(&tail)));
                }
            }
            with_data(std_config(id, e, s, 1), &[("3", 3)], &[12, 18, 24, 30], 4)
        }
        GroupId::Exceptional(34) => with_data(
            std_config(id, e, k12_minimal_vectors(), 3),
            &[("6", 2)],
            &[6, 12, 18, 24, 30, 42],
            6,
        ),
        GroupId::Exceptional(33) => {
            let normal = k10_normal();
            let s: Vec<Vector> = k12_minimal_vectors()
                .into_iter()
                .filter(|x| {
                    let ip: RingElement = x.iter().zip(&normal).map(|(a, b)| a.conj() * *b).sum();
                    ip.is_zero()
                })
                .collect();
            with_data(std_config(id, e, s, 3), &[("6", 2)], &[4, 6, 10, 12, 18], 5)
        }
        GroupId::Exceptional(8) => {
            let mut s = vec![v(g, &["1+i", "0"]), v(g, &["0", "1+i"])];
            for u in ["1", "i", "-1", "-i"] {
                s.push(v(g, &["1", u]));
            }
            with_data(std_config(id, g, s, 1), &[("2", 4)], &[8, 12], 2)
        }
        GroupId::Exceptional(29) => with_data(
            std_config(id, g, gaussian_g29_seeds(), 1),
            &[("4", 2)],
            &[4, 8, 12, 20],
            4,
        ),
        GroupId::Exceptional(31) => {
            let mut s = gaussian_g29_seeds();
            for code in 0..8u32 {
                let sg = |b: u32| if code >> b & 1 == 1 { "-1" } else { "1" };
                s.push(v(g, &["1", sg(0), sg(1), sg(2)]));
            }
            s.extend(permutations(&v(g, &["1+i", "-1+i", "0", "0"])));
            s.extend(permutations(&v(g, &["1+i", "1-i", "0", "0"])));
            with_data(std_config(id, g, s, 1), &[("4", 2)], &[8, 12, 20, 24], 5)
        }
        GroupId::Exceptional(12) => {
            let r = RingId::SqrtM2;
            let mut s = permutations(&v(r, &["2", "0"]));
            for a in ["1+s", "1-s", "-1+s", "-1-s"] {
                s.extend(permutations(&v(r, &["1", a])));
            }
            s.push(v(r, &["s", "s"]));
            s.push(v(r, &["s", "-s"]));
            with_data(std_config(id, r, s, 1), &[("4", 2)], &[6, 8], 3)
        }
        GroupId::Exceptional(24) => {
            let r = RingId::SqrtM7;
            let mut s = permutations(&v(r, &["2", "0", "0"]));
            // (1-√-7)/2 = 1 - t
            s.extend(permutations(&v(r, &["1-t", "1-t", "0"])));
            s.extend(permutations(&v(r, &["1-t", "-1+t", "0"])));
            for a in ["1", "-1"] {
                for b in ["1", "-1"] {
                    s.extend(permutations(&v(r, &["t", a, b])));
                }
            }
            with_data(std_config(id, r, s, 1), &[("4", 2)], &[4, 6, 14], 3)
        }
        GroupId::Exceptional(6) => {
            let r = RingId::Cyclotomic(12);
            let q = el(r, "1+z12^3");
            let z = el(r, "z12");
            let w = el(r, "z12^4");
            let one = RingElement::one(r);
            let mut s = permutations(&v(r, &["2", "0"]));
            for sg in [one, -one] {
                s.push(vec![sg * z * q, q]);
                s.push(vec![sg * w * q, q]);
                s.push(vec![sg, one + z]);
                s.push(vec![one + z.conj(), sg * el(r, "z12^3")]);
            }
            let big = one + (one + z) * (one + z).conj();
            let mut c = with_data(std_config(id, r, s, 1), &[("4", 2)], &[4, 12], 2);
            c.orders_by_norm.push((big, 3));
            c
        }
        GroupId::Exceptional(9) => {
            let r = RingId::Cyclotomic(8);
            // √−2 = ζ + ζ³, √2 = ζ − ζ³, i = ζ²
            let s2 = el(r, "z8+z8^3");
            let one = RingElement::one(r);
            let two = el(r, "2");
            let zero = RingElement::zero(r);
            let mut s = vec![vec![two, zero], vec![zero, two]];
            for a in [one + s2, one - s2, -one + s2, -one - s2] {
                s.push(vec![one, a]);
                s.push(vec![a, one]);
            }
            s.push(vec![s2, s2]);
            s.push(vec![s2, -s2]);
            let r2 = el(r, "z8-z8^3");
            let z = el(r, "z8");
            let i = el(r, "z8^2");
            for sg in [one, -one] {
                s.push(vec![sg, one + r2]);
                s.push(vec![one + z, sg * i * (one + z)]);
            }
            let big = el(r, "4") + r2.scale(2);
            let mut c = with_data(std_config(id, r, s, 1), &[("4", 2)], &[8, 24], 2);
            c.orders_by_norm.push((big, 4));
            c
        }
        GroupId::Imprimitive { m, e: ee, n } => {
            let r = RingId::Cyclotomic(m);
            let d = m / ee;
            let nn = n as usize;
            let mut s = Vec::new();
            if d > 1 {
                for j in 0..nn {
                    s.push(unit_vector(r, nn, j));
                }
            }
            for j in 0..nn {
                for k in j + 1..nn {
                    for t in 0..m as i64 {
                        let mut x = unit_vector(r, nn, j);
                        x[k] = -RingElement::zeta_power(m, t);
                        s.push(x);
                    }
                }
            }
            let mut degrees: Vec<u32> = (1..n).map(|i| i * m).collect();
            degrees.push(n * d);
            let mut c = std_config(id, r, s, 1);
            c.orders_by_norm = vec![(RingElement::from_int(r, 2), 2)];
            if d > 1 {
                c.orders_by_norm.push((RingElement::one(r), d));
            }
            c.known_order = Some(degrees.iter().fold(BigUint::one(), |a, &x| a * x));
            c.degrees = Some(degrees);
            c.k = if ee == 1 || ee == m { nn } else { nn + 1 };
            c
        }
        GroupId::Weyl(t, n) => {
            let z = RingId::Integers;
            let nn = n as usize;
            let (construction, degrees): (Construction, Vec<u32>) = match t {
                WeylType::A => {
                    let mut s = Vec::new();
                    for i in 0..=nn {
                        for j in 0..=nn {
                            if i != j {
                                let mut x = unit_vector(z, nn + 1, i);
                                x[j] = RingElement::from_int(z, -1);
                                s.push(x);
                            }
                        }
                    }
                    (Construction::Standard { seeds: s, scale: 1 }, (2..=n + 1).collect())
                }
                WeylType::B | WeylType::D => {
                    let mut s = Vec::new();
                    if t == WeylType::B {
                        for i in 0..nn {
                            s.push(unit_vector(z, nn, i));
                        }
                    }
                    for i in 0..nn {
                        for j in i + 1..nn {
                            for sg in [1, -1] {
                                let mut x = unit_vector(z, nn, i);
                                x[j] = RingElement::from_int(z, sg);
                                s.push(x);
                            }
                        }
                    }
                    let degrees = if t == WeylType::B {
                        (1..=n).map(|i| 2 * i).collect()
                    } else {
                        let mut d: Vec<u32> = (1..n).map(|i| 2 * i).collect();
                        d.push(n);
                        d.sort();
                        d
                    };
                    (Construction::Standard { seeds: s, scale: 1 }, degrees)
                }
                WeylType::E => {
                    let seeds = (0..nn).map(|i| unit_vector(z, nn, i)).collect();
                    let degrees = match n {
                        6 => vec![2, 5, 6, 8, 9, 12],
                        7 => vec![2, 6, 8, 10, 12, 14, 18],
                        _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
                    };
                    (
                        Construction::Gram {
                            seeds,
                            gram: cartan_gram(t, n),
                        },
                        degrees,
                    )
                }
            };
            let mut orders = vec![(RingElement::from_int(z, 2), 2)];
            if t == WeylType::B {
                orders.push((RingElement::one(z), 2));
            }
            GroupConfig {
                id,
                ring: z,
                construction,
                orders_by_norm: orders,
                known_order: Some(degrees.iter().fold(BigUint::one(), |a, &x| a * x)),
                degrees: Some(degrees),
                k: nn,
            }
        }
        GroupId::Exceptional(_) => unreachable!("validated on parse"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ids() {
        assert_eq!("g29".parse::<GroupId>().unwrap(), GroupId::Exceptional(29));
        assert_eq!("G(4,2,3)".parse::<GroupId>().unwrap(), GroupId::Imprimitive { m: 4, e: 2, n: 3 });
        assert_eq!("e8".parse::<GroupId>().unwrap(), GroupId::Weyl(WeylType::E, 8));
        assert!("g7".parse::<GroupId>().is_err());
        assert!("h3".parse::<GroupId>().is_err());
        assert_eq!(GroupId::Exceptional(29).to_string(), "G29");
    }

    #[test]
    fn k12_min_vector_count() {
        assert_eq!(k12_minimal_vectors().len(), 756);
    }

    #[test]
    fn multiset_permutations() {
        let z = RingId::Integers;
        let x = vec![RingElement::from_int(z, 2), RingElement::zero(z), RingElement::zero(z)];
        assert_eq!(permutations(&x).len(), 3);
    }
}
