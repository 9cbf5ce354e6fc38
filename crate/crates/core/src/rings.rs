//! Exact arithmetic in the rings of integers that the root systems live in.
//!
//! Every ring is a quotient `Z[x]/(f)` with `f` monic, stored in the power
//! basis of its generator `τ`. Quadratic rings have degree two; `Z[ζ_m]` uses
//! the `m`-th cyclotomic polynomial. Coefficients are `i64` with checked
//! arithmetic: an overflow panics instead of wrapping.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::BigRational;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::zlattice::ZLattice;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 8;
const MAX_CYCLOTOMIC: u32 = 64;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("ring mismatch: {0} vs {1}")]
    Mismatch(RingId, RingId),
    #[error("zero vector has no primitivity")]
    ZeroVector,
    #[error("cannot parse {text:?} as an element of {ring}")]
    Parse { ring: RingId, text: String },
    #[error("unsupported ring: {0}")]
    Unsupported(String),
}

/// Identifies one of the supported rings of integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingId {
    Integers,
    /// `Z[ω]`, `ω = e^{2πi/3}`.
    Eisenstein,
    /// `Z[i]`.
    Gaussian,
    /// `Z[√−2]`.
    SqrtM2,
    /// `Z[(1+√−7)/2]`.
    SqrtM7,
    /// `Z[ζ_m]`, `ζ_m = e^{2πi/m}`.
    Cyclotomic(u32),
}

impl RingId {
    fn table_index(self) -> usize {
        match self {
            RingId::Integers => 0,
            RingId::Eisenstein => 1,
            RingId::Gaussian => 2,
            RingId::SqrtM2 => 3,
            RingId::SqrtM7 => 4,
            RingId::Cyclotomic(m) => 4 + m as usize,
        }
    }

    pub(crate) fn info(self) -> &'static RingInfo {
        let table = ring_table();
        table
            .get(self.table_index())
            .and_then(|x| x.as_ref())
            .unwrap_or_else(|| panic!("unsupported ring {self}"))
    }

    pub fn is_supported(self) -> bool {
        ring_table()
            .get(self.table_index())
            .map(|x| x.is_some())
            .unwrap_or(false)
    }

    pub fn degree(self) -> usize {
        self.info().degree
    }

    /// True for the rings whose fraction field is `Q` or imaginary quadratic.
    pub fn is_quadratic_or_rational(self) -> bool {
        self.degree() <= 2
    }

    /// The symbol used for the generator in the canonical text form.
    pub fn symbol(self) -> &'static str {
        &self.info().symbol
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingId::Integers => write!(f, "Z"),
            RingId::Eisenstein => write!(f, "E"),
            RingId::Gaussian => write!(f, "G"),
            RingId::SqrtM2 => write!(f, "Z[sqrt-2]"),
            RingId::SqrtM7 => write!(f, "Z[(1+sqrt-7)/2]"),
            RingId::Cyclotomic(m) => write!(f, "Z[z{m}]"),
        }
    }
}

impl FromStr for RingId {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let id = match s {
            "Z" => RingId::Integers,
            "E" => RingId::Eisenstein,
            "G" => RingId::Gaussian,
            "Z[sqrt-2]" => RingId::SqrtM2,
            "Z[(1+sqrt-7)/2]" => RingId::SqrtM7,
            _ => {
                let m = s
                    .strip_prefix("Z[z")
                    .and_then(|r| r.strip_suffix(']'))
                    .and_then(|r| r.parse::<u32>().ok())
                    .ok_or_else(|| RingError::Unsupported(s.to_string()))?;
                RingId::Cyclotomic(m)
            }
        };
        if !id.is_supported() {
            return Err(RingError::Unsupported(s.to_string()));
        }
        Ok(id)
    }
}

impl Serialize for RingId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RingId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Static data describing one ring.
#[derive(Debug)]
pub(crate) struct RingInfo {
    pub degree: usize,
    /// `τ^degree = Σ reduce[j] τ^j`.
    pub reduce: [i64; MAX_DEGREE],
    /// `conj[k]` is the coefficient vector of the complex conjugate of `τ^k`.
    pub conj: [[i64; MAX_DEGREE]; MAX_DEGREE],
    pub generator: Complex64,
    pub symbol: String,
}

static RING_TABLE: OnceLock<Vec<Option<RingInfo>>> = OnceLock::new();

fn ring_table() -> &'static Vec<Option<RingInfo>> {
    RING_TABLE.get_or_init(build_ring_table)
}

fn quadratic(reduce: [i64; 2], conj_tau: [i64; 2], gen: Complex64, symbol: &str) -> RingInfo {
    let mut r = [0; MAX_DEGREE];
    r[..2].copy_from_slice(&reduce);
    let mut conj = [[0; MAX_DEGREE]; MAX_DEGREE];
    conj[0][0] = 1;
    conj[1][..2].copy_from_slice(&conj_tau);
    RingInfo {
        degree: 2,
        reduce: r,
        conj,
        generator: gen,
        symbol: symbol.to_string(),
    }
}

/// Integer polynomial coefficients, lowest degree first.
fn cyclotomic_polynomial(m: u32, cache: &mut Vec<Option<Vec<i64>>>) -> Vec<i64> {
    if let Some(Some(p)) = cache.get(m as usize) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let den = cyclotomic_polynomial(d, cache);
            num = poly_exact_div(&num, &den);
        }
    }
    if cache.len() <= m as usize {
        cache.resize(m as usize + 1, None);
    }
    cache[m as usize] = Some(num.clone());
    num
}

fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    assert!(lead == 1, "monic divisor expected");
    let qn = rem.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for j in 0..=dn {
            rem[i + j] -= c * den[j];
        }
    }
    assert!(rem.iter().all(|&x| x == 0), "inexact polynomial division");
    q
}

fn euler_phi(m: u32) -> usize {
    (1..=m).filter(|&k| num_integer::gcd(k, m) == 1).count()
}

fn build_ring_table() -> Vec<Option<RingInfo>> {
    let mut table: Vec<Option<RingInfo>> = Vec::new();
    let mut z = RingInfo {
        degree: 1,
        reduce: [0; MAX_DEGREE],
        conj: [[0; MAX_DEGREE]; MAX_DEGREE],
        generator: Complex64::new(1.0, 0.0),
        symbol: String::new(),
    };
    z.reduce[0] = 1;
    z.conj[0][0] = 1;
    table.push(Some(z));
    let s3 = 3f64.sqrt();
    let s7 = 7f64.sqrt();
    // ω² = -1 - ω, conj(ω) = -1 - ω
    table.push(Some(quadratic([-1, -1], [-1, -1], Complex64::new(-0.5, s3 / 2.0), "w")));
    table.push(Some(quadratic([-1, 0], [0, -1], Complex64::new(0.0, 1.0), "i")));
    table.push(Some(quadratic([-2, 0], [0, -1], Complex64::new(0.0, 2f64.sqrt()), "s")));
    // τ = (1+√−7)/2 satisfies τ² = τ − 2, conj(τ) = 1 − τ
    table.push(Some(quadratic([-2, 1], [1, -1], Complex64::new(0.5, s7 / 2.0), "t")));
    let mut cache = Vec::new();
    for m in 1..=MAX_CYCLOTOMIC {
        if euler_phi(m) > MAX_DEGREE {
            table.push(None);
            continue;
        }
        let phi = cyclotomic_polynomial(m, &mut cache);
        let d = phi.len() - 1;
        let mut reduce = [0; MAX_DEGREE];
        for j in 0..d {
            reduce[j] = -phi[j];
        }
        let mut info = RingInfo {
            degree: d,
            reduce,
            conj: [[0; MAX_DEGREE]; MAX_DEGREE],
            generator: Complex64::from_polar(1.0, 2.0 * PI / m as f64),
            symbol: format!("z{m}"),
        };
        // conj(ζ^k) = ζ^{m-k}
        let id = RingId::Cyclotomic(m);
        for k in 0..d {
            let e = (m as usize - k % m as usize) % m as usize;
            let v = power_of_generator(&info, e);
            info.conj[k] = v;
        }
        let _ = id;
        table.push(Some(info));
    }
    table
}

fn power_of_generator(info: &RingInfo, e: usize) -> [i64; MAX_DEGREE] {
    let d = info.degree;
    let mut v = [0i64; MAX_DEGREE];
    v[0] = 1;
    for _ in 0..e {
        // multiply by τ
        let top = v[d - 1];
        for j in (1..d).rev() {
            v[j] = v[j - 1];
        }
        v[0] = 0;
        if d == 1 {
            v[0] = 0;
        }
        for j in 0..d {
            v[j] += top * info.reduce[j];
        }
    }
    v
}

/// An exact element of one of the supported rings.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingId,
    c: [i64; MAX_DEGREE],
}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RingElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ring
            .cmp(&other.ring)
            .then_with(|| self.c.cmp(&other.c))
    }
}

fn ck_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("ring coefficient overflow")
}

fn ck_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("ring coefficient overflow")
}

impl RingElement {
    pub fn zero(ring: RingId) -> Self {
        RingElement {
            ring,
            c: [0; MAX_DEGREE],
        }
    }

    pub fn one(ring: RingId) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn from_int(ring: RingId, n: i64) -> Self {
        let mut c = [0; MAX_DEGREE];
        c[0] = n;
        RingElement { ring, c }
    }

    /// Builds an element from its power-basis coordinates.
    pub fn from_coeffs(ring: RingId, coeffs: &[i64]) -> Self {
        let d = ring.degree();
        let mut e = Self::zero(ring);
        let gen = Self::generator(ring);
        let mut pw = Self::one(ring);
        for (k, &x) in coeffs.iter().enumerate() {
            if k < d {
                e.c[k] = ck_add(e.c[k], x);
            } else {
                e = e + pw.scale(x);
            }
            if k + 1 >= d {
                pw = if k + 1 == d {
                    let mut t = Self::zero(ring);
                    let info = ring.info();
                    t.c[..d].copy_from_slice(&info.reduce[..d]);
                    t
                } else {
                    pw * gen
                };
            }
        }
        e
    }

    /// The generator `τ` (`ω`, `i`, `√−2`, `(1+√−7)/2` or `ζ_m`).
    pub fn generator(ring: RingId) -> Self {
        let info = ring.info();
        let mut e = Self::zero(ring);
        if info.degree == 1 {
            e.c[0] = info.reduce[0];
        } else {
            e.c[1] = 1;
        }
        e
    }

    /// `ζ_m^k` in `Z[ζ_m]`.
    pub fn zeta_power(m: u32, k: i64) -> Self {
        let ring = RingId::Cyclotomic(m);
        let e = k.rem_euclid(m as i64) as u32;
        Self::generator(ring).pow(e)
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.c[..self.ring.degree()]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.ring)
    }

    /// True when the element is a rational integer.
    pub fn as_integer(&self) -> Option<i64> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut r = *self;
        for x in r.c.iter_mut() {
            *x = ck_mul(*x, k);
        }
        r
    }

    pub fn conj(&self) -> Self {
        let info = self.ring.info();
        let d = info.degree;
        let mut r = Self::zero(self.ring);
        for k in 0..d {
            if self.c[k] == 0 {
                continue;
            }
            for j in 0..d {
                r.c[j] = ck_add(r.c[j], ck_mul(self.c[k], info.conj[k][j]));
            }
        }
        r
    }

    /// `x·x̄`, a totally real element; a rational integer for quadratic rings.
    pub fn norm(&self) -> Self {
        *self * self.conj()
    }

    /// Field norm down to `Q`: determinant of multiplication by `self`.
    pub fn absolute_norm(&self) -> i64 {
        let d = self.ring.degree();
        match d {
            1 => return self.c[0],
            2 => return self.norm().c[0],
            _ => {}
        }
        let m = self.multiplication_matrix();
        let big: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| BigRational::from_integer(BigInt::from(m[i][j])))
                    .collect()
            })
            .collect();
        crate::zlattice::rational_det(big)
            .to_integer()
            .to_i64()
            .expect("norm overflow")
    }

    /// Column `k` is the coefficient vector of `self·τ^k`.
    fn multiplication_matrix(&self) -> Vec<Vec<i64>> {
        let d = self.ring.degree();
        let gen = Self::generator(self.ring);
        let mut cols = Vec::with_capacity(d);
        let mut cur = *self;
        for _ in 0..d {
            cols.push(cur.c);
            cur = cur * gen;
        }
        (0..d)
            .map(|i| (0..d).map(|k| cols[k][i]).collect())
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.ring);
        let mut b = *self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b;
            }
            b = b * b;
            e >>= 1;
        }
        r
    }

    /// Value under the fixed embedding into `C`.
    pub fn embed(&self) -> Complex64 {
        let info = self.ring.info();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pw = Complex64::new(1.0, 0.0);
        for k in 0..info.degree {
            acc += pw * self.c[k] as f64;
            pw *= info.generator;
        }
        acc
    }

    /// Coordinates of `self / y` in the power basis, over `Q`.
    pub fn rational_quotient(&self, y: &Self) -> Option<Vec<BigRational>> {
        assert_eq!(self.ring, y.ring, "ring mismatch");
        if y.is_zero() {
            return None;
        }
        if let Some(n) = y.as_integer() {
            let d = self.ring.degree();
            return Some(
                (0..d)
                    .map(|k| BigRational::new(BigInt::from(self.c[k]), BigInt::from(n)))
                    .collect(),
            );
        }
        let m = y.multiplication_matrix();
        let d = self.ring.degree();
        let a: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| BigRational::from_integer(BigInt::from(m[i][j])))
                    .collect()
            })
            .collect();
        let b: Vec<BigRational> = (0..d)
            .map(|i| BigRational::from_integer(BigInt::from(self.c[i])))
            .collect();
        crate::zlattice::rational_solve(a, b)
    }

    /// Exact quotient `self / y`, or `None` when `y` does not divide `self`.
    pub fn div_exact(&self, y: &Self) -> Option<Self> {
        assert_eq!(self.ring, y.ring, "ring mismatch");
        if y.is_zero() {
            return None;
        }
        if let Some(n) = y.as_integer() {
            let mut r = *self;
            for x in r.c.iter_mut() {
                if *x % n != 0 {
                    return None;
                }
                *x /= n;
            }
            return Some(r);
        }
        let q = self.rational_quotient(y)?;
        let mut r = Self::zero(self.ring);
        for (k, v) in q.iter().enumerate() {
            if !v.is_integer() {
                return None;
            }
            r.c[k] = v.to_integer().to_i64()?;
        }
        Some(r)
    }

    pub fn divides(&self, x: &Self) -> bool {
        x.div_exact(self).is_some()
    }

    /// Division with remainder: returns `(q, r)` with `self = q·y + r` and the
    /// absolute norm of `r` smaller than that of `y` when such a rounding is
    /// found among the nearest lattice points; `None` otherwise.
    pub fn euclid_div(&self, y: &Self) -> Option<(Self, Self)> {
        let q = self.rational_quotient(y)?;
        let d = self.ring.degree();
        let ny = y.absolute_norm().abs();
        let mut best: Option<(i64, Self, Self)> = None;
        for mask in 0..(1u32 << d) {
            let mut qe = Self::zero(self.ring);
            for (k, v) in q.iter().enumerate() {
                let fl = v.floor().to_integer();
                let pick = if mask >> k & 1 == 1 { fl + BigInt::one() } else { fl };
                qe.c[k] = pick.to_i64()?;
            }
            let r = *self - qe * *y;
            let nr = r.absolute_norm().abs();
            if best.as_ref().map(|b| nr < b.0).unwrap_or(true) {
                best = Some((nr, qe, r));
            }
        }
        let (nr, qe, r) = best?;
        if nr < ny {
            Some((qe, r))
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.absolute_norm().abs() == 1
    }

    /// Canonical text form, e.g. `1-2w`, `3+i`, `z8^3`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(ring: RingId, text: &str) -> Result<Self, RingError> {
        parse_element(ring, text)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.ring.degree();
        let sym = self.ring.symbol();
        let mut first = true;
        for k in 0..d {
            let c = self.c[k];
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "{sym}")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_element(ring: RingId, text: &str) -> Result<RingElement, RingError> {
    let err = || RingError::Parse {
        ring,
        text: text.to_string(),
    };
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err());
    }
    let sym = ring.symbol();
    let mut acc = RingElement::zero(ring);
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return Err(err());
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coef: i64 = if i > start {
            s[start..i].parse().map_err(|_| err())?
        } else {
            1
        };
        let mut power = 0u32;
        if !sym.is_empty() && s[i..].starts_with(sym) {
            i += sym.len();
            power = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let ps = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ps == i {
                    return Err(err());
                }
                power = s[ps..i].parse().map_err(|_| err())?;
            }
        } else if i == start {
            return Err(err());
        }
        acc = acc + RingElement::generator(ring).pow(power).scale(sign * coef);
    }
    Ok(acc)
}

impl std::ops::Add for RingElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        assert_eq!(self.ring, o.ring, "ring mismatch");
        let mut r = self;
        for k in 0..MAX_DEGREE {
            r.c[k] = ck_add(r.c[k], o.c[k]);
        }
        r
    }
}

impl std::ops::Sub for RingElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl std::ops::Neg for RingElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl std::ops::Mul for RingElement {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        assert_eq!(self.ring, o.ring, "ring mismatch");
        let info = self.ring.info();
        let d = info.degree;
        if d == 1 {
            return RingElement::from_int(self.ring, ck_mul(self.c[0], o.c[0]));
        }
        let mut prod = [0i64; 2 * MAX_DEGREE];
        for i in 0..d {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = ck_add(prod[i + j], ck_mul(self.c[i], o.c[j]));
            }
        }
        for k in (d..2 * d - 1).rev() {
            let top = prod[k];
            if top == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..d {
                prod[k - d + j] = ck_add(prod[k - d + j], ck_mul(top, info.reduce[j]));
            }
        }
        let mut r = RingElement::zero(self.ring);
        r.c[..d].copy_from_slice(&prod[..d]);
        r
    }
}

impl std::ops::AddAssign for RingElement {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl std::ops::SubAssign for RingElement {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl std::iter::Sum for RingElement {
    fn sum<I: Iterator<Item = Self>>(mut iter: I) -> Self {
        let first = iter.next().expect("sum of empty iterator has no ring");
        iter.fold(first, |a, b| a + b)
    }
}

/// The binary and unary operations exposed for checked use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Conj,
    Neg,
}

/// Ring arithmetic that reports a ring mismatch instead of panicking.
pub fn arith(x: &RingElement, y: &RingElement, op: ArithOp) -> Result<RingElement, RingError> {
    match op {
        ArithOp::Conj => Ok(x.conj()),
        ArithOp::Neg => Ok(-*x),
        _ if x.ring != y.ring => Err(RingError::Mismatch(x.ring, y.ring)),
        ArithOp::Add => Ok(*x + *y),
        ArithOp::Mul => Ok(*x * *y),
    }
}

/// The finite (torsion) unit group, sorted by argument in `[0, 2π)`.
pub fn units(ring: RingId) -> Vec<RingElement> {
    let d = ring.degree();
    let mut out: Vec<RingElement> = match ring {
        RingId::Cyclotomic(m) => {
            let mut v = Vec::new();
            for k in 0..m as i64 {
                let z = RingElement::zero_power_guard(m, k);
                v.push(z);
                v.push(-z);
            }
            v
        }
        _ if d == 1 => vec![RingElement::one(ring), -RingElement::one(ring)],
        _ => {
            // elements of norm one have small coordinates in a definite form
            let mut v = Vec::new();
            for a in -2..=2 {
                for b in -2..=2 {
                    let e = RingElement::from_coeffs(ring, &[a, b]);
                    if e.norm().as_integer() == Some(1) {
                        v.push(e);
                    }
                }
            }
            v
        }
    };
    out.sort_by(|a, b| {
        let ta = arg_0_2pi(a.embed());
        let tb = arg_0_2pi(b.embed());
        ta.partial_cmp(&tb).unwrap()
    });
    out.dedup();
    out
}

impl RingElement {
    fn zero_power_guard(m: u32, k: i64) -> Self {
        Self::zeta_power(m, k)
    }
}

fn arg_0_2pi(z: Complex64) -> f64 {
    let a = z.arg();
    if a < -1e-12 {
        a + 2.0 * PI
    } else {
        a.max(0.0)
    }
}

/// The unit whose embedding is `e^{2πi/n}`, if the ring contains one.
pub fn root_of_unity(ring: RingId, n: u32) -> Option<RingElement> {
    let target = Complex64::from_polar(1.0, 2.0 * PI / n as f64);
    units(ring)
        .into_iter()
        .find(|u| (u.embed() - target).norm() < 1e-9)
}

/// Multiplicative order of a torsion unit.
pub fn unit_order(u: &RingElement) -> u32 {
    let one = RingElement::one(u.ring());
    let mut x = *u;
    for n in 1..=720u32 {
        if x == one {
            return n;
        }
        x = x * *u;
    }
    panic!("{u} is not a root of unity")
}

/// True iff no non-unit divides every coordinate.
///
/// All supported rings are principal ideal domains, so this is equivalent to
/// the ideal generated by the coordinates being the whole ring, i.e. to the
/// `Z`-span of `{v_i τ^k}` having index one.
pub fn is_primitive(v: &[RingElement]) -> Result<bool, RingError> {
    let first = v.iter().find(|x| !x.is_zero()).ok_or(RingError::ZeroVector)?;
    let ring = first.ring();
    let d = ring.degree();
    let gen = RingElement::generator(ring);
    let mut lat = ZLattice::new(d);
    for x in v {
        if x.ring() != ring {
            return Err(RingError::Mismatch(ring, x.ring()));
        }
        let mut cur = *x;
        for _ in 0..d {
            lat.insert(cur.coeffs().iter().map(|&c| BigInt::from(c)).collect());
            cur = cur * gen;
        }
    }
    let idx = lat.index_in_full().expect("nonzero ideal has full rank");
    Ok(idx.is_one())
}

/// Gcd-free check used in tests: every coordinate is a multiple of `m`.
pub fn common_divisor(v: &[RingElement], m: &RingElement) -> bool {
    v.iter().all(|x| m.divides(x))
}

/// Absolute value of an embedded element, used by several float routines.
pub fn abs_embed(x: &RingElement) -> f64 {
    x.embed().norm()
}

#[allow(dead_code)]
fn bigint_abs(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(text: &str) -> RingElement {
        RingElement::parse(RingId::Eisenstein, text).unwrap()
    }

    fn g(text: &str) -> RingElement {
        RingElement::parse(RingId::Gaussian, text).unwrap()
    }

    #[test]
    fn omega_times_conjugate_is_one() {
        let w = e("w");
        assert_eq!(w * w.conj(), RingElement::one(RingId::Eisenstein));
    }

    #[test]
    fn p_times_conjugate_is_three() {
        let p = RingElement::one(RingId::Eisenstein) - e("w").conj();
        assert_eq!(p.norm(), RingElement::from_int(RingId::Eisenstein, 3));
        assert_eq!(p.to_string(), "2+w");
    }

    #[test]
    fn q_norm_two() {
        let q = g("1+i");
        assert_eq!(q * q.conj(), RingElement::from_int(RingId::Gaussian, 2));
    }

    #[test]
    fn unit_counts() {
        assert_eq!(units(RingId::Eisenstein).len(), 6);
        assert_eq!(units(RingId::Gaussian).len(), 4);
        assert_eq!(units(RingId::SqrtM2).len(), 2);
        assert_eq!(units(RingId::SqrtM7).len(), 2);
        assert_eq!(units(RingId::Integers).len(), 2);
        assert_eq!(units(RingId::Cyclotomic(12)).len(), 12);
        assert_eq!(units(RingId::Cyclotomic(5)).len(), 10);
        assert!(units(RingId::Eisenstein)[0].is_one());
    }

    #[test]
    fn embeddings() {
        let w = e("w").embed();
        assert!((w - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
        let theta = e("w") - e("w").conj();
        assert!((theta.embed() - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
        assert_eq!(theta.to_string(), "1+2w");
        let z8 = RingElement::generator(RingId::Cyclotomic(8)).embed();
        let h = 2f64.sqrt() / 2.0;
        assert!((z8 - Complex64::new(h, h)).norm() < 1e-15);
        let tau = RingElement::generator(RingId::SqrtM7);
        assert!((tau * tau - (tau - RingElement::from_int(RingId::SqrtM7, 2))).is_zero());
    }

    #[test]
    fn primitivity() {
        let p = e("2+w");
        let z = RingElement::zero(RingId::Eisenstein);
        let one = RingElement::one(RingId::Eisenstein);
        assert!(!is_primitive(&[p, z, z]).unwrap());
        assert!(is_primitive(&[one, e("w"), z]).unwrap());
        let two = g("2");
        let gz = RingElement::zero(RingId::Gaussian);
        assert!(!is_primitive(&[two, gz]).unwrap());
        assert!(!is_primitive(&[g("1+i"), g("1+i")]).unwrap());
        assert!(is_primitive(&[g("1"), g("i")]).unwrap());
        assert_eq!(is_primitive(&[z, z]), Err(RingError::ZeroVector));
    }

    #[test]
    fn text_round_trip_examples() {
        for s in ["0", "1", "-w", "1-2w", "2w", "-3-w"] {
            assert_eq!(e(s).to_string(), s);
        }
        assert_eq!(g("3+i").to_string(), "3+i");
        let z = RingElement::parse(RingId::Cyclotomic(8), "z8^3").unwrap();
        assert_eq!(z.to_string(), "z8^3");
        // powers beyond the degree reduce: z8^4 = -1
        let m1 = RingElement::parse(RingId::Cyclotomic(8), "z8^4").unwrap();
        assert_eq!(m1, -RingElement::one(RingId::Cyclotomic(8)));
        assert!(RingElement::parse(RingId::Eisenstein, "1+i").is_err());
        assert!(RingElement::parse(RingId::Eisenstein, "").is_err());
    }

    #[test]
    fn mismatch_is_error() {
        let r = arith(&e("1"), &g("1"), ArithOp::Add);
        assert!(matches!(r, Err(RingError::Mismatch(_, _))));
    }

    #[test]
    fn exact_division() {
        let p = e("2+w");
        let three = e("3");
        assert_eq!(three.div_exact(&p).unwrap() * p, three);
        assert!(e("1").div_exact(&p).is_none());
        let r = RingId::Cyclotomic(12);
        let x = RingElement::parse(r, "1+z12").unwrap();
        let y = RingElement::parse(r, "2-z12^3").unwrap();
        assert_eq!((x * y).div_exact(&y).unwrap(), x);
    }

    #[test]
    fn euclidean_division_decreases_norm() {
        for ring in [RingId::Eisenstein, RingId::Gaussian, RingId::SqrtM2, RingId::SqrtM7] {
            for a in -4..=4 {
                for b in -4..=4 {
                    let x = RingElement::from_coeffs(ring, &[7 * a + 3, 5 * b - 2]);
                    let y = RingElement::from_coeffs(ring, &[a + 2, b - 1]);
                    if y.is_zero() {
                        continue;
                    }
                    let (q, r) = x.euclid_div(&y).expect("norm-Euclidean");
                    assert_eq!(q * y + r, x);
                }
            }
        }
    }
}
