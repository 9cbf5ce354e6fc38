//! Integer and rational linear algebra helpers: Hermite normal form of
//! `Z`-lattices, rational determinants and linear solves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sublattice of `Z^n` kept in row echelon form.
#[derive(Clone, Debug)]
pub struct ZLattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
}

fn pivot(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

impl ZLattice {
    pub fn new(dim: usize) -> Self {
        ZLattice { dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Adds a generator; returns true if the lattice grew.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut changed = false;
        let mut i = 0;
        while i < self.rows.len() {
            let p = match pivot(&v) {
                None => return changed,
                Some(p) => p,
            };
            let rp = pivot(&self.rows[i]).unwrap();
            if rp < p {
                i += 1;
                continue;
            }
            if rp > p {
                if v[p].is_negative() {
                    v.iter_mut().for_each(|x| *x = -x.clone());
                }
                self.rows.insert(i, v);
                return true;
            }
            let a = self.rows[i][p].clone();
            let b = v[p].clone();
            if (&b % &a).is_zero() {
                let q = &b / &a;
                for k in p..self.dim {
                    let t = &self.rows[i][k] * &q;
                    v[k] -= t;
                }
            } else {
                let eg = a.extended_gcd(&b);
                let (g, x, y) = (eg.gcd, eg.x, eg.y);
                let ag = &a / &g;
                let bg = &b / &g;
                let mut new_row = vec![BigInt::zero(); self.dim];
                let mut new_v = vec![BigInt::zero(); self.dim];
                for k in p..self.dim {
                    new_row[k] = &x * &self.rows[i][k] + &y * &v[k];
                    new_v[k] = &ag * &v[k] - &bg * &self.rows[i][k];
                }
                if new_row[p].is_negative() {
                    new_row.iter_mut().for_each(|x| *x = -x.clone());
                }
                self.rows[i] = new_row;
                v = new_v;
                changed = true;
            }
            i += 1;
        }
        if pivot(&v).is_some() {
            let p = pivot(&v).unwrap();
            if v[p].is_negative() {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
            self.rows.push(v);
            return true;
        }
        changed
    }

    /// Reduces entries above pivots so that equal lattices compare equal.
    pub fn canonical(&self) -> Vec<Vec<BigInt>> {
        let mut rows = self.rows.clone();
        for i in 0..rows.len() {
            let p = pivot(&rows[i]).unwrap();
            let piv = rows[i][p].clone();
            for j in 0..i {
                let q = rows[j][p].div_floor(&piv);
                if !q.is_zero() {
                    for k in p..self.dim {
                        let t = &rows[i][k] * &q;
                        rows[j][k] -= t;
                    }
                }
            }
        }
        rows
    }

    /// Index in `Z^n` when the lattice has full rank.
    pub fn index_in_full(&self) -> Option<BigInt> {
        if self.rows.len() != self.dim {
            return None;
        }
        Some(
            self.rows
                .iter()
                .enumerate()
                .map(|(i, r)| r[i].abs())
                .fold(BigInt::one(), |a, b| a * b),
        )
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for row in &self.rows {
            let p = pivot(row).unwrap();
            if v[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            if !(&v[p] % &row[p]).is_zero() {
                return false;
            }
            let q = &v[p] / &row[p];
            for k in p..self.dim {
                let t = &row[k] * &q;
                v[k] -= t;
            }
        }
        v.iter().all(|x| x.is_zero())
    }
}

/// Determinant over `Q` by Gaussian elimination.
pub fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if r != c {
            a.swap(r, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &a[c][k] * &f;
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn rational_solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    for c in 0..n {
        let r = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(r, c);
        b.swap(r, c);
        let piv = a[c][c].clone();
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &a[c][k] * &f;
                a[r][k] -= t;
            }
            let t = &b[c] * &f;
            b[r] -= t;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn index_of_sublattice() {
        let mut l = ZLattice::new(2);
        l.insert(v(&[2, 0]));
        l.insert(v(&[1, 3]));
        l.insert(v(&[0, 6]));
        assert_eq!(l.index_in_full(), Some(BigInt::from(6)));
        assert!(l.contains(&v(&[3, 3])));
        assert!(!l.contains(&v(&[1, 0])));
    }

    #[test]
    fn canonical_forms_agree() {
        let mut a = ZLattice::new(3);
        let mut b = ZLattice::new(3);
        for r in [[1, 2, 3], [0, 4, 5], [2, 0, 1]] {
            a.insert(v(&r));
        }
        for r in [[2, 0, 1], [1, 6, 8], [1, 2, 3]] {
            b.insert(v(&r));
        }
        assert_eq!(a.canonical(), b.canonical());
    }
}
