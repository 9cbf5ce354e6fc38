//! Dense matrices and vectors over a ring of integers.

use std::fmt;

use num_complex::Complex64;

use crate::rings::{RingElement, RingId};

pub type Vector = Vec<RingElement>;

/// Row-major dense matrix with exact entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    ring: RingId,
    data: Vec<RingElement>,
}

impl Matrix {
    pub fn zeros(ring: RingId, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            ring,
            data: vec![RingElement::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: RingId, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, RingElement::one(ring));
        }
        m
    }

    pub fn from_rows(ring: RingId, rows: &[Vector]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend_from_slice(row);
        }
        Matrix {
            rows: r,
            cols: c,
            ring,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> RingElement {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ring, self.rows)
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Self::zeros(self.ring, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = out.data[idx] + a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[RingElement]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = RingElement::zero(self.ring);
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> Matrix {
        let mut out = self.transpose();
        out.data.iter_mut().for_each(|x| *x = x.conj());
        out
    }

    pub fn pow(&self, e: u64) -> Matrix {
        let mut r = Self::identity(self.ring, self.rows);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    pub fn trace(&self) -> RingElement {
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn embed(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).embed()).collect())
            .collect()
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        bareiss(self.row_vectors(), self.ring).0
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> RingElement {
        assert!(self.is_square());
        if self.rows == 0 {
            return RingElement::one(self.ring);
        }
        let (rank, det) = bareiss(self.row_vectors(), self.ring);
        if rank < self.rows {
            RingElement::zero(self.ring)
        } else {
            det
        }
    }

    /// Principal submatrix on the given indices.
    pub fn principal(&self, idx: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.ring, idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    /// Text rendering of all entries, used in JSON output.
    pub fn to_text(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_text())
    }
}

/// Fraction-free elimination. Returns the rank and, for a full-rank square
/// input, the determinant.
fn bareiss(mut a: Vec<Vector>, ring: RingId) -> (usize, RingElement) {
    let n = a.len();
    if n == 0 {
        return (0, RingElement::one(ring));
    }
    let m = a[0].len();
    let mut prev = RingElement::one(ring);
    let mut sign = 1i64;
    let mut r = 0;
    for c in 0..m {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        let piv = a[r][c];
        for i in r + 1..n {
            let f = a[i][c];
            for j in c..m {
                let v = piv * a[i][j] - f * a[r][j];
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            for j in 0..c {
                a[i][j] = RingElement::zero(ring);
            }
        }
        prev = piv;
        r += 1;
    }
    let det = if r == n && n == m {
        prev.scale(sign)
    } else {
        RingElement::zero(ring)
    };
    (r, det)
}

/// Basis of the right null space `{x : m x = 0}` over the fraction field,
/// scaled to have entries in the ring.
pub fn null_space(m: &Matrix) -> Vec<Vector> {
    let ring = m.ring();
    let n = m.cols();
    let mut a = m.row_vectors();
    let mut prev = RingElement::one(ring);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let piv = a[r][c];
        for i in r + 1..a.len() {
            let f = a[i][c];
            for j in 0..n {
                let v = piv * a[i][j] - f * a[r][j];
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut x = vec![RingElement::zero(ring); n];
        x[f] = RingElement::one(ring);
        for (row, &pc) in pivots.iter().enumerate().rev() {
            let mut s = RingElement::zero(ring);
            for j in pc + 1..n {
                s += a[row][j] * x[j];
            }
            let piv = a[row][pc];
            if s.div_exact(&piv).is_none() {
                x.iter_mut().for_each(|v| *v = *v * piv);
                s = s * piv;
            }
            x[pc] = -s.div_exact(&piv).expect("scaled to divide");
        }
        out.push(x);
    }
    out
}

/// `Σ conj(x_i) g_ij y_j`.
pub fn form(gram: &Matrix, x: &[RingElement], y: &[RingElement]) -> RingElement {
    let gy = gram.apply(y);
    let ring = gram.ring();
    let mut acc = RingElement::zero(ring);
    for (a, b) in x.iter().zip(gy.iter()) {
        if !a.is_zero() && !b.is_zero() {
            acc += a.conj() * *b;
        }
    }
    acc
}

pub fn embed_vector(v: &[RingElement]) -> Vec<Complex64> {
    v.iter().map(|x| x.embed()).collect()
}

pub fn vec_add(a: &[RingElement], b: &[RingElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

pub fn vec_sub(a: &[RingElement], b: &[RingElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| *x - *y).collect()
}

pub fn vec_scale(c: RingElement, a: &[RingElement]) -> Vector {
    a.iter().map(|x| c * *x).collect()
}

pub fn is_zero_vector(a: &[RingElement]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Complex Hermitian form on embedded vectors.
pub fn form_f64(gram: &[Vec<Complex64>], x: &[Complex64], y: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..x.len() {
        if x[i] == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..y.len() {
            row += gram[i][j] * y[j];
        }
        acc += x[i].conj() * row;
    }
    acc
}

/// Determinant of a complex matrix by partial-pivot LU.
pub fn det_f64(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].norm().partial_cmp(&a[j][c].norm()).unwrap())
            .unwrap();
        if a[p][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            for j in c..n {
                let t = a[c][j] * f;
                a[i][j] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> RingElement {
        RingElement::parse(RingId::Eisenstein, s).unwrap()
    }

    #[test]
    fn det_and_rank() {
        let m = Matrix::from_rows(
            RingId::Eisenstein,
            &[vec![e("3"), e("-2-w")], vec![e("-2-w").conj(), e("3")]],
        );
        // 9 - |p|^2 = 6
        assert_eq!(m.det(), e("6"));
        assert_eq!(m.rank(), 2);
        let s = Matrix::from_rows(
            RingId::Eisenstein,
            &[vec![e("1"), e("w")], vec![e("w"), e("w").pow(2)]],
        );
        assert_eq!(s.rank(), 1);
        assert!(s.det().is_zero());
    }

    #[test]
    fn null_space_of_singular_form() {
        // affine A2-type triangle: 2 on the diagonal, -1 elsewhere
        let z = |n| RingElement::from_int(RingId::Eisenstein, n);
        let m = Matrix::from_rows(
            RingId::Eisenstein,
            &[vec![z(2), z(-1), z(-1)], vec![z(-1), z(2), z(-1)], vec![z(-1), z(-1), z(2)]],
        );
        let ns = null_space(&m);
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vector(&m.apply(&ns[0])));
        assert!(!is_zero_vector(&ns[0]));
    }

    #[test]
    fn pow_and_identity() {
        let w = e("w");
        let m = Matrix::from_rows(RingId::Eisenstein, &[vec![w, e("0")], vec![e("0"), e("1")]]);
        assert!(m.pow(3).is_identity());
        assert!(!m.pow(2).is_identity());
    }
}
