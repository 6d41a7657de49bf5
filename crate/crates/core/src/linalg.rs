//! Dense matrices over Q(q) and exact elimination routines.
//!
//! Everything here is exact field arithmetic; "rank" and "kernel" are the
//! true values over Q(q), not specializations. Elimination keeps rows
//! normalized (monic pivot, fully reduced entries) so intermediate entries
//! stay genuine polynomials divided by polynomials, never nested fractions.

use crate::error::{Error, Result};
use crate::scalars::QRational;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<QRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![QRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = QRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> QRational) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn diagonal(entries: &[QRational]) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(r, c)] += &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &QRational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    /// Commutator AB - BA.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Kronecker product acting on the tensor basis (row-major: index of
    /// u ⊗ v is u * dim(v) + v).
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = &self[(r1, c1)];
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = &other[(r2, c2)];
                        if b.is_zero() {
                            continue;
                        }
                        out[(r1 * other.rows + r2, c1 * other.cols + c2)] = a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[QRational]) -> Vec<QRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = QRational::zero();
                for c in 0..self.cols {
                    let a = &self[(r, c)];
                    if a.is_zero() || v[c].is_zero() {
                        continue;
                    }
                    acc += &(a * &v[c]);
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..r {
                if self[(r, c)] != self[(c, r)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn row(&self, r: usize) -> &[QRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = QRational;
    fn index(&self, (r, c): (usize, usize)) -> &QRational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut QRational {
        &mut self.data[r * self.cols + c]
    }
}

/// Incremental row-echelon basis of a subspace of Q(q)^n.
///
/// Rows are kept monic at their pivot column and fully reduced against each
/// other, so membership tests and coordinate extraction are back-substitution
/// free.
#[derive(Debug, Clone)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<QRational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Echelon {
        Echelon {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<QRational>] {
        &self.rows
    }

    /// Reduce `v` against the current basis in place.
    pub fn reduce(&self, v: &mut [QRational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for j in 0..self.dim {
                if !row[j].is_zero() {
                    let t = &c * &row[j];
                    v[j] -= &t;
                }
            }
        }
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<QRational>) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // Back-reduce existing rows against the new pivot.
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for j in 0..self.dim {
                if !v[j].is_zero() {
                    let t = &c * &v[j];
                    row[j] -= &t;
                }
            }
        }
        // Keep rows ordered by pivot column.
        let pos = self.pivots.partition_point(|&x| x < p);
        self.rows.insert(pos, v);
        self.pivots.insert(pos, p);
        true
    }

    pub fn contains(&self, v: &[QRational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the row basis; fails when v is outside the span.
    pub fn coordinates(&self, v: &[QRational]) -> Result<Vec<QRational>> {
        let mut w = v.to_vec();
        let mut coords = vec![QRational::zero(); self.rows.len()];
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for j in 0..self.dim {
                if !row[j].is_zero() {
                    let t = &c * &row[j];
                    w[j] -= &t;
                }
            }
            coords[i] = c;
        }
        if w.iter().any(|x| !x.is_zero()) {
            return Err(Error::NoSolution("vector outside subspace".into()));
        }
        Ok(coords)
    }
}

/// Exact rank of a list of (possibly sparse) rows over Q(q).
pub fn rank_of_rows(rows: Vec<Vec<QRational>>, dim: usize) -> usize {
    let mut ech = Echelon::new(dim);
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

/// Basis of the right kernel {x : M x = 0}.
pub fn kernel(m: &Matrix) -> Vec<Vec<QRational>> {
    let mut ech = Echelon::new(m.cols());
    for r in 0..m.rows() {
        ech.insert(m.row(r).to_vec());
    }
    let pivot_set: std::collections::BTreeSet<usize> = ech.pivots().iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..m.cols() {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![QRational::zero(); m.cols()];
        v[free] = QRational::one();
        for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
            // row is monic at p and reduced: x_p = -row[free] * x_free
            if !row[free].is_zero() {
                v[p] = -&row[free];
            }
        }
        basis.push(v);
    }
    basis
}

/// Solve M x = b demanding a unique solution; distinguishes "no solution"
/// from "solution space of positive dimension".
pub fn solve_unique(m: &Matrix, b: &[QRational]) -> Result<Vec<QRational>> {
    assert_eq!(m.rows(), b.len());
    let n = m.cols();
    let mut ech = Echelon::new(n + 1);
    for (r, rhs) in b.iter().enumerate() {
        let mut row = m.row(r).to_vec();
        row.push(rhs.clone());
        ech.insert(row);
    }
    // An echelon pivot in the last column means the system is inconsistent.
    if ech.pivots().contains(&n) {
        return Err(Error::NoSolution("inconsistent linear system".into()));
    }
    if ech.rank() < n {
        return Err(Error::NonUnique(format!(
            "rank {} < {} unknowns",
            ech.rank(),
            n
        )));
    }
    let mut x = vec![QRational::zero(); n];
    for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
        // Fully reduced rows: x_p = rhs directly.
        x[p] = row[n].clone();
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> QRational {
        QRational::from_int(n)
    }

    #[test]
    fn mul_identity() {
        let m = Matrix::from_fn(2, 2, |r, cc| c((r * 2 + cc) as i64 + 1));
        assert_eq!(m.mul(&Matrix::identity(2)), m);
    }

    #[test]
    fn kronecker_dimensions_and_values() {
        let a = Matrix::diagonal(&[c(2), c(3)]);
        let b = Matrix::identity(3);
        let k = a.kronecker(&b);
        assert_eq!(k.rows(), 6);
        assert_eq!(k[(0, 0)], c(2));
        assert_eq!(k[(5, 5)], c(3));
    }

    #[test]
    fn rank_and_kernel() {
        // rows (1,2,3), (2,4,6), (0,1,1): rank 2, kernel dim 1
        let rows = vec![
            vec![c(1), c(2), c(3)],
            vec![c(2), c(4), c(6)],
            vec![c(0), c(1), c(1)],
        ];
        assert_eq!(rank_of_rows(rows.clone(), 3), 2);
        let m = Matrix::from_fn(3, 3, |r, cc| rows[r][cc].clone());
        let ker = kernel(&m);
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&ker[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_unique_cases() {
        let m = Matrix::from_fn(2, 2, |r, cc| if r == cc { QRational::q() } else { c(1) });
        let b = vec![c(1), c(0)];
        let x = solve_unique(&m, &b).unwrap();
        assert_eq!(m.apply(&x), b);

        // inconsistent
        let m2 = Matrix::from_fn(2, 1, |_, _| c(1));
        assert!(matches!(
            solve_unique(&m2, &[c(1), c(2)]),
            Err(crate::error::Error::NoSolution(_))
        ));
        // underdetermined
        let m3 = Matrix::zeros(1, 2);
        assert!(matches!(
            solve_unique(&m3, &[c(0)]),
            Err(crate::error::Error::NonUnique(_))
        ));
    }

    #[test]
    fn echelon_coordinates() {
        let mut ech = Echelon::new(3);
        ech.insert(vec![c(1), c(1), c(0)]);
        ech.insert(vec![c(0), c(2), c(2)]);
        let v = vec![c(2), c(4), c(2)];
        let coords = ech.coordinates(&v).unwrap();
        assert_eq!(coords.len(), 2);
        assert!(ech.coordinates(&[c(0), c(0), c(1)]).is_err());
    }
}
