//! Exact sparse rational matrices and dense `f64` matrices.

use std::collections::BTreeMap;
use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::rational::{to_f64, Rational};

/// Row-sparse exact matrix. Stored entries are never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Rational>>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        QMatrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn from_dense(rows: Vec<Vec<Rational>>) -> QMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = QMatrix::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols);
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.data[i];
        let sum = row.get(&j).map_or_else(|| v.clone(), |old| old + v);
        if sum.is_zero() {
            row.remove(&j);
        } else {
            row.insert(j, sum);
        }
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.data[i].iter().map(|(&j, v)| (j, v))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, v) in row {
                t.data[j].insert(i, v.clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (&l, a) in row {
                for (&j, b) in &other.data[l] {
                    out.add_at(i, j, &(a * b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (i, row) in other.data.iter().enumerate() {
            for (&j, v) in row {
                out.add_at(i, j, v);
            }
        }
        out
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (i, row) in other.data.iter().enumerate() {
            for (&j, v) in row {
                out.add_at(i, j, &-v);
            }
        }
        out
    }

    /// diag(d) · self
    pub fn scale_rows(&self, d: &[Rational]) -> QMatrix {
        assert_eq!(d.len(), self.rows);
        let mut out = self.clone();
        for (row, s) in out.data.iter_mut().zip(d) {
            for v in row.values_mut() {
                *v *= s;
            }
        }
        out
    }

    /// self · diag(d)
    pub fn scale_cols(&self, d: &[Rational]) -> QMatrix {
        assert_eq!(d.len(), self.cols);
        let mut out = self.clone();
        for row in out.data.iter_mut() {
            for (j, v) in row.iter_mut() {
                *v *= &d[*j];
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().fold(Rational::zero(), |acc, (&j, v)| acc + v * &x[j]))
            .collect()
    }

    pub fn principal(&self, idx: &[usize]) -> QMatrix {
        let mut out = QMatrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                if let Some(v) = self.data[i].get(&j) {
                    out.data[a].insert(b, v.clone());
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn to_f64(&self) -> DMatrix {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, v) in row {
                m[(i, j)] = to_f64(v);
            }
        }
        m
    }
}

/// Dense row-major `f64` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DMatrix {
    pub fn zeros(rows: usize, cols: usize) -> DMatrix {
        DMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> DMatrix {
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> DMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        DMatrix { rows: r, cols: c, data }
    }

    pub fn diag(d: &[f64]) -> DMatrix {
        let mut m = DMatrix::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> DMatrix {
        let mut t = DMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &DMatrix) -> DMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = DMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(l, j)];
                }
            }
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// Largest |a_ij − a_ji|.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn principal(&self, idx: &[usize]) -> DMatrix {
        let mut out = DMatrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }

    /// Columns selected by `idx`, all rows kept.
    pub fn columns(&self, idx: &[usize]) -> DMatrix {
        let mut out = DMatrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (b, &j) in idx.iter().enumerate() {
                out[(i, b)] = self[(i, j)];
            }
        }
        out
    }

    /// Rows selected by `idx`, all columns kept.
    pub fn rows_of(&self, idx: &[usize]) -> DMatrix {
        let mut out = DMatrix::zeros(idx.len(), self.cols);
        for (a, &i) in idx.iter().enumerate() {
            out.data[a * self.cols..(a + 1) * self.cols].copy_from_slice(self.row(i));
        }
        out
    }
}

impl Index<(usize, usize)> for DMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn sparse_products() {
        let a = QMatrix::from_dense(vec![vec![int(1), int(2)], vec![int(0), frac(1, 2)]]);
        let b = QMatrix::from_dense(vec![vec![int(3), int(0)], vec![int(-1), int(4)]]);
        let p = a.mul(&b);
        assert_eq!(p.to_dense(), vec![vec![int(1), int(8)], vec![frac(-1, 2), int(2)]]);
        assert_eq!(a.transpose().get(1, 0), int(2));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.add(&b).get(0, 0), int(4));
        assert_eq!(a.scale_rows(&[int(2), int(2)]).get(1, 1), int(1));
        assert_eq!(a.scale_cols(&[int(1), int(3)]).get(0, 1), int(6));
        assert_eq!(a.mul_vec(&[int(1), int(1)]), vec![int(3), frac(1, 2)]);
    }

    #[test]
    fn cancellation_removes_entries() {
        let mut m = QMatrix::zeros(1, 1);
        m.add_at(0, 0, &int(2));
        m.add_at(0, 0, &int(-2));
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn dense_helpers() {
        let m = DMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(m.transpose()[(0, 1)], 3.0);
        assert_eq!(m.asymmetry(), 1.0);
        assert_eq!(m.mul(&DMatrix::identity(2)), m);
        assert_eq!(m.principal(&[1])[(0, 0)], 4.0);
    }
}
