//! Dense exact matrices and the elimination kernel used everywhere.
//!
//! Pivoting is deterministic (first nonzero entry, columns scanned left to
//! right), so bases and reports are identical across runs. Over `Q` the
//! forward pass uses division-free cross-multiplication updates and strips
//! the content of every updated row, which keeps entries integral and
//! small; prime fields use ordinary normalized elimination.

use crate::field::Field;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("coefficient fields differ")]
    FieldMismatch,
    #[error("truncation bounds differ")]
    TruncationMismatch,
    #[error("not a subspace at cohomological degree {degree}")]
    NotASubspace { degree: usize },
}

/// Dense row-major matrix over a field `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Mat<F> {
    pub fn zero(f: &F, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity(f: &F, n: usize) -> Self {
        let mut m = Self::zero(f, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = f.one();
        }
        m
    }

    pub fn from_fn(f: &F, rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let _ = f;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(entry(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_int_rows(f: &F, rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(f, nrows, ncols, |r, c| f.from_int(rows[r][c]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut F::Elem {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn set_col(&mut self, c: usize, v: &[F::Elem]) {
        assert_eq!(v.len(), self.rows);
        for (r, e) in v.iter().enumerate() {
            *self.at_mut(r, c) = e.clone();
        }
    }

    pub fn from_cols(f: &F, rows: usize, cols: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zero(f, rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            m.set_col(c, v);
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, f: &F, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(f, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    pub fn mul(&self, f: &F, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if f.is_zero(b) {
                        continue;
                    }
                    let prod = f.mul(a, b);
                    let cur = out.at(r, c);
                    *out.at_mut(r, c) = f.add(cur, &prod);
                }
            }
        }
        out
    }

    pub fn is_zero(&self, f: &F) -> bool {
        self.data.iter().all(|e| f.is_zero(e))
    }

    /// Row echelon form with deterministic pivoting (first nonzero entry,
    /// columns left to right). Returns the reduced matrix together with
    /// the pivot column of each pivot row.
    ///
    /// Fraction-free fields use single-step Bareiss updates
    /// `(p*a_ij - a_ic*p_j) / prev_pivot`, which keeps every entry an
    /// exact minor of the input and bounds coefficient growth.
    pub fn row_echelon(&self, f: &F) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut next_row = 0usize;
        let mut prev_pivot = f.one();
        for c in 0..m.cols {
            if next_row == m.rows {
                break;
            }
            let Some(pr) = (next_row..m.rows).find(|&r| !f.is_zero(m.at(r, c))) else {
                continue;
            };
            if pr != next_row {
                m.swap_rows(pr, next_row);
            }
            if F::FRACTION_FREE {
                let pivot_row: Vec<F::Elem> = m.row(next_row)[c..].to_vec();
                let pivot = pivot_row[0].clone();
                for i in next_row + 1..m.rows {
                    let a = m.at(i, c).clone();
                    if f.is_zero(&a) {
                        // Bareiss still rescales rows that need no
                        // cancellation.
                        for j in c..m.cols {
                            if f.is_zero(m.at(i, j)) {
                                continue;
                            }
                            let scaled = f.mul(&pivot, m.at(i, j));
                            *m.at_mut(i, j) = f.div_exact(&scaled, &prev_pivot);
                        }
                    } else {
                        for j in c..m.cols {
                            let scaled = f.mul(&pivot, m.at(i, j));
                            let corr = f.mul(&a, &pivot_row[j - c]);
                            let e = f.sub(&scaled, &corr);
                            *m.at_mut(i, j) = f.div_exact(&e, &prev_pivot);
                        }
                    }
                }
                prev_pivot = pivot;
            } else {
                let inv = f.inv(m.at(next_row, c));
                for j in c..m.cols {
                    let e = f.mul(m.at(next_row, j), &inv);
                    *m.at_mut(next_row, j) = e;
                }
                let pivot_row: Vec<F::Elem> = m.row(next_row)[c..].to_vec();
                for i in next_row + 1..m.rows {
                    let a = m.at(i, c).clone();
                    if f.is_zero(&a) {
                        continue;
                    }
                    for j in c..m.cols {
                        let corr = f.mul(&a, &pivot_row[j - c]);
                        let e = f.sub(m.at(i, j), &corr);
                        *m.at_mut(i, j) = e;
                    }
                }
            }
            pivot_cols.push(c);
            next_row += 1;
        }
        Echelon { mat: m, pivot_cols }
    }

    /// Column rank; the rationals certify it through the modular lift.
    pub fn rank(&self, f: &F) -> usize {
        f.matrix_rank(self)
    }

    /// Basis of the null space `{x : self * x = 0}` as matrix columns.
    /// Exact arithmetic throughout; the empty kernel yields zero columns.
    pub fn kernel(&self, f: &F) -> Mat<F> {
        let (_, vectors) = f.kernel_vectors(self);
        Mat::from_cols(f, self.cols, &vectors)
    }

    /// Indices of a deterministic maximal independent subset of columns.
    pub fn independent_cols(&self, f: &F) -> Vec<usize> {
        f.pivot_columns(self)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

pub struct Echelon<F: Field> {
    pub mat: Mat<F>,
    pub pivot_cols: Vec<usize>,
}

/// Kernel by direct elimination: `(pivot columns, basis vectors)`. Each
/// basis vector has entry 1 at its own free column and 0 at every other
/// free column, which makes the set independent by construction; with
/// `normalize` the vectors are rescaled to their canonical
/// representatives.
pub(crate) fn generic_kernel<F: Field>(
    m: &Mat<F>,
    f: &F,
    normalize: bool,
) -> (Vec<usize>, Vec<Vec<F::Elem>>) {
    let ech = m.row_echelon(f);
    let pivots = ech.pivot_cols;
    let mut pivot_set = vec![false; m.cols()];
    for &c in &pivots {
        pivot_set[c] = true;
    }
    let mut basis: Vec<Vec<F::Elem>> = Vec::new();
    for free in 0..m.cols() {
        if pivot_set[free] {
            continue;
        }
        let mut x = vec![f.zero(); m.cols()];
        x[free] = f.one();
        // Solve upward: each pivot row determines its pivot variable.
        // Entries at indices beyond `free` stay zero.
        for (row, &pc) in pivots.iter().enumerate().rev() {
            if pc > free {
                continue;
            }
            let mut s = f.zero();
            for j in pc + 1..=free {
                let e = ech.mat.at(row, j);
                if f.is_zero(e) || f.is_zero(&x[j]) {
                    continue;
                }
                let prod = f.mul(e, &x[j]);
                s = f.add(&s, &prod);
            }
            if f.is_zero(&s) {
                x[pc] = f.zero();
            } else if F::FRACTION_FREE {
                // Rescale the whole solution so the division comes out
                // exact: x stays an integer vector.
                let p = ech.mat.at(row, pc).clone();
                let g = f.gcd(&s, &p);
                let scale = f.div_exact(&p, &g);
                if scale != f.one() {
                    for e in x.iter_mut() {
                        if !f.is_zero(e) {
                            *e = f.mul(e, &scale);
                        }
                    }
                    s = f.mul(&s, &scale);
                }
                x[pc] = f.neg(&f.div_exact(&s, &p));
            } else {
                let inv = f.inv(ech.mat.at(row, pc));
                x[pc] = f.neg(&f.mul(&s, &inv));
            }
        }
        if normalize {
            f.normalize_vec(&mut x);
        }
        basis.push(x);
    }
    (pivots, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn kernel_of_identity_is_empty() {
        let f = PrimeField::new(3).unwrap();
        let m = Mat::identity(&f, 3);
        let k = m.kernel(&f);
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let f = Rationals;
        let m = Mat::zero(&f, 2, 2);
        let k = m.kernel(&f);
        assert_eq!(k.cols(), 2);
        assert_eq!(k, Mat::identity(&f, 2));
    }

    #[test]
    fn kernel_of_rank_one_matrix_over_f2() {
        let f = PrimeField::new(2).unwrap();
        let m = Mat::from_int_rows(&f, &[vec![1, 1], vec![1, 1]]);
        let k = m.kernel(&f);
        assert_eq!(k.cols(), 1);
        assert_eq!(k.col(0), vec![1, 1]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Rationals;
        let m = Mat::from_int_rows(&f, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, -1]]);
        let k = m.kernel(&f);
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&f, &k).is_zero(&f));
        assert_eq!(m.rank(&f) + k.cols(), m.cols());
    }

    #[test]
    fn rank_over_prime_field_drops() {
        // [[1,2],[2,4]] has rank 1 over Q and over F5, but rank 2 over F3
        // it is [[1,2],[2,1]] -> det = -3 = 0 mod 3, still rank 1.
        let q = Rationals;
        let m = Mat::from_int_rows(&q, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(&q), 1);
        let f3 = PrimeField::new(3).unwrap();
        let m3 = Mat::from_int_rows(&f3, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(m3.rank(&f3), 1);
    }

    #[test]
    fn independent_cols_are_leftmost() {
        let f = Rationals;
        // col2 = col0 + col1, col3 independent
        let m = Mat::from_int_rows(
            &f,
            &[vec![1, 0, 1, 0], vec![0, 1, 1, 0], vec![0, 0, 0, 1]],
        );
        assert_eq!(m.independent_cols(&f), vec![0, 1, 3]);
    }

    #[test]
    fn bareiss_echelon_rank_and_kernel() {
        let f = Rationals;
        let m = Mat::from_int_rows(&f, &[vec![6, 4, 2], vec![9, 6, 3], vec![3, 1, 7]]);
        assert_eq!(m.rank(&f), 2);
        let k = m.kernel(&f);
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&f, &k).is_zero(&f));
        // Kernel vectors come out primitive with positive leading entry.
        let col = k.col(0);
        let content = col.iter().fold(f.zero(), |acc, e| f.gcd(&acc, e));
        assert_eq!(content, f.one());
    }

    #[test]
    fn kernel_survives_awkward_pivot_patterns() {
        let f = Rationals;
        // Zero leading column, repeated rows, wide shape.
        let m = Mat::from_int_rows(
            &f,
            &[vec![0, 2, 4, 6], vec![0, 3, 6, 9], vec![1, 1, 1, 1]],
        );
        let k = m.kernel(&f);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&f, &k).is_zero(&f));
        assert_eq!(m.rank(&f) + k.cols(), m.cols());
    }
}
