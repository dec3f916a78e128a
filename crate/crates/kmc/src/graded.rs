//! Graded monomial bases of the weight polynomial ring and exact graded
//! subspaces with their lattice operations (sum, intersection, quotient
//! dimensions).
//!
//! The ring is `F[w1, w2, w3]` with each generator in cohomological
//! degree 2, so the degree-`2k` piece has the monomials of polynomial
//! degree `k` as basis. Odd cohomological degrees carry no polynomial
//! content and are represented implicitly as zero; degree shifts are
//! handled at the series level.

use crate::field::Field;
use crate::matrix::{LinalgError, Mat};
use crate::series::TruncatedSeries;

/// Ordered monomial basis of the polynomial-degree-`k` piece.
///
/// Monomials are exponent triples `(e1, e2, e3)` with `e1 + e2 + e3 = k`,
/// listed in graded-lexicographic order (lexicographically descending
/// within the fixed degree), which is stable across runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    poly_degree: usize,
    monomials: Vec<[u16; 3]>,
}

impl MonomialBasis {
    pub fn new(k: usize) -> Self {
        let mut monomials = Vec::with_capacity(Self::count(k));
        for e1 in (0..=k).rev() {
            for e2 in (0..=k - e1).rev() {
                let e3 = k - e1 - e2;
                monomials.push([e1 as u16, e2 as u16, e3 as u16]);
            }
        }
        MonomialBasis { poly_degree: k, monomials }
    }

    /// Number of degree-`k` monomials in three variables: C(k+2, 2).
    pub fn count(k: usize) -> usize {
        (k + 1) * (k + 2) / 2
    }

    pub fn poly_degree(&self) -> usize {
        self.poly_degree
    }

    pub fn cohomological_degree(&self) -> usize {
        2 * self.poly_degree
    }

    pub fn monomials(&self) -> &[[u16; 3]] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Position of an exponent triple in the basis ordering.
    pub fn index_of(&self, m: [u16; 3]) -> usize {
        let k = self.poly_degree;
        let e1 = m[0] as usize;
        let e2 = m[1] as usize;
        debug_assert_eq!(e1 + e2 + m[2] as usize, k);
        let before_block = (k - e1) * (k - e1 + 1) / 2;
        before_block + (k - e1 - e2)
    }
}

/// Per-even-degree exact bases of a graded subspace of the polynomial
/// ring, up to a cohomological truncation `N`. The degree-`2k` basis is a
/// full-column-rank matrix whose columns are coordinate vectors in the
/// degree-`k` monomial basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSubspace<F: Field> {
    field: F,
    trunc: usize,
    bases: Vec<Mat<F>>,
}

impl<F: Field> GradedSubspace<F> {
    pub fn from_bases(field: F, trunc: usize, bases: Vec<Mat<F>>) -> Self {
        debug_assert_eq!(bases.len(), trunc / 2 + 1);
        GradedSubspace { field, trunc, bases }
    }

    /// The full polynomial ring (identity basis at every degree).
    pub fn full_ring(field: F, trunc: usize) -> Self {
        let bases = (0..=trunc / 2)
            .map(|k| Mat::identity(&field, MonomialBasis::count(k)))
            .collect();
        GradedSubspace { field, trunc, bases }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn max_poly_degree(&self) -> usize {
        self.trunc / 2
    }

    pub fn basis(&self, k: usize) -> &Mat<F> {
        &self.bases[k]
    }

    /// Dimension at each polynomial degree `0..=N/2`.
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.cols()).collect()
    }

    pub fn dim_at_poly_degree(&self, k: usize) -> usize {
        self.bases[k].cols()
    }

    /// Dimension series in the cohomological grading (odd slots zero).
    pub fn dims_series(&self) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(self.trunc);
        for (k, b) in self.bases.iter().enumerate() {
            s.set_coeff(2 * k, b.cols() as i64);
        }
        s
    }

    fn check_compatible(&self, other: &Self) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.trunc != other.trunc {
            return Err(LinalgError::TruncationMismatch);
        }
        Ok(())
    }

    /// Degreewise column-space sum. The result basis is the leftmost
    /// independent subset of the concatenated bases, so summing with a
    /// subspace of itself returns the original basis columns.
    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut bases = Vec::with_capacity(self.bases.len());
        for (a, b) in self.bases.iter().zip(&other.bases) {
            let stacked = a.hstack(f, b);
            let keep = stacked.independent_cols(f);
            let cols: Vec<Vec<F::Elem>> = keep.iter().map(|&c| stacked.col(c)).collect();
            bases.push(Mat::from_cols(f, stacked.rows(), &cols));
        }
        Ok(GradedSubspace { field: self.field.clone(), trunc: self.trunc, bases })
    }

    /// Degreewise intersection via the kernel of `[A | -B]`.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut bases = Vec::with_capacity(self.bases.len());
        for (a, b) in self.bases.iter().zip(&other.bases) {
            if a.cols() == 0 || b.cols() == 0 {
                bases.push(Mat::zero(f, a.rows(), 0));
                continue;
            }
            let neg_b = Mat::from_fn(f, b.rows(), b.cols(), |r, c| f.neg(b.at(r, c)));
            let stacked = a.hstack(f, &neg_b);
            let ker = stacked.kernel(f);
            // The A-part of each kernel vector is a vector of the
            // intersection; injectivity follows from B having full
            // column rank.
            let mut cols = Vec::with_capacity(ker.cols());
            for kc in 0..ker.cols() {
                let x: Vec<F::Elem> = (0..a.cols()).map(|r| ker.at(r, kc).clone()).collect();
                let mut v = vec![f.zero(); a.rows()];
                for (i, xi) in x.iter().enumerate() {
                    if f.is_zero(xi) {
                        continue;
                    }
                    for r in 0..a.rows() {
                        let e = a.at(r, i);
                        if f.is_zero(e) {
                            continue;
                        }
                        let prod = f.mul(e, xi);
                        v[r] = f.add(&v[r], &prod);
                    }
                }
                f.normalize_vec(&mut v);
                cols.push(v);
            }
            bases.push(Mat::from_cols(f, a.rows(), &cols));
        }
        Ok(GradedSubspace { field: self.field.clone(), trunc: self.trunc, bases })
    }

    /// Whether `other` is contained in `self` at every degree, checked by
    /// rank (bases are non-canonical).
    pub fn contains(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check_compatible(other)?;
        Ok(self.first_containment_failure(other).is_none())
    }

    fn first_containment_failure(&self, other: &Self) -> Option<usize> {
        let f = &self.field;
        for (k, (big, small)) in self.bases.iter().zip(&other.bases).enumerate() {
            if small.cols() == 0 {
                continue;
            }
            let stacked = big.hstack(f, small);
            if stacked.rank(f) != big.cols() {
                return Some(2 * k);
            }
        }
        None
    }

    /// Per-even-degree dimensions of the quotient `self / small`.
    /// Verifies `small` is degreewise contained in `self` first and names
    /// the first failing cohomological degree otherwise.
    pub fn quotient_dims(&self, small: &Self) -> Result<Vec<usize>, LinalgError> {
        self.check_compatible(small)?;
        if let Some(degree) = self.first_containment_failure(small) {
            return Err(LinalgError::NotASubspace { degree });
        }
        Ok(self
            .bases
            .iter()
            .zip(&small.bases)
            .map(|(b, s)| b.cols() - s.cols())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn monomial_count_and_order() {
        let b = MonomialBasis::new(2);
        assert_eq!(b.len(), 6);
        assert_eq!(
            b.monomials(),
            &[[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]]
        );
        for (i, &m) in b.monomials().iter().enumerate() {
            assert_eq!(b.index_of(m), i);
        }
        assert_eq!(MonomialBasis::count(30), 496);
    }

    #[test]
    fn full_ring_dims_match_binomials() {
        let s = GradedSubspace::full_ring(Rationals, 12);
        assert_eq!(s.dims(), vec![1, 3, 6, 10, 15, 21, 28]);
        let series = s.dims_series();
        assert_eq!(series.coeff(0), 1);
        assert_eq!(series.coeff(4), 6);
        assert_eq!(series.coeff(5), 0);
    }

    #[test]
    fn sum_is_idempotent() {
        let f = PrimeField::new(5).unwrap();
        let s = GradedSubspace::full_ring(f, 8);
        let t = s.sum(&s).unwrap();
        assert_eq!(t.dims(), s.dims());
    }

    #[test]
    fn quotient_by_itself_is_zero() {
        let s = GradedSubspace::full_ring(Rationals, 10);
        let q = s.quotient_dims(&s).unwrap();
        assert!(q.iter().all(|&d| d == 0));
    }

    #[test]
    fn not_a_subspace_names_first_degree() {
        let f = Rationals;
        let full = GradedSubspace::full_ring(f, 4);
        // A line at poly degree 1 spanned by w1.
        let mut bases = vec![
            Mat::zero(&f, 1, 0),
            Mat::from_int_rows(&f, &[vec![1], vec![0], vec![0]]),
            Mat::zero(&f, 6, 0),
        ];
        bases[0] = Mat::identity(&f, 1);
        let line = GradedSubspace::from_bases(f, 4, bases);
        let err = line.quotient_dims(&full).unwrap_err();
        assert_eq!(err, LinalgError::NotASubspace { degree: 2 });
        assert!(full.contains(&line).unwrap());
        assert!(!line.contains(&full).unwrap());
    }

    #[test]
    fn field_and_truncation_mismatch_are_rejected() {
        let a = GradedSubspace::full_ring(PrimeField::new(3).unwrap(), 8);
        let b = GradedSubspace::full_ring(PrimeField::new(5).unwrap(), 8);
        assert_eq!(a.sum(&b).unwrap_err(), LinalgError::FieldMismatch);
        let c = GradedSubspace::full_ring(PrimeField::new(3).unwrap(), 10);
        assert_eq!(a.intersect(&c).unwrap_err(), LinalgError::TruncationMismatch);
    }
}
