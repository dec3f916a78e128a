//! Integer-coefficient truncated power series in the cohomological
//! grading, and rational forms with `(1 - t^d)`-product denominators.
//!
//! Series are indexed by cohomological degree, so odd coefficients are
//! allowed (shifted summands and the degree-7 kernel class contribute in
//! odd degrees). All arithmetic is exact integer arithmetic on the
//! coefficient window `t^0 .. t^N`.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation bounds differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    trunc: usize,
    coeffs: Vec<i64>,
}

impl TruncatedSeries {
    pub fn zero(trunc: usize) -> Self {
        TruncatedSeries { trunc, coeffs: vec![0; trunc + 1] }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(0, 1, trunc)
    }

    pub fn monomial(degree: usize, coeff: i64, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if degree <= trunc {
            s.coeffs[degree] = coeff;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { trunc: coeffs.len() - 1, coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, degree: usize) -> i64 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, degree: usize, value: i64) {
        if degree <= self.trunc {
            self.coeffs[degree] = value;
        }
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.trunc != other.trunc {
            return Err(SeriesError::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries { trunc: self.trunc, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncatedSeries { trunc: self.trunc, coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let mut coeffs = vec![0i64; self.trunc + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > self.trunc {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        Ok(TruncatedSeries { trunc: self.trunc, coeffs })
    }

    /// Multiply by `t^k`: the degree shift realizing suspensions.
    /// Coefficients pushed past the truncation are dropped.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![0i64; self.trunc + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i + k <= self.trunc {
                coeffs[i + k] = *a;
            }
        }
        TruncatedSeries { trunc: self.trunc, coeffs }
    }

    pub fn scale(&self, c: i64) -> Self {
        TruncatedSeries { trunc: self.trunc, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Expansion of `1 / (1 - t^d)`.
    pub fn geometric(d: usize, trunc: usize) -> Self {
        assert!(d > 0);
        let mut s = Self::zero(trunc);
        let mut i = 0;
        while i <= trunc {
            s.coeffs[i] = 1;
            i += d;
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    /// Retruncate to a smaller window.
    pub fn truncated(&self, trunc: usize) -> Self {
        assert!(trunc <= self.trunc);
        TruncatedSeries { trunc, coeffs: self.coeffs[..=trunc].to_vec() }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match (c, d) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, d) => write!(f, "t^{d}")?,
                (c, 1) => write!(f, "{c}*t")?,
                (c, d) => write!(f, "{c}*t^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.trunc + 1)
    }
}

/// A rational function `numerator / prod_d (1 - t^d)` with an integer
/// polynomial numerator, in the display style used for closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRational {
    pub numerator: Vec<i64>,
    pub denominator_exponents: Vec<usize>,
}

impl FactoredRational {
    pub fn new(numerator: Vec<i64>, mut denominator_exponents: Vec<usize>) -> Self {
        denominator_exponents.sort_unstable();
        FactoredRational { numerator, denominator_exponents }
    }

    /// `1 / prod (1 - t^d)`.
    pub fn inverse_product(denominator_exponents: Vec<usize>) -> Self {
        Self::new(vec![1], denominator_exponents)
    }

    pub fn expand(&self, trunc: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(trunc);
        for (d, &c) in self.numerator.iter().enumerate() {
            if d <= trunc {
                s.set_coeff(d, c);
            }
        }
        for &d in &self.denominator_exponents {
            s = s.mul(&TruncatedSeries::geometric(d, trunc)).expect("same truncation");
        }
        s
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = poly_to_string(&self.numerator);
        if self.denominator_exponents.is_empty() {
            return write!(f, "{poly}");
        }
        write!(f, "({poly}) / (")?;
        for &d in &self.denominator_exponents {
            write!(f, "(1-t^{d})")?;
        }
        write!(f, ")")
    }
}

pub fn poly_to_string(coeffs: &[i64]) -> String {
    let mut parts = Vec::new();
    for (d, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.abs();
        let term = match (mag, d) {
            (m, 0) => format!("{m}"),
            (1, 1) => "t".to_string(),
            (1, d) => format!("t^{d}"),
            (m, 1) => format!("{m}*t"),
            (m, d) => format!("{m}*t^{d}"),
        };
        if parts.is_empty() {
            parts.push(if c < 0 { format!("-{term}") } else { term });
        } else {
            parts.push(format!("{} {term}", if c < 0 { '-' } else { '+' }));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

/// Result of trying to present a truncated series in closed form over a
/// given denominator set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstruction {
    Exact(FactoredRational),
    /// The numerator did not stabilize inside the guard window; the
    /// truncation is too small to certify a closed form.
    TruncationLimited,
}

/// Multiply `s` by `prod (1 - t^d)` and accept the result as an exact
/// numerator only if the coefficients vanish on the whole guard window
/// (the last `max(d)` coefficients of the truncation).
pub fn reconstruct_numerator(s: &TruncatedSeries, denominator_exponents: &[usize]) -> Reconstruction {
    let trunc = s.trunc();
    let mut num = s.clone();
    for &d in denominator_exponents {
        let factor = {
            let mut f = TruncatedSeries::zero(trunc);
            f.set_coeff(0, 1);
            if d <= trunc {
                f.set_coeff(d, -1);
            }
            f
        };
        num = num.mul(&factor).expect("same truncation");
    }
    let guard = denominator_exponents.iter().copied().max().unwrap_or(0);
    let window_start = trunc.saturating_sub(guard) + 1;
    if (window_start..=trunc).any(|d| num.coeff(d) != 0) {
        return Reconstruction::TruncationLimited;
    }
    let mut coeffs: Vec<i64> = num.coeffs().to_vec();
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    Reconstruction::Exact(FactoredRational::new(coeffs, denominator_exponents.to_vec()))
}

/// Greedily extract generator degrees assuming `s` is the dimension
/// series of a free commutative graded algebra with at most `max_gens`
/// generators: repeatedly divide by the lowest positive-degree term.
/// Returns the degrees if the remainder reduces exactly to 1 within the
/// truncation.
pub fn extract_polynomial_denominators(s: &TruncatedSeries, max_gens: usize) -> Option<Vec<usize>> {
    if s.coeff(0) != 1 {
        return None;
    }
    let trunc = s.trunc();
    let mut rem = s.clone();
    let mut degrees = Vec::new();
    for _ in 0..max_gens {
        let Some(d) = (1..=trunc).find(|&d| rem.coeff(d) != 0) else {
            return Some(degrees); // remainder is exactly 1
        };
        if rem.coeff(d) < 0 {
            return None;
        }
        let mut factor = TruncatedSeries::zero(trunc);
        factor.set_coeff(0, 1);
        factor.set_coeff(d, -1);
        rem = rem.mul(&factor).expect("same truncation");
        if rem.coeffs().iter().any(|&c| c < 0) {
            return None;
        }
        degrees.push(d);
    }
    if (1..=trunc).all(|d| rem.coeff(d) == 0) {
        Some(degrees)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_cube_counts_monomials() {
        // 1/(1-t^2)^3 counts monomials in three degree-2 variables.
        let fr = FactoredRational::inverse_product(vec![2, 2, 2]);
        let s = fr.expand(6);
        assert_eq!(s.coeffs(), &[1, 0, 3, 0, 6, 0, 10]);
    }

    #[test]
    fn shift_moves_degrees_up() {
        let s = TruncatedSeries::from_coeffs(vec![1, 2, 3]);
        assert_eq!(s.shift(1).coeffs(), &[0, 1, 2]);
    }

    #[test]
    fn mul_matches_naive_convolution() {
        let a = TruncatedSeries::from_coeffs(vec![1, -1, 2, 0, 5]);
        let b = TruncatedSeries::from_coeffs(vec![3, 1, 0, -2, 1]);
        let p = a.mul(&b).unwrap();
        for d in 0..=4 {
            let mut expect = 0;
            for i in 0..=d {
                expect += a.coeff(i) * b.coeff(d - i);
            }
            assert_eq!(p.coeff(d), expect);
        }
    }

    #[test]
    fn truncation_mismatch_is_an_error() {
        let a = TruncatedSeries::zero(4);
        let b = TruncatedSeries::zero(6);
        assert!(matches!(a.add(&b), Err(SeriesError::TruncationMismatch(4, 6))));
    }

    #[test]
    fn reconstruct_all_ones_with_unit_denominator() {
        let s = TruncatedSeries::from_coeffs(vec![1; 21]);
        match reconstruct_numerator(&s, &[1]) {
            Reconstruction::Exact(fr) => {
                assert_eq!(fr.numerator, vec![1]);
                assert_eq!(fr.denominator_exponents, vec![1]);
            }
            Reconstruction::TruncationLimited => panic!("should reconstruct"),
        }
    }

    #[test]
    fn reconstruct_detects_disagreeing_tail() {
        let mut s = TruncatedSeries::from_coeffs(vec![1; 21]);
        s.set_coeff(20, 5);
        assert_eq!(reconstruct_numerator(&s, &[1]), Reconstruction::TruncationLimited);
    }

    #[test]
    fn reconstruction_round_trips() {
        let fr = FactoredRational::new(vec![1, 0, 0, 0, 0, 1, 0, 3], vec![4, 6, 8]);
        let s = fr.expand(60);
        match reconstruct_numerator(&s, &[4, 6, 8]) {
            Reconstruction::Exact(back) => {
                assert_eq!(back.expand(60), s);
                assert_eq!(back.numerator, fr.numerator);
            }
            Reconstruction::TruncationLimited => panic!("should reconstruct"),
        }
    }

    #[test]
    fn denominator_extraction_finds_generator_degrees() {
        let fr = FactoredRational::inverse_product(vec![2, 4, 12]);
        let s = fr.expand(40);
        assert_eq!(extract_polynomial_denominators(&s, 3), Some(vec![2, 4, 12]));
        // Not a polynomial-algebra series:
        let not = TruncatedSeries::from_coeffs(vec![1, 0, 5, 0, 0, 0, 0]);
        assert_eq!(extract_polynomial_denominators(&not, 3), None);
    }

    #[test]
    fn display_forms() {
        let s = TruncatedSeries::from_coeffs(vec![1, 0, 2]);
        assert_eq!(s.to_string(), "1 + 2*t^2 + O(t^3)");
        let fr = FactoredRational::new(vec![1, 0, -1], vec![4, 6]);
        assert_eq!(fr.to_string(), "(1 - t^2) / ((1-t^4)(1-t^6))");
    }
}
