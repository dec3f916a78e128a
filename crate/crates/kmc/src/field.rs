//! Coefficient fields for the exact linear algebra engine.
//!
//! Everything downstream is generic over [`Field`]. Two instances exist:
//! [`Rationals`] with `BigRational` elements, and [`PrimeField`] with
//! `u64` residues. Field objects carry their modulus, so all operations
//! take the field by reference (context-object style).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Runtime descriptor of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs with this
/// witness set.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

impl FieldSpec {
    pub fn validate(self) -> Result<Self, FieldError> {
        match self {
            FieldSpec::Rationals => Ok(self),
            FieldSpec::PrimeField(p) => {
                if is_prime(p) {
                    Ok(self)
                } else {
                    Err(FieldError::NotPrime(p))
                }
            }
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// Exact field arithmetic, used as a context object by the matrix code.
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    /// Whether elimination should run fraction-free (Bareiss updates with
    /// exact division by the previous pivot, integer representatives
    /// throughout). Fields with cheap inversion use ordinary normalized
    /// elimination instead.
    const FRACTION_FREE: bool;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Only called on the non-fraction-free
    /// elimination path; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Exact division, used by the fraction-free elimination. Panics if
    /// the quotient is not exact.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Greatest common divisor where meaningful; 1 elsewhere.
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Rescale a nonzero vector to the canonical representative of its
    /// line: primitive with positive leading entry over `Q`, leading
    /// entry 1 over a prime field. No-op on zero vectors.
    fn normalize_vec(&self, v: &mut [Self::Elem]);

    /// Kernel of a matrix as `(pivot columns, basis vectors)`. The
    /// default is direct elimination; the rationals override this with
    /// the certified modular lift.
    fn kernel_vectors(&self, m: &crate::matrix::Mat<Self>) -> (Vec<usize>, Vec<Vec<Self::Elem>>) {
        crate::matrix::generic_kernel(m, self, true)
    }

    /// Column rank.
    fn matrix_rank(&self, m: &crate::matrix::Mat<Self>) -> usize {
        m.row_echelon(self).pivot_cols.len()
    }

    /// Deterministic maximal independent column subset.
    fn pivot_columns(&self, m: &crate::matrix::Mat<Self>) -> Vec<usize> {
        m.row_echelon(self).pivot_cols
    }
}

/// The rational numbers. Every matrix this crate builds over `Q` has an
/// integer representative (substitution tables are integral and bases
/// are kept primitive), so elements are arbitrary-precision integers and
/// elimination is fraction-free; division only happens where it is
/// exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigInt;
    const FRACTION_FREE: bool = true;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn inv(&self, a: &BigInt) -> BigInt {
        if a.is_one() {
            BigInt::one()
        } else if (-a).is_one() {
            -BigInt::one()
        } else {
            unreachable!("rational elimination is fraction-free; no field inversion")
        }
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let (q, r) = a.div_rem(b);
        debug_assert!(r.is_zero(), "inexact division in fraction-free elimination");
        q
    }
    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }

    fn normalize_vec(&self, v: &mut [BigInt]) {
        let mut content = BigInt::zero();
        for e in v.iter() {
            content = content.gcd(e);
            if content.is_one() {
                break;
            }
        }
        if content.is_zero() {
            return;
        }
        if v.iter().find(|e| !e.is_zero()).map_or(false, |e| e.is_negative()) {
            content = -content;
        }
        if content.is_one() {
            return;
        }
        for e in v.iter_mut() {
            *e = &*e / &content;
        }
    }

    fn kernel_vectors(&self, m: &crate::matrix::Mat<Self>) -> (Vec<usize>, Vec<Vec<BigInt>>) {
        crate::modlift::certified_kernel(m)
    }

    fn matrix_rank(&self, m: &crate::matrix::Mat<Self>) -> usize {
        self.kernel_vectors(m).0.len()
    }

    fn pivot_columns(&self, m: &crate::matrix::Mat<Self>) -> Vec<usize> {
        self.kernel_vectors(m).0
    }
}

/// The field with `p` elements, `p` prime. Elements are residues in
/// `0..p`; products go through `u128` so any 64-bit prime is safe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;
    const FRACTION_FREE: bool = false;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_int(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let (sign, digits) = n.to_u64_digits();
        let mut r: u64 = 0;
        let base = (u64::MAX % self.p + 1) % self.p; // 2^64 mod p
        for d in digits.iter().rev() {
            r = mulmod(r, base, self.p);
            r = (r + d % self.p) % self.p;
        }
        if sign == num_bigint::Sign::Minus && r != 0 {
            r = self.p - r;
        }
        r
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        // extended Euclid on (a, p)
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (self.p as i128, *a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        t.rem_euclid(self.p as i128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn div_exact(&self, a: &u64, b: &u64) -> u64 {
        self.mul(a, &self.inv(b))
    }
    fn gcd(&self, _a: &u64, _b: &u64) -> u64 {
        1
    }

    fn normalize_vec(&self, v: &mut [u64]) {
        if let Some(lead) = v.iter().find(|e| **e != 0).cloned() {
            let inv = self.inv(&lead);
            for e in v.iter_mut() {
                *e = mulmod(*e, inv, self.p);
            }
        }
    }
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(5));
        assert!(is_prime(97));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(91)); // 7 * 13
        assert_eq!(FieldSpec::PrimeField(6).validate(), Err(FieldError::NotPrime(6)));
    }

    #[test]
    fn prime_field_ops() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.neg(&2), 5);
        assert_eq!(f.from_int(-1), 6);
        for a in 1..7u64 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn bigint_reduction() {
        let f = PrimeField::new(5).unwrap();
        let n = BigInt::from(10).pow(30) + 3;
        assert_eq!(f.from_bigint(&n), 3);
        assert_eq!(f.from_bigint(&(-n)), 2);
    }

    #[test]
    fn rational_normalization() {
        let f = Rationals;
        let mut v = vec![f.from_int(-2), f.from_int(4), f.from_int(-6)];
        f.normalize_vec(&mut v);
        assert_eq!(v, vec![f.from_int(1), f.from_int(-2), f.from_int(3)]);
        let mut z = vec![f.zero(), f.zero()];
        f.normalize_vec(&mut z);
        assert_eq!(z, vec![f.zero(), f.zero()]);
    }

    #[test]
    fn exact_division() {
        let f = Rationals;
        assert_eq!(f.div_exact(&f.from_int(-12), &f.from_int(4)), f.from_int(-3));
    }

    #[test]
    fn prime_field_vec_normalization() {
        let f = PrimeField::new(5).unwrap();
        let mut v = vec![0, 3, 4];
        f.normalize_vec(&mut v);
        assert_eq!(v, vec![0, 1, 3]); // scaled by 3^{-1} = 2
    }
}
