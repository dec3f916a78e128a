//! Certified modular lifting for exact rational kernels.
//!
//! Large eliminations over `Q` are done modulo a deterministic sequence
//! of 62-bit primes and lifted back by Chinese remaindering plus
//! rational reconstruction. The result is certified exact, not
//! heuristic:
//!
//! - pivot columns found modulo a prime are independent over `Q` (a
//!   nonzero minor mod p is nonzero), so the rank is bounded from below;
//! - each lifted vector `X` satisfies `M X = 0 (mod Q)` by construction,
//!   and once `Q` exceeds `cols * max|M| * max|X|` the congruence forces
//!   `M X = 0` exactly, so the kernel dimension is bounded from below as
//!   well;
//! - the two bounds meet, so the structure and the vectors are exact.
//!
//! If reconstruction does not stabilize within the prime budget the
//! caller falls back to fraction-free elimination, which is always
//! correct. That keeps this module a pure accelerator.

use crate::field::{is_prime, Field, PrimeField, Rationals};
use crate::matrix::{generic_kernel, Mat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Below this many columns the Bareiss path is fast enough and the
/// modular machinery is not worth its setup cost.
const SMALL_COLS: usize = 32;

/// Hard cap on the number of primes before giving up on lifting.
const MAX_PRIMES: usize = 24;

/// The fixed prime sequence: descending primes below 2^62.
fn lift_primes() -> PrimeIter {
    PrimeIter { next: (1u64 << 62) - 1 }
}

struct PrimeIter {
    next: u64,
}

impl Iterator for PrimeIter {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while !is_prime(self.next) {
            self.next -= 2;
        }
        let p = self.next;
        self.next -= 2;
        Some(p)
    }
}

struct ModKernel {
    prime: u64,
    pivot_cols: Vec<usize>,
    /// Raw kernel vectors (one per free column, ascending), each of
    /// length `cols`, with entry 1 at its own free column.
    vectors: Vec<Vec<u64>>,
}

fn kernel_mod(m: &Mat<Rationals>, p: u64) -> ModKernel {
    let f = PrimeField::new(p).expect("pool primes are prime");
    let reduced = Mat::from_fn(&f, m.rows(), m.cols(), |r, c| f.from_bigint(m.at(r, c)));
    let (pivot_cols, vectors) = generic_kernel(&reduced, &f, false);
    ModKernel { prime: p, pivot_cols, vectors }
}

/// Rational reconstruction of `v (mod q)`: returns `(n, d)` with
/// `n = v d (mod q)`, `|n|, d <= sqrt(q/2)`, `gcd(d, q) = 1`.
fn rational_reconstruct(v: &BigInt, q: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = {
        let half: BigInt = q / 2;
        half.sqrt()
    };
    let (mut r0, mut r1) = (q.clone(), v.mod_floor(q));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let quo = &r0 / &r1;
        let r2 = &r0 - &quo * &r1;
        let t2 = &t0 - &quo * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() {
        return None;
    }
    let (n, d) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if d > bound || !d.gcd(q).is_one() {
        return None;
    }
    Some((n, d))
}

fn crt_pair(r1: &BigInt, m1: &BigInt, r2: u64, m2: u64) -> BigInt {
    // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
    let m2b = BigInt::from(m2);
    let r1_mod = r1.mod_floor(&m2b);
    let diff = (BigInt::from(r2) - r1_mod).mod_floor(&m2b);
    let inv = mod_inverse(m1.mod_floor(&m2b), &m2b).expect("coprime moduli");
    let k = (diff * inv).mod_floor(&m2b);
    r1 + m1 * k
}

fn mod_inverse(a: BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

fn max_entry_bits(m: &Mat<Rationals>) -> u64 {
    let mut bits = 0;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            bits = bits.max(m.at(r, c).bits());
        }
    }
    bits
}

/// Exact kernel of an integer matrix, modular-lifted and certified, with
/// fraction-free elimination as the fallback.
pub(crate) fn certified_kernel(m: &Mat<Rationals>) -> (Vec<usize>, Vec<Vec<BigInt>>) {
    let f = Rationals;
    if m.cols() <= SMALL_COLS || m.rows() == 0 {
        return generic_kernel(m, &f, true);
    }
    let mat_bits = max_entry_bits(m);

    let mut primes = lift_primes();
    let mut base = kernel_mod(m, primes.next().expect("infinite prime pool"));
    let mut extras: Vec<ModKernel> = Vec::new();
    let mut used = 1usize;

    while used < MAX_PRIMES {
        // Try to lift with the primes collected so far.
        if let Some(result) = try_lift(m, mat_bits, &base, &extras) {
            return result;
        }
        let p = primes.next().expect("infinite prime pool");
        used += 1;
        let k = kernel_mod(m, p);
        if k.pivot_cols == base.pivot_cols {
            extras.push(k);
        } else if k.pivot_cols.len() > base.pivot_cols.len() {
            // The base prime undercounted the rank; restart from the
            // better structure.
            base = k;
            extras.clear();
        }
        // Primes with smaller rank or a deviating pivot set are unlucky
        // and dropped.
    }
    generic_kernel(m, &f, true)
}

fn try_lift(
    m: &Mat<Rationals>,
    mat_bits: u64,
    base: &ModKernel,
    extras: &[ModKernel],
) -> Option<(Vec<usize>, Vec<Vec<BigInt>>)> {
    let cols = m.cols();
    let mut modulus = BigInt::from(base.prime);
    for e in extras {
        modulus *= BigInt::from(e.prime);
    }
    let free_count = base.vectors.len();
    debug_assert_eq!(free_count + base.pivot_cols.len(), cols);

    let mut lifted: Vec<Vec<BigInt>> = Vec::with_capacity(free_count);
    let mut max_x_bits = 0u64;
    for (vi, v0) in base.vectors.iter().enumerate() {
        // CRT-combine this vector entrywise across the primes.
        let mut combined: Vec<BigInt> = v0.iter().map(|&r| BigInt::from(r)).collect();
        let mut acc_mod = BigInt::from(base.prime);
        for e in extras {
            for (c, slot) in combined.iter_mut().enumerate() {
                *slot = crt_pair(slot, &acc_mod, e.vectors[vi][c], e.prime);
            }
            acc_mod *= BigInt::from(e.prime);
        }
        // Reconstruct each entry as a fraction, then clear denominators.
        let mut numers = Vec::with_capacity(cols);
        let mut denom_lcm = BigInt::one();
        let mut fracs = Vec::with_capacity(cols);
        for value in &combined {
            let (n, d) = rational_reconstruct(value, &modulus)?;
            denom_lcm = denom_lcm.lcm(&d);
            fracs.push((n, d));
        }
        for (n, d) in fracs {
            numers.push(n * (&denom_lcm / d));
        }
        for e in &numers {
            max_x_bits = max_x_bits.max(e.bits());
        }
        lifted.push(numers);
    }

    // Certification: M X = 0 (mod Q) holds by construction; entries of
    // M X are bounded by cols * max|M| * max|X|, so once Q exceeds that
    // bound the product is exactly zero.
    let log_cols = u64::from(64 - (cols as u64).leading_zeros());
    let bound_bits = mat_bits + max_x_bits + log_cols + 2;
    if modulus.bits() <= bound_bits {
        return None;
    }

    let f = Rationals;
    for v in lifted.iter_mut() {
        f.normalize_vec(v);
    }
    Some((base.pivot_cols.clone(), lifted))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let naive = |n: u64| {
            if n < 2 {
                return false;
            }
            (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
        };
        for n in 0..2000u64 {
            assert_eq!(is_prime(n), naive(n), "{n}");
        }
        assert!(is_prime((1 << 61) - 1)); // Mersenne prime
        assert!(!is_prime((1 << 62) - 1));
    }

    #[test]
    fn prime_pool_is_deterministic_and_prime() {
        let a: Vec<u64> = lift_primes().take(5).collect();
        let b: Vec<u64> = lift_primes().take(5).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|&p| is_prime(p) && p > (1 << 61)));
        assert_eq!(a.len(), 5);
    }

    #[test]
    fn reconstruction_round_trips_small_fractions() {
        let q = BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        for (n, d) in [(3i64, 7u64), (-22, 5), (0, 1), (1000, 3)] {
            let inv = mod_inverse(BigInt::from(d), &q).unwrap();
            let v = (BigInt::from(n) * inv).mod_floor(&q);
            let (rn, rd) = rational_reconstruct(&v, &q).unwrap();
            assert_eq!(rn, BigInt::from(n));
            assert_eq!(rd, BigInt::from(d));
        }
    }

    #[test]
    fn certified_kernel_matches_bareiss_on_random_matrices() {
        // Deterministic pseudo-random integer matrices, large enough to
        // take the modular path.
        let f = Rationals;
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 19) as i64 - 9
        };
        for trial in 0..3 {
            let rows = 30 + trial;
            let cols = 40;
            let mut data = Vec::new();
            for _ in 0..rows {
                let row: Vec<i64> = (0..cols).map(|_| next()).collect();
                data.push(row);
            }
            // Duplicate some rows to force a nontrivial kernel.
            for i in 0..10 {
                let row = data[i].clone();
                data.push(row);
            }
            let m = Mat::from_int_rows(&f, &data);
            let (pivots, vectors) = certified_kernel(&m);
            let (gp, gv) = generic_kernel(&m, &f, true);
            assert_eq!(pivots, gp);
            assert_eq!(vectors, gv);
            let k = Mat::from_cols(&f, m.cols(), &vectors);
            assert!(m.mul(&f, &k).is_zero(&f));
        }
    }
}
