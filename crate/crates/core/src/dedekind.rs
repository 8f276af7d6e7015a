//! Sawtooth function, Dedekind sums and the signature defects of isolated
//! fixed points.
//!
//! For a prime `p` and a rotation number `q` in `1..p`, the defect of an
//! isolated fixed point with local rotation `(1, q)` is
//! `def(p; q, 1) = -4p * s(q, p) = -(2/3) * (q, p)`, where `s(q, p)` is the
//! Dedekind sum and `(q, p) = 6p * s(q, p)` the Dedekind symbol.
//!
//! Two evaluations of `s(q, p)` are provided. [`dedekind_sum_direct`] is the
//! literal `O(p)` sum over sawtooth values and serves as the reference;
//! [`dedekind_sum_fast`] runs the Euclidean algorithm on `(q, p)` using the
//! reciprocity law and must agree with it exactly.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A prime group order `p >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeOrder(u32);

impl PrimeOrder {
    pub fn new(p: u64) -> Result<Self> {
        match u32::try_from(p) {
            Ok(p32) if is_prime(p) => Ok(PrimeOrder(p32)),
            _ => Err(Error::NotPrime(p)),
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// All rotation numbers `1..p`.
    pub fn rotations(self) -> impl Iterator<Item = RotationNumber> {
        (1..self.0).map(move |q| RotationNumber { q, p: self })
    }
}

impl fmt::Display for PrimeOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Rotation number `q` of an isolated fixed point, stored in `1..p`.
///
/// Values outside that range are rejected rather than reduced mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RotationNumber {
    q: u32,
    p: PrimeOrder,
}

impl RotationNumber {
    pub fn new(p: PrimeOrder, q: i64) -> Result<Self> {
        if q >= 1 && q < i64::from(p.get()) {
            Ok(RotationNumber { q: q as u32, p })
        } else {
            Err(Error::RotationOutOfRange { q, p_order: p.get() })
        }
    }

    pub fn get(self) -> u32 {
        self.q
    }

    pub fn order(self) -> PrimeOrder {
        self.p
    }

    /// The inverse `q'` with `q * q' = 1 (mod p)`.
    pub fn inverse(self) -> RotationNumber {
        let p = u64::from(self.p.get());
        let q = u64::from(self.q);
        // Fermat: q^(p-2) mod p.
        let mut result = 1u64;
        let mut base = q % p;
        let mut exp = p.saturating_sub(2);
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        RotationNumber { q: (result % p) as u32, p: self.p }
    }

    /// `p - q`, the rotation number of the reversed local orientation.
    pub fn negate(self) -> RotationNumber {
        RotationNumber { q: self.p.get() - self.q, p: self.p }
    }
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// Deterministic trial division; the orders used here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes `<= n`, ascending.
pub fn primes_up_to(n: u32) -> Vec<PrimeOrder> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(PrimeOrder(i as u32));
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Rademacher's sawtooth `((z))`: `z - floor(z) - 1/2`, or `0` at integers.
pub fn sawtooth(z: &Rational) -> Rational {
    if z.is_integer() {
        return Rational::zero();
    }
    let half = Rational::new(1, 2).expect("nonzero");
    z - Rational::from_integer(z.floor_of()) - half
}

/// `s(q, p) = sum_{k=0}^{p-1} ((k/p)) ((qk/p))`, summed term by term.
pub fn dedekind_sum_direct(q: RotationNumber) -> Rational {
    let p = i64::from(q.order().get());
    let q = i64::from(q.get());
    (0..p)
        .map(|k| {
            let x = sawtooth(&Rational::new(k, p).expect("p > 0"));
            let y = sawtooth(&Rational::new(q * k, p).expect("p > 0"));
            x * y
        })
        .sum()
}

/// `s(q, p)` in `O(log p)` steps via the reciprocity law
/// `s(h, k) + s(k, h) = (h^2 + k^2 + 1) / (12hk) - 1/4` and `s(h mod k, k) = s(h, k)`.
pub fn dedekind_sum_fast(q: RotationNumber) -> Rational {
    let mut h = u128::from(q.get());
    let mut k = u128::from(q.order().get());
    let quarter = Rational::new(1, 4).expect("nonzero");
    let mut total = Rational::zero();
    let mut positive = true;
    while h != 0 {
        let term = Rational::new(BigInt::from(h * h + k * k + 1), BigInt::from(12 * h * k))
            .expect("h, k > 0")
            - &quarter;
        if positive {
            total += term;
        } else {
            total -= &term;
        }
        positive = !positive;
        (h, k) = (k % h, h);
    }
    // The loop ends at s(0, 1) = 0 since gcd(q, p) = 1.
    debug_assert_eq!(k, 1);
    total
}

/// The Dedekind symbol `(q, p) = 6p * s(q, p)`; always an integer.
pub fn dedekind_symbol(q: RotationNumber) -> Rational {
    Rational::from_integer(6 * i64::from(q.order().get())) * dedekind_sum_fast(q)
}

/// Signature defect `def(p; q, 1) = -4p * s(q, p)` of an isolated fixed point.
pub fn defect(q: RotationNumber) -> Rational {
    Rational::from_integer(-4 * i64::from(q.order().get())) * dedekind_sum_fast(q)
}

/// `(p-1)(p-2)/3`, the largest value of `|def(p; q, 1)|` over all `q`.
pub fn defect_extremal(p: PrimeOrder) -> Rational {
    let p = i64::from(p.get());
    Rational::new((p - 1) * (p - 2), 3).expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(n: u64) -> PrimeOrder {
        PrimeOrder::new(n).unwrap()
    }

    fn rq(pn: u64, q: i64) -> RotationNumber {
        RotationNumber::new(p(pn), q).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    #[test]
    fn prime_and_rotation_validation() {
        assert_eq!(PrimeOrder::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeOrder::new(9), Err(Error::NotPrime(9)));
        assert!(PrimeOrder::new(2).is_ok());
        assert!(RotationNumber::new(p(5), 0).is_err());
        assert!(RotationNumber::new(p(5), 5).is_err());
        assert!(RotationNumber::new(p(5), -1).is_err());
        assert_eq!(p(2).rotations().count(), 1);
        let primes: Vec<u32> = primes_up_to(30).iter().map(|p| p.get()).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn sawtooth_values() {
        assert_eq!(sawtooth(&r(1, 3)), r(-1, 6));
        assert_eq!(sawtooth(&r(5, 1)), Rational::zero());
        assert_eq!(sawtooth(&r(4, 3)), r(-1, 6));
        assert_eq!(sawtooth(&r(-1, 3)), r(1, 6));
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(dedekind_sum_direct(rq(3, 1)), r(1, 18));
        assert_eq!(dedekind_sum_direct(rq(2, 1)), Rational::zero());
        assert_eq!(dedekind_sum_direct(rq(5, 2)), Rational::zero());
        assert_eq!(dedekind_sum_direct(rq(5, 1)), r(1, 5));
    }

    #[test]
    fn fast_sum_examples() {
        assert_eq!(dedekind_sum_fast(rq(3, 1)), r(1, 18));
        assert_eq!(dedekind_sum_fast(rq(3, 2)), r(-1, 18));
        assert_eq!(dedekind_sum_fast(rq(2, 1)), Rational::zero());
    }

    #[test]
    fn symbol_and_defect_examples() {
        assert_eq!(dedekind_symbol(rq(5, 1)), r(6, 1));
        assert_eq!(dedekind_symbol(rq(2, 1)), Rational::zero());
        assert_eq!(dedekind_symbol(rq(3, 2)), r(-1, 1));

        assert_eq!(defect(rq(2, 1)), Rational::zero());
        assert_eq!(defect(rq(3, 1)), r(-2, 3));
        assert_eq!(defect(rq(5, 2)), Rational::zero());
        assert_eq!(defect(rq(5, 1)), r(-4, 1));

        assert_eq!(defect_extremal(p(2)), Rational::zero());
        assert_eq!(defect_extremal(p(3)), r(2, 3));
        assert_eq!(defect_extremal(p(7)), r(10, 1));
        for q in p(7).rotations() {
            assert!(defect(q).abs() <= r(10, 1));
        }
    }

    #[test]
    fn both_routes_agree_on_small_primes() {
        for p in primes_up_to(60) {
            for q in p.rotations() {
                assert_eq!(dedekind_sum_fast(q), dedekind_sum_direct(q), "q={q}, p={p}");
            }
        }
    }

    #[test]
    fn symmetries_against_direct_sum() {
        for p in primes_up_to(50) {
            for q in p.rotations() {
                let s = dedekind_sum_direct(q);
                assert_eq!(dedekind_sum_direct(q.negate()), -&s);
                assert_eq!(dedekind_sum_direct(q.inverse()), s);
                assert!(dedekind_symbol(q).is_integer());
                // 3 * def = -2 (q, p) is an integer.
                assert!((defect(q) * Rational::from_integer(3)).is_integer());
            }
            assert_eq!(defect(RotationNumber::new(p, 1).unwrap()), -defect_extremal(p));
        }
    }

    #[test]
    fn fast_sum_handles_large_primes() {
        // Largest u32 prime: the Euclidean steps must not overflow.
        let q = RotationNumber::new(p(4_294_967_291), 1).unwrap();
        let pn = 4_294_967_291i64;
        let expected = Rational::new(
            BigInt::from(pn - 1) * BigInt::from(pn - 2),
            BigInt::from(12) * BigInt::from(pn),
        )
        .unwrap();
        assert_eq!(dedekind_sum_fast(q), expected);
    }
}
