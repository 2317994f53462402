//! p-adic valuations of integers, rationals and factorials; base-p digit
//! sums; the Legendre symbol by Euler's criterion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::exact::Rational;
use crate::primes::is_prime;

/// A p-adic valuation: a (possibly negative) integer, or infinity for
/// the input 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Valuation::*;
        match (self, other) {
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

fn check_prime(p: u64) -> Result<(), Error> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// v_p of a nonzero integer, counting by exact division. Infinity for 0.
fn vp_int_unchecked(m: &BigInt, p: u64) -> Valuation {
    if m.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut m = m.abs();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        v += 1;
        m = q;
    }
}

/// p-adic valuation of an integer. `p` must be prime.
pub fn vp_int(m: &BigInt, p: u64) -> Result<Valuation, Error> {
    check_prime(p)?;
    Ok(vp_int_unchecked(m, p))
}

/// p-adic valuation of a rational: v_p(a/b) = v_p(a) - v_p(b), with
/// v_p(0) = infinity. `p` must be prime.
pub fn vp(m: &Rational, p: u64) -> Result<Valuation, Error> {
    check_prime(p)?;
    Ok(vp_unchecked(m, p))
}

pub(crate) fn vp_unchecked(m: &Rational, p: u64) -> Valuation {
    if m.is_zero() {
        return Valuation::Infinite;
    }
    let num = vp_int_unchecked(m.numer(), p).finite().unwrap();
    let den = vp_int_unchecked(m.denom(), p).finite().unwrap();
    Valuation::Finite(num - den)
}

/// Sum of the base-p digits of `n`.
pub fn digit_sum(mut n: u64, p: u64) -> u64 {
    debug_assert!(p >= 2);
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

/// v_p(n!) by Legendre's formula (n - s_p(n)) / (p - 1); the division is
/// exact.
pub fn legendre_factorial(n: u64, p: u64) -> Result<u64, Error> {
    check_prime(p)?;
    let s = digit_sum(n, p);
    debug_assert_eq!((n - s) % (p - 1), 0);
    Ok((n - s) / (p - 1))
}

/// Legendre symbol (a/p) for an odd prime p, by Euler's criterion:
/// 0 if p | a, otherwise ±1 according to a^((p-1)/2) mod p.
pub fn legendre_symbol(a: &BigInt, p: u64) -> Result<i8, Error> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    let pb = BigInt::from(p);
    let r = a.mod_floor(&pb);
    if r.is_zero() {
        return Ok(0);
    }
    let e = BigInt::from((p - 1) / 2);
    let pow = r.modpow(&e, &pb);
    if pow == BigInt::from(1) {
        Ok(1)
    } else {
        debug_assert_eq!(pow, &pb - 1);
        Ok(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn valuation_examples() {
        // 240 = 2^4 * 15
        assert_eq!(vp(&rat(240, 1), 2).unwrap(), Valuation::Finite(4));
        assert_eq!(vp(&rat(1, 1), 3).unwrap(), Valuation::Finite(0));
        // 15 = 3 * 5
        assert_eq!(vp(&rat(2, 15), 5).unwrap(), Valuation::Finite(-1));
        assert_eq!(vp(&rat(0, 1), 7).unwrap(), Valuation::Infinite);
        assert_eq!(vp(&rat(1, 1), 6), Err(Error::NotPrime(6)));
    }

    #[test]
    fn valuation_ordering() {
        assert!(Valuation::Infinite > Valuation::Finite(1_000_000));
        assert!(Valuation::Finite(-3) < Valuation::Finite(0));
        assert_eq!(Valuation::Infinite, Valuation::Infinite);
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(10, 2), 2); // 1010
        assert_eq!(digit_sum(6, 3), 2); // 20
        for p in [2, 3, 5, 7, 11] {
            assert_eq!(digit_sum(0, p), 0);
        }
    }

    /// Direct count sum_{k>=1} floor(n / p^k), the defining formula.
    fn factorial_valuation_brute(n: u64, p: u64) -> u64 {
        let mut total = 0;
        let mut q = p;
        while q <= n {
            total += n / q;
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
        total
    }

    #[test]
    fn legendre_formula_examples() {
        assert_eq!(legendre_factorial(10, 2).unwrap(), 8);
        assert_eq!(factorial_valuation_brute(10, 2), 5 + 2 + 1);
        assert_eq!(legendre_factorial(6, 5).unwrap(), 1);
        assert_eq!(legendre_factorial(0, 13).unwrap(), 0);
    }

    #[test]
    fn legendre_formula_matches_brute_force() {
        for n in 0..=500 {
            let mut p = 2;
            while p <= 50 {
                if is_prime(p) {
                    assert_eq!(
                        legendre_factorial(n, p).unwrap(),
                        factorial_valuation_brute(n, p),
                        "n = {n}, p = {p}"
                    );
                }
                p += 1;
            }
        }
    }

    #[test]
    fn legendre_symbol_examples() {
        assert_eq!(legendre_symbol(&BigInt::from(-1), 3).unwrap(), -1);
        assert_eq!(legendre_symbol(&BigInt::from(1), 5).unwrap(), 1);
        assert_eq!(legendre_symbol(&BigInt::from(-1), 7).unwrap(), -1);
        assert_eq!(legendre_symbol(&BigInt::from(14), 7).unwrap(), 0);
        assert_eq!(legendre_symbol(&BigInt::from(3), 2), Err(Error::EvenPrime));
    }

    #[test]
    fn legendre_symbol_multiplicative() {
        let mut p = 3;
        while p <= 31 {
            if is_prime(p) {
                for a in 1..p {
                    for b in 1..p {
                        let ab = legendre_symbol(&BigInt::from(a * b), p).unwrap();
                        let sa = legendre_symbol(&BigInt::from(a), p).unwrap();
                        let sb = legendre_symbol(&BigInt::from(b), p).unwrap();
                        assert_eq!(ab, sa * sb, "p = {p}, a = {a}, b = {b}");
                    }
                }
            }
            p += 2;
        }
    }

    proptest! {
        #[test]
        fn valuation_additive(
            an in -300i64..300, ad in 1i64..300,
            bn in -300i64..300, bd in 1i64..300,
            pi in 0usize..4,
        ) {
            prop_assume!(an != 0 && bn != 0);
            let p = [2u64, 3, 5, 7][pi];
            let a = rat(an, ad);
            let b = rat(bn, bd);
            let va = vp(&a, p).unwrap().finite().unwrap();
            let vb = vp(&b, p).unwrap().finite().unwrap();
            prop_assert_eq!(
                vp(&(a * b), p).unwrap(),
                Valuation::Finite(va + vb)
            );
        }

        /// When the two valuations differ, the sum takes the smaller one.
        #[test]
        fn ultrametric_equality_case(
            an in -300i64..300, ad in 1i64..300,
            bn in -300i64..300, bd in 1i64..300,
            pi in 0usize..4,
        ) {
            prop_assume!(an != 0 && bn != 0);
            let p = [2u64, 3, 5, 7][pi];
            let a = rat(an, ad);
            let b = rat(bn, bd);
            let va = vp(&a, p).unwrap();
            let vb = vp(&b, p).unwrap();
            prop_assume!(va != vb);
            prop_assert_eq!(vp(&(a + b), p).unwrap(), va.min(vb));
        }
    }
}
