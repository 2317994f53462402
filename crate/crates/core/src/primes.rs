//! Primality testing and desk-scale integer factorization.
//!
//! Primality of machine-word inputs is decided by Miller–Rabin with the
//! fixed witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}, which
//! is deterministic for all 64-bit integers. Factorization is trial
//! division by small primes followed by Brent's variant of Pollard rho on
//! whatever survives; the inputs here are polynomial coefficients,
//! constant terms, and discriminants at desk scale.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = powmod(a, d, n);
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

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut m = n + 1;
    if m <= 2 {
        return 2;
    }
    if m % 2 == 0 {
        m += 1;
    }
    while !is_prime(m) {
        m += 2;
    }
    m
}

/// Ascending iterator over primes starting from 2.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut current = 0u64;
    std::iter::from_fn(move || {
        current = next_prime(current);
        Some(current)
    })
}

/// Prime factorization of a 64-bit integer as (prime, exponent) pairs in
/// ascending prime order. `factor_u64(0)` and `factor_u64(1)` are empty.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut p = 7u64;
    // 2/4-alternating wheel over numbers coprime to 2 and 3
    let mut step = 4u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += step;
        step = 6 - step;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Miller–Rabin on a nonnegative big integer with the fixed witness set.
/// Deterministic below 3.3 * 10^24; for the desk-scale cofactors handled
/// here that covers everything that survives trial division.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return false;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_WITNESSES {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    // Brent's cycle-finding variant; n must be odd, composite, > 1.
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let mut c = BigUint::one();
    loop {
        let mut x = two.clone();
        let mut y = two.clone();
        let mut d = one.clone();
        let step = |v: &BigUint| (v * v + &c) % n;
        while d == one {
            x = step(&x);
            y = step(&step(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if d != one && d != *n {
            return d;
        }
        c += 1u32;
    }
}

const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

fn factor_big_into(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime_big(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_rho(&n);
    let q = &n / &d;
    factor_big_into(d, out);
    factor_big_into(q, out);
}

/// Prime factorization of |n| as (prime, exponent) pairs in ascending
/// prime order. Trial division up to 10^6, then Pollard rho.
pub fn factor_bigint(n: &BigInt) -> Vec<(BigUint, u32)> {
    let mut m = n.magnitude().clone();
    let mut out: BTreeMap<BigUint, u32> = BTreeMap::new();
    if m.is_zero() || m.is_one() {
        return Vec::new();
    }
    for p in [2u64, 3, 5] {
        let pb = BigUint::from(p);
        while (&m % &pb).is_zero() {
            m /= &pb;
            *out.entry(pb.clone()).or_insert(0) += 1;
        }
    }
    let mut p = 7u64;
    let mut step = 4u64;
    while p <= TRIAL_DIVISION_BOUND {
        if m.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if (&pb * &pb) > m {
            break;
        }
        if (&m % &pb).is_zero() {
            while (&m % &pb).is_zero() {
                m /= &pb;
                *out.entry(pb.clone()).or_insert(0) += 1;
            }
        }
        p += step;
        step = 6 - step;
    }
    if !m.is_one() {
        factor_big_into(m, &mut out);
    }
    out.into_iter().collect()
}

/// The distinct primes dividing |n|, ascending.
pub fn prime_divisors(n: &BigInt) -> Vec<BigUint> {
    factor_bigint(n).into_iter().map(|(p, _)| p).collect()
}
