//! Polynomial arithmetic and complete factorization over prime fields,
//! degree-pattern evidence, and a Dedekind-style irreducibility oracle.
//!
//! Factorization runs squarefree decomposition, then distinct-degree
//! splitting, then equal-degree splitting. The equal-degree stage is the
//! usual probabilistic method, but its generator is seeded from a hash of
//! the input coefficients and the modulus, so factorizations are
//! bit-identical run to run.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exact::IntPoly;
use crate::primes::{factor_u64, is_prime};

/// Dense polynomial over the field of p elements; all coefficients are
/// reduced into [0, p) and the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

impl ModPoly {
    /// Reduces the given integer coefficients mod p. `p` must be prime.
    pub fn new(p: u64, coeffs: &[i64]) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let reduced = coeffs
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        Ok(Self::from_reduced(p, reduced))
    }

    fn from_reduced(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        ModPoly { p, coeffs: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        ModPoly { p, coeffs: vec![0, 1] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_reduced(p, vec![c % p])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &ModPoly) -> ModPoly {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len().max(other.coeffs.len())];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i] = a;
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            out[i] = (out[i] + b) % p;
        }
        Self::from_reduced(p, out)
    }

    pub fn sub(&self, other: &ModPoly) -> ModPoly {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len().max(other.coeffs.len())];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i] = a;
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            out[i] = (out[i] + p - b) % p;
        }
        Self::from_reduced(p, out)
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
        Self::from_reduced(p, out)
    }

    pub fn mul_scalar(&self, c: u64) -> ModPoly {
        let p = self.p;
        let c = c % p;
        Self::from_reduced(p, self.coeffs.iter().map(|&a| mulmod(a, c, p)).collect())
    }

    pub fn make_monic(&self) -> ModPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.mul_scalar(invmod(self.leading(), self.p))
    }

    pub fn div_rem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        debug_assert_eq!(self.p, d.p);
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dd = d.degree().unwrap();
        if self.coeffs.len() < dd + 1 {
            return (ModPoly::zero(p), self.clone());
        }
        let lead_inv = invmod(d.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = mulmod(rem[i], lead_inv, p);
            if q == 0 {
                continue;
            }
            rem[i] = 0;
            for (j, &dc) in d.coeffs[..dd].iter().enumerate() {
                let sub = mulmod(dc, q, p);
                rem[i - dd + j] = (rem[i - dd + j] + p - sub) % p;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (Self::from_reduced(p, quot), Self::from_reduced(p, rem))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.div_rem(d).1
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> ModPoly {
        if self.coeffs.len() <= 1 {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        Self::from_reduced(
            p,
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| mulmod(c, (i as u64 + 1) % p, p))
                .collect(),
        )
    }

    pub fn eval(&self, a: u64) -> u64 {
        let p = self.p;
        let a = a % p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, a, p) + c) % p;
        }
        acc
    }

    /// self^exp mod m, by square and multiply over the bits of `exp`.
    pub fn pow_mod(&self, exp: &BigUint, m: &ModPoly) -> ModPoly {
        let mut acc = ModPoly::one(self.p);
        let mut base = self.rem(m);
        for i in 0..exp.bits() {
            if exp.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < exp.bits() {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }
}

impl std::fmt::Display for ModPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => {
                    if c != 1 {
                        write!(f, "{c}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Coefficientwise reduction of an integer polynomial mod p; the degree
/// may drop.
pub fn reduce_mod(f: &IntPoly, p: u64) -> Result<ModPoly, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    Ok(ModPoly::from_reduced(p, coeffs))
}

/// Complete factorization over the field of p elements: a unit scalar and
/// monic irreducible factors with multiplicities, sorted by (degree,
/// coefficient sequence) so equal inputs produce identical output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationModP {
    pub p: u64,
    pub unit: u64,
    pub factors: Vec<(ModPoly, usize)>,
}

impl FactorizationModP {
    /// Multiplies the unit and factor powers back together.
    pub fn product(&self) -> ModPoly {
        let mut acc = ModPoly::constant(self.p, self.unit);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }

    /// Factor degrees with multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat(f.degree().unwrap()).take(*m))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }
}

/// x^(1/p) in F_p[x]: keep the coefficients at indices divisible by p
/// (Frobenius fixes F_p pointwise).
fn pth_root(f: &ModPoly) -> ModPoly {
    let p = f.p;
    let coeffs = f
        .coeffs
        .iter()
        .step_by(p as usize)
        .copied()
        .collect();
    ModPoly::from_reduced(p, coeffs)
}

/// Yun-style squarefree decomposition adapted to characteristic p:
/// returns pairwise-coprime squarefree monic parts with multiplicities.
fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    debug_assert!(f.is_monic());
    let p = f.p as usize;
    let mut result = Vec::new();
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f is a p-th power
        for (h, m) in squarefree_decomposition(&pth_root(f)) {
            result.push((h, m * p));
        }
        return result;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.div_rem(&c).0;
    let mut i = 1usize;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if !z.is_one() {
            result.push((z, i));
        }
        i += 1;
        c = c.div_rem(&y).0;
        w = y;
    }
    if !c.is_one() {
        for (h, m) in squarefree_decomposition(&pth_root(&c)) {
            result.push((h, m * p));
        }
    }
    result
}

/// Distinct-degree splitting of a squarefree monic polynomial: pairs of
/// (product of all irreducible factors of degree d, d).
fn distinct_degree_split(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.p;
    let mut parts = Vec::new();
    let mut rest = f.clone();
    let mut h = ModPoly::x(p);
    let x = ModPoly::x(p);
    let mut d = 0usize;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&BigUint::from(p), &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            parts.push((g.clone(), d));
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        parts.push((rest, deg));
    }
    parts
}

/// FNV-1a over the modulus and coefficients; the factorization seed.
fn coefficient_hash(f: &ModPoly) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    let mut eat = |v: u64| {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(f.p);
    for &c in &f.coeffs {
        eat(c);
    }
    h
}

fn random_poly(rng: &mut ChaCha8Rng, p: u64, max_deg: usize) -> ModPoly {
    let bound = u64::MAX - u64::MAX % p;
    let mut sample = || loop {
        let r = rng.next_u64();
        if r < bound {
            return r % p;
        }
    };
    let coeffs = (0..=max_deg).map(|_| sample()).collect();
    ModPoly::from_reduced(p, coeffs)
}

/// Equal-degree splitting: `f` is monic squarefree with all irreducible
/// factors of degree d. Cantor–Zassenhaus for odd p, the trace map for
/// p = 2.
fn equal_degree_split(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
    let p = f.p;
    let n = f.degree().unwrap();
    if n == d {
        out.push(f.clone());
        return;
    }
    let split = loop {
        let a = random_poly(rng, p, n - 1);
        if a.degree().is_none() {
            continue;
        }
        let g = if p == 2 {
            // trace map: a + a^2 + a^4 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut power = a.clone();
            for _ in 1..d {
                power = power.mul(&power).rem(f);
                t = t.add(&power);
            }
            t.gcd(f)
        } else {
            let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = a.pow_mod(&exp, f);
            b.sub(&ModPoly::one(p)).gcd(f)
        };
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            break g;
        }
    };
    let quot = f.div_rem(&split).0.make_monic();
    equal_degree_split(&split, d, rng, out);
    equal_degree_split(&quot, d, rng, out);
}

/// Complete factorization of a nonzero polynomial over F_p.
pub fn factor_modp(f: &ModPoly) -> Result<FactorizationModP, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.p;
    let unit = f.leading();
    let monic = f.make_monic();
    let mut rng = ChaCha8Rng::seed_from_u64(coefficient_hash(f));
    let mut factors: Vec<(ModPoly, usize)> = Vec::new();
    if monic.degree().unwrap() > 0 {
        for (part, mult) in squarefree_decomposition(&monic) {
            for (block, d) in distinct_degree_split(&part) {
                let mut irreducibles = Vec::new();
                equal_degree_split(&block, d, &mut rng, &mut irreducibles);
                for g in irreducibles {
                    factors.push((g, mult));
                }
            }
        }
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs))
    });
    Ok(FactorizationModP { p, unit, factors })
}

/// Rabin's test: g of degree d is irreducible over F_p iff
/// x^(p^d) ≡ x (mod g) and gcd(x^(p^(d/l)) - x, g) = 1 for every prime
/// l dividing d. Independent of the factorization path.
pub fn is_irreducible_modp(g: &ModPoly) -> bool {
    let p = g.p;
    let d = match g.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let x = ModPoly::x(p);
    let frob = x.pow_mod(&BigUint::from(p).pow(d as u32), g);
    if frob != x.rem(g) {
        return false;
    }
    for (l, _) in factor_u64(d as u64) {
        let e = d / l as usize;
        let h = x.pow_mod(&BigUint::from(p).pow(e as u32), g);
        if !h.sub(&x).gcd(g).is_one() {
            return false;
        }
    }
    true
}

/// Degrees of the irreducible factors of f mod p, sorted with
/// multiplicity, plus whether the reduction is squarefree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreePattern {
    pub p: u64,
    pub degrees: Vec<usize>,
    pub squarefree: bool,
}

pub fn degree_multiset(f: &IntPoly, p: u64) -> Result<DegreePattern, Error> {
    let reduced = reduce_mod(f, p)?;
    if reduced.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fact = factor_modp(&reduced)?;
    Ok(DegreePattern {
        p,
        degrees: fact.degrees(),
        squarefree: fact.is_squarefree(),
    })
}

/// Outcome of the degree-pattern irreducibility oracle. The oracle can
/// certify irreducibility; it never claims reducibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Irreducible {
        /// (prime, factor degrees) actually used, in search order.
        evidence: Vec<(u64, Vec<usize>)>,
        /// primes skipped because the reduction was not squarefree.
        skipped: Vec<u64>,
    },
    Inconclusive {
        reason: String,
        skipped: Vec<u64>,
    },
}

/// Intersects, across primes with squarefree reduction, the sets of
/// degrees a proper factor over the integers could have (subset sums of
/// the mod-p factor degrees). An empty intersection proves
/// irreducibility over the rationals.
pub fn dedekind_irreducibility_oracle(
    f: &IntPoly,
    primes: &[u64],
) -> Result<OracleOutcome, Error> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Err(Error::ZeroPolynomial);
    }
    let mut skipped = Vec::new();
    let mut evidence = Vec::new();
    let mut possible: Option<Vec<bool>> = None;
    for &p in primes {
        let pattern = degree_multiset(f, p)?;
        if !pattern.squarefree {
            skipped.push(p);
            continue;
        }
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for &d in &pattern.degrees {
            for i in (d..=n).rev() {
                if sums[i - d] {
                    sums[i] = true;
                }
            }
        }
        sums[0] = false;
        sums[n] = false;
        let current = match possible.take() {
            None => sums,
            Some(mut acc) => {
                for (a, s) in acc.iter_mut().zip(&sums) {
                    *a = *a && *s;
                }
                acc
            }
        };
        evidence.push((p, pattern.degrees));
        let emptied = current.iter().all(|&b| !b);
        possible = Some(current);
        if emptied {
            return Ok(OracleOutcome::Irreducible { evidence, skipped });
        }
    }
    let reason = if evidence.is_empty() {
        "no usable prime: every reduction was skipped".to_string()
    } else {
        "achievable proper-factor degrees remain after all primes".to_string()
    };
    Ok(OracleOutcome::Inconclusive { reason, skipped })
}

/// Searches the primes dividing the constant term for one that divides
/// every non-leading coefficient while its square misses the constant
/// term. Returns the smallest such prime.
pub fn eisenstein_check(f: &IntPoly) -> Option<u64> {
    if !f.is_monic() || f.degree() == Some(0) {
        return None;
    }
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return None;
    }
    for q in crate::primes::prime_divisors(&c0) {
        let q = match q.to_u64() {
            Some(q) => q,
            None => continue,
        };
        let qb = BigInt::from(q);
        let q2 = &qb * &qb;
        if !(&c0 % &q2).is_zero()
            && f.coeffs()[..f.coeffs().len() - 1]
                .iter()
                .all(|c| (c % &qb).is_zero())
        {
            return Some(q);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::TaylorSpec;

    fn poly(p: u64, coeffs: &[i64]) -> ModPoly {
        ModPoly::new(p, coeffs).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let f = reduce_mod(&IntPoly::from_i64(&[12, 1]), 13).unwrap();
        assert_eq!(f, poly(13, &[12, 1]));

        // every non-leading coefficient of 5!E_5 is divisible by 5
        let (f5, _) = TaylorSpec::taylor_sum(5).to_monic_integer();
        assert_eq!(reduce_mod(&f5, 5).unwrap(), poly(5, &[0, 0, 0, 0, 0, 1]));

        let (f6, _) = TaylorSpec::taylor_sum(6).to_monic_integer();
        assert_eq!(
            reduce_mod(&f6, 13).unwrap(),
            poly(13, &[10, 10, 5, 6, 8, 12, 1])
        );
    }

    #[test]
    fn division_and_gcd() {
        let f = poly(7, &[3, 0, 1, 2]);
        let g = poly(7, &[1, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(r.degree().unwrap_or(0) < g.degree().unwrap());

        let a = poly(5, &[1, 2, 1]); // (x+1)^2
        let b = poly(5, &[2, 3, 1]); // (x+1)(x+2)
        assert_eq!(a.gcd(&b), poly(5, &[1, 1]));
    }

    #[test]
    fn factorization_golden_n5() {
        let (f5, _) = TaylorSpec::taylor_sum(5).to_monic_integer();
        let fact = factor_modp(&reduce_mod(&f5, 17).unwrap()).unwrap();
        assert_eq!(fact.unit, 1);
        assert_eq!(
            fact.factors,
            vec![
                (poly(17, &[4, 9, 1]), 1),
                (poly(17, &[9, 10, 1, 1]), 1),
            ]
        );
        let fact = factor_modp(&reduce_mod(&f5, 61).unwrap()).unwrap();
        assert_eq!(
            fact.factors,
            vec![
                (poly(61, &[14, 1]), 1),
                (poly(61, &[52, 57, 35, 57, 1]), 1),
            ]
        );
    }

    #[test]
    fn factorization_golden_n6() {
        let (f6, _) = TaylorSpec::taylor_sum(6).to_monic_integer();
        let fact = factor_modp(&reduce_mod(&f6, 47).unwrap()).unwrap();
        assert_eq!(
            fact.factors,
            vec![
                (poly(47, &[45, 1]), 1),
                (poly(47, &[17, 2, 1]), 1),
                (poly(47, &[24, 0, 12, 1]), 1),
            ]
        );
    }

    #[test]
    fn factor_product_and_independent_irreducibility() {
        let (f7, _) = TaylorSpec::taylor_sum(7).to_monic_integer();
        for p in [13u64, 61, 5, 2, 3] {
            let reduced = reduce_mod(&f7, p).unwrap();
            let fact = factor_modp(&reduced).unwrap();
            assert_eq!(fact.product(), reduced, "p = {p}");
            for (g, _) in &fact.factors {
                assert!(is_irreducible_modp(g), "p = {p}, factor {g}");
            }
        }
    }

    #[test]
    fn factorization_with_multiplicities() {
        // (x+1)^2 (x+2)^3 mod 5
        let a = poly(5, &[1, 1]);
        let b = poly(5, &[2, 1]);
        let f = a.mul(&a).mul(&b).mul(&b).mul(&b).mul_scalar(3);
        let fact = factor_modp(&f).unwrap();
        assert_eq!(fact.unit, 3);
        assert_eq!(fact.factors, vec![(a, 2), (b, 3)]);
        assert_eq!(fact.product(), f);
        assert!(!fact.is_squarefree());
    }

    #[test]
    fn pth_power_factorization() {
        // x^4 + 2x^2 + 1 = (x^2+1)^2 over F_2: derivative is zero
        let f = poly(2, &[1, 0, 0, 0, 1]); // x^4 + 1 = (x+1)^4 over F_2
        let fact = factor_modp(&f).unwrap();
        assert_eq!(fact.factors, vec![(poly(2, &[1, 1]), 4)]);
        assert_eq!(fact.product(), f);
    }

    #[test]
    fn degree_patterns() {
        let (f5, _) = TaylorSpec::taylor_sum(5).to_monic_integer();
        let pat = degree_multiset(&f5, 17).unwrap();
        assert_eq!(pat.degrees, vec![2, 3]);
        assert!(pat.squarefree);

        let (f7, _) = TaylorSpec::taylor_sum(7).to_monic_integer();
        let pat = degree_multiset(&f7, 13).unwrap();
        assert_eq!(pat.degrees, vec![2, 5]);
        assert!(pat.squarefree);
        let pat = degree_multiset(&f7, 61).unwrap();
        assert_eq!(pat.degrees, vec![1, 6]);
        assert!(pat.squarefree);
    }

    #[test]
    fn squarefree_flag_matches_gcd() {
        let cases = [
            (5u64, vec![1i64, 2, 1]),          // (x+1)^2
            (5, vec![2, 3, 1]),                // (x+1)(x+2)
            (7, vec![3, 0, 1, 2]),
            (2, vec![1, 0, 0, 0, 1]),          // (x+1)^4 over F_2
        ];
        for (p, coeffs) in cases {
            let f = poly(p, &coeffs);
            let fact = factor_modp(&f).unwrap();
            let gcd_sqfree = f.gcd(&f.derivative()).is_one();
            assert_eq!(fact.is_squarefree(), gcd_sqfree, "p = {p}");
        }
    }

    #[test]
    fn oracle_certifies_known_irreducibles() {
        let (f5, _) = TaylorSpec::taylor_sum(5).to_monic_integer();
        match dedekind_irreducibility_oracle(&f5, &[17, 61]).unwrap() {
            OracleOutcome::Irreducible { evidence, .. } => {
                assert_eq!(evidence, vec![(17, vec![2, 3]), (61, vec![1, 4])]);
            }
            other => panic!("expected irreducible, got {other:?}"),
        }
        let (f7, _) = TaylorSpec::taylor_sum(7).to_monic_integer();
        assert!(matches!(
            dedekind_irreducibility_oracle(&f7, &[13, 61]).unwrap(),
            OracleOutcome::Irreducible { .. }
        ));
    }

    #[test]
    fn oracle_inconclusive_on_reducible_input() {
        // (x+1)(x+2): degree 1 is always achievable
        let f = IntPoly::from_i64(&[2, 3, 1]);
        assert!(matches!(
            dedekind_irreducibility_oracle(&f, &[5, 7]).unwrap(),
            OracleOutcome::Inconclusive { .. }
        ));
    }

    #[test]
    fn oracle_with_no_usable_prime() {
        // (x+1)^2 is non-squarefree mod every prime
        let f = IntPoly::from_i64(&[1, 2, 1]);
        match dedekind_irreducibility_oracle(&f, &[3, 5]).unwrap() {
            OracleOutcome::Inconclusive { skipped, .. } => assert_eq!(skipped, vec![3, 5]),
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn eisenstein_witnesses() {
        // 2 fails (4 | 12), 3 works (3 | all, 9 does not divide 12)
        assert_eq!(eisenstein_check(&IntPoly::from_i64(&[12, 12, 6, 1])), Some(3));
        // 2 fails (4 | 24), 3 works (9 does not divide 24)
        assert_eq!(eisenstein_check(&IntPoly::from_i64(&[24, 12, 6, 1])), Some(3));
        assert_eq!(eisenstein_check(&IntPoly::from_i64(&[1, 1, 1])), None);
        // plain Eisenstein at 2
        assert_eq!(eisenstein_check(&IntPoly::from_i64(&[2, 2, 1])), Some(2));
    }

    #[test]
    fn factorization_is_deterministic() {
        let (f7, _) = TaylorSpec::taylor_sum(7).to_monic_integer();
        let reduced = reduce_mod(&f7, 1009).unwrap();
        let a = factor_modp(&reduced).unwrap();
        let b = factor_modp(&reduced).unwrap();
        assert_eq!(a, b);
    }
}
