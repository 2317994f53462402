//! Arbitrary-precision rationals and dense exact polynomials, plus the
//! Taylor coefficient families the rest of the crate is built around.
//!
//! Polynomials are immutable values: every operation returns a new value,
//! so they are safe to share across threads and to embed in certificates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational number. The representation is always normalized:
/// positive denominator, gcd(|numerator|, denominator) = 1, zero as 0/1.
pub type Rational = BigRational;

/// n! as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// The integer coefficient family `(c_0, ..., c_n)` of a polynomial
/// `sum c_i x^i / i!` with `c_n = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorSpec {
    coeffs: Vec<BigInt>,
}

impl TaylorSpec {
    /// Validates `c_n = 1` and degree >= 1.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self, Error> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidSpec("degree must be at least 1".into()));
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::InvalidSpec("leading coefficient c_n must be 1".into()));
        }
        Ok(TaylorSpec { coeffs })
    }

    /// The truncated exponential `e_n`: all `c_i = 1`.
    pub fn truncated_exp(n: usize) -> Self {
        assert!(n >= 1, "degree must be at least 1");
        TaylorSpec {
            coeffs: vec![BigInt::one(); n + 1],
        }
    }

    /// The consecutive sum `E_n = e_n + e_{n-1}`: `c_i = 2` for `i < n`,
    /// `c_n = 1`.
    pub fn taylor_sum(n: usize) -> Self {
        assert!(n >= 1, "degree must be at least 1");
        let mut coeffs = vec![BigInt::from(2); n + 1];
        coeffs[n] = BigInt::one();
        TaylorSpec { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Writes `c_0 = sign * 2^k` if the constant coefficient has that
    /// shape; `None` for any other constant (including 0).
    pub fn constant_power_of_two(&self) -> Option<(u32, i8)> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let sign = if c0.is_negative() { -1 } else { 1 };
        let mag = c0.magnitude();
        // a power of two has exactly one set bit
        if mag.count_ones() != 1 {
            return None;
        }
        Some((mag.trailing_zeros().unwrap_or(0) as u32, sign))
    }

    /// The exact rational polynomial `sum c_i x^i / i!`.
    pub fn to_rat_poly(&self) -> RatPoly {
        let mut fact = BigInt::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i > 1 {
                    fact *= i;
                }
                Rational::new(c.clone(), fact.clone())
            })
            .collect();
        RatPoly::new(coeffs)
    }

    /// The monic integer polynomial `n! * f` together with the scale `n!`.
    pub fn to_monic_integer(&self) -> (IntPoly, BigInt) {
        self.to_rat_poly()
            .to_monic_integer()
            .expect("factorial scale always clears a Taylor family")
    }
}

/// Dense polynomial with exact rational coefficients, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    /// Trims trailing zeros so the leading coefficient is nonzero
    /// (the zero polynomial has an empty coefficient list).
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, a: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c;
        }
        acc
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Clears denominators with the factorial of the degree: returns
    /// `n! * self` as a monic integer polynomial plus the scale `n!`.
    ///
    /// Rejects polynomials whose coefficient denominators do not divide
    /// the factorial scale, and scaled polynomials that are not monic.
    pub fn to_monic_integer(&self) -> Result<(IntPoly, BigInt), Error> {
        let n = self.degree().ok_or(Error::ZeroPolynomial)?;
        let scale = factorial(n);
        let mut out = Vec::with_capacity(n + 1);
        for c in &self.coeffs {
            let num = c.numer() * &scale;
            let (q, r) = num_integer::Integer::div_rem(&num, c.denom());
            if !r.is_zero() {
                return Err(Error::NotFactorialShape);
            }
            out.push(q);
        }
        if !out[n].is_one() {
            return Err(Error::NotMonic);
        }
        Ok((IntPoly::new(out), scale))
    }
}

/// Dense polynomial with exact integer coefficients, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    /// Exact Horner evaluation at an integer point.
    pub fn eval(&self, a: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c;
        }
        acc
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval_rational(&self, a: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + Rational::from(c.clone());
        }
        acc
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i] += a;
        }
        for (i, b) in other.coeffs.iter().enumerate() {
            out[i] += b;
        }
        IntPoly::new(out)
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * (i + 1))
                .collect(),
        )
    }

    /// Quotient and remainder by a monic divisor; exact over the integers.
    pub fn div_rem_monic(&self, d: &IntPoly) -> Result<(IntPoly, IntPoly), Error> {
        if !d.is_monic() {
            return Err(Error::NotMonic);
        }
        let dd = d.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = std::mem::replace(&mut rem[i], BigInt::zero());
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs[..dd].iter().enumerate() {
                let sub = dc * &q;
                rem[i - dd + j] -= sub;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    pub fn to_rat_poly(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| Rational::from(c.clone()))
                .collect(),
        )
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// True iff `z` is the square of an integer. Uses the exact integer
/// square root (Newton iteration) plus a final multiplication check.
pub fn is_perfect_square(z: &BigInt) -> bool {
    if z.is_negative() {
        return false;
    }
    let r = z.sqrt();
    &r * &r == *z
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn taylor_sum_of_degree_two_is_half_square() {
        // E_2 = (1/2)x^2 + 2x + 2 = (x+2)^2 / 2
        let f = TaylorSpec::taylor_sum(2).to_rat_poly();
        assert_eq!(f.coeffs(), &[rat(2, 1), rat(2, 1), rat(1, 2)]);
        let square = RatPoly::new(vec![rat(2, 1), rat(1, 1)]);
        assert_eq!(square.mul(&square).scale(&rat(1, 2)), f);
    }

    #[test]
    fn truncated_exp_degree_one() {
        let f = TaylorSpec::truncated_exp(1).to_rat_poly();
        assert_eq!(f.coeffs(), &[rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn taylor_sum_five_scaled() {
        let (f, scale) = TaylorSpec::taylor_sum(5).to_monic_integer();
        assert_eq!(f, IntPoly::from_i64(&[240, 240, 120, 40, 10, 1]));
        assert_eq!(scale, BigInt::from(120));
    }

    #[test]
    fn taylor_sum_six_and_seven_scaled() {
        let (f6, s6) = TaylorSpec::taylor_sum(6).to_monic_integer();
        assert_eq!(f6, IntPoly::from_i64(&[1440, 1440, 720, 240, 60, 12, 1]));
        assert_eq!(s6, BigInt::from(720));

        let (f7, s7) = TaylorSpec::taylor_sum(7).to_monic_integer();
        assert_eq!(
            f7,
            IntPoly::from_i64(&[10080, 10080, 5040, 1680, 420, 84, 14, 1])
        );
        assert_eq!(s7, BigInt::from(5040));
    }

    #[test]
    fn taylor_sum_one_scaled() {
        let (f, scale) = TaylorSpec::taylor_sum(1).to_monic_integer();
        assert_eq!(f, IntPoly::from_i64(&[2, 1]));
        assert_eq!(scale, BigInt::one());
    }

    #[test]
    fn non_factorial_shape_rejected() {
        // denominator 7 does not divide 2! = 2
        let f = RatPoly::new(vec![rat(1, 7), rat(0, 1), rat(1, 2)]);
        assert_eq!(f.to_monic_integer(), Err(Error::NotFactorialShape));
        // clears, but not monic after scaling
        let g = RatPoly::new(vec![rat(1, 2), rat(0, 1), rat(1, 1)]);
        assert_eq!(g.to_monic_integer(), Err(Error::NotMonic));
    }

    #[test]
    fn eval_examples() {
        let e2 = TaylorSpec::taylor_sum(2).to_rat_poly();
        assert!(e2.eval(&rat(-2, 1)).is_zero());

        let (f3, _) = TaylorSpec::taylor_sum(3).to_monic_integer();
        assert_eq!(f3.eval(&BigInt::from(-3)), BigInt::from(3));

        // E_6(-2) = 2/9, summed by an independent term-by-term oracle
        let spec = TaylorSpec::taylor_sum(6);
        let mut oracle = Rational::zero();
        for (i, c) in spec.coeffs().iter().enumerate() {
            oracle += Rational::new(c * BigInt::from(-2).pow(i as u32), factorial(i));
        }
        assert_eq!(oracle, rat(2, 9));
        assert_eq!(spec.to_rat_poly().eval(&rat(-2, 1)), rat(2, 9));
    }

    #[test]
    fn perfect_square_examples() {
        assert!(is_perfect_square(&BigInt::from(144)));
        assert!(!is_perfect_square(&BigInt::from(-4)));
        // 165 = 5! * E_5(-5): 12^2 = 144 < 165 < 169 = 13^2
        assert!(!is_perfect_square(&BigInt::from(165)));
        assert!(is_perfect_square(&BigInt::zero()));
    }

    #[test]
    fn perfect_square_matches_brute_force_to_a_million() {
        let mut r = 0u64;
        for z in 0..=1_000_000u64 {
            while (r + 1) * (r + 1) <= z {
                r += 1;
            }
            assert_eq!(is_perfect_square(&BigInt::from(z)), r * r == z, "z = {z}");
        }
    }

    #[test]
    fn round_trip_through_monic_integer() {
        for n in (1..=200).step_by(13) {
            let spec = TaylorSpec::taylor_sum(n);
            let f = spec.to_rat_poly();
            let (scaled, scale) = spec.to_monic_integer();
            let back = scaled
                .to_rat_poly()
                .scale(&Rational::new(BigInt::one(), scale));
            assert_eq!(back, f, "n = {n}");
        }
    }

    #[test]
    fn constant_shape_detection() {
        assert_eq!(
            TaylorSpec::taylor_sum(5).constant_power_of_two(),
            Some((1, 1))
        );
        assert_eq!(
            TaylorSpec::truncated_exp(5).constant_power_of_two(),
            Some((0, 1))
        );
        let spec =
            TaylorSpec::new(vec![BigInt::from(-8), BigInt::from(3), BigInt::one()]).unwrap();
        assert_eq!(spec.constant_power_of_two(), Some((3, -1)));
        let spec = TaylorSpec::new(vec![BigInt::from(6), BigInt::one()]).unwrap();
        assert_eq!(spec.constant_power_of_two(), None);
    }

    #[test]
    fn monic_division_exact() {
        let f = IntPoly::from_i64(&[48, 48, 24, 8, 1]); // 4! * E_4
        let d = IntPoly::from_i64(&[2, 1]);
        let (q, r) = f.div_rem_monic(&d).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, IntPoly::from_i64(&[24, 12, 6, 1]));
        assert_eq!(q.mul(&d), f);
    }

    #[test]
    fn display_reads_naturally() {
        let f = IntPoly::from_i64(&[12, 12, 6, 1]);
        assert_eq!(f.to_string(), "x^3 + 6*x^2 + 12*x + 12");
        assert_eq!(IntPoly::from_i64(&[-2, 1]).to_string(), "x - 2");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn eval_is_multiplicative(
            a in proptest::collection::vec(-20i64..20, 1..6),
            b in proptest::collection::vec(-20i64..20, 1..6),
            num in -50i64..50,
            den in 1i64..20,
        ) {
            let f = RatPoly::new(a.iter().map(|&c| rat(c, 1)).collect());
            let g = RatPoly::new(b.iter().map(|&c| rat(c, 1)).collect());
            let point = rat(num, den);
            prop_assert_eq!(
                f.mul(&g).eval(&point),
                f.eval(&point) * g.eval(&point)
            );
        }

        #[test]
        fn rationals_stay_normalized(n in -1000i64..1000, d in 1i64..1000) {
            let value = rat(n, d);
            let g = num_integer::gcd(n.abs(), d);
            prop_assert_eq!(value.numer(), &BigInt::from(n / g));
            prop_assert_eq!(value.denom(), &BigInt::from(d / g));
        }
    }
}
