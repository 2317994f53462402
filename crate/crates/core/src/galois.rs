//! Galois group classification for the sum family `E_n`: discriminants
//! in closed form with a Sylvester-resultant oracle, alternating-group
//! containment evidence, cycle-type witnesses from mod-p factorizations,
//! the symmetric-group fast paths, and residue-class enumeration.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::Error;
use crate::exact::{is_perfect_square, IntPoly, Rational, TaylorSpec};
use crate::modp::{degree_multiset, eisenstein_check, factor_modp, reduce_mod, FactorizationModP};
use crate::newton::NewtonPolygon;
use crate::padic::legendre_factorial;
use crate::primes;
use crate::schur::{certify_taylor_sum, Verdict};

/// How a discriminant value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscMethod {
    ClosedForm,
    Resultant,
    BothAgree,
}

/// Exact discriminant of the monic integer polynomial `n! * E_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantReport {
    pub n: usize,
    pub value: BigInt,
    pub sign: i8,
    pub is_square: bool,
    /// E_n(-n), the rational factor the closed form is built from.
    pub value_at_minus_n: Rational,
    pub method: DiscMethod,
    /// Prime factorization, produced at desk scale (n <= 12) only.
    pub factored: Option<Vec<(BigUint, u32)>>,
}

/// Discriminant of `n! * E_n` by the closed form
/// `(-1)^(n(n-1)/2) * 2^(n-1) * (n!)^n * E_n(-n)`.
pub fn discriminant_closed_form(n: usize) -> DiscriminantReport {
    assert!(n >= 1);
    let spec = TaylorSpec::taylor_sum(n);
    let (scaled, scale) = spec.to_monic_integer();
    let at_minus_n = scaled.eval(&BigInt::from(-(n as i64)));
    let value_at_minus_n = Rational::new(at_minus_n.clone(), scale.clone());
    // (n!)^n * E_n(-n) = (n!)^(n-1) * (n! E_n(-n)); the latter is integral
    let mut value = BigInt::from(2).pow(n as u32 - 1) * scale.pow(n as u32 - 1) * at_minus_n;
    if (n * (n - 1) / 2) % 2 == 1 {
        value = -value;
    }
    let sign = match value.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    };
    let is_square = is_perfect_square(&value);
    let factored = if n <= 12 && !value.is_zero() {
        Some(primes::factor_bigint(&value))
    } else {
        None
    };
    DiscriminantReport {
        n,
        value,
        sign,
        is_square,
        value_at_minus_n,
        method: DiscMethod::ClosedForm,
        factored,
    }
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact in the Bareiss scheme
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant of two integer polynomials as the determinant of their
/// Sylvester matrix, evaluated by fraction-free elimination.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt, Error> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    let m = g.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(f.coeff(0).pow(m as u32));
    }
    if m == 0 {
        return Ok(g.coeff(0).pow(n as u32));
    }
    let size = n + m;
    let mut matrix = vec![vec![BigInt::zero(); size]; size];
    for row in 0..m {
        for j in 0..=n {
            matrix[row][row + j] = f.coeff(n - j);
        }
    }
    for row in 0..n {
        for j in 0..=m {
            matrix[m + row][row + j] = g.coeff(m - j);
        }
    }
    Ok(bareiss_determinant(matrix))
}

/// Discriminant of a monic integer polynomial of degree >= 2, via the
/// resultant with its derivative. The independent oracle for
/// [`discriminant_closed_form`].
pub fn discriminant_resultant(f: &IntPoly) -> Result<BigInt, Error> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap();
    if n < 2 {
        return Err(Error::Precondition("degree must be at least 2".into()));
    }
    let res = resultant(f, &f.derivative())?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -res } else { res })
}

/// Closed form cross-checked against the resultant oracle; the result
/// carries `method = BothAgree`.
pub fn discriminant_checked(n: usize) -> Result<DiscriminantReport, Error> {
    let mut report = discriminant_closed_form(n);
    if n >= 2 {
        let (scaled, _) = TaylorSpec::taylor_sum(n).to_monic_integer();
        let oracle = discriminant_resultant(&scaled)?;
        if oracle != report.value {
            return Err(Error::Precondition(format!(
                "closed form and resultant disagree at n = {n}"
            )));
        }
    }
    report.method = DiscMethod::BothAgree;
    Ok(report)
}

/// A mod-p factorization whose degree pattern realizes a permutation
/// cycle type inside the Galois group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub prime: u64,
    pub pattern: Vec<usize>,
    pub factorization: FactorizationModP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleTarget {
    /// An (n-1)-cycle: degree pattern [1, n-1].
    LongCycle,
    /// A transposition: [2, n-2] for odd n, [1, 2, n-3] for even n.
    Transposition,
}

const WITNESS_PRIME_BOUND: u64 = 10_000;

/// Searches primes in increasing order (skipping divisors of the
/// discriminant) for a squarefree factorization of `n! E_n` mod p with
/// the target degree pattern. Exhausting the bound is an alarm.
pub fn cycle_type_witness(n: usize, target: CycleTarget) -> Result<CycleWitness, Error> {
    if !(5..=7).contains(&n) {
        return Err(Error::Precondition(format!(
            "cycle-type witnesses are used for degrees 5 to 7, got {n}"
        )));
    }
    let pattern: Vec<usize> = match target {
        CycleTarget::LongCycle => vec![1, n - 1],
        CycleTarget::Transposition => {
            if n % 2 == 1 {
                vec![2, n - 2]
            } else {
                vec![1, 2, n - 3]
            }
        }
    };
    let disc = discriminant_closed_form(n).value;
    let (scaled, _) = TaylorSpec::taylor_sum(n).to_monic_integer();
    for p in primes::primes().take_while(|&p| p <= WITNESS_PRIME_BOUND) {
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let found = degree_multiset(&scaled, p)?;
        if found.squarefree && found.degrees == pattern {
            let factorization = factor_modp(&reduce_mod(&scaled, p)?)?;
            return Ok(CycleWitness {
                prime: p,
                pattern,
                factorization,
            });
        }
    }
    Err(Error::WitnessExhausted {
        what: format!("degree pattern {pattern:?} for n = {n}"),
        limit: WITNESS_PRIME_BOUND,
    })
}

/// Evidence that the Galois group of `E_n` contains the alternating
/// group (or, for degrees 5 to 7, is the full symmetric group).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlternatingEvidence {
    /// A prime q with n/2 < q < n-2 divides the Newton index: the q-adic
    /// polygon has vertices (0,0), (q,-1), (n,-1), so its first slope
    /// has denominator q.
    ChebyshevPolygon { q: u64, polygon: NewtonPolygon },
    /// An irreducible cubic's group is A_3 or S_3; both contain A_3.
    IrreducibleCubic,
    /// An (n-1)-cycle and a transposition inside a transitive group
    /// generate the full symmetric group.
    CycleTypes {
        long_cycle: CycleWitness,
        transposition: CycleWitness,
    },
}

/// Smallest prime strictly between n/2 and n-2.
pub fn chebyshev_prime(n: usize) -> Option<u64> {
    (n / 2 + 1..n.saturating_sub(2))
        .map(|q| q as u64)
        .find(|&q| 2 * q > n as u64 && primes::is_prime(q))
}

/// Certifies that the group of `E_n` contains A_n (n >= 3, n != 4;
/// the degree-4 case is handled by its cubic factor elsewhere).
pub fn contains_alternating(n: usize) -> Result<AlternatingEvidence, Error> {
    if n < 3 || n == 4 {
        return Err(Error::Precondition(format!(
            "alternating containment applies to n >= 3, n != 4, got {n}"
        )));
    }
    if certify_taylor_sum(n).verdict != Verdict::Irreducible {
        return Err(Error::Precondition(format!(
            "E_{n} is not irreducible"
        )));
    }
    match n {
        3 => Ok(AlternatingEvidence::IrreducibleCubic),
        5..=7 => Ok(AlternatingEvidence::CycleTypes {
            long_cycle: cycle_type_witness(n, CycleTarget::LongCycle)?,
            transposition: cycle_type_witness(n, CycleTarget::Transposition)?,
        }),
        _ => {
            let q = chebyshev_prime(n).ok_or_else(|| Error::WitnessExhausted {
                what: format!("prime strictly between {n}/2 and {n} - 2"),
                limit: n as u64,
            })?;
            let polygon = NewtonPolygon::of_rat(&TaylorSpec::taylor_sum(n).to_rat_poly(), q)?;
            let expected = vec![(0, 0i64), (q as usize, -1), (n, -1)];
            if polygon.vertices != expected {
                return Err(Error::Refused(format!(
                    "unexpected {q}-adic polygon vertices {:?} for n = {n}",
                    polygon.vertices
                )));
            }
            Ok(AlternatingEvidence::ChebyshevPolygon { q, polygon })
        }
    }
}

/// The weighted factorial sum `sum_{i=1}^{p-1} 2^(p-1-i) i!` mod p.
/// Its nonvanishing is the hypothesis on p in the split-prime fast path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightedFactorialSum {
    pub p: u64,
    pub residue: u64,
    pub nonzero: bool,
}

pub fn weighted_factorial_sum(p: u64) -> Result<WeightedFactorialSum, Error> {
    if !primes::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    // 2^(p-2) mod p by square and multiply
    let mut pw = 1u64;
    {
        let mut base = 2 % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                pw = mulmod(pw, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
    }
    let inv2 = (p + 1) / 2;
    let mut fact = 1u64;
    let mut total = 0u64;
    for i in 1..p {
        fact = mulmod(fact, i % p);
        total = (total + mulmod(fact, pw)) % p;
        pw = mulmod(pw, inv2);
    }
    Ok(WeightedFactorialSum {
        p,
        residue: total,
        nonzero: total != 0,
    })
}

/// Odd primes p <= limit whose weighted factorial sum vanishes mod p.
/// No such prime is known; the scan reports rather than asserts.
pub fn scan_weighted_sums(limit: u64) -> Vec<u64> {
    primes::primes()
        .skip(1) // 2
        .take_while(|&p| p <= limit)
        .filter(|&p| !weighted_factorial_sum(p).unwrap().nonzero)
        .collect()
}

/// All residues r mod 4p^2 with r ≡ 1 (mod 4) and r ≡ 2 + pu (mod p^2)
/// for some u in {1, ..., p-1}. Every degree in one of these classes
/// satisfies the split-prime fast path with this p. Exactly p-1 classes.
pub fn residue_classes(p: u64) -> Result<Vec<u64>, Error> {
    let sum = weighted_factorial_sum(p)?;
    if !sum.nonzero {
        return Err(Error::Precondition(format!(
            "p = {p} fails the weighted factorial sum condition"
        )));
    }
    let p2 = p * p;
    let modulus = 4 * p2;
    let mut out = Vec::with_capacity((p - 1) as usize);
    for u in 1..p {
        let a = (2 + p * u) % p2;
        let r = (0..4)
            .map(|j| a + p2 * j)
            .find(|r| r % 4 == 1)
            .expect("p^2 is odd, so some lift is 1 mod 4");
        out.push(r % modulus);
    }
    out.sort_unstable();
    Ok(out)
}

/// One fired symmetric-group fast path, with the data that fired it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FastPath {
    /// n ≡ 3 (mod 4). For n > 3 the witness is the smallest prime
    /// p ≡ 3 (mod 4) dividing n - 4.
    ThreeMod4 { witness_prime: Option<u64> },
    /// n even with v_p(n!) odd for a prime divisor p of n - 1; all such
    /// primes are listed.
    EvenOddFactorialValuation { primes: Vec<u64> },
    /// n ≡ 1 (mod 4) and n - 2 = p * t with p an odd prime not dividing
    /// t and the weighted factorial sum nonzero mod p.
    OneMod4SplitPrime { witnesses: Vec<WeightedFactorialSum> },
}

impl FastPath {
    /// Stable identifier used in serialized certificates.
    pub fn tag(&self) -> &'static str {
        match self {
            FastPath::ThreeMod4 { .. } => "three-mod-four",
            FastPath::EvenOddFactorialValuation { .. } => "even-odd-factorial-valuation",
            FastPath::OneMod4SplitPrime { .. } => "one-mod-four-split-prime",
        }
    }
}

/// The fast paths that fire for degree n (n >= 3). Each fired path
/// implies the group is the full symmetric group.
pub fn fast_paths(n: usize) -> Vec<FastPath> {
    assert!(n >= 3);
    let mut out = Vec::new();
    if n % 4 == 3 {
        let witness_prime = if n == 3 {
            None
        } else {
            let target = (n - 4) as u64;
            Some(
                primes::factor_u64(target)
                    .iter()
                    .map(|&(p, _)| p)
                    .find(|&p| p % 4 == 3)
                    .expect("n - 4 ≡ 3 (mod 4) has a prime factor ≡ 3 (mod 4)"),
            )
        };
        out.push(FastPath::ThreeMod4 { witness_prime });
    }
    if n % 2 == 0 {
        let primes: Vec<u64> = primes::factor_u64((n - 1) as u64)
            .iter()
            .map(|&(p, _)| p)
            .filter(|&p| legendre_factorial(n as u64, p).unwrap() % 2 == 1)
            .collect();
        if !primes.is_empty() {
            out.push(FastPath::EvenOddFactorialValuation { primes });
        }
    }
    if n % 4 == 1 && n >= 5 {
        let mut witnesses = Vec::new();
        for (p, e) in primes::factor_u64((n - 2) as u64) {
            if p == 2 || e != 1 {
                continue;
            }
            let sum = weighted_factorial_sum(p).unwrap();
            if sum.nonzero {
                witnesses.push(sum);
            }
        }
        if !witnesses.is_empty() {
            out.push(FastPath::OneMod4SplitPrime { witnesses });
        }
    }
    out
}

/// The classified group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaloisGroup {
    /// Degree 1, or a perfect square of a linear: the splitting field is
    /// the rationals themselves.
    Trivial,
    /// Degree 4 splits as (x+2) times an irreducible cubic whose group
    /// is S_3; the quartic's group equals the cubic's.
    CubicSymmetric,
    Alternating(usize),
    Symmetric(usize),
    /// Containment evidence failed; only membership between A_n and S_n
    /// is left undecided.
    ContainsAlternatingUndecided(usize),
}

impl std::fmt::Display for GaloisGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GaloisGroup::Trivial => write!(f, "trivial"),
            GaloisGroup::CubicSymmetric => write!(f, "S3-on-cubic-factor"),
            GaloisGroup::Alternating(n) => write!(f, "A{n}"),
            GaloisGroup::Symmetric(n) => write!(f, "S{n}"),
            GaloisGroup::ContainsAlternatingUndecided(n) => {
                write!(f, "contains-A{n}-undecided")
            }
        }
    }
}

/// Evidence for the degree-4 special case: the cubic cofactor, its
/// Eisenstein witness, and its (nonsquare) discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicFactorEvidence {
    pub cofactor: IntPoly,
    pub eisenstein_prime: u64,
    pub discriminant: BigInt,
    pub is_square: bool,
}

/// Full classification output for one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisCertificate {
    pub n: usize,
    pub group: GaloisGroup,
    pub contains_alternating: Option<AlternatingEvidence>,
    pub square_test: Option<DiscriminantReport>,
    pub cubic: Option<CubicFactorEvidence>,
    pub fast_paths: Vec<FastPath>,
    /// False when a fired fast path contradicts the square test.
    pub consistent: bool,
}

/// Classifies the Galois group of `E_n`.
pub fn classify(n: usize) -> GaloisCertificate {
    assert!(n >= 1);
    if n <= 2 {
        return GaloisCertificate {
            n,
            group: GaloisGroup::Trivial,
            contains_alternating: None,
            square_test: None,
            cubic: None,
            fast_paths: Vec::new(),
            consistent: true,
        };
    }
    if n == 4 {
        let cert = certify_taylor_sum(4);
        let cofactor = cert
            .factors
            .as_ref()
            .and_then(|fs| fs.iter().find(|f| f.degree() == Some(3)))
            .cloned()
            .expect("degree 4 splits off an irreducible cubic");
        let eisenstein_prime =
            eisenstein_check(&cofactor).expect("the cubic cofactor has an Eisenstein witness");
        let discriminant =
            discriminant_resultant(&cofactor).expect("cubic is monic of degree 3");
        let is_square = is_perfect_square(&discriminant);
        return GaloisCertificate {
            n,
            group: GaloisGroup::CubicSymmetric,
            contains_alternating: None,
            square_test: None,
            cubic: Some(CubicFactorEvidence {
                cofactor,
                eisenstein_prime,
                discriminant,
                is_square,
            }),
            fast_paths: Vec::new(),
            consistent: true,
        };
    }

    let square_test = discriminant_closed_form(n);
    let paths = fast_paths(n);
    let consistent = paths.is_empty() || !square_test.is_square;
    let contains = contains_alternating(n).ok();
    let group = match &contains {
        Some(AlternatingEvidence::CycleTypes { .. }) => GaloisGroup::Symmetric(n),
        Some(_) => {
            if square_test.is_square {
                GaloisGroup::Alternating(n)
            } else {
                GaloisGroup::Symmetric(n)
            }
        }
        None => GaloisGroup::ContainsAlternatingUndecided(n),
    };
    GaloisCertificate {
        n,
        group,
        contains_alternating: contains,
        square_test: Some(square_test),
        cubic: None,
        fast_paths: paths,
        consistent,
    }
}
