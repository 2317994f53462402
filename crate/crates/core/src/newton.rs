//! p-adic Newton polygons: lower convex hulls of coefficient valuations,
//! the root-valuation consequences they certify, the Newton index, and
//! the single-segment certificate for degrees that are powers of two.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

use crate::error::Error;
use crate::exact::{IntPoly, RatPoly, TaylorSpec};
use crate::padic::{vp_unchecked, Valuation};
use crate::primes;

/// One finite point (j, v_p(c_j)) of the valuation set of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuationPoint {
    pub index: usize,
    pub valuation: Valuation,
}

/// A maximal straight piece of the polygon: its slope and horizontal run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub slope: Rational64,
    pub length: usize,
}

/// The lower convex hull of {(j, v_p(c_j)) : c_j != 0}.
///
/// Vertices are the corners only; interior points that lie exactly on a
/// segment are kept separately in `touching`, so callers that need strict
/// above-ness can tell the two apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub p: u64,
    pub vertices: Vec<(usize, i64)>,
    pub segments: Vec<Segment>,
    pub touching: Vec<(usize, i64)>,
    points: Vec<(usize, i64)>,
}

fn cross(o: (usize, i64), a: (usize, i64), b: (usize, i64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    let (bx, by) = (b.0 as i128, b.1 as i128);
    (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
}

impl NewtonPolygon {
    /// Hull of precomputed finite valuation points, ascending in x.
    fn from_points(p: u64, points: Vec<(usize, i64)>) -> Self {
        debug_assert!(!points.is_empty());
        let mut hull: Vec<(usize, i64)> = Vec::new();
        for &pt in &points {
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
                hull.pop();
            }
            hull.push(pt);
        }
        let segments = hull
            .windows(2)
            .map(|w| {
                let run = (w[1].0 - w[0].0) as i64;
                Segment {
                    slope: Rational64::new(w[1].1 - w[0].1, run),
                    length: run as usize,
                }
            })
            .collect();
        let mut touching = Vec::new();
        for &(x, y) in &points {
            if hull.binary_search_by_key(&x, |v| v.0).is_ok() {
                continue;
            }
            let seg = hull.windows(2).find(|w| w[0].0 < x && x < w[1].0).unwrap();
            if cross(seg[0], (x, y), seg[1]) == 0 {
                touching.push((x, y));
            } else {
                debug_assert!(cross(seg[0], (x, y), seg[1]) < 0, "point below hull");
            }
        }
        NewtonPolygon {
            p,
            vertices: hull,
            segments,
            touching,
            points,
        }
    }

    /// The p-adic Newton polygon of a rational polynomial.
    pub fn of_rat(f: &RatPoly, p: u64) -> Result<Self, Error> {
        if !primes::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let points = f
            .coeffs()
            .iter()
            .enumerate()
            .filter_map(|(j, c)| match vp_unchecked(c, p) {
                Valuation::Finite(v) => Some((j, v)),
                Valuation::Infinite => None,
            })
            .collect();
        Ok(Self::from_points(p, points))
    }

    /// The p-adic Newton polygon of an integer polynomial.
    pub fn of_int(f: &IntPoly, p: u64) -> Result<Self, Error> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Self::of_rat(&f.to_rat_poly(), p)
    }

    /// All finite valuation points the hull was built from.
    pub fn points(&self) -> &[(usize, i64)] {
        &self.points
    }

    /// For each segment of slope m and horizontal run l: l roots of
    /// p-adic valuation -m. Counts sum to deg f minus the lowest finite
    /// x-coordinate.
    pub fn root_valuations(&self) -> Vec<(Rational64, usize)> {
        self.segments
            .iter()
            .map(|s| (-s.slope, s.length))
            .collect()
    }

    /// True when the polygon is one segment of the given slope.
    pub fn is_single_slope(&self, slope: Rational64) -> bool {
        self.segments.len() == 1 && self.segments[0].slope == slope
    }
}

/// Slope-denominator bookkeeping behind the Newton index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonIndexReport {
    /// lcm of the denominators of all nonzero polygon slopes, over every
    /// prime where the polygon is not flat.
    pub index: BigUint,
    /// prime -> denominators (lowest terms) of its nonzero slopes.
    pub contributions: BTreeMap<u64, BTreeSet<u64>>,
}

/// Primes that can give the polynomial a non-flat polygon: those dividing
/// some coefficient's numerator or denominator.
fn relevant_primes(f: &RatPoly) -> Result<BTreeSet<u64>, Error> {
    let mut set = BTreeSet::new();
    for c in f.coeffs() {
        if c.is_zero() {
            continue;
        }
        for value in [c.numer(), c.denom()] {
            for p in primes::prime_divisors(value) {
                let p = p.to_u64().ok_or_else(|| {
                    Error::Precondition(
                        "coefficient prime factor exceeds the 64-bit search range".into(),
                    )
                })?;
                set.insert(p);
            }
        }
    }
    Ok(set)
}

/// The Newton index: the lcm of the denominators of all Newton polygon
/// slopes of `f`, over every prime. Only primes dividing some
/// coefficient's numerator or denominator can contribute a nonzero
/// slope, so the search is over that finite set.
pub fn newton_index(f: &RatPoly) -> Result<NewtonIndexReport, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut contributions: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
    let mut index = BigUint::one();
    for p in relevant_primes(f)? {
        let np = NewtonPolygon::of_rat(f, p)?;
        let denoms: BTreeSet<u64> = np
            .segments
            .iter()
            .filter(|s| !s.slope.is_zero())
            .map(|s| *s.slope.denom() as u64)
            .collect();
        if denoms.is_empty() {
            continue;
        }
        for &d in &denoms {
            index = index.lcm(&BigUint::from(d));
        }
        contributions.insert(p, denoms);
    }
    Ok(NewtonIndexReport {
        index,
        contributions,
    })
}

/// What the single 2-adic slope says about roots of the form ±2^t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoAdicRootValue {
    /// Every root has this integer 2-adic valuation t, so the only
    /// possible rational roots are ±2^t.
    Integral(i64),
    /// Every root has this non-integer 2-adic valuation, so no root of
    /// the form ±2^t exists at all.
    NonIntegral(Rational64),
}

/// Certificate that for a degree n = 2^s family the 2-adic polygon of
/// the scaled polynomial n!·f is the single segment joining its two
/// endpoint vertices, with every interior point strictly above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerOfTwoSlope {
    pub n: usize,
    pub s: u32,
    /// Endpoints of NP_2(n!·f), the monic integer form.
    pub scaled_vertices: [(usize, i64); 2],
    /// The same endpoints translated down by v_2(n!), i.e. NP_2(f).
    pub poly_vertices: [(usize, i64); 2],
    pub slope: Rational64,
    pub root_valuation: TwoAdicRootValue,
}

/// Verifies the single-segment shape of NP_2 for a spec of degree 2^s
/// whose constant term is ±2^k. Refuses loudly if any interior point
/// touches or crosses the endpoint segment.
pub fn power_of_two_slope_certificate(
    spec: &TaylorSpec,
    s: u32,
) -> Result<PowerOfTwoSlope, Error> {
    let n = spec.degree();
    if n != 1usize << s {
        return Err(Error::Precondition(format!("degree {n} is not 2^{s}")));
    }
    let (k, _) = spec
        .constant_power_of_two()
        .ok_or_else(|| Error::Refused("constant term is not ±2^k".into()))?;
    let (scaled, _) = spec.to_monic_integer();
    // v_2(n!) = n - 1 when n = 2^s
    let v2_scale = (n - 1) as i64;
    let y0 = k as i64 + v2_scale;
    // strict above-ness against the segment from (0, y0) to (n, 0):
    // the line there is y(x) = y0 * (n - x) / n
    for (i, c) in scaled.coeffs().iter().enumerate().take(n).skip(1) {
        if c.is_zero() {
            continue;
        }
        let v = c.magnitude().trailing_zeros().unwrap_or(0) as i64;
        if v as i128 * n as i128 <= y0 as i128 * (n - i) as i128 {
            return Err(Error::Refused(format!(
                "interior point ({i}, {v}) does not lie strictly above the endpoint segment"
            )));
        }
    }
    let slope = Rational64::new(-y0, n as i64);
    let root_val = -slope;
    let root_valuation = if root_val.is_integer() {
        TwoAdicRootValue::Integral(root_val.to_integer())
    } else {
        TwoAdicRootValue::NonIntegral(root_val)
    };
    Ok(PowerOfTwoSlope {
        n,
        s,
        scaled_vertices: [(0, y0), (n, 0)],
        poly_vertices: [(0, k as i64), (n, -v2_scale)],
        slope,
        root_valuation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use num_bigint::BigInt;

    fn slope(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn two_point_hull() {
        // x^2 - p has points (0,1), (2,0): one segment of slope -1/2
        for p in [2u64, 3, 5, 13] {
            let f = IntPoly::new(vec![
                BigInt::from(-(p as i64)),
                BigInt::from(0),
                BigInt::from(1),
            ]);
            let np = NewtonPolygon::of_int(&f, p).unwrap();
            assert_eq!(np.vertices, vec![(0, 1), (2, 0)]);
            assert!(np.is_single_slope(slope(-1, 2)));
            assert_eq!(np.root_valuations(), vec![(slope(1, 2), 2)]);
        }
    }

    #[test]
    fn taylor_sum_eight_two_adic() {
        let f = TaylorSpec::taylor_sum(8).to_rat_poly();
        let np = NewtonPolygon::of_rat(&f, 2).unwrap();
        assert_eq!(np.vertices, vec![(0, 1), (8, -7)]);
        assert!(np.is_single_slope(slope(-1, 1)));
        assert_eq!(np.root_valuations(), vec![(slope(1, 1), 8)]);
    }

    #[test]
    fn scaled_taylor_sum_five_three_adic() {
        let (f, _) = TaylorSpec::taylor_sum(5).to_monic_integer();
        let np = NewtonPolygon::of_int(&f, 3).unwrap();
        assert_eq!(np.vertices, vec![(0, 1), (3, 0), (5, 0)]);
        assert_eq!(
            np.root_valuations(),
            vec![(slope(1, 3), 3), (slope(0, 1), 2)]
        );
        // (4, 0) sits on the flat segment without being a corner
        assert_eq!(np.touching, vec![(4, 0)]);
    }

    #[test]
    fn zero_coefficients_are_skipped() {
        // x^3 + 2x: points only at (1,1) and (3,0)
        let f = IntPoly::from_i64(&[0, 2, 0, 1]);
        let np = NewtonPolygon::of_int(&f, 2).unwrap();
        assert_eq!(np.vertices, vec![(1, 1), (3, 0)]);
        assert_eq!(np.root_valuations(), vec![(slope(1, 2), 2)]);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(
            NewtonPolygon::of_int(&IntPoly::zero(), 2),
            Err(Error::ZeroPolynomial)
        );
        assert_eq!(
            NewtonPolygon::of_int(&IntPoly::one(), 4),
            Err(Error::NotPrime(4))
        );
    }

    #[test]
    fn index_of_scaled_taylor_sum_five() {
        let (f, _) = TaylorSpec::taylor_sum(5).to_monic_integer();
        let report = newton_index(&f.to_rat_poly()).unwrap();
        assert_eq!(report.index, BigUint::from(15u32));
        let expected: BTreeMap<u64, BTreeSet<u64>> = [
            (2, BTreeSet::from([5])),
            (3, BTreeSet::from([3])),
            (5, BTreeSet::from([5])),
        ]
        .into();
        assert_eq!(report.contributions, expected);
    }

    #[test]
    fn index_of_taylor_sum_eight() {
        let f = TaylorSpec::taylor_sum(8).to_rat_poly();
        let report = newton_index(&f).unwrap();
        assert_eq!(report.index, BigUint::from(105u32));
        let expected: BTreeMap<u64, BTreeSet<u64>> = [
            (2, BTreeSet::from([1])),
            (3, BTreeSet::from([3])),
            (5, BTreeSet::from([5])),
            (7, BTreeSet::from([7])),
        ]
        .into();
        assert_eq!(report.contributions, expected);
    }

    #[test]
    fn index_of_x_squared_minus_two() {
        let f = IntPoly::from_i64(&[-2, 0, 1]).to_rat_poly();
        let report = newton_index(&f).unwrap();
        assert_eq!(report.index, BigUint::from(2u32));
    }

    #[test]
    fn power_of_two_certificate_unit_constant() {
        // e_8 has c_0 = 1: scaled endpoints (0, 7), (8, 0), slope in (-1, 0)
        let spec = TaylorSpec::truncated_exp(8);
        let cert = power_of_two_slope_certificate(&spec, 3).unwrap();
        assert_eq!(cert.scaled_vertices, [(0, 7), (8, 0)]);
        assert_eq!(cert.slope, slope(-7, 8));
        assert_eq!(
            cert.root_valuation,
            TwoAdicRootValue::NonIntegral(slope(7, 8))
        );
    }

    #[test]
    fn power_of_two_certificate_taylor_sum() {
        let cert = power_of_two_slope_certificate(&TaylorSpec::taylor_sum(8), 3).unwrap();
        assert_eq!(cert.slope, slope(-1, 1));
        assert_eq!(cert.poly_vertices, [(0, 1), (8, -7)]);
        assert_eq!(cert.scaled_vertices, [(0, 8), (8, 0)]);
        assert_eq!(cert.root_valuation, TwoAdicRootValue::Integral(1));

        let cert4 = power_of_two_slope_certificate(&TaylorSpec::taylor_sum(4), 2).unwrap();
        assert_eq!(cert4.poly_vertices, [(0, 1), (4, -3)]);
        assert_eq!(cert4.root_valuation, TwoAdicRootValue::Integral(1));
        // and -2 is indeed a root of E_4
        assert!(TaylorSpec::taylor_sum(4)
            .to_rat_poly()
            .eval(&Rational::from(BigInt::from(-2)))
            .is_zero());
    }

    #[test]
    fn power_of_two_certificate_refuses_touching_points() {
        // c = (2, 1, 1): F = x^2 + 2x + 4 has the point (1, 1) exactly on
        // the segment from (0, 2) to (2, 0)
        let spec =
            TaylorSpec::new(vec![BigInt::from(2), BigInt::from(1), BigInt::from(1)]).unwrap();
        let err = power_of_two_slope_certificate(&spec, 1).unwrap_err();
        assert!(matches!(err, Error::Refused(_)));
    }

    #[test]
    fn wrong_degree_is_a_precondition_error() {
        let err = power_of_two_slope_certificate(&TaylorSpec::taylor_sum(6), 3).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
