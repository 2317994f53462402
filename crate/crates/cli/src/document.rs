//! JSON document schema, version "1".
//!
//! Documents are built from core certificate values, serialized with
//! serde_json in struct field order, and are stable byte-for-byte for
//! identical inputs. `validate` re-derives the checkable claims of a
//! parsed document: factor products, polygon vertices, and verdict
//! vocabulary.

use num_bigint::BigInt;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use exptaylor::exact::{IntPoly, Rational, TaylorSpec};
use exptaylor::galois::{
    AlternatingEvidence, CubicFactorEvidence, CycleWitness, DiscMethod, DiscriminantReport,
    FastPath, GaloisCertificate, WeightedFactorialSum,
};
use exptaylor::modp::{FactorizationModP, OracleOutcome};
use exptaylor::newton::{NewtonPolygon, PowerOfTwoSlope, TwoAdicRootValue};
use exptaylor::schur::{EvidenceStep, IrreducibilityCertificate, Verdict};

use crate::subject::Subject;

pub const SCHEMA_VERSION: &str = "1";

fn ratio_string(r: Rational64) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_string(r: &Rational) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn coeff_strings(f: &IntPoly) -> Vec<String> {
    f.coeffs().iter().map(|c| c.to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubjectDoc {
    pub form: String,
    pub degree: u64,
    pub coefficients: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc(pub String, pub String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentDoc {
    pub slope: String,
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonDoc {
    pub prime: u64,
    pub vertices: Vec<VertexDoc>,
    pub segments: Vec<SegmentDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub touching: Vec<VertexDoc>,
}

impl PolygonDoc {
    pub fn from_polygon(np: &NewtonPolygon) -> Self {
        PolygonDoc {
            prime: np.p,
            vertices: np
                .vertices
                .iter()
                .map(|&(x, y)| VertexDoc(x.to_string(), y.to_string()))
                .collect(),
            segments: np
                .segments
                .iter()
                .map(|s| SegmentDoc {
                    slope: ratio_string(s.slope),
                    length: s.length as u64,
                })
                .collect(),
            touching: np
                .touching
                .iter()
                .map(|&(x, y)| VertexDoc(x.to_string(), y.to_string()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSlopeDoc {
    pub scaled_vertices: Vec<VertexDoc>,
    pub poly_vertices: Vec<VertexDoc>,
    pub slope: String,
    pub root_valuation: String,
    pub integral: bool,
}

impl PowerSlopeDoc {
    fn from_evidence(e: &PowerOfTwoSlope) -> Self {
        let pair = |v: &[(usize, i64); 2]| {
            v.iter()
                .map(|&(x, y)| VertexDoc(x.to_string(), y.to_string()))
                .collect()
        };
        let (root_valuation, integral) = match e.root_valuation {
            TwoAdicRootValue::Integral(t) => (t.to_string(), true),
            TwoAdicRootValue::NonIntegral(r) => (ratio_string(r), false),
        };
        PowerSlopeDoc {
            scaled_vertices: pair(&e.scaled_vertices),
            poly_vertices: pair(&e.poly_vertices),
            slope: ratio_string(e.slope),
            root_valuation,
            integral,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDoc {
    pub coefficients: Vec<String>,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationDoc {
    pub prime: u64,
    pub unit: u64,
    pub factors: Vec<FactorDoc>,
}

impl FactorizationDoc {
    pub fn from_factorization(f: &FactorizationModP) -> Self {
        FactorizationDoc {
            prime: f.p,
            unit: f.unit,
            factors: f
                .factors
                .iter()
                .map(|(g, m)| FactorDoc {
                    coefficients: g.coeffs().iter().map(|c| c.to_string()).collect(),
                    multiplicity: *m as u64,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub conclusive: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub evidence: Vec<OracleEvidenceDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub skipped: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleEvidenceDoc {
    pub prime: u64,
    pub degrees: Vec<u64>,
}

impl OracleDoc {
    fn from_outcome(o: &OracleOutcome) -> Self {
        match o {
            OracleOutcome::Irreducible { evidence, skipped } => OracleDoc {
                conclusive: true,
                evidence: evidence
                    .iter()
                    .map(|(p, degrees)| OracleEvidenceDoc {
                        prime: *p,
                        degrees: degrees.iter().map(|&d| d as u64).collect(),
                    })
                    .collect(),
                skipped: skipped.clone(),
                reason: None,
            },
            OracleOutcome::Inconclusive { reason, skipped } => OracleDoc {
                conclusive: false,
                evidence: Vec::new(),
                skipped: skipped.clone(),
                reason: Some(reason.clone()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceDoc {
    pub step: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub polygon: Option<PowerSlopeDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub candidates: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub roots_found: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cofactor_degree: Option<u64>,
}

impl EvidenceDoc {
    fn bare(step: &str) -> Self {
        EvidenceDoc {
            step: step.to_string(),
            q: None,
            polygon: None,
            candidates: None,
            roots_found: None,
            prime: None,
            value: None,
            oracle: None,
            reason: None,
            cofactor_degree: None,
        }
    }

    fn from_step(step: &EvidenceStep) -> Self {
        match step {
            EvidenceStep::DegreeOne => Self::bare("degree-one"),
            EvidenceStep::OddPrimeDegreeDivisor { q } => EvidenceDoc {
                q: Some(*q),
                ..Self::bare("odd-prime-degree-divisor")
            },
            EvidenceStep::UnitConstantPolygon { polygon } => EvidenceDoc {
                polygon: Some(PowerSlopeDoc::from_evidence(polygon)),
                ..Self::bare("unit-constant-polygon")
            },
            EvidenceStep::PolygonRootSieve {
                polygon,
                candidates,
                roots_found,
            } => EvidenceDoc {
                polygon: polygon.as_ref().map(PowerSlopeDoc::from_evidence),
                candidates: Some(candidates.iter().map(|c| c.to_string()).collect()),
                roots_found: Some(roots_found.iter().map(|c| c.to_string()).collect()),
                ..Self::bare("polygon-root-sieve")
            },
            EvidenceStep::PositiveAtTwo => Self::bare("positive-at-two"),
            EvidenceStep::PositiveAtMinusTwo { value } => EvidenceDoc {
                value: Some(rational_string(value)),
                ..Self::bare("positive-at-minus-two")
            },
            EvidenceStep::CofactorEisenstein { prime } => EvidenceDoc {
                prime: Some(*prime),
                ..Self::bare("cofactor-eisenstein")
            },
            EvidenceStep::CofactorOracle { outcome } => EvidenceDoc {
                oracle: Some(OracleDoc::from_outcome(outcome)),
                ..Self::bare("cofactor-degree-oracle")
            },
            EvidenceStep::CofactorUnresolved { reason } => EvidenceDoc {
                reason: Some(reason.clone()),
                ..Self::bare("cofactor-unresolved")
            },
            EvidenceStep::FullySplit => Self::bare("fully-split"),
            EvidenceStep::StructuralBoundViolated { cofactor_degree } => EvidenceDoc {
                cofactor_degree: Some(*cofactor_degree as u64),
                ..Self::bare("structural-bound-violated")
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityDoc {
    pub verdict: String,
    pub degree: u64,
    pub scale: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factors: Option<Vec<Vec<String>>>,
    pub evidence: Vec<EvidenceDoc>,
}

impl IrreducibilityDoc {
    pub fn from_certificate(cert: &IrreducibilityCertificate) -> Self {
        IrreducibilityDoc {
            verdict: match cert.verdict {
                Verdict::Irreducible => "irreducible",
                Verdict::Reducible => "reducible",
                Verdict::Refused => "refused",
            }
            .to_string(),
            degree: cert.degree as u64,
            scale: cert.scale.to_string(),
            factors: cert
                .factors
                .as_ref()
                .map(|fs| fs.iter().map(coeff_strings).collect()),
            evidence: cert.evidence.iter().map(EvidenceDoc::from_step).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantDoc {
    pub n: u64,
    pub value: String,
    pub sign: i8,
    pub is_square: bool,
    pub value_at_minus_n: String,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factored: Option<Vec<(String, u32)>>,
}

impl DiscriminantDoc {
    pub fn from_report(r: &DiscriminantReport) -> Self {
        DiscriminantDoc {
            n: r.n as u64,
            value: r.value.to_string(),
            sign: r.sign,
            is_square: r.is_square,
            value_at_minus_n: rational_string(&r.value_at_minus_n),
            method: match r.method {
                DiscMethod::ClosedForm => "closed-form",
                DiscMethod::Resultant => "resultant",
                DiscMethod::BothAgree => "both-agree",
            }
            .to_string(),
            factored: r.factored.as_ref().map(|fs| {
                fs.iter().map(|(p, e)| (p.to_string(), *e)).collect()
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDoc {
    pub prime: u64,
    pub pattern: Vec<u64>,
    pub factorization: FactorizationDoc,
}

impl CycleDoc {
    fn from_witness(w: &CycleWitness) -> Self {
        CycleDoc {
            prime: w.prime,
            pattern: w.pattern.iter().map(|&d| d as u64).collect(),
            factorization: FactorizationDoc::from_factorization(&w.factorization),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingDoc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub polygon: Option<PolygonDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub long_cycle: Option<CycleDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub transposition: Option<CycleDoc>,
}

impl AlternatingDoc {
    fn from_evidence(e: &AlternatingEvidence) -> Self {
        match e {
            AlternatingEvidence::ChebyshevPolygon { q, polygon } => AlternatingDoc {
                kind: "newton-index-prime".to_string(),
                prime: Some(*q),
                polygon: Some(PolygonDoc::from_polygon(polygon)),
                long_cycle: None,
                transposition: None,
            },
            AlternatingEvidence::IrreducibleCubic => AlternatingDoc {
                kind: "irreducible-cubic".to_string(),
                prime: None,
                polygon: None,
                long_cycle: None,
                transposition: None,
            },
            AlternatingEvidence::CycleTypes {
                long_cycle,
                transposition,
            } => AlternatingDoc {
                kind: "cycle-types".to_string(),
                prime: None,
                polygon: None,
                long_cycle: Some(CycleDoc::from_witness(long_cycle)),
                transposition: Some(CycleDoc::from_witness(transposition)),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSumDoc {
    pub p: u64,
    pub residue: u64,
    pub holds: bool,
}

impl WeightedSumDoc {
    pub fn from_sum(s: &WeightedFactorialSum) -> Self {
        WeightedSumDoc {
            p: s.p,
            residue: s.residue,
            holds: s.nonzero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FastPathDoc {
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub primes: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witnesses: Option<Vec<WeightedSumDoc>>,
}

impl FastPathDoc {
    pub fn from_path(p: &FastPath) -> Self {
        match p {
            FastPath::ThreeMod4 { witness_prime } => FastPathDoc {
                tag: p.tag().to_string(),
                witness_prime: *witness_prime,
                primes: None,
                witnesses: None,
            },
            FastPath::EvenOddFactorialValuation { primes } => FastPathDoc {
                tag: p.tag().to_string(),
                witness_prime: None,
                primes: Some(primes.clone()),
                witnesses: None,
            },
            FastPath::OneMod4SplitPrime { witnesses } => FastPathDoc {
                tag: p.tag().to_string(),
                witness_prime: None,
                primes: None,
                witnesses: Some(witnesses.iter().map(WeightedSumDoc::from_sum).collect()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicDoc {
    pub cofactor: Vec<String>,
    pub eisenstein_prime: u64,
    pub discriminant: String,
    pub is_square: bool,
}

impl CubicDoc {
    fn from_evidence(c: &CubicFactorEvidence) -> Self {
        CubicDoc {
            cofactor: coeff_strings(&c.cofactor),
            eisenstein_prime: c.eisenstein_prime,
            discriminant: c.discriminant.to_string(),
            is_square: c.is_square,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisDoc {
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub contains_alternating: Option<AlternatingDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub square_test: Option<DiscriminantDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cubic_factor: Option<CubicDoc>,
    pub fast_paths: Vec<FastPathDoc>,
    pub consistent: bool,
}

impl GaloisDoc {
    pub fn from_certificate(cert: &GaloisCertificate) -> Self {
        GaloisDoc {
            group: cert.group.to_string(),
            contains_alternating: cert
                .contains_alternating
                .as_ref()
                .map(AlternatingDoc::from_evidence),
            square_test: cert.square_test.as_ref().map(DiscriminantDoc::from_report),
            cubic_factor: cert.cubic.as_ref().map(CubicDoc::from_evidence),
            fast_paths: cert.fast_paths.iter().map(FastPathDoc::from_path).collect(),
            consistent: cert.consistent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimingsDoc {
    pub irreducibility_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub galois_ms: Option<u64>,
}

/// The top-level certificate document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub subject: SubjectDoc,
    pub irreducibility: IrreducibilityDoc,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub galois: Option<GaloisDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<TimingsDoc>,
}

pub fn subject_doc(subject: &Subject) -> SubjectDoc {
    let (degree, coefficients) = match subject {
        Subject::Int(poly) => (
            poly.degree().unwrap_or(0) as u64,
            coeff_strings(poly),
        ),
        other => {
            let spec = other.spec().unwrap();
            (
                spec.degree() as u64,
                spec.coeffs().iter().map(|c| c.to_string()).collect(),
            )
        }
    };
    SubjectDoc {
        form: subject.form().to_string(),
        degree,
        coefficients,
    }
}

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    s.parse().map_err(|_| format!("invalid integer string {s:?}"))
}

/// Re-derives the checkable claims of a parsed document:
/// * the verdict vocabulary is known;
/// * listed factors re-multiply to the scaled subject polynomial;
/// * an alternating-containment polygon re-verifies against a freshly
///   built Newton polygon.
pub fn validate(doc: &CertificateDocument) -> Result<(), String> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(format!("unknown schema version {:?}", doc.schema_version));
    }
    if !["irreducible", "reducible", "refused"]
        .contains(&doc.irreducibility.verdict.as_str())
    {
        return Err(format!("unknown verdict {:?}", doc.irreducibility.verdict));
    }
    let coeffs: Result<Vec<BigInt>, String> = doc
        .subject
        .coefficients
        .iter()
        .map(|s| parse_bigint(s))
        .collect();
    let coeffs = coeffs?;

    if let Some(factor_lists) = &doc.irreducibility.factors {
        let spec = TaylorSpec::new(coeffs.clone())
            .map_err(|e| format!("subject is not a Taylor family: {e}"))?;
        let (scaled, scale) = spec.to_monic_integer();
        if scale.to_string() != doc.irreducibility.scale {
            return Err("scale does not match the subject degree".to_string());
        }
        let mut product = IntPoly::one();
        for list in factor_lists {
            let fc: Result<Vec<BigInt>, String> =
                list.iter().map(|s| parse_bigint(s)).collect();
            product = product.mul(&IntPoly::new(fc?));
        }
        if product != scaled {
            return Err("factors do not re-multiply to the scaled polynomial".to_string());
        }
    }

    if let Some(galois) = &doc.galois {
        if let Some(alt) = &galois.contains_alternating {
            if let (Some(q), Some(polygon)) = (alt.prime, alt.polygon.as_ref()) {
                let spec = TaylorSpec::new(coeffs.clone())
                    .map_err(|e| format!("subject is not a Taylor family: {e}"))?;
                let rebuilt = NewtonPolygon::of_rat(&spec.to_rat_poly(), q)
                    .map_err(|e| format!("polygon rebuild failed: {e}"))?;
                let expected = PolygonDoc::from_polygon(&rebuilt);
                if expected.vertices != polygon.vertices {
                    return Err(format!(
                        "polygon vertices for p = {q} do not re-verify"
                    ));
                }
            }
        }
    }
    Ok(())
}
