//! The polynomial subject grammar:
//!
//! ```text
//! E:n                  the sum family E_n = e_n + e_{n-1}
//! e:n                  the truncated exponential e_n
//! taylor:[c0,...,cn]   integer Taylor coefficients, c_n = 1
//! int:[a0,...,an]      plain integer coefficients, lowest first
//! ```
//!
//! Whitespace is ignored inside the brackets. Errors carry the byte
//! position of the offending character.

use exptaylor::exact::{IntPoly, TaylorSpec};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    TaylorSum(usize),
    TruncatedExp(usize),
    Taylor(TaylorSpec),
    Int(IntPoly),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(position: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        position,
        message: message.into(),
    }
}

fn parse_degree(text: &str, offset: usize) -> Result<usize, ParseError> {
    let n: usize = text
        .trim()
        .parse()
        .map_err(|_| err(offset, format!("expected a degree, found {text:?}")))?;
    if n == 0 {
        return Err(err(offset, "degree must be at least 1"));
    }
    Ok(n)
}

fn parse_bracketed(text: &str, offset: usize) -> Result<Vec<BigInt>, ParseError> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|rest| rest.strip_suffix(']'))
        .ok_or_else(|| err(offset, "expected a bracketed coefficient list [c0,c1,...]"))?;
    let mut out = Vec::new();
    let mut cursor = offset + 1;
    for piece in inner.split(',') {
        let cleaned: String = piece.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err(cursor, "empty coefficient"));
        }
        let value: BigInt = cleaned
            .parse()
            .map_err(|_| err(cursor, format!("invalid integer {:?}", piece.trim())))?;
        out.push(value);
        cursor += piece.len() + 1;
    }
    Ok(out)
}

/// Parses one of the four subject forms.
pub fn parse_poly(text: &str) -> Result<Subject, ParseError> {
    let (tag, rest) = text
        .split_once(':')
        .ok_or_else(|| err(0, "expected one of E:n, e:n, taylor:[...], int:[...]"))?;
    let body_offset = tag.len() + 1;
    match tag.trim() {
        "E" => Ok(Subject::TaylorSum(parse_degree(rest, body_offset)?)),
        "e" => Ok(Subject::TruncatedExp(parse_degree(rest, body_offset)?)),
        "taylor" => {
            let coeffs = parse_bracketed(rest, body_offset)?;
            let spec = TaylorSpec::new(coeffs)
                .map_err(|e| err(body_offset, format!("invalid Taylor family: {e}")))?;
            Ok(Subject::Taylor(spec))
        }
        "int" => {
            let coeffs = parse_bracketed(rest, body_offset)?;
            let poly = IntPoly::new(coeffs);
            if poly.is_zero() {
                return Err(err(body_offset, "the zero polynomial is not a valid subject"));
            }
            Ok(Subject::Int(poly))
        }
        other => Err(err(0, format!("unknown subject form {other:?}"))),
    }
}

impl Subject {
    /// The spec behind family subjects; `None` for raw integer subjects.
    pub fn spec(&self) -> Option<TaylorSpec> {
        match self {
            Subject::TaylorSum(n) => Some(TaylorSpec::taylor_sum(*n)),
            Subject::TruncatedExp(n) => Some(TaylorSpec::truncated_exp(*n)),
            Subject::Taylor(spec) => Some(spec.clone()),
            Subject::Int(_) => None,
        }
    }

    pub fn form(&self) -> &'static str {
        match self {
            Subject::TaylorSum(_) => "taylor-sum",
            Subject::TruncatedExp(_) => "truncated-exp",
            Subject::Taylor(_) => "taylor",
            Subject::Int(_) => "int",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn family_subjects() {
        assert_eq!(parse_poly("E:5").unwrap(), Subject::TaylorSum(5));
        assert_eq!(parse_poly("e:12").unwrap(), Subject::TruncatedExp(12));
        match parse_poly("taylor:[1,1,1]").unwrap() {
            Subject::Taylor(spec) => {
                assert_eq!(spec.coeffs(), TaylorSpec::truncated_exp(2).coeffs())
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn int_subject_with_whitespace() {
        match parse_poly("int:[ 24, 12,6 , 1 ]").unwrap() {
            Subject::Int(poly) => assert_eq!(poly, IntPoly::from_i64(&[24, 12, 6, 1])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("taylor:[1,x,1]").unwrap_err();
        assert!(e.position > 0);
        assert!(e.message.contains("invalid integer"));

        let e = parse_poly("taylor:[1,1,2]").unwrap_err();
        assert!(e.message.contains("invalid Taylor family"));

        assert!(parse_poly("E:0").is_err());
        assert!(parse_poly("q:5").is_err());
        assert!(parse_poly("E5").is_err());
        assert!(parse_poly("int:[0, 0]").is_err());
    }

    #[test]
    fn spec_view() {
        let spec = parse_poly("E:3").unwrap().spec().unwrap();
        assert!(spec.coeff(3).is_one());
        assert!(parse_poly("int:[1,1]").unwrap().spec().is_none());
    }
}
