//! Text format: `3/2*t^(1/2) + -1*t^(2)`, optionally followed by `+ O(t^(r))`.
//! The exact zero prints as `0`; a bare rational `c` is read as `c*t^(0)`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::{Exponent, NovikovScalar, Truncation, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse Novikov scalar from {input:?}: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: String,
}

fn fmt_exponent(e: &Exponent) -> String {
    if *e.denom() == 1 {
        format!("{}", e.numer())
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

impl fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.terms().map(|(e, c)| format!("{}*t^({})", c, fmt_exponent(e))).collect();
        if let Truncation::At(r) = self.truncation() {
            parts.push(format!("O(t^({}))", fmt_exponent(&r)));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    Q::from_str(s).ok()
}

fn parse_exponent(s: &str) -> Option<Exponent> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().ok()?, d.trim().parse::<i64>().ok()?),
        None => (s.parse::<i64>().ok()?, 1),
    };
    if d == 0 {
        return None;
    }
    Some(Exponent::new(n, d))
}

/// Parses `t^(p/q)`.
fn parse_t_power(s: &str) -> Option<Exponent> {
    let inner = s.trim().strip_prefix("t^(")?.strip_suffix(')')?;
    parse_exponent(inner)
}

impl FromStr for NovikovScalar {
    type Err = ParseScalarError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParseScalarError { input: input.to_string(), reason: reason.to_string() };
        let trimmed = input.trim();
        if trimmed == "0" {
            return Ok(NovikovScalar::zero());
        }
        if trimmed.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms = Vec::new();
        let mut truncation = Truncation::Exact;
        for raw in trimmed.split(" + ") {
            let piece = raw.trim();
            if let Some(rest) = piece.strip_prefix("O(") {
                if truncation != Truncation::Exact {
                    return Err(err("more than one truncation marker"));
                }
                let inner = rest.strip_suffix(')').ok_or_else(|| err("unterminated truncation marker"))?;
                truncation = Truncation::At(parse_t_power(inner).ok_or_else(|| err("bad truncation exponent"))?);
                continue;
            }
            if truncation != Truncation::Exact {
                return Err(err("terms after truncation marker"));
            }
            let (c, e) = match piece.split_once('*') {
                Some((c, tp)) => (
                    parse_rational(c).ok_or_else(|| err("bad coefficient"))?,
                    parse_t_power(tp).ok_or_else(|| err("bad power of t"))?,
                ),
                None => (parse_rational(piece).ok_or_else(|| err("term must look like c*t^(e) or c"))?, Exponent::zero()),
            };
            if c.is_zero() {
                return Err(err("zero coefficient"));
            }
            terms.push((e, c));
        }
        Ok(NovikovScalar::from_terms(terms, truncation))
    }
}

impl serde::Serialize for NovikovScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for NovikovScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{q, q_frac};

    #[test]
    fn prints_canonical_form() {
        let a = NovikovScalar::from_terms(
            vec![(Exponent::new(1, 2), q_frac(3, 2)), (Exponent::from_integer(2), q(-1))],
            Truncation::Exact,
        );
        assert_eq!(a.to_string(), "3/2*t^(1/2) + -1*t^(2)");
        assert_eq!(a.to_string().parse::<NovikovScalar>().unwrap(), a);
    }

    #[test]
    fn truncation_marker() {
        let s = "1*t^(0) + 1*t^(1) + O(t^(2))";
        let a: NovikovScalar = s.parse().unwrap();
        assert_eq!(a.truncation(), Truncation::At(Exponent::from_integer(2)));
        assert_eq!(a.to_string(), s);
        assert_eq!("O(t^(-1/3))".parse::<NovikovScalar>().unwrap().to_string(), "O(t^(-1/3))");
    }

    #[test]
    fn zero_round_trip() {
        assert_eq!(NovikovScalar::zero().to_string(), "0");
        assert!("0".parse::<NovikovScalar>().unwrap().is_zero());
    }

    #[test]
    fn bare_rationals_are_constants() {
        assert_eq!("-3/4".parse::<NovikovScalar>().unwrap(), NovikovScalar::constant(q_frac(-3, 4)));
        assert_eq!("1 + 2*t^(1)".parse::<NovikovScalar>().unwrap().to_string(), "1*t^(0) + 2*t^(1)");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "t", "1*t^2", "1*t^(1/0)", "O(t^(1)) + 1*t^(0)", "x*t^(1)"] {
            assert!(bad.parse::<NovikovScalar>().is_err(), "{bad}");
        }
    }
}
