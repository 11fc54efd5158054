//! Text form of cyclotomic values inside table files.
//!
//! A value is an integer literal, a rational string `"p/q"`, or an object
//! `{"n": conductor, "terms": [[exponent, numerator, denominator], ...]}` with
//! strictly ascending exponents and at least one term.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Number, Value};

use super::{CycloError, Cyclotomic, RawCyclotomic};

fn bad(msg: impl Into<String>) -> CycloError {
    CycloError::Parse(msg.into())
}

fn parse_bigint(s: &str) -> Result<BigInt, CycloError> {
    s.trim().parse::<BigInt>().map_err(|_| bad(format!("not an integer: {s:?}")))
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, CycloError> {
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_bigint(s)?)),
        Some((p, q)) => {
            let q = parse_bigint(q)?;
            if q.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(parse_bigint(p)?, q))
        }
    }
}

fn integer_of(v: &Value) -> Result<BigInt, CycloError> {
    match v {
        Value::Number(n) => parse_bigint(&n.to_string()),
        Value::String(s) => parse_bigint(s),
        other => Err(bad(format!("expected an integer, found {other}"))),
    }
}

fn number_literal(i: &BigInt) -> Value {
    Value::Number(i.to_string().parse::<Number>().expect("integer literal"))
}

impl Cyclotomic {
    pub fn from_json(v: &Value) -> Result<Self, CycloError> {
        match v {
            Value::Number(_) => Ok(Cyclotomic::from_integer(integer_of(v)?)),
            Value::String(s) => Ok(Cyclotomic::from_rational(parse_rational(s)?)),
            Value::Object(obj) => {
                let n = obj.get("n").ok_or_else(|| bad("missing \"n\""))?;
                let n = u64::try_from(integer_of(n)?).map_err(|_| bad("conductor out of range"))?;
                let terms = obj
                    .get("terms")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("missing \"terms\" array"))?;
                if terms.is_empty() {
                    return Err(bad("\"terms\" must be nonempty"));
                }
                let mut parsed = Vec::with_capacity(terms.len());
                let mut last: Option<u64> = None;
                for t in terms {
                    let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| {
                        bad("each term must be [exponent, numerator, denominator]")
                    })?;
                    let k = u64::try_from(integer_of(&t[0])?)
                        .map_err(|_| bad("exponent out of range"))?;
                    if n == 0 || k >= n {
                        return Err(bad(format!("exponent {k} not below conductor {n}")));
                    }
                    if last.is_some_and(|l| l >= k) {
                        return Err(bad("exponents must be strictly ascending"));
                    }
                    last = Some(k);
                    let den = integer_of(&t[2])?;
                    if den.is_zero() {
                        return Err(bad("zero denominator"));
                    }
                    parsed.push((k, BigRational::new(integer_of(&t[1])?, den)));
                }
                RawCyclotomic { conductor: n, terms: parsed }.canonicalize()
            }
            other => Err(bad(format!("unexpected value {other}"))),
        }
    }

    pub fn to_json(&self) -> Value {
        if let Some(q) = self.as_rational() {
            return if q.is_integer() {
                number_literal(&q.to_integer())
            } else {
                Value::String(format!("{}/{}", q.numer(), q.denom()))
            };
        }
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                json!([
                    k,
                    number_literal(c.numer()),
                    number_literal(c.denom()),
                ])
            })
            .collect();
        debug_assert!(self.terms.iter().all(|(_, c)| c.denom().is_positive()));
        json!({ "n": self.conductor, "terms": terms })
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Cyclotomic::from_json(&v).map_err(D::Error::custom)
    }
}
