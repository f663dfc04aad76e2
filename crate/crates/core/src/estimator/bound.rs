//! Exact bound values: rationals and `n`-th roots of rationals.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::rational::{exact_nth_root, format_rational, parse_rational, pow, Rational};

/// A nonnegative exact real: either a rational or `index`-th root of a
/// rational. Roots whose radicand is a perfect power are stored as rationals,
/// so structural equality agrees with numeric equality.
#[derive(Clone, Debug, Eq, Hash)]
pub enum BoundValue {
    Rational(Rational),
    Root { radicand: Rational, index: u32 },
}

impl BoundValue {
    pub fn rational(q: Rational) -> Self {
        BoundValue::Rational(q)
    }

    pub fn root(radicand: Rational, index: u32) -> Self {
        assert!(index >= 1, "root index must be positive");
        assert!(!radicand.is_negative(), "radicand must be nonnegative");
        match exact_nth_root(&radicand, index) {
            Some(q) => BoundValue::Rational(q),
            None => BoundValue::Root { radicand, index },
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            BoundValue::Rational(q) => Some(q),
            BoundValue::Root { .. } => None,
        }
    }

    fn parts(&self) -> (&Rational, u32) {
        match self {
            BoundValue::Rational(q) => (q, 1),
            BoundValue::Root { radicand, index } => (radicand, *index),
        }
    }

    /// Advisory decimal value; never used in comparisons.
    pub fn approx(&self) -> f64 {
        let (q, i) = self.parts();
        let x = q.to_f64().unwrap_or(f64::NAN);
        if i == 1 {
            x
        } else {
            x.powf(1.0 / i as f64)
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            BoundValue::Rational(q) => Value::String(format_rational(q)),
            BoundValue::Root { radicand, index } => {
                json!({ "root": { "radicand": format_rational(radicand), "index": index } })
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::String(s) => Ok(BoundValue::Rational(parse_rational(s)?)),
            Value::Object(o) => {
                let r = o.get("root").and_then(Value::as_object).ok_or("expected a root record")?;
                let radicand = r
                    .get("radicand")
                    .and_then(Value::as_str)
                    .ok_or("root.radicand must be a string")
                    .map(parse_rational)??;
                let index = r
                    .get("index")
                    .and_then(Value::as_u64)
                    .filter(|&i| i >= 1)
                    .ok_or("root.index must be a positive integer")?;
                if radicand.is_negative() {
                    return Err("root.radicand must be nonnegative".into());
                }
                Ok(BoundValue::root(radicand, index as u32))
            }
            _ => Err("expected a rational string or a root record".into()),
        }
    }
}

impl From<Rational> for BoundValue {
    fn from(q: Rational) -> Self {
        BoundValue::Rational(q)
    }
}

impl Ord for BoundValue {
    fn cmp(&self, other: &Self) -> Ordering {
        let (x, i) = self.parts();
        let (y, j) = other.parts();
        match (x.is_negative(), y.is_negative()) {
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            (true, true) => return x.cmp(y),
            _ => {}
        }
        if x.is_zero() || y.is_zero() {
            return x.cmp(y);
        }
        // x^(1/i) vs y^(1/j)  <=>  x^j vs y^i for nonnegative values
        pow(x, j).cmp(&pow(y, i))
    }
}

impl PartialOrd for BoundValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for BoundValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl PartialEq<Rational> for BoundValue {
    fn eq(&self, other: &Rational) -> bool {
        *self == BoundValue::Rational(other.clone())
    }
}

impl PartialOrd<Rational> for BoundValue {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(&BoundValue::Rational(other.clone())))
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Rational(q) => write!(f, "{q}"),
            BoundValue::Root { radicand, index: 2 } => write!(f, "sqrt({radicand})"),
            BoundValue::Root { radicand, index } => write!(f, "root{index}({radicand})"),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        BoundValue::from_json(&v).map_err(D::Error::custom)
    }
}
