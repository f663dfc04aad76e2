//! Exact scalar helpers shared by every module, and the string encodings used
//! in JSON documents (`"3"`, `"-1/2"`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_int(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Parses `"p"` or `"p/q"`. The denominator must be nonzero; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let parse_int = |part: &str| -> Result<BigInt, String> {
        part.trim()
            .parse::<BigInt>()
            .map_err(|_| format!("invalid integer `{part}`"))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
    }
}

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Least common multiple of the denominators of `xs`.
pub fn common_denominator(xs: &[Rational]) -> BigInt {
    xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector to an integer vector with the same direction.
pub fn clear_denominators(xs: &[Rational]) -> Vec<BigInt> {
    let l = common_denominator(xs);
    xs.iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect()
}

pub fn dot_int(w: &[BigInt], x: &[Rational]) -> Rational {
    debug_assert_eq!(w.len(), x.len());
    // one reduction at the end instead of one per term
    let l = common_denominator(x);
    let num: BigInt = w.iter().zip(x).map(|(a, b)| a * b.numer() * (&l / b.denom())).sum();
    Rational::new(num, l)
}

pub fn pow(q: &Rational, n: u32) -> Rational {
    num_traits::pow(q.clone(), n as usize)
}

/// Exact rational `n`-th root when one exists.
pub fn exact_nth_root(q: &Rational, n: u32) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer().nth_root(n);
    let den = q.denom().nth_root(n);
    if num.pow(n) == *q.numer() && den.pow(n) == *q.denom() {
        Some(Rational::new(num, den))
    } else {
        None
    }
}

pub mod serde_str {
    //! `#[serde(with = ...)]` adapters that encode exact numbers as strings.

    use super::{format_rational, parse_rational, Rational};
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub mod rational {
        use super::*;

        pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&format_rational(q))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
            let s = String::deserialize(d)?;
            parse_rational(&s).map_err(D::Error::custom)
        }
    }

    pub mod rational_vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&format_rational(q))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| parse_rational(s).map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod int {
        use super::*;

        pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&x.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
            let s = String::deserialize(d)?;
            s.trim().parse::<BigInt>().map_err(|_| D::Error::custom(format!("invalid integer `{s}`")))
        }
    }

    pub mod int_vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| {
                    s.trim()
                        .parse::<BigInt>()
                        .map_err(|_| D::Error::custom(format!("invalid integer `{s}`")))
                })
                .collect()
        }
    }

    pub mod option_rational {
        use super::*;

        pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match q {
                Some(q) => s.serialize_some(&format_rational(q)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| parse_rational(&s).map_err(D::Error::custom))
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-2/4").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7));
        assert_eq!(format_rational(&frac(3, 2)), "3/2");
        assert_eq!(format_rational(&frac(4, 2)), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn nth_roots() {
        assert_eq!(exact_nth_root(&rat(64), 3), Some(rat(4)));
        assert_eq!(exact_nth_root(&frac(9, 4), 2), Some(frac(3, 2)));
        assert_eq!(exact_nth_root(&rat(3), 2), None);
    }
}
