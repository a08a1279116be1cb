//! Exact rational scalars and small helpers around `num-rational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qbig(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn floor_int(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil_int(x: &Rational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

pub fn floor_i64(x: &Rational) -> i64 {
    floor_int(x).to_i64().expect("floor out of i64 range")
}

pub fn ceil_i64(x: &Rational) -> i64 {
    ceil_int(x).to_i64().expect("ceil out of i64 range")
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Lossy conversion, used only for rendering.
pub fn to_f64(x: &Rational) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // very large parts: scale down by bit length first
        let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(900);
        let n = (x.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (x.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("decimal input `{0}` is not accepted; write it as an exact fraction such as `{1}`")]
    Decimal(String, String),
    #[error("cannot parse `{0}` as a fraction")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `a`, `-a` or `a/b`. Decimal notation is rejected with a hint
/// showing the exact fraction it would have meant.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    if t.contains('.') || t.contains('e') || t.contains('E') {
        return Err(ParseRationalError::Decimal(t.to_string(), decimal_hint(t)));
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| ParseRationalError::Malformed(t.to_string()))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| ParseRationalError::Malformed(t.to_string()))?;
    if d.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(t.to_string()));
    }
    Ok(Rational::new(n, d))
}

fn decimal_hint(t: &str) -> String {
    let Some((ip, fp)) = t.split_once('.') else {
        return "p/q".to_string();
    };
    if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
        return "p/q".to_string();
    }
    let neg = ip.starts_with('-');
    let ip = ip.trim_start_matches(['-', '+']);
    let ip = if ip.is_empty() { "0" } else { ip };
    let (Ok(i), Ok(f)) = (ip.parse::<BigInt>(), fp.parse::<BigInt>()) else {
        return "p/q".to_string();
    };
    let scale = num_traits::pow(BigInt::from(10), fp.len());
    let mut r = Rational::new(i * &scale + f, scale);
    if neg {
        r = -r;
    }
    r.to_string()
}

/// Display wrapper printing `a` or `a/b`.
pub struct Frac<'a>(pub &'a Rational);

impl fmt::Display for Frac<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.abs().gcd(&b.abs())
}

pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Serde adapter: rationals as `"a/b"` strings.
pub mod serde_q {
    use super::{parse_rational, Frac, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&Frac(x).to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    pub mod opt {
        use super::*;
        pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_some(&Frac(v).to_string()),
                None => s.serialize_none(),
            }
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let s: Option<String> = Option::deserialize(d)?;
            s.map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;
        pub fn serialize<S: Serializer>(x: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(x.len()))?;
            for v in x {
                seq.serialize_element(&Frac(v).to_string())?;
            }
            seq.end()
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let v: Vec<String> = Vec::deserialize(d)?;
            v.iter()
                .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rational("10/4").unwrap(), q(5, 2));
        assert_eq!(parse_rational("-3").unwrap(), qi(-3));
        assert_eq!(parse_rational(" 7/-14 ").unwrap(), q(-1, 2));
    }

    #[test]
    fn decimals_rejected_with_hint() {
        match parse_rational("1.25") {
            Err(ParseRationalError::Decimal(_, hint)) => assert_eq!(hint, "5/4"),
            other => panic!("{other:?}"),
        }
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn floor_ceil_negative() {
        assert_eq!(floor_i64(&q(-1, 2)), -1);
        assert_eq!(ceil_i64(&q(-1, 2)), 0);
        assert_eq!(floor_i64(&q(7, 3)), 2);
        assert_eq!(ceil_i64(&q(7, 3)), 3);
        assert_eq!(ceil_i64(&qi(4)), 4);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
