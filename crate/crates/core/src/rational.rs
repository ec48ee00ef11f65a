//! Exact rationals and the few helpers the rest of the crate needs on top of
//! `num-rational`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in canonical form.
pub type Rational = num_rational::BigRational;

pub fn int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, a plain integer, or a decimal such as `"0.125"`.
///
/// Decimals are converted exactly: `d` fractional digits give denominator `10^d`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::BadRational(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10u32), frac.len());
    let value = Rational::new(num, den);
    Ok(if negative { -value } else { value })
}

/// Smallest integer `n` with `n >= value`, clamped below at zero.
pub fn ceil_nonneg(value: &Rational) -> usize {
    if !value.is_positive() {
        return 0;
    }
    value.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

pub fn ensure_positive(eps: &Rational) -> Result<()> {
    if eps.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveEpsilon(eps.clone()))
    }
}

/// `ceil(eps^-5)`, the iteration budget of the refinement loop.
pub fn iteration_budget(eps: &Rational) -> Result<u64> {
    ensure_positive(eps)?;
    let inv = eps.recip();
    let fifth = num_traits::pow(inv, 5);
    Ok(fifth.ceil().to_integer().to_u64().unwrap_or(u64::MAX))
}

/// Numerator/denominator pair as decimal strings, the wire form of every
/// rational in a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for ExactRational {
    fn from(r: &Rational) -> Self {
        ExactRational {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<&ExactRational> for Rational {
    type Error = Error;

    fn try_from(e: &ExactRational) -> Result<Rational> {
        let bad = || Error::BadRational(format!("{}/{}", e.num, e.den));
        let num: BigInt = e.num.parse().map_err(|_| bad())?;
        let den: BigInt = e.den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(num, den))
    }
}

pub(crate) fn is_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("1/4").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("2/8").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("2").unwrap(), ratio(2, 1));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1e-3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn budget_is_ceiling_of_inverse_fifth_power() {
        assert_eq!(iteration_budget(&ratio(1, 4)).unwrap(), 1024);
        assert_eq!(iteration_budget(&ratio(1, 1)).unwrap(), 1);
        assert_eq!(iteration_budget(&ratio(2, 1)).unwrap(), 1);
        // (3/2)^5 = 243/32 = 7.59...
        assert_eq!(iteration_budget(&ratio(2, 3)).unwrap(), 8);
        assert!(iteration_budget(&ratio(0, 1)).is_err());
    }

    #[test]
    fn ceil_clamps_at_zero() {
        assert_eq!(ceil_nonneg(&ratio(-3, 2)), 0);
        assert_eq!(ceil_nonneg(&ratio(3, 2)), 2);
        assert_eq!(ceil_nonneg(&ratio(4, 2)), 2);
    }

    #[test]
    fn exact_rational_round_trips() {
        let r = ratio(-7, 12);
        let wire = ExactRational::from(&r);
        assert_eq!(wire.num, "-7");
        assert_eq!(wire.den, "12");
        assert_eq!(Rational::try_from(&wire).unwrap(), r);
    }
}
