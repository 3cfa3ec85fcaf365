//! Exact rational scalars and their `"p/q"` text form.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::syntax(0, format!("not a rational number: {text:?}"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// True if the denominator of `r` divides `d`.
pub fn denominator_divides(r: &Rational, d: &BigInt) -> bool {
    (d % r.denom()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        assert_eq!(to_string(&frac(2, 4)), "1/2");
        assert_eq!(to_string(&frac(-6, 3)), "-2");
        assert_eq!(to_string(&int(0)), "0");
        assert_eq!(parse(" -3/12 ").unwrap(), frac(-1, 4));
        assert_eq!(parse("7").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
