//! Exact rational scalars and their string form.
//!
//! Rationals serialize as `"p/q"` (or just `"p"` when the denominator is 1)
//! in every file format of this crate. `num_rational::BigRational` keeps
//! values reduced with a positive denominator, which is exactly the
//! invariant the formats require.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rat = num_rational::BigRational;

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` as a rational; panics on q = 0 (use [`parse_rat`] for input data).
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"`; rejects q = 0 and anything non-numeric.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_string());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Renders in the canonical `"p"` / `"p/q"` form with positive denominator.
pub fn format_rat(r: &Rat) -> String {
    debug_assert!(r.denom().is_positive());
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("3/-6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(parse_rat("1/0"), Err(Error::BadRational(_))));
    }

    #[test]
    fn junk_rejected() {
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1/2/3").is_err());
    }

    #[test]
    fn format_roundtrip() {
        for s in ["0", "1", "-3", "1/2", "-7/3", "22/7"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
    }
}
