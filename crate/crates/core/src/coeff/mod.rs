//! Exact coefficient field: rationals and rational functions in parameters.

mod mpoly;
mod parse;
mod ratfunc;

pub use mpoly::{gcd as poly_gcd, MPoly};
pub use num_rational::BigRational;
pub use parse::parse_ratfunc;
pub use ratfunc::{ParamSpace, RatFunc};

use num_bigint::BigInt;

/// `n` as a `BigRational`.
pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/d` as a `BigRational`.
pub fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"5"`, `"-7/2"` as an exact rational.
pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| crate::Error::Parse(format!("bad rational '{s}'")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| crate::Error::Parse(format!("bad rational '{s}'")))?;
    if d == BigInt::from(0) {
        return Err(crate::Error::Domain("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}
