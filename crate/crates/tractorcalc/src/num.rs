//! Rational scalars and their string form.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact coefficient field.
pub type Q = BigRational;

/// Exponent of the defining function `r`; small, so machine integers suffice.
pub type Exp = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn exp_to_q(e: &Exp) -> Q {
    qr(*e.numer(), *e.denom())
}

/// Convert a rational of modest size to an exponent. Fails for huge values.
pub fn q_to_exp(v: &Q) -> Result<Exp> {
    let n = v
        .numer()
        .to_i64()
        .ok_or_else(|| Error::Parse(format!("exponent {v} too large")))?;
    let d = v
        .denom()
        .to_i64()
        .ok_or_else(|| Error::Parse(format!("exponent {v} too large")))?;
    Ok(Exp::new(n, d))
}

/// Returns the integer value if `v` is integral.
pub fn as_integer(v: &Q) -> Option<i64> {
    if v.is_integer() {
        v.numer().to_i64()
    } else {
        None
    }
}

pub fn format_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn format_exp(v: &Exp) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Falling product `m (m-1) ... (m-j+1)`, equal to one for `j = 0`.
pub fn falling(m: &Q, j: usize) -> Q {
    let mut acc = Q::one();
    for i in 0..j {
        acc *= m - q(i as i64);
    }
    acc
}

pub fn factorial(j: usize) -> Q {
    (1..=j as i64).fold(Q::one(), |acc, i| acc * q(i))
}

pub fn is_nonneg_integer(v: &Q) -> bool {
    v.is_integer() && !v.is_negative()
}
