//! The classical question-mark function by Stern-Brocot bisection, kept as a
//! one-dimensional reference for the triangle map.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Bounds `(lo, hi)` on `?(x)` after at most `depth` mediant steps.
/// `lo == hi` exactly when `x` is an endpoint reached within `depth` steps.
pub fn minkowski_q_interval(x: &Rational, depth: u32) -> Result<(Rational, Rational)> {
    if x.is_negative() || x > &Rational::one() {
        return Err(Error::OutOfUnitInterval(x.to_string()));
    }
    let (mut ln, mut ld) = (BigInt::zero(), BigInt::one());
    let (mut rn, mut rd) = (BigInt::one(), BigInt::one());
    let mut lv = Rational::zero();
    let mut rv = Rational::one();
    if x.is_zero() {
        return Ok((lv.clone(), lv));
    }
    if x.is_one() {
        return Ok((rv.clone(), rv));
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for _ in 0..depth {
        let mn = &ln + &rn;
        let md = &ld + &rd;
        let m = Rational::new(mn.clone(), md.clone());
        let mv = (&lv + &rv) * &half;
        if &m == x {
            return Ok((mv.clone(), mv));
        }
        if x < &m {
            rn = mn;
            rd = md;
            rv = mv;
        } else {
            ln = mn;
            ld = md;
            lv = mv;
        }
    }
    Ok((lv, rv))
}

/// `?(x)` to within `2^-(depth+1)`; exact for Stern-Brocot nodes up to `depth`.
pub fn minkowski_q(x: &Rational, depth: u32) -> Result<Rational> {
    let (lo, hi) = minkowski_q_interval(x, depth)?;
    if lo == hi {
        Ok(lo)
    } else {
        Ok((lo + hi) / Rational::from_integer(BigInt::from(2)))
    }
}
