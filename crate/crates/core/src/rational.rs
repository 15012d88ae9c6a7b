//! Exact rational lengths. All metric data in this crate is `BigRational`;
//! nothing is ever rounded to floating point.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "p/q" or "n" into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// Format in lowest terms as "p/q", or "n" when integral.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed-point decimal rendering (used only for SVG coordinates).
pub fn decimal_string(r: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r * Rat::from_integer(scale.clone())).round();
    let v = scaled.numer().clone();
    let neg = v.is_negative();
    let abs = v.abs();
    let whole = &abs / &scale;
    let frac = &abs % &scale;
    let mut s = format!("{}.{:0width$}", whole, frac, width = digits as usize);
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    if neg && s != "0" {
        s.insert(0, '-');
    }
    s
}

pub fn rat_one() -> Rat {
    Rat::one()
}
