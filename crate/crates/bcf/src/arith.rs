//! Exact scalar arithmetic: arbitrary-precision rationals and complex
//! rationals, plus the string encodings used by problem files.

use num::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat { re, im }
    }

    pub fn from_real(re: Rat) -> Self {
        CRat { re, im: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_real(rat(n))
    }

    pub fn i() -> Self {
        CRat { re: Rat::zero(), im: Rat::one() }
    }

    pub fn zero() -> Self {
        CRat { re: Rat::zero(), im: Rat::zero() }
    }

    pub fn one() -> Self {
        CRat { re: Rat::one(), im: Rat::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The real part, provided the imaginary part vanishes.
    pub fn as_real(&self) -> Option<&Rat> {
        if self.is_real() {
            Some(&self.re)
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        CRat { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |self|^2, exact.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero");
        CRat { re: &self.re / &n, im: -&self.im / &n }
    }

    pub fn to_f64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Stay exact for small operands, fall back to a scaled quotient otherwise.
    match (to_f64_exactish(n), to_f64_exactish(d)) {
        (Some(a), Some(b)) => a / b,
        _ => {
            let bits = n.bits().max(d.bits()) as i64;
            let shift = (bits - 60).max(0) as u64;
            let a = to_f64_exactish(&(n >> shift)).unwrap_or(f64::NAN);
            let b = to_f64_exactish(&(d >> shift)).unwrap_or(f64::NAN);
            a / b
        }
    }
}

fn to_f64_exactish(x: &num::BigInt) -> Option<f64> {
    use num_traits::ToPrimitive;
    if x.bits() <= 62 {
        x.to_i64().map(|v| v as f64)
    } else {
        x.to_f64()
    }
}

impl fmt::Debug for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_crat(self))
    }
}

impl fmt::Display for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_crat(self))
    }
}

macro_rules! crat_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait for &CRat {
            type Output = CRat;
            fn $method(self, rhs: &CRat) -> CRat {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait for CRat {
            type Output = CRat;
            fn $method(self, rhs: CRat) -> CRat {
                (&self).$method(&rhs)
            }
        }
    };
}

crat_binop!(Add, add, |a, b| CRat { re: &a.re + &b.re, im: &a.im + &b.im });
crat_binop!(Sub, sub, |a, b| CRat { re: &a.re - &b.re, im: &a.im - &b.im });
crat_binop!(Mul, mul, |a, b| CRat {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});
crat_binop!(Div, div, |a, b| a * &b.inv());

impl Neg for &CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        CRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        -&self
    }
}

/// Parses "p/q" or "p" as an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = num::BigInt::from_str(n.trim()).map_err(|e| format!("bad numerator {n:?}: {e}"))?;
            let d = num::BigInt::from_str(d.trim()).map_err(|e| format!("bad denominator {d:?}: {e}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n = num::BigInt::from_str(s).map_err(|e| format!("bad integer {s:?}: {e}"))?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Parses a complex rational: "p/q", "p/q+r/si", "p/q-r/si", "r/si", "i", "-i".
pub fn parse_crat(s: &str) -> Result<CRat, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex rational".into());
    }
    if !s.ends_with('i') {
        return Ok(CRat::from_real(parse_rat(&s)?));
    }
    let body = &s[..s.len() - 1];
    // Split at the last '+' or '-' that is not the leading sign and not inside "/".
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if bytes[k] == b'+' || bytes[k] == b'-' {
            split = Some(k);
            break;
        }
    }
    match split {
        Some(k) => {
            let re = parse_rat(&body[..k])?;
            let sign = if bytes[k] == b'-' { -Rat::one() } else { Rat::one() };
            let im_str = &body[k + 1..];
            let im = if im_str.is_empty() { Rat::one() } else { parse_rat(im_str)? };
            Ok(CRat::new(re, sign * im))
        }
        None => {
            let im = if body.is_empty() {
                Rat::one()
            } else if body == "-" {
                -Rat::one()
            } else {
                parse_rat(body)?
            };
            Ok(CRat::new(Rat::zero(), im))
        }
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_crat(c: &CRat) -> String {
    if c.im.is_zero() {
        format_rat(&c.re)
    } else if c.re.is_zero() {
        format!("{}i", format_rat(&c.im))
    } else if c.im.is_negative() {
        format!("{}-{}i", format_rat(&c.re), format_rat(&-c.im.clone()))
    } else {
        format!("{}+{}i", format_rat(&c.re), format_rat(&c.im))
    }
}
