//! Certified enclosures of real numbers built from rationals and integer
//! square roots with directed rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::geom::Rational;

/// Extended nonnegative real bound: a rational or `+inf`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    Finite(Rational),
    Infinite,
}

impl Ext {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Ext::Finite(r) => Some(r),
            Ext::Infinite => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Ext::Finite(r) => r.to_f64().unwrap_or(f64::INFINITY),
            Ext::Infinite => f64::INFINITY,
        }
    }
}

impl From<Rational> for Ext {
    fn from(r: Rational) -> Self {
        Ext::Finite(r)
    }
}

/// Closed interval `[lo, hi]` known to contain the true value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Ext,
    pub hi: Ext,
}

impl Interval {
    pub fn new(lo: Ext, hi: Ext) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(r: Rational) -> Self {
        Interval { lo: Ext::Finite(r.clone()), hi: Ext::Finite(r) }
    }

    pub fn infinite() -> Self {
        Interval { lo: Ext::Infinite, hi: Ext::Infinite }
    }

    pub fn contains(&self, r: &Rational) -> bool {
        self.lo.finite().is_some_and(|lo| lo <= r) && self.hi.finite().is_none_or(|hi| r <= hi)
    }

    pub fn intersects(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// `hi / lo - 1`, or `None` if either end is infinite or `lo` is zero.
    pub fn relative_width(&self) -> Option<Rational> {
        match (&self.lo, &self.hi) {
            (Ext::Finite(lo), Ext::Finite(hi)) if !lo.is_zero() => Some(hi / lo - Rational::one()),
            _ => None,
        }
    }

    /// Outward rounding of both ends to multiples of `2^-bits` relative to
    /// their magnitude, keeping numerators and denominators short.
    pub fn simplified(&self, bits: u64) -> Interval {
        let lo = match &self.lo {
            Ext::Finite(r) => Ext::Finite(round_rel(r, bits, false)),
            Ext::Infinite => Ext::Infinite,
        };
        let hi = match &self.hi {
            Ext::Finite(r) => Ext::Finite(round_rel(r, bits, true)),
            Ext::Infinite => Ext::Infinite,
        };
        Interval { lo, hi }
    }

    /// Decimal rendering with `digits` significant digits, rounded outward.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        let f = |e: &Ext, up: bool| match e {
            Ext::Finite(r) => decimal(r, digits, up),
            Ext::Infinite => "inf".to_string(),
        };
        (f(&self.lo, false), f(&self.hi, true))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal(15);
        write!(f, "[{lo}, {hi}]")
    }
}

/// Rounds a rational to a dyadic with about `bits` significant bits.
fn round_rel(r: &Rational, bits: u64, up: bool) -> Rational {
    if r.is_zero() {
        return r.clone();
    }
    let mag = r.numer().bits() as i64 - r.denom().bits() as i64;
    let shift = bits as i64 - mag;
    let scaled = shl_rat(r, shift);
    let rounded = if up { scaled.ceil() } else { scaled.floor() };
    shl_rat(&rounded, -shift)
}

fn shl_rat(r: &Rational, k: i64) -> Rational {
    if k >= 0 {
        Rational::new(r.numer() << k as usize, r.denom().clone())
    } else {
        Rational::new(r.numer().clone(), r.denom() << (-k) as usize)
    }
}

/// Bounds `lo <= sqrt(q) * 2^shift <= hi` for an integer `q >= 0`.
pub fn sqrt_scaled(q: &BigUint, shift: i64) -> (BigUint, BigUint) {
    if shift >= 0 {
        let s = q << (2 * shift as usize);
        let r = s.sqrt();
        let hi = if &r * &r == s { r.clone() } else { &r + 1u32 };
        (r, hi)
    } else {
        let k = (-2 * shift) as usize;
        let s = q >> k;
        let r = s.sqrt();
        (r.clone(), r + 1u32)
    }
}

/// Enclosure of `sqrt(r)` for a nonnegative rational, with about `prec`
/// correct bits.
pub fn sqrt_rational(r: &Rational, prec: u64) -> (Rational, Rational) {
    assert!(!r.is_negative(), "sqrt of negative rational");
    if r.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    let num = r.numer().to_biguint().unwrap();
    let den = r.denom().to_biguint().unwrap();
    // sqrt(num/den) = sqrt(num*den)/den
    let prod = &num * &den;
    let mag = (prod.bits() as i64) / 2 - den.bits() as i64;
    let shift = (prec as i64 - mag).max(0);
    let (lo, hi) = sqrt_scaled(&prod, shift);
    let d = BigInt::from_biguint(Sign::Plus, den) << shift as usize;
    (
        Rational::new(BigInt::from_biguint(Sign::Plus, lo), d.clone()),
        Rational::new(BigInt::from_biguint(Sign::Plus, hi), d),
    )
}

/// Decimal string with `digits` significant digits, rounded down or up.
pub fn decimal(r: &Rational, digits: usize, up: bool) -> String {
    if r.is_zero() {
        return "0".into();
    }
    if r.is_negative() {
        return format!("-{}", decimal(&-r, digits, !up));
    }
    let ten = BigInt::from(10);
    // e = floor(log10 r), found by adjusting an estimate
    let mut e = ((r.numer().bits() as f64 - r.denom().bits() as f64) * std::f64::consts::LOG10_2) as i64;
    let pow = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow(e) > *r {
        e -= 1;
    }
    while pow(e + 1) <= *r {
        e += 1;
    }
    let scaled = r / pow(e - digits as i64 + 1);
    let mut m = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    // Rounding up can carry into an extra digit; the value is then 10^digits.
    if m.to_string().len() > digits {
        m /= &ten;
        e += 1;
    }
    let s = m.to_string();
    let (int_part, frac) = s.split_at(1);
    let frac = frac.trim_end_matches('0');
    let mantissa = if frac.is_empty() { int_part.to_string() } else { format!("{int_part}.{frac}") };
    if (-5..16).contains(&e) {
        plain(&s, e)
    } else {
        format!("{mantissa}e{e}")
    }
}

fn plain(digits: &str, e: i64) -> String {
    let n = digits.len() as i64;
    let out = if e < 0 {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
    } else if e + 1 >= n {
        format!("{}{}", digits, "0".repeat((e + 1 - n) as usize))
    } else {
        let (a, b) = digits.split_at((e + 1) as usize);
        format!("{a}.{b}")
    };
    if out.contains('.') {
        out.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        out
    }
}

/// Compares `a/b` with `c/d` for positive integers.
pub fn cmp_fractions(a: &BigUint, b: &BigUint, c: &BigUint, d: &BigUint) -> Ordering {
    (a * d).cmp(&(c * b))
}
