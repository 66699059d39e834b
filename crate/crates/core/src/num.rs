//! Exact rational numbers.
//!
//! `Q` keeps small values as a reduced `i64` fraction and only falls back to
//! arbitrary precision when an intermediate result no longer fits. Every
//! value has a single canonical representation, so equality and hashing are
//! structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseQError {
    #[error("empty number")]
    Empty,
    #[error("malformed number {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

#[derive(Clone)]
enum Repr {
    /// Reduced, `den > 0`.
    Small { num: i64, den: i64 },
    /// Reduced and never representable as `Small`.
    Big(Box<BigRational>),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Q(Repr);

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a | b;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if let (Ok(x), Ok(y)) = (u64::try_from(a), u64::try_from(b)) {
        return gcd_u64(x, y) as u128;
    }
    if a == 0 || b == 0 {
        return a | b;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Q {
    pub const ZERO: Q = Q(Repr::Small { num: 0, den: 1 });
    pub const ONE: Q = Q(Repr::Small { num: 1, den: 1 });

    pub const fn int(n: i64) -> Q {
        Q(Repr::Small { num: n, den: 1 })
    }

    /// `num / den`; panics when `den == 0`.
    pub fn new(num: i64, den: i64) -> Q {
        assert!(den != 0, "zero denominator");
        Q::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Q {
        debug_assert!(den != 0);
        if num == 0 {
            return Q::ZERO;
        }
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs());
        let (mut n, mut d) = if g == 1 {
            (num, den)
        } else {
            // g divides both, and g >= 2 so the quotients fit in i128.
            (num / g as i128, den / g as i128)
        };
        if d < 0 {
            match (n.checked_neg(), d.checked_neg()) {
                (Some(a), Some(b)) => {
                    n = a;
                    d = b;
                }
                _ => {
                    return Q::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)));
                }
            }
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Q(Repr::Small { num, den }),
            _ => Q(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(n),
                BigInt::from(d),
            )))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        // BigRational::new reduces; new_raw callers must pass reduced values.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(num), Some(den)) => Q(Repr::Small { num, den }),
            _ => Q(Repr::Big(Box::new(r))),
        }
    }

    /// Numerator and denominator when both fit in `i64`.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small { num, den } => Some((*num, *den)),
            Repr::Big(_) => None,
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Repr::Big(r) => (**r).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(r) => r.denom().is_one(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(r) => match r.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Q {
        Q::ONE / self
    }

    pub fn min(self, other: Q) -> Q {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Q) -> Q {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Exact square root when both numerator and denominator are perfect squares.
    pub fn sqrt_exact(&self) -> Option<Q> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &rn * &rn == n && &rd * &rd == d {
            Some(Q::from_big(BigRational::new(rn, rd)))
        } else {
            None
        }
    }

    /// True when the value has a finite decimal expansion.
    pub fn is_terminating(&self) -> bool {
        let mut d = self.denom();
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        while (&d % &two).is_zero() {
            d /= &two;
        }
        while (&d % &five).is_zero() {
            d /= &five;
        }
        d.is_one()
    }

    /// Canonical exact text: a plain decimal when the expansion terminates,
    /// `p/q` otherwise. Parses back to the same value.
    pub fn to_exact_string(&self) -> String {
        if self.is_integer() {
            return self.to_string();
        }
        if !self.is_terminating() {
            return self.to_string();
        }
        let n = self.numer();
        let d = self.denom();
        let mut scale = BigInt::one();
        let mut digits = 0usize;
        while !(&scale % &d).is_zero() {
            scale *= 10;
            digits += 1;
        }
        let scaled = &n * (&scale / &d);
        let neg = scaled.is_negative();
        let s = scaled.abs().to_string();
        let s = if s.len() <= digits {
            format!("{}{}", "0".repeat(digits - s.len() + 1), s)
        } else {
            s
        };
        let (int_part, frac) = s.split_at(s.len() - digits);
        format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac)
    }

    /// Decimal rendering rounded half away from zero to `places` digits.
    pub fn to_decimal(&self, places: usize) -> String {
        let n = self.numer();
        let d = self.denom();
        let scale = BigInt::from(10).pow(places as u32);
        let scaled = n.abs() * &scale;
        let (q, r) = scaled.div_rem(&d);
        let q = if &r * 2 >= d { q + 1 } else { q };
        let s = q.to_string();
        let s = if s.len() <= places {
            format!("{}{}", "0".repeat(places - s.len() + 1), s)
        } else {
            s
        };
        let sign = if self.is_negative() && !q_is_zero(&s) { "-" } else { "" };
        if places == 0 {
            return format!("{sign}{s}");
        }
        let (i, f) = s.split_at(s.len() - places);
        format!("{sign}{i}.{f}")
    }
}

fn q_is_zero(digits: &str) -> bool {
    digits.bytes().all(|b| b == b'0')
}

impl Default for Q {
    fn default() -> Self {
        Q::ZERO
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Self {
        Q::int(n)
    }
}

impl From<i32> for Q {
    fn from(n: i32) -> Self {
        Q::int(n as i64)
    }
}

impl From<u64> for Q {
    fn from(n: u64) -> Self {
        Q::from_big(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigRational> for Q {
    fn from(r: BigRational) -> Self {
        Q::from_big(r)
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Q {}

impl Hash for Q {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    a.cmp(c)
                } else {
                    (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
                }
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Already reduced, `d > 0`.
fn reduced(n: i128, d: i128) -> Q {
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(num), Ok(den)) => Q(Repr::Small { num, den }),
        _ => Q(Repr::Big(Box::new(BigRational::new_raw(
            BigInt::from(n),
            BigInt::from(d),
        )))),
    }
}

/// `t / g` for exact division; i128 division is slow, so narrow first.
fn div_exact(t: i128, g: u64) -> i128 {
    match i64::try_from(t) {
        Ok(t) if g <= i64::MAX as u64 => (t / g as i64) as i128,
        _ => t / g as i128,
    }
}

/// `a/b + c/d` for reduced inputs with `b, d > 0`, reducing only by
/// `gcd(b, d)` (Knuth 4.5.1). `|a|, |c| <= 2^63`.
fn add_small(a: i128, b: i64, c: i128, d: i64) -> Q {
    let g = gcd_u64(b as u64, d as u64);
    if g == 1 {
        let n = a * d as i128 + c * b as i128;
        return if n == 0 { Q::ZERO } else { reduced(n, b as i128 * d as i128) };
    }
    let (bg, dg) = (b / g as i64, d / g as i64);
    let t = a * dg as i128 + c * bg as i128;
    if t == 0 {
        return Q::ZERO;
    }
    let g2 = gcd_u128(t.unsigned_abs(), g as u128) as u64;
    if g2 == 1 {
        return reduced(t, bg as i128 * d as i128);
    }
    reduced(div_exact(t, g2), bg as i128 * (d / g2 as i64) as i128)
}

/// `(a/b) (c/d)` for reduced inputs with `b, d > 0`, cross-reducing first.
fn mul_small(a: i64, b: i64, c: i64, d: i64) -> Q {
    if a == 0 || c == 0 {
        return Q::ZERO;
    }
    let g1 = gcd_u64(a.unsigned_abs(), d as u64) as i64;
    let g2 = gcd_u64(c.unsigned_abs(), b as u64) as i64;
    reduced(
        (a / g1) as i128 * (c / g2) as i128,
        (b / g2) as i128 * (d / g1) as i128,
    )
}

fn add_q(x: &Q, y: &Q) -> Q {
    if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&x.0, &y.0) {
        if *b == 1 && *d == 1 {
            if let Some(s) = a.checked_add(*c) {
                return Q::int(s);
            }
        }
        return add_small(*a as i128, *b, *c as i128, *d);
    }
    Q::from_big(x.to_big() + y.to_big())
}

fn sub_q(x: &Q, y: &Q) -> Q {
    if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&x.0, &y.0) {
        if *b == 1 && *d == 1 {
            if let Some(s) = a.checked_sub(*c) {
                return Q::int(s);
            }
        }
        return add_small(*a as i128, *b, -(*c as i128), *d);
    }
    Q::from_big(x.to_big() - y.to_big())
}

fn mul_q(x: &Q, y: &Q) -> Q {
    if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&x.0, &y.0) {
        if *b == 1 && *d == 1 {
            if let Some(p) = a.checked_mul(*c) {
                return Q::int(p);
            }
        }
        return mul_small(*a, *b, *c, *d);
    }
    Q::from_big(x.to_big() * y.to_big())
}

fn div_q(x: &Q, y: &Q) -> Q {
    assert!(!y.is_zero(), "division by zero");
    if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&x.0, &y.0) {
        let flipped = if *c < 0 { d.checked_neg().zip(c.checked_neg()) } else { Some((*d, *c)) };
        if let Some((num, den)) = flipped {
            return mul_small(*a, *b, num, den);
        }
    }
    Q::from_big(x.to_big() / y.to_big())
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $f:ident) => {
        impl $tr<&Q> for &Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                $f(self, rhs)
            }
        }
        impl $tr<Q> for Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                $f(&self, &rhs)
            }
        }
        impl $tr<&Q> for Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                $f(&self, rhs)
            }
        }
        impl $tr<Q> for &Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_q);
forward_binop!(Sub, sub, sub_q);
forward_binop!(Mul, mul, mul_q);
forward_binop!(Div, div, div_q);

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match &self.0 {
            Repr::Small { num, den } => match num.checked_neg() {
                Some(n) => Q(Repr::Small { num: n, den: *den }),
                None => Q::from_big(-self.to_big()),
            },
            Repr::Big(r) => Q::from_big(-(**r).clone()),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

impl std::iter::Sum for Q {
    fn sum<I: Iterator<Item = Q>>(iter: I) -> Q {
        iter.fold(Q::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, ParseQError> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseQError::Malformed(whole.to_string()));
    }
    BigInt::from_str(s).map_err(|_| ParseQError::Malformed(whole.to_string()))
}

impl FromStr for Q {
    type Err = ParseQError;

    /// Accepts integers, plain decimals (`-1.25`) and fractions (`7/3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseQError::Empty);
        }
        if let Some((n, d)) = s.split_once('/') {
            let n = parse_int(n.trim(), s)?;
            let d = parse_int(d.trim(), s)?;
            if d.is_zero() {
                return Err(ParseQError::ZeroDenominator(s.to_string()));
            }
            return Ok(Q::from_big(BigRational::new(n, d)));
        }
        if let Some((int_part, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseQError::Malformed(s.to_string()));
            }
            let neg = int_part.starts_with('-');
            let int_digits = int_part.strip_prefix(['+', '-']).unwrap_or(int_part);
            let int_val = if int_digits.is_empty() {
                BigInt::zero()
            } else {
                parse_int(int_digits, s)?
            };
            let scale = BigInt::from(10).pow(frac.len() as u32);
            let frac_val = parse_int(frac, s)?;
            let mut n = int_val * &scale + frac_val;
            if neg {
                n = -n;
            }
            return Ok(Q::from_big(BigRational::new(n, scale)));
        }
        Ok(Q::from_big(BigRational::from_integer(parse_int(s, s)?)))
    }
}

impl serde::Serialize for Q {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_exact_string())
    }
}

impl<'de> serde::Deserialize<'de> for Q {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for tests and fixtures: `q("7/3")`. Panics on malformed input.
pub fn q(s: &str) -> Q {
    s.parse().unwrap_or_else(|e| panic!("bad rational {s:?}: {e}"))
}
