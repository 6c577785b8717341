//! Scalar arithmetic shared by the exact and floating execution paths.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always normalized (lowest terms, positive denominator).
pub type Q = BigRational;

/// Relative tolerance used for rank decisions on the floating path.
pub const FLOAT_TOL: f64 = 1e-9;

/// Arithmetic mode tag carried by reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown arithmetic mode `{other}`")),
        }
    }
}

/// A field of characteristic zero, either exact (`Q`) or approximate (`f64`).
///
/// Both implementations share one generic code path for linear algebra. The
/// only behavioral difference is `is_negligible`, which decides what counts
/// as zero during elimination.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_q(v: &Q) -> Self;
    fn to_f64(&self) -> f64;

    /// Magnitude used for pivot selection and tolerance scaling.
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Exact zero test on the rational path; `|x| <= tol * max(scale, 1)` on floats.
    fn is_negligible(&self, scale: f64) -> bool;

    fn is_zero(&self) -> bool {
        self.is_negligible(1.0)
    }

    fn sqrt_f64(&self) -> f64 {
        self.to_f64().sqrt()
    }

    fn half() -> Self {
        Self::one() / Self::from_i64(2)
    }

    /// The value as a rational: exact on the rational path, a best
    /// approximation with small denominator on floats.
    fn to_rational(&self) -> Option<Q>;
}

impl Field for Q {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        Zero::zero()
    }
    fn to_rational(&self) -> Option<Q> {
        Some(self.clone())
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }
    fn from_q(v: &Q) -> Self {
        v.clone()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn magnitude(&self) -> f64 {
        // pivot choice on the exact path only needs "nonzero"; prefer small entries
        if Zero::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
    fn is_negligible(&self, _scale: f64) -> bool {
        Zero::is_zero(self)
    }
}

impl Field for f64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_q(v: &Q) -> Self {
        ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_TOL * scale.max(1.0)
    }
    fn to_rational(&self) -> Option<Q> {
        rationalize(*self, 10_000).filter(|r| (ToPrimitive::to_f64(r).unwrap_or(f64::NAN) - self).abs() <= 1e-7 * self.abs().max(1.0))
    }
}

/// Square root of a non-negative rational when it is itself rational.
pub fn exact_sqrt(v: &Q) -> Option<Q> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().sqrt();
    let d = v.denom().sqrt();
    (&n * &n == *v.numer() && &d * &d == *v.denom()).then(|| Q::new(n, d))
}

/// Shorthand for building a rational from a numerator/denominator pair.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Parses `"p"` or `"p/q"` (q > 0) into a normalized rational.
pub fn parse_rational(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator in `{s}`"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator in `{s}`"))?;
    if !den.is_positive() {
        return Err(format!("denominator must be positive in `{s}`"));
    }
    Ok(Q::new(num, den))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Closest rational to `x` with denominator at most `max_den` (continued fractions).
pub fn rationalize(x: f64, max_den: i64) -> Option<Q> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(Q::new(BigInt::from(h1), BigInt::from(k1)))
}
