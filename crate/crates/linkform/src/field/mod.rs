//! Exact coefficient arithmetic: rationals, the real quadratic field Q(sqrt d),
//! the complex fields Q(i) and Q(i, sqrt d), and exact points on the unit circle.

mod circle;
mod elem;
mod herm;
mod real;

pub use circle::{cayley, CirclePoint, Isolated};
pub use elem::Elem;
pub use herm::hermitian_signature;
pub use real::Real;

use crate::error::{LinkError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

/// Session-wide settings: the quadratic extension in use and search bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Session {
    /// Squarefree d > 1 for Q(i, sqrt d), or 0 for Q(i).
    pub sqrt_d: u32,
    /// Height bound for rational Cayley candidates when upgrading isolated roots.
    pub height: u32,
    /// Fixed jet truncation order, or `None` for the adaptive default.
    pub truncation: Option<usize>,
}

impl Default for Session {
    fn default() -> Self {
        Session { sqrt_d: 0, height: 64, truncation: None }
    }
}

impl Session {
    pub fn with_sqrt(d: u32) -> Result<Session> {
        if d != 0 && !is_squarefree_above_one(d) {
            return Err(LinkError::Field(format!("{d} is not a squarefree integer > 1")));
        }
        Ok(Session { sqrt_d: d, ..Session::default() })
    }

    /// Orders n of the roots of unity whose coordinates lie in the session field.
    pub fn root_orders(&self) -> &'static [u32] {
        match self.sqrt_d {
            2 => &[1, 2, 4, 8],
            3 => &[1, 2, 3, 4, 6, 12],
            _ => &[1, 2, 4],
        }
    }
}

pub fn is_squarefree_above_one(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u32;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Operations shared by the coefficient types used in generic polynomial code.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn nil() -> Self;
    fn unity() -> Self;
    fn is_nil(&self) -> bool;
    fn from_q(q: Q) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn recip(&self) -> Self;

    fn over(&self, o: &Self) -> Self {
        self.times(&o.recip())
    }
    fn from_i64(n: i64) -> Self {
        Self::from_q(qi(n))
    }
}

impl Scalar for Q {
    fn nil() -> Self {
        Q::zero()
    }
    fn unity() -> Self {
        Q::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_q(q: Q) -> Self {
        q
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn recip(&self) -> Self {
        assert!(!Zero::is_zero(self), "division by zero");
        num_traits::Inv::inv(self)
    }
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // Very large numerators or denominators: scale through the bit lengths.
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Formats a rational as "p" or "p/q".
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses "p", "p/q" or a finite decimal such as "0.25".
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || LinkError::Parse(format!("invalid rational '{s}'"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let ip: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().map_err(|_| bad())? };
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let v = Q::new(ip * &den + frac, den);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

/// Integer ceiling of sqrt(d), used for rational bounds on Real magnitudes.
pub(crate) fn ceil_sqrt(d: u32) -> u32 {
    let mut r = 0u32;
    while r * r < d {
        r += 1;
    }
    r
}
