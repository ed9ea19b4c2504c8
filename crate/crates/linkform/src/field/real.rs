use super::{ceil_sqrt, fmt_q, q_sign, q_to_f64, qi, Scalar, Q};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An element a + b*sqrt(d) of a real quadratic field; d = 0 when b = 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Real {
    a: Q,
    b: Q,
    d: u32,
}

fn join_d(x: u32, y: u32) -> u32 {
    match (x, y) {
        (0, d) | (d, 0) => d,
        (d, e) if d == e => d,
        (d, e) => panic!("mixing Q(sqrt {d}) and Q(sqrt {e})"),
    }
}

impl Real {
    pub fn new(a: Q, b: Q, d: u32) -> Real {
        if b.is_zero() || d == 0 {
            assert!(b.is_zero(), "sqrt coefficient without an extension");
            Real { a, b, d: 0 }
        } else {
            Real { a, b, d }
        }
    }

    pub fn rational(a: Q) -> Real {
        Real { a, b: Q::zero(), d: 0 }
    }

    pub fn int(n: i64) -> Real {
        Real::rational(qi(n))
    }

    /// sqrt(d) itself.
    pub fn sqrt(d: u32) -> Real {
        Real::new(Q::zero(), qi(1), d)
    }

    pub fn rat_part(&self) -> &Q {
        &self.a
    }

    pub fn sqrt_part(&self) -> &Q {
        &self.b
    }

    /// The extension in use (0 when the element is rational).
    pub fn ext(&self) -> u32 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Q> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Exact sign in {-1, 0, 1}.
    pub fn sign(&self) -> i32 {
        let sa = q_sign(&self.a);
        let sb = q_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a^2 with b^2 d (never equal since sqrt d is irrational).
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * qi(self.d as i64);
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Real {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// A rational upper bound for |self|.
    pub fn abs_bound(&self) -> Q {
        self.a.abs() + self.b.abs() * qi(ceil_sqrt(self.d) as i64)
    }

    pub fn to_f64(&self) -> f64 {
        q_to_f64(&self.a) + q_to_f64(&self.b) * (self.d as f64).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn inv(&self) -> Real {
        assert!(!self.is_zero(), "division by zero");
        if self.b.is_zero() {
            return Real::rational(num_traits::Inv::inv(&self.a));
        }
        let n = &self.a * &self.a - &self.b * &self.b * qi(self.d as i64);
        Real::new(&self.a / &n, -(&self.b / &n), self.d)
    }

    /// Text form with sqrt(d) written as `r`, e.g. "1/2+3/4*r".
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.a.is_zero() || self.b.is_zero() {
            out.push_str(&fmt_q(&self.a));
        }
        if !self.b.is_zero() {
            let t = format!("{}*r", fmt_q(&self.b));
            if out.is_empty() || t.starts_with('-') {
                out.push_str(&t);
            } else {
                out.push('+');
                out.push_str(&t);
            }
        }
        out
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl<'a> Add<&'a Real> for &'a Real {
    type Output = Real;
    fn add(self, o: &Real) -> Real {
        if self.d == 0 && o.d == 0 {
            return Real::rational(&self.a + &o.a);
        }
        Real::new(&self.a + &o.a, &self.b + &o.b, join_d(self.d, o.d))
    }
}

impl<'a> Sub<&'a Real> for &'a Real {
    type Output = Real;
    fn sub(self, o: &Real) -> Real {
        if self.d == 0 && o.d == 0 {
            return Real::rational(&self.a - &o.a);
        }
        Real::new(&self.a - &o.a, &self.b - &o.b, join_d(self.d, o.d))
    }
}

impl<'a> Mul<&'a Real> for &'a Real {
    type Output = Real;
    fn mul(self, o: &Real) -> Real {
        if self.d == 0 && o.d == 0 {
            return Real::rational(&self.a * &o.a);
        }
        let d = join_d(self.d, o.d);
        let a = &self.a * &o.a + &self.b * &o.b * qi(d as i64);
        let b = &self.a * &o.b + &self.b * &o.a;
        Real::new(a, b, d)
    }
}

impl<'a> Div<&'a Real> for &'a Real {
    type Output = Real;
    fn div(self, o: &Real) -> Real {
        self * &o.inv()
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Div for $t {
            type Output = $t;
            fn div(self, o: $t) -> $t {
                &self / &o
            }
        }
    };
}
pub(crate) use owned_ops;

owned_ops!(Real);

impl Scalar for Real {
    fn nil() -> Self {
        Real::int(0)
    }
    fn unity() -> Self {
        Real::int(1)
    }
    fn is_nil(&self) -> bool {
        Real::is_zero(self)
    }
    fn from_q(q: Q) -> Self {
        Real::rational(q)
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
        self.inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qr;

    #[test]
    fn exact_sign_of_quadratic_numbers() {
        let r3 = Real::sqrt(3);
        assert_eq!(r3.sign(), 1);
        // 2 - sqrt 3 > 0, 1 - sqrt 3 < 0
        assert_eq!((&Real::int(2) - &r3).sign(), 1);
        assert_eq!((&Real::int(1) - &r3).sign(), -1);
        let x = Real::new(qr(-7, 4), qr(1, 1), 3);
        assert_eq!(x.sign(), -1);
        assert_eq!((&x * &x).sign(), 1);
    }

    #[test]
    fn inverse_and_product() {
        let x = Real::new(qr(1, 2), qr(3, 5), 2);
        let one = &x * &x.inv();
        assert_eq!(one, Real::int(1));
        let r2 = Real::sqrt(2);
        assert_eq!(&r2 * &r2, Real::int(2));
        assert_eq!((&r2 * &r2).ext(), 0);
    }

    #[test]
    fn ordering_is_numeric() {
        let a = Real::new(qr(0, 1), qr(1, 2), 3); // sqrt3/2 ~ 0.866
        let b = Real::rational(qr(7, 8));
        assert!(a < b);
        assert!(Real::rational(qr(6, 7)) < a);
    }
}
