//! Laurent polynomials over the coefficient field with the involution
//! p(t) -> conj(p)(1/t), unit-circle root isolation and basic polynomials.

mod basic;
mod frac;
mod matrix;
mod roots;
mod series;
mod sturm;
mod upoly;

pub use basic::{basic_poly, is_xi_positive, offcircle_basic, positive_linear, FieldTag};
pub use frac::Frac;
pub use matrix::{LMatrix, Smith};
pub use roots::{cayley_polynomial, circle_roots, CircleRoot};
pub use series::Series;
pub use sturm::{isolate_real_roots, sturm_count, RootLoc};
pub use upoly::UPoly;

use crate::error::{LinkError, Result};
use crate::field::{CirclePoint, Elem, Session};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// t^low * body(t) with body(0) != 0 (or the zero polynomial).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    body: UPoly<Elem>,
}

impl LaurentPoly {
    pub fn from_upoly(low: i64, body: UPoly<Elem>) -> LaurentPoly {
        let c = body.into_coeffs();
        match c.iter().position(|x| !x.is_zero()) {
            None => LaurentPoly::zero(),
            Some(k) => LaurentPoly { low: low + k as i64, body: UPoly::new(c[k..].to_vec()) },
        }
    }

    pub fn zero() -> LaurentPoly {
        LaurentPoly { low: 0, body: UPoly::zero() }
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(Elem::int(1))
    }

    pub fn constant(c: Elem) -> LaurentPoly {
        LaurentPoly::mono(c, 0)
    }

    pub fn int(n: i64) -> LaurentPoly {
        LaurentPoly::constant(Elem::int(n))
    }

    pub fn mono(c: Elem, k: i64) -> LaurentPoly {
        LaurentPoly::from_upoly(k, UPoly::constant(c))
    }

    /// The variable t.
    pub fn t() -> LaurentPoly {
        LaurentPoly::mono(Elem::int(1), 1)
    }

    /// t - a.
    pub fn linear(a: &Elem) -> LaurentPoly {
        LaurentPoly::from_terms(&[(1, Elem::int(1)), (0, -a)])
    }

    pub fn from_terms(terms: &[(i64, Elem)]) -> LaurentPoly {
        if terms.is_empty() {
            return LaurentPoly::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![Elem::int(0); (hi - lo + 1) as usize];
        for (k, a) in terms {
            let slot = &mut c[(k - lo) as usize];
            *slot = &*slot + a;
        }
        LaurentPoly::from_upoly(lo, UPoly::new(c))
    }

    pub fn from_ints(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_upoly(low, UPoly::new(c.iter().map(|&x| Elem::int(x)).collect()))
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.body.degree().map_or(0, |d| d as i64)
    }

    /// high - low: the Euclidean size.
    pub fn span(&self) -> usize {
        self.body.degree().unwrap_or(0)
    }

    pub fn body(&self) -> &UPoly<Elem> {
        &self.body
    }

    pub fn coeff(&self, k: i64) -> Elem {
        if k < self.low {
            return Elem::int(0);
        }
        self.body.coeff((k - self.low) as usize)
    }

    /// Nonzero terms (exponent, coefficient) in increasing exponent order.
    pub fn terms(&self) -> Vec<(i64, Elem)> {
        self.body
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| (self.low + k as i64, a.clone()))
            .collect()
    }

    pub fn scale(&self, a: &Elem) -> LaurentPoly {
        LaurentPoly::from_upoly(self.low, self.body.scale(a))
    }

    pub fn mul_t(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, body: self.body.clone() }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// p^# = sum conj(a_k) t^(-k).
    pub fn involve(&self) -> LaurentPoly {
        let terms: Vec<(i64, Elem)> = self.terms().into_iter().map(|(k, a)| (-k, a.conj())).collect();
        LaurentPoly::from_terms(&terms)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        if self.is_zero() {
            return Elem::int(0);
        }
        let v = self.body.eval(x);
        let p = if self.low >= 0 { x.pow(self.low as u32) } else { x.inv().pow((-self.low) as u32) };
        &v * &p
    }

    pub fn eval_point(&self, p: &CirclePoint) -> Result<Elem> {
        Ok(self.eval(&p.exact_elem()?))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.involve()
    }

    /// When p = c t^k p^#, returns (c, k).
    pub fn weakly_symmetric(&self) -> Option<(Elem, i64)> {
        if self.is_zero() {
            return None;
        }
        let s = self.involve();
        let k = self.low - s.low;
        let c = &self.body.coeffs()[0] / &s.body.coeffs()[0];
        if s.mul_t(k).scale(&c) == *self {
            Some((c, k))
        } else {
            None
        }
    }

    /// A symmetric associate u*p with u = a t^j, when one exists.
    pub fn symmetric_associate(&self) -> Option<LaurentPoly> {
        let (c, k) = self.weakly_symmetric()?;
        if k % 2 != 0 {
            return None;
        }
        let q = self.mul_t(-k / 2);
        let minus_one = Elem::int(-1);
        let a = if c == minus_one { Elem::i() } else { &Elem::int(1) + &c.conj() };
        let out = q.scale(&a);
        debug_assert!(out.is_symmetric());
        Some(out)
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.span() == 0
    }

    pub fn has_real_coeffs(&self) -> bool {
        self.body.coeffs().iter().all(|a| a.is_real())
    }

    /// The associate t^(-low) p / lead: body monic with nonzero constant term.
    pub fn normalized(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: 0, body: self.body.monic() }
    }

    /// p and q differ by a unit.
    pub fn assoc(&self, o: &LaurentPoly) -> bool {
        self.normalized() == o.normalized()
    }

    /// Euclidean division: self = q*d + r with span(r) < span(d) (or r = 0).
    pub fn div_rem(&self, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return (LaurentPoly::zero(), LaurentPoly::zero());
        }
        let (q, r) = self.body.div_rem(&d.body);
        (LaurentPoly::from_upoly(self.low - d.low, q), LaurentPoly::from_upoly(self.low, r))
    }

    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, o: &LaurentPoly) -> bool {
        o.is_zero() || (!self.is_zero() && o.div_exact(self).is_some())
    }

    /// Normalized gcd.
    pub fn gcd(&self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        LaurentPoly::from_upoly(0, self.body.gcd(&o.body))
    }

    /// Multiplicity of the root a (a != 0).
    pub fn mult_at(&self, a: &Elem) -> u32 {
        assert!(!self.is_zero());
        let lin = LaurentPoly::linear(a);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.div_exact(&lin) {
            p = q;
            m += 1;
        }
        m
    }

    pub fn map_coeffs(&self, f: impl Fn(&Elem) -> Elem) -> LaurentPoly {
        LaurentPoly::from_upoly(self.low, self.body.map(f))
    }

    /// Largest extension needed by the coefficients.
    pub fn ext(&self) -> u32 {
        self.body.coeffs().iter().map(Elem::ext).max().unwrap_or(0)
    }

    /// Canonical text such as "1*t^-1 + -1 + 1*t".
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(k, a)| match k {
                0 => format!("({})", a.to_text()),
                1 => format!("({})*t", a.to_text()),
                _ => format!("({})*t^{}", a.to_text(), k),
            })
            .collect();
        parts.join(" + ")
    }

    /// Circle roots with multiplicities (see [`circle_roots`]).
    pub fn circle_roots(&self, session: &Session) -> Vec<CircleRoot> {
        circle_roots(self, session)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(o.low);
        let a = self.body.shift((self.low - lo) as usize);
        let b = o.body.shift((o.low - lo) as usize);
        LaurentPoly::from_upoly(lo, a.add(&b))
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_upoly(self.low + o.low, self.body.mul(&o.body))
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, body: self.body.neg() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

/// (t - xi)(t^-1 - conj xi): symmetric, nonnegative on the circle, double root at xi.
pub fn norm_square_poly(xi: &Elem) -> LaurentPoly {
    let a = LaurentPoly::linear(xi);
    &a * &a.involve()
}

/// Ensures every coefficient is compatible with the session field.
pub fn check_session(p: &LaurentPoly, session: &Session) -> Result<()> {
    let e = p.ext();
    if e != 0 && e != session.sqrt_d {
        return Err(LinkError::Field(format!("polynomial needs sqrt {e}, session has sqrt {}", session.sqrt_d)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{cayley, qr};
    use proptest::prelude::*;

    fn trefoil() -> LaurentPoly {
        LaurentPoly::from_ints(-1, &[1, -1, 1])
    }

    #[test]
    fn involution_examples() {
        assert_eq!(LaurentPoly::t().involve(), LaurentPoly::mono(Elem::int(1), -1));
        let p = LaurentPoly::linear(&Elem::i());
        let ps = p.involve();
        assert_eq!(ps, &LaurentPoly::mono(Elem::int(1), -1) + &LaurentPoly::constant(Elem::i()));
        assert!(ps.eval(&Elem::i()).is_zero());
        let c = LaurentPoly::constant(Elem::gauss(qr(1, 2), qr(3, 1)));
        assert_eq!(c.involve(), LaurentPoly::constant(Elem::gauss(qr(1, 2), qr(-3, 1))));
    }

    #[test]
    fn symmetry_examples() {
        assert!(trefoil().is_symmetric());
        let xi = cayley(&qr(1, 2)).elem().unwrap();
        let p = LaurentPoly::linear(&xi);
        let (c, k) = p.weakly_symmetric().unwrap();
        assert_eq!((c, k), (-&xi, 1));
        assert!(LaurentPoly::from_ints(0, &[-2, 1]).weakly_symmetric().is_none());
        let s = LaurentPoly::from_ints(0, &[1, -1, 1]).symmetric_associate().unwrap();
        assert!(s.is_symmetric());
    }

    #[test]
    fn euclidean_division() {
        let a = LaurentPoly::from_ints(-2, &[1, 0, 0, 0, 1]);
        let d = LaurentPoly::from_ints(-1, &[1, 1]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.is_zero() || r.span() < d.span());
        assert_eq!(trefoil().mult_at(&Elem::int(1)), 0);
        let sq = &LaurentPoly::linear(&Elem::i()) * &LaurentPoly::linear(&Elem::i());
        assert_eq!(sq.mult_at(&Elem::i()), 2);
    }

    fn lp() -> impl Strategy<Value = LaurentPoly> {
        (-3i64..3, proptest::collection::vec((-5i64..5, -5i64..5), 1..5)).prop_map(|(lo, c)| {
            LaurentPoly::from_upoly(lo, UPoly::new(c.into_iter().map(|(a, b)| Elem::gauss(qr(a, 1), qr(b, 1))).collect()))
        })
    }

    proptest! {
        #[test]
        fn involution_is_antilinear_ring_involution(p in lp(), q in lp()) {
            prop_assert_eq!(p.involve().involve(), p.clone());
            prop_assert_eq!((&p * &q).involve(), &p.involve() * &q.involve());
        }

        #[test]
        fn involution_is_conjugation_on_circle(p in lp(), a in -20i64..20, b in 1i64..10) {
            let w = cayley(&qr(a, b)).elem().unwrap();
            prop_assert_eq!(p.involve().eval(&w), p.eval(&w).conj());
        }
    }
}
