use super::{LaurentPoly, UPoly};
use crate::field::{Elem, Scalar};
use std::fmt;

/// A class in F(t)/Lambda stored canonically as num/den with den monic,
/// den(0) != 0, deg num < deg den and gcd(num, den) = 1. Zero is 0/1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frac {
    num: UPoly<Elem>,
    den: UPoly<Elem>,
}

fn t_inverse_mod(d: &UPoly<Elem>) -> UPoly<Elem> {
    // t * X = 1 mod d with X = -(d - d(0)) / (d(0) t)
    let c = d.coeffs();
    let d0 = &c[0];
    let inv = d0.recip().negate();
    UPoly::new(c[1..].iter().map(|a| a.times(&inv)).collect())
}

fn t_power_mod(m: i64, d: &UPoly<Elem>) -> UPoly<Elem> {
    let base = if m >= 0 { UPoly::x().rem(d) } else { t_inverse_mod(d).rem(d) };
    let mut acc = UPoly::one().rem(d);
    for _ in 0..m.unsigned_abs() {
        acc = acc.mul(&base).rem(d);
    }
    acc
}

impl Frac {
    pub fn zero() -> Frac {
        Frac { num: UPoly::zero(), den: UPoly::one() }
    }

    /// The class of num/den; den must be nonzero.
    pub fn new(num: &LaurentPoly, den: &LaurentPoly) -> Frac {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() || den.span() == 0 {
            return Frac::zero();
        }
        let d = den.body().clone();
        let m = num.low() - den.low();
        let r = t_power_mod(m, &d).mul(num.body()).rem(&d);
        if r.is_zero() {
            return Frac::zero();
        }
        let g = r.gcd(&d);
        let r = r.div_exact(&g).unwrap();
        let d = d.div_exact(&g).unwrap();
        if d.degree() == Some(0) {
            return Frac::zero();
        }
        let l = d.lead().unwrap().recip();
        Frac { num: r.scale(&l), den: d.scale(&l) }
    }

    pub fn from_poly_inverse(den: &LaurentPoly) -> Frac {
        Frac::new(&LaurentPoly::one(), den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> LaurentPoly {
        LaurentPoly::from_upoly(0, self.num.clone())
    }

    pub fn den(&self) -> LaurentPoly {
        LaurentPoly::from_upoly(0, self.den.clone())
    }

    pub fn add(&self, o: &Frac) -> Frac {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (a, b, c, d) = (self.num(), self.den(), o.num(), o.den());
        Frac::new(&(&(&a * &d) + &(&c * &b)), &(&b * &d))
    }

    pub fn sub(&self, o: &Frac) -> Frac {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Frac {
        Frac { num: self.num.neg(), den: self.den.clone() }
    }

    /// Module action p * (num/den).
    pub fn mul_poly(&self, p: &LaurentPoly) -> Frac {
        if self.is_zero() || p.is_zero() {
            return Frac::zero();
        }
        Frac::new(&(p * &self.num()), &self.den())
    }

    /// The class of num^# / den^#.
    pub fn involve(&self) -> Frac {
        if self.is_zero() {
            return Frac::zero();
        }
        Frac::new(&self.num().involve(), &self.den().involve())
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        format!("[{}]/[{}]", self.num(), self.den())
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
