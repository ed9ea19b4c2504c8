use super::real::owned_ops;
use super::{parse_q, Real, Scalar, Session, Q};
use crate::error::{LinkError, Result};
use num_traits::Zero;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An element re + i*im of Q(i) or Q(i, sqrt d), with re, im in Q(sqrt d).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Elem {
    pub re: Real,
    pub im: Real,
}

impl Elem {
    pub fn new(re: Real, im: Real) -> Elem {
        Elem { re, im }
    }

    pub fn real(re: Real) -> Elem {
        Elem { re, im: Real::int(0) }
    }

    pub fn q(x: Q) -> Elem {
        Elem::real(Real::rational(x))
    }

    pub fn int(n: i64) -> Elem {
        Elem::real(Real::int(n))
    }

    pub fn gauss(re: Q, im: Q) -> Elem {
        Elem { re: Real::rational(re), im: Real::rational(im) }
    }

    pub fn i() -> Elem {
        Elem { re: Real::int(0), im: Real::int(1) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Exact sign of a real element; `None` when the imaginary part is nonzero.
    pub fn real_sign(&self) -> Option<i32> {
        if self.is_real() {
            Some(self.re.sign())
        } else {
            None
        }
    }

    pub fn conj(&self) -> Elem {
        Elem { re: self.re.clone(), im: -&self.im }
    }

    /// |x|^2 as a real number.
    pub fn norm2(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Elem {
        let n = self.norm2().inv();
        Elem { re: &self.re * &n, im: -(&self.im * &n) }
    }

    pub fn scale_q(&self, x: &Q) -> Elem {
        let r = Real::rational(x.clone());
        Elem { re: &self.re * &r, im: &self.im * &r }
    }

    pub fn pow(&self, k: u32) -> Elem {
        let mut acc = Elem::int(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The quadratic extension this element needs (0 for Gaussian rationals).
    pub fn ext(&self) -> u32 {
        self.re.ext().max(self.im.ext())
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Canonical text: terms in the order rational, `*r`, `*i`, `*r*i`.
    pub fn to_text(&self) -> String {
        let terms = [
            (self.re.rat_part(), ""),
            (self.re.sqrt_part(), "*r"),
            (self.im.rat_part(), "*i"),
            (self.im.sqrt_part(), "*r*i"),
        ];
        let mut out = String::new();
        for (c, suffix) in terms {
            if c.is_zero() {
                continue;
            }
            let t = format!("{}{}", super::fmt_q(c), suffix);
            if !out.is_empty() && !t.starts_with('-') {
                out.push('+');
            }
            out.push_str(&t);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses text like "1/2-3/4*i+2*r"; `r` stands for the session's sqrt d.
    pub fn parse(s: &str, session: &Session) -> Result<Elem> {
        let src = s.trim();
        let bad = |m: &str| LinkError::Parse(format!("invalid field element '{src}': {m}"));
        if src.is_empty() {
            return Err(bad("empty"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = src.as_bytes();
        for k in 1..bytes.len() {
            let c = bytes[k];
            if (c == b'+' || c == b'-') && bytes[k - 1] != b'*' && bytes[k - 1] != b'/' {
                terms.push(&src[start..k]);
                start = k;
            }
        }
        terms.push(&src[start..]);
        let mut acc = Elem::int(0);
        for term in terms {
            let term = term.trim();
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(term)),
            };
            let mut parts = body.split('*').map(str::trim);
            let head = parts.next().ok_or_else(|| bad("empty term"))?;
            let (mut coef, mut has_i, mut has_r) = match head {
                "i" => (Q::from_integer(1.into()), true, false),
                "r" => (Q::from_integer(1.into()), false, true),
                h => (parse_q(h).map_err(|_| bad("bad coefficient"))?, false, false),
            };
            for p in parts {
                match p {
                    "i" if !has_i => has_i = true,
                    "r" if !has_r => has_r = true,
                    _ => return Err(bad("unknown factor")),
                }
            }
            if neg {
                coef = -coef;
            }
            if has_r && session.sqrt_d == 0 {
                return Err(LinkError::Parse(format!(
                    "'{src}' uses r = sqrt d but no session field (field_sqrt) was given"
                )));
            }
            let d = session.sqrt_d;
            let val = if has_r { Real::new(Q::zero(), coef, d) } else { Real::rational(coef) };
            let e = if has_i { Elem::new(Real::int(0), val) } else { Elem::real(val) };
            acc = &acc + &e;
        }
        Ok(acc)
    }
}

impl<'a> Add<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn add(self, o: &Elem) -> Elem {
        Elem { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn sub(self, o: &Elem) -> Elem {
        Elem { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn mul(self, o: &Elem) -> Elem {
        if self.im.is_zero() && o.im.is_zero() {
            return Elem::real(&self.re * &o.re);
        }
        Elem {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl<'a> Div<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn div(self, o: &Elem) -> Elem {
        self * &o.inv()
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem { re: -&self.re, im: -&self.im }
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

owned_ops!(Elem);

impl Scalar for Elem {
    fn nil() -> Self {
        Elem::int(0)
    }
    fn unity() -> Self {
        Elem::int(1)
    }
    fn is_nil(&self) -> bool {
        Elem::is_zero(self)
    }
    fn from_q(q: Q) -> Self {
        Elem::q(q)
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
