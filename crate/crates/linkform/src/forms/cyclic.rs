use super::gram::value_at;
use super::{BasicForm, StructuredForm};
use crate::error::{pre, LinkError, Result};
use crate::field::{CirclePoint, Elem, Q, Session};
use crate::laurent::{basic_poly, FieldTag, Frac, LaurentPoly};

/// A form on Lambda/f with lambda(1, 1) = h/f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicForm {
    pub field: FieldTag,
    pub f: LaurentPoly,
    pub h: LaurentPoly,
}

impl CyclicForm {
    pub fn new(field: FieldTag, f: LaurentPoly, h: LaurentPoly) -> Result<CyclicForm> {
        if f.is_zero() {
            return pre("cyclic form with zero order");
        }
        if f.weakly_symmetric().is_none() {
            return pre("order of a cyclic form must be weakly symmetric");
        }
        if field == FieldTag::R && !(f.has_real_coeffs() && h.has_real_coeffs()) {
            return pre("real cyclic form with non-real coefficients");
        }
        let v = Frac::new(&h, &f);
        if v.involve() != v {
            return pre("h/f is not Hermitian");
        }
        Ok(CyclicForm { field, f, h })
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.h.gcd(&self.f).is_unit()
    }

    /// lambda(x, y) = x y^# h / f.
    pub fn pair(&self, x: &LaurentPoly, y: &LaurentPoly) -> Frac {
        Frac::new(&(&(x * &y.involve()) * &self.h), &self.f)
    }
}

/// A representative h' of h mod f with h'^#/f^# = h/f exactly.
pub fn symmetrize_rep(h: &LaurentPoly, f: &LaurentPoly) -> Result<LaurentPoly> {
    let (c, k) = f.weakly_symmetric().ok_or_else(|| LinkError::Precondition("f is not weakly symmetric".into()))?;
    // h^#/f^# = c t^k h^# / f
    let diff = &h.involve().mul_t(k).scale(&c) - h;
    let g = diff.div_exact(f).ok_or_else(|| LinkError::Precondition("h/f is not Hermitian modulo Lambda".into()))?;
    if g.involve() != -&g {
        return Err(LinkError::Identity("symmetrization defect is not skew".into()));
    }
    let half = Elem::q(Q::new(1.into(), 2.into()));
    Ok(h + &(f * &g).scale(&half))
}

/// Classification of a cyclic form root by root.
pub fn classify_cyclic(c: &CyclicForm, session: &Session) -> Result<StructuredForm> {
    if !c.is_nondegenerate() {
        return Err(LinkError::Degenerate(format!("gcd(h, f) = {} is not a unit", c.h.gcd(&c.f))));
    }
    let roots = c.f.circle_roots(session);
    let mut rest = c.f.clone();
    let mut summands = Vec::new();
    for root in &roots {
        let xi = &root.point;
        let e = xi.exact_elem()?;
        let n = root.mult;
        rest = rest.div_exact(&LaurentPoly::linear(&e).pow(n)).unwrap();
        if c.field == FieldTag::R && xi.im_sign() < 0 {
            continue;
        }
        summands.push(BasicForm::e(n, cyclic_sign(c, xi, &e, n)?, xi.clone()));
    }
    let rest = rest.normalized();
    for (k, g) in rest.body().squarefree_decomposition() {
        summands.push(BasicForm::f(k, LaurentPoly::from_upoly(0, g)));
    }
    StructuredForm::new(c.field, summands)
}

fn cyclic_sign(c: &CyclicForm, xi: &CirclePoint, e: &Elem, n: u32) -> Result<i32> {
    let lin = LaurentPoly::linear(e);
    let norm = &lin * &lin.involve();
    let real_sign = |m: LaurentPoly| -> Result<i32> {
        let q = value_at(&(&c.h * &m), &c.f, e)?;
        match q.real_sign() {
            Some(s) if s != 0 => Ok(s),
            _ => Err(LinkError::Identity(format!("local value {} at {xi} is not a nonzero real", q.to_text()))),
        }
    };
    match c.field {
        FieldTag::R if xi.is_plus_minus_one() => {
            if n % 2 == 1 {
                return pre(format!("real cyclic form with odd-order root at {xi}"));
            }
            real_sign(norm.pow(n / 2))
        }
        FieldTag::R => real_sign(basic_poly(xi, FieldTag::R)?.pow(n)),
        FieldTag::C if n.is_multiple_of(2) => real_sign(norm.pow(n / 2)),
        FieldTag::C => {
            let m = &lin.pow(n.div_ceil(2)) * &lin.involve().pow((n - 1) / 2);
            let r0 = value_at(&(&c.h * &m), &c.f, e)?;
            let z = &e.conj() * &r0;
            if !z.re.is_zero() || z.im.is_zero() {
                return Err(LinkError::Identity(format!("residue {} at {xi} is not purely imaginary", z.to_text())));
            }
            Ok(if z.im.sign() < 0 { 1 } else { -1 })
        }
    }
}

/// Splits a cyclic form into cyclic pieces on coprime primary orders.
pub fn primary_decompose_cyclic(c: &CyclicForm, session: &Session) -> Result<Vec<CyclicForm>> {
    let mut pieces = Vec::new();
    let mut rest = c.f.clone();
    for root in c.f.circle_roots(session) {
        if c.field == FieldTag::R && root.point.im_sign() < 0 {
            continue;
        }
        let b = basic_poly(&root.point, c.field)?;
        let piece = b.pow(root.mult);
        rest = rest.div_exact(&piece).ok_or_else(|| LinkError::Identity("primary factor does not divide".into()))?;
        pieces.push(piece);
    }
    if !rest.is_unit() {
        pieces.push(rest);
    }
    let mut out = Vec::new();
    for f1 in pieces {
        let f2 = c.f.div_exact(&f1).unwrap();
        // The f1-primary part is generated by f2, with lambda(f2, f2) = h f2^# / f1.
        let v = Frac::new(&(&c.h * &f2.involve()), &f1);
        let unit = f1.div_exact(&v.den()).ok_or_else(|| LinkError::Degenerate("primary piece is degenerate".into()))?;
        let h1 = symmetrize_rep(&(&v.num() * &unit), &f1)?;
        out.push(CyclicForm::new(c.field, f1, h1)?);
    }
    Ok(out)
}
