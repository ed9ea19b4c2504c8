//! Signature jumps, the signature and averaged-signature functions, Witt
//! classes and sublagrangian reduction.

mod step;

pub(crate) use step::sort_by_arg;
pub use step::{SignatureFunction, CSV_HEADER};

use crate::error::{LinkError, Result};
use crate::field::{CirclePoint, Session};
use crate::forms::{BasicForm, GramForm, StructuredForm};
use crate::laurent::{FieldTag, LaurentPoly};
use std::collections::BTreeMap;

/// Jump of the signature function at xi: minus the sum of the signs of the
/// odd-order summands at xi in the complexification.
pub fn signature_jump(s: &StructuredForm, xi: &CirclePoint) -> i64 {
    s.complex_e_terms().iter().filter(|(n, _, p)| n % 2 == 1 && p == xi).map(|(_, e, _)| -i64::from(*e)).sum()
}

/// Minus the sum of the signs of the even-order summands at xi.
pub fn sigma_loc(s: &StructuredForm, xi: &CirclePoint) -> i64 {
    s.complex_e_terms().iter().filter(|(n, _, p)| n % 2 == 0 && p == xi).map(|(_, e, _)| -i64::from(*e)).sum()
}

/// All points where the form has an E summand in its complexification.
pub fn support(s: &StructuredForm) -> Vec<CirclePoint> {
    let mut pts: Vec<CirclePoint> = s.complex_e_terms().into_iter().map(|(_, _, p)| p).collect();
    pts.sort();
    pts.dedup();
    pts
}

/// Sum of all signature jumps.
pub fn total_jump(s: &StructuredForm) -> i64 {
    support(s).iter().map(|p| signature_jump(s, p)).sum()
}

/// The signature function of a structured form.
pub fn signature_function(s: &StructuredForm) -> Result<SignatureFunction> {
    let mut pts = support(s);
    if !pts.iter().any(|p| *p == CirclePoint::one()) {
        pts.push(CirclePoint::one());
    }
    let pts = step::sort_by_arg(pts)?;
    let jump1 = signature_jump(s, &CirclePoint::one());
    let mut arcs = Vec::with_capacity(pts.len());
    let mut points = Vec::with_capacity(pts.len());
    let mut acc = jump1;
    for p in &pts {
        if *p == CirclePoint::one() {
            points.push(Some(2 * jump1 + sigma_loc(s, p)));
        } else {
            let j = signature_jump(s, p);
            points.push(Some(acc + j + sigma_loc(s, p)));
            acc += 2 * j;
        }
        arcs.push(acc);
    }
    Ok(SignatureFunction::new(s.field(), pts, arcs, points))
}

/// sigma(xi) - sigma_loc(xi) away from 1, and the total jump at 1.
pub fn averaged_signature(s: &StructuredForm, xi: &CirclePoint) -> Result<i64> {
    if *xi == CirclePoint::one() {
        return Ok(total_jump(s));
    }
    let f = signature_function(s)?;
    let v = f.value_at(xi)?.ok_or_else(|| LinkError::InexactRoot(xi.to_string()))?;
    Ok(v - sigma_loc(s, xi))
}

/// A class in the Witt group: an integer for each support point. Over R the
/// support lies in the open upper semicircle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittClass {
    pub field: FieldTag,
    pub coords: BTreeMap<CirclePoint, i64>,
}

impl WittClass {
    pub fn zero(field: FieldTag) -> WittClass {
        WittClass { field, coords: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, xi: &CirclePoint) -> i64 {
        self.coords.get(xi).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &WittClass) -> Result<WittClass> {
        if self.field != o.field {
            return Err(LinkError::Precondition("Witt classes over different fields".into()));
        }
        let mut c = self.coords.clone();
        for (p, v) in &o.coords {
            *c.entry(p.clone()).or_default() += v;
        }
        c.retain(|_, v| *v != 0);
        Ok(WittClass { field: self.field, coords: c })
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|(p, v)| format!("{p}:{v:+}")).collect();
        format!("{}{{{}}}", self.field, parts.join(", "))
    }
}

/// Witt class: the odd-order sign count at each point, which is minus the jump.
pub fn witt_class(s: &StructuredForm) -> WittClass {
    let mut coords = BTreeMap::new();
    for p in support(s) {
        if s.field() == FieldTag::R && p.im_sign() <= 0 {
            continue;
        }
        let v = -signature_jump(s, &p);
        if v != 0 {
            coords.insert(p, v);
        }
    }
    WittClass { field: s.field(), coords }
}

pub fn is_metabolic(s: &StructuredForm) -> bool {
    witt_class(s).is_zero()
}

pub fn is_witt_equivalent(a: &StructuredForm, b: &StructuredForm) -> bool {
    a.field() == b.field() && witt_class(a) == witt_class(b)
}

/// The sum of order-one summands realizing a Witt class.
pub fn witt_normal_form(w: &WittClass) -> Result<StructuredForm> {
    let mut summands = Vec::new();
    for (p, v) in &w.coords {
        let eps = if *v > 0 { 1 } else { -1 };
        for _ in 0..v.unsigned_abs() {
            summands.push(BasicForm::e(1, eps, p.clone()));
        }
    }
    StructuredForm::new(w.field, summands)
}

/// Induced form on L^perp / L, where L is spanned by coordinate vectors with
/// respect to the summand generators of `s`.
pub fn sublagrangian_reduce(s: &StructuredForm, l: &[Vec<LaurentPoly>], session: &Session) -> Result<StructuredForm> {
    GramForm::from_structured(s)?.reduce(l)?.classify(session)
}

/// Divisibility and equality of ord(M) ord(M)^# against ord(M') ord(M'').
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderCondition {
    pub divides: bool,
    pub equality: bool,
}

pub fn check_order_condition(m: &LaurentPoly, m1: &LaurentPoly, m2: &LaurentPoly) -> Result<OrderCondition> {
    if m.is_zero() || m1.is_zero() || m2.is_zero() {
        return Err(LinkError::Precondition("orders must be nonzero".into()));
    }
    let lhs = m * &m.involve();
    let rhs = m1 * m2;
    let q = rhs.div_exact(&lhs);
    Ok(OrderCondition { divides: q.is_some(), equality: q.is_some_and(|q| q.is_unit()) })
}

#[cfg(test)]
mod tests;
