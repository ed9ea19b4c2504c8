use super::sturm::{isolate_real_roots, RootLoc};
use super::{LaurentPoly, UPoly};
use crate::field::{qi, CirclePoint, Elem, Isolated, Real, Session, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// A unit-circle root with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleRoot {
    pub point: CirclePoint,
    pub mult: u32,
}

/// Real and imaginary parts of P(s) = (1 - i s)^N q((1 + i s)/(1 - i s)) where
/// p = t^low q and N = deg q. Real roots of both parts are the circle roots of p
/// other than -1.
pub fn cayley_polynomial(p: &LaurentPoly) -> (UPoly<Real>, UPoly<Real>) {
    let q = p.body();
    let n = q.degree().unwrap_or(0);
    let plus = UPoly::new(vec![Elem::int(1), Elem::i()]);
    let minus = UPoly::new(vec![Elem::int(1), -Elem::i()]);
    let mut pp = vec![UPoly::one()];
    let mut mp = vec![UPoly::one()];
    for k in 1..=n {
        pp.push(pp[k - 1].mul(&plus));
        mp.push(mp[k - 1].mul(&minus));
    }
    let mut total: UPoly<Elem> = UPoly::zero();
    for (k, a) in q.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        total = total.add(&pp[k].mul(&mp[n - k]).scale(a));
    }
    let re = total.map(|e| e.re.clone());
    let im = total.map(|e| e.im.clone());
    (re, im)
}

/// Unit-circle roots of p, ordered by argument, with multiplicities. Roots are
/// upgraded to exact points when a candidate from the session field verifies.
pub fn circle_roots(p: &LaurentPoly, session: &Session) -> Vec<CircleRoot> {
    assert!(!p.is_zero(), "circle roots of the zero polynomial");
    let mut out = Vec::new();
    let m1 = p.mult_at(&Elem::int(-1));
    if m1 > 0 {
        out.push(CircleRoot { point: CirclePoint::minus_one(), mult: m1 });
    }
    let (re, im) = cayley_polynomial(p);
    let g = if im.is_zero() { re } else if re.is_zero() { im } else { re.gcd(&im) };
    if g.degree().unwrap_or(0) > 0 {
        for (k, factor) in g.squarefree_decomposition() {
            for loc in isolate_real_roots(&factor) {
                let point = match loc {
                    RootLoc::Rational(s) => CirclePoint::from_s(&Real::rational(s)),
                    RootLoc::Interval(lo, hi) => upgrade(&factor, lo, hi, session),
                };
                out.push(CircleRoot { point, mult: k });
            }
        }
    }
    out.sort_by(|a, b| a.point.cmp(&b.point));
    out
}

/// Tries exact candidates inside the isolating interval; falls back to `Isolated`.
fn upgrade(factor: &UPoly<Real>, lo: Q, hi: Q, session: &Session) -> CirclePoint {
    let rlo = Real::rational(lo.clone());
    let rhi = Real::rational(hi.clone());
    let hits = |s: &Real| rlo < *s && *s < rhi && factor.eval(s).is_zero();
    // +-1 and +-i have s in {0, 1, -1}; then the roots of unity of the session field.
    for s in [qi(0), qi(1), qi(-1)] {
        let s = Real::rational(s);
        if hits(&s) {
            return CirclePoint::from_s(&s);
        }
    }
    for &n in session.root_orders() {
        for k in 0..n {
            let pt = CirclePoint::root_of_unity(k, n).expect("supported order");
            if let Some(s) = pt.s_value() {
                if hits(&s) {
                    return pt;
                }
            }
        }
    }
    let h = session.height as i64;
    for den in 1..=h {
        let d = BigInt::from(den);
        let from = (&lo * Q::from_integer(d.clone())).floor().to_integer();
        let to = (&hi * Q::from_integer(d.clone())).ceil().to_integer();
        let (from, to) = match (from.to_i64(), to.to_i64()) {
            (Some(a), Some(b)) => (a.max(-h), b.min(h)),
            _ => continue,
        };
        for num in from..=to {
            if num.gcd(&den) != 1 {
                continue;
            }
            let s = Real::rational(Q::new(BigInt::from(num), d.clone()));
            if hits(&s) {
                return CirclePoint::from_s(&s);
            }
        }
    }
    let mut iso = Isolated { poly: factor.clone(), lo, hi };
    // Tighten a little so downstream comparisons are cheap.
    for _ in 0..8 {
        if let Some(r) = iso.refine() {
            return CirclePoint::from_s(&Real::rational(r));
        }
    }
    debug_assert!(!(iso.lo.is_negative() && iso.hi.is_positive()));
    CirclePoint::Isolated(iso)
}
