use super::{sign_at, HermitianLaurentMatrix};
use crate::error::{LinkError, Result};
use crate::field::{cayley, CirclePoint, Session, Q};
use crate::signature::{sort_by_arg, SignatureFunction};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

/// The matrix signature step function: raw values of sign A, and the
/// normalization sign A(xi) - sign A(1+) + jump(1).
#[derive(Clone, Debug)]
pub struct MatrixStep {
    pub raw: SignatureFunction,
    pub normalized: SignatureFunction,
    /// One sample point inside each arc, aligned with the arcs.
    pub samples: Vec<CirclePoint>,
}

impl MatrixStep {
    /// Averaged value (l + r)/2 of sign A at a point.
    pub fn raw_averaged(&self, xi: &CirclePoint) -> Result<i64> {
        for (k, b) in self.raw.breakpoints().iter().enumerate() {
            if b.arg_cmp(xi)? == Ordering::Equal {
                let (l, r) = self.raw.sides(k);
                return Ok((l + r) / 2);
            }
        }
        Ok(self.raw.value_at(xi)?.expect("arc values are always known"))
    }

    /// sign^av A(xi) - sign^av A(1).
    pub fn averaged_normalized(&self, xi: &CirclePoint) -> Result<i64> {
        Ok(self.raw_averaged(xi)? - self.raw_averaged(&CirclePoint::one())?)
    }

    /// Half the difference of the one-sided limits at breakpoint k.
    pub fn jump(&self, k: usize) -> Result<i64> {
        let (l, r) = self.raw.sides(k);
        if (r - l) % 2 != 0 {
            return Err(LinkError::Identity(format!(
                "odd signature change {} at {}",
                r - l,
                self.raw.breakpoints()[k]
            )));
        }
        Ok((r - l) / 2)
    }
}

const REFINE_LIMIT: usize = 400;

/// Narrows isolating intervals so that float midpoints separate the points.
fn sharpen(p: CirclePoint) -> CirclePoint {
    let CirclePoint::Isolated(mut iso) = p else { return p };
    let tol = Q::new(BigInt::one(), BigInt::one() << 48u32);
    for _ in 0..REFINE_LIMIT {
        let scale = if iso.lo.abs() > Q::one() { iso.lo.abs() } else { Q::one() };
        if &iso.hi - &iso.lo <= &tol * &scale {
            break;
        }
        if let Some(q) = iso.refine() {
            return cayley(&q);
        }
    }
    CirclePoint::Isolated(iso)
}

/// A rational s close to x, with a dyadic denominator of k bits.
fn dyadic(x: f64, k: u32) -> Option<Q> {
    let q = Q::from_float(x)?;
    let den = BigInt::one() << k;
    Some((&q * Q::from_integer(den.clone())).round() / Q::from_integer(den))
}

/// A point strictly inside the arc from a to b (counterclockwise); `b = None`
/// means the arc runs back to 1.
fn arc_sample(a: &CirclePoint, b: Option<&CirclePoint>) -> Result<CirclePoint> {
    let lo = a.approx_arg();
    let hi = b.map_or(TAU, CirclePoint::approx_arg);
    let inside = |p: &CirclePoint| -> Result<bool> {
        if a.arg_cmp(p)? != Ordering::Less {
            return Ok(false);
        }
        match b {
            Some(b) => Ok(p.arg_cmp(b)? == Ordering::Less),
            None => Ok(*p != CirclePoint::one()),
        }
    };
    let m1 = CirclePoint::minus_one();
    if lo < PI && PI < hi && inside(&m1)? {
        return Ok(m1);
    }
    for frac in [0.5, 0.25, 0.75, 0.1, 0.9, 0.01, 0.99] {
        let theta = lo + frac * (hi - lo);
        let s = (theta / 2.0).tan();
        for k in [4u32, 8, 16, 24, 32, 40, 52] {
            let Some(q) = dyadic(s, k) else { continue };
            let p = cayley(&q);
            if inside(&p)? {
                return Ok(p);
            }
        }
    }
    Err(LinkError::Refinement(format!("no sample point found between {a} and the next breakpoint")))
}

/// Values of sign A on the arcs cut out by the circle roots of det A, and at
/// the exactly known roots.
pub fn signature_step_function(a: &HermitianLaurentMatrix, session: &Session) -> Result<MatrixStep> {
    let mut pts: Vec<CirclePoint> = a.det().circle_roots(session).into_iter().map(|r| sharpen(r.point)).collect();
    if !pts.iter().any(|p| *p == CirclePoint::one()) {
        pts.push(CirclePoint::one());
    }
    let pts = sort_by_arg(pts)?;
    let m = pts.len();
    let mut samples = Vec::with_capacity(m);
    let mut arcs = Vec::with_capacity(m);
    let mut points = Vec::with_capacity(m);
    for k in 0..m {
        let s = arc_sample(&pts[k], pts.get(k + 1))?;
        arcs.push(sign_at(a, &s)?);
        samples.push(s);
        points.push(if pts[k].is_exact() { Some(sign_at(a, &pts[k])?) } else { None });
    }
    let base = arcs[0];
    let jump1 = (arcs[0] - arcs[m - 1]) / 2;
    let shift = |v: i64| v - base + jump1;
    let normalized = SignatureFunction::new(
        a.field(),
        pts.clone(),
        arcs.iter().map(|&v| shift(v)).collect(),
        points.iter().map(|v| v.map(shift)).collect(),
    );
    let raw = SignatureFunction::new(a.field(), pts, arcs, points);
    Ok(MatrixStep { raw, normalized, samples })
}

/// Half the change of sign A across each breakpoint; zero jumps are omitted.
pub fn jumps_from_matrix(a: &HermitianLaurentMatrix, session: &Session) -> Result<BTreeMap<CirclePoint, i64>> {
    let st = signature_step_function(a, session)?;
    let mut out = BTreeMap::new();
    for (k, p) in st.raw.breakpoints().iter().enumerate() {
        let j = st.jump(k)?;
        if j != 0 {
            out.insert(p.clone(), j);
        }
    }
    Ok(out)
}
