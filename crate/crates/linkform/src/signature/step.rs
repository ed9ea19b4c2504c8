use crate::error::Result;
use crate::field::CirclePoint;
use crate::laurent::FieldTag;
use std::cmp::Ordering;
use std::f64::consts::TAU;

pub const CSV_HEADER: &str = "kind,left_anchor,right_anchor,exact_tag,arg_lo_approx,arg_hi_approx,value";

/// Sorts circle points by argument in [0, 2 pi), failing on unorderable pairs.
pub(crate) fn sort_by_arg(mut pts: Vec<CirclePoint>) -> Result<Vec<CirclePoint>> {
    for i in 1..pts.len() {
        let mut j = i;
        while j > 0 && pts[j - 1].arg_cmp(&pts[j])? == Ordering::Greater {
            pts.swap(j - 1, j);
            j -= 1;
        }
    }
    Ok(pts)
}

/// A step function on the unit circle. `arcs[k]` is the value on the open arc
/// from `breakpoints[k]` to the next breakpoint (cyclically); `points[k]` is the
/// value at `breakpoints[k]`, if known. The first breakpoint is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureFunction {
    field: FieldTag,
    breakpoints: Vec<CirclePoint>,
    arcs: Vec<i64>,
    points: Vec<Option<i64>>,
}

impl SignatureFunction {
    pub fn new(field: FieldTag, breakpoints: Vec<CirclePoint>, arcs: Vec<i64>, points: Vec<Option<i64>>) -> Self {
        assert!(breakpoints.len() == arcs.len() && arcs.len() == points.len() && !arcs.is_empty());
        SignatureFunction { field, breakpoints, arcs, points }
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn breakpoints(&self) -> &[CirclePoint] {
        &self.breakpoints
    }

    pub fn arc_values(&self) -> &[i64] {
        &self.arcs
    }

    pub fn point_values(&self) -> &[Option<i64>] {
        &self.points
    }

    /// Values on the arcs to the left and right of breakpoint k.
    pub fn sides(&self, k: usize) -> (i64, i64) {
        let m = self.arcs.len();
        (self.arcs[(k + m - 1) % m], self.arcs[k])
    }

    /// Value at an arbitrary circle point; `None` when the point is a
    /// breakpoint whose value is unknown.
    pub fn value_at(&self, xi: &CirclePoint) -> Result<Option<i64>> {
        let mut idx = 0;
        for (k, b) in self.breakpoints.iter().enumerate() {
            match b.arg_cmp(xi)? {
                Ordering::Equal => return Ok(self.points[k]),
                Ordering::Less => idx = k,
                Ordering::Greater => break,
            }
        }
        Ok(Some(self.arcs[idx]))
    }

    /// True when the two functions agree on all arcs and at all breakpoints
    /// where both are known.
    pub fn agrees_with(&self, o: &SignatureFunction) -> Result<bool> {
        let mut pts = self.breakpoints.clone();
        pts.extend(o.breakpoints.iter().cloned());
        let pts = sort_by_arg(pts)?;
        for p in &pts {
            if let (Some(a), Some(b)) = (self.value_at(p)?, o.value_at(p)?) {
                if a != b {
                    return Ok(false);
                }
            }
        }
        // One interior point per arc of the common refinement.
        for k in 0..pts.len() {
            let l = &pts[k];
            if pts.get(k + 1) == Some(l) {
                continue;
            }
            let a = self.arc_after(l)?;
            let b = o.arc_after(l)?;
            if a != b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Value on the arc immediately after the point p.
    fn arc_after(&self, p: &CirclePoint) -> Result<i64> {
        let mut idx = self.arcs.len() - 1;
        for (k, b) in self.breakpoints.iter().enumerate() {
            if b.arg_cmp(p)? != Ordering::Greater {
                idx = k;
            } else {
                break;
            }
        }
        Ok(self.arcs[idx])
    }

    /// CSV rows: each breakpoint followed by the arc after it.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        let m = self.breakpoints.len();
        for k in 0..m {
            let b = &self.breakpoints[k];
            let tag = if b.is_exact() { "exact" } else { "isolated" };
            let a = b.approx_arg();
            let v = self.points[k].map_or(String::new(), |v| v.to_string());
            out.push_str(&format!("point,{},{},{tag},{a:.6},{a:.6},{v}\n", csv_cell(b), csv_cell(b)));
            let next = &self.breakpoints[(k + 1) % m];
            let hi = if k + 1 == m { TAU } else { next.approx_arg() };
            out.push_str(&format!("arc,{},{},open,{a:.6},{hi:.6},{}\n", csv_cell(b), csv_cell(next), self.arcs[k]));
        }
        out
    }
}

fn csv_cell(p: &CirclePoint) -> String {
    let s = p.anchor();
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}
