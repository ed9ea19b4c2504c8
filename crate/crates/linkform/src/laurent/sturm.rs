use super::UPoly;
use crate::field::{qi, Real, Q};
use num_traits::Signed;

/// Location of an isolated real root.
#[derive(Clone, Debug, PartialEq)]
pub enum RootLoc {
    Rational(Q),
    /// Exactly one root in the open interval; neither endpoint is a root.
    Interval(Q, Q),
}

pub fn sturm_sequence(p: &UPoly<Real>) -> Vec<UPoly<Real>> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    if seq.last().unwrap().is_zero() {
        seq.pop();
    }
    seq
}

fn variations(seq: &[UPoly<Real>], x: &Q) -> usize {
    let x = Real::rational(x.clone());
    let signs: Vec<i32> = seq.iter().map(|p| p.eval(&x).sign()).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of p in (lo, hi]; lo must not be a root.
pub fn sturm_count(p: &UPoly<Real>, lo: &Q, hi: &Q) -> usize {
    let seq = sturm_sequence(p);
    variations(&seq, lo).saturating_sub(variations(&seq, hi))
}

/// A rational bound strictly larger than every |root| (Cauchy).
pub fn root_bound(p: &UPoly<Real>) -> Q {
    let c = p.coeffs();
    let n = c.len() - 1;
    let lead = c[n].abs();
    // |a_k / a_n| <= |a_k|_bound / lower bound of |a_n|; use a rational lower bound of |lead|.
    let low = lower_bound(&lead);
    let mut m = qi(0);
    for a in &c[..n] {
        let v = a.abs_bound() / &low;
        if v > m {
            m = v;
        }
    }
    m + qi(2)
}

/// A positive rational strictly below a positive real quadratic number.
fn lower_bound(x: &Real) -> Q {
    if let Some(q) = x.as_rational() {
        return q.clone();
    }
    let mut guess = x.abs_bound();
    while Real::rational(guess.clone()) >= *x {
        guess /= qi(2);
    }
    guess
}

/// Isolates all distinct real roots of p, sorted ascending.
pub fn isolate_real_roots(p: &UPoly<Real>) -> Vec<RootLoc> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sq = p.squarefree_part();
    let seq = sturm_sequence(&sq);
    let b = root_bound(&sq);
    let is_root = |x: &Q| sq.eval(&Real::rational(x.clone())).is_zero();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let c = variations(&seq, &lo) - variations(&seq, &hi);
        if c == 0 {
            continue;
        }
        let zero = qi(0);
        if c == 1 && !(lo.is_negative() && hi.is_positive()) {
            out.push(RootLoc::Interval(lo, hi));
            continue;
        }
        let mid = if c == 1 { zero } else { (&lo + &hi) / qi(2) };
        if is_root(&mid) {
            let mut delta = (&hi - &lo) / qi(4);
            loop {
                let a = &mid - &delta;
                let bb = &mid + &delta;
                if !is_root(&a) && !is_root(&bb) && variations(&seq, &a) - variations(&seq, &bb) == 1 {
                    stack.push((lo.clone(), a));
                    stack.push((bb, hi.clone()));
                    break;
                }
                delta /= qi(2);
            }
            out.push(RootLoc::Rational(mid));
        } else {
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
    }
    out.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
    out
}

fn key(r: &RootLoc) -> Q {
    match r {
        RootLoc::Rational(q) => q.clone(),
        RootLoc::Interval(lo, _) => lo.clone(),
    }
}
