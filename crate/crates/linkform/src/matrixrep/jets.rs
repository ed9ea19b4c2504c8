use crate::error::{LinkError, Result};
use crate::field::{CirclePoint, Elem};
use crate::forms::{local_sign, BasicForm};
use crate::laurent::{LMatrix, Series};

/// Diagonal jets of a congruent diagonalization of A over the local ring at xi,
/// with truncation mult + 2 and one retry at twice that.
pub fn local_diagonalize(a: &LMatrix, xi: &CirclePoint) -> Result<Vec<Series>> {
    let e = xi.exact_elem()?;
    let n = a.det().mult_at(&e) as i64 + 2;
    match local_diagonalize_with(a, &e, n) {
        Err(LinkError::Truncation(_)) => local_diagonalize_with(a, &e, 2 * n),
        r => r,
    }
}

/// Symmetric pivoting on jets known modulo (t - xi)^prec.
pub fn local_diagonalize_with(a: &LMatrix, xi: &Elem, prec: i64) -> Result<Vec<Series>> {
    let size = a.rows();
    let mult = if size == 0 { 0 } else { a.det().mult_at(xi) as i64 };
    if prec <= mult {
        return Err(LinkError::Truncation(format!("order {prec} does not exceed the multiplicity {mult}")));
    }
    let mut g: Vec<Vec<Series>> =
        (0..size).map(|i| (0..size).map(|j| Series::expand(a.get(i, j), xi, prec)).collect()).collect();
    let mut out = Vec::with_capacity(size);
    while !g.is_empty() {
        let k = g.len();
        let val = |s: &Series| s.valuation();
        let Some(v) = g.iter().flatten().filter_map(val).min() else {
            return Err(LinkError::Truncation(format!("a {k}x{k} block vanishes modulo order {prec}")));
        };
        let p = match (0..k).find(|&i| val(&g[i][i]) == Some(v)) {
            Some(p) => p,
            None => {
                let (i, j) = (0..k)
                    .flat_map(|i| (0..k).map(move |j| (i, j)))
                    .find(|&(i, j)| val(&g[i][j]) == Some(v))
                    .unwrap();
                let trial = [Elem::int(1), Elem::i()]
                    .iter()
                    .map(|c| crate::forms::combine_generators(&g, i, j, c))
                    .find(|t| val(&t[i][i]) == Some(v));
                match trial {
                    Some(t) => g = t,
                    None => return Err(LinkError::Truncation("no pivot of minimal valuation".into())),
                }
                i
            }
        };
        let inv = g[p][p].inv().expect("pivot valuation is certified");
        let coef: Vec<Series> = (0..k).map(|i| g[i][p].mul(&inv)).collect();
        let mut next = Vec::with_capacity(k - 1);
        for i in (0..k).filter(|&i| i != p) {
            next.push((0..k).filter(|&j| j != p).map(|j| g[i][j].sub(&coef[i].mul(&g[p][j]))).collect());
        }
        out.push(g[p][p].clone());
        g = next;
    }
    let total: i64 = out.iter().filter_map(Series::valuation).sum();
    if total != mult {
        return Err(LinkError::Truncation(format!("valuations sum to {total}, expected {mult}")));
    }
    Ok(out)
}

/// E summands at xi read off from diagonal jets b: the pairing on the summand is
/// 1/b, whose leading coefficient fixes the sign.
pub fn classify_local(entries: &[Series], xi: &CirclePoint) -> Result<Vec<BasicForm>> {
    let e = xi.exact_elem()?;
    let mut out = Vec::new();
    for b in entries {
        let Some(n) = b.valuation() else {
            return Err(LinkError::Truncation("diagonal entry vanishes to its precision".into()));
        };
        if n == 0 {
            continue;
        }
        let c = b.lead().unwrap().inv();
        out.push(BasicForm::e(n as u32, local_sign(&c, &e, n as u32)?, xi.clone()));
    }
    Ok(out)
}
