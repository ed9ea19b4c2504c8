use crate::error::{LinkError, Result};
use crate::field::Elem;
use crate::laurent::Series;

/// Sign of an order-n summand at the circle point xi, from the coefficient c of
/// u^-n (u = t - xi) in the self-pairing of its generator.
pub fn local_sign(c: &Elem, xi: &Elem, n: u32) -> Result<i32> {
    let xb = xi.conj();
    let w = -(&xb * &xb);
    if n.is_multiple_of(2) {
        let v = c * &w.pow(n / 2);
        match v.real_sign() {
            Some(s) if s != 0 => Ok(s),
            _ => Err(LinkError::Identity(format!("even local coefficient {} is not a nonzero real", v.to_text()))),
        }
    } else {
        let r0 = c * &w.pow((n - 1) / 2);
        let z = &xb * &r0;
        if !z.re.is_zero() || z.im.is_zero() {
            return Err(LinkError::Identity(format!("odd local residue {} is not purely imaginary", z.to_text())));
        }
        Ok(if z.im.sign() < 0 { 1 } else { -1 })
    }
}

fn pole(s: &Series) -> Option<i64> {
    s.valuation().map(|v| -v)
}

/// Orthogonal splitting of a torsion form over the local ring at xi. `gram`
/// holds principal parts of the pairings of a generating set of the xi-primary
/// part. Returns (n, eps) for each cyclic summand found.
pub fn split_local(mut gram: Vec<Vec<Series>>, xi: &Elem) -> Result<Vec<(u32, i32)>> {
    let mut out = Vec::new();
    loop {
        let k = gram.len();
        let v = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).filter_map(|(i, j)| pole(&gram[i][j])).max();
        let Some(v) = v.filter(|&v| v > 0) else { break };
        let p = match (0..k).find(|&i| pole(&gram[i][i]) == Some(v)) {
            Some(p) => p,
            None => {
                let (i, j) = (0..k)
                    .flat_map(|i| (0..k).map(move |j| (i, j)))
                    .find(|&(i, j)| pole(&gram[i][j]) == Some(v))
                    .unwrap();
                let mut found = false;
                for a in [Elem::int(1), Elem::i()] {
                    let trial = combine(&gram, i, j, &a);
                    if pole(&trial[i][i]) == Some(v) {
                        gram = trial;
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Err(LinkError::Degenerate("no generator realizes the maximal pole order".into()));
                }
                i
            }
        };
        let lead = gram[p][p].coeff(-v);
        out.push((v as u32, local_sign(&lead, xi, v as u32)?));
        let inv = gram[p][p].inv().expect("pivot has a certified valuation");
        let coef: Vec<Series> = (0..k).map(|i| gram[i][p].mul(&inv)).collect();
        if coef.iter().any(|c| c.valuation().is_some_and(|x| x < 0)) {
            return Err(LinkError::Identity("local splitting produced a pole".into()));
        }
        let mut next = Vec::with_capacity(k - 1);
        for i in (0..k).filter(|&i| i != p) {
            let row = (0..k)
                .filter(|&j| j != p)
                .map(|j| gram[i][j].sub(&coef[i].mul(&gram[p][j])).principal())
                .collect();
            next.push(row);
        }
        gram = next;
    }
    Ok(out)
}

/// Replaces generator i by y_i + a y_j.
pub(crate) fn combine(gram: &[Vec<Series>], i: usize, j: usize, a: &Elem) -> Vec<Vec<Series>> {
    let k = gram.len();
    let ac = a.conj();
    let mut g = gram.to_vec();
    for l in 0..k {
        g[i][l] = gram[i][l].add(&gram[j][l].scale(a));
    }
    let row_i = g[i].clone();
    for l in 0..k {
        g[l][i] = if l == i {
            row_i[i].add(&row_i[j].scale(&ac))
        } else {
            gram[l][i].add(&gram[l][j].scale(&ac))
        };
    }
    g
}
