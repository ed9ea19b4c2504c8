use super::Elem;

/// Signature (positive minus negative inertia) of a Hermitian matrix over the
/// field, by symmetric pivoting; singular matrices are allowed.
pub fn hermitian_signature(m: &[Vec<Elem>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<Elem>> = m.to_vec();
    let mut sig = 0i64;
    let mut k = 0;
    while k < n {
        let piv = (k..n).find(|&p| !a[p][p].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                let off = (k..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).find(|&(p, q)| !a[p][q].is_zero());
                let Some((p, q)) = off else { break };
                // e_p <- e_p + c e_q makes the diagonal entry 2 Re(conj(c) a_pq) nonzero.
                let c = if a[p][q].re.is_zero() { Elem::i() } else { Elem::int(1) };
                congruence_add(&mut a, p, q, &c);
                p
            }
        };
        swap(&mut a, k, p);
        let d = a[k][k].clone();
        debug_assert!(d.is_real());
        sig += d.re.sign() as i64;
        for j in k + 1..n {
            if a[j][k].is_zero() {
                continue;
            }
            let l = &a[j][k] / &d;
            congruence_add(&mut a, j, k, &-&l);
        }
        k += 1;
    }
    sig
}

/// Row p += c row q, then column p += conj(c) column q.
fn congruence_add(a: &mut [Vec<Elem>], p: usize, q: usize, c: &Elem) {
    let n = a.len();
    for j in 0..n {
        let v = &a[p][j] + &(c * &a[q][j]);
        a[p][j] = v;
    }
    let cc = c.conj();
    for row in a.iter_mut().take(n) {
        let v = &row[p] + &(&row[q] * &cc);
        row[p] = v;
    }
}

fn swap(a: &mut [Vec<Elem>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}
