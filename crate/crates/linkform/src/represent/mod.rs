//! Representability of linking forms by Hermitian matrices, and explicit
//! representing matrices.

use crate::error::{pre, LinkError, Result};
use crate::field::{CirclePoint, Elem, Real, Session};
use crate::forms::{positive_associate, BasicForm, StructuredForm};
use crate::laurent::{basic_poly, norm_square_poly, FieldTag, LMatrix, LaurentPoly};
use crate::matrixrep::{classify_matrix, HermitianLaurentMatrix};
use crate::signature::total_jump;
use std::fmt;

/// Why a form is or is not representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    TotalJumpNonzero,
    RealAlways,
    Constructed,
}

impl Certificate {
    pub fn tag(&self) -> &'static str {
        match self {
            Certificate::TotalJumpNonzero => "total-jump-nonzero",
            Certificate::RealAlways => "real-always",
            Certificate::Constructed => "constructed",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug)]
pub struct RepresentabilityVerdict {
    pub representable: bool,
    pub total_jump: i64,
    pub certificate: Certificate,
    pub matrix: Option<HermitianLaurentMatrix>,
}

/// Decision only; `matrix` is left empty. Use [`represent`] for the matrix.
pub fn is_representable(s: &StructuredForm) -> RepresentabilityVerdict {
    let total = total_jump(s);
    let (representable, certificate) = match s.field() {
        FieldTag::R => (true, Certificate::RealAlways),
        FieldTag::C => {
            let odd: i64 = s.complex_e_terms().iter().filter(|t| t.0 % 2 == 1).map(|t| t.1 as i64).sum();
            if odd == 0 {
                (true, Certificate::Constructed)
            } else {
                (false, Certificate::TotalJumpNonzero)
            }
        }
    };
    RepresentabilityVerdict { representable, total_jump: total, certificate, matrix: None }
}

/// The verdict together with a representing matrix when one exists.
pub fn represent(s: &StructuredForm, session: &Session) -> Result<RepresentabilityVerdict> {
    let mut v = is_representable(s);
    if v.representable {
        v.matrix = Some(build_representative(s, session)?);
    }
    Ok(v)
}

/// Coefficients for the 2x2 blocks pairing two odd summands at the same point:
/// ab = -d conj(c xi) and 2 Re(a conj b) != |c|^2 + |d|^2. With `b_nonreal`
/// the choice has b = 1 + i.
pub fn choose_pair_coeffs(xi: &CirclePoint, b_nonreal: bool) -> Result<(Elem, Elem, Elem, Elem)> {
    let x = xi.exact_elem()?;
    let a = Elem::int(1);
    let b = if b_nonreal { &Elem::int(1) + &Elem::i() } else { Elem::int(1) };
    let mut c = Elem::int(1);
    let mut d = -(&(&a * &b) / &(&c * &x).conj());
    let lhs = &Real::int(2) * &(&a * &b.conj()).re;
    if lhs == &c.norm2() + &d.norm2() {
        c = &c / &Elem::int(2);
        d = &d * &Elem::int(2);
    }
    Ok((a, b, c, d))
}

/// The 2x2 block built from (a, b, c, d) at xi has determinant u t^-1 with
/// u = conj(xi) (|c|^2 + |d|^2 - 2 Re(a conj b)); returns u.
pub fn pair_block_unit(xi: &Elem, coeffs: &(Elem, Elem, Elem, Elem)) -> Elem {
    let (a, b, c, d) = coeffs;
    let r = &(&c.norm2() + &d.norm2()) - &(&Real::int(2) * &(a * &b.conj()).re);
    &xi.conj() * &Elem::real(r)
}

/// p = a t - 2b + conj(a) t^-1 with b real, whose roots on the circle are
/// exactly xi1 and xi2.
pub fn pair_polynomial(xi1: &CirclePoint, xi2: &CirclePoint) -> Result<LaurentPoly> {
    let (x1, x2) = (xi1.exact_elem()?, xi2.exact_elem()?);
    let sum = &x1 + &x2;
    // t p = a (t - x1)(t - x2) forces conj(a) = a x1 x2 and 2b = a (x1 + x2).
    let (a, two_b) = if sum.is_zero() {
        (&Elem::i() * &x1.conj(), Elem::int(0))
    } else {
        let half = Elem::q(crate::field::qr(1, 2));
        (&sum.conj() * &half, &Elem::real(sum.norm2()) * &half)
    };
    let p = LaurentPoly::from_terms(&[(1, a.clone()), (0, -two_b), (-1, a.conj())]);
    for x in [&x1, &x2] {
        if !p.eval(x).is_zero() {
            return Err(LinkError::Identity(format!("pair polynomial does not vanish at {}", x.to_text())));
        }
    }
    Ok(p)
}

/// Block (t - xi)^k-weighted version of the 2x2 unit-determinant matrix; k = 0
/// gives the plain one. Multiplying by (t - xi) makes it Hermitian.
fn pair_block(x: &Elem, k: u32, coeffs: &(Elem, Elem, Elem, Elem)) -> LMatrix {
    let (a, b, c, d) = coeffs;
    let tinv = |e: &Elem| LaurentPoly::mono(e.clone(), -1);
    let cst = |e: Elem| LaurentPoly::constant(e);
    let lin = LaurentPoly::linear(x);
    let norm = norm_square_poly(x);
    let e11 = &norm.pow(k) * &(&tinv(a) - &cst((a * x).conj()));
    let e12 = &lin.pow(k) * &(&tinv(d) + &cst(c.clone()));
    let e21 = -&(&(&tinv(&(c * x).conj()) + &cst((d * x).conj())) * &lin.involve().pow(k));
    let e22 = &tinv(b) - &cst((b * x).conj());
    LMatrix::from_rows(vec![vec![e11, e12], vec![e21, e22]])
}

/// Returns +-block, whichever represents `want`.
fn fit(field: FieldTag, block: LMatrix, want: &StructuredForm, session: &Session) -> Result<LMatrix> {
    let got = classify_matrix(&HermitianLaurentMatrix::new(field, block.clone())?, session)?;
    if got == *want {
        Ok(block)
    } else if got.negate() == *want {
        Ok(block.map(|p| -p))
    } else {
        Err(LinkError::Identity(format!("block represents {got}, expected {want}")))
    }
}

fn single(field: FieldTag, b: &BasicForm) -> Result<StructuredForm> {
    StructuredForm::new(field, vec![b.clone()])
}

/// Matrix for one summand that does not need a partner.
fn solo_block(field: FieldTag, b: &BasicForm, session: &Session) -> Result<LMatrix> {
    let want = single(field, b)?;
    let block = match b {
        BasicForm::F { n, poly } => match b.plus_minus_one() {
            Some(pm) => {
                let lin = LaurentPoly::linear(&pm.exact_elem()?);
                LMatrix::from_rows(vec![
                    vec![LaurentPoly::zero(), lin.involve().pow(*n)],
                    vec![lin.pow(*n), LaurentPoly::zero()],
                ])
            }
            None => LMatrix::from_rows(vec![vec![positive_associate(poly)?.pow(*n)]]),
        },
        BasicForm::E { n, eps, xi } => {
            let base = if field == FieldTag::R && !xi.is_plus_minus_one() {
                basic_poly(xi, field)?.pow(*n)
            } else if n % 2 == 0 {
                norm_square_poly(&xi.exact_elem()?).pow(n / 2)
            } else {
                return pre(format!("{b} needs a partner"));
            };
            LMatrix::from_rows(vec![vec![base.scale(&Elem::int(*eps as i64))]])
        }
    };
    fit(field, block, &want, session)
}

/// Matrix for E(n, +1, xi) + E(m, -1, zeta) over C with n, m odd.
fn pair_blocks(pos: (u32, &CirclePoint), neg: (u32, &CirclePoint), session: &Session) -> Result<LMatrix> {
    let want = StructuredForm::new(
        FieldTag::C,
        vec![BasicForm::e(pos.0, 1, pos.1.clone()), BasicForm::e(neg.0, -1, neg.1.clone())],
    )?;
    let (big, small) = if pos.0 >= neg.0 { (pos, neg) } else { (neg, pos) };
    let block = if pos.1 != neg.1 {
        let p = pair_polynomial(big.1, small.1)?;
        let x = big.1.exact_elem()?;
        let q = &norm_square_poly(&x).pow((big.0 - small.0) / 2) * &p.pow(small.0);
        LMatrix::from_rows(vec![vec![q]])
    } else {
        let x = big.1.exact_elem()?;
        let lin = LaurentPoly::linear(&x);
        let k = (big.0 - small.0) / 2;
        let coeffs = choose_pair_coeffs(big.1, k > 0)?;
        let scale = &lin * &norm_square_poly(&x).pow(small.0 / 2);
        pair_block(&x, k, &coeffs).map(|e| &scale * e)
    };
    fit(FieldTag::C, block, &want, session)
}

/// Odd E summands over C matched +1 with -1: first equal point and size, then
/// equal point, then anything.
fn match_odd(plus: Vec<(u32, CirclePoint)>, mut minus: Vec<(u32, CirclePoint)>) -> Vec<((u32, CirclePoint), (u32, CirclePoint))> {
    let mut out = Vec::new();
    let mut rest = Vec::new();
    for p in plus {
        match minus.iter().position(|m| *m == p) {
            Some(k) => out.push((p, minus.remove(k))),
            None => rest.push(p),
        }
    }
    let mut later = Vec::new();
    for p in rest {
        match minus.iter().position(|m| m.1 == p.1) {
            Some(k) => out.push((p, minus.remove(k))),
            None => later.push(p),
        }
    }
    out.extend(later.into_iter().zip(minus));
    out
}

/// A block-diagonal Hermitian matrix whose form is isometric to s.
pub fn build_representative(s: &StructuredForm, session: &Session) -> Result<HermitianLaurentMatrix> {
    let v = is_representable(s);
    if !v.representable {
        return Err(LinkError::NotRepresentable(v.total_jump));
    }
    let field = s.field();
    let mut blocks = Vec::new();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for b in s.summands() {
        match b {
            BasicForm::E { n, eps, xi } if field == FieldTag::C && n % 2 == 1 => {
                if *eps > 0 {
                    plus.push((*n, xi.clone()));
                } else {
                    minus.push((*n, xi.clone()));
                }
            }
            _ => blocks.push(solo_block(field, b, session)?),
        }
    }
    for (p, m) in match_odd(plus, minus) {
        blocks.push(pair_blocks((p.0, &p.1), (m.0, &m.1), session)?);
    }
    let m = blocks.iter().fold(LMatrix::zeros(0, 0), |acc, b| acc.direct_sum(b));
    let a = HermitianLaurentMatrix::new(field, m)?;
    let back = classify_matrix(&a, session)?;
    if back != *s {
        return Err(LinkError::Identity(format!("representative classifies as {back}, expected {s}")));
    }
    Ok(a)
}

#[cfg(test)]
mod tests;
