use super::LaurentPoly;
use crate::error::{pre, LinkError, Result};
use crate::field::{CirclePoint, Elem, Real};
use std::fmt;

/// Real or complex coefficients for a linking form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    R,
    C,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::R => "R",
            FieldTag::C => "C",
        })
    }
}

/// Basic polynomial of a unit-circle point: t - xi over C; over R, t -+ 1 at +-1
/// and (t - xi)(1 - conj(xi) t^-1) = t - 2 Re xi + t^-1 otherwise.
pub fn basic_poly(xi: &CirclePoint, tag: FieldTag) -> Result<LaurentPoly> {
    let e = xi.exact_elem()?;
    Ok(match tag {
        FieldTag::C => LaurentPoly::linear(&e),
        FieldTag::R if xi.is_plus_minus_one() => LaurentPoly::linear(&e),
        FieldTag::R => {
            let two_re = Elem::real(&Real::int(2) * &e.re);
            LaurentPoly::from_terms(&[(1, Elem::int(1)), (0, -two_re), (-1, Elem::int(1))])
        }
    })
}

/// Basic polynomial of a point off the unit circle (and nonzero).
pub fn offcircle_basic(xi: &Elem, tag: FieldTag) -> Result<LaurentPoly> {
    let n = xi.norm2();
    if xi.is_zero() || n == Real::int(1) {
        return pre("off-circle basic polynomial needs 0 < |xi| != 1");
    }
    let a = LaurentPoly::linear(xi);
    let c = &a * &a.involve();
    match tag {
        FieldTag::C => Ok(c),
        FieldTag::R if xi.is_real() => {
            // (t - xi)(1 - xi^-1 t^-1)
            let b = LaurentPoly::from_terms(&[(0, Elem::int(1)), (-1, -xi.inv())]);
            Ok(&a * &b)
        }
        FieldTag::R => {
            let ac = LaurentPoly::linear(&xi.conj());
            Ok(&c * &(&ac * &ac.involve()))
        }
    }
}

/// Residue criterion: r is xi-positive iff Im(conj(xi) r(xi)) < 0. Requires
/// r(xi) != 0 and (t^-1 - conj xi) r symmetric.
pub fn is_xi_positive(r: &LaurentPoly, xi: &CirclePoint) -> Result<bool> {
    let e = xi.exact_elem()?;
    let v = r.eval(&e);
    if v.is_zero() {
        return pre("r vanishes at xi");
    }
    let inv_lin = LaurentPoly::from_terms(&[(-1, Elem::int(1)), (0, -e.conj())]);
    if !(&inv_lin * r).is_symmetric() {
        return pre("(t^-1 - conj xi) r is not symmetric");
    }
    let z = &e.conj() * &v;
    if !z.re.is_zero() {
        return Err(LinkError::Identity("residue of a xi-positive candidate has a real part".into()));
    }
    Ok(z.im.sign() < 0)
}

/// The canonical xi-positive linear polynomial: 1 - xi t for Im xi > 0,
/// -(1 - xi t) for Im xi < 0, -i(t + 1) at 1 and -i(t - 1) at -1.
pub fn positive_linear(xi: &CirclePoint) -> Result<LaurentPoly> {
    let e = xi.exact_elem()?;
    let mi = -Elem::i();
    let r = if xi.is_plus_minus_one() {
        let c = if e == Elem::int(1) { Elem::int(1) } else { Elem::int(-1) };
        LaurentPoly::from_terms(&[(1, mi.clone()), (0, &mi * &c)])
    } else {
        let base = LaurentPoly::from_terms(&[(0, Elem::int(1)), (1, -e.clone())]);
        if xi.im_sign() > 0 {
            base
        } else {
            -base
        }
    };
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{cayley, qr, Session};

    fn omega() -> CirclePoint {
        CirclePoint::root_of_unity(1, 6).unwrap()
    }

    #[test]
    fn basic_poly_examples() {
        assert_eq!(basic_poly(&CirclePoint::one(), FieldTag::R).unwrap(), LaurentPoly::from_ints(0, &[-1, 1]));
        assert_eq!(basic_poly(&omega(), FieldTag::R).unwrap(), LaurentPoly::from_ints(-1, &[1, -1, 1]));
        assert_eq!(basic_poly(&CirclePoint::i(), FieldTag::C).unwrap(), LaurentPoly::linear(&Elem::i()));
        for p in [omega(), CirclePoint::i(), cayley(&qr(1, 3)), CirclePoint::minus_one()] {
            for tag in [FieldTag::R, FieldTag::C] {
                assert!(basic_poly(&p, tag).unwrap().weakly_symmetric().is_some());
            }
        }
        let _ = Session::default();
    }

    #[test]
    fn positivity_examples() {
        let xi = cayley(&qr(1, 2));
        let e = xi.elem().unwrap();
        let r = LaurentPoly::from_terms(&[(0, Elem::int(1)), (1, -e)]);
        assert!(is_xi_positive(&r, &xi).unwrap());
        assert!(!is_xi_positive(&(-&r), &xi).unwrap());
        let r1 = LaurentPoly::from_terms(&[(1, -Elem::i()), (0, -Elem::i())]);
        assert!(is_xi_positive(&r1, &CirclePoint::one()).unwrap());
        assert!(is_xi_positive(&LaurentPoly::int(1), &xi).is_err());
    }

    #[test]
    fn canonical_positive_linear_is_positive() {
        for p in [omega(), omega().conj(), CirclePoint::i(), CirclePoint::i().conj(), CirclePoint::one(), CirclePoint::minus_one(), cayley(&qr(-7, 3))] {
            let r = positive_linear(&p).unwrap();
            assert!(is_xi_positive(&r, &p).unwrap(), "{p}");
        }
    }

    #[test]
    fn offcircle_polys_are_weakly_symmetric() {
        for xi in [Elem::gauss(qr(1, 2), qr(0, 1)), Elem::gauss(qr(1, 3), qr(1, 4)), Elem::gauss(qr(2, 1), qr(1, 1))] {
            for tag in [FieldTag::R, FieldTag::C] {
                let p = offcircle_basic(&xi, tag).unwrap();
                assert!(p.weakly_symmetric().is_some());
                if tag == FieldTag::R {
                    assert!(p.has_real_coeffs());
                }
            }
        }
    }
}
