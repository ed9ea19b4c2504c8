use super::*;
use crate::field::{cayley, hermitian_signature, qr, Elem};
use crate::laurent::basic_poly;
use proptest::prelude::*;

fn omega() -> CirclePoint {
    CirclePoint::root_of_unity(1, 6).unwrap()
}

fn s3() -> Session {
    Session::with_sqrt(3).unwrap()
}

fn form(field: FieldTag, s: &[(u32, i32, CirclePoint)]) -> StructuredForm {
    StructuredForm::new(field, s.iter().map(|(n, e, p)| BasicForm::e(*n, *e, p.clone())).collect()).unwrap()
}

fn trefoil_type() -> StructuredForm {
    form(FieldTag::R, &[(1, 1, omega())])
}

/// sign(2 cos(theta) - 1) on the circle: the 1x1 matrix t - 1 + t^-1.
fn trefoil_matrix_sign(p: &CirclePoint) -> i64 {
    let e = p.elem().unwrap();
    let v = &(&e + &e.conj()) - &Elem::int(1);
    hermitian_signature(&[vec![v]])
}

#[test]
fn trefoil_jumps() {
    let s = trefoil_type();
    assert_eq!(signature_jump(&s, &omega()), -1);
    assert_eq!(signature_jump(&s, &omega().conj()), 1);
    assert_eq!(signature_jump(&s, &CirclePoint::i()), 0);
    assert_eq!(signature_jump(&s, &CirclePoint::one()), 0);
}

#[test]
fn jump_matches_matrix_sign_change() {
    // Independent oracle: half the change of sign(A) across the breakpoint.
    let before = trefoil_matrix_sign(&cayley(&qr(1, 2)));
    let after = trefoil_matrix_sign(&cayley(&qi(1)));
    assert_eq!((after - before) / 2, signature_jump(&trefoil_type(), &omega()));
}

#[test]
fn local_term_examples() {
    let i = CirclePoint::i();
    assert_eq!(sigma_loc(&form(FieldTag::C, &[(2, 1, i.clone())]), &i), -1);
    assert_eq!(sigma_loc(&form(FieldTag::C, &[(1, 1, i.clone())]), &i), 0);
    assert_eq!(sigma_loc(&form(FieldTag::C, &[(2, 1, i.clone()), (2, -1, i.clone())]), &i), 0);
}

#[test]
fn trefoil_signature_function() {
    let s = trefoil_type();
    let f = signature_function(&s).unwrap();
    assert_eq!(f.breakpoints().len(), 3);
    assert_eq!(f.value_at(&CirclePoint::minus_one()).unwrap(), Some(-2));
    assert_eq!(f.value_at(&CirclePoint::i()).unwrap(), Some(-2));
    assert_eq!(f.value_at(&CirclePoint::i().conj()).unwrap(), Some(-2));
    assert_eq!(f.value_at(&omega()).unwrap(), Some(-1));
    assert_eq!(f.value_at(&omega().conj()).unwrap(), Some(-1));
    assert_eq!(f.value_at(&CirclePoint::one()).unwrap(), Some(0));
    // Cross-check against sign(A(xi)) - sign(A(1^+)) + jump(1) away from breakpoints.
    let base = trefoil_matrix_sign(&cayley(&qr(1, 100)));
    for s_par in [qr(1, 3), qi(1), qi(3), qi(-3), qr(-1, 2), qi(7)] {
        let p = cayley(&s_par);
        assert_eq!(f.value_at(&p).unwrap(), Some(trefoil_matrix_sign(&p) - base));
    }
}

#[test]
fn empty_and_even_functions() {
    let f = signature_function(&StructuredForm::empty(FieldTag::C)).unwrap();
    assert_eq!(f.arc_values(), &[0]);
    assert_eq!(f.point_values(), &[Some(0)]);
    let i = CirclePoint::i();
    let f = signature_function(&form(FieldTag::C, &[(2, 1, i.clone())])).unwrap();
    assert!(f.arc_values().iter().all(|v| *v == 0));
    assert_eq!(f.value_at(&i).unwrap(), Some(-1));
}

#[test]
fn averaged_examples() {
    assert_eq!(averaged_signature(&trefoil_type(), &omega()).unwrap(), -1);
    let i = CirclePoint::i();
    assert_eq!(averaged_signature(&form(FieldTag::C, &[(2, 1, i.clone())]), &i).unwrap(), 0);
    assert_eq!(averaged_signature(&trefoil_type(), &CirclePoint::one()).unwrap(), 0);
}

#[test]
fn witt_examples() {
    let xi = cayley(&qr(1, 2));
    for m in 1..3 {
        assert!(witt_class(&form(FieldTag::R, &[(2 * m, 1, xi.clone())])).is_zero());
    }
    for eps in [1, -1] {
        assert_eq!(witt_class(&form(FieldTag::R, &[(3, eps, xi.clone())])), witt_class(&form(FieldTag::R, &[(1, eps, xi.clone())])));
    }
    let g = crate::laurent::offcircle_basic(&Elem::int(2), FieldTag::R).unwrap();
    let f = StructuredForm::new(FieldTag::R, vec![BasicForm::f(1, g)]).unwrap();
    assert!(witt_class(&f).is_zero());
}

#[test]
fn metabolic_examples() {
    let i = CirclePoint::i();
    assert!(is_metabolic(&form(FieldTag::C, &[(1, 1, i.clone()), (1, -1, i.clone())])));
    assert!(!is_metabolic(&form(FieldTag::C, &[(1, 1, i.clone())])));
    let w = WittClass { field: FieldTag::C, coords: [(i.clone(), 2)].into_iter().collect() };
    let nf = witt_normal_form(&w).unwrap();
    assert_eq!(nf, form(FieldTag::C, &[(1, 1, i.clone()), (1, 1, i.clone())]));
    assert_eq!(witt_class(&nf), w);
}

#[test]
fn reduction_examples() {
    let xi = cayley(&qr(1, 2));
    let r = basic_poly(&xi, FieldTag::R).unwrap();
    let s = form(FieldTag::R, &[(3, -1, xi.clone())]);
    let red = sublagrangian_reduce(&s, &[vec![r.pow(2)]], &Session::default()).unwrap();
    assert_eq!(red, form(FieldTag::R, &[(1, -1, xi.clone())]));
    let s = form(FieldTag::R, &[(4, 1, xi.clone())]);
    let red = sublagrangian_reduce(&s, &[vec![r.pow(2)]], &Session::default()).unwrap();
    assert!(red.is_empty());
    assert_eq!(sublagrangian_reduce(&s, &[], &Session::default()).unwrap(), s);
    assert!(sublagrangian_reduce(&s, &[vec![r.clone()]], &Session::default()).is_err());
}

#[test]
fn order_condition_examples() {
    let i = Elem::i();
    let a = LaurentPoly::linear(&i);
    let b = &a * &a.involve();
    let one = LaurentPoly::one();
    assert_eq!(check_order_condition(&a, &b, &one).unwrap(), OrderCondition { divides: true, equality: true });
    assert!(!check_order_condition(&a.pow(2), &b, &one).unwrap().divides);
    assert_eq!(check_order_condition(&one, &one, &one).unwrap(), OrderCondition { divides: true, equality: true });
}

#[test]
fn csv_layout() {
    let f = signature_function(&trefoil_type()).unwrap();
    let csv = f.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 1 + 2 * 3);
    assert!(lines[1].starts_with("point,"));
    assert!(lines[2].starts_with("arc,"));
    assert!(lines.iter().skip(1).all(|l| l.split(',').count() == 7));
}

fn qi(n: i64) -> crate::field::Q {
    crate::field::qi(n)
}

fn points() -> Vec<CirclePoint> {
    vec![
        CirclePoint::one(),
        CirclePoint::minus_one(),
        CirclePoint::i(),
        CirclePoint::i().conj(),
        omega(),
        omega().conj(),
        CirclePoint::root_of_unity(1, 12).unwrap(),
        cayley(&qr(1, 2)),
        cayley(&qr(-3, 2)),
    ]
}

fn arb_form(field: FieldTag) -> impl Strategy<Value = StructuredForm> {
    let pts = points();
    proptest::collection::vec((1u32..4, prop::bool::ANY, 0..pts.len()), 0..5).prop_map(move |v| {
        let mut s = Vec::new();
        for (n, pos, k) in v {
            let p = pts[k].clone();
            let eps = if pos { 1 } else { -1 };
            if field == FieldTag::R {
                if p.im_sign() < 0 {
                    continue;
                }
                if p.is_plus_minus_one() && n % 2 == 1 {
                    continue;
                }
            }
            s.push(BasicForm::e(n, eps, p));
        }
        StructuredForm::new(field, s).unwrap()
    })
}

fn samples() -> Vec<CirclePoint> {
    let mut v = points();
    for s in [qr(1, 7), qi(2), qi(-5), qr(-1, 3), qi(40)] {
        v.push(cayley(&s));
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn additivity(a in arb_form(FieldTag::C), b in arb_form(FieldTag::C)) {
        let sum = a.direct_sum(&b).unwrap();
        let (fa, fb, fs) = (signature_function(&a).unwrap(), signature_function(&b).unwrap(), signature_function(&sum).unwrap());
        for p in samples() {
            prop_assert_eq!(signature_jump(&sum, &p), signature_jump(&a, &p) + signature_jump(&b, &p));
            prop_assert_eq!(sigma_loc(&sum, &p), sigma_loc(&a, &p) + sigma_loc(&b, &p));
            let va = fa.value_at(&p).unwrap().unwrap();
            let vb = fb.value_at(&p).unwrap().unwrap();
            prop_assert_eq!(fs.value_at(&p).unwrap().unwrap(), va + vb);
        }
        prop_assert_eq!(witt_class(&sum), witt_class(&a).add(&witt_class(&b)).unwrap());
    }

    #[test]
    fn breakpoint_structure(a in arb_form(FieldTag::C)) {
        let f = signature_function(&a).unwrap();
        for (k, p) in f.breakpoints().iter().enumerate() {
            let (l, r) = f.sides(k);
            let v = f.point_values()[k].unwrap();
            if *p != CirclePoint::one() {
                prop_assert_eq!(r - l, 2 * signature_jump(&a, p));
                prop_assert_eq!(2 * v, l + r + 2 * sigma_loc(&a, p));
            } else {
                prop_assert_eq!(v, 2 * signature_jump(&a, p) + sigma_loc(&a, p));
                if total_jump(&a) == 0 {
                    prop_assert_eq!(r - l, 2 * signature_jump(&a, p));
                }
            }
        }
    }

    #[test]
    fn real_symmetry(a in arb_form(FieldTag::R)) {
        let f = signature_function(&a).unwrap();
        for p in samples() {
            prop_assert_eq!(f.value_at(&p).unwrap(), f.value_at(&p.conj()).unwrap());
            prop_assert_eq!(signature_jump(&a, &p.conj()), -signature_jump(&a, &p));
        }
        prop_assert_eq!(f.value_at(&CirclePoint::one()).unwrap(), Some(sigma_loc(&a, &CirclePoint::one())));
        prop_assert_eq!(averaged_signature(&a, &CirclePoint::one()).unwrap(), signature_jump(&a, &CirclePoint::one()));
    }

    #[test]
    fn complexification_keeps_invariants(a in arb_form(FieldTag::R)) {
        let c = a.complexify();
        prop_assert!(signature_function(&a).unwrap().agrees_with(&signature_function(&c).unwrap()).unwrap());
    }

    #[test]
    fn metabolic_three_ways(a in arb_form(FieldTag::C), b in arb_form(FieldTag::C)) {
        for s in [a.clone(), a.direct_sum(&a.negate()).unwrap(), a.direct_sum(&b).unwrap()] {
            let jumps_vanish = samples().iter().all(|p| signature_jump(&s, p) == 0);
            let avg_vanishes = samples().iter().all(|p| averaged_signature(&s, p).unwrap() == 0);
            prop_assert_eq!(is_metabolic(&s), jumps_vanish);
            prop_assert_eq!(is_metabolic(&s), avg_vanishes);
        }
        prop_assert!(is_witt_equivalent(&a, &witt_normal_form(&witt_class(&a)).unwrap()));
    }

    #[test]
    fn reduction_keeps_averaged_signature(n in 2u32..6, pos in prop::bool::ANY, k in 0usize..3) {
        let xi = [cayley(&qr(1, 2)), CirclePoint::i(), omega()][k].clone();
        let eps = if pos { 1 } else { -1 };
        let s = form(FieldTag::R, &[(n, eps, xi.clone()), (1, 1, cayley(&qr(-1, 5)).conj())]);
        let r = basic_poly(&xi, FieldTag::R).unwrap();
        let m = n / 2;
        let pos = s.summands().iter().position(|b| b.n() == n).unwrap();
        let mut v = vec![LaurentPoly::zero(); 2];
        v[pos] = r.pow(n - m);
        let l = vec![v];
        let red = sublagrangian_reduce(&s, &l, &s3()).unwrap();
        prop_assert!(is_witt_equivalent(&s, &red));
        for p in samples() {
            prop_assert_eq!(averaged_signature(&s, &p).unwrap(), averaged_signature(&red, &p).unwrap());
        }
    }
}
