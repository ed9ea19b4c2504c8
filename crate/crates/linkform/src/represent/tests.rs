use super::*;
use crate::field::{cayley, qr};
use crate::laurent::offcircle_basic;
use crate::matrixrep::jumps_from_matrix;
use proptest::prelude::*;

fn ctx() -> Session {
    Session::default()
}

fn form(field: FieldTag, s: Vec<BasicForm>) -> StructuredForm {
    StructuredForm::new(field, s).unwrap()
}

fn points() -> Vec<CirclePoint> {
    vec![
        CirclePoint::one(),
        CirclePoint::minus_one(),
        CirclePoint::i(),
        CirclePoint::i().conj(),
        cayley(&qr(1, 2)),
        cayley(&qr(-1, 3)),
        cayley(&qr(2, 1)),
    ]
}

#[test]
fn decision_examples() {
    let xi = cayley(&qr(1, 2));
    let v = is_representable(&form(FieldTag::C, vec![BasicForm::e(3, 1, xi.clone())]));
    assert!(!v.representable);
    assert_eq!(v.total_jump.abs(), 1);
    assert_eq!(v.certificate, Certificate::TotalJumpNonzero);
    assert!(matches!(
        build_representative(&form(FieldTag::C, vec![BasicForm::e(3, 1, xi.clone())]), &ctx()),
        Err(LinkError::NotRepresentable(_))
    ));

    let pair = form(FieldTag::C, vec![BasicForm::e(1, 1, xi.clone()), BasicForm::e(1, -1, xi.clone())]);
    let v = is_representable(&pair);
    assert!(v.representable);
    assert_eq!(v.total_jump, 0);

    let real = form(FieldTag::R, vec![BasicForm::e(1, 1, CirclePoint::i()), BasicForm::e(2, -1, CirclePoint::one())]);
    let v = is_representable(&real);
    assert!(v.representable);
    assert_eq!(v.certificate, Certificate::RealAlways);
}

#[test]
fn pair_coefficients() {
    let (a, b, c, d) = choose_pair_coeffs(&CirclePoint::i(), false).unwrap();
    assert_eq!((a, b), (Elem::int(1), Elem::int(1)));
    assert_eq!(c, Elem::q(qr(1, 2)));
    assert_eq!(d, &Elem::i() * &Elem::int(-2));
    for xi in points() {
        for nonreal in [false, true] {
            let co = choose_pair_coeffs(&xi, nonreal).unwrap();
            let (a, b, c, d) = &co;
            let x = xi.exact_elem().unwrap();
            assert_eq!(a * b, -(d * &(c * &x).conj()));
            assert!(!(a * b).is_zero());
            assert_eq!(b.is_real(), !nonreal);
            // Direct 2x2 determinant against the closed form.
            let blk = pair_block(&x, 0, &co);
            let want = LaurentPoly::mono(pair_block_unit(&x, &co), -1);
            assert_eq!(blk.det(), want);
            assert!(!want.is_zero());
            let herm = blk.map(|p| &LaurentPoly::linear(&x) * p);
            assert!(herm.is_hermitian());
            let weighted = pair_block(&x, 2, &co);
            assert!(weighted.map(|p| &LaurentPoly::linear(&x) * p).is_hermitian());
            assert!(weighted.det().assoc(&norm_square_poly(&x).pow(2)));
        }
    }
}

#[test]
fn pair_polynomial_examples() {
    let xi = cayley(&qr(1, 2));
    let x = xi.exact_elem().unwrap();
    let p = pair_polynomial(&xi, &xi).unwrap();
    let want = LaurentPoly::from_terms(&[(1, x.conj()), (0, Elem::int(-2)), (-1, x.clone())]);
    assert_eq!(p, want);

    let p = pair_polynomial(&CirclePoint::one(), &CirclePoint::minus_one()).unwrap();
    assert!(p.is_symmetric());
    assert!(p.eval(&Elem::int(1)).is_zero() && p.eval(&Elem::int(-1)).is_zero());

    let pts = points();
    for u in &pts {
        for v in &pts {
            let p = pair_polynomial(u, v).unwrap();
            assert!(p.is_symmetric());
            let roots: Vec<CirclePoint> = p.circle_roots(&ctx()).into_iter().map(|r| r.point).collect();
            let mut want = vec![u.clone(), v.clone()];
            want.sort();
            want.dedup();
            assert_eq!(roots.len(), want.len());
            for r in &roots {
                assert!(want.contains(r), "{r} is not a prescribed root");
            }
        }
    }
}

#[test]
fn construction_examples() {
    let xi = cayley(&qr(1, 2));
    let x = xi.exact_elem().unwrap();
    let off = offcircle_basic(&Elem::int(2), FieldTag::C).unwrap();
    let f = form(FieldTag::C, vec![BasicForm::f(2, off.clone())]);
    let a = build_representative(&f, &ctx()).unwrap();
    assert_eq!(a.size(), 1);
    assert!(a.matrix().get(0, 0).assoc(&off.pow(2)));

    let h = form(FieldTag::R, vec![BasicForm::f(1, LaurentPoly::from_ints(0, &[-1, 1]))]);
    let a = build_representative(&h, &ctx()).unwrap();
    let lin = LaurentPoly::linear(&Elem::int(1));
    let hm = LMatrix::from_rows(vec![vec![LaurentPoly::zero(), lin.involve()], vec![lin.clone(), LaurentPoly::zero()]]);
    assert!(*a.matrix() == hm || *a.matrix() == hm.map(|p| -p));

    let pair = form(FieldTag::C, vec![BasicForm::e(1, 1, xi.clone()), BasicForm::e(1, -1, xi.clone())]);
    let a = build_representative(&pair, &ctx()).unwrap();
    let co = choose_pair_coeffs(&xi, false).unwrap();
    let b = pair_block(&x, 0, &co).map(|p| &LaurentPoly::linear(&x) * p);
    assert!(*a.matrix() == b || *a.matrix() == b.map(|p| -p));

    let mixed = form(FieldTag::C, vec![BasicForm::e(3, 1, xi.clone()), BasicForm::e(1, -1, xi.clone())]);
    let a = build_representative(&mixed, &ctx()).unwrap();
    assert_eq!(a.size(), 2);
    let apart = form(FieldTag::C, vec![BasicForm::e(3, -1, xi.clone()), BasicForm::e(1, 1, CirclePoint::i())]);
    let a = build_representative(&apart, &ctx()).unwrap();
    assert_eq!(a.size(), 1);

    let v = represent(&pair, &ctx()).unwrap();
    assert!(v.matrix.is_some());
    assert!(represent(&form(FieldTag::C, vec![BasicForm::e(1, 1, xi)]), &ctx()).unwrap().matrix.is_none());
    assert_eq!(build_representative(&StructuredForm::empty(FieldTag::C), &ctx()).unwrap().size(), 0);
}

fn summand(field: FieldTag) -> impl Strategy<Value = BasicForm> {
    let pts = points();
    (0..pts.len(), 1u32..4, prop::bool::ANY, 0..4usize).prop_map(move |(k, n, pos, kind)| {
        let eps = if pos { 1 } else { -1 };
        let xi = pts[k].clone();
        match (field, kind) {
            (_, 3) => BasicForm::f(n.min(2), offcircle_basic(&Elem::int(k as i64 % 2 + 2), field).unwrap()),
            (FieldTag::R, _) if xi.is_plus_minus_one() && n % 2 == 1 => BasicForm::f(n, basic_poly(&xi, field).unwrap()),
            (FieldTag::R, _) if xi.im_sign() < 0 => BasicForm::e(n, eps, xi.conj()),
            _ => BasicForm::e(n, eps, xi),
        }
    })
}

fn balanced(field: FieldTag) -> impl Strategy<Value = StructuredForm> {
    prop::collection::vec(summand(field), 0..5).prop_map(move |mut s| {
        if field == FieldTag::C {
            let odd: i64 = s.iter().map(|b| match b {
                BasicForm::E { n, eps, .. } if n % 2 == 1 => *eps as i64,
                _ => 0,
            }).sum();
            for _ in 0..odd.abs() {
                s.push(BasicForm::e(1, -odd.signum() as i32, CirclePoint::i()));
            }
        }
        StructuredForm::new(field, s).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn complex_round_trip(s in balanced(FieldTag::C)) {
        check_round_trip(&s);
    }

    #[test]
    fn real_round_trip(s in balanced(FieldTag::R)) {
        check_round_trip(&s);
    }
}

fn check_round_trip(s: &StructuredForm) {
    let v = is_representable(s);
    assert!(v.representable);
    let a = build_representative(s, &ctx()).unwrap();
    assert_eq!(classify_matrix(&a, &ctx()).unwrap(), *s);
    let jumps: i64 = jumps_from_matrix(&a, &ctx()).unwrap().values().sum();
    assert_eq!(jumps, 0);
}

#[test]
fn unbalanced_forms_are_rejected() {
    for xi in points() {
        for n in [1u32, 3] {
            let s = form(FieldTag::C, vec![BasicForm::e(n, 1, xi.clone())]);
            let v = is_representable(&s);
            assert!(!v.representable);
            assert_ne!(v.total_jump, 0);
        }
    }
}
