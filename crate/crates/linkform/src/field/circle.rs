use super::{q_to_f64, qi, qr, Elem, Real, Q};
use crate::error::{LinkError, Result};
use crate::laurent::{sturm_count, UPoly};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A point on the unit circle, exactly identified or isolated by an interval of
/// the Cayley parameter s with omega = (1 + i s)/(1 - i s).
#[derive(Clone, Debug)]
pub enum CirclePoint {
    Exact { x: Real, y: Real },
    RootOfUnity { k: u32, n: u32 },
    Isolated(Isolated),
}

/// A real root of a squarefree polynomial in s, alone in the open interval (lo, hi).
/// The interval never contains 0, so the half-circle of the point is known.
#[derive(Clone, Debug)]
pub struct Isolated {
    pub poly: UPoly<Real>,
    pub lo: Q,
    pub hi: Q,
}

impl Isolated {
    fn sign_at(&self, x: &Q) -> i32 {
        self.poly.eval(&Real::rational(x.clone())).sign()
    }

    /// Halves the interval. Returns the root if it turns out to be rational.
    pub fn refine(&mut self) -> Option<Q> {
        let mid = (&self.lo + &self.hi) / qi(2);
        let sm = self.sign_at(&mid);
        if sm == 0 {
            return Some(mid);
        }
        if self.sign_at(&self.lo) != sm {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
        None
    }

    fn width(&self) -> Q {
        &self.hi - &self.lo
    }
}

/// omega = (1 + i s)/(1 - i s).
pub fn cayley(s: &Q) -> CirclePoint {
    CirclePoint::from_s(&Real::rational(s.clone()))
}

const TABLE_LIMIT: usize = 4000;

/// (cos, sin) of 2*pi*m/12 with m in 0..12.
fn twelfth(m: u32) -> (Real, Real) {
    let h = Real::rational(qr(1, 2));
    let r = Real::new(Q::zero(), qr(1, 2), 3);
    let z = Real::int(0);
    let o = Real::int(1);
    let base = [(o.clone(), z.clone()), (r.clone(), h.clone()), (h.clone(), r.clone()), (z, o)];
    quarter_turn(&base, m, 3)
}

/// (cos, sin) of 2*pi*m/8 with m in 0..8.
fn eighth(m: u32) -> (Real, Real) {
    let r = Real::new(Q::zero(), qr(1, 2), 2);
    let base = [(Real::int(1), Real::int(0)), (r.clone(), r), (Real::int(0), Real::int(1))];
    quarter_turn(&base, m, (base.len() - 1) as u32)
}

fn quarter_turn(base: &[(Real, Real)], m: u32, per_quarter: u32) -> (Real, Real) {
    let q = m / per_quarter;
    let (c, s) = base[(m % per_quarter) as usize].clone();
    match q % 4 {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

fn reduce_root(k: u32, n: u32) -> (u32, u32) {
    let g = k.gcd(&n).max(1);
    let (k, n) = (k / g, n / g);
    if n == 1 {
        (0, 1)
    } else {
        (k, n)
    }
}

impl CirclePoint {
    pub fn one() -> CirclePoint {
        CirclePoint::Exact { x: Real::int(1), y: Real::int(0) }
    }

    pub fn minus_one() -> CirclePoint {
        CirclePoint::Exact { x: Real::int(-1), y: Real::int(0) }
    }

    pub fn i() -> CirclePoint {
        CirclePoint::RootOfUnity { k: 1, n: 4 }
    }

    /// exp(2 pi i k / n); only orders with coordinates in Q(i, sqrt 2) or Q(i, sqrt 3).
    pub fn root_of_unity(k: u32, n: u32) -> Result<CirclePoint> {
        if n == 0 || (12 % n != 0 && 8 % n != 0) {
            return Err(LinkError::Field(format!("root of unity of order {n} is not supported")));
        }
        let (x, y) = Self::unity_coords(k % n, n);
        Ok(CirclePoint::from_xy(x, y))
    }

    fn unity_coords(k: u32, n: u32) -> (Real, Real) {
        if 12 % n == 0 {
            twelfth(k * (12 / n))
        } else {
            eighth(k * (8 / n))
        }
    }

    /// Canonical constructor from exact coordinates with x^2 + y^2 = 1. Roots of
    /// unity of order >= 3 become `RootOfUnity`; the points +-1 stay `Exact`.
    pub fn from_xy(x: Real, y: Real) -> CirclePoint {
        assert!(&(&x * &x) + &(&y * &y) == Real::int(1), "point not on the unit circle");
        let ext = x.ext().max(y.ext());
        if !y.is_zero() {
            if ext == 0 || ext == 3 {
                for m in 0..12 {
                    let (c, s) = twelfth(m);
                    if c == x && s == y {
                        let (k, n) = reduce_root(m, 12);
                        return CirclePoint::RootOfUnity { k, n };
                    }
                }
            }
            if ext == 0 || ext == 2 {
                for m in 0..8 {
                    let (c, s) = eighth(m);
                    if c == x && s == y {
                        let (k, n) = reduce_root(m, 8);
                        return CirclePoint::RootOfUnity { k, n };
                    }
                }
            }
        }
        CirclePoint::Exact { x, y }
    }

    pub fn from_elem(e: &Elem) -> Result<CirclePoint> {
        if e.norm2() != Real::int(1) {
            return Err(LinkError::Precondition(format!("{} is not on the unit circle", e.to_text())));
        }
        Ok(CirclePoint::from_xy(e.re.clone(), e.im.clone()))
    }

    /// Cayley image of an exact real parameter s.
    pub fn from_s(s: &Real) -> CirclePoint {
        let s2 = s * s;
        let den = (&Real::int(1) + &s2).inv();
        let x = &(&Real::int(1) - &s2) * &den;
        let y = &(&Real::int(2) * s) * &den;
        CirclePoint::from_xy(x, y)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, CirclePoint::Isolated(_))
    }

    /// Exact coordinates, or `None` for isolated points.
    pub fn xy(&self) -> Option<(Real, Real)> {
        match self {
            CirclePoint::Exact { x, y } => Some((x.clone(), y.clone())),
            CirclePoint::RootOfUnity { k, n } => Some(Self::unity_coords(*k, *n)),
            CirclePoint::Isolated(_) => None,
        }
    }

    pub fn elem(&self) -> Option<Elem> {
        self.xy().map(|(x, y)| Elem::new(x, y))
    }

    /// Exact field element; error for isolated points.
    pub fn exact_elem(&self) -> Result<Elem> {
        self.elem().ok_or_else(|| LinkError::InexactRoot(self.to_string()))
    }

    pub fn is_plus_minus_one(&self) -> bool {
        match self.xy() {
            Some((_, y)) => y.is_zero(),
            None => false,
        }
    }

    /// Sign of the imaginary part (exact, also for isolated points).
    pub fn im_sign(&self) -> i32 {
        match self {
            CirclePoint::Isolated(iso) => {
                if iso.lo.is_negative() {
                    -1
                } else {
                    1
                }
            }
            p => p.xy().unwrap().1.sign(),
        }
    }

    pub fn conj(&self) -> CirclePoint {
        match self {
            CirclePoint::Exact { x, y } => CirclePoint::Exact { x: x.clone(), y: -y },
            CirclePoint::RootOfUnity { k, n } => CirclePoint::RootOfUnity { k: (n - k) % n, n: *n },
            CirclePoint::Isolated(iso) => {
                let c = iso
                    .poly
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(j, a)| if j % 2 == 1 { -a } else { a.clone() })
                    .collect();
                CirclePoint::Isolated(Isolated { poly: UPoly::new(c), lo: -&iso.hi, hi: -&iso.lo })
            }
        }
    }

    /// Cayley parameter s = tan(arg/2); `None` at -1.
    pub fn s_value(&self) -> Option<Real> {
        let (x, y) = self.xy()?;
        let den = &Real::int(1) + &x;
        if den.is_zero() {
            None
        } else {
            Some(&y / &den)
        }
    }

    /// 0 for arguments in [0, pi), 1 at -1, 2 for (pi, 2 pi).
    fn half(&self) -> u8 {
        match self {
            CirclePoint::Isolated(iso) => {
                if iso.lo.is_negative() {
                    2
                } else {
                    0
                }
            }
            p => match p.s_value() {
                None => 1,
                Some(s) if s.sign() < 0 => 2,
                Some(_) => 0,
            },
        }
    }

    /// Total order by argument in [0, 2 pi).
    pub fn arg_cmp(&self, other: &CirclePoint) -> Result<Ordering> {
        let (ha, hb) = (self.half(), other.half());
        if ha != hb {
            return Ok(ha.cmp(&hb));
        }
        if ha == 1 {
            return Ok(Ordering::Equal);
        }
        match (self, other) {
            (CirclePoint::Isolated(a), CirclePoint::Isolated(b)) => cmp_isolated(a, b),
            (CirclePoint::Isolated(a), e) => cmp_iso_exact(a, &e.s_value().unwrap()),
            (e, CirclePoint::Isolated(b)) => Ok(cmp_iso_exact(b, &e.s_value().unwrap())?.reverse()),
            (a, b) => Ok(a.s_value().unwrap().cmp(&b.s_value().unwrap())),
        }
    }

    /// Approximate argument in [0, 2 pi), for output annotations only.
    pub fn approx_arg(&self) -> f64 {
        let s = match self {
            CirclePoint::Isolated(iso) => (q_to_f64(&iso.lo) + q_to_f64(&iso.hi)) / 2.0,
            p => match p.s_value() {
                None => return std::f64::consts::PI,
                Some(s) => s.to_f64(),
            },
        };
        let a = 2.0 * s.atan();
        if a < 0.0 {
            a + 2.0 * std::f64::consts::PI
        } else {
            a
        }
    }

    /// Short text anchor used in CSV output.
    pub fn anchor(&self) -> String {
        match self {
            CirclePoint::Exact { x, y } => format!("xi({};{})", x.to_text(), y.to_text()),
            CirclePoint::RootOfUnity { k, n } => format!("root_of_unity({k};{n})"),
            CirclePoint::Isolated(iso) => {
                let c: Vec<String> = iso.poly.coeffs().iter().map(|a| a.to_text()).collect();
                format!("isolated([{}];{};{})", c.join(" "), super::fmt_q(&iso.lo), super::fmt_q(&iso.hi))
            }
        }
    }
}

fn cmp_iso_exact(a: &Isolated, s: &Real) -> Result<Ordering> {
    let mut a = a.clone();
    for _ in 0..TABLE_LIMIT {
        if *s <= Real::rational(a.lo.clone()) {
            return Ok(Ordering::Greater);
        }
        if *s >= Real::rational(a.hi.clone()) {
            return Ok(Ordering::Less);
        }
        if a.poly.eval(s).is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(r) = a.refine() {
            return Ok(Real::rational(r).cmp(s));
        }
    }
    Err(LinkError::Refinement("isolated point not separated from exact point".into()))
}

fn cmp_isolated(a: &Isolated, b: &Isolated) -> Result<Ordering> {
    let (mut a, mut b) = (a.clone(), b.clone());
    let lo = if a.lo > b.lo { a.lo.clone() } else { b.lo.clone() };
    let hi = if a.hi < b.hi { a.hi.clone() } else { b.hi.clone() };
    if lo < hi {
        let g = a.poly.gcd(&b.poly);
        if g.degree().unwrap_or(0) > 0 {
            let inside = |x: &Q| !g.eval(&Real::rational(x.clone())).is_zero();
            if inside(&lo) && inside(&hi) && sturm_count(&g, &lo, &hi) > 0 {
                return Ok(Ordering::Equal);
            }
        }
    }
    for _ in 0..TABLE_LIMIT {
        if a.hi <= b.lo {
            return Ok(Ordering::Less);
        }
        if b.hi <= a.lo {
            return Ok(Ordering::Greater);
        }
        let ra = if a.width() >= b.width() { a.refine() } else { None };
        let rb = if ra.is_none() && b.width() > a.width() { b.refine() } else { None };
        if let Some(r) = ra {
            return cmp_iso_exact(&b, &Real::rational(r)).map(Ordering::reverse);
        }
        if let Some(r) = rb {
            return cmp_iso_exact(&a, &Real::rational(r));
        }
        if a.width() == b.width() {
            if let Some(r) = b.refine() {
                return cmp_iso_exact(&a, &Real::rational(r));
            }
        }
    }
    Err(LinkError::Refinement("two isolated points could not be separated".into()))
}

impl PartialEq for CirclePoint {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for CirclePoint {}

impl PartialOrd for CirclePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CirclePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arg_cmp(other).expect("circle points must be comparable")
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.anchor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cayley_examples() {
        assert_eq!(cayley(&qi(0)), CirclePoint::one());
        assert_eq!(cayley(&qi(1)), CirclePoint::i());
        let w = cayley(&qr(1, 2));
        assert_eq!(w.elem().unwrap(), Elem::gauss(qr(3, 5), qr(4, 5)));
        assert_eq!(w.s_value().unwrap(), Real::rational(qr(1, 2)));
    }

    #[test]
    fn roots_of_unity_are_canonical() {
        let w = CirclePoint::from_xy(Real::rational(qr(1, 2)), Real::new(Q::zero(), qr(1, 2), 3));
        assert!(matches!(w, CirclePoint::RootOfUnity { k: 1, n: 6 }));
        assert!(matches!(CirclePoint::root_of_unity(1, 2).unwrap(), CirclePoint::Exact { .. }));
        assert_eq!(CirclePoint::root_of_unity(1, 2).unwrap(), CirclePoint::minus_one());
        assert_eq!(CirclePoint::root_of_unity(3, 12).unwrap(), CirclePoint::i());
        let e8 = CirclePoint::root_of_unity(1, 8).unwrap();
        let (x, y) = e8.xy().unwrap();
        assert_eq!(x, y);
        assert!(CirclePoint::root_of_unity(1, 5).is_err());
    }

    #[test]
    fn ordering_examples() {
        assert_eq!(CirclePoint::one().arg_cmp(&CirclePoint::i()).unwrap(), Ordering::Less);
        let w = cayley(&qr(1, 2));
        assert_eq!(w.arg_cmp(&w).unwrap(), Ordering::Equal);
        assert_eq!(cayley(&qi(3)).arg_cmp(&w).unwrap(), Ordering::Greater);
        assert!(CirclePoint::i() < CirclePoint::minus_one());
        assert!(CirclePoint::minus_one() < CirclePoint::i().conj());
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(CirclePoint::one().conj(), CirclePoint::one());
        assert_eq!(CirclePoint::i().conj(), cayley(&qi(-1)));
        assert!(matches!(
            CirclePoint::RootOfUnity { k: 1, n: 6 }.conj(),
            CirclePoint::RootOfUnity { k: 5, n: 6 }
        ));
    }

    fn rat() -> impl Strategy<Value = Q> {
        (-50i64..50, 1i64..20).prop_map(|(a, b)| qr(a, b))
    }

    proptest! {
        #[test]
        fn cayley_points_have_unit_modulus(s in rat()) {
            let e = cayley(&s).elem().unwrap();
            prop_assert_eq!(&e * &e.conj(), Elem::int(1));
        }

        #[test]
        fn arg_order_is_total_and_antisymmetric(a in rat(), b in rat(), c in rat()) {
            let (pa, pb, pc) = (cayley(&a), cayley(&b), cayley(&c));
            prop_assert_eq!(pa.arg_cmp(&pb).unwrap(), pb.arg_cmp(&pa).unwrap().reverse());
            if pa <= pb && pb <= pc {
                prop_assert!(pa <= pc);
            }
            prop_assert_eq!(pa == pb, a == b);
        }

        #[test]
        fn conj_reverses_order_off_the_real_points(a in rat(), b in rat()) {
            prop_assume!(!a.is_zero() && !b.is_zero() && a != b);
            let (pa, pb) = (cayley(&a), cayley(&b));
            if a.is_positive() == b.is_positive() {
                prop_assert_eq!(pa.cmp(&pb), pb.conj().cmp(&pa.conj()));
            }
        }
    }
}
