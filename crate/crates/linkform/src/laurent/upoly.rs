use crate::field::{qi, Scalar};

/// Dense univariate polynomial, coefficients in ascending order, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly<T> {
    c: Vec<T>,
}

impl<T: Scalar> UPoly<T> {
    pub fn new(mut c: Vec<T>) -> Self {
        while c.last().is_some_and(|x| x.is_nil()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(a: T) -> Self {
        UPoly::new(vec![a])
    }

    pub fn one() -> Self {
        UPoly::constant(T::unity())
    }

    /// The monomial x.
    pub fn x() -> Self {
        UPoly::new(vec![T::nil(), T::unity()])
    }

    /// x - a.
    pub fn linear_root(a: &T) -> Self {
        UPoly::new(vec![a.negate(), T::unity()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.c
    }

    pub fn coeff(&self, k: usize) -> T {
        self.c.get(k).cloned().unwrap_or_else(T::nil)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&T> {
        self.c.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::nil();
        for a in self.c.iter().rev() {
            acc = acc.times(x).plus(a);
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|k| self.coeff(k).plus(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|k| self.coeff(k).minus(&o.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|a| a.negate()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![T::nil(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_nil() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].plus(&a.times(b));
            }
        }
        UPoly::new(c)
    }

    pub fn scale(&self, a: &T) -> Self {
        UPoly::new(self.c.iter().map(|x| x.times(a)).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = UPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![T::nil(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    /// Euclidean division: self = q*d + r with deg r < deg d.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.c[dd].recip();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![T::nil(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_nil() {
                continue;
            }
            let f = r[k].times(&inv);
            for j in 0..=dd {
                r[k - dd + j] = r[k - dd + j].minus(&f.times(&d.c[j]));
            }
            q[k - dd] = f;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient, or `None` when d does not divide self.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => UPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*o = g, g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(k, a)| a.times(&T::from_q(qi(k as i64)))).collect())
    }

    /// Yun's squarefree decomposition: returns (k, g_k) with self = c * prod g_k^k,
    /// each g_k monic, squarefree and pairwise coprime; only nonconstant g_k listed.
    pub fn squarefree_decomposition(&self) -> Vec<(u32, Self)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_exact(&a0).unwrap().monic();
        let mut c = d.div_exact(&a0).unwrap().scale(&self.div_exact(&a0).unwrap().lead().unwrap().recip());
        let mut dd = c.sub(&b.derivative());
        let mut k = 1;
        loop {
            let a = b.gcd(&dd);
            if a.degree().unwrap_or(0) > 0 {
                out.push((k, a.clone()));
            }
            b = b.div_exact(&a).unwrap();
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = dd.div_exact(&a).unwrap();
            dd = c.sub(&b.derivative());
            k += 1;
        }
        out
    }

    /// Squarefree part (monic).
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).unwrap().monic()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> UPoly<U> {
        UPoly::new(self.c.iter().map(f).collect())
    }
}
