use super::{Frac, LaurentPoly};
use crate::field::Elem;

/// A truncated Laurent series sum c_k u^(low + k) in the local parameter u = t - xi,
/// known modulo u^prec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    low: i64,
    c: Vec<Elem>,
    prec: i64,
}

impl Series {
    pub fn zero(prec: i64) -> Series {
        Series { low: prec, c: Vec::new(), prec }
    }

    pub fn constant(a: Elem, prec: i64) -> Series {
        Series::new(0, vec![a], prec)
    }

    pub fn new(low: i64, c: Vec<Elem>, prec: i64) -> Series {
        let mut s = Series { low, c, prec };
        s.tidy();
        s
    }

    /// u^k with the given precision.
    pub fn mono(k: i64, prec: i64) -> Series {
        Series::new(k, vec![Elem::int(1)], prec)
    }

    fn tidy(&mut self) {
        let keep = (self.prec - self.low).max(0) as usize;
        self.c.truncate(keep);
        let lead = self.c.iter().position(|x| !x.is_zero());
        match lead {
            None => {
                self.c.clear();
                self.low = self.prec;
            }
            Some(k) => {
                self.c.drain(..k);
                self.low += k as i64;
                while self.c.last().is_some_and(|x| x.is_zero()) {
                    self.c.pop();
                }
            }
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Certified valuation, or `None` when the series vanishes to its precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.low)
        }
    }

    pub fn coeff(&self, k: i64) -> Elem {
        if k < self.low || k >= self.low + self.c.len() as i64 {
            Elem::int(0)
        } else {
            self.c[(k - self.low) as usize].clone()
        }
    }

    pub fn lead(&self) -> Option<Elem> {
        self.c.first().cloned()
    }

    pub fn with_prec(&self, prec: i64) -> Series {
        Series::new(self.low, self.c.clone(), prec.min(self.prec))
    }

    pub fn add(&self, o: &Series) -> Series {
        let prec = self.prec.min(o.prec);
        let low = self.low.min(o.low).min(prec);
        let n = (prec - low).max(0) as usize;
        let c = (0..n).map(|k| &self.coeff(low + k as i64) + &o.coeff(low + k as i64)).collect();
        Series::new(low, c, prec)
    }

    pub fn neg(&self) -> Series {
        Series { low: self.low, c: self.c.iter().map(|a| -a).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Series) -> Series {
        self.add(&o.neg())
    }

    pub fn scale(&self, a: &Elem) -> Series {
        Series::new(self.low, self.c.iter().map(|x| x * a).collect(), self.prec)
    }

    pub fn mul(&self, o: &Series) -> Series {
        // Exact zero factors keep the other's precision shifted by their own.
        let prec = (self.low + o.prec).min(o.low + self.prec);
        if self.c.is_empty() || o.c.is_empty() {
            return Series::zero(prec);
        }
        let low = self.low + o.low;
        let n = (prec - low).max(0) as usize;
        let mut c = vec![Elem::int(0); n];
        for (i, a) in self.c.iter().enumerate() {
            if i >= n {
                break;
            }
            for (j, b) in o.c.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Series::new(low, c, prec)
    }

    /// Multiplication by u^k.
    pub fn shift(&self, k: i64) -> Series {
        Series { low: self.low + k, c: self.c.clone(), prec: self.prec + k }
    }

    /// Inverse of a series with certified valuation v; known modulo u^(prec - 2v).
    pub fn inv(&self) -> Option<Series> {
        let v = self.valuation()?;
        let unit = &self.c;
        let n = (self.prec - v) as usize;
        let a0 = unit[0].inv();
        let mut out = vec![Elem::int(0); n];
        for k in 0..n {
            let mut acc = if k == 0 { Elem::int(1) } else { Elem::int(0) };
            for j in 1..=k.min(unit.len() - 1) {
                acc = &acc - &(&unit[j] * &out[k - j]);
            }
            out[k] = &acc * &a0;
        }
        Some(Series::new(-v, out, self.prec - 2 * v))
    }

    /// Terms with negative exponents: the class of the series in F((u))/F[[u]].
    pub fn principal(&self) -> Series {
        let top = 0.min(self.prec);
        Series::new(self.low, self.c.clone(), top)
    }

    /// Evaluation of a power series (low >= 0) at a series of positive valuation.
    fn compose(&self, phi: &Series) -> Series {
        assert!(self.low >= 0, "composition needs a power series");
        let prec = self.prec;
        let mut acc = Series::zero(prec);
        let mut pw = Series::constant(Elem::int(1), prec);
        for k in 0..prec {
            if k >= self.low {
                let a = self.coeff(k);
                if !a.is_zero() {
                    acc = acc.add(&pw.scale(&a));
                }
            }
            pw = pw.mul(phi).with_prec(prec);
        }
        acc
    }

    /// The involution at xi: coefficients conjugated and u replaced by the local
    /// expansion of t^-1 - conj xi = -conj(xi)^2 u / (1 + conj(xi) u).
    pub fn involve(&self, xi: &Elem) -> Series {
        if self.is_zero() && self.low >= 0 {
            return Series::zero(self.prec);
        }
        let conj = Series { low: self.low, c: self.c.iter().map(Elem::conj).collect(), prec: self.prec };
        if self.low >= 0 {
            return conj.compose(&phi(xi, self.prec));
        }
        // Split off u^low: (u^#)^low with u^# = phi(u), phi = -conj(xi)^2 u w(u).
        let k = -self.low;
        let body = conj.shift(k);
        let width = self.prec + k;
        let image = body.compose(&phi(xi, width));
        let p = phi(xi, width + k + 1);
        let pinv = p.inv().unwrap();
        let mut scale = Series::constant(Elem::int(1), width + k);
        for _ in 0..k {
            scale = scale.mul(&pinv);
        }
        image.mul(&scale)
    }

    /// Taylor expansion of a Laurent polynomial at xi to precision prec.
    pub fn expand(p: &LaurentPoly, xi: &Elem, prec: i64) -> Series {
        if p.is_zero() {
            return Series::zero(prec);
        }
        let tser = Series::new(0, vec![xi.clone(), Elem::int(1)], prec);
        let mut body = Series::zero(prec);
        for a in p.body().coeffs().iter().rev() {
            body = body.mul(&tser).add(&Series::constant(a.clone(), prec));
        }
        let low = p.low();
        let base = if low >= 0 { tser } else { tser.inv().unwrap() };
        let mut out = body;
        for _ in 0..low.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Principal part at xi of a class in F(t)/Lambda whose denominator is a power
    /// of t - xi (times a unit at xi).
    pub fn principal_of(f: &Frac, xi: &Elem) -> Series {
        if f.is_zero() {
            return Series::zero(0);
        }
        let den = f.den();
        let m = den.mult_at(xi) as i64;
        let d = Series::expand(&den, xi, 2 * m + 1);
        let n = Series::expand(&f.num(), xi, m + 1);
        n.mul(&d.inv().unwrap()).principal()
    }

    /// The polynomial sum c_k (t - xi)^k for a power series part (low >= 0).
    pub fn to_poly(&self, xi: &Elem) -> LaurentPoly {
        let lin = LaurentPoly::linear(xi);
        let mut acc = LaurentPoly::zero();
        for (k, a) in self.c.iter().enumerate().rev() {
            acc = &(&acc * &lin) + &LaurentPoly::constant(a.clone());
            let _ = k;
        }
        &acc * &lin.pow(self.low.max(0) as u32)
    }
}

fn phi(xi: &Elem, prec: i64) -> Series {
    // -conj(xi)^2 u / (1 + conj(xi) u)
    let xb = xi.conj();
    let den = Series::new(0, vec![Elem::int(1), xb.clone()], prec);
    let num = Series::new(1, vec![-(&xb * &xb)], prec + 1);
    num.mul(&den.inv().unwrap()).with_prec(prec)
}
