use super::LaurentPoly;
use crate::field::Elem;
use std::fmt;

/// Dense matrix over the Laurent polynomial ring, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LMatrix {
    rows: usize,
    cols: usize,
    e: Vec<LaurentPoly>,
}

/// Smith form data: `u * a * v == s`, `v * vinv == 1`, s diagonal with
/// normalized invariant factors d_1 | d_2 | ... followed by zeros.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: LMatrix,
    pub u: LMatrix,
    pub v: LMatrix,
    pub vinv: LMatrix,
    pub rank: usize,
}

impl Smith {
    /// Diagonal entries of s (length min(rows, cols)).
    pub fn diagonal(&self) -> Vec<LaurentPoly> {
        (0..self.s.rows.min(self.s.cols)).map(|k| self.s.get(k, k).clone()).collect()
    }

    /// Invariant factors that are not units.
    pub fn torsion(&self) -> Vec<LaurentPoly> {
        self.diagonal().into_iter().filter(|d| !d.is_zero() && !d.is_unit()).collect()
    }
}

impl LMatrix {
    pub fn zeros(rows: usize, cols: usize) -> LMatrix {
        LMatrix { rows, cols, e: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> LMatrix {
        let mut m = LMatrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, LaurentPoly::one());
        }
        m
    }

    pub fn diag(d: &[LaurentPoly]) -> LMatrix {
        let mut m = LMatrix::zeros(d.len(), d.len());
        for (k, x) in d.iter().enumerate() {
            m.set(k, k, x.clone());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> LMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        LMatrix { rows: r, cols: c, e: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: LaurentPoly) {
        self.e[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<LaurentPoly> {
        self.e[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> LMatrix {
        let mut m = LMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// Entrywise involution followed by transposition.
    pub fn adjoint(&self) -> LMatrix {
        let mut m = LMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).involve());
            }
        }
        m
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    pub fn mul(&self, o: &LMatrix) -> LMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = LMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = LaurentPoly::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * o.get(k, j));
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, x: &[LaurentPoly]) -> Vec<LaurentPoly> {
        assert_eq!(x.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                let mut acc = LaurentPoly::zero();
                for (k, a) in x.iter().enumerate() {
                    if !a.is_zero() {
                        acc = &acc + &(a * self.get(k, j));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> LMatrix {
        LMatrix { rows: self.rows, cols: self.cols, e: self.e.iter().map(f).collect() }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &LMatrix) -> LMatrix {
        let mut m = LMatrix::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m.set(self.rows + i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    /// Rows of self followed by rows of o.
    pub fn stack(&self, o: &LMatrix) -> LMatrix {
        assert_eq!(self.cols, o.cols);
        let mut e = self.e.clone();
        e.extend(o.e.iter().cloned());
        LMatrix { rows: self.rows + o.rows, cols: self.cols, e }
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> LaurentPoly {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut a = self.clone();
        let mut sign = 1;
        let mut prev = LaurentPoly::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    None => return LaurentPoly::zero(),
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                }
            }
            let p = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&p * a.get(i, j)) - &(a.get(i, k) * a.get(k, j));
                    a.set(i, j, v.div_exact(&prev).expect("inexact fraction-free step"));
                }
                a.set(i, k, LaurentPoly::zero());
            }
            prev = p;
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.e.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.e.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i += q * row_j
    pub fn add_row(&mut self, i: usize, j: usize, q: &LaurentPoly) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(i, c) + &(q * self.get(j, c));
            self.set(i, c, v);
        }
    }

    /// col_i += q * col_j
    pub fn add_col(&mut self, i: usize, j: usize, q: &LaurentPoly) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, i) + &(self.get(r, j) * q);
            self.set(r, i, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, q: &LaurentPoly) {
        for c in 0..self.cols {
            let v = self.get(i, c) * q;
            self.set(i, c, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, q: &LaurentPoly) {
        for r in 0..self.rows {
            let v = self.get(r, j) * q;
            self.set(r, j, v);
        }
    }

    /// Normalized d_1, ..., d_n with Lambda^n / rowspace = (+) Lambda/d_i, for a
    /// square matrix with nonzero determinant. No divisibility order is imposed.
    pub fn diagonal_mod_det(&self) -> Vec<LaurentPoly> {
        assert!(self.is_square(), "diagonal_mod_det needs a square matrix");
        let det = self.det();
        assert!(!det.is_zero(), "diagonal_mod_det needs a nonzero determinant");
        self.diagonal_mod(&det)
    }

    /// Diagonal presentation of Lambda^n / (rowspace + m Lambda^n), where m divides
    /// the determinant and is coprime to the cofactor det/m.
    ///
    /// The lattice being split always contains m' Lambda^k for m' its own
    /// determinant, so entries are kept reduced modulo m'.
    pub fn diagonal_mod(&self, m: &LaurentPoly) -> Vec<LaurentPoly> {
        let n = self.rows;
        let mut modulus = m.normalized();
        let mut a = self.clone();
        let mut out = Vec::with_capacity(n);
        for t in 0..n {
            if modulus.is_unit() {
                out.extend((t..n).map(|_| LaurentPoly::one()));
                break;
            }
            a.reduce_block(t, &modulus);
            loop {
                let mut best: Option<(usize, usize, usize)> = None;
                for i in t..n {
                    for j in t..n {
                        let x = a.get(i, j);
                        if !x.is_zero() && best.is_none_or(|b| x.span() < b.2) {
                            best = Some((i, j, x.span()));
                        }
                    }
                }
                let Some((i, j, _)) = best else { break };
                a.swap_rows(t, i);
                a.swap_cols(t, j);
                let lead = a.get(t, t).body().lead().cloned().unwrap();
                a.scale_row(t, &LaurentPoly::constant(lead.inv()));
                let p = a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..n {
                    if a.get(i, t).is_zero() {
                        continue;
                    }
                    let (q, _) = a.get(i, t).div_rem(&p);
                    a.add_row(i, t, &-&q);
                    clean &= a.get(i, t).is_zero();
                }
                for j in t + 1..n {
                    if a.get(t, j).is_zero() {
                        continue;
                    }
                    let (q, _) = a.get(t, j).div_rem(&p);
                    a.add_col(j, t, &-&q);
                    clean &= a.get(t, j).is_zero();
                }
                a.reduce_block(t, &modulus);
                if clean {
                    break;
                }
            }
            let d = a.get(t, t).gcd(&modulus);
            modulus = modulus.div_exact(&d).expect("pivot gcd divides the modulus").normalized();
            out.push(d);
        }
        out
    }

    fn reduce_block(&mut self, t: usize, m: &LaurentPoly) {
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() && x.span() >= m.span() {
                    let r = x.div_rem(m).1;
                    self.set(i, j, r);
                }
            }
        }
    }

    /// Smith normal form with transforms, using the span as Euclidean size.
    pub fn smith(&self) -> Smith {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut u = LMatrix::identity(r);
        let mut v = LMatrix::identity(c);
        let mut vinv = LMatrix::identity(c);
        let mut rank = 0;
        for t in 0..r.min(c) {
            if !a.move_min_pivot(t, &mut u, &mut v, &mut vinv) {
                break;
            }
            loop {
                let mut clean = true;
                for i in t + 1..r {
                    if a.get(i, t).is_zero() {
                        continue;
                    }
                    let (q, rem) = a.get(i, t).div_rem(a.get(t, t));
                    let nq = -&q;
                    a.add_row(i, t, &nq);
                    u.add_row(i, t, &nq);
                    if !rem.is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..c {
                    if a.get(t, j).is_zero() {
                        continue;
                    }
                    let (q, rem) = a.get(t, j).div_rem(a.get(t, t));
                    let nq = -&q;
                    a.add_col(j, t, &nq);
                    v.add_col(j, t, &nq);
                    // inverse column op acts on rows of vinv: row_t -= (-q) row_j
                    vinv.add_row(t, j, &q);
                    if !rem.is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    // Divisibility of the remaining block by the pivot.
                    let bad = (t + 1..r)
                        .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                        .find(|&(i, j)| !a.get(t, t).divides(a.get(i, j)));
                    match bad {
                        None => break,
                        Some((i, _)) => {
                            let one = LaurentPoly::one();
                            a.add_row(t, i, &one);
                            u.add_row(t, i, &one);
                        }
                    }
                }
                a.move_min_pivot(t, &mut u, &mut v, &mut vinv);
            }
            // Normalize the pivot by a unit acting on the row.
            let p = a.get(t, t).clone();
            let n = p.normalized();
            let unit = n.div_exact(&p).expect("normalization is by a unit");
            a.scale_row(t, &unit);
            u.scale_row(t, &unit);
            rank += 1;
        }
        Smith { s: a, u, v, vinv, rank }
    }

    /// Moves a nonzero entry of least span in the block [t.., t..] to (t, t).
    fn move_min_pivot(&mut self, t: usize, u: &mut LMatrix, v: &mut LMatrix, vinv: &mut LMatrix) -> bool {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|b| x.span() < b.2) {
                    best = Some((i, j, x.span()));
                }
            }
        }
        let Some((i, j, _)) = best else { return false };
        self.swap_rows(t, i);
        u.swap_rows(t, i);
        self.swap_cols(t, j);
        v.swap_cols(t, j);
        vinv.swap_rows(t, j);
        true
    }

    /// A basis (as rows) of the left kernel {x : x * self = 0}.
    pub fn left_kernel(&self) -> LMatrix {
        let sm = self.smith();
        let rows: Vec<Vec<LaurentPoly>> = (sm.rank..self.rows).map(|i| sm.u.row(i)).collect();
        if rows.is_empty() {
            LMatrix::zeros(0, self.rows)
        } else {
            LMatrix::from_rows(rows)
        }
    }

    /// The coefficient extension in use.
    pub fn ext(&self) -> u32 {
        self.e.iter().map(LaurentPoly::ext).max().unwrap_or(0)
    }

    /// Entrywise evaluation at a nonzero field element.
    pub fn eval(&self, x: &Elem) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).eval(x)).collect()).collect()
    }
}

impl fmt::Display for LMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(LaurentPoly::to_text).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
