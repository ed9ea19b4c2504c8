use super::local::split_local;
use super::{invariant_chain, BasicForm, CyclicForm, StructuredForm};
use crate::error::{pre, LinkError, Result};
use crate::field::{hermitian_signature, CirclePoint, Elem, Session};
use crate::laurent::{basic_poly, positive_linear, FieldTag, Frac, LMatrix, LaurentPoly, Series};

/// A linking form on the module with generators x_i of orders d_i, i.e.
/// the direct sum of the Lambda/d_i, with gram[i][j] = lambda(x_i, x_j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    field: FieldTag,
    orders: Vec<LaurentPoly>,
    gram: Vec<Vec<Frac>>,
}

/// Value at xi of num/den, cancelling the common powers of t - xi.
pub(crate) fn value_at(num: &LaurentPoly, den: &LaurentPoly, xi: &Elem) -> Result<Elem> {
    let lin = LaurentPoly::linear(xi);
    let m = den.mult_at(xi);
    let mut a = num.clone();
    let mut b = den.clone();
    for _ in 0..m {
        b = b.div_exact(&lin).unwrap();
        a = match a.div_exact(&lin) {
            Some(q) => q,
            None if a.is_zero() => a,
            None => return Err(LinkError::Identity("evaluation at a pole".into())),
        };
    }
    Ok(&a.eval(xi) / &b.eval(xi))
}

/// ((t - xi)(t^-1 - conj xi))^k
fn norm_power(xi: &Elem, k: u32) -> LaurentPoly {
    crate::laurent::norm_square_poly(xi).pow(k)
}

/// (t - xi)^a (t^-1 - conj xi)^b
fn mixed_power(xi: &Elem, a: u32, b: u32) -> LaurentPoly {
    let lin = LaurentPoly::linear(xi);
    &lin.pow(a) * &lin.involve().pow(b)
}

impl GramForm {
    /// Checks shapes, Hermitian symmetry and that lambda(x_i, .) is killed by d_i.
    pub fn new(field: FieldTag, orders: Vec<LaurentPoly>, gram: Vec<Vec<Frac>>) -> Result<GramForm> {
        let k = orders.len();
        if gram.len() != k || gram.iter().any(|r| r.len() != k) {
            return pre("Gram matrix shape does not match the generators");
        }
        if orders.iter().any(LaurentPoly::is_zero) {
            return pre("generator of infinite order");
        }
        for i in 0..k {
            for j in 0..k {
                if gram[j][i] != gram[i][j].involve() {
                    return pre(format!("pairing is not Hermitian at ({i}, {j})"));
                }
                if !gram[i][j].mul_poly(&orders[i]).is_zero() {
                    return pre(format!("pairing at ({i}, {j}) is not killed by the order"));
                }
            }
        }
        let mut keep = Vec::new();
        for (i, d) in orders.iter().enumerate() {
            if !d.is_unit() {
                keep.push(i);
            }
        }
        Ok(GramForm {
            field,
            orders: keep.iter().map(|&i| orders[i].normalized()).collect(),
            gram: keep.iter().map(|&i| keep.iter().map(|&j| gram[i][j].clone()).collect()).collect(),
        })
    }

    pub fn from_cyclic(c: &CyclicForm) -> Result<GramForm> {
        GramForm::new(c.field, vec![c.f.clone()], vec![vec![Frac::new(&c.h, &c.f)]])
    }

    /// The standard generators of each basic summand.
    pub fn from_structured(s: &StructuredForm) -> Result<GramForm> {
        let field = s.field();
        let mut blocks: Vec<(Vec<LaurentPoly>, Vec<Vec<Frac>>)> = Vec::new();
        for b in s.summands() {
            blocks.push(basic_block(b, field)?);
        }
        let k: usize = blocks.iter().map(|b| b.0.len()).sum();
        let mut orders = Vec::with_capacity(k);
        let mut gram = vec![vec![Frac::zero(); k]; k];
        let mut at = 0;
        for (ord, g) in blocks {
            for i in 0..ord.len() {
                for j in 0..ord.len() {
                    gram[at + i][at + j] = g[i][j].clone();
                }
            }
            at += ord.len();
            orders.extend(ord);
        }
        GramForm::new(field, orders, gram)
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn orders(&self) -> &[LaurentPoly] {
        &self.orders
    }

    pub fn gram(&self) -> &[Vec<Frac>] {
        &self.gram
    }

    pub fn generators(&self) -> usize {
        self.orders.len()
    }

    /// Dimension of the module over the coefficient field.
    pub fn dimension(&self) -> usize {
        self.orders.iter().map(LaurentPoly::span).sum()
    }

    /// lambda(x, y) for coordinate vectors in the generators.
    pub fn pair(&self, x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<Frac> {
        let k = self.generators();
        if x.len() != k || y.len() != k {
            return pre(format!("coordinate vectors must have length {k}"));
        }
        let mut acc = Frac::zero();
        for i in 0..k {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..k {
                if y[j].is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.gram[i][j].mul_poly(&(&x[i] * &y[j].involve())));
            }
        }
        Ok(acc)
    }

    pub fn direct_sum(&self, o: &GramForm) -> Result<GramForm> {
        if self.field != o.field {
            return pre("direct sum of forms over different fields");
        }
        let (a, b) = (self.generators(), o.generators());
        let mut gram = vec![vec![Frac::zero(); a + b]; a + b];
        for i in 0..a {
            for j in 0..a {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                gram[a + i][a + j] = o.gram[i][j].clone();
            }
        }
        let mut orders = self.orders.clone();
        orders.extend(o.orders.iter().cloned());
        GramForm::new(self.field, orders, gram)
    }

    /// Numerators N_ij with lambda(x_i, x_j) = N_ij / d_j^#.
    fn numerators(&self) -> Result<LMatrix> {
        let k = self.generators();
        let mut n = LMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let p = &self.gram[i][j];
                if p.is_zero() {
                    continue;
                }
                let dj = self.orders[j].involve();
                let q = dj
                    .div_exact(&p.den())
                    .ok_or_else(|| LinkError::Precondition("pairing is not killed by the conjugate order".into()))?;
                n.set(i, j, &p.num() * &q);
            }
        }
        Ok(n)
    }

    /// Radical of the form as coordinate vectors (empty when non-degenerate).
    pub fn radical(&self) -> Result<Vec<Vec<LaurentPoly>>> {
        let k = self.generators();
        if k == 0 {
            return Ok(Vec::new());
        }
        let n = self.numerators()?;
        let dsharp: Vec<LaurentPoly> = self.orders.iter().map(LaurentPoly::involve).collect();
        let ker = n.stack(&LMatrix::diag(&dsharp)).left_kernel();
        let mut out = Vec::new();
        for row in ker.to_rows() {
            let a: Vec<LaurentPoly> = row[..k].iter().enumerate().map(|(i, x)| x.div_rem(&self.orders[i]).1).collect();
            if a.iter().any(|x| !x.is_zero()) {
                out.push(a);
            }
        }
        Ok(out)
    }

    pub fn check_nondegenerate(&self) -> Result<()> {
        let rad = self.radical()?;
        match rad.first() {
            None => Ok(()),
            Some(x) => {
                let txt: Vec<String> = x.iter().map(LaurentPoly::to_text).collect();
                Err(LinkError::Degenerate(format!("radical contains [{}]", txt.join(", "))))
            }
        }
    }

    /// Full classification into basic forms.
    pub fn classify(&self, session: &Session) -> Result<StructuredForm> {
        self.check_nondegenerate()?;
        if self.generators() == 0 {
            return Ok(StructuredForm::empty(self.field));
        }
        let lcm = invariant_chain(&self.orders).last().cloned().unwrap_or_else(LaurentPoly::one);
        let roots = if lcm.is_unit() {
            Vec::new()
        } else {
            LaurentPoly::from_upoly(0, lcm.body().squarefree_part()).circle_roots(session)
        };
        let mut summands = Vec::new();
        let mut rest = self.orders.clone();
        for root in &roots {
            let xi = root.point.exact_elem()?;
            let lin = LaurentPoly::linear(&xi);
            let mults: Vec<u32> = self.orders.iter().map(|d| d.mult_at(&xi)).collect();
            for (i, m) in mults.iter().enumerate() {
                rest[i] = rest[i].div_exact(&lin.pow(*m)).unwrap();
            }
            if self.field == FieldTag::R && root.point.im_sign() < 0 {
                continue;
            }
            let found = self.local_summands(&root.point, &xi, &mults)?;
            let total: u32 = found.iter().map(|x| x.0).sum();
            if total != mults.iter().sum::<u32>() {
                return Err(LinkError::Degenerate(format!("local splitting at {} is incomplete", root.point)));
            }
            summands.extend(realize(self.field, &root.point, found)?);
        }
        for d in invariant_chain(&rest) {
            for (k, g) in d.body().squarefree_decomposition() {
                let g = LaurentPoly::from_upoly(0, g);
                if g.weakly_symmetric().is_none() {
                    return Err(LinkError::Degenerate("off-circle torsion is not self-dual".into()));
                }
                summands.push(BasicForm::f(k, g));
            }
        }
        StructuredForm::new(self.field, summands)
    }

    fn local_summands(&self, point: &CirclePoint, xi: &Elem, mults: &[u32]) -> Result<Vec<(u32, i32)>> {
        let lin = LaurentPoly::linear(xi);
        let idx: Vec<usize> = (0..mults.len()).filter(|&i| mults[i] > 0).collect();
        let scale: Vec<LaurentPoly> =
            idx.iter().map(|&i| self.orders[i].div_exact(&lin.pow(mults[i])).unwrap()).collect();
        let mut g = Vec::with_capacity(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            let mut row = Vec::with_capacity(idx.len());
            for (b, &j) in idx.iter().enumerate() {
                let f = self.gram[i][j].mul_poly(&(&scale[a] * &scale[b].involve()));
                row.push(Series::principal_of(&f, xi));
            }
            g.push(row);
        }
        split_local(g, xi).map_err(|e| match e {
            LinkError::Degenerate(m) => LinkError::Degenerate(format!("{m} at {point}")),
            e => e,
        })
    }


    /// Sublagrangian reduction: the induced form on L^perp / L for L spanned by
    /// the given coordinate vectors.
    pub fn reduce(&self, l: &[Vec<LaurentPoly>]) -> Result<GramForm> {
        let k = self.generators();
        for v in l {
            if v.len() != k {
                return pre(format!("sublagrangian generators need {k} coordinates"));
            }
        }
        for a in l {
            for b in l {
                if !self.pair(a, b)?.is_zero() {
                    return pre("L is not isotropic");
                }
            }
        }
        if l.is_empty() || k == 0 {
            return Ok(self.clone());
        }
        let p = l.len();
        // lambda(x_i, l_j) = w_ij / dens_j
        let mut w = LMatrix::zeros(k, p);
        let mut dens = Vec::with_capacity(p);
        for (j, lj) in l.iter().enumerate() {
            let vals: Vec<Frac> = (0..k)
                .map(|i| {
                    let mut e = vec![LaurentPoly::zero(); k];
                    e[i] = LaurentPoly::one();
                    self.pair(&e, lj)
                })
                .collect::<Result<_>>()?;
            let dj = vals.iter().fold(LaurentPoly::one(), |acc, v| {
                let g = acc.gcd(&v.den());
                (&acc * &v.den()).div_exact(&g).unwrap()
            });
            for (i, v) in vals.iter().enumerate() {
                if !v.is_zero() {
                    w.set(i, j, &v.num() * &dj.div_exact(&v.den()).unwrap());
                }
            }
            dens.push(dj);
        }
        let ker = w.stack(&LMatrix::diag(&dens)).left_kernel();
        let perp: Vec<Vec<LaurentPoly>> = ker.to_rows().into_iter().map(|r| r[..k].to_vec()).collect();
        let s = perp.len();
        let g = LMatrix::from_rows(perp);
        let lmat = LMatrix::from_rows(l.to_vec());
        let rel_src = g.stack(&lmat).stack(&LMatrix::diag(&self.orders));
        let rel: Vec<Vec<LaurentPoly>> =
            rel_src.left_kernel().to_rows().into_iter().map(|r| r[..s].to_vec()).collect();
        if rel.is_empty() {
            return Err(LinkError::Identity("quotient has no relations".into()));
        }
        let sm = LMatrix::from_rows(rel).smith();
        if sm.rank < s {
            return Err(LinkError::Identity("quotient L^perp/L is not torsion".into()));
        }
        let diag = sm.diagonal();
        let gens: Vec<Vec<LaurentPoly>> = (0..s).map(|j| g.vec_mul(&sm.vinv.row(j))).collect();
        let mut gram = vec![vec![Frac::zero(); s]; s];
        for a in 0..s {
            for b in 0..s {
                gram[a][b] = self.pair(&gens[a], &gens[b])?;
            }
        }
        GramForm::new(self.field, diag[..s].to_vec(), gram)
    }
}

/// Orders and Gram block of the standard generators of a basic form.
fn basic_block(b: &BasicForm, field: FieldTag) -> Result<(Vec<LaurentPoly>, Vec<Vec<Frac>>)> {
    match b {
        BasicForm::E { n, eps, xi } => {
            let e = xi.exact_elem()?;
            let sgn = LaurentPoly::int(*eps as i64);
            let n = *n;
            let (order, value) = match field {
                FieldTag::C if n % 2 == 0 => (LaurentPoly::linear(&e).pow(n), Frac::new(&sgn, &norm_power(&e, n / 2))),
                FieldTag::C => {
                    let r = positive_linear(xi)?;
                    (LaurentPoly::linear(&e).pow(n), Frac::new(&(&sgn * &r), &mixed_power(&e, n.div_ceil(2), (n - 1) / 2)))
                }
                FieldTag::R if xi.is_plus_minus_one() => {
                    (LaurentPoly::linear(&e).pow(n), Frac::new(&sgn, &norm_power(&e, n / 2)))
                }
                FieldTag::R => {
                    let rp = basic_poly(xi, FieldTag::R)?.pow(n);
                    (rp.clone(), Frac::new(&sgn, &rp))
                }
            };
            Ok((vec![order], vec![vec![value]]))
        }
        BasicForm::F { n, poly } => {
            if let Some(pm) = b.plus_minus_one() {
                let e = pm.exact_elem()?;
                let d = LaurentPoly::linear(&e).pow(*n);
                let p12 = Frac::new(&LaurentPoly::one(), &d);
                let p21 = p12.involve();
                return Ok((vec![d.clone(), d], vec![vec![Frac::zero(), p12], vec![p21, Frac::zero()]]));
            }
            let gp = poly.pow(*n);
            let sym = positive_associate(&gp)?;
            Ok((vec![gp], vec![vec![Frac::new(&LaurentPoly::one(), &sym)]]))
        }
    }
}

/// Turns complex local data at a point into summands over the given field.
pub(crate) fn realize(field: FieldTag, point: &CirclePoint, found: Vec<(u32, i32)>) -> Result<Vec<BasicForm>> {
    if field == FieldTag::C || !point.is_plus_minus_one() {
        return Ok(found.into_iter().map(|(n, eps)| BasicForm::e(n, eps, point.clone())).collect());
    }
    let mut out = Vec::new();
    let mut odd: std::collections::BTreeMap<u32, i64> = Default::default();
    for (n, eps) in found {
        if n % 2 == 0 {
            out.push(BasicForm::e(n, eps, point.clone()));
        } else {
            *odd.entry(n).or_default() += eps as i64;
            if eps > 0 {
                out.push(BasicForm::f(n, basic_poly(point, FieldTag::R)?));
            }
        }
    }
    if odd.values().any(|&v| v != 0) {
        return Err(LinkError::Identity(format!("real form with unbalanced odd summands at {point}")));
    }
    Ok(out)
}

/// The symmetric associate of a polynomial without circle roots that is positive
/// on the unit circle.
pub fn positive_associate(p: &LaurentPoly) -> Result<LaurentPoly> {
    let sym = p
        .symmetric_associate()
        .ok_or_else(|| LinkError::Precondition(format!("{p} has no symmetric associate")))?;
    match sym.eval(&Elem::int(1)).real_sign() {
        Some(1) => Ok(sym),
        Some(-1) => Ok(-sym),
        _ => pre(format!("{p} vanishes at 1")),
    }
}

/// Structured form pairing: lambda(x, y) in the standard generators.
pub fn pair_eval(s: &StructuredForm, x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<Frac> {
    GramForm::from_structured(s)?.pair(x, y)
}

/// Dimension and signature of the Hermitian form induced on the order-n part at
/// xi by evaluating a fixed multiple of the pairing at xi.
pub fn hermitian_residue_form(s: &StructuredForm, xi: &CirclePoint, n: u32) -> Result<(usize, i64)> {
    let e = xi.exact_elem()?;
    let field = s.field();
    if field == FieldTag::R && xi.im_sign() < 0 {
        return Ok((0, 0));
    }
    let part: Vec<BasicForm> = s
        .summands()
        .iter()
        .filter(|b| matches!(b, BasicForm::E { n: m, xi: p, .. } if *m == n && p == xi))
        .cloned()
        .collect();
    if part.is_empty() {
        return Ok((0, 0));
    }
    let g = GramForm::from_structured(&StructuredForm::new(field, part)?)?;
    let mult = match field {
        FieldTag::R if xi.is_plus_minus_one() => norm_power(&e, n / 2),
        FieldTag::R => basic_poly(xi, FieldTag::R)?.pow(n),
        FieldTag::C if n.is_multiple_of(2) => norm_power(&e, n / 2),
        FieldTag::C => mixed_power(&e, n.div_ceil(2), (n - 1) / 2).scale(&(&Elem::i() * &e.conj())),
    };
    let k = g.generators();
    let mut h = vec![vec![Elem::int(0); k]; k];
    for i in 0..k {
        for j in 0..k {
            let f = &g.gram()[i][j];
            if !f.is_zero() {
                h[i][j] = value_at(&(&f.num() * &mult), &f.den(), &e)?;
            }
        }
    }
    Ok((k, hermitian_signature(&h)))
}
