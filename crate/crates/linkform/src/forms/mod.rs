//! Linking forms in structured form: basic summands, canonical direct sums,
//! cyclic forms, Hodge numbers and classification.

mod cyclic;
mod gram;
mod local;

pub use cyclic::{classify_cyclic, primary_decompose_cyclic, symmetrize_rep, CyclicForm};
pub(crate) use gram::realize;
pub use gram::{hermitian_residue_form, pair_eval, positive_associate, GramForm};
pub(crate) use local::combine as combine_generators;
pub use local::{local_sign, split_local};

use crate::error::{pre, LinkError, Result};
use crate::field::{CirclePoint, Session};
use crate::laurent::{basic_poly, FieldTag, LaurentPoly};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A basic linking form. `F` carries a squarefree, weakly symmetric polynomial
/// without unit-circle roots (one summand per basic factor), or t -+ 1 over R.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasicForm {
    E { n: u32, eps: i32, xi: CirclePoint },
    F { n: u32, poly: LaurentPoly },
}

impl BasicForm {
    pub fn e(n: u32, eps: i32, xi: CirclePoint) -> BasicForm {
        BasicForm::E { n, eps, xi }
    }

    pub fn f(n: u32, poly: LaurentPoly) -> BasicForm {
        BasicForm::F { n, poly: poly.normalized() }
    }

    pub fn n(&self) -> u32 {
        match self {
            BasicForm::E { n, .. } | BasicForm::F { n, .. } => *n,
        }
    }

    /// Checks the summand is admissible over the given field.
    pub fn validate(&self, field: FieldTag) -> Result<()> {
        match self {
            BasicForm::E { n, eps, xi } => {
                if *n == 0 {
                    return pre("basic form with n = 0");
                }
                if eps.abs() != 1 {
                    return pre(format!("sign must be +1 or -1, got {eps}"));
                }
                if !xi.is_exact() {
                    return Err(LinkError::InexactRoot(format!("E summand at {xi}")));
                }
                if field == FieldTag::R {
                    if xi.im_sign() < 0 {
                        return pre("real E summand needs Im xi >= 0");
                    }
                    if xi.is_plus_minus_one() && n % 2 == 1 {
                        return pre("real E summand at +-1 needs even n");
                    }
                }
                Ok(())
            }
            BasicForm::F { n, poly } => {
                if *n == 0 {
                    return pre("basic form with n = 0");
                }
                if field == FieldTag::R && !poly.has_real_coeffs() {
                    return pre("real F summand with non-real polynomial");
                }
                if let Some(pm) = self.plus_minus_one() {
                    if field == FieldTag::C {
                        return pre(format!("F summand at {pm} exists only over R"));
                    }
                    if n % 2 == 0 {
                        return pre("real F summand at +-1 needs odd n");
                    }
                    return Ok(());
                }
                if poly.span() == 0 {
                    return pre("F summand with a unit polynomial");
                }
                if poly.weakly_symmetric().is_none() {
                    return pre("F polynomial is not weakly symmetric");
                }
                if poly.body().squarefree_part().degree() != poly.body().degree() {
                    return pre("F polynomial is not squarefree");
                }
                if !poly.circle_roots(&Session::default()).is_empty() {
                    return pre("F polynomial has unit-circle roots");
                }
                Ok(())
            }
        }
    }

    /// For an F summand at +-1 over R, the point.
    pub fn plus_minus_one(&self) -> Option<CirclePoint> {
        match self {
            BasicForm::F { poly, .. } if *poly == LaurentPoly::from_ints(0, &[-1, 1]) => Some(CirclePoint::one()),
            BasicForm::F { poly, .. } if *poly == LaurentPoly::from_ints(0, &[1, 1]) => Some(CirclePoint::minus_one()),
            _ => None,
        }
    }

    /// The basic polynomial whose power is the order of this summand.
    pub fn basic(&self, field: FieldTag) -> Result<LaurentPoly> {
        match self {
            BasicForm::E { xi, .. } => basic_poly(xi, field),
            BasicForm::F { poly, .. } => Ok(poly.clone()),
        }
    }

    /// The order of the underlying module, up to units.
    pub fn order(&self, field: FieldTag) -> Result<LaurentPoly> {
        let b = self.basic(field)?;
        let p = b.pow(self.n());
        Ok(if self.plus_minus_one().is_some() { &p * &p } else { p })
    }

    pub fn to_text(&self) -> String {
        match self {
            BasicForm::E { n, eps, xi } => format!("e({n},{eps:+},{xi})"),
            BasicForm::F { n, poly } => format!("f({n},{poly})"),
        }
    }
}

impl Ord for BasicForm {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (BasicForm::E { n: a, eps: s, xi: x }, BasicForm::E { n: b, eps: t, xi: y }) => {
                x.cmp(y).then(a.cmp(b)).then(t.cmp(s))
            }
            (BasicForm::E { .. }, BasicForm::F { .. }) => Ordering::Less,
            (BasicForm::F { .. }, BasicForm::E { .. }) => Ordering::Greater,
            (BasicForm::F { n: a, poly: p }, BasicForm::F { n: b, poly: q }) => {
                a.cmp(b).then_with(|| p.span().cmp(&q.span())).then_with(|| p.to_text().cmp(&q.to_text()))
            }
        }
    }
}

impl PartialOrd for BasicForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A direct sum of basic forms in canonical order. F summands with the same n
/// are refined to coprime pieces so that equality is isometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredForm {
    field: FieldTag,
    summands: Vec<BasicForm>,
}

/// Invariant factors d_1 | d_2 | ... of diag(polys), units dropped.
pub fn invariant_chain(polys: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut d: Vec<LaurentPoly> = polys.iter().map(LaurentPoly::normalized).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = (&d[i] * &d[j]).div_exact(&g).unwrap().normalized();
            d[i] = g;
            d[j] = l;
        }
    }
    d.into_iter().filter(|x| !x.is_unit()).collect()
}

/// Coprime pieces p with multiplicities k such that the multiset of squarefree
/// inputs has the same factor counts as p repeated k times.
fn squarefree_pieces(polys: &[LaurentPoly]) -> Vec<(LaurentPoly, usize)> {
    let chain = invariant_chain(polys);
    // chain is d_1 | ... | d_m; the layer with at least k copies is d_{m-k+1}.
    let m = chain.len();
    let mut out = Vec::new();
    for k in 1..=m {
        let top = &chain[m - k];
        let next = if k < m { chain[m - k - 1].clone() } else { LaurentPoly::one() };
        let piece = top.div_exact(&next).unwrap().normalized();
        if !piece.is_unit() {
            out.push((piece, k));
        }
    }
    out
}

impl StructuredForm {
    /// Validates and canonicalizes the summands.
    pub fn new(field: FieldTag, summands: Vec<BasicForm>) -> Result<StructuredForm> {
        let mut es = Vec::new();
        let mut fs: BTreeMap<u32, Vec<LaurentPoly>> = BTreeMap::new();
        let mut pm = Vec::new();
        for s in summands {
            let s = match s {
                BasicForm::F { n, poly } => BasicForm::F { n, poly: poly.normalized() },
                e => e,
            };
            s.validate(field)?;
            match s {
                BasicForm::E { .. } => es.push(s),
                BasicForm::F { .. } if s.plus_minus_one().is_some() => pm.push(s),
                BasicForm::F { n, poly } => fs.entry(n).or_default().push(poly),
            }
        }
        let mut out = es;
        out.extend(pm);
        for (n, polys) in fs {
            for (piece, k) in squarefree_pieces(&polys) {
                for _ in 0..k {
                    out.push(BasicForm::F { n, poly: piece.clone() });
                }
            }
        }
        out.sort();
        Ok(StructuredForm { field, summands: out })
    }

    pub fn empty(field: FieldTag) -> StructuredForm {
        StructuredForm { field, summands: Vec::new() }
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn summands(&self) -> &[BasicForm] {
        &self.summands
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn direct_sum(&self, o: &StructuredForm) -> Result<StructuredForm> {
        if self.field != o.field {
            return pre("direct sum of forms over different fields");
        }
        let mut s = self.summands.clone();
        s.extend(o.summands.iter().cloned());
        StructuredForm::new(self.field, s)
    }

    /// The negated form (every E sign flipped; F summands are unchanged up to isometry).
    pub fn negate(&self) -> StructuredForm {
        let s = self
            .summands
            .iter()
            .map(|b| match b {
                BasicForm::E { n, eps, xi } => BasicForm::E { n: *n, eps: -eps, xi: xi.clone() },
                f => f.clone(),
            })
            .collect();
        StructuredForm::new(self.field, s).expect("negation keeps validity")
    }

    /// Order of the underlying module up to units.
    pub fn order(&self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::one();
        for s in &self.summands {
            acc = &acc * &s.order(self.field)?;
        }
        Ok(acc)
    }

    /// Summands E(n, eps, xi) of the complexification.
    pub fn complex_e_terms(&self) -> Vec<(u32, i32, CirclePoint)> {
        let mut out = Vec::new();
        for s in &self.summands {
            match (self.field, s) {
                (FieldTag::C, BasicForm::E { n, eps, xi }) => out.push((*n, *eps, xi.clone())),
                (FieldTag::R, BasicForm::E { n, eps, xi }) => {
                    out.push((*n, *eps, xi.clone()));
                    if !xi.is_plus_minus_one() {
                        let e2 = if n % 2 == 1 { -eps } else { *eps };
                        out.push((*n, e2, xi.conj()));
                    }
                }
                (FieldTag::R, f @ BasicForm::F { n, .. }) => {
                    if let Some(p) = f.plus_minus_one() {
                        out.push((*n, 1, p.clone()));
                        out.push((*n, -1, p));
                    }
                }
                _ => {}
            }
        }
        out
    }

    /// The complexified form.
    pub fn complexify(&self) -> StructuredForm {
        if self.field == FieldTag::C {
            return self.clone();
        }
        let mut s: Vec<BasicForm> =
            self.complex_e_terms().into_iter().map(|(n, eps, xi)| BasicForm::E { n, eps, xi }).collect();
        for b in &self.summands {
            if let BasicForm::F { n, poly } = b {
                if b.plus_minus_one().is_none() {
                    s.push(BasicForm::F { n: *n, poly: poly.clone() });
                }
            }
        }
        StructuredForm::new(FieldTag::C, s).expect("complexification is valid")
    }

    /// Inverse of [`complexify`](Self::complexify); fails when the complex form
    /// does not come from a real one.
    pub fn decomplexify(&self) -> Result<StructuredForm> {
        if self.field == FieldTag::R {
            return Ok(self.clone());
        }
        let bad = |m: &str| LinkError::Identity(format!("complex form is not a complexification: {m}"));
        let mut count: BTreeMap<(CirclePoint, u32, i32), i64> = BTreeMap::new();
        let mut out = Vec::new();
        for s in &self.summands {
            match s {
                BasicForm::E { n, eps, xi } => *count.entry((xi.clone(), *n, *eps)).or_default() += 1,
                BasicForm::F { n, poly } => {
                    if !poly.has_real_coeffs() {
                        return Err(bad("F polynomial with non-real coefficients"));
                    }
                    out.push(BasicForm::F { n: *n, poly: poly.clone() });
                }
            }
        }
        let keys: Vec<_> = count.keys().cloned().collect();
        for key in keys {
            let c = count[&key];
            if c == 0 {
                continue;
            }
            let (xi, n, eps) = key.clone();
            if xi.is_plus_minus_one() {
                if n % 2 == 0 {
                    out.extend((0..c).map(|_| BasicForm::E { n, eps, xi: xi.clone() }));
                    count.insert(key, 0);
                } else {
                    let other = (xi.clone(), n, -eps);
                    if count.get(&other).copied().unwrap_or(0) != c {
                        return Err(bad("unbalanced odd summands at +-1"));
                    }
                    let poly = basic_poly(&xi, FieldTag::R)?;
                    out.extend((0..c).map(|_| BasicForm::F { n, poly: poly.clone() }));
                    count.insert(key, 0);
                    count.insert(other, 0);
                }
                continue;
            }
            if xi.im_sign() < 0 {
                continue;
            }
            let e2 = if n % 2 == 1 { -eps } else { eps };
            let mate = (xi.conj(), n, e2);
            if count.get(&mate).copied().unwrap_or(0) != c {
                return Err(bad("summand without its conjugate"));
            }
            out.extend((0..c).map(|_| BasicForm::E { n, eps, xi: xi.clone() }));
            count.insert(key, 0);
            count.insert(mate, 0);
        }
        if count.values().any(|&c| c != 0) {
            return Err(bad("summand without its conjugate"));
        }
        StructuredForm::new(FieldTag::R, out)
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.summands.iter().map(BasicForm::to_text).collect();
        format!("[{}] {}", self.field, parts.join(" + "))
    }
}

impl fmt::Display for StructuredForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Multiplicities of the basic summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeNumbers {
    pub field: FieldTag,
    /// (n, eps, xi) -> count of E summands.
    pub p: BTreeMap<(u32, i32, CirclePoint), usize>,
    /// (n, piece) -> count of F summands; pieces are pairwise coprime for each n.
    pub q: Vec<(u32, LaurentPoly, usize)>,
}

impl HodgeNumbers {
    pub fn p_count(&self, n: u32, eps: i32, xi: &CirclePoint) -> usize {
        self.p.get(&(n, eps, xi.clone())).copied().unwrap_or(0)
    }

    /// Count of F(n, g) summands for a squarefree piece g of the canonical form.
    pub fn q_count(&self, n: u32, poly: &LaurentPoly) -> usize {
        let g = poly.normalized();
        self.q.iter().find(|(m, p, _)| *m == n && *p == g).map_or(0, |x| x.2)
    }
}

pub fn hodge_numbers(s: &StructuredForm) -> HodgeNumbers {
    let mut p = BTreeMap::new();
    let mut q: Vec<(u32, LaurentPoly, usize)> = Vec::new();
    for b in &s.summands {
        match b {
            BasicForm::E { n, eps, xi } => *p.entry((*n, *eps, xi.clone())).or_insert(0) += 1,
            BasicForm::F { n, poly } => match q.iter_mut().find(|(m, g, _)| m == n && g == poly) {
                Some(e) => e.2 += 1,
                None => q.push((*n, poly.clone(), 1)),
            },
        }
    }
    HodgeNumbers { field: s.field, p, q }
}

/// Isometry test: Hodge numbers are complete invariants.
pub fn is_isometric(a: &StructuredForm, b: &StructuredForm) -> bool {
    a.field == b.field && hodge_numbers(a) == hodge_numbers(b)
}

/// Groups summands by their basic polynomial.
pub fn primary_decompose(s: &StructuredForm) -> Result<Vec<(LaurentPoly, StructuredForm)>> {
    let mut groups: Vec<(LaurentPoly, Vec<BasicForm>)> = Vec::new();
    for b in &s.summands {
        let key = b.basic(s.field)?.normalized();
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some(g) => g.1.push(b.clone()),
            None => groups.push((key, vec![b.clone()])),
        }
    }
    groups.into_iter().map(|(k, v)| Ok((k, StructuredForm::new(s.field, v)?))).collect()
}
