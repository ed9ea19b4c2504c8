//! Linking forms presented by Hermitian matrices over the Laurent ring: the form
//! on Lambda^n / A^T Lambda^n given by (x, y) -> x^T A^-1 y^#.

mod jets;
mod step;
mod verify;

pub use jets::{classify_local, local_diagonalize, local_diagonalize_with};
pub use step::{jumps_from_matrix, signature_step_function, MatrixStep};
pub use verify::{verify, Check, VerifyReport};

use crate::error::{pre, LinkError, Result};
use crate::field::{hermitian_signature, CirclePoint, Session};
use crate::forms::{invariant_chain, realize, BasicForm, GramForm, StructuredForm};
use crate::laurent::{FieldTag, Frac, LMatrix, LaurentPoly, Smith};

/// A square Hermitian matrix over the Laurent ring with nonzero determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianLaurentMatrix {
    field: FieldTag,
    m: LMatrix,
}

pub fn check_hermitian(a: &LMatrix) -> bool {
    a.is_hermitian()
}

impl HermitianLaurentMatrix {
    pub fn new(field: FieldTag, m: LMatrix) -> Result<HermitianLaurentMatrix> {
        if !m.is_square() {
            return pre(format!("matrix is {}x{}, not square", m.rows(), m.cols()));
        }
        if !m.is_hermitian() {
            return pre("matrix is not Hermitian");
        }
        if field == FieldTag::R && m.to_rows().iter().flatten().any(|p| !p.has_real_coeffs()) {
            return pre("real matrix with non-real coefficients");
        }
        if m.rows() > 0 && m.det().is_zero() {
            return Err(LinkError::Degenerate("matrix has zero determinant".into()));
        }
        Ok(HermitianLaurentMatrix { field, m })
    }

    pub fn from_rows(field: FieldTag, rows: Vec<Vec<LaurentPoly>>) -> Result<HermitianLaurentMatrix> {
        if rows.is_empty() {
            return HermitianLaurentMatrix::new(field, LMatrix::zeros(0, 0));
        }
        if rows.iter().any(|r| r.len() != rows.len()) {
            return pre("matrix rows have inconsistent lengths");
        }
        HermitianLaurentMatrix::new(field, LMatrix::from_rows(rows))
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn matrix(&self) -> &LMatrix {
        &self.m
    }

    pub fn size(&self) -> usize {
        self.m.rows()
    }

    pub fn det(&self) -> LaurentPoly {
        if self.size() == 0 {
            LaurentPoly::one()
        } else {
            self.m.det()
        }
    }
}

/// Invariant factors of a presentation matrix together with the transforms.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    pub factors: Vec<LaurentPoly>,
    pub smith: Smith,
}

impl PresentedModule {
    /// Factors that are not units.
    pub fn torsion(&self) -> Vec<LaurentPoly> {
        self.factors.iter().filter(|d| !d.is_unit()).cloned().collect()
    }
}

pub fn snf(a: &LMatrix) -> Result<PresentedModule> {
    if !a.is_square() || (a.rows() > 0 && a.det().is_zero()) {
        return Err(LinkError::Degenerate("presentation matrix has zero determinant".into()));
    }
    let smith = a.smith();
    Ok(PresentedModule { factors: smith.diagonal(), smith })
}

/// Signature of A(omega) at an exactly known circle point.
pub fn sign_at(a: &HermitianLaurentMatrix, omega: &CirclePoint) -> Result<i64> {
    let w = omega.exact_elem()?;
    if a.size() == 0 {
        return Ok(0);
    }
    Ok(hermitian_signature(&a.m.eval(&w)))
}

/// The form as a Gram matrix on the Smith generators. Also returns the indices
/// of the generators that survive (non-unit factors) and the Smith data.
pub fn gram_form(a: &HermitianLaurentMatrix) -> Result<(GramForm, Vec<usize>, Smith)> {
    let pm = snf(&a.m)?;
    let sm = pm.smith;
    let n = a.size();
    let d = sm.diagonal();
    let mut gram = vec![vec![Frac::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let row_j: Vec<LaurentPoly> = sm.vinv.row(j).iter().map(LaurentPoly::involve).collect();
            let num = dot(&sm.u.row(i), &row_j);
            gram[i][j] = Frac::new(&num, &d[i]);
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| !d[i].is_unit()).collect();
    let g = GramForm::new(a.field, d.clone(), gram)?;
    Ok((g, keep, sm))
}

fn dot(x: &[LaurentPoly], y: &[LaurentPoly]) -> LaurentPoly {
    x.iter().zip(y).fold(LaurentPoly::zero(), |acc, (a, b)| &acc + &(a * b))
}

/// x^T A^-1 y^# as a class in F(t)/Lambda.
pub fn lambda_eval(a: &HermitianLaurentMatrix, x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<Frac> {
    let n = a.size();
    if x.len() != n || y.len() != n {
        return pre(format!("vectors need {n} entries"));
    }
    let sm = snf(&a.m)?.smith;
    let d = sm.diagonal();
    let yb: Vec<LaurentPoly> = y.iter().map(LaurentPoly::involve).collect();
    let mut acc = Frac::zero();
    for k in 0..n {
        let xv: LaurentPoly = (0..n).fold(LaurentPoly::zero(), |s, i| &s + &(&x[i] * sm.v.get(i, k)));
        let uy = dot(&sm.u.row(k), &yb);
        acc = acc.add(&Frac::new(&(&xv * &uy), &d[k]));
    }
    Ok(acc)
}

/// Full classification: local jet diagonalization at every circle root of the
/// determinant, plus F summands from the off-circle part of the invariant factors.
pub fn classify_matrix(a: &HermitianLaurentMatrix, session: &Session) -> Result<StructuredForm> {
    if a.size() == 0 {
        return Ok(StructuredForm::empty(a.field));
    }
    let mut off = a.det();
    let mut summands = Vec::new();
    for root in a.det().circle_roots(session) {
        let xi = root.point;
        if !xi.is_exact() {
            return Err(LinkError::InexactRoot(format!("circle root {xi} of the determinant")));
        }
        let e = xi.exact_elem()?;
        let lin = LaurentPoly::linear(&e);
        off = off.div_exact(&lin.pow(off.mult_at(&e))).unwrap();
        if a.field == FieldTag::R && xi.im_sign() < 0 {
            continue;
        }
        let jets = match session.truncation {
            Some(n) => local_diagonalize_with(a.matrix(), &e, n as i64)?,
            None => local_diagonalize(a.matrix(), &xi)?,
        };
        let found: Vec<(u32, i32)> = classify_local(&jets, &xi)?
            .into_iter()
            .map(|b| match b {
                BasicForm::E { n, eps, .. } => (n, eps),
                BasicForm::F { .. } => unreachable!("local classification yields E summands"),
            })
            .collect();
        summands.extend(realize(a.field, &xi, found)?);
    }
    for d in invariant_chain(&a.m.diagonal_mod(&off)) {
        for (k, g) in d.body().squarefree_decomposition() {
            let g = LaurentPoly::from_upoly(0, g);
            if g.weakly_symmetric().is_none() {
                return Err(LinkError::Degenerate("off-circle torsion is not self-dual".into()));
            }
            summands.push(BasicForm::f(k, g));
        }
    }
    StructuredForm::new(a.field, summands)
}

/// Classification through the Gram matrix on the Smith generators. Slower than
/// [`classify_matrix`], whose result it should reproduce.
pub fn classify_via_smith(a: &HermitianLaurentMatrix, session: &Session) -> Result<StructuredForm> {
    let (g, _, _) = gram_form(a)?;
    g.classify(session)
}

/// P A P^#T for unimodular P.
pub fn congruence_transform(a: &HermitianLaurentMatrix, p: &LMatrix) -> Result<HermitianLaurentMatrix> {
    if !p.is_square() || p.rows() != a.size() {
        return pre("transform has the wrong shape");
    }
    if a.size() > 0 && !p.det().is_unit() {
        return pre("transform is not unimodular");
    }
    HermitianLaurentMatrix::new(a.field, p.mul(&a.m).mul(&p.adjoint()))
}

/// A + D for Hermitian D with unit determinant.
pub fn stabilize(a: &HermitianLaurentMatrix, d: &HermitianLaurentMatrix) -> Result<HermitianLaurentMatrix> {
    if !d.det().is_unit() {
        return pre("stabilizing block must have unit determinant");
    }
    if a.field != d.field {
        return pre("stabilizing block over a different field");
    }
    HermitianLaurentMatrix::new(a.field, a.m.direct_sum(&d.m))
}

/// Induced form on L^perp / L for L spanned by vectors of Lambda^n.
pub fn sublagrangian_reduce_presented(
    a: &HermitianLaurentMatrix,
    l: &[Vec<LaurentPoly>],
    session: &Session,
) -> Result<StructuredForm> {
    for x in l {
        for y in l {
            if !lambda_eval(a, x, y)?.is_zero() {
                return pre("L is not isotropic");
            }
        }
    }
    let (g, keep, sm) = gram_form(a)?;
    let n = a.size();
    // Coordinates with respect to the Smith generators: z = V^T x.
    let coords: Vec<Vec<LaurentPoly>> = l
        .iter()
        .map(|x| {
            keep.iter().map(|&k| (0..n).fold(LaurentPoly::zero(), |s, i| &s + &(&x[i] * sm.v.get(i, k)))).collect()
        })
        .collect();
    g.reduce(&coords)?.classify(session)
}
