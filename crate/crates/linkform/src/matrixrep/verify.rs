use super::{classify_matrix, signature_step_function, HermitianLaurentMatrix, MatrixStep};
use crate::error::Result;
use crate::field::{CirclePoint, Session};
use crate::forms::StructuredForm;
use crate::signature::{averaged_signature, sigma_loc, signature_function, signature_jump};

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Ok,
    Failed(String),
    Unavailable(String),
}

impl Check {
    pub fn label(&self) -> String {
        match self {
            Check::Ok => "ok".into(),
            Check::Failed(m) => format!("failed: {m}"),
            Check::Unavailable(m) => format!("unavailable: {m}"),
        }
    }

    pub fn is_failed(&self) -> bool {
        matches!(self, Check::Failed(_))
    }
}

/// Consistency of the matrix step function with the structural classification.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub step: MatrixStep,
    pub form: Option<StructuredForm>,
    /// Matrix jumps at the breakpoints (zero entries included).
    pub jumps: Vec<(CirclePoint, i64)>,
    /// Matrix jump at each breakpoint equals the structural jump.
    pub jumps_agree: Check,
    /// sign A(xi) minus its left limit equals the jump plus the local term.
    pub left_limit_agrees: Check,
    /// Normalized matrix step function equals the structural signature function.
    pub signature_agrees: Check,
    /// Averaged sign A relative to 1 equals the structural averaged signature.
    pub averaged_signature_agrees: Check,
}

impl VerifyReport {
    fn checks(&self) -> [&Check; 4] {
        [&self.jumps_agree, &self.left_limit_agrees, &self.signature_agrees, &self.averaged_signature_agrees]
    }

    pub fn all_ok(&self) -> bool {
        self.checks().iter().all(|c| **c == Check::Ok)
    }

    pub fn any_failed(&self) -> bool {
        self.checks().iter().any(|c| c.is_failed())
    }
}

pub fn verify(a: &HermitianLaurentMatrix, session: &Session) -> Result<VerifyReport> {
    let step = signature_step_function(a, session)?;
    let pts: Vec<CirclePoint> = step.raw.breakpoints().to_vec();
    let mut jumps = Vec::new();
    for k in 0..pts.len() {
        jumps.push((pts[k].clone(), step.jump(k)?));
    }
    let form = match classify_matrix(a, session) {
        Ok(s) => s,
        Err(e) => {
            let why = Check::Unavailable(e.to_string());
            return Ok(VerifyReport {
                step,
                form: None,
                jumps,
                jumps_agree: why.clone(),
                left_limit_agrees: why.clone(),
                signature_agrees: why.clone(),
                averaged_signature_agrees: why,
            });
        }
    };

    let mut bad = Vec::new();
    for (p, j) in &jumps {
        let d = signature_jump(&form, p);
        if d != *j {
            bad.push(format!("{p}: matrix {j}, form {d}"));
        }
    }
    let jumps_agree = verdict(bad);

    let mut bad = Vec::new();
    for (k, p) in pts.iter().enumerate() {
        let Some(v) = step.raw.point_values()[k] else { continue };
        let (l, _) = step.raw.sides(k);
        let want = signature_jump(&form, p) + sigma_loc(&form, p);
        if v - l != want {
            bad.push(format!("{p}: sign - left = {}, jump + local = {want}", v - l));
        }
    }
    let left_limit_agrees = verdict(bad);

    let sf = signature_function(&form)?;
    let signature_agrees = if sf.agrees_with(&step.normalized)? {
        Check::Ok
    } else {
        Check::Failed("normalized matrix step function differs from the signature function".into())
    };

    let mut bad = Vec::new();
    for p in pts.iter().filter(|p| p.is_exact()).chain(step.samples.iter()) {
        let lhs = averaged_signature(&form, p)?;
        let rhs = step.averaged_normalized(p)?;
        if lhs != rhs {
            bad.push(format!("{p}: averaged signature {lhs}, matrix {rhs}"));
        }
    }
    let averaged_signature_agrees = verdict(bad);

    Ok(VerifyReport {
        step,
        form: Some(form),
        jumps,
        jumps_agree,
        left_limit_agrees,
        signature_agrees,
        averaged_signature_agrees,
    })
}

fn verdict(bad: Vec<String>) -> Check {
    if bad.is_empty() {
        Check::Ok
    } else {
        Check::Failed(bad.join("; "))
    }
}
