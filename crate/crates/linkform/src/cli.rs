//! Verb dispatch for the command-line tool. Argument parsing and file handling
//! live in the binary; everything here works on in-memory text.

use crate::error::{LinkError, Result};
use crate::field::Session;
use crate::forms::{classify_cyclic, GramForm, StructuredForm};
use crate::io::{self, Document, Input};
use crate::matrixrep::{classify_matrix, jumps_from_matrix, signature_step_function, sublagrangian_reduce_presented, verify};
use crate::represent::{is_representable, represent};
use crate::signature::{is_metabolic, signature_function, signature_jump, sublagrangian_reduce, support, witt_class};
use serde_json::{json, Value};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    Classify,
    Jumps,
    Sigfn,
    Witt,
    Metabolic,
    Representable,
    Represent,
    Verify,
    Reduce,
}

impl Verb {
    pub const ALL: [Verb; 9] = [
        Verb::Classify,
        Verb::Jumps,
        Verb::Sigfn,
        Verb::Witt,
        Verb::Metabolic,
        Verb::Representable,
        Verb::Represent,
        Verb::Verify,
        Verb::Reduce,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Verb::Classify => "classify",
            Verb::Jumps => "jumps",
            Verb::Sigfn => "sigfn",
            Verb::Witt => "witt",
            Verb::Metabolic => "metabolic",
            Verb::Representable => "representable",
            Verb::Represent => "represent",
            Verb::Verify => "verify",
            Verb::Reduce => "reduce",
        }
    }
}

impl fmt::Display for Verb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Verb {
    type Err = LinkError;
    fn from_str(s: &str) -> Result<Verb> {
        Verb::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| LinkError::Parse(format!("unknown verb '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = LinkError;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(LinkError::Parse(format!("unknown format '{s}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Job {
    pub verb: Verb,
    /// The input document as JSON text.
    pub input: String,
    pub format: Format,
    pub field_sqrt: Option<u32>,
    pub truncation: Option<usize>,
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one job. Errors become a JSON object on stderr with the matching exit
/// status: 2 for unreadable input, 3 for violated preconditions, 4 for failed
/// internal identities.
pub fn run(job: &Job) -> Outcome {
    match execute(job) {
        Ok((status, stdout)) => Outcome { status, stdout, stderr: String::new() },
        Err(e) => Outcome { status: e.exit_code(), stdout: String::new(), stderr: render(&io::error_json(&e)) },
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn execute(job: &Job) -> Result<(i32, String)> {
    let v: Value = serde_json::from_str(&job.input).map_err(|e| LinkError::Parse(format!("invalid JSON: {e}")))?;
    let mut doc = io::parse_document(&v, job.field_sqrt)?;
    doc.session.truncation = job.truncation;
    if job.format == Format::Csv && job.verb != Verb::Sigfn {
        return Err(LinkError::Parse(format!("csv output is only available for sigfn, not {}", job.verb)));
    }
    let s = doc.session;
    let out = match job.verb {
        Verb::Classify => {
            let f = structured(&doc)?;
            let mut o = io::form_json(&f, &s);
            o["text"] = json!(f.to_text());
            o["hodge"] = io::hodge_json(&f);
            o
        }
        Verb::Jumps => match &doc.input {
            Input::Matrix(a) => {
                let j: Vec<_> = jumps_from_matrix(a, &s)?.into_iter().collect();
                io::jumps_json(a.field(), &j)
            }
            _ => {
                let f = structured(&doc)?;
                let j: Vec<_> = support(&f)
                    .into_iter()
                    .map(|p| {
                        let d = signature_jump(&f, &p);
                        (p, d)
                    })
                    .filter(|x| x.1 != 0)
                    .collect();
                io::jumps_json(f.field(), &j)
            }
        },
        Verb::Sigfn => {
            let sf = match &doc.input {
                Input::Matrix(a) => signature_step_function(a, &s)?.normalized,
                _ => signature_function(&structured(&doc)?)?,
            };
            if job.format == Format::Csv {
                return Ok((0, sf.to_csv()));
            }
            io::sigfn_json(&sf)
        }
        Verb::Witt => io::witt_json(&witt_class(&structured(&doc)?)),
        Verb::Metabolic => {
            let f = structured(&doc)?;
            json!({"metabolic": is_metabolic(&f), "witt": io::witt_json(&witt_class(&f))})
        }
        Verb::Representable => io::verdict_json(&is_representable(&structured(&doc)?), &s),
        Verb::Represent => {
            let v = represent(&structured(&doc)?, &s)?;
            let report = match &v.matrix {
                Some(a) => Some(verify(a, &s)?),
                None => None,
            };
            let failed = report.as_ref().is_some_and(|r| r.any_failed());
            let o = json!({
                "verdict": io::verdict_json(&v, &s),
                "verify": report.as_ref().map(|r| io::verify_json(r, &s)),
            });
            return Ok((if failed { 4 } else { 0 }, render(&o)));
        }
        Verb::Verify => {
            let a = match &doc.input {
                Input::Matrix(a) => a.clone(),
                _ => {
                    let v = represent(&structured(&doc)?, &s)?;
                    v.matrix.ok_or(LinkError::NotRepresentable(v.total_jump))?
                }
            };
            let r = verify(&a, &s)?;
            return Ok((if r.any_failed() { 4 } else { 0 }, render(&io::verify_json(&r, &s))));
        }
        Verb::Reduce => {
            let l = doc
                .lagrangian
                .as_ref()
                .ok_or_else(|| LinkError::Parse("reduce needs a 'lagrangian' list of vectors".into()))?;
            let f = match &doc.input {
                Input::Form(f) => sublagrangian_reduce(f, l, &s)?,
                Input::Cyclic(c) => GramForm::from_cyclic(c)?.reduce(l)?.classify(&s)?,
                Input::Gram(g) => g.reduce(l)?.classify(&s)?,
                Input::Matrix(a) => sublagrangian_reduce_presented(a, l, &s)?,
            };
            let mut o = io::form_json(&f, &s);
            o["text"] = json!(f.to_text());
            o
        }
    };
    Ok((0, render(&out)))
}

/// The classified form of any input.
pub fn structured(doc: &Document) -> Result<StructuredForm> {
    let s: &Session = &doc.session;
    match &doc.input {
        Input::Form(f) => Ok(f.clone()),
        Input::Cyclic(c) => classify_cyclic(c, s),
        Input::Gram(g) => g.classify(s),
        Input::Matrix(a) => classify_matrix(a, s),
    }
}
