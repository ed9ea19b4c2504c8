//! JSON encoding of the library's values, shared by the command-line tool and
//! the C interface. Emitted documents parse back to equal values.

use crate::error::{LinkError, Result};
use crate::field::{cayley, parse_q, CirclePoint, Elem, Isolated, Real, Session};
use crate::forms::{hodge_numbers, BasicForm, CyclicForm, GramForm, StructuredForm};
use crate::laurent::{FieldTag, Frac, LMatrix, LaurentPoly, UPoly};
use crate::matrixrep::{Check, HermitianLaurentMatrix, VerifyReport};
use crate::represent::RepresentabilityVerdict;
use crate::signature::{SignatureFunction, WittClass};
use serde_json::{json, Map, Value};

fn perr<T>(msg: impl Into<String>) -> Result<T> {
    Err(LinkError::Parse(msg.into()))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| LinkError::Parse(format!("missing key '{key}'")))
}

fn as_int(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| LinkError::Parse(format!("{what} must be an integer")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| LinkError::Parse(format!("{what} must be a string")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| LinkError::Parse(format!("{what} must be an array")))
}

pub fn field_json(f: FieldTag) -> Value {
    Value::String(f.to_string())
}

pub fn parse_field(v: &Value) -> Result<FieldTag> {
    match v.as_str() {
        Some("R") => Ok(FieldTag::R),
        Some("C") => Ok(FieldTag::C),
        _ => perr(format!("field must be \"R\" or \"C\", got {v}")),
    }
}

/// A field element, as text ("1/2-3*i") or as a JSON integer.
pub fn parse_elem(v: &Value, s: &Session) -> Result<Elem> {
    match v {
        Value::String(t) => Elem::parse(t, s),
        Value::Number(n) if n.is_i64() => Ok(Elem::int(n.as_i64().unwrap())),
        _ => perr(format!("field element must be a string, got {v}")),
    }
}

pub fn poly_json(p: &LaurentPoly) -> Value {
    if p.is_zero() {
        return json!({"low": 0, "coeffs": []});
    }
    let c: Vec<Value> = p.body().coeffs().iter().map(|a| Value::String(a.to_text())).collect();
    json!({"low": p.low(), "coeffs": c})
}

/// `{"low": k, "coeffs": [...]}` or text such as "t - 1 + t^-1".
pub fn parse_poly(v: &Value, s: &Session) -> Result<LaurentPoly> {
    match v {
        Value::String(t) => parse_poly_text(t, s),
        Value::Number(_) => Ok(LaurentPoly::constant(parse_elem(v, s)?)),
        Value::Object(_) => {
            let low = as_int(get(v, "low")?, "low")?;
            let coeffs = as_array(get(v, "coeffs")?, "coeffs")?
                .iter()
                .map(|c| parse_elem(c, s))
                .collect::<Result<Vec<_>>>()?;
            Ok(LaurentPoly::from_upoly(low, UPoly::new(coeffs)))
        }
        _ => perr(format!("polynomial must be an object or a string, got {v}")),
    }
}

/// Splits at top-level signs that start a new term.
fn split_terms(src: &str) -> Vec<&str> {
    let b = src.as_bytes();
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    for k in 0..b.len() {
        match b[k] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && k > 0 => {
                let prev = src[..k].trim_end().as_bytes().last().copied();
                if !matches!(prev, Some(b'^') | Some(b'*') | Some(b'/') | Some(b'(') | None) {
                    out.push(&src[start..k]);
                    start = k;
                }
            }
            _ => {}
        }
    }
    out.push(&src[start..]);
    out
}

pub fn parse_poly_text(text: &str, s: &Session) -> Result<LaurentPoly> {
    let bad = |m: &str| LinkError::Parse(format!("invalid polynomial '{text}': {m}"));
    if text.trim().is_empty() {
        return Err(bad("empty"));
    }
    let mut acc = LaurentPoly::zero();
    for term in split_terms(text) {
        let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
        let (neg, body) = match term.strip_prefix('-') {
            Some(r) => (true, r.to_string()),
            None => (false, term.strip_prefix('+').unwrap_or(&term).to_string()),
        };
        if body.is_empty() {
            return Err(bad("empty term"));
        }
        let (coef, exp) = match body.rfind('t') {
            None => (body.as_str(), 0i64),
            Some(k) => {
                let c = body[..k].trim_end_matches('*');
                let e = &body[k + 1..];
                let e = match e.strip_prefix('^') {
                    None if e.is_empty() => 1,
                    None => return Err(bad("unexpected text after t")),
                    Some(x) => {
                        let x = x.trim_start_matches('(').trim_end_matches(')');
                        x.parse::<i64>().map_err(|_| bad("bad exponent"))?
                    }
                };
                (c, e)
            }
        };
        let coef = coef.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(coef);
        let mut a = if coef.is_empty() { Elem::int(1) } else { Elem::parse(coef, s)? };
        if neg {
            a = -a;
        }
        acc = &acc + &LaurentPoly::mono(a, exp);
    }
    Ok(acc)
}

pub fn frac_json(f: &Frac) -> Value {
    json!({"num": poly_json(&f.num()), "den": poly_json(&f.den())})
}

pub fn parse_frac(v: &Value, s: &Session) -> Result<Frac> {
    let num = parse_poly(get(v, "num")?, s)?;
    let den = parse_poly(get(v, "den")?, s)?;
    if den.is_zero() {
        return perr("fraction with zero denominator");
    }
    Ok(Frac::new(&num, &den))
}

pub fn point_json(p: &CirclePoint) -> Value {
    Value::String(p.anchor())
}

fn parse_real(t: &str, s: &Session) -> Result<Real> {
    let e = Elem::parse(t, s)?;
    if !e.is_real() {
        return perr(format!("'{t}' is not real"));
    }
    Ok(e.re)
}

fn inner<'a>(t: &'a str, head: &str) -> Option<Vec<&'a str>> {
    let body = t.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(body.split([';', ',']).map(str::trim).collect())
}

/// Points: "1", "-1", "i", "-i", "root_of_unity(k;n)", "xi(x;y)", "cayley(s)"
/// and the `isolated(...)` anchors emitted for inexact roots.
pub fn parse_point(v: &Value, s: &Session) -> Result<CirclePoint> {
    let t = as_str(v, "point")?.trim();
    let bad = || LinkError::Parse(format!("invalid circle point '{t}'"));
    match t {
        "1" => return Ok(CirclePoint::one()),
        "-1" => return Ok(CirclePoint::minus_one()),
        "i" => return Ok(CirclePoint::i()),
        "-i" => return Ok(CirclePoint::i().conj()),
        _ => {}
    }
    if let Some(a) = inner(t, "root_of_unity") {
        let [k, n] = a[..] else { return Err(bad()) };
        let k: u32 = k.parse().map_err(|_| bad())?;
        let n: u32 = n.parse().map_err(|_| bad())?;
        if n != 0 && !s.root_orders().contains(&(n / num_integer::gcd(k % n, n).max(1))) {
            return Err(LinkError::Parse(format!("'{t}' needs a session field (field_sqrt) containing its coordinates")));
        }
        return CirclePoint::root_of_unity(k, n).map_err(|e| LinkError::Parse(e.to_string()));
    }
    if let Some(a) = inner(t, "xi") {
        let [x, y] = a[..] else { return Err(bad()) };
        let e = Elem::new(parse_real(x, s)?, parse_real(y, s)?);
        return CirclePoint::from_elem(&e).map_err(|e| LinkError::Parse(e.to_string()));
    }
    if let Some(a) = inner(t, "cayley") {
        let [q] = a[..] else { return Err(bad()) };
        return Ok(cayley(&parse_q(q).map_err(|_| bad())?));
    }
    if let Some(rest) = t.strip_prefix("isolated([") {
        let (coeffs, tail) = rest.split_once("];").ok_or_else(bad)?;
        let (lo, hi) = tail.strip_suffix(')').and_then(|x| x.split_once(';')).ok_or_else(bad)?;
        let c = coeffs.split_whitespace().map(|x| parse_real(x, s)).collect::<Result<Vec<_>>>()?;
        let iso = Isolated { poly: UPoly::new(c), lo: parse_q(lo)?, hi: parse_q(hi)? };
        return Ok(CirclePoint::Isolated(iso));
    }
    Err(bad())
}

fn summand_json(b: &BasicForm) -> Value {
    match b {
        BasicForm::E { n, eps, xi } => json!({"kind": "e", "n": n, "eps": eps, "xi": point_json(xi)}),
        BasicForm::F { n, poly } => json!({"kind": "f", "n": n, "poly": poly_json(poly)}),
    }
}

fn parse_summand(v: &Value, s: &Session) -> Result<BasicForm> {
    let n = as_int(get(v, "n")?, "n")?;
    if n <= 0 {
        return perr("summand needs n >= 1");
    }
    let n = n as u32;
    match as_str(get(v, "kind")?, "kind")? {
        "e" => {
            let eps = as_int(get(v, "eps")?, "eps")?;
            Ok(BasicForm::e(n, eps as i32, parse_point(get(v, "xi")?, s)?))
        }
        "f" => Ok(BasicForm::f(n, parse_poly(get(v, "poly")?, s)?)),
        k => perr(format!("unknown summand kind '{k}'")),
    }
}

fn session_entry(m: &mut Map<String, Value>, s: &Session) {
    if s.sqrt_d != 0 {
        m.insert("field_sqrt".into(), json!(s.sqrt_d));
    }
}

pub fn form_json(f: &StructuredForm, s: &Session) -> Value {
    let mut m = Map::new();
    session_entry(&mut m, s);
    m.insert("field".into(), field_json(f.field()));
    m.insert("summands".into(), Value::Array(f.summands().iter().map(summand_json).collect()));
    Value::Object(m)
}

pub fn hodge_json(f: &StructuredForm) -> Value {
    let h = hodge_numbers(f);
    let p: Vec<Value> = h
        .p
        .iter()
        .map(|((n, eps, xi), c)| json!({"n": n, "eps": eps, "xi": point_json(xi), "count": c}))
        .collect();
    let q: Vec<Value> = h.q.iter().map(|(n, g, c)| json!({"n": n, "poly": poly_json(g), "count": c})).collect();
    json!({"p": p, "q": q})
}

pub fn matrix_json(a: &HermitianLaurentMatrix, s: &Session) -> Value {
    let mut m = Map::new();
    session_entry(&mut m, s);
    m.insert("field".into(), field_json(a.field()));
    let rows: Vec<Value> =
        a.matrix().to_rows().iter().map(|r| Value::Array(r.iter().map(poly_json).collect())).collect();
    m.insert("matrix".into(), Value::Array(rows));
    Value::Object(m)
}

fn parse_rows(v: &Value, s: &Session, what: &str) -> Result<Vec<Vec<LaurentPoly>>> {
    as_array(v, what)?
        .iter()
        .map(|r| as_array(r, what)?.iter().map(|p| parse_poly(p, s)).collect())
        .collect()
}

/// The mathematical object of an input document.
#[derive(Clone, Debug)]
pub enum Input {
    Form(StructuredForm),
    Cyclic(CyclicForm),
    Gram(GramForm),
    Matrix(HermitianLaurentMatrix),
}

impl Input {
    pub fn field(&self) -> FieldTag {
        match self {
            Input::Form(f) => f.field(),
            Input::Cyclic(c) => c.field,
            Input::Gram(g) => g.field(),
            Input::Matrix(a) => a.field(),
        }
    }
}

/// A parsed input: session, object and optional generators of an isotropic
/// submodule (for reduction).
#[derive(Clone, Debug)]
pub struct Document {
    pub session: Session,
    pub input: Input,
    pub lagrangian: Option<Vec<Vec<LaurentPoly>>>,
}

/// The session field is fixed from `field_sqrt` (and the command-line value, which
/// must agree) before any element is parsed.
pub fn parse_session(v: &Value, flag_sqrt: Option<u32>) -> Result<Session> {
    let doc = match v.get("field_sqrt") {
        None | Some(Value::Null) => None,
        Some(x) => {
            let d = x.as_u64().filter(|d| *d <= u32::MAX as u64);
            Some(d.ok_or_else(|| LinkError::Parse("field_sqrt must be a non-negative integer".into()))? as u32)
        }
    };
    let d = match (doc, flag_sqrt) {
        (Some(a), Some(b)) if a != b => return perr(format!("field_sqrt {a} in the input conflicts with {b}")),
        (a, b) => a.or(b).unwrap_or(0),
    };
    Session::with_sqrt(d).map_err(|e| LinkError::Parse(e.to_string()))
}

pub fn parse_document(v: &Value, flag_sqrt: Option<u32>) -> Result<Document> {
    if !v.is_object() {
        return perr("input must be a JSON object");
    }
    let session = parse_session(v, flag_sqrt)?;
    let s = &session;
    let field = parse_field(get(v, "field")?)?;
    let keys: Vec<&str> =
        ["summands", "cyclic", "gram", "matrix"].into_iter().filter(|k| v.get(*k).is_some()).collect();
    let input = match keys[..] {
        ["summands"] => {
            let b = as_array(&v["summands"], "summands")?.iter().map(|x| parse_summand(x, s)).collect::<Result<_>>()?;
            Input::Form(StructuredForm::new(field, b)?)
        }
        ["cyclic"] => {
            let c = &v["cyclic"];
            Input::Cyclic(CyclicForm::new(field, parse_poly(get(c, "f")?, s)?, parse_poly(get(c, "h")?, s)?)?)
        }
        ["gram"] => {
            let g = &v["gram"];
            let orders = as_array(get(g, "orders")?, "orders")?.iter().map(|p| parse_poly(p, s)).collect::<Result<_>>()?;
            let entries = as_array(get(g, "entries")?, "entries")?
                .iter()
                .map(|r| as_array(r, "entries")?.iter().map(|x| parse_frac(x, s)).collect())
                .collect::<Result<_>>()?;
            Input::Gram(GramForm::new(field, orders, entries)?)
        }
        ["matrix"] => {
            let rows = parse_rows(&v["matrix"], s, "matrix")?;
            if rows.iter().any(|r| r.len() != rows.len()) {
                return perr("matrix must be square");
            }
            let m = if rows.is_empty() { LMatrix::zeros(0, 0) } else { LMatrix::from_rows(rows) };
            Input::Matrix(HermitianLaurentMatrix::new(field, m)?)
        }
        [] => return perr("input needs one of 'summands', 'cyclic', 'gram', 'matrix'"),
        _ => return perr(format!("input has several objects: {}", keys.join(", "))),
    };
    let lagrangian = match v.get("lagrangian") {
        None => None,
        Some(l) => Some(parse_rows(l, s, "lagrangian")?),
    };
    Ok(Document { session, input, lagrangian })
}

pub fn jumps_json(field: FieldTag, jumps: &[(CirclePoint, i64)]) -> Value {
    let list: Vec<Value> = jumps.iter().map(|(p, j)| json!({"xi": point_json(p), "jump": j})).collect();
    let total: i64 = jumps.iter().map(|x| x.1).sum();
    json!({"field": field_json(field), "jumps": list, "total_jump": total})
}

pub fn sigfn_json(f: &SignatureFunction) -> Value {
    json!({
        "field": field_json(f.field()),
        "breakpoints": f.breakpoints().iter().map(point_json).collect::<Vec<_>>(),
        "arcs": f.arc_values(),
        "points": f.point_values(),
    })
}

pub fn witt_json(w: &WittClass) -> Value {
    let c: Vec<Value> = w.coords.iter().map(|(p, v)| json!({"xi": point_json(p), "value": v})).collect();
    json!({"field": field_json(w.field), "coords": c, "zero": w.is_zero()})
}

pub fn verdict_json(v: &RepresentabilityVerdict, s: &Session) -> Value {
    let mut m = Map::new();
    m.insert("representable".into(), json!(v.representable));
    m.insert("total_jump".into(), json!(v.total_jump));
    m.insert("certificate".into(), json!(v.certificate.tag()));
    if let Some(a) = &v.matrix {
        m.insert("matrix".into(), matrix_json(a, s));
    }
    Value::Object(m)
}

fn check_json(c: &Check) -> Value {
    match c {
        Check::Ok => json!({"status": "ok"}),
        Check::Failed(m) => json!({"status": "failed", "detail": m}),
        Check::Unavailable(m) => json!({"status": "unavailable", "detail": m}),
    }
}

pub fn verify_json(r: &VerifyReport, s: &Session) -> Value {
    let field = r.step.raw.field();
    json!({
        "checks": {
            "jumps_agree": check_json(&r.jumps_agree),
            "left_limit_agrees": check_json(&r.left_limit_agrees),
            "signature_agrees": check_json(&r.signature_agrees),
            "averaged_signature_agrees": check_json(&r.averaged_signature_agrees),
        },
        "all_ok": r.all_ok(),
        "form": r.form.as_ref().map(|f| form_json(f, s)),
        "jumps": jumps_json(field, &r.jumps),
        "sign": sigfn_json(&r.step.raw),
        "normalized": sigfn_json(&r.step.normalized),
        "samples": r.step.samples.iter().map(point_json).collect::<Vec<_>>(),
    })
}

pub fn error_json(e: &LinkError) -> Value {
    json!({"error": e.code(), "message": e.to_string()})
}
