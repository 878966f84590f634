//! JSON ingestion and emission for every value the CLI moves around.
//!
//! All documents are versioned: emitted objects carry `"schema": "v1"`,
//! and parsed objects may carry the same field (any other version is
//! rejected). Values whose natural JSON form is an array — octonions
//! and Arthur parameters — are accepted both bare and wrapped in an
//! envelope object (`{"schema":"v1","octonion":[…]}`).
//!
//! Scalars are serialized as strings in the exact modes (`"3/2"`,
//! `"u^2 + 1"`) and as `[re, im]` pairs of numbers in complex mode;
//! floats are never silently substituted for exact values. Parse
//! failures carry a JSON-pointer location (`"/chi/0"`) alongside the
//! reason.

use crate::arthur::{ArthurParam, ArthurSummand, CuspConstituent, SelfDualType, SiegelStdShape};
use crate::lfactor::{EulerReport, LocalFactor};
use crate::linalg::Mat8;
use crate::octonion::Octonion;
use crate::satake::{EigenMultiset, GSpinEvenParam, GSpinOddParam, GSpinParam};
use crate::scalar::{Scalar, ScalarMode};
use crate::spin8::SpinTriple;
use crate::trispin::TriSpinElement;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: &str = "v1";

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
#[error("parse error at {location:?}: {reason}")]
pub struct JsonError {
    /// JSON pointer to the offending value ("" is the document root).
    pub location: String,
    pub reason: String,
}

impl JsonError {
    fn new(location: impl Into<String>, reason: impl Into<String>) -> Self {
        JsonError {
            location: location.into(),
            reason: reason.into(),
        }
    }
}

/// Parses a JSON document; syntax errors point at the root.
pub fn parse_document(text: &str) -> Result<Value, JsonError> {
    serde_json::from_str(text).map_err(|e| JsonError::new("", e.to_string()))
}

/// Deterministic emission: objects sort keys, numbers use the shortest
/// round-trip representation.
pub fn to_json_string(v: &Value) -> String {
    serde_json::to_string(v).expect("values built here always serialize")
}

fn check_schema(v: &Value, path: &str) -> Result<(), JsonError> {
    if let Some(obj) = v.as_object() {
        if let Some(s) = obj.get("schema") {
            let tag = s
                .as_str()
                .ok_or_else(|| JsonError::new(format!("{path}/schema"), "expected a string"))?;
            if tag != SCHEMA_VERSION {
                return Err(JsonError::new(
                    format!("{path}/schema"),
                    format!("unsupported schema version {tag:?}, expected {SCHEMA_VERSION:?}"),
                ));
            }
        }
    }
    Ok(())
}

fn envelope(field: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".to_string(), json!(SCHEMA_VERSION));
    m.insert(field.to_string(), body);
    Value::Object(m)
}

/// Accepts either the bare body or `{"schema":"v1", field: body}`.
fn open_envelope<'a>(v: &'a Value, field: &str, path: &str) -> Result<(&'a Value, String), JsonError> {
    check_schema(v, path)?;
    match v.as_object() {
        Some(obj) if obj.contains_key(field) => {
            Ok((&obj[field], format!("{path}/{field}")))
        }
        _ => Ok((v, path.to_string())),
    }
}

/// Extracts a required top-level field of a composite request document,
/// honoring the optional `schema` tag.
pub fn field_of<'a>(v: &'a Value, name: &str) -> Result<&'a Value, JsonError> {
    check_schema(v, "")?;
    field(v, "", name)
}

fn field<'a>(v: &'a Value, path: &str, name: &str) -> Result<&'a Value, JsonError> {
    let obj = v
        .as_object()
        .ok_or_else(|| JsonError::new(path, "expected an object"))?;
    obj.get(name)
        .ok_or_else(|| JsonError::new(format!("{path}/{name}"), "missing required field"))
}

fn opt_field<'a>(v: &'a Value, name: &str) -> Option<&'a Value> {
    v.as_object().and_then(|o| o.get(name))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a [Value], JsonError> {
    v.as_array()
        .map(|a| a.as_slice())
        .ok_or_else(|| JsonError::new(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, JsonError> {
    v.as_str().ok_or_else(|| JsonError::new(path, "expected a string"))
}

fn as_u64(v: &Value, path: &str) -> Result<u64, JsonError> {
    v.as_u64()
        .ok_or_else(|| JsonError::new(path, "expected a nonnegative integer"))
}

fn as_f64(v: &Value, path: &str) -> Result<f64, JsonError> {
    v.as_f64().ok_or_else(|| JsonError::new(path, "expected a number"))
}

fn as_bool(v: &Value, path: &str) -> Result<bool, JsonError> {
    v.as_bool().ok_or_else(|| JsonError::new(path, "expected a boolean"))
}

// ---- scalars ----------------------------------------------------------

pub fn scalar_to_value(s: &Scalar) -> Value {
    match s.as_complex() {
        Some(z) if s.mode() == ScalarMode::Complex => json!([z.re, z.im]),
        _ => json!(s.to_string()),
    }
}

pub fn scalar_from_value(v: &Value, path: &str, mode: ScalarMode) -> Result<Scalar, JsonError> {
    match mode {
        ScalarMode::Rational | ScalarMode::QHalf => {
            let text = v.as_str().ok_or_else(|| {
                JsonError::new(path, "exact scalars are written as strings, never numbers")
            })?;
            Scalar::parse(text, mode).map_err(|e| JsonError::new(path, e.to_string()))
        }
        ScalarMode::Complex => {
            let pair = as_array(v, path)?;
            if pair.len() != 2 {
                return Err(JsonError::new(path, "complex scalars are written as [re, im]"));
            }
            let re = as_f64(&pair[0], &format!("{path}/0"))?;
            let im = as_f64(&pair[1], &format!("{path}/1"))?;
            Ok(Scalar::Cpx(num_complex::Complex64::new(re, im)))
        }
    }
}

fn scalar_array_from_value(
    v: &Value,
    path: &str,
    mode: ScalarMode,
) -> Result<Vec<Scalar>, JsonError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, e)| scalar_from_value(e, &format!("{path}/{i}"), mode))
        .collect()
}

fn scalar_array_to_value(s: &[Scalar]) -> Value {
    Value::Array(s.iter().map(scalar_to_value).collect())
}

fn mode_from_value(v: &Value, path: &str) -> Result<ScalarMode, JsonError> {
    match as_str(v, path)? {
        "rational" => Ok(ScalarMode::Rational),
        "qhalf" => Ok(ScalarMode::QHalf),
        "complex" => Ok(ScalarMode::Complex),
        other => Err(JsonError::new(
            path,
            format!("unknown mode {other:?}, expected rational|qhalf|complex"),
        )),
    }
}

// ---- octonions and matrices -------------------------------------------

/// Bare form: array of 8 scalars in the frozen basis order
/// `(a, v1, v2, v3, w1, w2, w3, b)`.
pub fn octonion_from_value(
    v: &Value,
    path: &str,
    mode: ScalarMode,
) -> Result<Octonion, JsonError> {
    let (body, path) = open_envelope(v, "octonion", path)?;
    let coords = scalar_array_from_value(body, &path, mode)?;
    let coords: [Scalar; 8] = coords
        .try_into()
        .map_err(|c: Vec<Scalar>| JsonError::new(&path, format!("expected 8 coordinates, got {}", c.len())))?;
    Ok(Octonion::from_vec(&coords))
}

pub fn octonion_to_value(x: &Octonion) -> Value {
    envelope("octonion", octonion_body(x))
}

pub fn octonion_body(x: &Octonion) -> Value {
    Value::Array(x.coords().iter().map(|s| scalar_to_value(s)).collect())
}

pub fn mat8_from_value(v: &Value, path: &str, mode: ScalarMode) -> Result<Mat8, JsonError> {
    let rows = as_array(v, path)?;
    if rows.len() != 8 {
        return Err(JsonError::new(path, format!("expected 8 rows, got {}", rows.len())));
    }
    let mut parsed = Vec::with_capacity(8);
    for (i, row) in rows.iter().enumerate() {
        let entries = scalar_array_from_value(row, &format!("{path}/{i}"), mode)?;
        if entries.len() != 8 {
            return Err(JsonError::new(
                format!("{path}/{i}"),
                format!("expected 8 entries, got {}", entries.len()),
            ));
        }
        parsed.push(entries);
    }
    Ok(Mat8::from_fn(|i, j| parsed[i][j].clone()))
}

pub fn mat8_to_value(m: &Mat8) -> Value {
    Value::Array(
        (0..8)
            .map(|i| Value::Array((0..8).map(|j| scalar_to_value(m.at(i, j))).collect()))
            .collect(),
    )
}

pub fn spin_triple_from_value(
    v: &Value,
    path: &str,
    mode: ScalarMode,
) -> Result<SpinTriple, JsonError> {
    check_schema(v, path)?;
    let g1 = mat8_from_value(field(v, path, "g1")?, &format!("{path}/g1"), mode)?;
    let g2 = mat8_from_value(field(v, path, "g2")?, &format!("{path}/g2"), mode)?;
    let g3 = mat8_from_value(field(v, path, "g3")?, &format!("{path}/g3"), mode)?;
    Ok(SpinTriple::new(g1, g2, g3))
}

pub fn spin_triple_to_value(s: &SpinTriple) -> Value {
    let (g1, g2, g3) = s.components();
    let mut m = Map::new();
    m.insert("schema".to_string(), json!(SCHEMA_VERSION));
    m.insert("g1".to_string(), mat8_to_value(g1));
    m.insert("g2".to_string(), mat8_to_value(g2));
    m.insert("g3".to_string(), mat8_to_value(g3));
    Value::Object(m)
}

/// `{"t":{"1":…,"2":…,"3":…},"spin":{…}}`, scalars keyed by center label.
pub fn trispin_from_value(
    v: &Value,
    path: &str,
    mode: ScalarMode,
) -> Result<TriSpinElement, JsonError> {
    check_schema(v, path)?;
    let tmap = field(v, path, "t")?;
    let mut t = Vec::with_capacity(3);
    for label in ["1", "2", "3"] {
        let entry = field(tmap, &format!("{path}/t"), label)?;
        t.push(scalar_from_value(entry, &format!("{path}/t/{label}"), mode)?);
    }
    let t: [Scalar; 3] = t.try_into().expect("three labels");
    let spin = spin_triple_from_value(field(v, path, "spin")?, &format!("{path}/spin"), mode)?;
    TriSpinElement::new(t, spin).map_err(|e| JsonError::new(format!("{path}/t"), e.to_string()))
}

pub fn trispin_to_value(z: &TriSpinElement) -> Value {
    let mut tmap = Map::new();
    for j in 1..=3 {
        tmap.insert(j.to_string(), scalar_to_value(z.t(j)));
    }
    let mut m = Map::new();
    m.insert("schema".to_string(), json!(SCHEMA_VERSION));
    m.insert("t".to_string(), Value::Object(tmap));
    m.insert("spin".to_string(), spin_triple_to_value(z.spin()));
    Value::Object(m)
}

// ---- torus parameters --------------------------------------------------

/// `{"group":"GSpinOdd"|"GSpinEven","n":…,"chi":[…],"mu":…,"mode":…}`.
/// The document's own `mode` wins; `default_mode` applies when absent.
pub fn gspin_from_value(
    v: &Value,
    path: &str,
    default_mode: ScalarMode,
) -> Result<GSpinParam, JsonError> {
    check_schema(v, path)?;
    let mode = match opt_field(v, "mode") {
        Some(m) => mode_from_value(m, &format!("{path}/mode"))?,
        None => default_mode,
    };
    let group = as_str(field(v, path, "group")?, &format!("{path}/group"))?;
    let n = as_u64(field(v, path, "n")?, &format!("{path}/n"))? as usize;
    let chi_path = format!("{path}/chi");
    let chi = scalar_array_from_value(field(v, path, "chi")?, &chi_path, mode)?;
    if chi.len() != n {
        return Err(JsonError::new(
            chi_path,
            format!("chi has {} entries but n = {n}", chi.len()),
        ));
    }
    for (i, x) in chi.iter().enumerate() {
        if x.is_zero() {
            return Err(JsonError::new(
                format!("{path}/chi/{i}"),
                "torus coordinates must be nonzero",
            ));
        }
    }
    let mu_path = format!("{path}/mu");
    let mu = scalar_from_value(field(v, path, "mu")?, &mu_path, mode)?;
    if mu.is_zero() {
        return Err(JsonError::new(mu_path, "torus coordinates must be nonzero"));
    }
    match group {
        "GSpinOdd" => GSpinOddParam::new(chi, mu)
            .map(GSpinParam::Odd)
            .map_err(|e| JsonError::new(path, e.to_string())),
        "GSpinEven" => GSpinEvenParam::new(chi, mu)
            .map(GSpinParam::Even)
            .map_err(|e| JsonError::new(path, e.to_string())),
        other => Err(JsonError::new(
            format!("{path}/group"),
            format!("unknown group {other:?}, expected GSpinOdd or GSpinEven"),
        )),
    }
}

pub fn gspin_to_value(p: &GSpinParam) -> Value {
    let (group, n, chi, mu, mode) = match p {
        GSpinParam::Odd(c) => ("GSpinOdd", c.n(), c.chi(), c.mu(), c.mode()),
        GSpinParam::Even(c) => ("GSpinEven", c.n(), c.chi(), c.mu(), c.mode()),
    };
    let mut m = Map::new();
    m.insert("schema".to_string(), json!(SCHEMA_VERSION));
    m.insert("group".to_string(), json!(group));
    m.insert("n".to_string(), json!(n));
    m.insert("chi".to_string(), scalar_array_to_value(chi));
    m.insert("mu".to_string(), scalar_to_value(mu));
    m.insert("mode".to_string(), json!(mode.to_string()));
    Value::Object(m)
}

pub fn multiset_to_value(e: &EigenMultiset) -> Value {
    scalar_array_to_value(e.entries())
}

pub fn multiset_from_value(
    v: &Value,
    path: &str,
    mode: ScalarMode,
) -> Result<EigenMultiset, JsonError> {
    Ok(EigenMultiset::new(scalar_array_from_value(v, path, mode)?))
}

// ---- Arthur parameters --------------------------------------------------

fn selfdual_from_value(v: &Value, path: &str) -> Result<SelfDualType, JsonError> {
    match as_str(v, path)? {
        "orthogonal" => Ok(SelfDualType::Orthogonal),
        "symplectic" => Ok(SelfDualType::Symplectic),
        "none" => Ok(SelfDualType::NotSelfDual),
        other => Err(JsonError::new(
            path,
            format!("unknown self-duality {other:?}, expected orthogonal|symplectic|none"),
        )),
    }
}

pub fn constituent_from_value(
    v: &Value,
    path: &str,
    mode: ScalarMode,
) -> Result<CuspConstituent, JsonError> {
    check_schema(v, path)?;
    let label = as_str(field(v, path, "label")?, &format!("{path}/label"))?;
    let degree = as_u64(field(v, path, "degree")?, &format!("{path}/degree"))? as usize;
    let selfdual = selfdual_from_value(field(v, path, "selfdual")?, &format!("{path}/selfdual"))?;
    let mut pi = CuspConstituent::new(label, degree, selfdual)
        .map_err(|e| JsonError::new(format!("{path}/degree"), e.to_string()))?;
    if let Some(e) = opt_field(v, "epsilon") {
        let path = format!("{path}/epsilon");
        let sign = e
            .as_i64()
            .filter(|s| *s == 1 || *s == -1)
            .ok_or_else(|| JsonError::new(&path, "expected 1 or -1"))?;
        pi = pi.with_epsilon(sign as i8);
    }
    if let Some(c) = opt_field(v, "central_char") {
        pi = pi.with_central_char(as_str(c, &format!("{path}/central_char"))?);
    }
    if let Some(s) = opt_field(v, "satake") {
        let spath = format!("{path}/satake");
        let obj = s
            .as_object()
            .ok_or_else(|| JsonError::new(&spath, "expected an object keyed by primes"))?;
        for (key, data) in obj {
            let epath = format!("{spath}/{key}");
            let prime: u64 = key
                .parse()
                .map_err(|_| JsonError::new(&epath, format!("key {key:?} is not a prime")))?;
            let eigen = multiset_from_value(data, &epath, mode)?;
            pi = pi
                .with_satake(prime, eigen)
                .map_err(|e| JsonError::new(&epath, e.to_string()))?;
        }
    }
    Ok(pi)
}

pub fn constituent_body(pi: &CuspConstituent) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("label".to_string(), json!(pi.label()));
    m.insert("degree".to_string(), json!(pi.degree()));
    m.insert("selfdual".to_string(), json!(pi.selfdual().to_string()));
    if let Some(e) = pi.epsilon() {
        m.insert("epsilon".to_string(), json!(e));
    }
    if let Some(c) = pi.central_char() {
        m.insert("central_char".to_string(), json!(c));
    }
    let satake: Map<String, Value> = pi
        .primes()
        .map(|p| {
            let data = pi.satake_at(p).expect("primes() lists stored data");
            (p.to_string(), multiset_to_value(data))
        })
        .collect();
    if !satake.is_empty() {
        m.insert("satake".to_string(), Value::Object(satake));
    }
    m
}

pub fn constituent_to_value(pi: &CuspConstituent) -> Value {
    Value::Object(constituent_body(pi))
}

/// Bare form: array of summands, each a constituent plus its SL(2)
/// dimension `d`.
pub fn arthur_from_value(
    v: &Value,
    path: &str,
    mode: ScalarMode,
) -> Result<ArthurParam, JsonError> {
    let (body, path) = open_envelope(v, "summands", path)?;
    let arr = as_array(body, &path)?;
    let mut summands = Vec::with_capacity(arr.len());
    for (i, s) in arr.iter().enumerate() {
        let spath = format!("{path}/{i}");
        let pi = constituent_from_value(s, &spath, mode)?;
        let d = as_u64(field(s, &spath, "d")?, &format!("{spath}/d"))? as usize;
        if d == 0 {
            return Err(JsonError::new(format!("{spath}/d"), "d must be at least 1"));
        }
        summands.push(ArthurSummand::new(pi, d));
    }
    Ok(ArthurParam::new(summands))
}

pub fn arthur_to_value(p: &ArthurParam) -> Value {
    let body: Vec<Value> = p
        .summands()
        .iter()
        .map(|s| {
            let mut m = constituent_body(&s.pi);
            m.insert("d".to_string(), json!(s.d));
            Value::Object(m)
        })
        .collect();
    envelope("summands", Value::Array(body))
}

/// Tagged union keyed by `"kind"`.
pub fn shape_from_value(
    v: &Value,
    path: &str,
    mode: ScalarMode,
) -> Result<SiegelStdShape, JsonError> {
    check_schema(v, path)?;
    let kind = as_str(field(v, path, "kind")?, &format!("{path}/kind"))?;
    let sub = |name: &str| -> Result<CuspConstituent, JsonError> {
        constituent_from_value(field(v, path, name)?, &format!("{path}/{name}"), mode)
    };
    let shape = match kind {
        "generic-cuspidal" => SiegelStdShape::GenericCuspidal {
            pi: sub("pi")?,
            g2: as_bool(field(v, path, "g2")?, &format!("{path}/g2"))?,
        },
        "endoscopic-tempered" => SiegelStdShape::EndoscopicTempered {
            pi1: sub("pi1")?,
            pi2: sub("pi2")?,
            pi3: sub("pi3")?,
        },
        "non-tempered" => SiegelStdShape::NonTempered {
            pi1: sub("pi1")?,
            pi3: sub("pi3")?,
        },
        other => {
            return Err(JsonError::new(
                format!("{path}/kind"),
                format!(
                    "unknown shape kind {other:?}, expected generic-cuspidal|endoscopic-tempered|non-tempered"
                ),
            ))
        }
    };
    shape
        .validate()
        .map_err(|e| JsonError::new(path, e.to_string()))?;
    Ok(shape)
}

pub fn shape_to_value(s: &SiegelStdShape) -> Value {
    let mut m = Map::new();
    m.insert("schema".to_string(), json!(SCHEMA_VERSION));
    match s {
        SiegelStdShape::GenericCuspidal { pi, g2 } => {
            m.insert("kind".to_string(), json!("generic-cuspidal"));
            m.insert("pi".to_string(), constituent_to_value(pi));
            m.insert("g2".to_string(), json!(g2));
        }
        SiegelStdShape::EndoscopicTempered { pi1, pi2, pi3 } => {
            m.insert("kind".to_string(), json!("endoscopic-tempered"));
            m.insert("pi1".to_string(), constituent_to_value(pi1));
            m.insert("pi2".to_string(), constituent_to_value(pi2));
            m.insert("pi3".to_string(), constituent_to_value(pi3));
        }
        SiegelStdShape::NonTempered { pi1, pi3 } => {
            m.insert("kind".to_string(), json!("non-tempered"));
            m.insert("pi1".to_string(), constituent_to_value(pi1));
            m.insert("pi3".to_string(), constituent_to_value(pi3));
        }
    }
    Value::Object(m)
}

// ---- L-factors ----------------------------------------------------------

/// `{"p":…,"coeffs":[…]}`, constant coefficient first.
pub fn factor_from_value(
    v: &Value,
    path: &str,
    mode: ScalarMode,
) -> Result<LocalFactor, JsonError> {
    check_schema(v, path)?;
    let p = as_u64(field(v, path, "p")?, &format!("{path}/p"))?;
    let coeffs = scalar_array_from_value(field(v, path, "coeffs")?, &format!("{path}/coeffs"), mode)?;
    if coeffs.is_empty() {
        return Err(JsonError::new(
            format!("{path}/coeffs"),
            "a factor has at least its constant coefficient",
        ));
    }
    Ok(LocalFactor::from_coeffs(p, coeffs))
}

pub fn factor_to_value(f: &LocalFactor) -> Value {
    let mut m = Map::new();
    m.insert("schema".to_string(), json!(SCHEMA_VERSION));
    m.insert("p".to_string(), json!(f.p()));
    m.insert("coeffs".to_string(), scalar_array_to_value(f.coeffs()));
    Value::Object(m)
}

pub fn report_to_value(r: &EulerReport) -> Value {
    let mut m = Map::new();
    m.insert("schema".to_string(), json!(SCHEMA_VERSION));
    m.insert("value".to_string(), json!([r.value.re, r.value.im]));
    m.insert("cutoff".to_string(), json!(r.cutoff));
    m.insert("primes_used".to_string(), json!(r.primes_used));
    m.insert("tail_estimate".to_string(), json!(r.tail_estimate));
    if let Some(w) = &r.warning {
        m.insert("warning".to_string(), json!(w));
    }
    Value::Object(m)
}
