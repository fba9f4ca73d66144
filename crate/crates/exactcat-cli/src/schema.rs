//! JSON layouts for every file the tool reads or writes. All integers are
//! decimal strings so no consumer ever touches floating point; maps
//! serialize with sorted keys, which makes repeated runs byte-identical.
//!
//! Load errors split into two classes: `Schema` for files that do not even
//! have the right shape, and `Model` for well-shaped files whose content
//! fails exact validation. Command exit codes are keyed to this split.

use std::fmt;
use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use exactcat::axioms::AxiomReport;
use exactcat::category::{IsoCertificate, MorphData, Morphism, Object, Payload};
use exactcat::exact::KernelCokernelPair;
use exactcat::mat::Mat;
use exactcat::models::cyclicmod::CyclicModObject;
use exactcat::models::linrep::LinRepObject;
use exactcat::models::Model;
use exactcat::schanuel::Resolution;

pub const SCHEMA: &str = "exactcat/1";

#[derive(Debug)]
pub enum LoadError {
    Schema(String),
    Model(exactcat::Error),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Schema(s) => write!(f, "schema: {s}"),
            LoadError::Model(e) => write!(f, "{e}"),
        }
    }
}

type Load<T> = Result<T, LoadError>;

fn bad(msg: impl Into<String>) -> LoadError {
    LoadError::Schema(msg.into())
}

fn as_object<'a>(v: &'a Value, what: &str) -> Load<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| bad(format!("{what} must be a JSON object")))
}

fn field<'a>(m: &'a Map<String, Value>, name: &str) -> Load<&'a Value> {
    m.get(name)
        .ok_or_else(|| bad(format!("missing field {name:?}")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Load<&'a str> {
    v.as_str()
        .ok_or_else(|| bad(format!("{what} must be a string")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Load<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))
}

fn parse_u64(v: &Value, what: &str) -> Load<u64> {
    as_str(v, what)?
        .parse()
        .map_err(|_| bad(format!("{what} must be a decimal string")))
}

fn parse_usize(v: &Value, what: &str) -> Load<usize> {
    as_str(v, what)?
        .parse()
        .map_err(|_| bad(format!("{what} must be a decimal string")))
}

/// Checks the envelope fields every document carries.
fn check_envelope(m: &Map<String, Value>, kind: &str) -> Load<()> {
    let schema = as_str(field(m, "schema")?, "schema")?;
    if schema != SCHEMA {
        return Err(bad(format!(
            "unsupported schema {schema:?}, expected {SCHEMA:?}"
        )));
    }
    let found = as_str(field(m, "kind")?, "kind")?;
    if found != kind {
        return Err(bad(format!("kind {found:?}, expected {kind:?}")));
    }
    Ok(())
}

pub fn model_to_json(model: &Model) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), json!(model.name()));
    match model.base() {
        Model::LinRep { p, n } => {
            m.insert("p".into(), json!(p.to_string()));
            m.insert("n".into(), json!(n.to_string()));
        }
        Model::CyclicMod { p, k } => {
            m.insert("p".into(), json!(p.to_string()));
            m.insert("k".into(), json!(k.to_string()));
        }
        Model::Split(_) => unreachable!("base strips the wrapper"),
    }
    Value::Object(m)
}

pub fn model_from_json(v: &Value) -> Load<Model> {
    let m = as_object(v, "model")?;
    let name = as_str(field(m, "name")?, "model name")?;
    let (split, base_name) = match name.strip_prefix("splitex:") {
        Some(inner) => (true, inner),
        None => (false, name),
    };
    let p = parse_u64(field(m, "p")?, "p")?;
    let base = match base_name {
        "linrep" => {
            let n = parse_usize(field(m, "n")?, "n")?;
            Model::linrep(p, n).map_err(LoadError::Model)?
        }
        "cyclicmod" => {
            let k = parse_u64(field(m, "k")?, "k")? as u32;
            Model::cyclicmod(p, k).map_err(LoadError::Model)?
        }
        other => return Err(bad(format!("unknown model {other:?}"))),
    };
    if split {
        Model::split(base).map_err(LoadError::Model)
    } else {
        Ok(base)
    }
}

pub fn mat_to_json(m: &Mat) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| json!(m.get(i, j).to_string()))
                    .collect(),
            )
        })
        .collect();
    json!({
        "rows": m.rows().to_string(),
        "cols": m.cols().to_string(),
        "entries": entries,
    })
}

pub fn mat_from_json(v: &Value, p: u64, k: u32) -> Load<Mat> {
    let m = as_object(v, "matrix")?;
    let rows = parse_usize(field(m, "rows")?, "rows")?;
    let cols = parse_usize(field(m, "cols")?, "cols")?;
    let entry_rows = as_array(field(m, "entries")?, "entries")?;
    if entry_rows.len() != rows {
        return Err(bad(format!(
            "entries has {} rows, header says {rows}",
            entry_rows.len()
        )));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in entry_rows {
        let row = as_array(row, "matrix row")?;
        if row.len() != cols {
            return Err(bad(format!(
                "matrix row has {} entries, header says {cols}",
                row.len()
            )));
        }
        for e in row {
            data.push(parse_u64(e, "matrix entry")?);
        }
    }
    Ok(Mat::new(rows, cols, p, k, data))
}

pub fn object_to_json(o: &Object) -> Value {
    match o.payload() {
        Payload::LinRep(r) => {
            let dims: Vec<Value> = r.dims().iter().map(|d| json!(d.to_string())).collect();
            let maps: Vec<Value> = r.maps().iter().map(mat_to_json).collect();
            json!({ "dims": dims, "maps": maps })
        }
        Payload::CyclicMod(c) => {
            let exps: Vec<Value> = c.exponents().iter().map(|e| json!(e.to_string())).collect();
            json!({ "exponents": exps })
        }
    }
}

pub fn object_from_json(v: &Value, model: &Model) -> Load<Object> {
    let m = as_object(v, "object")?;
    let (p, k) = model.mat_params();
    let payload = match model.base() {
        Model::LinRep { .. } => {
            let dims = as_array(field(m, "dims")?, "dims")?
                .iter()
                .map(|d| parse_usize(d, "dimension"))
                .collect::<Load<Vec<usize>>>()?;
            let maps = as_array(field(m, "maps")?, "maps")?
                .iter()
                .map(|mv| mat_from_json(mv, p, k))
                .collect::<Load<Vec<Mat>>>()?;
            Payload::LinRep(LinRepObject::new(dims, maps))
        }
        Model::CyclicMod { .. } => {
            let exps = as_array(field(m, "exponents")?, "exponents")?
                .iter()
                .map(|e| parse_u64(e, "exponent").map(|x| x as u32))
                .collect::<Load<Vec<u32>>>()?;
            Payload::CyclicMod(CyclicModObject::new(exps))
        }
        Model::Split(_) => unreachable!("base strips the wrapper"),
    };
    Object::new(model.clone(), payload).map_err(LoadError::Model)
}

pub fn morphism_to_json(f: &Morphism) -> Value {
    let matrices: Vec<Value> = match f.data() {
        MorphData::LinRep(ms) => ms.iter().map(mat_to_json).collect(),
        MorphData::CyclicMod(m) => vec![mat_to_json(m)],
    };
    json!({
        "domain": object_to_json(f.domain()),
        "codomain": object_to_json(f.codomain()),
        "matrices": matrices,
    })
}

pub fn morphism_from_json(v: &Value, model: &Model) -> Load<Morphism> {
    let m = as_object(v, "morphism")?;
    let domain = object_from_json(field(m, "domain")?, model)?;
    let codomain = object_from_json(field(m, "codomain")?, model)?;
    let (p, k) = model.mat_params();
    let mats = as_array(field(m, "matrices")?, "matrices")?
        .iter()
        .map(|mv| mat_from_json(mv, p, k))
        .collect::<Load<Vec<Mat>>>()?;
    let data = match model.base() {
        Model::LinRep { .. } => MorphData::LinRep(mats),
        Model::CyclicMod { .. } => {
            let [mat] = <[Mat; 1]>::try_from(mats)
                .map_err(|v| bad(format!("expected exactly 1 matrix, found {}", v.len())))?;
            MorphData::CyclicMod(mat)
        }
        Model::Split(_) => unreachable!("base strips the wrapper"),
    };
    Morphism::new(domain, codomain, data).map_err(LoadError::Model)
}

pub fn object_file_to_json(o: &Object) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": "object",
        "model": model_to_json(o.model()),
        "payload": object_to_json(o),
    })
}

pub fn object_file_from_json(v: &Value) -> Load<Object> {
    let m = as_object(v, "object file")?;
    check_envelope(m, "object")?;
    let model = model_from_json(field(m, "model")?)?;
    object_from_json(field(m, "payload")?, &model)
}

pub fn pair_to_json(pair: &KernelCokernelPair) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": "pair",
        "model": model_to_json(pair.middle().model()),
        "mono": morphism_to_json(pair.mono()),
        "epi": morphism_to_json(pair.epi()),
    })
}

pub fn pair_from_json(v: &Value) -> Load<KernelCokernelPair> {
    let m = as_object(v, "pair file")?;
    check_envelope(m, "pair")?;
    let model = model_from_json(field(m, "model")?)?;
    let mono = morphism_from_json(field(m, "mono")?, &model)?;
    let epi = morphism_from_json(field(m, "epi")?, &model)?;
    KernelCokernelPair::new(mono, epi).map_err(LoadError::Model)
}

#[derive(Clone, Debug)]
pub struct Provenance {
    pub command: String,
    pub seed: Option<u64>,
}

pub fn certificate_to_json(cert: &IsoCertificate, provenance: &Provenance) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": "certificate",
        "model": model_to_json(cert.forward().model()),
        "forward": morphism_to_json(cert.forward()),
        "backward": morphism_to_json(cert.backward()),
        "provenance": {
            "command": provenance.command,
            "seed": provenance.seed.map_or(Value::Null, |s| json!(s.to_string())),
            "tool_version": env!("CARGO_PKG_VERSION"),
        },
    })
}

/// Rebuilds the certificate and re-verifies both composites from the raw
/// matrix data; a certificate that fails verification counts as a model
/// error, not a schema error.
pub fn certificate_from_json(v: &Value) -> Load<IsoCertificate> {
    let m = as_object(v, "certificate file")?;
    check_envelope(m, "certificate")?;
    let model = model_from_json(field(m, "model")?)?;
    let forward = morphism_from_json(field(m, "forward")?, &model)?;
    let backward = morphism_from_json(field(m, "backward")?, &model)?;
    IsoCertificate::new(forward, backward).map_err(LoadError::Model)
}

pub fn resolution_to_json(res: &Resolution) -> Value {
    let steps: Vec<Value> = res
        .pairs()
        .iter()
        .enumerate()
        .map(|(i, pair)| {
            json!({
                "index": i.to_string(),
                "injective": object_to_json(pair.middle()),
                "syzygy": object_to_json(pair.right()),
                "mono": morphism_to_json(pair.mono()),
                "epi": morphism_to_json(pair.epi()),
            })
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "kind": "resolution",
        "model": model_to_json(res.base().model()),
        "base": object_to_json(res.base()),
        "depth": res.depth().to_string(),
        "steps": steps,
    })
}

/// Re-validates every ladder step; returns the verified pairs.
pub fn resolution_from_json(v: &Value) -> Load<Vec<KernelCokernelPair>> {
    let m = as_object(v, "resolution file")?;
    check_envelope(m, "resolution")?;
    let model = model_from_json(field(m, "model")?)?;
    let depth = parse_usize(field(m, "depth")?, "depth")?;
    let steps = as_array(field(m, "steps")?, "steps")?;
    if steps.len() != depth {
        return Err(bad(format!("{} steps, header says {depth}", steps.len())));
    }
    steps
        .iter()
        .map(|s| {
            let sm = as_object(s, "step")?;
            let mono = morphism_from_json(field(sm, "mono")?, &model)?;
            let epi = morphism_from_json(field(sm, "epi")?, &model)?;
            KernelCokernelPair::new(mono, epi).map_err(LoadError::Model)
        })
        .collect()
}

pub fn report_to_json(report: &AxiomReport) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "passed": c.passed,
                "counterexample": c
                    .counterexample
                    .as_ref()
                    .map_or(Value::Null, |s| json!(s)),
            })
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "kind": "axiom-report",
        "model": model_to_json(&report.model),
        "mutation": report
            .mutation
            .map_or(Value::Null, |m| json!(m.name())),
        "samples": report.samples.to_string(),
        "seed": report.seed.to_string(),
        "all_passed": report.all_passed(),
        "checks": checks,
    })
}

/// Pretty-printed with a trailing newline; sorted keys come from the JSON
/// map representation, so identical values give identical bytes.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

pub fn write_file(path: &Path, v: &Value) -> std::io::Result<()> {
    fs::write(path, render(v))
}

pub fn read_file(path: &Path) -> Load<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
}
