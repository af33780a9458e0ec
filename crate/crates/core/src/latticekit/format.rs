//! `cvp-instance/1` (exact) and `cvp-dense/1` (float export) JSON formats.

use super::densify::DenseInstance;
use super::instance::{LatticeInstance, ProblemKind, Provenance, StageRecord, WeightedRowGroup};
use super::LatticeError;
use crate::exactnum::{format_rational, parse_rational, NormExponent, Rational};
use num_traits::Zero;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

pub const INSTANCE_FORMAT: &str = "cvp-instance/1";
pub const DENSE_FORMAT: &str = "cvp-dense/1";

fn rstr(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn rvec(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rstr).collect())
}

fn str_map(m: &BTreeMap<String, String>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect())
}

pub fn provenance_to_json(p: &Provenance) -> Value {
    let mut obj = Map::new();
    obj.insert("reduction".into(), json!(p.reduction));
    obj.insert("anchor".into(), json!(p.anchor));
    obj.insert("params".into(), str_map(&p.params));
    if let Some(g) = &p.gadget_sha256 {
        obj.insert("gadget_sha256".into(), json!(g));
    }
    if let Some(s) = &p.source_sha256 {
        obj.insert("source_sha256".into(), json!(s));
    }
    if let Some(seed) = p.seed {
        obj.insert("seed".into(), json!(seed));
    }
    if !p.stages.is_empty() {
        let stages: Vec<Value> = p
            .stages
            .iter()
            .map(|s| json!({"name": s.name, "params": str_map(&s.params), "output_sha256": s.output_sha256}))
            .collect();
        obj.insert("stages".into(), Value::Array(stages));
    }
    Value::Object(obj)
}

pub fn instance_to_json(inst: &LatticeInstance) -> Value {
    let mut obj = Map::new();
    obj.insert("format".into(), json!(INSTANCE_FORMAT));
    obj.insert("kind".into(), json!(inst.kind.as_str()));
    obj.insert("norm".into(), json!(inst.norm.to_string()));
    obj.insert("rank".into(), json!(inst.rank));
    let groups: Vec<Value> = inst
        .groups
        .iter()
        .map(|g| {
            let mut go = Map::new();
            go.insert("weight".into(), rstr(&g.weight));
            go.insert("rows".into(), Value::Array(g.rows.iter().map(|r| rvec(r)).collect()));
            if inst.kind == ProblemKind::Cvp {
                go.insert("target".into(), rvec(&g.target));
            }
            Value::Object(go)
        })
        .collect();
    obj.insert("groups".into(), Value::Array(groups));
    let key = if inst.norm.is_finite() { "threshold_pow" } else { "threshold" };
    obj.insert(key.into(), rstr(&inst.threshold));
    obj.insert("provenance".into(), provenance_to_json(&inst.provenance));
    Value::Object(obj)
}

pub fn write_instance(inst: &LatticeInstance) -> String {
    let mut s = serde_json::to_string_pretty(&instance_to_json(inst)).expect("json values serialize");
    s.push('\n');
    s
}

fn ferr(path: &str, msg: impl Into<String>) -> LatticeError {
    LatticeError::Format { path: path.to_string(), msg: msg.into() }
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, LatticeError> {
    obj.get(key).ok_or_else(|| ferr(path, "missing field"))
}

fn s_of<'a>(v: &'a Value, path: &str) -> Result<&'a str, LatticeError> {
    v.as_str().ok_or_else(|| ferr(path, "expected a string"))
}

fn arr_of<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, LatticeError> {
    v.as_array().ok_or_else(|| ferr(path, "expected an array"))
}

fn q_of(v: &Value, path: &str) -> Result<Rational, LatticeError> {
    parse_rational(s_of(v, path)?).map_err(|e| ferr(path, e.to_string()))
}

fn qvec(v: &Value, path: &str) -> Result<Vec<Rational>, LatticeError> {
    arr_of(v, path)?.iter().enumerate().map(|(i, x)| q_of(x, &format!("{path}[{i}]"))).collect()
}

fn smap(v: &Value, path: &str) -> Result<BTreeMap<String, String>, LatticeError> {
    let o = v.as_object().ok_or_else(|| ferr(path, "expected an object"))?;
    o.iter()
        .map(|(k, x)| Ok((k.clone(), s_of(x, &format!("{path}.{k}"))?.to_string())))
        .collect()
}

fn provenance_from_json(v: &Value) -> Result<Provenance, LatticeError> {
    let o = v.as_object().ok_or_else(|| ferr("provenance", "expected an object"))?;
    let opt_s = |k: &str| -> Result<Option<String>, LatticeError> {
        o.get(k).map(|x| s_of(x, &format!("provenance.{k}")).map(str::to_string)).transpose()
    };
    let seed = o
        .get("seed")
        .map(|x| x.as_u64().ok_or_else(|| ferr("provenance.seed", "expected an unsigned integer")))
        .transpose()?;
    let mut stages = Vec::new();
    if let Some(st) = o.get("stages") {
        for (i, s) in arr_of(st, "provenance.stages")?.iter().enumerate() {
            let path = format!("provenance.stages[{i}]");
            let so = s.as_object().ok_or_else(|| ferr(&path, "expected an object"))?;
            stages.push(StageRecord {
                name: s_of(get(so, "name", &format!("{path}.name"))?, &format!("{path}.name"))?.to_string(),
                params: smap(get(so, "params", &format!("{path}.params"))?, &format!("{path}.params"))?,
                output_sha256: s_of(get(so, "output_sha256", &format!("{path}.output_sha256"))?, &format!("{path}.output_sha256"))?
                    .to_string(),
            });
        }
    }
    Ok(Provenance {
        reduction: s_of(get(o, "reduction", "provenance.reduction")?, "provenance.reduction")?.to_string(),
        anchor: opt_s("anchor")?.unwrap_or_default(),
        params: o.get("params").map(|p| smap(p, "provenance.params")).transpose()?.unwrap_or_default(),
        gadget_sha256: opt_s("gadget_sha256")?,
        source_sha256: opt_s("source_sha256")?,
        seed,
        stages,
    })
}

pub fn instance_from_json(v: &Value) -> Result<LatticeInstance, LatticeError> {
    let o = v.as_object().ok_or_else(|| ferr("$", "expected an object"))?;
    let format = s_of(get(o, "format", "format")?, "format")?;
    if format != INSTANCE_FORMAT {
        return Err(ferr("format", format!("unsupported format `{format}`")));
    }
    let kind = match s_of(get(o, "kind", "kind")?, "kind")? {
        "cvp" => ProblemKind::Cvp,
        "svp" => ProblemKind::Svp,
        other => return Err(ferr("kind", format!("unknown kind `{other}`"))),
    };
    let norm: NormExponent = s_of(get(o, "norm", "norm")?, "norm")?.parse().map_err(|e: crate::exactnum::ExactNumError| ferr("norm", e.to_string()))?;
    let rank = get(o, "rank", "rank")?.as_u64().ok_or_else(|| ferr("rank", "expected an unsigned integer"))? as usize;
    let mut groups = Vec::new();
    for (gi, g) in arr_of(get(o, "groups", "groups")?, "groups")?.iter().enumerate() {
        let path = format!("groups[{gi}]");
        let go = g.as_object().ok_or_else(|| ferr(&path, "expected an object"))?;
        let weight = q_of(get(go, "weight", &format!("{path}.weight"))?, &format!("{path}.weight"))?;
        let rows_path = format!("{path}.rows");
        let rows = arr_of(get(go, "rows", &rows_path)?, &rows_path)?
            .iter()
            .enumerate()
            .map(|(ri, r)| qvec(r, &format!("{rows_path}[{ri}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let target = match (kind, go.get("target")) {
            (_, Some(t)) => qvec(t, &format!("{path}.target"))?,
            (ProblemKind::Svp, None) => vec![Rational::zero(); rows.len()],
            (ProblemKind::Cvp, None) => return Err(ferr(&format!("{path}.target"), "missing field")),
        };
        groups.push(WeightedRowGroup { weight, rows, target });
    }
    let key = if norm.is_finite() { "threshold_pow" } else { "threshold" };
    let threshold = q_of(get(o, key, key)?, key)?;
    let provenance = match o.get("provenance") {
        Some(p) => provenance_from_json(p)?,
        None => Provenance::default(),
    };
    let inst = LatticeInstance { kind, norm, rank, groups, threshold, provenance };
    inst.validate()?;
    Ok(inst)
}

pub fn read_instance(text: &str) -> Result<LatticeInstance, LatticeError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ferr("$", e.to_string()))?;
    instance_from_json(&v)
}

pub fn write_dense(d: &DenseInstance, digits: usize) -> String {
    let digits = digits.clamp(1, 17);
    let f = |x: &f64| Value::String(format!("{:.*e}", digits - 1, x));
    let v = json!({
        "format": DENSE_FORMAT,
        "kind": d.kind.as_str(),
        "norm": d.norm.to_string(),
        "rank": d.rank,
        "basis_rows": d.rows.iter().map(|r| Value::Array(r.iter().map(f).collect())).collect::<Vec<_>>(),
        "target": Value::Array(d.target.iter().map(f).collect()),
        "threshold": f(&d.threshold),
        "provenance": provenance_to_json(&d.provenance),
    });
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn sample() -> LatticeInstance {
        LatticeInstance {
            kind: ProblemKind::Cvp,
            norm: NormExponent::Exact(3),
            rank: 2,
            groups: vec![
                WeightedRowGroup::new(rat(7, 3), vec![vec![rat(1, 1), rat(-2, 5)]], vec![rat(1, 2)]),
                WeightedRowGroup::scaled_identity(2, rat(4, 1), rat(2, 1), rat(1, 1)),
            ],
            threshold: rat(29, 3),
            provenance: Provenance::new("demo", "demo-construction").param("k", 2),
        }
    }

    #[test]
    fn round_trip_bytes() {
        let mut i = sample();
        i.provenance.seed = Some(42);
        i.provenance.stages.push(StageRecord { name: "s".into(), params: BTreeMap::new(), output_sha256: "ab".into() });
        let text = write_instance(&i);
        let back = read_instance(&text).unwrap();
        assert_eq!(back, i);
        assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn threshold_key_depends_on_norm() {
        assert!(write_instance(&sample()).contains("\"threshold_pow\""));
        let mut i = sample();
        i.norm = NormExponent::Infinity;
        for g in &mut i.groups {
            g.weight = rat(1, 1);
        }
        let t = write_instance(&i);
        assert!(t.contains("\"threshold\"") && !t.contains("threshold_pow"));
        assert_eq!(read_instance(&t).unwrap(), i);
    }

    #[test]
    fn missing_norm_is_reported() {
        let mut v = instance_to_json(&sample());
        v.as_object_mut().unwrap().remove("norm");
        match instance_from_json(&v) {
            Err(LatticeError::Format { path, .. }) => assert_eq!(path, "norm"),
            other => panic!("unexpected {other:?}"),
        }
        let mut v = instance_to_json(&sample());
        v["groups"][0]["rows"][0][1] = json!("x");
        match instance_from_json(&v) {
            Err(LatticeError::Format { path, .. }) => assert_eq!(path, "groups[0].rows[0][1]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn svp_omits_targets() {
        let mut i = sample();
        i.kind = ProblemKind::Svp;
        for g in &mut i.groups {
            g.target = vec![Rational::zero(); g.rows.len()];
        }
        let t = write_instance(&i);
        assert!(!t.contains("\"target\""));
        assert_eq!(read_instance(&t).unwrap(), i);
    }
}
