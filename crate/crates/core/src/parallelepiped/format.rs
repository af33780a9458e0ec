//! The `isoped/1` JSON file format.

use super::gadget::{
    assemble_dense, dense_from_weighted, exact_margin_of, l1_family, profile_weighted_rows, GadgetProvenance,
    IsolatingParallelepiped, WeightedGadgetRow,
};
use super::profile::WeightProfile;
use super::ParallelepipedError;
use crate::exactnum::{format_rational, parse_rational, NormExponent, Scalar};
use serde_json::{json, Map, Value};

pub const ISOPED_FORMAT: &str = "isoped/1";

fn scalar_str(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

fn f64_strs(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn isoped_to_json(g: &IsolatingParallelepiped) -> Value {
    let mut obj = Map::new();
    obj.insert("format".into(), json!(ISOPED_FORMAT));
    obj.insert("p".into(), json!(g.p.to_string()));
    obj.insert("k".into(), json!(g.k));
    obj.insert("provenance".into(), json!(g.provenance.as_str()));
    if let Some(prof) = &g.profile {
        obj.insert("alphas".into(), Value::Array(prof.alphas.iter().map(scalar_str).collect()));
        obj.insert("t_star".into(), scalar_str(&prof.t_star));
        obj.insert("epsilon".into(), scalar_str(&prof.epsilon));
    }
    obj.insert("margin".into(), scalar_str(&g.margin));
    if let Some(rows) = &g.weighted {
        let rows: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "weight": format_rational(&r.weight),
                    "row": r.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
                    "target": format_rational(&r.target),
                })
            })
            .collect();
        obj.insert("weighted".into(), Value::Array(rows));
    }
    let v: Vec<Value> = g.v.iter().map(|r| f64_strs(r)).collect();
    obj.insert("dense".into(), json!({ "V": v, "t": f64_strs(&g.t) }));
    Value::Object(obj)
}

pub fn write_isoped(g: &IsolatingParallelepiped) -> String {
    let mut s = serde_json::to_string_pretty(&isoped_to_json(g)).expect("json values serialize");
    s.push('\n');
    s
}

fn ferr(path: &str, msg: impl Into<String>) -> ParallelepipedError {
    ParallelepipedError::Format(format!("{path}: {}", msg.into()))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, ParallelepipedError> {
    obj.get(key).ok_or_else(|| ferr(key, "missing field"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, ParallelepipedError> {
    v.as_str().ok_or_else(|| ferr(path, "expected a string"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, ParallelepipedError> {
    v.as_array().ok_or_else(|| ferr(path, "expected an array"))
}

fn parse_scalar(v: &Value, p: NormExponent, path: &str) -> Result<Scalar, ParallelepipedError> {
    let s = as_str(v, path)?;
    match p {
        NormExponent::Exact(_) => parse_rational(s).map(Scalar::Exact).map_err(|e| ferr(path, e.to_string())),
        _ => s.parse::<f64>().map(Scalar::Float).map_err(|e| ferr(path, e.to_string())),
    }
}

fn parse_f64(v: &Value, path: &str) -> Result<f64, ParallelepipedError> {
    as_str(v, path)?.parse::<f64>().map_err(|e| ferr(path, e.to_string()))
}

fn parse_dense(obj: &Map<String, Value>, k: usize) -> Result<Option<(Vec<Vec<f64>>, Vec<f64>)>, ParallelepipedError> {
    let Some(d) = obj.get("dense") else { return Ok(None) };
    let d = d.as_object().ok_or_else(|| ferr("dense", "expected an object"))?;
    let rows = as_array(d.get("V").ok_or_else(|| ferr("dense.V", "missing field"))?, "dense.V")?;
    let mut v = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let path = format!("dense.V[{i}]");
        let r = as_array(r, &path)?;
        if r.len() != k {
            return Err(ferr(&path, format!("expected {k} entries")));
        }
        v.push(r.iter().enumerate().map(|(j, x)| parse_f64(x, &format!("{path}[{j}]"))).collect::<Result<Vec<_>, _>>()?);
    }
    let t = as_array(d.get("t").ok_or_else(|| ferr("dense.t", "missing field"))?, "dense.t")?;
    let t = t.iter().enumerate().map(|(i, x)| parse_f64(x, &format!("dense.t[{i}]"))).collect::<Result<Vec<_>, _>>()?;
    if t.len() != v.len() {
        return Err(ferr("dense.t", "length differs from dense.V"));
    }
    Ok(Some((v, t)))
}

fn parse_weighted(obj: &Map<String, Value>, k: usize) -> Result<Option<Vec<WeightedGadgetRow>>, ParallelepipedError> {
    let Some(w) = obj.get("weighted") else { return Ok(None) };
    let mut out = Vec::new();
    for (i, r) in as_array(w, "weighted")?.iter().enumerate() {
        let path = format!("weighted[{i}]");
        let r = r.as_object().ok_or_else(|| ferr(&path, "expected an object"))?;
        let q = |v: &Value, p: &str| parse_rational(as_str(v, p)?).map_err(|e| ferr(p, e.to_string()));
        let wp = format!("{path}.weight");
        let weight = q(r.get("weight").ok_or_else(|| ferr(&wp, "missing field"))?, &wp)?;
        let rp = format!("{path}.row");
        let row = as_array(r.get("row").ok_or_else(|| ferr(&rp, "missing field"))?, &rp)?;
        if row.len() != k {
            return Err(ferr(&rp, format!("expected {k} entries")));
        }
        let coeffs = row.iter().enumerate().map(|(j, x)| q(x, &format!("{rp}[{j}]"))).collect::<Result<Vec<_>, _>>()?;
        let tp = format!("{path}.target");
        let target = q(r.get("target").ok_or_else(|| ferr(&tp, "missing field"))?, &tp)?;
        out.push(WeightedGadgetRow { weight, coeffs, target });
    }
    Ok(Some(out))
}

pub fn isoped_from_json(v: &Value) -> Result<IsolatingParallelepiped, ParallelepipedError> {
    let obj = v.as_object().ok_or_else(|| ferr("$", "expected an object"))?;
    let format = as_str(field(obj, "format")?, "format")?;
    if format != ISOPED_FORMAT {
        return Err(ferr("format", format!("unsupported format `{format}`")));
    }
    let p: NormExponent = as_str(field(obj, "p")?, "p")?.parse().map_err(|e: crate::exactnum::ExactNumError| ferr("p", e.to_string()))?;
    if !p.is_finite() {
        return Err(ferr("p", "gadgets need a finite exponent"));
    }
    let k = field(obj, "k")?.as_u64().ok_or_else(|| ferr("k", "expected a non-negative integer"))? as usize;
    if k < 2 {
        return Err(ferr("k", "must be at least 2"));
    }
    let prov_s = as_str(field(obj, "provenance")?, "provenance")?;
    let provenance = GadgetProvenance::parse(prov_s).ok_or_else(|| ferr("provenance", format!("unknown value `{prov_s}`")))?;
    match provenance {
        GadgetProvenance::L1Family => {
            if p != NormExponent::Exact(1) {
                return Err(ferr("p", "the l1 family requires p = 1"));
            }
            l1_family(k)
        }
        GadgetProvenance::WeightProfile => {
            let alphas = as_array(field(obj, "alphas")?, "alphas")?;
            if alphas.len() != k + 1 {
                return Err(ferr("alphas", format!("expected {} entries", k + 1)));
            }
            let alphas = alphas
                .iter()
                .enumerate()
                .map(|(i, a)| parse_scalar(a, p, &format!("alphas[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let t_star = parse_scalar(field(obj, "t_star")?, p, "t_star")?;
            let epsilon = parse_scalar(field(obj, "epsilon")?, p, "epsilon")?;
            let exact = p.as_exact().is_some();
            let profile = WeightProfile { k, p, alphas, t_star, epsilon, exact };
            let mut g = assemble_dense(&profile);
            if let Some((v, t)) = parse_dense(obj, k)? {
                g.v = v;
                g.t = t;
            }
            g.weighted = profile_weighted_rows(&profile);
            Ok(g)
        }
        GadgetProvenance::Literal => {
            let weighted = parse_weighted(obj, k)?;
            let (v, t) = match (parse_dense(obj, k)?, &weighted) {
                (Some(d), _) => d,
                (None, Some(w)) => dense_from_weighted(w, p.as_f64()),
                (None, None) => return Err(ferr("dense", "literal gadgets need dense or weighted rows")),
            };
            let margin = match (&weighted, p) {
                (Some(w), NormExponent::Exact(pe)) => Scalar::Exact(exact_margin_of(w, pe)),
                _ => {
                    let pf = p.as_f64();
                    Scalar::Float(t.iter().map(|x| x.abs().powf(pf)).sum::<f64>() - 1.0)
                }
            };
            Ok(IsolatingParallelepiped { k, p, v, t, margin, provenance, profile: None, weighted })
        }
    }
}

pub fn read_isoped(text: &str) -> Result<IsolatingParallelepiped, ParallelepipedError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ParallelepipedError::Format(e.to_string()))?;
    isoped_from_json(&v)
}

/// The bundled literal `(p, k) = (3, 3)` gadget with `|t*|_3^3 = 3/2`.
pub const FIGURE2_JSON: &str = include_str!("../../data/figure2.isoped.json");

pub fn figure2() -> IsolatingParallelepiped {
    read_isoped(FIGURE2_JSON).expect("bundled gadget parses")
}
