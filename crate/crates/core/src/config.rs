//! JSON input files: spaces, functions, triples and contraction instances.
//!
//! Rational literals may be given as `"p/q"`, decimal strings, or JSON numbers;
//! all are parsed exactly. Nested `space` and function fields accept either an
//! inline object or a path relative to the referencing file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value as Json};

use crate::contraction::{
    make_preset, ContractionError, ContractionInstance, InstanceSpec, MapPiece, Preset, SelfMap, Variant,
};
use crate::functions::{CClassEntry, CClassSpec, FunctionSpec, Piece, Term, TripledSpec};
use crate::rational::{parse_rational, Rational};
use crate::spaces::{
    build_space, default_interval_step, sample_interval, Fallback, GeneralizedMetricSpace, PairDistance, Point,
    SpaceError,
};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}:{column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: field `{field}`: {message}")]
    Field {
        path: String,
        field: String,
        message: String,
    },
    #[error("{path}: {source}")]
    Space {
        path: String,
        #[source]
        source: SpaceError,
    },
    #[error("{path}: {source}")]
    Contraction {
        path: String,
        #[source]
        source: ContractionError,
    },
}

/// Parsing context: source file (for messages and relative paths) and the
/// optional interval-step override.
#[derive(Debug, Clone)]
struct Ctx {
    path: PathBuf,
    step: Option<Rational>,
}

impl Ctx {
    fn name(&self) -> String {
        self.path.display().to_string()
    }

    fn err(&self, field: &str, message: impl Into<String>) -> ConfigError {
        ConfigError::Field {
            path: self.name(),
            field: field.to_owned(),
            message: message.into(),
        }
    }

    fn resolve(&self, rel: &str) -> PathBuf {
        match self.path.parent() {
            Some(dir) => dir.join(rel),
            None => PathBuf::from(rel),
        }
    }
}

fn read_json(path: &Path) -> Result<Json, ConfigError> {
    let text = fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_json(&text, path)
}

fn parse_json(text: &str, path: &Path) -> Result<Json, ConfigError> {
    serde_json::from_str(text).map_err(|e| ConfigError::Json {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn object<'a>(ctx: &Ctx, field: &str, v: &'a Json) -> Result<&'a Map<String, Json>, ConfigError> {
    v.as_object().ok_or_else(|| ctx.err(field, "expected an object"))
}

fn array<'a>(ctx: &Ctx, field: &str, v: &'a Json) -> Result<&'a Vec<Json>, ConfigError> {
    v.as_array().ok_or_else(|| ctx.err(field, "expected an array"))
}

fn string<'a>(ctx: &Ctx, field: &str, v: &'a Json) -> Result<&'a str, ConfigError> {
    v.as_str().ok_or_else(|| ctx.err(field, "expected a string"))
}

fn rational(ctx: &Ctx, field: &str, v: &Json) -> Result<Rational, ConfigError> {
    let literal = match v {
        Json::String(s) => s.clone(),
        Json::Number(n) => n.to_string(),
        _ => return Err(ctx.err(field, "expected a rational literal")),
    };
    parse_rational(&literal).map_err(|e| ctx.err(field, e.to_string()))
}

fn required<'a>(ctx: &Ctx, obj: &'a Map<String, Json>, field: &str, prefix: &str) -> Result<&'a Json, ConfigError> {
    obj.get(field)
        .ok_or_else(|| ctx.err(&join(prefix, field), "missing required field"))
}

fn join(prefix: &str, field: &str) -> String {
    if prefix.is_empty() {
        field.to_owned()
    } else {
        format!("{prefix}.{field}")
    }
}

fn reject_unknown(ctx: &Ctx, obj: &Map<String, Json>, allowed: &[&str], prefix: &str) -> Result<(), ConfigError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(ctx.err(
            &join(prefix, k),
            format!("unknown field; expected one of {}", allowed.join(", ")),
        )),
        None => Ok(()),
    }
}

/// Follows a string value as a path to another JSON file.
fn inline_or_file(ctx: &Ctx, v: &Json) -> Result<(Json, Ctx), ConfigError> {
    match v {
        Json::String(rel) => {
            let path = ctx.resolve(rel);
            let json = read_json(&path)?;
            Ok((
                json,
                Ctx {
                    path,
                    step: ctx.step.clone(),
                },
            ))
        }
        other => Ok((other.clone(), ctx.clone())),
    }
}

fn space_from_json(ctx: &Ctx, v: &Json, prefix: &str) -> Result<GeneralizedMetricSpace, ConfigError> {
    let obj = object(ctx, prefix, v)?;
    reject_unknown(
        ctx,
        obj,
        &["points", "entries", "fallback", "claimed_s", "intervals"],
        prefix,
    )?;
    let mut points = Vec::new();
    if let Some(ps) = obj.get("points") {
        for (i, p) in array(ctx, &join(prefix, "points"), ps)?.iter().enumerate() {
            let f = format!("{}[{i}]", join(prefix, "points"));
            let po = object(ctx, &f, p)?;
            reject_unknown(ctx, po, &["label", "value"], &f)?;
            let value = rational(ctx, &join(&f, "value"), required(ctx, po, "value", &f)?)?;
            points.push(match po.get("label") {
                Some(l) => Point::new(string(ctx, &join(&f, "label"), l)?, value),
                None => Point::at(value),
            });
        }
    }
    if let Some(iv) = obj.get("intervals") {
        for (i, it) in array(ctx, &join(prefix, "intervals"), iv)?.iter().enumerate() {
            let f = format!("{}[{i}]", join(prefix, "intervals"));
            let io = object(ctx, &f, it)?;
            reject_unknown(ctx, io, &["from", "to", "step"], &f)?;
            let lo = rational(ctx, &join(&f, "from"), required(ctx, io, "from", &f)?)?;
            let hi = rational(ctx, &join(&f, "to"), required(ctx, io, "to", &f)?)?;
            let step = match (&ctx.step, io.get("step")) {
                (Some(s), _) => s.clone(),
                (None, Some(s)) => rational(ctx, &join(&f, "step"), s)?,
                (None, None) => default_interval_step(),
            };
            let sampled = sample_interval(&lo, &hi, &step).map_err(|e| ctx.err(&f, e.to_string()))?;
            for p in sampled {
                if !points.iter().any(|q: &Point| q.label == p.label) {
                    points.push(p);
                }
            }
        }
    }
    let mut entries = Vec::new();
    if let Some(es) = obj.get("entries") {
        for (i, e) in array(ctx, &join(prefix, "entries"), es)?.iter().enumerate() {
            let f = format!("{}[{i}]", join(prefix, "entries"));
            let eo = object(ctx, &f, e)?;
            reject_unknown(ctx, eo, &["a", "b", "d"], &f)?;
            entries.push(PairDistance::new(
                string(ctx, &join(&f, "a"), required(ctx, eo, "a", &f)?)?,
                string(ctx, &join(&f, "b"), required(ctx, eo, "b", &f)?)?,
                rational(ctx, &join(&f, "d"), required(ctx, eo, "d", &f)?)?,
            ));
        }
    }
    let fallback = match obj.get("fallback") {
        None => Fallback::None,
        Some(v) => match string(ctx, &join(prefix, "fallback"), v)? {
            "sqdiff" | "squared_difference" => Fallback::SquaredDifference,
            "none" => Fallback::None,
            other => {
                return Err(ctx.err(
                    &join(prefix, "fallback"),
                    format!("unknown fallback {other:?}; use \"sqdiff\" or \"none\""),
                ))
            }
        },
    };
    let claimed_s = obj
        .get("claimed_s")
        .map(|v| rational(ctx, &join(prefix, "claimed_s"), v))
        .transpose()?;
    let space = build_space(points, &entries, fallback).map_err(|source| ConfigError::Space {
        path: ctx.name(),
        source,
    })?;
    Ok(space.with_claimed_s(claimed_s))
}

fn function_from_json(ctx: &Ctx, v: &Json, prefix: &str) -> Result<FunctionSpec, ConfigError> {
    let (v, ctx) = inline_or_file(ctx, v)?;
    let ctx = &ctx;
    let obj = object(ctx, prefix, &v)?;
    if let Some(id) = obj.get("catalog") {
        reject_unknown(ctx, obj, &["catalog", "params", "inner"], prefix)?;
        let id = string(ctx, &join(prefix, "catalog"), id)?;
        let entry = CClassEntry::parse(id).map_err(|e| ctx.err(&join(prefix, "catalog"), e.to_string()))?;
        let mut params = BTreeMap::new();
        if let Some(ps) = obj.get("params") {
            for (k, pv) in object(ctx, &join(prefix, "params"), ps)? {
                params.insert(
                    k.clone(),
                    rational(ctx, &format!("{}.{k}", join(prefix, "params")), pv)?,
                );
            }
        }
        let inner = obj
            .get("inner")
            .map(|iv| function_from_json(ctx, iv, &join(prefix, "inner")).map(Box::new))
            .transpose()?;
        let spec = FunctionSpec::CClass(CClassSpec { entry, params, inner });
        spec.validate().map_err(|e| ctx.err(prefix, e.to_string()))?;
        return Ok(spec);
    }
    if let Some(pieces) = obj.get("piecewise") {
        reject_unknown(ctx, obj, &["piecewise"], prefix)?;
        let mut out = Vec::new();
        for (i, p) in array(ctx, &join(prefix, "piecewise"), pieces)?.iter().enumerate() {
            let f = format!("{}[{i}]", join(prefix, "piecewise"));
            out.push(piece_from_json(ctx, p, &f)?);
        }
        return Ok(FunctionSpec::piecewise(out));
    }
    if obj.contains_key("poly") || obj.contains_key("terms") {
        return Ok(FunctionSpec::piecewise(vec![piece_from_json(ctx, &v, prefix)?]));
    }
    if obj.get("second_argument") == Some(&Json::Bool(true)) {
        return Ok(FunctionSpec::SecondArgument);
    }
    Err(ctx.err(
        prefix,
        "expected one of `catalog`, `piecewise`, `poly`, `terms`, `second_argument`",
    ))
}

fn piece_from_json(ctx: &Ctx, v: &Json, f: &str) -> Result<Piece, ConfigError> {
    let po = object(ctx, f, v)?;
    reject_unknown(ctx, po, &["from", "to", "include_to", "poly", "terms"], f)?;
    let from = match po.get("from") {
        Some(v) => rational(ctx, &join(f, "from"), v)?,
        None => Rational::from_integer(0.into()),
    };
    let to = po.get("to").map(|v| rational(ctx, &join(f, "to"), v)).transpose()?;
    let include_to = match po.get("include_to") {
        None => false,
        Some(Json::Bool(b)) => *b,
        Some(_) => return Err(ctx.err(&join(f, "include_to"), "expected a boolean")),
    };
    let mut piece = Piece::poly(from, to, &[]);
    piece.include_to = include_to;
    if let Some(cs) = po.get("poly") {
        let coeffs = array(ctx, &join(f, "poly"), cs)?
            .iter()
            .enumerate()
            .map(|(i, c)| rational(ctx, &format!("{}[{i}]", join(f, "poly")), c))
            .collect::<Result<Vec<_>, _>>()?;
        piece.terms = Piece::poly(piece.from.clone(), None, &coeffs).terms;
    }
    if let Some(ts) = po.get("terms") {
        for (i, t) in array(ctx, &join(f, "terms"), ts)?.iter().enumerate() {
            let tf = format!("{}[{i}]", join(f, "terms"));
            let to = object(ctx, &tf, t)?;
            reject_unknown(ctx, to, &["coef", "exp"], &tf)?;
            piece.terms.push(Term {
                coef: rational(ctx, &join(&tf, "coef"), required(ctx, to, "coef", &tf)?)?,
                exp: rational(ctx, &join(&tf, "exp"), required(ctx, to, "exp", &tf)?)?,
            });
        }
    }
    Ok(piece)
}

fn map_from_json(ctx: &Ctx, v: &Json, prefix: &str) -> Result<SelfMap, ConfigError> {
    if v.as_str() == Some("identity") {
        return Ok(SelfMap::Identity);
    }
    let obj = object(ctx, prefix, v)?;
    if let Some(t) = obj.get("table") {
        reject_unknown(ctx, obj, &["table"], prefix)?;
        let mut table = BTreeMap::new();
        for (k, to) in object(ctx, &join(prefix, "table"), t)? {
            table.insert(
                k.clone(),
                string(ctx, &format!("{}.{k}", join(prefix, "table")), to)?.to_owned(),
            );
        }
        return Ok(SelfMap::Table(table));
    }
    if let Some(c) = obj.get("constant") {
        reject_unknown(ctx, obj, &["constant"], prefix)?;
        return Ok(SelfMap::Constant(rational(ctx, &join(prefix, "constant"), c)?));
    }
    if let Some(ps) = obj.get("pieces") {
        reject_unknown(ctx, obj, &["pieces"], prefix)?;
        let mut pieces = Vec::new();
        let mut else_to = None;
        for (i, p) in array(ctx, &join(prefix, "pieces"), ps)?.iter().enumerate() {
            let f = format!("{}[{i}]", join(prefix, "pieces"));
            let po = object(ctx, &f, p)?;
            if let Some(e) = po.get("else_to") {
                reject_unknown(ctx, po, &["else_to"], &f)?;
                else_to = Some(rational(ctx, &join(&f, "else_to"), e)?);
                continue;
            }
            reject_unknown(ctx, po, &["if_in", "to"], &f)?;
            let range = array(ctx, &join(&f, "if_in"), required(ctx, po, "if_in", &f)?)?;
            if range.len() != 2 {
                return Err(ctx.err(&join(&f, "if_in"), "expected [lo, hi]"));
            }
            pieces.push(MapPiece {
                lo: rational(ctx, &join(&f, "if_in[0]"), &range[0])?,
                hi: rational(ctx, &join(&f, "if_in[1]"), &range[1])?,
                to: rational(ctx, &join(&f, "to"), required(ctx, po, "to", &f)?)?,
            });
        }
        return Ok(SelfMap::Pieces { pieces, else_to });
    }
    Err(ctx.err(
        prefix,
        "expected \"identity\" or an object with `table`, `constant` or `pieces`",
    ))
}

fn triple(ctx: &Ctx, field: &str, v: &Json) -> Result<[Rational; 3], ConfigError> {
    let a = array(ctx, field, v)?;
    if a.len() != 3 {
        return Err(ctx.err(field, "expected three weights"));
    }
    Ok([
        rational(ctx, &format!("{field}[0]"), &a[0])?,
        rational(ctx, &format!("{field}[1]"), &a[1])?,
        rational(ctx, &format!("{field}[2]"), &a[2])?,
    ])
}

fn variant_from_json(ctx: &Ctx, v: &Json) -> Result<Variant, ConfigError> {
    match v {
        Json::String(s) => match s.as_str() {
            "m_max" => Ok(Variant::MMax),
            "cho_metric" => Ok(Variant::ChoMetric),
            other => Err(ctx.err("variant", format!("unknown variant {other:?}"))),
        },
        Json::Object(o) if o.len() == 1 => {
            if let Some(w) = o.get("m_convex") {
                let [a, b, c] = triple(ctx, "variant.m_convex", w)?;
                Ok(Variant::MConvex { a, b, c })
            } else if let Some(w) = o.get("weighted") {
                Ok(Variant::Weighted {
                    betas: triple(ctx, "variant.weighted", w)?,
                })
            } else {
                Err(ctx.err("variant", "expected `m_convex` or `weighted`"))
            }
        }
        _ => Err(ctx.err("variant", "expected a string or a one-key object")),
    }
}

fn preset_from_json(ctx: &Ctx, v: &Json) -> Result<Preset, ConfigError> {
    let o = object(ctx, "preset", v)?;
    let name = string(ctx, "preset.name", required(ctx, o, "name", "preset")?)?;
    let p = |k: &str| -> Result<Rational, ConfigError> {
        rational(ctx, &format!("preset.{k}"), required(ctx, o, k, "preset")?)
    };
    Ok(match name {
        "K_MAX" => Preset::KMax { k: p("k")? },
        "ALPHA_SUM" => Preset::AlphaSum { alpha: p("alpha")? },
        "LAMBDA_SUM" => Preset::LambdaSum { lambda: p("lambda")? },
        "WEIGHTED" => Preset::Weighted {
            k: p("k")?,
            betas: triple(ctx, "preset.betas", required(ctx, o, "betas", "preset")?)?,
        },
        "LOG" => Preset::Log { a: p("a")? },
        "RATIO" => Preset::Ratio,
        "MDK_DIFF" => Preset::MdkDiff,
        "MDK_PHI" => Preset::MdkPhi,
        other => return Err(ctx.err("preset.name", format!("unknown preset {other:?}"))),
    })
}

fn instance_from_json(ctx: &Ctx, v: &Json) -> Result<ContractionInstance, ConfigError> {
    let obj = object(ctx, "", v)?;
    reject_unknown(
        ctx,
        obj,
        &[
            "space",
            "map",
            "psi",
            "weight_phi",
            "control_phi",
            "F",
            "s",
            "variant",
            "preset",
            "approx_tol",
        ],
        "",
    )?;
    let (space_json, space_ctx) = inline_or_file(ctx, required(ctx, obj, "space", "")?)?;
    let space = space_from_json(&space_ctx, &space_json, "space")?;
    let map = map_from_json(ctx, required(ctx, obj, "map", "")?, "map")?;
    let func = |k: &str| obj.get(k).map(|f| function_from_json(ctx, f, k)).transpose();
    let weight_phi = function_from_json(ctx, required(ctx, obj, "weight_phi", "")?, "weight_phi")?;
    let control_phi = function_from_json(ctx, required(ctx, obj, "control_phi", "")?, "control_phi")?;
    let s = rational(ctx, "s", required(ctx, obj, "s", "")?)?;
    let variant = obj.get("variant").map(|v| variant_from_json(ctx, v)).transpose()?;
    let contraction_err = |source| ConfigError::Contraction {
        path: ctx.name(),
        source,
    };
    let spec = match obj.get("preset") {
        Some(p) => {
            let mut t = make_preset(preset_from_json(ctx, p)?).map_err(contraction_err)?;
            if let Some(psi) = func("psi")? {
                t = t.with_psi(psi);
            }
            if let Some(v) = variant {
                t = t.with_variant(v);
            }
            if obj.contains_key("F") {
                return Err(ctx.err("F", "a preset fixes F; remove one of them"));
            }
            InstanceSpec {
                psi: t.psi,
                weight_phi,
                control_phi,
                f: t.f,
                s,
                variant: t.variant,
            }
        }
        None => InstanceSpec {
            psi: func("psi")?.ok_or_else(|| ctx.err("psi", "missing required field"))?,
            weight_phi,
            control_phi,
            f: func("F")?.ok_or_else(|| ctx.err("F", "missing required field"))?,
            s,
            variant: variant.unwrap_or(Variant::MMax),
        },
    };
    let mut inst = ContractionInstance::new(space, map, spec).map_err(contraction_err)?;
    if let Some(t) = obj.get("approx_tol") {
        inst = inst.with_approx_tol(rational(ctx, "approx_tol", t)?);
    }
    Ok(inst)
}

fn ctx_for(path: &Path, step: Option<&Rational>) -> Ctx {
    Ctx {
        path: path.to_owned(),
        step: step.cloned(),
    }
}

/// Loads a space file; `step` overrides every interval's sampling step.
pub fn load_space(path: &Path, step: Option<&Rational>) -> Result<GeneralizedMetricSpace, ConfigError> {
    space_from_json(&ctx_for(path, step), &read_json(path)?, "")
}

pub fn load_function(path: &Path) -> Result<FunctionSpec, ConfigError> {
    function_from_json(&ctx_for(path, None), &read_json(path)?, "")
}

/// Loads `{ "psi": ..., "phi": ..., "F": ... }`.
pub fn load_tripled(path: &Path) -> Result<TripledSpec, ConfigError> {
    let ctx = ctx_for(path, None);
    let json = read_json(path)?;
    let obj = object(&ctx, "", &json)?;
    reject_unknown(&ctx, obj, &["psi", "phi", "F"], "")?;
    Ok(TripledSpec {
        psi: function_from_json(&ctx, required(&ctx, obj, "psi", "")?, "psi")?,
        phi: function_from_json(&ctx, required(&ctx, obj, "phi", "")?, "phi")?,
        f: function_from_json(&ctx, required(&ctx, obj, "F", "")?, "F")?,
    })
}

/// Loads an instance file; `step` overrides interval sampling in its space.
pub fn load_instance(path: &Path, step: Option<&Rational>) -> Result<ContractionInstance, ConfigError> {
    instance_from_json(&ctx_for(path, step), &read_json(path)?)
}

/// Parses a space from JSON text; `origin` is used in messages only.
pub fn parse_space(text: &str, origin: &str, step: Option<&Rational>) -> Result<GeneralizedMetricSpace, ConfigError> {
    let path = Path::new(origin);
    space_from_json(&ctx_for(path, step), &parse_json(text, path)?, "")
}

pub fn parse_function(text: &str, origin: &str) -> Result<FunctionSpec, ConfigError> {
    let path = Path::new(origin);
    function_from_json(&ctx_for(path, None), &parse_json(text, path)?, "")
}

pub fn parse_instance(text: &str, origin: &str, step: Option<&Rational>) -> Result<ContractionInstance, ConfigError> {
    let path = Path::new(origin);
    instance_from_json(&ctx_for(path, step), &parse_json(text, path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn space_with_interval_and_decimals() {
        let text = r#"{
            "points": [{"label": "a", "value": "0"}, {"label": "b", "value": 0.25}],
            "entries": [{"a": "a", "b": "b", "d": "0,05"}],
            "intervals": [{"from": "1/2", "to": "1", "step": "1/4"}],
            "fallback": "sqdiff",
            "claimed_s": "3"
        }"#;
        let s = parse_space(text, "inline", None).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.distance("a", "b").unwrap(), &rat(1, 20));
        assert_eq!(s.distance("3/4", "1/2").unwrap(), &rat(1, 16));
        assert_eq!(s.claimed_s(), Some(&int(3)));
        let coarse = parse_space(text, "inline", Some(&rat(1, 2))).unwrap();
        assert_eq!(coarse.len(), 4);
    }

    #[test]
    fn field_diagnostics() {
        let e = parse_space(r#"{"points": [{"label": "a", "value": "x"}]}"#, "f.json", None).unwrap_err();
        assert!(e.to_string().contains("points[0].value"), "{e}");
        let e = parse_space("{\n  \"points\": [,]\n}", "f.json", None).unwrap_err();
        assert!(matches!(e, ConfigError::Json { line: 2, .. }), "{e}");
        let e = parse_space(r#"{"pointz": []}"#, "f.json", None).unwrap_err();
        assert!(e.to_string().contains("pointz"), "{e}");
        let e = parse_function(r#"{"catalog": "cclass_2", "params": {"m": "2"}}"#, "f.json").unwrap_err();
        assert!(e.to_string().contains("0 < m < 1"), "{e}");
    }

    #[test]
    fn functions() {
        let f = parse_function(r#"{"catalog": "cclass_11", "inner": {"poly": ["0", "0", "1"]}}"#, "f").unwrap();
        assert_eq!(f.eval2(&int(2), &int(0)).unwrap().as_rational(), Some(&int(-2)));
        let p = parse_function(
            r#"{"piecewise": [{"from": "0", "to": "1", "include_to": true, "terms": [{"coef": "1", "exp": "1/2"}]},
                               {"from": "1", "poly": ["0", "0", "1"]}]}"#,
            "f",
        )
        .unwrap();
        assert_eq!(p.eval1(&rat(1, 4)).unwrap().as_rational(), Some(&rat(1, 2)));
        assert_eq!(p.eval1(&int(3)).unwrap().as_rational(), Some(&int(9)));
    }

    #[test]
    fn instance_inline() {
        let text = r#"{
            "space": {"points": [{"value": "0"}], "intervals": [{"from": "1/2", "to": "1", "step": "1/4"}], "fallback": "sqdiff"},
            "map": {"pieces": [{"if_in": ["1/2", "1"], "to": "0"}, {"else_to": "0"}]},
            "weight_phi": {"poly": ["0", "1"]},
            "control_phi": {"poly": ["0", "1/16"]},
            "preset": {"name": "K_MAX", "k": "1/2"},
            "s": "2"
        }"#;
        let inst = parse_instance(text, "inline", None).unwrap();
        assert_eq!(inst.space.len(), 4);
        assert_eq!(inst.variant, Variant::MMax);
        let bad = text.replace("\"s\": \"2\"", "\"s\": \"2\", \"F\": {\"catalog\": \"cclass_1\"}");
        assert!(parse_instance(&bad, "inline", None).is_err());
    }
}
