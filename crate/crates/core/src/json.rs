//! JSON encoding of models, triangulations and vectors.
//!
//! ```text
//! model          {"finite": n} | {"blocks": k}
//! vertex         i (polygon) | [b, i] (blocks) | {"limit": g}
//! arc            [vertex, vertex]
//! triangulation  {"z": model, "core": [arc...],
//!                 "tails": [{"limit": g, "type": "fountain", "base": vertex,
//!                            "right_from": i, "left_to": j}
//!                          |{"limit": g, "type": "leapfrog",
//!                            "right_from": i, "left_to": j}]}
//! kvector        {"{p,q}": coeff, ...}
//! covector       {"explicit": kvector,
//!                 "tails": [{"limit": g, "side": 0|1, "from": m, "coeff": c}]}
//! ```
//!
//! Arc keys use the point tokens `i`, `b:i` and `Lg`.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::cvector::{CoVector, TailIndicator};
use crate::error::{Error, Result};
use crate::homindex::KVector;
use crate::triangulation::{Family, Tail, Triangulation, ValidationFailure, ValidationReport};
use crate::zmodel::{Arc, ClosurePoint, Vertex, ZModel};

fn perr(pointer: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        pointer: if pointer.is_empty() {
            "/".into()
        } else {
            pointer.into()
        },
        message: message.into(),
    }
}

fn child(ptr: &str, key: impl std::fmt::Display) -> String {
    let key = key.to_string().replace('~', "~0").replace('/', "~1");
    format!("{ptr}/{key}")
}

fn get<'a>(v: &'a Value, ptr: &str, key: &str) -> Result<&'a Value> {
    let obj = v
        .as_object()
        .ok_or_else(|| perr(ptr, "expected an object"))?;
    obj.get(key)
        .ok_or_else(|| perr(&child(ptr, key), "missing field"))
}

fn as_i64(v: &Value, ptr: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| perr(ptr, "expected an integer"))
}

fn as_u32(v: &Value, ptr: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| perr(ptr, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(ptr, "expected an array"))
}

/// Reattaches a semantic error to the place it came from.
fn at<T>(r: Result<T>, ptr: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => perr(ptr, other.to_string()),
    })
}

pub fn model_to_json(z: ZModel) -> Value {
    match z {
        ZModel::Finite { n } => json!({ "finite": n }),
        ZModel::Blocks { k } => json!({ "blocks": k }),
    }
}

pub fn model_from_json(v: &Value, ptr: &str) -> Result<ZModel> {
    let obj = v
        .as_object()
        .ok_or_else(|| perr(ptr, "expected an object"))?;
    match (obj.get("finite"), obj.get("blocks")) {
        (Some(n), None) => at(
            ZModel::finite(as_u32(n, &child(ptr, "finite"))?),
            &child(ptr, "finite"),
        ),
        (None, Some(k)) => at(
            ZModel::blocks(as_u32(k, &child(ptr, "blocks"))?),
            &child(ptr, "blocks"),
        ),
        _ => Err(perr(
            ptr,
            "expected exactly one of \"finite\" or \"blocks\"",
        )),
    }
}

pub fn vertex_to_json(z: ZModel, v: Vertex) -> Value {
    if z.is_finite() {
        json!(v.idx)
    } else {
        json!([v.block, v.idx])
    }
}

pub fn point_to_json(z: ZModel, p: ClosurePoint) -> Value {
    match p {
        ClosurePoint::V(v) => vertex_to_json(z, v),
        ClosurePoint::L(g) => json!({ "limit": g }),
    }
}

pub fn point_from_json(z: ZModel, v: &Value, ptr: &str) -> Result<ClosurePoint> {
    let p = match v {
        Value::Number(_) if z.is_finite() => ClosurePoint::V(Vertex::at(as_i64(v, ptr)?)),
        Value::Array(a) if !z.is_finite() => {
            if a.len() != 2 {
                return Err(perr(ptr, "expected [block, index]"));
            }
            ClosurePoint::V(Vertex::new(
                as_u32(&a[0], &child(ptr, 0))?,
                as_i64(&a[1], &child(ptr, 1))?,
            ))
        }
        Value::Object(_) => ClosurePoint::L(as_u32(get(v, ptr, "limit")?, &child(ptr, "limit"))?),
        _ if z.is_finite() => return Err(perr(ptr, "expected a vertex index")),
        _ => return Err(perr(ptr, "expected [block, index] or {\"limit\": g}")),
    };
    at(z.check_point(p), ptr)?;
    Ok(p)
}

pub fn vertex_from_json(z: ZModel, v: &Value, ptr: &str) -> Result<Vertex> {
    point_from_json(z, v, ptr)?
        .vertex()
        .ok_or_else(|| perr(ptr, "expected a vertex, found a limit point"))
}

pub fn arc_to_json(z: ZModel, a: &Arc) -> Value {
    json!([point_to_json(z, a.p()), point_to_json(z, a.q())])
}

pub fn arc_from_json(z: ZModel, v: &Value, ptr: &str) -> Result<Arc> {
    let a = as_array(v, ptr)?;
    if a.len() != 2 {
        return Err(perr(ptr, "expected two endpoints"));
    }
    let p = point_from_json(z, &a[0], &child(ptr, 0))?;
    let q = point_from_json(z, &a[1], &child(ptr, 1))?;
    at(Arc::new(p, q), ptr)
}

/// Parses a point token: `i`, `b:i` or `Lg`.
pub fn parse_point(z: ZModel, s: &str) -> Result<ClosurePoint> {
    let bad = || Error::Parse {
        pointer: s.to_string(),
        message: "expected i, b:i or Lg".into(),
    };
    let s = s.trim();
    let p = if let Some(g) = s.strip_prefix('L') {
        ClosurePoint::L(g.parse().map_err(|_| bad())?)
    } else if let Some((b, i)) = s.split_once(':') {
        ClosurePoint::V(Vertex::new(
            b.trim().parse().map_err(|_| bad())?,
            i.trim().parse().map_err(|_| bad())?,
        ))
    } else {
        ClosurePoint::V(Vertex::at(s.parse().map_err(|_| bad())?))
    };
    z.check_point(p)?;
    Ok(p)
}

/// Parses an arc key `{p,q}`.
pub fn parse_arc_key(z: ZModel, s: &str) -> Result<Arc> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse {
            pointer: s.to_string(),
            message: "expected {p,q}".into(),
        })?;
    let (p, q) = inner.split_once(',').ok_or_else(|| Error::Parse {
        pointer: s.to_string(),
        message: "expected {p,q}".into(),
    })?;
    Arc::new(parse_point(z, p)?, parse_point(z, q)?)
}

pub fn triangulation_to_json(t: &Triangulation) -> Value {
    let z = t.z();
    let core: Vec<Value> = t.core().iter().map(|a| arc_to_json(z, a)).collect();
    let tails: Vec<Value> = t
        .tails()
        .iter()
        .map(|(&g, tail)| match *tail {
            Tail::Fountain {
                base,
                right_from,
                left_to,
            } => json!({
                "limit": g,
                "type": "fountain",
                "base": vertex_to_json(z, base),
                "right_from": right_from,
                "left_to": left_to,
            }),
            Tail::Leapfrog {
                right_from,
                left_to,
            } => json!({
                "limit": g,
                "type": "leapfrog",
                "right_from": right_from,
                "left_to": left_to,
            }),
        })
        .collect();
    json!({ "z": model_to_json(z), "core": core, "tails": tails })
}

pub fn triangulation_from_json(v: &Value) -> Result<Triangulation> {
    let z = model_from_json(get(v, "", "z")?, "/z")?;
    let mut core = Vec::new();
    for (i, a) in as_array(get(v, "", "core")?, "/core")?.iter().enumerate() {
        core.push(arc_from_json(z, a, &format!("/core/{i}"))?);
    }
    let mut tails = BTreeMap::new();
    let empty = Vec::new();
    let raw = match v.get("tails") {
        Some(t) => as_array(t, "/tails")?,
        None => &empty,
    };
    for (i, t) in raw.iter().enumerate() {
        let ptr = format!("/tails/{i}");
        let g = as_u32(get(t, &ptr, "limit")?, &child(&ptr, "limit"))?;
        let rf = as_i64(get(t, &ptr, "right_from")?, &child(&ptr, "right_from"))?;
        let lt = as_i64(get(t, &ptr, "left_to")?, &child(&ptr, "left_to"))?;
        let kind = get(t, &ptr, "type")?
            .as_str()
            .ok_or_else(|| perr(&child(&ptr, "type"), "expected a string"))?;
        let tail = match kind {
            "fountain" => {
                let base = vertex_from_json(z, get(t, &ptr, "base")?, &child(&ptr, "base"))?;
                Tail::Fountain {
                    base,
                    right_from: rf,
                    left_to: lt,
                }
            }
            "leapfrog" => Tail::Leapfrog {
                right_from: rf,
                left_to: lt,
            },
            other => {
                return Err(perr(
                    &child(&ptr, "type"),
                    format!("unknown tail type {other:?}"),
                ))
            }
        };
        if tails.insert(g, tail).is_some() {
            return Err(perr(&child(&ptr, "limit"), format!("second tail at L{g}")));
        }
    }
    at(Triangulation::new(z, core, tails), "")
}

pub fn kvector_to_json(k: &KVector) -> Value {
    let m: Map<String, Value> = k.iter().map(|(a, c)| (a.to_string(), json!(c))).collect();
    Value::Object(m)
}

pub fn kvector_from_json(z: ZModel, v: &Value, ptr: &str) -> Result<KVector> {
    let obj = v
        .as_object()
        .ok_or_else(|| perr(ptr, "expected an object"))?;
    let mut out = KVector::zero();
    for (key, c) in obj {
        let p = child(ptr, key);
        let a = at(parse_arc_key(z, key), &p)?;
        out.add_term(a, as_i64(c, &p)?);
    }
    Ok(out)
}

pub fn covector_to_json(c: &CoVector) -> Value {
    let explicit: Map<String, Value> = c
        .explicit()
        .iter()
        .map(|(a, x)| (a.to_string(), json!(x)))
        .collect();
    let tails: Vec<Value> = c
        .tails()
        .iter()
        .map(|t| json!({ "limit": t.family.gap, "side": t.family.side, "from": t.from, "coeff": t.coeff }))
        .collect();
    json!({ "explicit": explicit, "tails": tails })
}

pub fn covector_from_json(z: ZModel, v: &Value, ptr: &str) -> Result<CoVector> {
    let ex = get(v, ptr, "explicit")?
        .as_object()
        .ok_or_else(|| perr(&child(ptr, "explicit"), "expected an object"))?;
    let mut explicit = Vec::new();
    for (key, c) in ex {
        let p = child(&child(ptr, "explicit"), key);
        explicit.push((at(parse_arc_key(z, key), &p)?, as_i64(c, &p)?));
    }
    let mut tails = Vec::new();
    let tp = child(ptr, "tails");
    for (i, t) in as_array(get(v, ptr, "tails")?, &tp)?.iter().enumerate() {
        let p = child(&tp, i);
        let side = as_u32(get(t, &p, "side")?, &child(&p, "side"))?;
        if side > 1 {
            return Err(perr(&child(&p, "side"), "side is 0 or 1"));
        }
        tails.push(TailIndicator {
            family: Family {
                gap: as_u32(get(t, &p, "limit")?, &child(&p, "limit"))?,
                side: side as u8,
            },
            from: get(t, &p, "from")?
                .as_u64()
                .ok_or_else(|| perr(&child(&p, "from"), "expected a non-negative integer"))?,
            coeff: as_i64(get(t, &p, "coeff")?, &child(&p, "coeff"))?,
        });
    }
    Ok(CoVector::new(explicit, tails))
}

pub fn validation_to_json(r: &ValidationReport) -> Value {
    let failure = r.failure.as_ref().map(|f| match f {
        ValidationFailure::NotADiagonal { arc } => {
            json!({ "kind": "not_a_diagonal", "arc": arc.to_string() })
        }
        ValidationFailure::Duplicate { arc } => {
            json!({ "kind": "duplicate", "arc": arc.to_string() })
        }
        ValidationFailure::Crossing { first, second } => {
            json!({ "kind": "crossing", "arcs": [first.to_string(), second.to_string()] })
        }
        ValidationFailure::NonTriangularFace {
            side_of,
            region,
            truncated,
        } => json!({
            "kind": "non_triangular_face",
            "side_of": side_of.to_string(),
            "region": region.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "truncated": truncated,
        }),
        ValidationFailure::MissingTail { gap } => json!({ "kind": "missing_tail", "limit": gap }),
        ValidationFailure::Unattained { detail } => {
            json!({ "kind": "unattained", "detail": detail })
        }
    });
    json!({ "valid": r.is_valid(), "failure": failure, "tail_window": r.tail_window })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangulation_round_trip() {
        let src = json!({
            "z": {"blocks": 1},
            "core": [],
            "tails": [{"limit": 0, "type": "fountain", "base": [0, 0], "right_from": 2, "left_to": -2}]
        });
        let t = triangulation_from_json(&src).unwrap();
        assert_eq!(triangulation_to_json(&t), src);
        let p = Triangulation::polygon(5, &[(0, 2), (0, 3)]).unwrap();
        assert_eq!(
            triangulation_from_json(&triangulation_to_json(&p))
                .unwrap()
                .core(),
            p.core()
        );
    }

    #[test]
    fn parse_errors_carry_pointers() {
        let bad = json!({"z": {"finite": 5}, "core": [[0, 2], [0, "x"]]});
        match triangulation_from_json(&bad) {
            Err(Error::Parse { pointer, .. }) => assert_eq!(pointer, "/core/1/1"),
            other => panic!("{other:?}"),
        }
        let bad = json!({"z": {"finite": 5}, "core": [[0, 7]]});
        match triangulation_from_json(&bad) {
            Err(Error::Parse { pointer, .. }) => assert_eq!(pointer, "/core/0/1"),
            other => panic!("{other:?}"),
        }
        let bad =
            json!({"z": {"blocks": 1}, "core": [], "tails": [{"limit": 0, "type": "spiral"}]});
        match triangulation_from_json(&bad) {
            Err(Error::Parse { pointer, .. }) => assert_eq!(pointer, "/tails/0/right_from"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            triangulation_from_json(&json!({"core": []})),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn tokens() {
        let z = ZModel::blocks(2).unwrap();
        assert_eq!(
            parse_point(z, "1:-3").unwrap(),
            ClosurePoint::V(Vertex::new(1, -3))
        );
        assert_eq!(parse_point(z, "L1").unwrap(), ClosurePoint::L(1));
        assert_eq!(parse_point(z, "4").unwrap(), ClosurePoint::V(Vertex::at(4)));
        assert!(parse_point(z, "L2").is_err());
        assert!(parse_point(z, "x").is_err());
        let a = Arc::new(ClosurePoint::V(Vertex::new(1, 2)), ClosurePoint::L(0)).unwrap();
        assert_eq!(parse_arc_key(z, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn vector_round_trip() {
        let z = ZModel::finite(5).unwrap();
        let k = KVector::from_terms([(Arc::of(0, 2), -1), (Arc::of(0, 3), 1)]);
        let v = kvector_to_json(&k);
        assert_eq!(v, json!({"{0,2}": -1, "{0,3}": 1}));
        assert_eq!(kvector_from_json(z, &v, "").unwrap(), k);
        let c = CoVector::new(
            [(Arc::of(0, 2), 1)],
            [TailIndicator {
                family: Family { gap: 0, side: 1 },
                from: 2,
                coeff: -1,
            }],
        );
        let zb = ZModel::blocks(1).unwrap();
        assert_eq!(
            covector_from_json(zb, &covector_to_json(&c), "").unwrap(),
            c
        );
    }
}
