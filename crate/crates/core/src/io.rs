//! JSON descriptors for the finite contexts.
//!
//! Integers are written as JSON numbers when they fit in `i64` and as
//! decimal strings otherwise; both forms are accepted on input.
//!
//! ```text
//! {"set": ["a", "b"]}
//! {"map": {"source": ["1"], "target": ["a", "b"], "images": ["a"]}}
//! {"elements": ["1", "e"], "table": [[0, 1], [1, 1]], "unit": 0}
//! {"nat": {"bound": 8}}
//! {"monoid_hom": {"source": <monoid>, "target": <monoid>, "images": [0, 1]}}
//! {"algebra": "field Q\nvars x\nrel x^2\n", "gens": ["dx"], "relations": [["2x"]]}
//! ```

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::abgrp::{AbHom, FGAbGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::monoid::{FinCommMonoid, MonBeckModule, MonoidHom};
use crate::ring::parse::parse_polynomial;
use crate::ring::{FPAlgebra, FPModule};
use crate::set::{FinSet, SetBeckModule, SetMap};

/// Largest accepted element count for sets and monoids.
pub const MAX_ELEMENTS: usize = 64;
/// Largest accepted matrix dimension.
pub const MAX_DIM: usize = 64;

fn schema(msg: impl Into<String>) -> Error {
    Error::InvalidObject(msg.into())
}

/// Parses JSON text, reporting syntax errors with their position.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| schema(format!("expected an integer, found {n}"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| schema(format!("expected an integer, found {s:?}"))),
        _ => Err(schema(format!("expected an integer, found {v}"))),
    }
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema(format!("missing field '{key}'")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| schema(format!("{what}: expected an array")))
}

fn count(v: &Value, what: &str, max: usize) -> Result<usize> {
    let n = v
        .as_u64()
        .ok_or_else(|| schema(format!("{what}: expected a nonnegative integer")))?;
    usize::try_from(n)
        .ok()
        .filter(|&n| n <= max)
        .ok_or_else(|| schema(format!("{what}: {n} exceeds the limit of {max}")))
}

fn labels(v: &Value, what: &str) -> Result<Vec<String>> {
    let items = array(v, what)?;
    if items.len() > MAX_ELEMENTS {
        return Err(schema(format!("{what}: more than {MAX_ELEMENTS} elements")));
    }
    items
        .iter()
        .map(|l| match l {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(schema(format!("{what}: labels must be strings"))),
        })
        .collect()
}

// ---- abelian groups ----

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(int_to_json).collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json(v: &Value) -> Result<IntMatrix> {
    let rows = count(field(v, "rows")?, "rows", MAX_DIM)?;
    let cols = count(field(v, "cols")?, "cols", MAX_DIM)?;
    let entries = array(field(v, "entries")?, "entries")?
        .iter()
        .map(int_from_json)
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_data(rows, cols, entries)
}

pub fn group_to_json(g: &FGAbGroup) -> Value {
    json!({
        "ngens": g.ngens(),
        "relations": matrix_to_json(g.relations()),
        "invariant_factors": g.invariant_factors().iter().map(int_to_json).collect::<Vec<_>>(),
    })
}

/// `invariant_factors`, when present, must agree with the presentation.
pub fn group_from_json(v: &Value) -> Result<FGAbGroup> {
    let ngens = count(field(v, "ngens")?, "ngens", MAX_DIM)?;
    let g = FGAbGroup::new(ngens, matrix_from_json(field(v, "relations")?)?)?;
    if let Some(f) = v.get("invariant_factors") {
        let given = array(f, "invariant_factors")?
            .iter()
            .map(int_from_json)
            .collect::<Result<Vec<_>>>()?;
        if given != g.invariant_factors() {
            return Err(schema("invariant_factors disagree with the relations"));
        }
    }
    Ok(g)
}

pub fn abhom_to_json(h: &AbHom) -> Value {
    json!({
        "source": group_to_json(h.source()),
        "target": group_to_json(h.target()),
        "matrix": matrix_to_json(h.matrix()),
    })
}

pub fn abhom_from_json(v: &Value) -> Result<AbHom> {
    AbHom::new(
        group_from_json(field(v, "source")?)?,
        group_from_json(field(v, "target")?)?,
        matrix_from_json(field(v, "matrix")?)?,
    )
}

// ---- sets ----

pub fn set_to_json(s: &FinSet) -> Value {
    json!({ "set": s.elements() })
}

/// Accepts `{"set": [...]}` or a bare label array.
pub fn set_from_json(v: &Value) -> Result<FinSet> {
    let items = v.get("set").unwrap_or(v);
    FinSet::new(labels(items, "set")?)
}

pub fn map_to_json(f: &SetMap) -> Value {
    let images: Vec<&String> = f.images().iter().map(|&i| &f.target().elements()[i]).collect();
    json!({ "map": {
        "source": f.source().elements(),
        "target": f.target().elements(),
        "images": images,
    }})
}

fn index_or_label(v: &Value, labels: &[String], what: &str) -> Result<usize> {
    match v {
        Value::String(s) => labels
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| schema(format!("{what}: unknown label {s:?}"))),
        Value::Number(n) => n
            .as_u64()
            .and_then(|i| usize::try_from(i).ok())
            .filter(|&i| i < labels.len())
            .ok_or_else(|| schema(format!("{what}: index {n} out of range"))),
        _ => Err(schema(format!("{what}: expected a label or an index"))),
    }
}

pub fn map_from_json(v: &Value) -> Result<SetMap> {
    let m = field(v, "map")?;
    let source = set_from_json(field(m, "source")?)?;
    let target = set_from_json(field(m, "target")?)?;
    let images = array(field(m, "images")?, "images")?
        .iter()
        .map(|i| index_or_label(i, target.elements(), "images"))
        .collect::<Result<Vec<_>>>()?;
    SetMap::new(source, target, images)
}

pub fn set_module_to_json(m: &SetBeckModule) -> Value {
    json!({
        "base": set_to_json(m.base()),
        "fibers": m.fibers().iter().map(group_to_json).collect::<Vec<_>>(),
    })
}

pub fn set_module_from_json(v: &Value) -> Result<SetBeckModule> {
    let base = set_from_json(field(v, "base")?)?;
    let fibers = array(field(v, "fibers")?, "fibers")?
        .iter()
        .map(group_from_json)
        .collect::<Result<Vec<_>>>()?;
    SetBeckModule::new(base, fibers)
}

/// A set-context descriptor: an object or a morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetInput {
    Set(FinSet),
    Map(SetMap),
}

pub fn set_input_from_json(v: &Value) -> Result<SetInput> {
    if v.get("map").is_some() {
        Ok(SetInput::Map(map_from_json(v)?))
    } else {
        Ok(SetInput::Set(set_from_json(v)?))
    }
}

// ---- monoids ----

pub fn monoid_to_json(m: &FinCommMonoid) -> Value {
    match (m.nat_bound(), m.table()) {
        (Some(bound), _) => json!({ "nat": { "bound": bound } }),
        (None, Some(table)) => json!({
            "elements": m.labels(),
            "table": table,
            "unit": m.unit(),
        }),
        (None, None) => unreachable!("partial tables only arise from truncations of N"),
    }
}

pub fn monoid_from_json(v: &Value) -> Result<FinCommMonoid> {
    if let Some(nat) = v.get("nat") {
        let bound = count(field(nat, "bound")?, "bound", MAX_ELEMENTS)?;
        return Ok(FinCommMonoid::nat(bound));
    }
    let labels = labels(field(v, "elements")?, "elements")?;
    let n = labels.len();
    let table = array(field(v, "table")?, "table")?
        .iter()
        .map(|row| {
            array(row, "table row")?
                .iter()
                .map(|e| index_or_label(e, &labels, "table"))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = index_or_label(field(v, "unit")?, &labels, "unit")?;
    if table.len() != n {
        return Err(schema(format!("table must have {n} rows")));
    }
    FinCommMonoid::new(labels, table, unit)
}

pub fn monoid_hom_to_json(f: &MonoidHom) -> Value {
    json!({ "monoid_hom": {
        "source": monoid_to_json(f.source()),
        "target": monoid_to_json(f.target()),
        "images": f.images(),
    }})
}

pub fn monoid_hom_from_json(v: &Value) -> Result<MonoidHom> {
    let h = field(v, "monoid_hom")?;
    let source = monoid_from_json(field(h, "source")?)?;
    let target = monoid_from_json(field(h, "target")?)?;
    let images = array(field(h, "images")?, "images")?
        .iter()
        .map(|i| index_or_label(i, target.labels(), "images"))
        .collect::<Result<Vec<_>>>()?;
    MonoidHom::new(source, target, images)
}

pub fn monoid_module_to_json(m: &MonBeckModule) -> Value {
    let n = m.base().len();
    let transitions: Vec<Vec<Value>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| m.try_h(x, y).map_or(Value::Null, |h| matrix_to_json(h.matrix())))
                .collect()
        })
        .collect();
    json!({
        "base": monoid_to_json(m.base()),
        "fibers": m.fibers().iter().map(group_to_json).collect::<Vec<_>>(),
        "transitions": transitions,
    })
}

pub fn monoid_module_from_json(v: &Value) -> Result<MonBeckModule> {
    let base = monoid_from_json(field(v, "base")?)?;
    let fibers = array(field(v, "fibers")?, "fibers")?
        .iter()
        .map(group_from_json)
        .collect::<Result<Vec<_>>>()?;
    let matrices = array(field(v, "transitions")?, "transitions")?
        .iter()
        .map(|row| {
            array(row, "transitions row")?
                .iter()
                .map(|m| match m {
                    Value::Null => Ok(None),
                    m => matrix_from_json(m).map(Some),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    MonBeckModule::new(base, fibers, matrices)
}

/// A monoid-context descriptor: an object or a morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidInput {
    Monoid(FinCommMonoid),
    Hom(MonoidHom),
}

pub fn monoid_input_from_json(v: &Value) -> Result<MonoidInput> {
    if v.get("monoid_hom").is_some() {
        Ok(MonoidInput::Hom(monoid_hom_from_json(v)?))
    } else {
        Ok(MonoidInput::Monoid(monoid_from_json(v)?))
    }
}

// ---- modules over algebras ----

/// The algebra in its text form, generator names, and relations as
/// polynomial strings, one per generator.
pub fn fpmodule_to_json(m: &FPModule) -> Value {
    let a = m.algebra();
    json!({
        "algebra": a.to_text(),
        "gens": m.gens(),
        "relations": m
            .relations()
            .iter()
            .map(|r| r.iter().map(|p| a.format(p)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn fpmodule_from_json(v: &Value) -> Result<FPModule> {
    let text = field(v, "algebra")?
        .as_str()
        .ok_or_else(|| schema("algebra: expected the algebra text"))?;
    let a = FPAlgebra::parse(text)?;
    let gens = labels(field(v, "gens")?, "gens")?;
    let relations = array(field(v, "relations")?, "relations")?
        .iter()
        .map(|r| {
            let entries = array(r, "relation")?;
            if entries.len() != gens.len() {
                return Err(schema(format!(
                    "relation has {} entries for {} generators",
                    entries.len(),
                    gens.len()
                )));
            }
            entries
                .iter()
                .map(|e| {
                    let src = e.as_str().ok_or_else(|| schema("relation entries must be strings"))?;
                    parse_polynomial(src, a.field(), a.vars())
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    FPModule::new(a, gens, relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::catalog;

    #[test]
    fn big_integers_round_trip() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int_to_json(&big), json!("123456789012345678901234567890"));
        assert_eq!(int_from_json(&int_to_json(&big)).unwrap(), big);
        assert_eq!(int_to_json(&BigInt::from(-7)), json!(-7));
        assert!(int_from_json(&json!(1.5)).is_err());
    }

    #[test]
    fn groups_round_trip() {
        let g = FGAbGroup::new(2, IntMatrix::from_i64(2, 2, &[2, 0, 0, 3])).unwrap();
        let v = group_to_json(&g);
        assert_eq!(v["invariant_factors"], json!([6]));
        assert_eq!(group_from_json(&v).unwrap(), g);
        let mut bad = v.clone();
        bad["invariant_factors"] = json!([2, 3]);
        assert!(group_from_json(&bad).is_err());
        let h = AbHom::identity(&g);
        assert_eq!(abhom_from_json(&abhom_to_json(&h)).unwrap(), h);
    }

    #[test]
    fn sets_and_maps() {
        let v = parse_json(r#"{"set": ["a", "b"]}"#).unwrap();
        let s = set_from_json(&v).unwrap();
        assert_eq!(set_to_json(&s), v);
        let src = r#"{"map": {"source": ["1"], "target": ["a", "b"], "images": ["a"]}}"#;
        let f = map_from_json(&parse_json(src).unwrap()).unwrap();
        assert_eq!(map_from_json(&map_to_json(&f)).unwrap(), f);
        assert!(matches!(
            set_input_from_json(&parse_json(src).unwrap()).unwrap(),
            SetInput::Map(_)
        ));
        let m = SetBeckModule::new(s.clone(), vec![FGAbGroup::free(1), FGAbGroup::cyclic(2)]).unwrap();
        assert_eq!(set_module_from_json(&set_module_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse_json("{\n  \"set\": [\"a\",, ]\n}") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn monoids_round_trip() {
        for (_, m) in catalog() {
            assert_eq!(monoid_from_json(&monoid_to_json(&m)).unwrap(), m);
            let id = MonoidHom::identity(&m);
            assert_eq!(monoid_hom_from_json(&monoid_hom_to_json(&id)).unwrap(), id);
            let z = MonBeckModule::zero(&m);
            assert_eq!(monoid_module_from_json(&monoid_module_to_json(&z)).unwrap(), z);
        }
        let nat = FinCommMonoid::nat(8);
        assert_eq!(monoid_to_json(&nat), json!({"nat": {"bound": 8}}));
        assert_eq!(monoid_from_json(&monoid_to_json(&nat)).unwrap(), nat);
        assert!(monoid_from_json(&json!({"nat": {"bound": 1000}})).is_err());
    }

    #[test]
    fn ring_modules_round_trip() {
        let m = crate::ring::kaehler(&crate::ring::catalog::cusp()).unwrap();
        let back = fpmodule_from_json(&fpmodule_to_json(&m)).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.describe(), m.describe());
    }
}
