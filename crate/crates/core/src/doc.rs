//! JSON documents for universes and conditions.
//!
//! Canonical text is produced by going through `serde_json::Value` (object
//! keys sorted) and pretty-printing with a trailing newline. Set-valued domain
//! elements carry a witness `(model, alpha)` which is recomputed on output.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::ordset::{OrdSet, OrdinalValue};
use crate::product::QCondition;
use crate::single::{DomainElement, PCondition};
use crate::universe::{CSet, CountableModel, UncountableModel, Universe, UniverseConfig, UniverseError};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unknown model id: {0}")]
    UnknownId(String),
    #[error("bad witness for {elems}: {why}")]
    BadWitness { elems: OrdSet, why: String },
    #[error(transparent)]
    Universe(#[from] UniverseError),
}

/// Indented JSON with sorted object keys, scalar arrays on one line, and a
/// trailing newline.
pub fn canonical<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("documents serialize");
    let mut s = String::new();
    write_value(&mut s, &value, 0);
    s.push('\n');
    s
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Array(xs) if xs.is_empty() => out.push_str("[]"),
        Value::Array(xs) if xs.iter().all(is_scalar) => {
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&x.to_string());
            }
            out.push(']');
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        _ => out.push_str(&v.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct UniverseDoc {
    pub config: UniverseConfig,
    pub countables: Vec<CountableModel>,
    pub uncountables: Vec<UncountableModel>,
}

impl UniverseDoc {
    pub fn of(u: &Universe) -> UniverseDoc {
        UniverseDoc {
            config: u.config().clone(),
            countables: u.countables().to_vec(),
            uncountables: u.uncountables().to_vec(),
        }
    }

    pub fn build(self) -> Result<Universe, DocError> {
        Ok(Universe::new(self.config, self.countables, self.uncountables)?)
    }
}

pub fn universe_to_json(u: &Universe) -> String {
    canonical(&UniverseDoc::of(u))
}

pub fn universe_from_json(s: &str) -> Result<Universe, DocError> {
    serde_json::from_str::<UniverseDoc>(s)?.build()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub model: String,
    pub alpha: OrdinalValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", deny_unknown_fields)]
pub enum DomainElementDoc {
    OrdS {
        alpha: u32,
    },
    Set {
        elems: OrdSet,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<WitnessDoc>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FEntryDoc {
    pub key: DomainElementDoc,
    pub value: Vec<OrdSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GEntryDoc {
    pub key: (OrdSet, DomainElementDoc),
    pub value: OrdSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PConditionDoc {
    pub s_index: Option<u32>,
    pub f_map: Vec<FEntryDoc>,
    pub g_map: Vec<GEntryDoc>,
    pub a_set: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FBigEntryDoc {
    pub index: u32,
    pub condition: PConditionDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct QConditionDoc {
    pub f_big: Vec<FBigEntryDoc>,
    pub a_set: Vec<String>,
}

/// The least representation of `t`, preferring those that make `t` a legal
/// domain element of `p`.
fn witness(u: &Universe, p: &PCondition, t: OrdSet) -> Option<WitnessDoc> {
    let s = p.s(u);
    let dom = p.dom_ords();
    let reps = u.reps(t);
    let legal = |&&(m, a): &&(crate::universe::CId, OrdinalValue)| {
        p.a.contains(m)
            && match a {
                OrdinalValue::Kappa => true,
                OrdinalValue::Fin(x) => dom.contains(x) && s.contains(x) && u.trace(m).contains(x),
            }
    };
    let pick = reps.iter().filter(legal).min().or_else(|| reps.iter().min());
    pick.map(|&(m, a)| WitnessDoc { model: u.cm(m).id.clone(), alpha: a })
}

fn elem_doc(u: &Universe, p: &PCondition, x: DomainElement) -> DomainElementDoc {
    match x {
        DomainElement::OrdS(alpha) => DomainElementDoc::OrdS { alpha },
        DomainElement::Set(t) => DomainElementDoc::Set { elems: t, witness: witness(u, p, t) },
    }
}

fn elem_from(u: &Universe, d: DomainElementDoc) -> Result<DomainElement, DocError> {
    match d {
        DomainElementDoc::OrdS { alpha } => Ok(DomainElement::OrdS(alpha)),
        DomainElementDoc::Set { elems, witness } => {
            if let Some(w) = witness {
                let m = u.cid(&w.model).map_err(|_| DocError::UnknownId(w.model.clone()))?;
                if w.alpha.cut(u.trace(m)) != elems {
                    return Err(DocError::BadWitness { elems, why: format!("{} ∩ {:?} differs", w.model, w.alpha) });
                }
            }
            Ok(DomainElement::Set(elems))
        }
    }
}

fn ids_of(u: &Universe, a: CSet) -> Vec<String> {
    a.iter().map(|m| u.cm(m).id.clone()).collect()
}

fn cset_from(u: &Universe, ids: &[String]) -> Result<CSet, DocError> {
    let mut a = CSet::default();
    for id in ids {
        a.insert(u.cid(id).map_err(|_| DocError::UnknownId(id.clone()))?);
    }
    Ok(a)
}

impl PConditionDoc {
    pub fn of(u: &Universe, p: &PCondition) -> PConditionDoc {
        PConditionDoc {
            s_index: p.s_index,
            f_map: p.f.iter().map(|(&x, c)| FEntryDoc { key: elem_doc(u, p, x), value: c.clone() }).collect(),
            g_map: p
                .g
                .iter()
                .filter(|(_, v)| !v.is_empty())
                .map(|(&(k, x), &v)| GEntryDoc { key: (k, elem_doc(u, p, x)), value: v })
                .collect(),
            a_set: ids_of(u, p.a),
        }
    }

    pub fn build(self, u: &Universe) -> Result<PCondition, DocError> {
        let mut p = PCondition::empty(self.s_index);
        for e in self.f_map {
            p.f.insert(elem_from(u, e.key)?, e.value);
        }
        for e in self.g_map {
            let (k, x) = e.key;
            let x = elem_from(u, x)?;
            let v = p.g_of(k, x).union(e.value);
            p.set_g(k, x, v);
        }
        p.a = cset_from(u, &self.a_set)?;
        p.normalize();
        Ok(p)
    }
}

impl QConditionDoc {
    pub fn of(u: &Universe, q: &QCondition) -> QConditionDoc {
        QConditionDoc {
            f_big: q
                .big_f
                .iter()
                .map(|(&index, c)| FBigEntryDoc { index, condition: PConditionDoc::of(u, c) })
                .collect(),
            a_set: ids_of(u, q.a),
        }
    }

    pub fn build(self, u: &Universe) -> Result<QCondition, DocError> {
        let mut q = QCondition { a: cset_from(u, &self.a_set)?, ..Default::default() };
        for e in self.f_big {
            q.big_f.insert(e.index, e.condition.build(u)?);
        }
        Ok(q)
    }
}

pub fn pcond_to_json(u: &Universe, p: &PCondition) -> String {
    canonical(&PConditionDoc::of(u, p))
}

pub fn pcond_from_json(u: &Universe, s: &str) -> Result<PCondition, DocError> {
    serde_json::from_str::<PConditionDoc>(s)?.build(u)
}

pub fn qcond_to_json(u: &Universe, q: &QCondition) -> String {
    canonical(&QConditionDoc::of(u, q))
}

pub fn qcond_from_json(u: &Universe, s: &str) -> Result<QCondition, DocError> {
    serde_json::from_str::<QConditionDoc>(s)?.build(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{golden_amalgam, p1, u1};

    #[test]
    fn round_trips() {
        let u = u1();
        let s = universe_to_json(&u);
        assert_eq!(universe_from_json(&s).unwrap(), u);
        assert_eq!(universe_to_json(&universe_from_json(&s).unwrap()), s);
        for p in [p1(&u), golden_amalgam(&u), PCondition::empty(None)] {
            let s = pcond_to_json(&u, &p);
            let back = pcond_from_json(&u, &s).unwrap();
            assert_eq!(back, p);
            assert_eq!(pcond_to_json(&u, &back), s);
        }
    }

    #[test]
    fn witness_is_checked() {
        let u = u1();
        let s = pcond_to_json(&u, &p1(&u));
        assert!(s.contains("\"model\": \"N\""));
        let bad = s.replace("\"model\": \"N\"", "\"model\": \"M0\"");
        assert!(matches!(pcond_from_json(&u, &bad), Err(DocError::BadWitness { .. })));
        let unknown = s.replace("\"N\"", "\"Z\"");
        assert!(matches!(pcond_from_json(&u, &unknown), Err(DocError::UnknownId(_))));
    }
}
