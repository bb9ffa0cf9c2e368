//! Inputs of one property trial and their JSON form.

use serde::{Deserialize, Serialize};

use scf_core::doc::{DocError, PConditionDoc, QConditionDoc, UniverseDoc};
use scf_core::ordset::OrdinalValue;
use scf_core::product::QCondition;
use scf_core::single::PCondition;
use scf_core::universe::{CId, CSet, Container, IdxSet, UId, Universe};

/// Objects drawn for one trial. Each property documents which slots it uses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Inputs {
    pub models: Vec<CId>,
    pub bigs: Vec<UId>,
    pub containers: Vec<Container>,
    pub sets: Vec<CSet>,
    pub ords: Vec<OrdinalValue>,
    pub idx: Vec<IdxSet>,
    pub conds: Vec<PCondition>,
    pub qconds: Vec<QCondition>,
}

impl Inputs {
    pub fn fin(&self, i: usize) -> u32 {
        self.ords[i].fin().expect("finite ordinal slot")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct InputsDoc {
    #[serde(default)]
    pub models: Vec<String>,
    #[serde(default)]
    pub bigs: Vec<String>,
    #[serde(default)]
    pub containers: Vec<String>,
    #[serde(default)]
    pub model_sets: Vec<Vec<String>>,
    #[serde(default)]
    pub ords: Vec<OrdinalValue>,
    #[serde(default)]
    pub index_sets: Vec<IdxSet>,
    #[serde(default)]
    pub conds: Vec<PConditionDoc>,
    #[serde(default)]
    pub qconds: Vec<QConditionDoc>,
}

fn ids(u: &Universe, a: CSet) -> Vec<String> {
    a.iter().map(|m| u.cm(m).id.clone()).collect()
}

impl InputsDoc {
    pub fn of(u: &Universe, x: &Inputs) -> InputsDoc {
        InputsDoc {
            models: x.models.iter().map(|&m| u.cm(m).id.clone()).collect(),
            bigs: x.bigs.iter().map(|&p| u.um(p).id.clone()).collect(),
            containers: x.containers.iter().map(|&c| u.container_id(c).to_string()).collect(),
            model_sets: x.sets.iter().map(|&a| ids(u, a)).collect(),
            ords: x.ords.clone(),
            index_sets: x.idx.clone(),
            conds: x.conds.iter().map(|p| PConditionDoc::of(u, p)).collect(),
            qconds: x.qconds.iter().map(|q| QConditionDoc::of(u, q)).collect(),
        }
    }

    pub fn build(self, u: &Universe) -> Result<Inputs, DocError> {
        let cid = |s: &String| u.cid(s).map_err(|_| DocError::UnknownId(s.clone()));
        let mut sets = Vec::new();
        for names in &self.model_sets {
            sets.push(names.iter().map(cid).collect::<Result<CSet, _>>()?);
        }
        Ok(Inputs {
            models: self.models.iter().map(cid).collect::<Result<_, _>>()?,
            bigs: self
                .bigs
                .iter()
                .map(|s| u.uid(s).map_err(|_| DocError::UnknownId(s.clone())))
                .collect::<Result<_, _>>()?,
            containers: self
                .containers
                .iter()
                .map(|s| u.container(s).map_err(|_| DocError::UnknownId(s.clone())))
                .collect::<Result<_, _>>()?,
            sets,
            ords: self.ords,
            idx: self.index_sets,
            conds: self.conds.into_iter().map(|d| d.build(u)).collect::<Result<_, _>>()?,
            qconds: self.qconds.into_iter().map(|d| d.build(u)).collect::<Result<_, _>>()?,
        })
    }
}

/// A failing trial, self-contained enough to replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Counterexample {
    pub property: String,
    pub seed: u64,
    pub trial: u64,
    pub message: String,
    pub universe: UniverseDoc,
    pub inputs: InputsDoc,
}
