//! JSON forms of algebras and frames used by the command line.
//!
//! Algebra: `{"atoms":k, "diamond":[[..],..], "designated":[..],
//! "kind":"hybrid", "constants":{"i1":[..]}, "default":[..], "at":[..]}`,
//! where `diamond[y]` lists the atoms below `◇` of atom `y`.
//!
//! Frame: `{"worlds":[..], "rel":[[u,v],..], "admissible":"powerset" or
//! [[..],..], "points":[..]}`, all by world name.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AtTable, FiniteBao, HybridStructure, Kind};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::relational::TwoSortedFrame;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub atoms: usize,
    pub diamond: Vec<Element>,
    #[serde(default)]
    pub designated: Element,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub constants: BTreeMap<String, Element>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<Element>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<AtTable>,
}

impl AlgebraJson {
    pub fn into_structure(self) -> Result<HybridStructure> {
        if self.diamond.len() != self.atoms {
            return Err(Error::Input(format!("{} atoms but {} diamond rows", self.atoms, self.diamond.len())));
        }
        let bao = FiniteBao::new(self.diamond)?;
        let unexpected = |what: &str| Err(Error::Input(format!("{what} given for a {} structure", self.kind.name())));
        if self.kind != Kind::Orthodox && (!self.constants.is_empty() || self.default.is_some()) {
            return unexpected("constants");
        }
        let h = match self.kind {
            Kind::Hybrid => HybridStructure::hybrid(bao, self.designated)?,
            Kind::Grounded if self.designated.is_bottom() => HybridStructure::degenerate(bao).grounded()?,
            Kind::Grounded => HybridStructure::hybrid(bao, self.designated)?.grounded()?,
            Kind::Degenerate if self.designated.is_bottom() => HybridStructure::degenerate(bao),
            Kind::Degenerate => return unexpected("designated atoms"),
            Kind::Orthodox if !self.designated.is_bottom() => return unexpected("designated atoms"),
            Kind::Orthodox => HybridStructure::orthodox(bao, self.constants, self.default)?,
        };
        match self.at {
            Some(t) => h.with_at_table(t),
            None => Ok(h),
        }
    }

    pub fn from_structure(h: &HybridStructure) -> Self {
        AlgebraJson {
            atoms: h.bao().atom_count(),
            diamond: h.bao().diamond_on_atoms().to_vec(),
            designated: h.designated(),
            kind: h.kind(),
            constants: h.constants().clone(),
            default: h.default_constant(),
            at: h.at_table().cloned(),
        }
    }
}

pub fn algebra_from_str(text: &str) -> Result<HybridStructure> {
    serde_json::from_str::<AlgebraJson>(text).map_err(|e| Error::Input(e.to_string()))?.into_structure()
}

pub fn algebra_to_value(h: &HybridStructure) -> serde_json::Value {
    serde_json::to_value(AlgebraJson::from_structure(h)).expect("algebra JSON serializes")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AdmissibleJson {
    Keyword(String),
    Sets(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameJson {
    pub worlds: Vec<String>,
    #[serde(default)]
    pub rel: Vec<(String, String)>,
    pub admissible: AdmissibleJson,
    pub points: Vec<String>,
}

impl FrameJson {
    pub fn into_frame(self) -> Result<TwoSortedFrame> {
        let index: BTreeMap<&str, usize> = self.worlds.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
        if index.len() != self.worlds.len() {
            return Err(Error::Input("duplicate world names".into()));
        }
        let world = |w: &str| index.get(w).copied().ok_or_else(|| Error::Input(format!("unknown world `{w}`")));
        let set = |ws: &[String]| -> Result<Element> {
            let mut e = Element::BOTTOM;
            for w in ws {
                e |= Element::atom(world(w)?);
            }
            Ok(e)
        };
        let mut successors = vec![Element::BOTTOM; self.worlds.len()];
        for (u, v) in &self.rel {
            successors[world(u)?] |= Element::atom(world(v)?);
        }
        let points = set(&self.points)?;
        match &self.admissible {
            AdmissibleJson::Keyword(k) if k == "powerset" => TwoSortedFrame::full(self.worlds, successors, points),
            AdmissibleJson::Keyword(k) => Err(Error::Input(format!("unknown admissible keyword `{k}`"))),
            AdmissibleJson::Sets(sets) => {
                let admissible = sets.iter().map(|s| set(s)).collect::<Result<Vec<_>>>()?;
                TwoSortedFrame::new(self.worlds, successors, admissible, points)
            }
        }
    }

    pub fn from_frame(g: &TwoSortedFrame) -> Self {
        let names = |e: Element| e.indices().map(|w| g.worlds()[w].clone()).collect::<Vec<_>>();
        let rel = (0..g.world_count())
            .flat_map(|u| g.successors()[u].indices().map(move |v| (u, v)))
            .map(|(u, v)| (g.worlds()[u].clone(), g.worlds()[v].clone()))
            .collect();
        let admissible = if g.is_full() {
            AdmissibleJson::Keyword("powerset".into())
        } else {
            AdmissibleJson::Sets(g.admissible().iter().map(|&a| names(a)).collect())
        };
        FrameJson { worlds: g.worlds().to_vec(), rel, admissible, points: names(g.points()) }
    }
}

pub fn frame_from_str(text: &str) -> Result<TwoSortedFrame> {
    serde_json::from_str::<FrameJson>(text).map_err(|e| Error::Input(e.to_string()))?.into_frame()
}

pub fn frame_to_value(g: &TwoSortedFrame) -> serde_json::Value {
    serde_json::to_value(FrameJson::from_frame(g)).expect("frame JSON serializes")
}
