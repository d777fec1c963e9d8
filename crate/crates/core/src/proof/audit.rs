use serde::Serialize;

use super::{verify, Derivation};
use crate::algebra::{HybridStructure, Kind};
use crate::error::{Error, Result};
use crate::evaluation::{valid, validates_theory};
use crate::relational::TwoSortedFrame;
use crate::syntax::{Formula, Language};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub conclusion: Formula,
    /// Corpus members the conclusion was checked on.
    pub checked: usize,
    /// Members outside the audited class: not hybrid, not permeated in a
    /// `+` logic, or not validating `Σ`.
    pub excluded: usize,
    /// Corpus indices of audited members refuting the conclusion.
    pub violators: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl AuditReport {
    pub fn sound(&self) -> bool {
        self.violators.is_empty()
    }
}

fn report(conclusion: Formula, checked: usize, excluded: usize, violators: Vec<usize>) -> AuditReport {
    let warning = (checked == 0).then(|| "no corpus member in the audited class; the audit is vacuous".to_string());
    AuditReport { conclusion, checked, excluded, violators, warning }
}

/// Checks the conclusion of a verified `H` or `H(@)` derivation on every
/// hybrid algebra of the corpus that validates `Σ` (and is permeated, for
/// the `+` logics).
pub fn soundness_audit(d: &Derivation, corpus: &[HybridStructure]) -> Result<AuditReport> {
    verify(d)?;
    if d.logic.base == Language::HE {
        return Err(Error::Language { connective: "E", language: Language::HAt });
    }
    let conclusion = d.conclusion().expect("verified derivations are nonempty").clone();
    let (mut checked, mut excluded, mut violators) = (0, 0, Vec::new());
    for (k, h) in corpus.iter().enumerate() {
        if h.kind() != Kind::Hybrid
            || (d.logic.plus && !h.is_permeated()?.holds())
            || !validates_theory(h, &d.logic.sigma)?
        {
            excluded += 1;
            continue;
        }
        checked += 1;
        if !valid(h, &conclusion)?.holds {
            violators.push(k);
        }
    }
    Ok(report(conclusion, checked, excluded, violators))
}

/// The frame counterpart, used for every language and in particular for
/// `H(E)`: base logics on all frames validating `Σ`, `+` logics on the
/// strongly descriptive ones.
pub fn soundness_audit_frames(d: &Derivation, frames: &[TwoSortedFrame]) -> Result<AuditReport> {
    verify(d)?;
    let conclusion = d.conclusion().expect("verified derivations are nonempty").clone();
    let (mut checked, mut excluded, mut violators) = (0, 0, Vec::new());
    for (k, g) in frames.iter().enumerate() {
        let mut in_class = !d.logic.plus || g.is_strongly_descriptive();
        for s in &d.logic.sigma {
            if !in_class {
                break;
            }
            in_class = g.validates(s)?;
        }
        if !in_class {
            excluded += 1;
            continue;
        }
        checked += 1;
        if !g.validates(&conclusion)? {
            violators.push(k);
        }
    }
    Ok(report(conclusion, checked, excluded, violators))
}
