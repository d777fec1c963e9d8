//! Hilbert-style derivations for the six hybrid logics and their checker.

mod audit;
pub mod corpus;
mod schema;
mod taut;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Result;
use crate::syntax::{is_nominal_name, occurs, parse, sorted_substitute, Formula, Language, SubstitutionMap};

pub use audit::{soundness_audit, soundness_audit_frames, AuditReport};
pub use schema::{instantiate, match_axiom, Param, Params, Schema};
pub use taut::{is_tautology_instance, MAX_LETTERS};

/// A logic `L ⊕ Σ`, with the non-orthodox rules when `plus` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Logic {
    pub base: Language,
    #[serde(default)]
    pub plus: bool,
    #[serde(default)]
    pub sigma: Vec<Formula>,
}

impl Logic {
    pub fn new(base: Language, plus: bool) -> Self {
        Logic { base, plus, sigma: Vec::new() }
    }

    pub fn with_sigma(mut self, sigma: Vec<Formula>) -> Self {
        self.sigma = sigma;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Mp,
    Subst,
    Nec,
    NecAt,
    NecA,
    NameLite,
    Name,
    Paste,
    NameAt,
    BgAt,
    NameE,
    BgEDiamond,
    BgEE,
}

impl Rule {
    pub const ALL: [Rule; 13] = [
        Rule::Mp,
        Rule::Subst,
        Rule::Nec,
        Rule::NecAt,
        Rule::NecA,
        Rule::NameLite,
        Rule::Name,
        Rule::Paste,
        Rule::NameAt,
        Rule::BgAt,
        Rule::NameE,
        Rule::BgEDiamond,
        Rule::BgEE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Mp => "Modus ponens",
            Rule::Subst => "Sorted substitution",
            Rule::Nec => "Nec",
            Rule::NecAt => "Nec_@",
            Rule::NecA => "Nec_A",
            Rule::NameLite => "NameLite",
            Rule::Name => "Name",
            Rule::Paste => "Paste",
            Rule::NameAt => "Name_@",
            Rule::BgAt => "BG_@",
            Rule::NameE => "Name_E",
            Rule::BgEDiamond => "BG_E◇",
            Rule::BgEE => "BG_EE",
        }
    }

    pub fn is_non_orthodox(self) -> bool {
        matches!(self, Rule::Name | Rule::Paste | Rule::NameAt | Rule::BgAt | Rule::NameE | Rule::BgEDiamond | Rule::BgEE)
    }

    /// Whether the rule belongs to the rule table of `lang`.
    pub fn available_in(self, lang: Language) -> bool {
        match self {
            Rule::Mp | Rule::Subst | Rule::Nec => true,
            Rule::NameLite | Rule::Name | Rule::Paste => lang == Language::H,
            Rule::NecAt | Rule::NameAt | Rule::BgAt => lang == Language::HAt,
            Rule::NecA | Rule::NameE | Rule::BgEDiamond | Rule::BgEE => lang == Language::HE,
        }
    }

    fn premise_count(self) -> usize {
        if self == Rule::Mp {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One line of a derivation. Every step records its formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    Axiom {
        schema: Schema,
        #[serde(default, skip_serializing_if = "Params::is_empty")]
        params: Params,
        formula: Formula,
    },
    /// A sorted substitution instance of member `index` (0-based) of `Σ`.
    Sigma {
        index: usize,
        #[serde(default, skip_serializing_if = "SubstitutionMap::is_empty")]
        substitution: SubstitutionMap,
        formula: Formula,
    },
    /// Premises are 1-based step numbers.
    Rule {
        rule: Rule,
        premises: Vec<usize>,
        #[serde(default, skip_serializing_if = "Params::is_empty")]
        params: Params,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        substitution: Option<SubstitutionMap>,
        formula: Formula,
    },
}

impl Step {
    pub fn formula(&self) -> &Formula {
        match self {
            Step::Axiom { formula, .. } | Step::Sigma { formula, .. } | Step::Rule { formula, .. } => formula,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub logic: Logic,
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(Step::formula)
    }
}

/// The condition a step fails.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    #[error("empty derivation")]
    Empty,
    #[error("Σ member {index} is outside language {language}")]
    SigmaOutsideLanguage { index: usize, language: Language },
    #[error("formula is outside language {language}")]
    OutsideLanguage { language: Language },
    #[error("axiom {schema} is not part of language {language}")]
    SchemaUnavailable { schema: Schema, language: Language },
    #[error("not an instance of {schema}")]
    NotAnInstance { schema: Schema },
    #[error("parameter `{name}` does not match the formula")]
    ParamMismatch { name: String },
    #[error("no Σ member {index}")]
    NoSuchSigma { index: usize },
    #[error("formula is not the stated substitution instance")]
    NotSubstitutionInstance,
    #[error("invalid substitution: {reason}")]
    BadSubstitution { reason: String },
    #[error("rule {rule} is not part of language {language}")]
    RuleUnavailable { rule: Rule, language: Language },
    #[error("non-orthodox rule in base logic")]
    NonOrthodox,
    #[error("{rule} takes {expected} premises, got {found}")]
    PremiseCount { rule: Rule, expected: usize, found: usize },
    #[error("premise {premise} is not an earlier step")]
    PremiseOrder { premise: usize },
    #[error("shape: {expected}")]
    Shape { expected: &'static str },
    #[error("side condition {i} ≠ {j} fails")]
    SameNominal { i: String, j: String },
    #[error("side condition `{nominal} not occurring in {place}` fails")]
    NotFresh { nominal: String, place: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("step {index}: {violation}")]
pub struct StepError {
    /// 1-based step number; 0 for problems with the logic itself.
    pub index: usize,
    pub violation: Violation,
}

/// Checks every step of `d` against `d.logic`.
pub fn verify(d: &Derivation) -> Result<(), StepError> {
    let logic = &d.logic;
    for (k, s) in logic.sigma.iter().enumerate() {
        if s.check_language(logic.base).is_err() {
            return Err(StepError { index: 0, violation: Violation::SigmaOutsideLanguage { index: k, language: logic.base } });
        }
    }
    if d.steps.is_empty() {
        return Err(StepError { index: 0, violation: Violation::Empty });
    }
    for (k, step) in d.steps.iter().enumerate() {
        check_step(logic, &d.steps[..k], step).map_err(|violation| StepError { index: k + 1, violation })?;
    }
    Ok(())
}

type Check = std::result::Result<(), Violation>;

fn check_step(logic: &Logic, earlier: &[Step], step: &Step) -> Check {
    let lang = logic.base;
    if step.formula().check_language(lang).is_err() {
        return Err(Violation::OutsideLanguage { language: lang });
    }
    match step {
        Step::Axiom { schema, params, formula } => {
            if !schema.available_in(lang) {
                return Err(Violation::SchemaUnavailable { schema: *schema, language: lang });
            }
            let matched = match_axiom(*schema, formula).ok_or(Violation::NotAnInstance { schema: *schema })?;
            for (name, value) in params {
                if matched.get(name) != Some(value) {
                    return Err(Violation::ParamMismatch { name: name.clone() });
                }
            }
            Ok(())
        }
        Step::Sigma { index, substitution, formula } => {
            let member = logic.sigma.get(*index).ok_or(Violation::NoSuchSigma { index: *index })?;
            check_substitution(substitution)?;
            if sorted_substitute(member, substitution) != *formula {
                return Err(Violation::NotSubstitutionInstance);
            }
            Ok(())
        }
        Step::Rule { rule, premises, params, substitution, formula } => {
            if !rule.available_in(lang) {
                return Err(Violation::RuleUnavailable { rule: *rule, language: lang });
            }
            if rule.is_non_orthodox() && !logic.plus {
                return Err(Violation::NonOrthodox);
            }
            if premises.len() != rule.premise_count() {
                return Err(Violation::PremiseCount { rule: *rule, expected: rule.premise_count(), found: premises.len() });
            }
            let mut prem = Vec::new();
            for &p in premises {
                if p == 0 || p > earlier.len() {
                    return Err(Violation::PremiseOrder { premise: p });
                }
                prem.push(earlier[p - 1].formula());
            }
            check_rule(*rule, &prem, params, substitution.as_ref(), formula)
        }
    }
}

fn check_substitution(s: &SubstitutionMap) -> Check {
    for p in s.props.keys() {
        if is_nominal_name(p) {
            return Err(Violation::BadSubstitution { reason: format!("`{p}` is a nominal, not a propositional variable") });
        }
    }
    for (i, j) in &s.noms {
        if !is_nominal_name(i) || !is_nominal_name(j) {
            return Err(Violation::BadSubstitution { reason: format!("`{i}` ↦ `{j}` must map nominals to nominals") });
        }
    }
    Ok(())
}

fn shape(ok: bool, expected: &'static str) -> Check {
    if ok {
        Ok(())
    } else {
        Err(Violation::Shape { expected })
    }
}

fn fresh(nominal: &str, place: &'static str, phi: &Formula) -> Check {
    if occurs(nominal, phi) {
        Err(Violation::NotFresh { nominal: nominal.to_string(), place })
    } else {
        Ok(())
    }
}

fn distinct(i: &str, j: &str) -> Check {
    if i == j {
        Err(Violation::SameNominal { i: i.to_string(), j: j.to_string() })
    } else {
        Ok(())
    }
}

fn natural_param(params: &Params, name: &str, actual: usize) -> Check {
    match params.get(name) {
        None => Ok(()),
        Some(Param::Natural(n)) if *n == actual => Ok(()),
        Some(_) => Err(Violation::ParamMismatch { name: name.to_string() }),
    }
}

fn nominal_param(params: &Params, name: &str, actual: &str) -> Check {
    match params.get(name) {
        None => Ok(()),
        Some(Param::Formula(Formula::Nom(i))) if i == actual => Ok(()),
        Some(_) => Err(Violation::ParamMismatch { name: name.to_string() }),
    }
}

fn as_nom(f: &Formula) -> Option<&str> {
    match f {
        Formula::Nom(i) => Some(i),
        _ => None,
    }
}

/// `E(i ∧ φ)` as `(i, φ)`.
fn as_exists_nominal(f: &Formula) -> Option<(&str, &Formula)> {
    match f {
        Formula::Exists(a) => match a.as_ref() {
            Formula::Conj(i, phi) => Some((as_nom(i)?, phi)),
            _ => None,
        },
        _ => None,
    }
}

fn check_rule(
    rule: Rule,
    prem: &[&Formula],
    params: &Params,
    substitution: Option<&SubstitutionMap>,
    concl: &Formula,
) -> Check {
    match rule {
        Rule::Mp => {
            let ok = |imp: &Formula, ant: &Formula| imp.as_implication().is_some_and(|(a, b)| a == ant && b == concl);
            shape(ok(prem[0], prem[1]) || ok(prem[1], prem[0]), "premises φ → ψ and φ, conclusion ψ")
        }
        Rule::Subst => {
            let s = substitution.ok_or(Violation::BadSubstitution { reason: "missing substitution".into() })?;
            check_substitution(s)?;
            if sorted_substitute(prem[0], s) != *concl {
                return Err(Violation::NotSubstitutionInstance);
            }
            Ok(())
        }
        Rule::Nec => shape(*concl == prem[0].clone().boxed(), "conclusion □φ from premise φ"),
        Rule::NecA => shape(*concl == prem[0].clone().always(), "conclusion Aφ from premise φ"),
        Rule::NecAt => match concl {
            Formula::Sat(j, a) if a.as_ref() == prem[0] => nominal_param(params, "j", j),
            _ => Err(Violation::Shape { expected: "conclusion @_jφ from premise φ" }),
        },
        Rule::NameLite => {
            let ok = matches!(prem[0], Formula::Neg(a) if as_nom(a).is_some()) && *concl == Formula::Bot;
            shape(ok, "premise ¬i, conclusion ⊥")
        }
        Rule::Name | Rule::NameE => {
            let (i, phi) = prem[0]
                .as_implication()
                .and_then(|(i, phi)| Some((as_nom(i)?, phi)))
                .ok_or(Violation::Shape { expected: "premise i → φ" })?;
            shape(phi == concl, "conclusion φ from premise i → φ")?;
            nominal_param(params, "i", i)?;
            fresh(i, "φ", phi)
        }
        Rule::NameAt => {
            let Formula::Sat(j, phi) = prem[0] else {
                return Err(Violation::Shape { expected: "premise @_jφ" });
            };
            shape(phi.as_ref() == concl, "conclusion φ from premise @_jφ")?;
            nominal_param(params, "j", j)?;
            fresh(j, "φ", phi)
        }
        Rule::Paste => {
            const EXPECTED: &str = "premise ◇ⁿ(i ∧ ◇(j ∧ φ)) → ψ, conclusion ◇ⁿ(i ∧ ◇φ) → ψ";
            let (lhs, psi) = concl.as_implication().ok_or(Violation::Shape { expected: EXPECTED })?;
            let (n, core) = schema::strip_diamonds(lhs);
            let Formula::Conj(i, dphi) = core else { return Err(Violation::Shape { expected: EXPECTED }) };
            let (Some(i), Formula::Diamond(phi)) = (as_nom(i), dphi.as_ref()) else {
                return Err(Violation::Shape { expected: EXPECTED });
            };
            natural_param(params, "n", n)?;
            let (plhs, ppsi) = prem[0].as_implication().ok_or(Violation::Shape { expected: EXPECTED })?;
            let mut core = plhs;
            for _ in 0..n {
                let Formula::Diamond(a) = core else { return Err(Violation::Shape { expected: EXPECTED }) };
                core = a;
            }
            let j = match core {
                Formula::Conj(pi, rest) if as_nom(pi) == Some(i) => match rest.as_ref() {
                    Formula::Diamond(inner) => match inner.as_ref() {
                        Formula::Conj(j, pphi) if pphi == phi => as_nom(j),
                        _ => None,
                    },
                    _ => None,
                },
                _ => None,
            };
            let j = j.ok_or(Violation::Shape { expected: EXPECTED })?;
            shape(ppsi == psi, EXPECTED)?;
            nominal_param(params, "i", i)?;
            nominal_param(params, "j", j)?;
            distinct(i, j)?;
            fresh(j, "φ", phi)?;
            fresh(j, "ψ", psi)
        }
        Rule::BgAt => {
            const EXPECTED: &str = "premise @_i◇j ∧ @_jφ → ψ, conclusion @_i◇φ → ψ";
            let bad = || Violation::Shape { expected: EXPECTED };
            let (lhs, psi) = concl.as_implication().ok_or_else(bad)?;
            let Formula::Sat(i, dphi) = lhs else { return Err(bad()) };
            let Formula::Diamond(phi) = dphi.as_ref() else { return Err(bad()) };
            let (plhs, ppsi) = prem[0].as_implication().ok_or_else(bad)?;
            let Formula::Conj(left, right) = plhs else { return Err(bad()) };
            let j = match (left.as_ref(), right.as_ref()) {
                (Formula::Sat(i2, dj), Formula::Sat(j2, pphi)) if i2 == i && pphi == phi => match dj.as_ref() {
                    Formula::Diamond(j) if as_nom(j) == Some(j2) => j2,
                    _ => return Err(bad()),
                },
                _ => return Err(bad()),
            };
            shape(ppsi == psi, EXPECTED)?;
            nominal_param(params, "i", i)?;
            nominal_param(params, "j", j)?;
            distinct(i, j)?;
            fresh(j, "φ", phi)?;
            fresh(j, "ψ", psi)
        }
        Rule::BgEDiamond | Rule::BgEE => {
            const EXPECTED_D: &str = "premise E(i ∧ ◇j) ∧ E(j ∧ φ) → ψ, conclusion E(i ∧ ◇φ) → ψ";
            const EXPECTED_E: &str = "premise E(i ∧ Ej) ∧ E(j ∧ φ) → ψ, conclusion E(i ∧ Eφ) → ψ";
            let expected = if rule == Rule::BgEDiamond { EXPECTED_D } else { EXPECTED_E };
            let bad = || Violation::Shape { expected };
            // The modality between i and φ: ◇ or E.
            let unwrap = |f: &Formula| -> Option<Formula> {
                match (rule, f) {
                    (Rule::BgEDiamond, Formula::Diamond(a)) | (Rule::BgEE, Formula::Exists(a)) => Some(a.as_ref().clone()),
                    _ => None,
                }
            };
            let (lhs, psi) = concl.as_implication().ok_or_else(bad)?;
            let (i, mphi) = as_exists_nominal(lhs).ok_or_else(bad)?;
            let phi = unwrap(mphi).ok_or_else(bad)?;
            let (plhs, ppsi) = prem[0].as_implication().ok_or_else(bad)?;
            let Formula::Conj(left, right) = plhs else { return Err(bad()) };
            let (i2, mj) = as_exists_nominal(left).ok_or_else(bad)?;
            let (j, pphi) = as_exists_nominal(right).ok_or_else(bad)?;
            let mj = unwrap(mj).ok_or_else(bad)?;
            shape(i2 == i && as_nom(&mj) == Some(j) && *pphi == phi && ppsi == psi, expected)?;
            nominal_param(params, "i", i)?;
            nominal_param(params, "j", j)?;
            distinct(i, j)?;
            fresh(j, "φ", &phi)?;
            fresh(j, "ψ", psi)
        }
    }
}

/// Builds derivations step by step from formula text in the logic's
/// language. Each call returns the new step's 1-based number.
#[derive(Clone, Debug)]
pub struct Builder {
    derivation: Derivation,
}

impl Builder {
    pub fn new(logic: Logic) -> Self {
        Builder { derivation: Derivation { logic, steps: Vec::new() } }
    }

    fn parse(&self, text: &str) -> Result<Formula> {
        parse(text, self.derivation.logic.base)
    }

    fn push(&mut self, step: Step) -> usize {
        self.derivation.steps.push(step);
        self.derivation.steps.len()
    }

    pub fn axiom(&mut self, schema: Schema, text: &str) -> Result<usize> {
        let formula = self.parse(text)?;
        Ok(self.push(Step::Axiom { schema, params: Params::new(), formula }))
    }

    pub fn sigma(&mut self, index: usize, substitution: SubstitutionMap, text: &str) -> Result<usize> {
        let formula = self.parse(text)?;
        Ok(self.push(Step::Sigma { index, substitution, formula }))
    }

    pub fn rule(&mut self, rule: Rule, premises: &[usize], text: &str) -> Result<usize> {
        let formula = self.parse(text)?;
        Ok(self.push(Step::Rule { rule, premises: premises.to_vec(), params: Params::new(), substitution: None, formula }))
    }

    pub fn subst(&mut self, premise: usize, substitution: SubstitutionMap, text: &str) -> Result<usize> {
        let formula = self.parse(text)?;
        Ok(self.push(Step::Rule {
            rule: Rule::Subst,
            premises: vec![premise],
            params: Params::new(),
            substitution: Some(substitution),
            formula,
        }))
    }

    pub fn finish(self) -> Derivation {
        self.derivation
    }
}
