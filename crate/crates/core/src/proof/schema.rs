//! Axiom schemas and matching of candidate instances against them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::taut::is_tautology_instance;
use crate::syntax::{parse, Formula, Language};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Schema {
    Taut,
    Dual,
    K,
    Nom,
    #[serde(rename = "K_at")]
    KAt,
    Selfdual,
    Intro,
    Ref,
    Agree,
    Back,
    #[serde(rename = "K_A")]
    KA,
    #[serde(rename = "Dual_A")]
    DualA,
    #[serde(rename = "Incl_j")]
    InclJ,
    #[serde(rename = "Nom_E")]
    NomE,
    #[serde(rename = "T_E")]
    TE,
    #[serde(rename = "4_E")]
    FourE,
    #[serde(rename = "B_E")]
    BE,
    #[serde(rename = "Incl_diamond")]
    InclDiamond,
}

impl Schema {
    pub const ALL: [Schema; 18] = [
        Schema::Taut,
        Schema::Dual,
        Schema::K,
        Schema::Nom,
        Schema::KAt,
        Schema::Selfdual,
        Schema::Intro,
        Schema::Ref,
        Schema::Agree,
        Schema::Back,
        Schema::KA,
        Schema::DualA,
        Schema::InclJ,
        Schema::NomE,
        Schema::TE,
        Schema::FourE,
        Schema::BE,
        Schema::InclDiamond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Schema::Taut => "Taut",
            Schema::Dual => "Dual",
            Schema::K => "K",
            Schema::Nom => "Nom",
            Schema::KAt => "K_at",
            Schema::Selfdual => "Selfdual",
            Schema::Intro => "Intro",
            Schema::Ref => "Ref",
            Schema::Agree => "Agree",
            Schema::Back => "Back",
            Schema::KA => "K_A",
            Schema::DualA => "Dual_A",
            Schema::InclJ => "Incl_j",
            Schema::NomE => "Nom_E",
            Schema::TE => "T_E",
            Schema::FourE => "4_E",
            Schema::BE => "B_E",
            Schema::InclDiamond => "Incl_diamond",
        }
    }

    /// Whether the schema is an axiom of the logics over `lang`.
    pub fn available_in(self, lang: Language) -> bool {
        match self {
            Schema::Taut | Schema::Dual | Schema::K => true,
            Schema::Nom => lang == Language::H,
            Schema::KAt | Schema::Selfdual | Schema::Intro | Schema::Ref | Schema::Agree | Schema::Back => {
                lang == Language::HAt
            }
            _ => lang == Language::HE,
        }
    }

    /// The schema as a formula: propositional variables are formula
    /// metavariables and nominals are nominal metavariables. `Taut` and
    /// `Nom` have no single pattern.
    pub fn pattern(self) -> Option<&'static Formula> {
        static PATTERNS: OnceLock<BTreeMap<Schema, Formula>> = OnceLock::new();
        let table = PATTERNS.get_or_init(|| {
            let src: [(Schema, &str, Language); 16] = [
                (Schema::Dual, "<>p <-> ~[]~p", Language::H),
                (Schema::K, "[](p -> q) -> ([]p -> []q)", Language::H),
                (Schema::KAt, "@j(p -> q) -> (@j p -> @j q)", Language::HAt),
                (Schema::Selfdual, "~@j p <-> @j ~p", Language::HAt),
                (Schema::Intro, "j & p -> @j p", Language::HAt),
                (Schema::Ref, "@j j", Language::HAt),
                (Schema::Agree, "@i @j p -> @j p", Language::HAt),
                (Schema::Back, "<>@j p -> @j p", Language::HAt),
                (Schema::KA, "A(p -> q) -> (A p -> A q)", Language::HE),
                (Schema::DualA, "E p <-> ~A ~p", Language::HE),
                (Schema::InclJ, "E j", Language::HE),
                (Schema::NomE, "E(i & p) -> A(i -> p)", Language::HE),
                (Schema::TE, "p -> E p", Language::HE),
                (Schema::FourE, "E E p -> E p", Language::HE),
                (Schema::BE, "p -> A E p", Language::HE),
                (Schema::InclDiamond, "<>p -> E p", Language::HE),
            ];
            src.into_iter().map(|(s, text, lang)| (s, parse(text, lang).expect("schema pattern parses"))).collect()
        });
        table.get(&self)
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A schema or rule parameter: a natural (`n`, `m`) or a formula. Nominal
/// parameters are formulas of the form `Nom(name)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Natural(usize),
    Formula(Formula),
}

pub type Params = BTreeMap<String, Param>;

/// The metavariable bindings under which `phi` is an instance of `schema`.
/// `Taut` instances carry no parameters.
pub fn match_axiom(schema: Schema, phi: &Formula) -> Option<Params> {
    match schema {
        Schema::Taut => is_tautology_instance(phi).then(Params::new),
        Schema::Nom => match_nom(phi),
        other => {
            let mut params = Params::new();
            unify(other.pattern().expect("pattern"), phi, &mut params).then_some(params)
        }
    }
}

fn bind(params: &mut Params, name: &str, value: Param) -> bool {
    match params.get(name) {
        Some(old) => *old == value,
        None => {
            params.insert(name.to_string(), value);
            true
        }
    }
}

fn unify(pat: &Formula, f: &Formula, params: &mut Params) -> bool {
    match (pat, f) {
        (Formula::Bot, Formula::Bot) => true,
        (Formula::Prop(p), _) => bind(params, p, Param::Formula(f.clone())),
        (Formula::Nom(i), Formula::Nom(_)) => bind(params, i, Param::Formula(f.clone())),
        (Formula::Neg(a), Formula::Neg(b)) | (Formula::Diamond(a), Formula::Diamond(b)) => unify(a, b, params),
        (Formula::Exists(a), Formula::Exists(b)) => unify(a, b, params),
        (Formula::Conj(a1, a2), Formula::Conj(b1, b2)) => unify(a1, b1, params) && unify(a2, b2, params),
        (Formula::Sat(i, a), Formula::Sat(j, b)) => {
            bind(params, i, Param::Formula(Formula::nom(j.clone()))) && unify(a, b, params)
        }
        _ => false,
    }
}

/// Strips a maximal prefix of `◇`s.
pub(crate) fn strip_diamonds(mut f: &Formula) -> (usize, &Formula) {
    let mut n = 0;
    while let Formula::Diamond(a) = f {
        n += 1;
        f = a;
    }
    (n, f)
}

/// Strips a maximal prefix of `□`s, each spelled `¬◇¬`.
fn strip_boxes(mut f: &Formula) -> (usize, &Formula) {
    let mut m = 0;
    loop {
        match f {
            Formula::Neg(a) => match a.as_ref() {
                Formula::Diamond(b) => match b.as_ref() {
                    Formula::Neg(c) => {
                        m += 1;
                        f = c;
                    }
                    _ => return (m, f),
                },
                _ => return (m, f),
            },
            _ => return (m, f),
        }
    }
}

/// `◇ⁿ(i ∧ p) → □ᵐ(i → p)`.
fn match_nom(phi: &Formula) -> Option<Params> {
    let (lhs, rhs) = phi.as_implication()?;
    let (n, inner_l) = strip_diamonds(lhs);
    let (m, inner_r) = strip_boxes(rhs);
    let Formula::Conj(i, p) = inner_l else { return None };
    let Formula::Nom(_) = i.as_ref() else { return None };
    let (i2, p2) = inner_r.as_implication()?;
    if i2 != i.as_ref() || p2 != p.as_ref() {
        return None;
    }
    Some(Params::from([
        ("n".to_string(), Param::Natural(n)),
        ("m".to_string(), Param::Natural(m)),
        ("i".to_string(), Param::Formula(i.as_ref().clone())),
        ("p".to_string(), Param::Formula(p.as_ref().clone())),
    ]))
}

/// The instance of `schema` under `params`; `n` and `m` apply to `Nom`.
pub fn instantiate(schema: Schema, params: &Params) -> Option<Formula> {
    let formula = |k: &str| match params.get(k) {
        Some(Param::Formula(f)) => Some(f.clone()),
        _ => None,
    };
    let natural = |k: &str| match params.get(k) {
        Some(Param::Natural(n)) => Some(*n),
        _ => None,
    };
    match schema {
        Schema::Taut => None,
        Schema::Nom => {
            let (i, p) = (formula("i")?, formula("p")?);
            if !matches!(i, Formula::Nom(_)) {
                return None;
            }
            let lhs = i.clone().and(p.clone()).diamonds(natural("n")?);
            Some(lhs.implies(i.implies(p).boxes(natural("m")?)))
        }
        other => fill(other.pattern()?, params),
    }
}

fn fill(pat: &Formula, params: &Params) -> Option<Formula> {
    let nominal = |k: &str| match params.get(k) {
        Some(Param::Formula(Formula::Nom(j))) => Some(j.clone()),
        _ => None,
    };
    Some(match pat {
        Formula::Bot => Formula::Bot,
        Formula::Prop(p) => match params.get(p) {
            Some(Param::Formula(f)) => f.clone(),
            _ => return None,
        },
        Formula::Nom(i) => Formula::Nom(nominal(i)?),
        Formula::Neg(a) => fill(a, params)?.not(),
        Formula::Conj(a, b) => fill(a, params)?.and(fill(b, params)?),
        Formula::Diamond(a) => fill(a, params)?.diamond(),
        Formula::Sat(i, a) => fill(a, params)?.at(nominal(i)?),
        Formula::Exists(a) => fill(a, params)?.exists(),
    })
}
