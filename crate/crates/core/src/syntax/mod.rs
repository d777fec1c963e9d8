//! Formulas of the hybrid languages H, H(@) and H(E).
//!
//! Only the core connectives are AST nodes. `top`, `|`, `->`, `<->`, `[]`
//! and `A` are expanded by the parser (and by the builder helpers below),
//! so every semantic function has exactly one case per connective.

mod json;
mod parser;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use parser::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Language {
    /// Nominals only.
    #[serde(rename = "H")]
    H,
    /// Nominals and the satisfaction operator.
    #[serde(rename = "H_AT")]
    HAt,
    /// Nominals and the existential modality.
    #[serde(rename = "H_E")]
    HE,
}

impl Language {
    pub fn name(self) -> &'static str {
        match self {
            Language::H => "H",
            Language::HAt => "H_AT",
            Language::HE => "H_E",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Language {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" => Ok(Language::H),
            "H_AT" | "HAt" | "H@" | "H(@)" => Ok(Language::HAt),
            "H_E" | "HE" | "H(E)" => Ok(Language::HE),
            other => Err(Error::Input(format!("unknown language `{other}`"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bot,
    Prop(String),
    Nom(String),
    Neg(Box<Formula>),
    Conj(Box<Formula>, Box<Formula>),
    Diamond(Box<Formula>),
    /// `@_j φ`; the subscript is always a nominal name.
    Sat(String, Box<Formula>),
    Exists(Box<Formula>),
}

/// Whether a name belongs to the nominal sort. Names starting with `i`,
/// `j` or `k` are nominals; every other identifier is a propositional
/// variable.
pub fn is_nominal_name(name: &str) -> bool {
    matches!(name.as_bytes().first(), Some(b'i' | b'j' | b'k'))
}

// Builders. The derived connectives expand to core nodes here and in the
// parser, and nowhere else.
impl Formula {
    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Prop(name.into())
    }

    pub fn nom(name: impl Into<String>) -> Formula {
        Formula::Nom(name.into())
    }

    pub fn top() -> Formula {
        Formula::Bot.not()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Neg(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Formula {
        Formula::Conj(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Formula {
        self.not().and(rhs.not()).not()
    }

    pub fn implies(self, rhs: Formula) -> Formula {
        self.and(rhs.not()).not()
    }

    pub fn iff(self, rhs: Formula) -> Formula {
        self.clone().implies(rhs.clone()).and(rhs.implies(self))
    }

    pub fn diamond(self) -> Formula {
        Formula::Diamond(Box::new(self))
    }

    pub fn boxed(self) -> Formula {
        self.not().diamond().not()
    }

    pub fn at(self, nominal: impl Into<String>) -> Formula {
        Formula::Sat(nominal.into(), Box::new(self))
    }

    pub fn exists(self) -> Formula {
        Formula::Exists(Box::new(self))
    }

    pub fn always(self) -> Formula {
        self.not().exists().not()
    }

    pub fn diamonds(self, n: usize) -> Formula {
        (0..n).fold(self, |f, _| f.diamond())
    }

    pub fn boxes(self, n: usize) -> Formula {
        (0..n).fold(self, |f, _| f.boxed())
    }

    /// Splits `¬(a ∧ ¬b)` into `(a, b)`.
    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Neg(inner) => match inner.as_ref() {
                Formula::Conj(a, nb) => match nb.as_ref() {
                    Formula::Neg(b) => Some((a, b)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }
}

impl Formula {
    /// Smallest language containing every connective used.
    pub fn language(&self) -> Result<Language> {
        let (mut sat, mut exists) = (false, false);
        self.visit(&mut |f| match f {
            Formula::Sat(..) => sat = true,
            Formula::Exists(_) => exists = true,
            _ => {}
        });
        match (sat, exists) {
            (true, true) => Err(Error::Language { connective: "E", language: Language::HAt }),
            (true, false) => Ok(Language::HAt),
            (false, true) => Ok(Language::HE),
            (false, false) => Ok(Language::H),
        }
    }

    /// Rejects connectives outside `lang`.
    pub fn check_language(&self, lang: Language) -> Result<()> {
        let mut err = None;
        self.visit(&mut |f| {
            if err.is_some() {
                return;
            }
            match (f, lang) {
                (Formula::Sat(..), Language::H | Language::HE) => {
                    err = Some(Error::Language { connective: "@", language: lang })
                }
                (Formula::Exists(_), Language::H | Language::HAt) => {
                    err = Some(Error::Language { connective: "E", language: lang })
                }
                _ => {}
            }
        });
        err.map_or(Ok(()), Err)
    }

    fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        match self {
            Formula::Bot | Formula::Prop(_) | Formula::Nom(_) => {}
            Formula::Neg(a) | Formula::Diamond(a) | Formula::Sat(_, a) | Formula::Exists(a) => {
                a.visit(f)
            }
            Formula::Conj(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Prop(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Nominals occurring in the formula, including `@` subscripts.
    pub fn nominals(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Nom(i) | Formula::Sat(i, _) => {
                out.insert(i.clone());
            }
            _ => {}
        });
        out
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Bot | Formula::Prop(_) | Formula::Nom(_) => 1,
            Formula::Neg(a) | Formula::Diamond(a) | Formula::Sat(_, a) | Formula::Exists(a) => {
                1 + a.depth()
            }
            Formula::Conj(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

/// Whether a propositional variable or nominal named `symbol` occurs in
/// `phi`, counting `@` subscripts as occurrences.
pub fn occurs(symbol: &str, phi: &Formula) -> bool {
    let mut found = false;
    phi.visit(&mut |f| match f {
        Formula::Prop(p) | Formula::Nom(p) | Formula::Sat(p, _) if p == symbol => found = true,
        _ => {}
    });
    found
}

/// Sorted substitution: formulas for propositional variables, nominals
/// for nominals. Unmapped symbols are left alone.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionMap {
    #[serde(default)]
    pub props: BTreeMap<String, Formula>,
    #[serde(default)]
    pub noms: BTreeMap<String, String>,
}

impl SubstitutionMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn prop(mut self, name: impl Into<String>, f: Formula) -> Self {
        self.props.insert(name.into(), f);
        self
    }

    pub fn nom(mut self, from: impl Into<String>, to: impl Into<String>) -> Self {
        self.noms.insert(from.into(), to.into());
        self
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty() && self.noms.is_empty()
    }

    fn rename<'a>(&'a self, nominal: &'a str) -> &'a str {
        self.noms.get(nominal).map_or(nominal, String::as_str)
    }
}

/// Simultaneous sorted substitution.
pub fn sorted_substitute(phi: &Formula, sigma: &SubstitutionMap) -> Formula {
    match phi {
        Formula::Bot => Formula::Bot,
        Formula::Prop(p) => sigma.props.get(p).cloned().unwrap_or_else(|| phi.clone()),
        Formula::Nom(i) => Formula::Nom(sigma.rename(i).to_owned()),
        Formula::Neg(a) => sorted_substitute(a, sigma).not(),
        Formula::Conj(a, b) => sorted_substitute(a, sigma).and(sorted_substitute(b, sigma)),
        Formula::Diamond(a) => sorted_substitute(a, sigma).diamond(),
        Formula::Sat(i, a) => sorted_substitute(a, sigma).at(sigma.rename(i)),
        Formula::Exists(a) => sorted_substitute(a, sigma).exists(),
    }
}

/// Equation `lhs ≈ rhs` between formulas of one language.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Formula,
    pub rhs: Formula,
}

impl Equation {
    pub fn new(lhs: Formula, rhs: Formula) -> Self {
        Equation { lhs, rhs }
    }

    /// The translation `φ ↦ φ ≈ ⊤` used for theories.
    pub fn valid(phi: Formula) -> Self {
        Equation { lhs: phi, rhs: Formula::top() }
    }

    pub fn props(&self) -> BTreeSet<String> {
        let mut s = self.lhs.props();
        s.extend(self.rhs.props());
        s
    }

    pub fn nominals(&self) -> BTreeSet<String> {
        let mut s = self.lhs.nominals();
        s.extend(self.rhs.nominals());
        s
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≈ {}", self.lhs, self.rhs)
    }
}

// Printing emits only core connectives, fully parenthesising conjunctions,
// so `parse(print(f)) == f`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Bot => f.write_str("bot"),
            Formula::Prop(p) | Formula::Nom(p) => f.write_str(p),
            Formula::Neg(a) => write!(f, "~{a}"),
            Formula::Conj(a, b) => write!(f, "({a} & {b})"),
            Formula::Diamond(a) => write!(f, "<>{a}"),
            Formula::Sat(i, a) => write!(f, "@{i} {a}"),
            Formula::Exists(a) => write!(f, "E {a}"),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}
