//! Assignments, meaning of formulas, and truth of equations on finite
//! hybrid structures.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{HybridStructure, Kind};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::generate;
use crate::syntax::{Equation, Formula, Language};

/// Default cap on the number of assignments a single check may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    #[serde(default)]
    pub props: BTreeMap<String, Element>,
    #[serde(default)]
    pub noms: BTreeMap<String, Element>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn prop(mut self, name: impl Into<String>, value: Element) -> Self {
        self.props.insert(name.into(), value);
        self
    }

    pub fn nom(mut self, name: impl Into<String>, value: Element) -> Self {
        self.noms.insert(name.into(), value);
        self
    }
}

/// The value of `phi` under `v`. Orthodox structures read nominals from
/// their constants and ignore `v.noms`.
pub fn meaning(h: &HybridStructure, v: &Assignment, phi: &Formula) -> Result<Element> {
    let program = Program::compile(h, phi, &v.props.keys().cloned().collect::<Vec<_>>(), &v.noms.keys().cloned().collect::<Vec<_>>())?;
    let range = h.nominal_range();
    let mut slots = Vec::with_capacity(v.props.len() + v.noms.len());
    for &a in v.props.values() {
        slots.push(h.bao().check(a)?);
    }
    if h.kind() != Kind::Orthodox {
        for &x in v.noms.values() {
            if !range.contains(&x) {
                return Err(Error::NotDesignated(x));
            }
            slots.push(x);
        }
    }
    program.run(h, &slots)
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Bot,
    Load(usize),
    Const(Element),
    Neg,
    Conj,
    Diamond,
    Sat(usize),
    SatConst(Element),
}

/// A formula flattened to postfix form with symbols resolved to slots.
struct Program {
    ops: Vec<Op>,
}

impl Program {
    /// Props occupy slots `0..props.len()`, nominals the slots after them.
    fn compile(h: &HybridStructure, phi: &Formula, props: &[String], noms: &[String]) -> Result<Self> {
        let orthodox = h.kind() == Kind::Orthodox;
        let nominal = |name: &str| -> Result<Op> {
            if orthodox {
                h.constant(name).map(Op::Const).ok_or_else(|| Error::UnboundSymbol(name.into()))
            } else {
                noms.iter()
                    .position(|n| n == name)
                    .map(|i| Op::Load(props.len() + i))
                    .ok_or_else(|| Error::UnboundSymbol(name.into()))
            }
        };
        fn go(
            f: &Formula,
            ops: &mut Vec<Op>,
            props: &[String],
            nominal: &dyn Fn(&str) -> Result<Op>,
        ) -> Result<()> {
            match f {
                Formula::Bot => ops.push(Op::Bot),
                Formula::Prop(p) => {
                    let i = props.iter().position(|q| q == p).ok_or_else(|| Error::UnboundSymbol(p.clone()))?;
                    ops.push(Op::Load(i));
                }
                Formula::Nom(i) => ops.push(nominal(i)?),
                Formula::Neg(a) => {
                    go(a, ops, props, nominal)?;
                    ops.push(Op::Neg);
                }
                Formula::Conj(a, b) => {
                    go(a, ops, props, nominal)?;
                    go(b, ops, props, nominal)?;
                    ops.push(Op::Conj);
                }
                Formula::Diamond(a) => {
                    go(a, ops, props, nominal)?;
                    ops.push(Op::Diamond);
                }
                Formula::Sat(i, a) => {
                    go(a, ops, props, nominal)?;
                    ops.push(match nominal(i)? {
                        Op::Load(slot) => Op::Sat(slot),
                        Op::Const(x) => Op::SatConst(x),
                        _ => unreachable!("nominals resolve to loads or constants"),
                    });
                }
                Formula::Exists(_) => return Err(Error::Language { connective: "E", language: Language::HAt }),
            }
            Ok(())
        }
        let mut ops = Vec::with_capacity(phi.size());
        go(phi, &mut ops, props, &nominal)?;
        Ok(Program { ops })
    }

    fn run(&self, h: &HybridStructure, slots: &[Element]) -> Result<Element> {
        let bao = h.bao();
        let mut stack: Vec<Element> = Vec::with_capacity(16);
        for op in &self.ops {
            let v = match *op {
                Op::Bot => Element::BOTTOM,
                Op::Load(i) => slots[i],
                Op::Const(e) => e,
                Op::Neg => bao.neg(stack.pop().expect("operand")),
                Op::Conj => {
                    let b = stack.pop().expect("operand");
                    stack.pop().expect("operand") & b
                }
                Op::Diamond => bao.diamond(stack.pop().expect("operand")),
                Op::Sat(i) => h.at(slots[i], stack.pop().expect("operand"))?,
                Op::SatConst(x) => h.at(x, stack.pop().expect("operand"))?,
            };
            stack.push(v);
        }
        Ok(stack.pop().expect("program leaves one value"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Falsifier {
    pub assignment: Assignment,
    pub lhs: Element,
    pub rhs: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub falsifier: Option<Falsifier>,
    pub checked: u64,
}

pub fn equation_true(h: &HybridStructure, eq: &Equation) -> Result<Verdict> {
    equation_true_with_budget(h, eq, DEFAULT_BUDGET)
}

/// Enumerates every assignment of the occurring symbols (variables in
/// sorted order, the last one varying fastest) and reports the first
/// assignment separating the two sides.
pub fn equation_true_with_budget(h: &HybridStructure, eq: &Equation, budget: u64) -> Result<Verdict> {
    let props: Vec<String> = eq.props().into_iter().collect();
    let noms: Vec<String> =
        if h.kind() == Kind::Orthodox { Vec::new() } else { eq.nominals().into_iter().collect() };
    let lhs = Program::compile(h, &eq.lhs, &props, &noms)?;
    let rhs = Program::compile(h, &eq.rhs, &props, &noms)?;

    let elements: Vec<Element> = h.bao().elements().collect();
    let range = h.nominal_range();
    let domains: Vec<&[Element]> = props
        .iter()
        .map(|_| elements.as_slice())
        .chain(noms.iter().map(|_| range.as_slice()))
        .collect();
    let needed = domains.iter().try_fold(1u128, |acc, d| acc.checked_mul(d.len() as u128)).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    if needed == 0 {
        return Ok(Verdict { holds: true, falsifier: None, checked: 0 });
    }

    let mut idx = vec![0usize; domains.len()];
    let mut slots: Vec<Element> = domains.iter().map(|d| d[0]).collect();
    let mut checked = 0u64;
    loop {
        checked += 1;
        let (l, r) = (lhs.run(h, &slots)?, rhs.run(h, &slots)?);
        if l != r {
            let mut assignment = Assignment::new();
            for (name, &v) in props.iter().zip(&slots) {
                assignment.props.insert(name.clone(), v);
            }
            for (name, &v) in noms.iter().zip(&slots[props.len()..]) {
                assignment.noms.insert(name.clone(), v);
            }
            return Ok(Verdict { holds: false, falsifier: Some(Falsifier { assignment, lhs: l, rhs: r }), checked });
        }
        // Odometer step.
        let mut pos = domains.len();
        loop {
            if pos == 0 {
                return Ok(Verdict { holds: true, falsifier: None, checked });
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < domains[pos].len() {
                slots[pos] = domains[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            slots[pos] = domains[pos][0];
        }
    }
}

/// `h ⊨ φ ≈ ⊤`.
pub fn valid(h: &HybridStructure, phi: &Formula) -> Result<Verdict> {
    equation_true(h, &Equation::valid(phi.clone()))
}

/// Whether every member of `sigma` is valid on `h`.
pub fn validates_theory(h: &HybridStructure, sigma: &[Formula]) -> Result<bool> {
    for phi in sigma {
        if !valid(h, phi)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches every hybrid algebra with at most `max_atoms` atoms, in
/// generation order, for one refuting `eq`.
pub fn countermodel_search(
    eq: &Equation,
    max_atoms: usize,
    budget: u64,
) -> Result<Option<(HybridStructure, Assignment)>> {
    for k in 1..=max_atoms {
        for h in generate::hybrid_algebras(k) {
            let verdict = equation_true_with_budget(&h, eq, budget)?;
            if let Some(f) = verdict.falsifier {
                return Ok(Some((h, f.assignment)));
            }
        }
    }
    Ok(None)
}
