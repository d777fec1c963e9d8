//! Relativizing an orthodox interpretation to the `◇⁻¹`-closure `D` of some
//! seed atoms, and turning a refuting orthodox interpretation into a
//! refuting hybrid structure.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::structure::{pair, product};
use crate::algebra::{apply_table, AtTable, FiniteBao, HybridStructure, Kind};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::evaluation::{self, meaning, Assignment};
use crate::syntax::Formula;

/// Name used for the default constant when no nominal is relevant.
pub const DEFAULT_NOMINAL: &str = "i_default";

/// `D = ⋁ₙ (◇⁻¹)ⁿ(seeds)` and the number of `◇⁻¹` steps until the join
/// stopped growing.
pub fn compute_d(bao: &FiniteBao, seeds: &[Element]) -> Result<(Element, usize)> {
    if seeds.is_empty() {
        return Err(Error::InvalidStructure("at least one seed atom is needed".into()));
    }
    for &s in seeds {
        if !s.is_atom() || !bao.contains(s) {
            return Err(Error::NotAtom(s));
        }
    }
    let mut frontier = seeds.iter().fold(Element::BOTTOM, |acc, &s| acc | s);
    let mut d = frontier;
    let mut steps = 0;
    loop {
        // Once a step adds nothing, no later step can: ◇⁻¹ is monotone.
        frontier = bao.diamond_inv(frontier);
        if frontier.leq(d) {
            return Ok((d, steps));
        }
        d |= frontier;
        steps += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "value", rename_all = "lowercase")]
pub enum ConstantClass {
    Bottom,
    /// An atom of `A_D`, given as a base element.
    Atom(Element),
}

/// `A_D` together with the maps relating it to the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relativization {
    base: HybridStructure,
    seeds: Vec<Element>,
    d: Element,
    steps: usize,
    /// Base atom index of each atom of `A_D`.
    base_atoms: Vec<usize>,
    local: HybridStructure,
}

impl Relativization {
    /// Computes `D` from `seeds` and relativizes `base` to it.
    pub fn from_seeds(base: &HybridStructure, seeds: &[Element]) -> Result<Self> {
        let (d, steps) = compute_d(base.bao(), seeds)?;
        let mut r = Self::new(base, d)?;
        r.seeds = seeds.to_vec();
        r.steps = steps;
        Ok(r)
    }

    /// Relativizes `base` to an arbitrary `d` with `d ≤ □d`.
    pub fn new(base: &HybridStructure, d: Element) -> Result<Self> {
        if base.kind() != Kind::Orthodox {
            return Err(Error::Kind(format!("relativization starts from an orthodox interpretation, not {}", base.kind().name())));
        }
        let bao = base.bao();
        bao.check(d)?;
        if d.is_bottom() {
            return Err(Error::InvalidStructure("D must be nonzero".into()));
        }
        if !d.leq(bao.boxed(d)) {
            return Err(Error::BoxDViolation(d));
        }
        let base_atoms: Vec<usize> = d.indices().collect();
        let to_local = |a: Element| local_of(&base_atoms, a & d);
        // h commutes with ◇ iff atoms outside D see nothing inside D.
        if let Some(y) = (0..bao.atom_count()).find(|&y| !d.has(y) && !(bao.diamond_on_atoms()[y] & d).is_bottom()) {
            return Err(Error::InternalInvariantBreach(format!("◇ of atom {y} outside D meets D")));
        }
        let local_bao = FiniteBao::new(base_atoms.iter().map(|&y| to_local(bao.diamond_on_atoms()[y])).collect())?;
        let constants = base.constants().iter().map(|(n, &s)| (n.clone(), to_local(s))).collect();
        let default = base.default_constant().map(to_local);
        let mut local = HybridStructure::orthodox(local_bao, constants, default)?;
        if base.at_table().is_some() {
            let coords: BTreeSet<Element> = local.at_coordinates().into_iter().collect();
            let table = AtTable::canonical(local.bao(), coords.iter().copied());
            // The clause `@ᴰ_s a = D if s ≤ a, else ⊥` is the canonical
            // row for every coordinate, atom or not.
            local = local.with_at_table(table)?;
        }
        Ok(Relativization { base: base.clone(), seeds: Vec::new(), d, steps: 0, base_atoms, local })
    }

    pub fn base(&self) -> &HybridStructure {
        &self.base
    }

    pub fn seeds(&self) -> &[Element] {
        &self.seeds
    }

    pub fn d(&self) -> Element {
        self.d
    }

    /// `◇⁻¹` steps taken before `D` stabilized.
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// `A_D` with its atoms renumbered `0..|D|`.
    pub fn local(&self) -> &HybridStructure {
        &self.local
    }

    /// The homomorphism `h(a) = a ∧ D`, as a base element.
    pub fn h(&self, a: Element) -> Element {
        a & self.d
    }

    /// Renumbers `h(a)` into `A_D`.
    pub fn to_local(&self, a: Element) -> Element {
        local_of(&self.base_atoms, a & self.d)
    }

    pub fn to_base(&self, local: Element) -> Element {
        Element::from_indices(local.indices().map(|i| self.base_atoms[i]))
    }

    /// `s_j ∧ D` as a base element.
    pub fn relativized_constant(&self, nominal: &str) -> Result<Element> {
        self.base.constant(nominal).map(|s| s & self.d).ok_or_else(|| Error::UnboundSymbol(nominal.into()))
    }

    fn at_mode(&self) -> bool {
        self.base.at_table().is_some()
    }

    /// Classifies `s_j ∧ D` for each nominal as `⊥` or an atom. Requires
    /// the base to satisfy the `Nom` inequality for those nominals (or the
    /// `@` laws when it carries `@`).
    pub fn classify_constants(&self, nominals: &[String]) -> Result<BTreeMap<String, ConstantClass>> {
        if self.at_mode() {
            if let Some(v) = self.base.check_at_axioms()?.first() {
                return Err(Error::SchemaUnchecked(format!("@ law {} fails at {:?}", v.law, v.x)));
            }
        } else {
            for n in nominals {
                if let Some(v) = self.base.nom_schema_violation(n)? {
                    return Err(Error::SchemaUnchecked(format!(
                        "Nom fails for `{}` at n={}, m={}, a={:?}",
                        v.nominal, v.n, v.m, v.a
                    )));
                }
            }
        }
        let mut out = BTreeMap::new();
        for n in nominals {
            let s = self.relativized_constant(n)?;
            let class = if s.is_bottom() {
                if self.at_mode() {
                    return Err(Error::InternalInvariantBreach(format!("constant `{n}` vanishes in A_D under @")));
                }
                ConstantClass::Bottom
            } else if s.is_atom() {
                ConstantClass::Atom(s)
            } else {
                return Err(Error::InternalInvariantBreach(format!("constant `{n}` relativizes to {s:?}")));
            };
            out.insert(n.clone(), class);
        }
        Ok(out)
    }

    /// First `(nominal, a)` where `h(@_{s_j} a) ≠ @ᴰ_{h(s_j)} h(a)`.
    pub fn at_homomorphism_violation(&self, nominals: &[String]) -> Result<Option<(String, Element)>> {
        for n in nominals {
            let s = self.base.constant(n).ok_or_else(|| Error::UnboundSymbol(n.clone()))?;
            let local_s = self.to_local(s);
            for a in self.base.bao().elements() {
                let lhs = self.h(self.base.at(s, a)?);
                let rhs = self.to_base(self.local.at(local_s, self.to_local(a))?);
                if lhs != rhs {
                    return Ok(Some((n.clone(), a)));
                }
            }
        }
        Ok(None)
    }

    /// `A_D` as a hybrid algebra whose designated atoms are the nonzero
    /// relativized constants of `nominals`.
    pub fn as_hybrid(&self, nominals: &[String]) -> Result<HybridStructure> {
        let mut x = Element::BOTTOM;
        for n in nominals {
            x |= self.to_local(self.relativized_constant(n)?);
        }
        let bao = self.local.bao().clone();
        if x.is_bottom() {
            Ok(HybridStructure::degenerate(bao))
        } else {
            HybridStructure::hybrid(bao, x)
        }
    }

    /// `ν_D(p) = h(ν(p))`, renumbered into `A_D`.
    pub fn relativize_props(&self, props: &BTreeMap<String, Element>) -> BTreeMap<String, Element> {
        props.iter().map(|(p, &a)| (p.clone(), self.to_local(a))).collect()
    }
}

fn local_of(base_atoms: &[usize], a: Element) -> Element {
    Element::from_indices(base_atoms.iter().enumerate().filter(|(_, &y)| a.has(y)).map(|(i, _)| i))
}

/// For each nominal, the atom `x ≤ s_j` with `d ≤ @_{s_j} x`: the point the
/// refutation atom `d` takes `j` to name.
pub fn anchored_seeds(base: &HybridStructure, d: Element, nominals: &[String]) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for n in nominals {
        let s = base.constant(n).ok_or_else(|| Error::UnboundSymbol(n.clone()))?;
        let mut anchors = Vec::new();
        for x in s.indices().map(Element::atom) {
            if d.leq(base.at(s, x)?) {
                anchors.push(x);
            }
        }
        match anchors.as_slice() {
            [x] => out.push(*x),
            _ => {
                return Err(Error::InternalInvariantBreach(format!(
                    "`{n}` has {} anchors below {s:?} for {d:?}",
                    anchors.len()
                )))
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    /// Every relevant constant survives in `A_D`.
    One,
    /// Some relevant constants vanish, some survive.
    Two,
    /// Every relevant constant vanishes.
    Three,
}

impl Case {
    pub fn of(classes: &BTreeMap<String, ConstantClass>) -> Case {
        let bottoms = classes.values().filter(|c| **c == ConstantClass::Bottom).count();
        if bottoms == 0 {
            Case::One
        } else if bottoms < classes.len() {
            Case::Two
        } else {
            Case::Three
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hybridization {
    pub case: Case,
    #[serde(skip)]
    pub structure: HybridStructure,
    pub assignment: Assignment,
    /// Refutation atom in the base.
    pub d: Element,
    /// `D` of the first relativization, in the base.
    pub big_d: Element,
    /// `D'` of the second relativization (third case only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_d: Option<Element>,
    pub classes: BTreeMap<String, ConstantClass>,
    /// Whether every member of `Σ` valid on the base is valid on the result.
    pub sigma_preserved: bool,
}

/// Turns an orthodox interpretation refuting `phi` under `nu` into a hybrid
/// structure refuting it.
pub fn hybridize_counterexample(
    base: &HybridStructure,
    nu: &Assignment,
    phi: &Formula,
    sigma: &[Formula],
) -> Result<Hybridization> {
    if base.kind() != Kind::Orthodox {
        return Err(Error::Kind("hybridization starts from an orthodox interpretation".into()));
    }
    let value = meaning(base, nu, phi)?;
    let refuted = base.bao().neg(value);
    let Some(d_index) = refuted.first() else {
        return Err(Error::NotRefuted);
    };
    let d = Element::atom(d_index);

    let mut names: BTreeSet<String> = phi.nominals();
    for s in sigma {
        names.extend(s.nominals());
    }
    names.extend(base.constants().keys().cloned());
    let mut relevant: Vec<String> = names.into_iter().collect();
    let mut base = base.clone();
    if relevant.is_empty() {
        let default = base.default_constant().ok_or(Error::NoConstantAvailable)?;
        let mut constants = base.constants().clone();
        constants.insert(DEFAULT_NOMINAL.into(), default);
        let table = base.at_table().cloned();
        base = HybridStructure::orthodox(base.bao().clone(), constants, base.default_constant())?;
        if let Some(t) = table {
            base = base.with_at_table(t)?;
        }
        relevant.push(DEFAULT_NOMINAL.into());
    }
    let at_mode = base.at_table().is_some() || phi.language()? == crate::syntax::Language::HAt;

    let seeds = if at_mode {
        let mut s = vec![d];
        s.extend(anchored_seeds(&base, d, &relevant)?);
        s
    } else {
        vec![d]
    };
    let first = Relativization::from_seeds(&base, &seeds)?;
    let classes = first.classify_constants(&relevant)?;
    let case = Case::of(&classes);
    let props = first.relativize_props(&nu.props);

    let survivor = relevant.iter().find(|n| classes[*n] != ConstantClass::Bottom).cloned();
    let (structure, assignment, second_d) = match case {
        Case::One => {
            let h = first.as_hybrid(&relevant)?;
            let mut v = Assignment { props, noms: BTreeMap::new() };
            for n in &relevant {
                v.noms.insert(n.clone(), first.to_local(first.relativized_constant(n)?));
            }
            (h, v, None)
        }
        Case::Two => {
            let a_d = first.as_hybrid(&relevant)?;
            let k = a_d.bao().atom_count();
            let j = survivor.expect("a surviving constant in the second case");
            let s_j = first.to_local(first.relativized_constant(&j)?);
            let mut v = Assignment::new();
            for (p, &a) in &props {
                v.props.insert(p.clone(), pair(k, a, a));
            }
            for n in &relevant {
                let s = first.to_local(first.relativized_constant(n)?);
                let value = if s.is_bottom() { pair(k, Element::BOTTOM, s_j) } else { pair(k, s, Element::BOTTOM) };
                v.noms.insert(n.clone(), value);
            }
            (product(&a_d, &a_d)?, v, None)
        }
        Case::Three => {
            let j = relevant
                .iter()
                .find(|n| base.constant(n).is_some_and(|s| !s.is_bottom()))
                .cloned()
                .ok_or(Error::NoConstantAvailable)?;
            let d2 = Element::atom(base.constant(&j).and_then(Element::first).expect("nonzero constant"));
            let second = Relativization::from_seeds(&base, &[d2])?;
            second.classify_constants(&relevant)?;
            let left = HybridStructure::degenerate(first.local().bao().clone());
            let right = second.as_hybrid(&relevant)?;
            let k = left.bao().atom_count();
            let s_j = second.to_local(second.relativized_constant(&j)?);
            let mut v = Assignment::new();
            for (p, &a) in &nu.props {
                v.props.insert(p.clone(), pair(k, first.to_local(a), second.to_local(a)));
            }
            for n in &relevant {
                let s = second.to_local(second.relativized_constant(n)?);
                v.noms.insert(n.clone(), pair(k, Element::BOTTOM, if s.is_bottom() { s_j } else { s }));
            }
            (product(&left, &right)?, v, Some(second.d()))
        }
    };

    if structure.kind() != Kind::Hybrid {
        return Err(Error::InternalInvariantBreach("hybridization produced a non-hybrid structure".into()));
    }
    if meaning(&structure, &assignment, phi)? == structure.top() {
        return Err(Error::InternalInvariantBreach("hybridization lost the refutation".into()));
    }
    let mut sigma_preserved = true;
    for s in sigma {
        if evaluation::valid(&base, s)?.holds && !evaluation::valid(&structure, s)?.holds {
            sigma_preserved = false;
        }
    }
    Ok(Hybridization { case, structure, assignment, d, big_d: first.d(), second_d, classes, sigma_preserved })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    DBelowBoxD,
    Closure,
    Homomorphism,
    Surjective,
    AtomAdjoint,
    NonBottom,
    BoxDiamond,
    RelativizedDiamond,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaViolation {
    pub lemma: Lemma,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub d: Element,
    pub steps: usize,
    pub violations: Vec<LemmaViolation>,
}

/// Checks the algebraic lemmas behind the construction exhaustively for
/// one BAO and seed set. Exponents range over every distinct power.
pub fn lemma_suite(bao: &FiniteBao, seeds: &[Element]) -> Result<LemmaReport> {
    let (d, steps) = compute_d(bao, seeds)?;
    let mut violations = Vec::new();
    let mut fail = |lemma, detail: String| violations.push(LemmaViolation { lemma, detail });
    let powers = bao.distinct_powers();
    let n_powers = powers.len();
    let diamond_d = |a: Element| bao.diamond(a) & d;

    if !d.leq(bao.boxed(d)) {
        fail(Lemma::DBelowBoxD, format!("D = {d:?}"));
    }
    let mut image = BTreeSet::new();
    for a in bao.elements() {
        let h = a & d;
        image.insert(h);
        if diamond_d(h) != bao.diamond(a) & d {
            fail(Lemma::Closure, format!("◇ᴰ(a ∧ D) ≠ ◇a ∧ D at a = {a:?}"));
        }
        if !diamond_d(h).leq(d) || !bao.neg(a).meet(d).leq(d) {
            fail(Lemma::Closure, format!("A_D not closed at a = {a:?}"));
        }
        if bao.neg(a) & d != bao.neg(h) & d {
            fail(Lemma::Homomorphism, format!("h(¬a) ≠ ¬ᴰh(a) at a = {a:?}"));
        }
        if bao.diamond(a) & d != diamond_d(h) {
            fail(Lemma::Homomorphism, format!("h(◇a) ≠ ◇ᴰh(a) at a = {a:?}"));
        }
    }
    if image.len() != 1 << d.count() {
        fail(Lemma::Surjective, format!("image has {} elements, A_D has {}", image.len(), 1u64 << d.count()));
    }

    for (m, power) in powers.iter().enumerate().take(n_powers) {
        for a in bao.atoms() {
            for b in bao.atoms() {
                let lhs = a.leq(bao.diamond_inv_pow(m, b));
                let rhs = b.leq(apply_table(power, a));
                if lhs != rhs {
                    fail(Lemma::AtomAdjoint, format!("a = {a:?}, b = {b:?}, m = {m}"));
                }
            }
        }
        for a in bao.elements() {
            for b in bao.atoms() {
                let lhs = !(a & bao.diamond_inv_pow(m, b)).is_bottom();
                let rhs = b.leq(apply_table(&powers[m], a));
                if lhs != rhs {
                    fail(Lemma::NonBottom, format!("a = {a:?}, b = {b:?}, n = {m}"));
                }
            }
            for b in bao.elements() {
                let box_m = bao.neg(apply_table(&powers[m], bao.neg(a)));
                if !(box_m & apply_table(&powers[m], b)).leq(apply_table(&powers[m], a & b)) {
                    fail(Lemma::BoxDiamond, format!("a = {a:?}, b = {b:?}, m = {m}"));
                }
            }
        }
    }

    // Powers of ◇ and ◇ᴰ, stepped together until the pair repeats.
    let mut seen: Vec<(Vec<Element>, Vec<Element>)> = Vec::new();
    let mut cur: (Vec<Element>, Vec<Element>) = (bao.atoms().collect(), bao.atoms().collect());
    while !seen.contains(&cur) {
        let n = seen.len();
        for x in d.indices().map(Element::atom) {
            for a in d.subsets() {
                if x.leq(apply_table(&cur.0, a)) && !x.leq(apply_table(&cur.1, a)) {
                    fail(Lemma::RelativizedDiamond, format!("x = {x:?}, a = {a:?}, n = {n}"));
                }
            }
        }
        let next = (
            cur.0.iter().map(|&e| bao.diamond(e)).collect(),
            cur.1.iter().map(|&e| diamond_d(e)).collect(),
        );
        seen.push(std::mem::replace(&mut cur, next));
    }
    Ok(LemmaReport { d, steps, violations })
}

/// Permeation verdict plus, for each nonzero element, a designated atom
/// below it when one exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermeationReport {
    pub verdict: crate::algebra::Permeation,
    pub witnesses: Vec<(Element, Option<Element>)>,
}

pub fn permeation_witnesses(h: &HybridStructure) -> Result<PermeationReport> {
    let verdict = h.is_permeated()?;
    let witnesses = h
        .bao()
        .elements()
        .skip(1)
        .map(|b| (b, (b & h.designated()).first().map(Element::atom)))
        .collect();
    Ok(PermeationReport { verdict, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, Language};

    fn e(ix: &[usize]) -> Element {
        Element::from_indices(ix.iter().copied())
    }

    fn orthodox(bao: FiniteBao, constants: &[(&str, Element)], default: Option<Element>) -> HybridStructure {
        HybridStructure::orthodox(bao, constants.iter().map(|(n, s)| (n.to_string(), *s)).collect(), default).unwrap()
    }

    /// Oracle for `D`: breadth-first search along `R`-successors.
    fn reachable(bao: &FiniteBao, seeds: &[usize]) -> Element {
        let mut seen = Element::from_indices(seeds.iter().copied());
        let mut queue: Vec<usize> = seeds.to_vec();
        while let Some(x) = queue.pop() {
            for y in bao.successors(x).indices() {
                if !seen.has(y) {
                    seen |= Element::atom(y);
                    queue.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn compute_d_examples() {
        let id = FiniteBao::identity(2);
        assert_eq!(compute_d(&id, &[e(&[0])]).unwrap(), (e(&[0]), 0));
        // a1 ≤ ◇a0: 1 R 0. From a0 nothing is reached; from a1, a0 is.
        let r = FiniteBao::from_relation(2, &[(1, 0)]).unwrap();
        assert_eq!(r.diamond_inv(e(&[0])), Element::BOTTOM);
        assert_eq!(compute_d(&r, &[e(&[0])]).unwrap().0, e(&[0]));
        assert_eq!(compute_d(&r, &[e(&[1])]).unwrap().0, e(&[0, 1]));
        assert!(compute_d(&r, &[e(&[0]), e(&[1])]).unwrap().0.leq(e(&[0, 1])));
        assert_eq!(compute_d(&r, &[e(&[0, 1])]), Err(Error::NotAtom(e(&[0, 1]))));
    }

    #[test]
    fn compute_d_is_reachability() {
        for k in 1..=3 {
            for bao in crate::generate::baos(k) {
                for seed in 0..k {
                    assert_eq!(compute_d(&bao, &[Element::atom(seed)]).unwrap().0, reachable(&bao, &[seed]));
                }
            }
        }
    }

    #[test]
    fn relativize_examples() {
        let base = orthodox(FiniteBao::identity(2), &[("i", e(&[0]))], None);
        let r = Relativization::new(&base, e(&[0])).unwrap();
        assert_eq!(r.local().bao().atom_count(), 1);
        assert_eq!(r.local().bao().diamond(e(&[0])), e(&[0]));
        let full = Relativization::new(&base, base.top()).unwrap();
        assert_eq!(full.local().bao(), base.bao());
        let chain = orthodox(FiniteBao::from_relation(2, &[(0, 1)]).unwrap(), &[], None);
        assert_eq!(Relativization::new(&chain, e(&[0])), Err(Error::BoxDViolation(e(&[0]))));
    }

    #[test]
    fn classify_examples() {
        let id = FiniteBao::identity(2);
        let names = vec!["i".to_string()];
        let r = Relativization::from_seeds(&orthodox(id.clone(), &[("i", e(&[0]))], None), &[e(&[0])]).unwrap();
        assert_eq!(r.classify_constants(&names).unwrap()["i"], ConstantClass::Atom(e(&[0])));
        let r = Relativization::from_seeds(&orthodox(id.clone(), &[("i", e(&[1]))], None), &[e(&[0])]).unwrap();
        assert_eq!(r.classify_constants(&names).unwrap()["i"], ConstantClass::Bottom);
        let total = FiniteBao::from_relation(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let r = Relativization::from_seeds(&orthodox(total, &[("i", e(&[0, 1]))], None), &[e(&[0])]).unwrap();
        assert!(matches!(r.classify_constants(&names), Err(Error::SchemaUnchecked(_))));
    }

    #[test]
    fn hybridize_case_one() {
        let base = orthodox(FiniteBao::identity(1), &[], Some(e(&[0])));
        let nu = Assignment::new().prop("p", Element::BOTTOM);
        let out = hybridize_counterexample(&base, &nu, &Formula::prop("p"), &[]).unwrap();
        assert_eq!(out.case, Case::One);
        assert_eq!(out.structure.bao().atom_count(), 1);
        assert!(permeation_witnesses(&out.structure).unwrap().verdict.holds());
    }

    #[test]
    fn hybridize_case_two() {
        let base = orthodox(FiniteBao::identity(2), &[("j", e(&[1]))], Some(e(&[0])));
        let phi = Formula::nom("j");
        let sigma = [Formula::nom("i").or(Formula::nom("i").not())];
        let out = hybridize_counterexample(&base, &Assignment::new(), &phi, &sigma).unwrap();
        assert_eq!(out.case, Case::Two);
        assert!(!evaluation::valid(&out.structure, &phi).unwrap().holds);
        assert!(out.sigma_preserved);
    }

    #[test]
    fn hybridize_case_three() {
        // d = a0 under ¬j and D = a0 loses j's constant a1 entirely.
        let base = orthodox(FiniteBao::identity(2), &[("j", e(&[1]))], None);
        let out = hybridize_counterexample(&base, &Assignment::new(), &Formula::nom("j"), &[]).unwrap();
        assert_eq!(out.case, Case::Three);
        assert_eq!(out.second_d, Some(e(&[1])));
    }

    #[test]
    fn hybridize_rejects_valid_formulas_and_constantless_bases() {
        let base = orthodox(FiniteBao::identity(1), &[], Some(e(&[0])));
        assert_eq!(hybridize_counterexample(&base, &Assignment::new(), &Formula::top(), &[]), Err(Error::NotRefuted));
        let bottoms = orthodox(FiniteBao::identity(1), &[("i", Element::BOTTOM)], None);
        let r = hybridize_counterexample(&bottoms, &Assignment::new(), &Formula::Bot, &[]);
        assert_eq!(r, Err(Error::NoConstantAvailable));
    }

    #[test]
    fn lemma_suite_on_identity() {
        let report = lemma_suite(&FiniteBao::identity(3), &[e(&[0])]).unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations);
    }

    #[test]
    fn nonbottom_lemma_needs_atomic_b() {
        // With b = a0 ∨ a1 the left side can hold while b ≰ ◇ⁿa.
        let bao = FiniteBao::identity(2);
        let (a, b) = (e(&[0]), e(&[0, 1]));
        assert!(!(a & bao.diamond_inv_pow(0, b)).is_bottom());
        assert!(!b.leq(bao.diamond_pow(0, a)));
    }

    #[test]
    fn atom_adjoint_example() {
        // R = {(a0, a1)}: a0 ≤ ◇a1, so a1 ≤ ◇⁻¹a0 as well.
        let bao = FiniteBao::from_relation(2, &[(0, 1)]).unwrap();
        assert!(e(&[1]).leq(bao.diamond_inv(e(&[0]))));
        assert!(e(&[0]).leq(bao.diamond(e(&[1]))));
    }

    #[test]
    fn at_mode_hybridization() {
        // One atom, s_i = ⊤, canonical @.
        let bao = FiniteBao::identity(2);
        let base = orthodox(bao.clone(), &[("i", e(&[0]))], None)
            .with_at_table(AtTable::canonical(&bao, [e(&[0])]))
            .unwrap();
        let phi = parse("@i p", Language::HAt).unwrap();
        let nu = Assignment::new().prop("p", e(&[1]));
        let out = hybridize_counterexample(&base, &nu, &phi, &[]).unwrap();
        assert_eq!(out.case, Case::One);
        assert!(!evaluation::valid(&out.structure, &phi).unwrap().holds);
    }
}
