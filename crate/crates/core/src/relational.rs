//! Kripke models and finite two-sorted general frames.

use std::collections::{BTreeMap, BTreeSet};

use crate::element::{Element, MAX_ATOMS};
use crate::error::{Error, Result};
use crate::syntax::Formula;

/// `⟨R⟩a`: the worlds with a successor in `a`.
pub fn diamond_of(successors: &[Element], a: Element) -> Element {
    Element::from_indices((0..successors.len()).filter(|&w| !(successors[w] & a).is_bottom()))
}

fn check_worlds(names: &[String], successors: &[Element]) -> Result<()> {
    let n = names.len();
    if n == 0 || n > MAX_ATOMS {
        return Err(Error::InvalidFrame(format!("world count must be in 1..={MAX_ATOMS}, got {n}")));
    }
    if successors.len() != n {
        return Err(Error::InvalidFrame("one successor set per world expected".into()));
    }
    if names.iter().collect::<BTreeSet<_>>().len() != n {
        return Err(Error::InvalidFrame("world names must be distinct".into()));
    }
    let all = Element::full(n);
    if successors.iter().any(|s| !s.leq(all)) {
        return Err(Error::InvalidFrame("successor outside the world set".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: Vec<String>,
    successors: Vec<Element>,
    valuation: BTreeMap<String, Element>,
}

impl KripkeModel {
    /// Nominals (names starting with `i`, `j`, `k`) must denote singletons.
    pub fn new(worlds: Vec<String>, successors: Vec<Element>, valuation: BTreeMap<String, Element>) -> Result<Self> {
        check_worlds(&worlds, &successors)?;
        let all = Element::full(worlds.len());
        for (name, &v) in &valuation {
            if !v.leq(all) {
                return Err(Error::InvalidFrame(format!("valuation of `{name}` leaves the world set")));
            }
            if crate::syntax::is_nominal_name(name) && !v.is_atom() {
                return Err(Error::InvalidFrame(format!("nominal `{name}` must denote a single world")));
            }
        }
        Ok(KripkeModel { worlds, successors, valuation })
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    /// The set of worlds where `phi` holds.
    pub fn extension(&self, phi: &Formula) -> Result<Element> {
        extension(&self.successors, &|name| self.valuation.get(name).copied(), phi)
    }

    pub fn satisfies(&self, world: usize, phi: &Formula) -> Result<bool> {
        Ok(self.extension(phi)?.has(world))
    }
}

/// Truth sets under the model clauses. `@j φ` and `Eφ` are world-independent.
fn extension(successors: &[Element], val: &dyn Fn(&str) -> Option<Element>, phi: &Formula) -> Result<Element> {
    let all = Element::full(successors.len());
    let lookup = |name: &str| val(name).ok_or_else(|| Error::UnboundSymbol(name.into()));
    let everywhere_if = |b: bool| if b { all } else { Element::BOTTOM };
    Ok(match phi {
        Formula::Bot => Element::BOTTOM,
        Formula::Prop(p) | Formula::Nom(p) => lookup(p)?,
        Formula::Neg(a) => extension(successors, val, a)?.complement_in(all),
        Formula::Conj(a, b) => extension(successors, val, a)? & extension(successors, val, b)?,
        Formula::Diamond(a) => diamond_of(successors, extension(successors, val, a)?),
        Formula::Sat(j, a) => everywhere_if(lookup(j)?.leq(extension(successors, val, a)?)),
        Formula::Exists(a) => everywhere_if(!extension(successors, val, a)?.is_bottom()),
    })
}

/// A finite two-sorted general frame `(W, R, A, B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSortedFrame {
    worlds: Vec<String>,
    successors: Vec<Element>,
    admissible: Vec<Element>,
    points: Element,
}

/// A valuation and world at which a formula fails.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FrameFalsifier {
    pub valuation: BTreeMap<String, Element>,
    pub world: usize,
}

impl TwoSortedFrame {
    /// Validates closure of `admissible` under `∩`, complement and `⟨R⟩`,
    /// nonemptiness of `A` and `B`, and admissibility of point singletons.
    pub fn new(worlds: Vec<String>, successors: Vec<Element>, admissible: Vec<Element>, points: Element) -> Result<Self> {
        check_worlds(&worlds, &successors)?;
        let all = Element::full(worlds.len());
        let set: BTreeSet<Element> = admissible.iter().copied().collect();
        if set.is_empty() {
            return Err(Error::InvalidFrame("the admissible family is empty".into()));
        }
        if let Some(a) = set.iter().find(|a| !a.leq(all)) {
            return Err(Error::InvalidFrame(format!("admissible set {a:?} leaves the world set")));
        }
        for &a in &set {
            if !set.contains(&a.complement_in(all)) {
                return Err(Error::NotClosed(format!("complement of {a:?} missing")));
            }
            if !set.contains(&diamond_of(&successors, a)) {
                return Err(Error::NotClosed(format!("⟨R⟩{a:?} missing")));
            }
            for &b in &set {
                if !set.contains(&(a & b)) {
                    return Err(Error::NotClosed(format!("{a:?} ∩ {b:?} missing")));
                }
            }
        }
        if points.is_bottom() || !points.leq(all) {
            return Err(Error::InvalidFrame("admissible points must be a nonempty set of worlds".into()));
        }
        if let Some(w) = points.indices().find(|&w| !set.contains(&Element::atom(w))) {
            return Err(Error::InvalidFrame(format!("singleton of admissible point {} is not admissible", worlds[w])));
        }
        Ok(TwoSortedFrame { worlds, successors, admissible: set.into_iter().collect(), points })
    }

    /// The frame with every subset admissible.
    pub fn full(worlds: Vec<String>, successors: Vec<Element>, points: Element) -> Result<Self> {
        let n = worlds.len();
        if n > 16 {
            return Err(Error::InvalidFrame("full powersets are limited to 16 worlds".into()));
        }
        Self::new(worlds, successors, Element::full(n).subsets().collect(), points)
    }

    /// The smallest admissible family containing `generators`.
    pub fn generated(
        worlds: Vec<String>,
        successors: Vec<Element>,
        generators: &[Element],
        points: Element,
    ) -> Result<Self> {
        check_worlds(&worlds, &successors)?;
        let gens: Vec<Element> = generators.iter().copied().chain(points.indices().map(Element::atom)).collect();
        let admissible = closure(&successors, &gens);
        Self::new(worlds, successors, admissible, points)
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn successors(&self) -> &[Element] {
        &self.successors
    }

    pub fn admissible(&self) -> &[Element] {
        &self.admissible
    }

    pub fn points(&self) -> Element {
        self.points
    }

    pub fn all(&self) -> Element {
        Element::full(self.worlds.len())
    }

    pub fn related(&self, u: usize, v: usize) -> bool {
        self.successors[u].has(v)
    }

    pub fn diamond(&self, a: Element) -> Element {
        diamond_of(&self.successors, a)
    }

    pub fn is_full(&self) -> bool {
        self.admissible.len() as u64 == 1u64 << self.worlds.len()
    }

    /// The model on this frame under `valuation`.
    pub fn model(&self, valuation: BTreeMap<String, Element>) -> Result<KripkeModel> {
        for (name, v) in &valuation {
            if !self.admissible.contains(v) {
                return Err(Error::InvalidFrame(format!("valuation of `{name}` is not admissible")));
            }
            if crate::syntax::is_nominal_name(name) && !v.leq(self.points) {
                return Err(Error::InvalidFrame(format!("nominal `{name}` must denote an admissible point")));
            }
        }
        KripkeModel::new(self.worlds.clone(), self.successors.clone(), valuation)
    }

    /// First admissible valuation (of the occurring symbols) and world
    /// refuting `phi`, scanning valuations with the last symbol fastest.
    pub fn falsifier(&self, phi: &Formula) -> Result<Option<FrameFalsifier>> {
        let props: Vec<String> = phi.props().into_iter().collect();
        let noms: Vec<String> = phi.nominals().into_iter().collect();
        let point_sets: Vec<Element> = self.points.indices().map(Element::atom).collect();
        let domains: Vec<&[Element]> = props
            .iter()
            .map(|_| self.admissible.as_slice())
            .chain(noms.iter().map(|_| point_sets.as_slice()))
            .collect();
        let names: Vec<&String> = props.iter().chain(&noms).collect();
        let mut idx = vec![0usize; domains.len()];
        loop {
            let valuation: BTreeMap<String, Element> =
                names.iter().zip(&idx).zip(&domains).map(|((n, &i), d)| ((*n).clone(), d[i])).collect();
            let ext = extension(&self.successors, &|name| valuation.get(name).copied(), phi)?;
            if let Some(world) = ext.complement_in(self.all()).first() {
                return Ok(Some(FrameFalsifier { valuation, world }));
            }
            let mut pos = domains.len();
            loop {
                if pos == 0 {
                    return Ok(None);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < domains[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    pub fn validates(&self, phi: &Formula) -> Result<bool> {
        Ok(self.falsifier(phi)?.is_none())
    }

    /// Distinct worlds are separated by some admissible set.
    pub fn is_differentiated(&self) -> bool {
        let n = self.world_count();
        (0..n).all(|u| (u + 1..n).all(|v| self.admissible.iter().any(|a| a.has(u) != a.has(v))))
    }

    /// `uRv` iff every admissible set containing `v` has `u` in its `⟨R⟩`.
    pub fn is_tight(&self) -> bool {
        let n = self.world_count();
        (0..n).all(|u| {
            (0..n).all(|v| {
                let forced = self.admissible.iter().all(|&a| !a.has(v) || self.diamond(a).has(u));
                forced == self.related(u, v)
            })
        })
    }

    /// Every subfamily of `A` with the finite intersection property has a
    /// common point. `A` is finite, so a subfamily with the property is
    /// one of its own finite subfamilies and its meet is nonempty by
    /// definition; the condition always holds.
    pub fn is_compact(&self) -> bool {
        true
    }

    pub fn is_descriptive(&self) -> bool {
        self.is_differentiated() && self.is_tight() && self.is_compact()
    }

    /// Every nonempty admissible set meets `B`, and every admissible point
    /// with a successor in an admissible `a` has one in `a ∩ B`.
    pub fn is_strongly_descriptive(&self) -> bool {
        let b = self.points;
        let cond_i = self.admissible.iter().all(|&a| a.is_bottom() || !(a & b).is_bottom());
        let cond_ii = self.admissible.iter().all(|&a| {
            b.indices().all(|u| {
                let succ_in_a = self.successors[u] & a;
                succ_in_a.is_bottom() || !(succ_in_a & b).is_bottom()
            })
        });
        self.is_descriptive() && cond_i && cond_ii
    }
}

/// Closure of `generators` under intersection, complement and `⟨R⟩`
/// (always including `∅` and `W`), sorted.
pub fn closure(successors: &[Element], generators: &[Element]) -> Vec<Element> {
    let all = Element::full(successors.len());
    let mut set: BTreeSet<Element> = [Element::BOTTOM, all].into_iter().chain(generators.iter().copied()).collect();
    loop {
        let current: Vec<Element> = set.iter().copied().collect();
        let before = set.len();
        for &a in &current {
            set.insert(a.complement_in(all));
            set.insert(diamond_of(successors, a));
            for &b in &current {
                set.insert(a & b);
            }
        }
        if set.len() == before {
            return set.into_iter().collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, Language};

    fn e(ix: &[usize]) -> Element {
        Element::from_indices(ix.iter().copied())
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("w{i}")).collect()
    }

    /// W = {u, v}, R = {(u, u)}, A = P(W), B = {v}.
    fn dead_end_frame() -> TwoSortedFrame {
        TwoSortedFrame::full(vec!["u".into(), "v".into()], vec![e(&[0]), e(&[])], e(&[1])).unwrap()
    }

    fn f(t: &str) -> Formula {
        parse(t, Language::H).unwrap()
    }

    #[test]
    fn model_examples() {
        let g = dead_end_frame();
        let m = g.model([("j".to_string(), e(&[1]))].into()).unwrap();
        assert!(m.satisfies(0, &f("<> top")).unwrap());
        assert!(m.satisfies(1, &f("[] bot")).unwrap());
        assert!(!m.satisfies(0, &Formula::Bot).unwrap());
        assert!(matches!(m.satisfies(0, &f("p")), Err(Error::UnboundSymbol(_))));
    }

    #[test]
    fn nominal_valuations_must_be_singletons() {
        let r = KripkeModel::new(names(2), vec![e(&[]), e(&[])], [("i".to_string(), e(&[0, 1]))].into());
        assert!(r.is_err());
    }

    #[test]
    fn frame_validity_examples() {
        let g = dead_end_frame();
        assert!(g.validates(&f("j -> [] bot")).unwrap());
        let fals = g.falsifier(&f("[] bot")).unwrap().unwrap();
        assert_eq!(fals.world, 0);
        assert!(g.validates(&Formula::top()).unwrap());
    }

    #[test]
    fn descriptive_examples() {
        let g = dead_end_frame();
        assert!(g.is_descriptive());
        assert!(!g.is_strongly_descriptive());
        let bad = TwoSortedFrame::new(names(2), vec![e(&[]), e(&[])], vec![e(&[]), e(&[0, 1])], e(&[0]));
        assert!(matches!(bad, Err(Error::InvalidFrame(_))));
    }

    #[test]
    fn closure_is_checked() {
        // {u} without its complement.
        let r = TwoSortedFrame::new(names(2), vec![e(&[]), e(&[])], vec![e(&[]), e(&[0]), e(&[0, 1])], e(&[0]));
        assert!(matches!(r, Err(Error::NotClosed(_))));
        let g = TwoSortedFrame::generated(names(3), vec![e(&[1]), e(&[2]), e(&[])], &[], e(&[2])).unwrap();
        assert!(g.admissible().contains(&e(&[1])));
    }

    #[test]
    fn at_and_e_use_model_clauses() {
        let g = dead_end_frame();
        let m = g.model([("j".to_string(), e(&[1])), ("p".to_string(), e(&[1]))].into()).unwrap();
        let at = parse("@j p", Language::HAt).unwrap();
        assert_eq!(m.extension(&at).unwrap(), e(&[0, 1]));
        let ex = parse("E (p & <> top)", Language::HE).unwrap();
        assert_eq!(m.extension(&ex).unwrap(), Element::BOTTOM);
    }

    #[test]
    fn compactness_matches_literal_definition_on_small_frames() {
        // Enumerate every subfamily of A; those with the finite intersection
        // property must have a nonempty meet.
        let g = dead_end_frame();
        let a = g.admissible();
        for mask in 0u32..(1 << a.len()) {
            let fam: Vec<Element> = (0..a.len()).filter(|&i| mask >> i & 1 == 1).map(|i| a[i]).collect();
            let fip = (0u32..(1 << fam.len())).all(|sub| {
                (0..fam.len()).filter(|&i| sub >> i & 1 == 1).fold(g.all(), |acc, i| acc & fam[i]) != Element::BOTTOM
            });
            let meet = fam.iter().fold(g.all(), |acc, &x| acc & x);
            assert!(!fip || !meet.is_bottom());
        }
        assert!(g.is_compact());
    }
}
