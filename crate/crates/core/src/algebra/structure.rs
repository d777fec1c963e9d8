use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::at::AtTable;
use super::FiniteBao;
use crate::element::Element;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Nominals range over a nonempty set of designated atoms.
    Hybrid,
    /// Nominals range over the designated atoms and `⊥`.
    Grounded,
    /// No designated atoms.
    Degenerate,
    /// Nominals are constants of the algebra.
    Orthodox,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Hybrid => "hybrid",
            Kind::Grounded => "grounded",
            Kind::Degenerate => "degenerate",
            Kind::Orthodox => "orthodox",
        }
    }
}

/// A finite BAO together with its interpretation of nominals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HybridStructure {
    bao: FiniteBao,
    kind: Kind,
    designated: Element,
    constants: BTreeMap<String, Element>,
    default_constant: Option<Element>,
    at: Option<AtTable>,
}

/// Outcome of the permeation check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Permeation {
    Permeated,
    /// `a ≠ ⊥` has no designated atom below it.
    NoDesignatedBelow { a: Element },
    /// `x ≤ ◇a` but no designated `y ≤ a` has `x ≤ ◇y`.
    NoDesignatedWitness { x: Element, a: Element },
}

impl Permeation {
    pub fn holds(self) -> bool {
        self == Permeation::Permeated
    }
}

impl HybridStructure {
    pub fn hybrid(bao: FiniteBao, designated: Element) -> Result<Self> {
        bao.check(designated)?;
        if designated.is_bottom() {
            return Err(Error::InvalidStructure("a hybrid algebra needs a designated atom".into()));
        }
        Ok(Self::bare(bao, Kind::Hybrid, designated))
    }

    pub fn degenerate(bao: FiniteBao) -> Self {
        Self::bare(bao, Kind::Degenerate, Element::BOTTOM)
    }

    /// An orthodox interpretation. Nominals without an entry take
    /// `default_constant` (unbound if `None`).
    pub fn orthodox(
        bao: FiniteBao,
        constants: BTreeMap<String, Element>,
        default_constant: Option<Element>,
    ) -> Result<Self> {
        for (name, &s) in &constants {
            if !bao.contains(s) {
                return Err(Error::InvalidStructure(format!("constant `{name}` is {s:?}, outside the algebra")));
            }
        }
        if let Some(d) = default_constant {
            bao.check(d)?;
        }
        let mut h = Self::bare(bao, Kind::Orthodox, Element::BOTTOM);
        h.constants = constants;
        h.default_constant = default_constant;
        Ok(h)
    }

    fn bare(bao: FiniteBao, kind: Kind, designated: Element) -> Self {
        HybridStructure { bao, kind, designated, constants: BTreeMap::new(), default_constant: None, at: None }
    }

    /// Installs an explicit `@` table. Hybrid structures need a row for
    /// every designated atom; orthodox ones may leave rows out.
    pub fn with_at_table(mut self, table: AtTable) -> Result<Self> {
        table.validate(&self.bao)?;
        match self.kind {
            Kind::Hybrid => {
                if let Some(x) = self.designated.indices().map(Element::atom).find(|&x| table.row(x).is_none()) {
                    return Err(Error::MissingAtTable(x));
                }
            }
            Kind::Orthodox => {}
            Kind::Grounded | Kind::Degenerate => {
                return Err(Error::Kind(format!("{} structures carry no @", self.kind.name())))
            }
        }
        self.at = Some(table);
        Ok(self)
    }

    pub fn bao(&self) -> &FiniteBao {
        &self.bao
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn designated(&self) -> Element {
        self.designated
    }

    pub fn constants(&self) -> &BTreeMap<String, Element> {
        &self.constants
    }

    pub fn default_constant(&self) -> Option<Element> {
        self.default_constant
    }

    pub fn at_table(&self) -> Option<&AtTable> {
        self.at.as_ref()
    }

    pub fn top(&self) -> Element {
        self.bao.top()
    }

    /// Interpretation of a nominal in an orthodox structure.
    pub fn constant(&self, nominal: &str) -> Option<Element> {
        self.constants.get(nominal).copied().or(self.default_constant)
    }

    /// The values a nominal may take under an assignment.
    pub fn nominal_range(&self) -> Vec<Element> {
        let atoms = self.designated.indices().map(Element::atom);
        match self.kind {
            Kind::Hybrid => atoms.collect(),
            Kind::Grounded => std::iter::once(Element::BOTTOM).chain(atoms).collect(),
            Kind::Degenerate | Kind::Orthodox => Vec::new(),
        }
    }

    /// The associated grounded structure.
    pub fn grounded(&self) -> Result<Self> {
        match self.kind {
            Kind::Hybrid | Kind::Degenerate | Kind::Grounded => {
                Ok(Self::bare(self.bao.clone(), Kind::Grounded, self.designated))
            }
            Kind::Orthodox => Err(Error::Kind("cannot ground an orthodox interpretation".into())),
        }
    }

    /// `@_x a`. Uses the explicit table when it has a row for `x`;
    /// otherwise the canonical operator (`⊤` iff `x ≤ a`), which needs `x`
    /// designated (hybrid) or an atom (orthodox).
    pub fn at(&self, x: Element, a: Element) -> Result<Element> {
        self.bao.check(a)?;
        if let Some(v) = self.at.as_ref().and_then(|t| t.get(x, a)) {
            return Ok(v);
        }
        match self.kind {
            Kind::Hybrid => {
                if x.is_atom() && x.leq(self.designated) {
                    Ok(canonical_at(&self.bao, x, a))
                } else {
                    Err(Error::NotDesignated(x))
                }
            }
            Kind::Orthodox if x.is_atom() && self.bao.contains(x) => Ok(canonical_at(&self.bao, x, a)),
            Kind::Orthodox => Err(Error::MissingAtTable(x)),
            Kind::Grounded | Kind::Degenerate => Err(Error::NotDesignated(x)),
        }
    }

    /// The first coordinates `@` is defined on: the designated atoms, or
    /// the distinct constant values.
    pub fn at_coordinates(&self) -> Vec<Element> {
        match self.kind {
            Kind::Orthodox => {
                let mut v: Vec<Element> = self.constants.values().copied().chain(self.default_constant).collect();
                v.sort();
                v.dedup();
                v
            }
            _ => self.nominal_range().into_iter().filter(|x| !x.is_bottom()).collect(),
        }
    }

    pub fn is_permeated(&self) -> Result<Permeation> {
        if self.kind != Kind::Hybrid {
            return Err(Error::Kind(format!("permeation is defined for hybrid algebras, not {}", self.kind.name())));
        }
        let x_set = self.designated;
        for a in self.bao.elements().skip(1) {
            if (a & x_set).is_bottom() {
                return Ok(Permeation::NoDesignatedBelow { a });
            }
        }
        for a in self.bao.elements() {
            // Designated atoms below ◇a must already be below ◇(a ∧ X).
            let missing = (self.bao.diamond(a) & x_set).minus(self.bao.diamond(a & x_set));
            if let Some(x) = missing.first() {
                return Ok(Permeation::NoDesignatedWitness { x: Element::atom(x), a });
            }
        }
        Ok(Permeation::Permeated)
    }

    /// Atom bijection `f` (as a vector) with `x R y ⇔ f(x) R f(y)` and
    /// `x ∈ X ⇔ f(x) ∈ X`, if the structures have the same kind.
    pub fn isomorphism(&self, other: &HybridStructure) -> Option<Vec<usize>> {
        if self.kind != other.kind
            || self.bao.atom_count() != other.bao.atom_count()
            || self.designated.count() != other.designated.count()
        {
            return None;
        }
        let k = self.bao.atom_count();
        let sig = |h: &HybridStructure, x: usize| {
            let b = &h.bao;
            (h.designated.has(x), b.related(x, x), b.successors(x).count(), b.diamond_on_atoms()[x].count())
        };
        type Signature = dyn Fn(&HybridStructure, usize) -> (bool, bool, usize, usize);
        let mut map = vec![usize::MAX; k];
        let mut used = vec![false; k];
        fn extend(
            x: usize,
            a: &HybridStructure,
            b: &HybridStructure,
            map: &mut [usize],
            used: &mut [bool],
            sig: &Signature,
        ) -> bool {
            let k = map.len();
            if x == k {
                return true;
            }
            for fx in 0..k {
                if used[fx] || sig(a, x) != sig(b, fx) {
                    continue;
                }
                let consistent = (0..x).all(|y| {
                    a.bao.related(x, y) == b.bao.related(fx, map[y]) && a.bao.related(y, x) == b.bao.related(map[y], fx)
                });
                if !consistent {
                    continue;
                }
                map[x] = fx;
                used[fx] = true;
                if extend(x + 1, a, b, map, used, sig) {
                    return true;
                }
                used[fx] = false;
            }
            false
        }
        extend(0, self, other, &mut map, &mut used, &sig).then_some(map)
    }
}

pub(crate) fn canonical_at(bao: &FiniteBao, x: Element, a: Element) -> Element {
    if x.leq(a) {
        bao.top()
    } else {
        Element::BOTTOM
    }
}

/// The product of two hybrid or degenerate structures. Atoms of `left`
/// keep their indices; atoms of `right` are shifted up by `left`'s atom
/// count.
pub fn product(left: &HybridStructure, right: &HybridStructure) -> Result<HybridStructure> {
    for h in [left, right] {
        if !matches!(h.kind, Kind::Hybrid | Kind::Degenerate) {
            return Err(Error::Kind(format!("products take hybrid or degenerate factors, not {}", h.kind.name())));
        }
        if h.at.is_some() {
            return Err(Error::Kind("products of structures with explicit @ tables are not supported".into()));
        }
    }
    let k1 = left.bao.atom_count();
    let shift = |e: Element| Element::from_bits(e.bits() << k1);
    let mut diamond = left.bao.diamond_on_atoms().to_vec();
    diamond.extend(right.bao.diamond_on_atoms().iter().map(|&d| shift(d)));
    let bao = FiniteBao::new(diamond)?;
    let designated = left.designated | shift(right.designated);
    if designated.is_bottom() {
        Ok(HybridStructure::degenerate(bao))
    } else {
        HybridStructure::hybrid(bao, designated)
    }
}

/// Packs `(a, b)` into an element of a product whose left factor has
/// `left_atoms` atoms.
pub fn pair(left_atoms: usize, a: Element, b: Element) -> Element {
    a | Element::from_bits(b.bits() << left_atoms)
}

/// Splits an element of a product into its two projections.
pub fn project(left_atoms: usize, e: Element) -> (Element, Element) {
    let mask = Element::full(left_atoms);
    (e & mask, Element::from_bits(e.bits() >> left_atoms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(ix: &[usize]) -> Element {
        Element::from_indices(ix.iter().copied())
    }

    fn two() -> HybridStructure {
        HybridStructure::hybrid(FiniteBao::identity(1), e(&[0])).unwrap()
    }

    #[test]
    fn permeation_examples() {
        assert_eq!(two().is_permeated().unwrap(), Permeation::Permeated);
        let h = HybridStructure::hybrid(FiniteBao::identity(2), e(&[0])).unwrap();
        assert_eq!(h.is_permeated().unwrap(), Permeation::NoDesignatedBelow { a: e(&[1]) });
        let d = HybridStructure::degenerate(FiniteBao::identity(1));
        assert!(matches!(d.is_permeated(), Err(Error::Kind(_))));
    }

    #[test]
    fn finite_permeation_means_every_atom_designated() {
        // Atoms are nonzero, so the first condition forces X = all atoms,
        // and then additivity of ◇ supplies the second.
        for table in 0u64..16 {
            let bao = FiniteBao::new(vec![Element::from_bits(table & 3), Element::from_bits(table >> 2)]).unwrap();
            for x in 1..4 {
                let h = HybridStructure::hybrid(bao.clone(), Element::from_bits(x)).unwrap();
                assert_eq!(h.is_permeated().unwrap().holds(), x == 3);
            }
        }
    }

    #[test]
    fn product_examples() {
        let a = two();
        let aa = product(&a, &a).unwrap();
        assert_eq!(aa.bao().atom_count(), 2);
        assert_eq!(aa.designated(), e(&[0, 1]));
        let d = HybridStructure::degenerate(FiniteBao::identity(1));
        assert_eq!(product(&d, &a).unwrap().designated(), e(&[1]));
        assert!(product(&a, &a.grounded().unwrap()).is_err());
        assert_eq!(project(1, pair(1, e(&[0]), e(&[]))), (e(&[0]), e(&[])));
    }

    #[test]
    fn grounding() {
        let g = two().grounded().unwrap();
        assert_eq!(g.nominal_range(), vec![e(&[]), e(&[0])]);
        let d = HybridStructure::degenerate(FiniteBao::identity(1)).grounded().unwrap();
        assert_eq!(d.nominal_range(), vec![Element::BOTTOM]);
        assert_eq!(g.grounded().unwrap(), g);
    }

    #[test]
    fn at_operator_examples() {
        let h = HybridStructure::hybrid(FiniteBao::identity(2), e(&[0, 1])).unwrap();
        let x = e(&[0]);
        assert_eq!(h.at(x, x).unwrap(), h.top());
        assert_eq!(h.at(x, Element::BOTTOM).unwrap(), Element::BOTTOM);
        assert_eq!(h.at(x, e(&[1])).unwrap(), Element::BOTTOM);
        let one = HybridStructure::hybrid(FiniteBao::identity(2), e(&[1])).unwrap();
        assert_eq!(one.at(x, x), Err(Error::NotDesignated(x)));
    }

    #[test]
    fn isomorphism_examples() {
        let a = two();
        assert_eq!(a.isomorphism(&a), Some(vec![0]));
        let irreflexive = HybridStructure::hybrid(FiniteBao::new(vec![e(&[])]).unwrap(), e(&[0])).unwrap();
        assert_eq!(a.isomorphism(&irreflexive), None);
        let b = HybridStructure::hybrid(FiniteBao::from_relation(2, &[(0, 1)]).unwrap(), e(&[1])).unwrap();
        let ab = product(&a, &b).unwrap();
        let ba = product(&b, &a).unwrap();
        let f = ab.isomorphism(&ba).unwrap();
        assert_eq!(f.len(), 3);
    }
}
