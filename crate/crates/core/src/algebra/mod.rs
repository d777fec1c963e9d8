//! Finite Boolean algebras with a normal additive operator.
//!
//! A finite BAO is the powerset of its atoms; `◇` is stored by its value on
//! each atom and extended by joins. Hybrid structures (designated atoms,
//! constants, `@`) are layered on top in [`structure`] and [`at`].

pub mod at;
pub mod structure;

pub use at::{at_law_violations, at_laws_hold, AtLaw, AtTable, AtViolation, NomViolation};
pub use structure::{HybridStructure, Kind, Permeation};

use crate::element::{Element, MAX_ATOMS};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteBao {
    atoms: usize,
    /// `diamond[y]` is `◇` of the atom `y`.
    diamond: Vec<Element>,
}

impl FiniteBao {
    pub fn new(diamond: Vec<Element>) -> Result<Self> {
        let atoms = diamond.len();
        if atoms == 0 || atoms > MAX_ATOMS {
            return Err(Error::InvalidStructure(format!(
                "atom count must be in 1..={MAX_ATOMS}, got {atoms}"
            )));
        }
        let top = Element::full(atoms);
        if let Some((y, d)) = diamond.iter().enumerate().find(|(_, d)| !d.leq(top)) {
            return Err(Error::InvalidStructure(format!("◇ of atom {y} is {d:?}, outside the algebra")));
        }
        Ok(FiniteBao { atoms, diamond })
    }

    /// `◇` is the identity on every atom.
    pub fn identity(atoms: usize) -> Self {
        Self::new((0..atoms).map(Element::atom).collect()).expect("valid atom count")
    }

    /// Builds the algebra from pairs `(x, y)` meaning `x ≤ ◇y`.
    pub fn from_relation(atoms: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut diamond = vec![Element::BOTTOM; atoms];
        for &(x, y) in pairs {
            if x >= atoms || y >= atoms {
                return Err(Error::InvalidStructure(format!("pair ({x}, {y}) out of range")));
            }
            diamond[y] |= Element::atom(x);
        }
        Self::new(diamond)
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    pub fn top(&self) -> Element {
        Element::full(self.atoms)
    }

    pub fn diamond_on_atoms(&self) -> &[Element] {
        &self.diamond
    }

    /// Every element, in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = Element> {
        self.top().subsets()
    }

    pub fn element_count(&self) -> u64 {
        1 << self.atoms
    }

    pub fn atoms(&self) -> impl Iterator<Item = Element> {
        (0..self.atoms).map(Element::atom)
    }

    pub fn contains(&self, a: Element) -> bool {
        a.leq(self.top())
    }

    pub fn check(&self, a: Element) -> Result<Element> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn neg(&self, a: Element) -> Element {
        a.complement_in(self.top())
    }

    pub fn meet(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.check(a)? & self.check(b)?)
    }

    pub fn join(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.check(a)? | self.check(b)?)
    }

    pub fn leq(&self, a: Element, b: Element) -> Result<bool> {
        Ok(self.check(a)?.leq(self.check(b)?))
    }

    pub fn diamond(&self, a: Element) -> Element {
        a.indices().fold(Element::BOTTOM, |acc, y| acc | self.diamond[y])
    }

    pub fn boxed(&self, a: Element) -> Element {
        self.neg(self.diamond(self.neg(a)))
    }

    pub fn diamond_pow(&self, n: usize, a: Element) -> Element {
        (0..n).fold(a, |acc, _| self.diamond(acc))
    }

    pub fn box_pow(&self, n: usize, a: Element) -> Element {
        (0..n).fold(a, |acc, _| self.boxed(acc))
    }

    /// `x R y` iff `x ≤ ◇y`.
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.diamond[y].has(x)
    }

    /// Atoms `y` with `x R y`.
    pub fn successors(&self, x: usize) -> Element {
        Element::from_indices((0..self.atoms).filter(|&y| self.related(x, y)))
    }

    /// Left adjoint of `□`: the atoms reached in one `R`-step from `b`.
    pub fn diamond_inv(&self, b: Element) -> Element {
        Element::from_indices((0..self.atoms).filter(|&y| !(self.diamond[y] & b).is_bottom()))
    }

    /// Right adjoint of `◇`.
    pub fn box_inv(&self, b: Element) -> Element {
        Element::from_indices((0..self.atoms).filter(|&y| self.diamond[y].leq(b)))
    }

    pub fn diamond_inv_pow(&self, n: usize, b: Element) -> Element {
        (0..n).fold(b, |acc, _| self.diamond_inv(acc))
    }

    /// `◇⁻¹ b = ⋀{c : b ≤ □c}`, straight from the adjunction.
    pub fn diamond_inv_pointwise(&self, b: Element) -> Element {
        self.elements().filter(|&c| b.leq(self.boxed(c))).fold(self.top(), |acc, c| acc & c)
    }

    /// `□⁻¹ b = ⋁{a : ◇a ≤ b}`, straight from the adjunction.
    pub fn box_inv_pointwise(&self, b: Element) -> Element {
        self.elements().filter(|&a| self.diamond(a).leq(b)).fold(Element::BOTTOM, |acc, a| acc | a)
    }

    /// Checks both adjunctions and the pointwise formulas on every pair of
    /// elements, returning the first offending pair.
    pub fn adjoint_violation(&self) -> Option<(Element, Element)> {
        for a in self.elements() {
            if self.diamond_inv(a) != self.diamond_inv_pointwise(a) || self.box_inv(a) != self.box_inv_pointwise(a) {
                return Some((a, a));
            }
            for b in self.elements() {
                let left = self.diamond_inv(a).leq(b) == a.leq(self.boxed(b));
                let right = self.diamond(a).leq(b) == a.leq(self.box_inv(b));
                if !left || !right {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The distinct powers `◇⁰, ◇¹, …` as atom tables, in order of first
    /// appearance. The sequence of powers is eventually periodic, so the
    /// list stops at the first repeat and covers every power.
    pub fn distinct_powers(&self) -> Vec<Vec<Element>> {
        let mut powers: Vec<Vec<Element>> = vec![self.atoms().collect()];
        loop {
            let last = powers.last().expect("nonempty");
            let next: Vec<Element> = last.iter().map(|&e| self.diamond(e)).collect();
            if powers.contains(&next) {
                return powers;
            }
            powers.push(next);
        }
    }
}

/// Extends an atom table additively to an element.
pub fn apply_table(table: &[Element], a: Element) -> Element {
    a.indices().fold(Element::BOTTOM, |acc, y| acc | table[y])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(ix: &[usize]) -> Element {
        Element::from_indices(ix.iter().copied())
    }

    // Truth-table style oracle: compute ◇ on an element by scanning pairs.
    fn diamond_oracle(bao: &FiniteBao, a: Element) -> Element {
        let k = bao.atom_count();
        e(&(0..k).filter(|&x| (0..k).any(|y| a.has(y) && bao.related(x, y))).collect::<Vec<_>>())
    }

    #[test]
    fn diamond_examples() {
        let two = FiniteBao::identity(1);
        assert_eq!(two.diamond(two.top()), two.top());
        assert_eq!(two.diamond(Element::BOTTOM), Element::BOTTOM);

        // ◇a0 = a1, ◇a1 = ⊥
        let b = FiniteBao::new(vec![e(&[1]), e(&[])]).unwrap();
        assert_eq!(b.boxed(e(&[1])), e(&[0]));
        for a in b.elements() {
            assert_eq!(b.diamond(a), diamond_oracle(&b, a));
        }
    }

    #[test]
    fn inverse_examples() {
        let id = FiniteBao::identity(3);
        for a in id.elements() {
            assert_eq!(id.diamond_inv(a), a);
        }
        // R = {(1, 0)}
        let b = FiniteBao::from_relation(2, &[(1, 0)]).unwrap();
        assert_eq!(b.diamond_inv(e(&[1])), e(&[0]));
        assert_eq!(b.diamond_inv_pointwise(e(&[1])), e(&[0]));
        assert_eq!(b.diamond_inv(Element::BOTTOM), Element::BOTTOM);
    }

    #[test]
    fn boolean_ops_reject_foreign_elements() {
        let b = FiniteBao::identity(2);
        assert_eq!(b.meet(e(&[0, 1]), e(&[1])).unwrap(), e(&[1]));
        assert_eq!(b.neg(b.top()), Element::BOTTOM);
        assert!(b.leq(e(&[0]), e(&[0, 1])).unwrap());
        assert_eq!(b.meet(e(&[2]), e(&[0])), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn powers_cycle() {
        // A 3-cycle has three distinct powers.
        let c = FiniteBao::from_relation(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(c.distinct_powers().len(), 3);
        assert_eq!(FiniteBao::identity(2).distinct_powers().len(), 1);
    }

    #[test]
    fn rejects_out_of_range_tables() {
        assert!(FiniteBao::new(vec![]).is_err());
        assert!(FiniteBao::new(vec![e(&[1])]).is_err());
    }
}
