//! The satisfaction operator as an explicit table, the six `@` laws, and
//! the `Nom` inequality for orthodox constants.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::structure::{canonical_at, HybridStructure, Kind};
use super::{apply_table, FiniteBao};
use crate::element::Element;
use crate::error::{Error, Result};

/// `@_x a` for finitely many first coordinates `x`. Each row lists the
/// value for every element `a`, indexed by `a`'s bits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtTable {
    rows: BTreeMap<Element, Vec<Element>>,
}

#[derive(Serialize, Deserialize)]
struct RowRepr {
    coord: Element,
    values: Vec<Element>,
}

impl Serialize for AtTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.rows.iter().map(|(&coord, values)| RowRepr { coord, values: values.clone() }))
    }
}

impl<'de> Deserialize<'de> for AtTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<RowRepr>::deserialize(deserializer)?;
        Ok(AtTable { rows: rows.into_iter().map(|r| (r.coord, r.values)).collect() })
    }
}

impl AtTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The canonical operator on the given coordinates: `@_x a = ⊤` iff
    /// `x ≤ a`.
    pub fn canonical(bao: &FiniteBao, coords: impl IntoIterator<Item = Element>) -> Self {
        let mut t = AtTable::new();
        for x in coords {
            t.insert_row(x, bao.elements().map(|a| canonical_at(bao, x, a)).collect());
        }
        t
    }

    pub fn insert_row(&mut self, x: Element, values: Vec<Element>) {
        self.rows.insert(x, values);
    }

    pub fn row(&self, x: Element) -> Option<&[Element]> {
        self.rows.get(&x).map(Vec::as_slice)
    }

    pub fn coordinates(&self) -> impl Iterator<Item = Element> + '_ {
        self.rows.keys().copied()
    }

    pub fn get(&self, x: Element, a: Element) -> Option<Element> {
        self.rows.get(&x).and_then(|r| r.get(a.bits() as usize)).copied()
    }

    pub fn validate(&self, bao: &FiniteBao) -> Result<()> {
        for (&x, values) in &self.rows {
            bao.check(x)?;
            if values.len() as u64 != bao.element_count() {
                return Err(Error::InvalidStructure(format!(
                    "@ row for {x:?} has {} entries, expected {}",
                    values.len(),
                    bao.element_count()
                )));
            }
            if let Some(v) = values.iter().find(|v| !bao.contains(**v)) {
                return Err(Error::InvalidStructure(format!("@ row for {x:?} contains {v:?}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AtLaw {
    /// `@x(¬a ∨ b) ≤ ¬@x a ∨ @x b`
    K,
    /// `¬@x a = @x ¬a`
    SelfDual,
    /// `@x @y a ≤ @y a`
    Agree,
    /// `@x x = ⊤`
    Ref,
    /// `x ∧ a ≤ @x a`
    Introduction,
    /// `◇@x a ≤ @x a`
    Back,
}

impl fmt::Display for AtLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AtLaw::K => "K@",
            AtLaw::SelfDual => "self-dual",
            AtLaw::Agree => "agree",
            AtLaw::Ref => "ref",
            AtLaw::Introduction => "introduction",
            AtLaw::Back => "back",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AtViolation {
    pub law: AtLaw,
    pub x: Element,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Element>,
}

/// Runs every law over `coords × elements`, calling `found` on each
/// violation until it returns `false`.
fn scan_at_laws(
    bao: &FiniteBao,
    coords: &[Element],
    at: &dyn Fn(Element, Element) -> Element,
    found: &mut dyn FnMut(AtViolation) -> bool,
) {
    let v = |law, x, y, a, b| AtViolation { law, x, y, a, b };
    for &x in coords {
        if at(x, x) != bao.top() && !found(v(AtLaw::Ref, x, None, None, None)) {
            return;
        }
        for a in bao.elements() {
            let xa = at(x, a);
            let checks = [
                (AtLaw::SelfDual, bao.neg(xa) == at(x, bao.neg(a))),
                (AtLaw::Introduction, (x & a).leq(xa)),
                (AtLaw::Back, bao.diamond(xa).leq(xa)),
            ];
            for (law, ok) in checks {
                if !ok && !found(v(law, x, None, Some(a), None)) {
                    return;
                }
            }
            for b in bao.elements() {
                let lhs = at(x, bao.neg(a) | b);
                if !lhs.leq(bao.neg(xa) | at(x, b)) && !found(v(AtLaw::K, x, None, Some(a), Some(b))) {
                    return;
                }
            }
            for &y in coords {
                let ya = at(y, a);
                if !at(x, ya).leq(ya) && !found(v(AtLaw::Agree, x, Some(y), Some(a), None)) {
                    return;
                }
            }
        }
    }
}

/// Every violation of the six `@` laws for first coordinates `coords`.
pub fn at_law_violations(
    bao: &FiniteBao,
    coords: &[Element],
    at: impl Fn(Element, Element) -> Element,
) -> Vec<AtViolation> {
    let mut out = Vec::new();
    scan_at_laws(bao, coords, &at, &mut |v| {
        out.push(v);
        true
    });
    out
}

/// Whether all six laws hold, stopping at the first violation.
pub fn at_laws_hold(bao: &FiniteBao, coords: &[Element], at: impl Fn(Element, Element) -> Element) -> bool {
    let mut ok = true;
    scan_at_laws(bao, coords, &at, &mut |_| {
        ok = false;
        false
    });
    ok
}

/// A failure of `◇ⁿ(s ∧ a) ≤ □ᵐ(¬s ∨ a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NomViolation {
    pub nominal: String,
    pub n: usize,
    pub m: usize,
    pub a: Element,
}

impl HybridStructure {
    /// Materialises `@` on [`at_coordinates`](Self::at_coordinates) and
    /// checks the six laws.
    pub fn check_at_axioms(&self) -> Result<Vec<AtViolation>> {
        let coords = self.at_coordinates();
        let table = self.at_rows(&coords)?;
        Ok(at_law_violations(self.bao(), &coords, |x, a| table.get(x, a).expect("row present")))
    }

    fn at_rows(&self, coords: &[Element]) -> Result<AtTable> {
        let mut table = AtTable::new();
        for &x in coords {
            let row = self.bao().elements().map(|a| self.at(x, a)).collect::<Result<Vec<_>>>()?;
            table.insert_row(x, row);
        }
        Ok(table)
    }

    /// Checks the `Nom` inequality for one nominal over every element and
    /// every pair of distinct powers of `◇`.
    pub fn nom_schema_violation(&self, nominal: &str) -> Result<Option<NomViolation>> {
        if self.kind() != Kind::Orthodox {
            return Err(Error::Kind("the Nom inequality is checked on orthodox constants".into()));
        }
        let s = self.constant(nominal).ok_or_else(|| Error::UnboundSymbol(nominal.into()))?;
        let bao = self.bao();
        let powers = bao.distinct_powers();
        for a in bao.elements() {
            let lhs_arg = s & a;
            let rhs_arg = bao.neg(s) | a;
            for (n, pn) in powers.iter().enumerate() {
                let lhs = apply_table(pn, lhs_arg);
                for (m, pm) in powers.iter().enumerate() {
                    let rhs = bao.neg(apply_table(pm, bao.neg(rhs_arg)));
                    if !lhs.leq(rhs) {
                        return Ok(Some(NomViolation { nominal: nominal.into(), n, m, a }));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn nom_schema_holds(&self, nominal: &str) -> Result<bool> {
        Ok(self.nom_schema_violation(nominal)?.is_none())
    }

    /// Checks every named constant, and the default constant if any.
    pub fn nom_schema_violation_any(&self) -> Result<Option<NomViolation>> {
        for name in self.constants().keys() {
            if let Some(v) = self.nom_schema_violation(name)? {
                return Ok(Some(v));
            }
        }
        if let Some(d) = self.default_constant() {
            // An unnamed nominal takes the default value; probe it under a
            // name no constant uses.
            let probe = HybridStructure::orthodox(self.bao().clone(), [(DEFAULT_PROBE.to_string(), d)].into(), None)?;
            return probe.nom_schema_violation(DEFAULT_PROBE);
        }
        Ok(None)
    }
}

const DEFAULT_PROBE: &str = "*default*";

#[cfg(test)]
mod tests {
    use super::*;

    fn e(ix: &[usize]) -> Element {
        Element::from_indices(ix.iter().copied())
    }

    fn orthodox(bao: FiniteBao, s: Element) -> HybridStructure {
        HybridStructure::orthodox(bao, [("i".to_string(), s)].into(), None).unwrap()
    }

    #[test]
    fn canonical_table_passes() {
        let bao = FiniteBao::from_relation(2, &[(0, 1), (1, 1)]).unwrap();
        let h = HybridStructure::hybrid(bao, e(&[0, 1])).unwrap();
        assert!(h.check_at_axioms().unwrap().is_empty());
    }

    #[test]
    fn broken_tables_are_reported() {
        let bao = FiniteBao::identity(2);
        let x = e(&[0]);
        let mut bad_ref = AtTable::canonical(&bao, [x]);
        bad_ref.insert_row(x, bao.elements().map(|_| Element::BOTTOM).collect());
        let h = HybridStructure::hybrid(bao.clone(), x).unwrap().with_at_table(bad_ref).unwrap();
        assert!(h.check_at_axioms().unwrap().iter().any(|v| v.law == AtLaw::Ref));

        let mut identity = AtTable::new();
        identity.insert_row(x, bao.elements().collect());
        let h = HybridStructure::hybrid(bao, x).unwrap().with_at_table(identity).unwrap();
        // `@x a = a` commutes with ¬, so self-duality holds; it is `ref`
        // (`@x x = x ≠ ⊤`) that breaks.
        let v = h.check_at_axioms().unwrap();
        let laws: Vec<_> = v.iter().map(|v| v.law).collect();
        assert_eq!(laws, vec![AtLaw::Ref]);
    }

    #[test]
    fn nom_schema_examples() {
        assert!(orthodox(FiniteBao::identity(1), e(&[0])).nom_schema_holds("i").unwrap());
        assert!(orthodox(FiniteBao::identity(2), e(&[0, 1])).nom_schema_holds("i").unwrap());
        let total = FiniteBao::from_relation(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let v = orthodox(total, e(&[0, 1])).nom_schema_violation("i").unwrap().unwrap();
        assert_eq!((v.n, v.m), (0, 1));
    }

    #[test]
    fn default_constant_is_checked() {
        let total = FiniteBao::from_relation(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let h = HybridStructure::orthodox(total, BTreeMap::new(), Some(e(&[0, 1]))).unwrap();
        assert!(h.nom_schema_violation_any().unwrap().is_some());
    }
}
