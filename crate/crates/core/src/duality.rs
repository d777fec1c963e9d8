//! Finite duality between hybrid algebras and two-sorted general frames.

use serde::Serialize;

use crate::algebra::{FiniteBao, HybridStructure, Kind};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::relational::TwoSortedFrame;

/// The algebra of admissible sets of a frame, with the world set behind
/// each atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameAlgebra {
    pub algebra: HybridStructure,
    /// `atom_sets[i]` is the admissible set that atom `i` stands for.
    pub atom_sets: Vec<Element>,
}

impl FrameAlgebra {
    /// The algebra element for an admissible set.
    pub fn element_of(&self, set: Element) -> Element {
        Element::from_indices((0..self.atom_sets.len()).filter(|&i| self.atom_sets[i].leq(set)))
    }

    /// The admissible set for an algebra element.
    pub fn set_of(&self, a: Element) -> Element {
        a.indices().fold(Element::BOTTOM, |acc, i| acc | self.atom_sets[i])
    }
}

/// `g*`: atoms are the minimal nonempty admissible sets, `◇` is `⟨R⟩`, and
/// the designated atoms are the singletons of admissible points.
pub fn underlying_algebra(g: &TwoSortedFrame) -> Result<FrameAlgebra> {
    let adm = g.admissible();
    let atom_sets: Vec<Element> = adm
        .iter()
        .copied()
        .filter(|&a| !a.is_bottom() && !adm.iter().any(|&b| !b.is_bottom() && b != a && b.leq(a)))
        .collect();
    let element_of = |set: Element| Element::from_indices((0..atom_sets.len()).filter(|&i| atom_sets[i].leq(set)));
    let bao = FiniteBao::new(atom_sets.iter().map(|&s| element_of(g.diamond(s))).collect())?;
    let designated =
        Element::from_indices((0..atom_sets.len()).filter(|&i| atom_sets[i].is_atom() && atom_sets[i].leq(g.points())));
    Ok(FrameAlgebra { algebra: HybridStructure::hybrid(bao, designated)?, atom_sets })
}

/// `A_*`: one world per ultrafilter (each generated by an atom), with
/// `Q◇ u v` evaluated from its definition over the whole filter `v`.
pub fn ultrafilter_frame(h: &HybridStructure) -> Result<TwoSortedFrame> {
    if h.kind() != Kind::Hybrid {
        return Err(Error::Kind(format!("ultrafilter frames are built from hybrid algebras, not {}", h.kind().name())));
    }
    let bao = h.bao();
    let k = bao.atom_count();
    // The ultrafilter generated by atom y is every element above y.
    let filter = |y: usize| bao.elements().filter(move |a| a.has(y));
    let successors = (0..k)
        .map(|x| Element::from_indices((0..k).filter(|&y| filter(y).all(|a| bao.diamond(a).has(x)))))
        .collect();
    let names = (0..k).map(|x| format!("x{x}")).collect();
    TwoSortedFrame::new(names, successors, bao.elements().collect(), h.designated())
}

/// World bijection `f` with `uRv ⇔ f(u)Rf(v)`, `f[B] = B'` and
/// `f[A] = A'`.
pub fn frame_isomorphism(g1: &TwoSortedFrame, g2: &TwoSortedFrame) -> Option<Vec<usize>> {
    let n = g1.world_count();
    if n != g2.world_count()
        || g1.admissible().len() != g2.admissible().len()
        || g1.points().count() != g2.points().count()
    {
        return None;
    }
    fn extend(u: usize, g1: &TwoSortedFrame, g2: &TwoSortedFrame, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = map.len();
        if u == n {
            return check_frame_isomorphism(g1, g2, map);
        }
        for fu in 0..n {
            if used[fu]
                || g1.points().has(u) != g2.points().has(fu)
                || g1.related(u, u) != g2.related(fu, fu)
                || !(0..u).all(|v| g1.related(u, v) == g2.related(fu, map[v]) && g1.related(v, u) == g2.related(map[v], fu))
            {
                continue;
            }
            map[u] = fu;
            used[fu] = true;
            if extend(u + 1, g1, g2, map, used) {
                return true;
            }
            used[fu] = false;
        }
        false
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(0, g1, g2, &mut map, &mut used).then_some(map)
}

/// Independent check of a claimed frame isomorphism.
pub fn check_frame_isomorphism(g1: &TwoSortedFrame, g2: &TwoSortedFrame, map: &[usize]) -> bool {
    let n = g1.world_count();
    let image = |s: Element| Element::from_indices(s.indices().map(|w| map[w]));
    let mut seen = vec![false; n];
    map.len() == n
        && map.iter().all(|&m| m < n && !std::mem::replace(&mut seen[m], true))
        && (0..n).all(|u| (0..n).all(|v| g1.related(u, v) == g2.related(map[u], map[v])))
        && image(g1.points()) == g2.points()
        && g1.admissible().iter().all(|&a| g2.admissible().contains(&image(a)))
}

/// Independent check of a claimed atom bijection between hybrid algebras.
pub fn check_algebra_isomorphism(h1: &HybridStructure, h2: &HybridStructure, map: &[usize]) -> bool {
    let k = h1.bao().atom_count();
    let mut seen = vec![false; k];
    map.len() == k
        && h2.bao().atom_count() == k
        && map.iter().all(|&m| m < k && !std::mem::replace(&mut seen[m], true))
        && (0..k).all(|x| {
            h1.designated().has(x) == h2.designated().has(map[x])
                && (0..k).all(|y| h1.bao().related(x, y) == h2.bao().related(map[x], map[y]))
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Item {
    pub number: u8,
    pub holds: bool,
    pub note: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub items: Vec<Item>,
}

impl DualityReport {
    pub fn all_hold(&self) -> bool {
        self.items.iter().all(|i| i.holds)
    }

    pub fn item(&self, number: u8) -> Option<&Item> {
        self.items.iter().find(|i| i.number == number)
    }
}

fn item(number: u8, holds: bool, note: impl Into<String>, witness: Option<Vec<usize>>) -> Item {
    Item { number, holds, note: note.into(), witness }
}

/// Items 1, 2, 3 and 5 starting from a hybrid algebra.
pub fn algebra_report(h: &HybridStructure) -> Result<DualityReport> {
    let frame = ultrafilter_frame(h)?;
    let back = underlying_algebra(&frame)?;
    let iso = back.algebra.isomorphism(h);
    let permeated = h.is_permeated()?.holds();
    let strong = frame.is_strongly_descriptive();
    Ok(DualityReport {
        items: vec![
            item(1, frame.is_descriptive(), "ultrafilter frame is descriptive", None),
            item(2, back.algebra.kind() == Kind::Hybrid, "algebra of the ultrafilter frame is hybrid", None),
            item(3, iso.is_some(), "(A_*)* isomorphic to A", iso),
            item(
                5,
                !permeated || strong,
                format!("permeated: {permeated}, ultrafilter frame strongly descriptive: {strong}"),
                None,
            ),
        ],
    })
}

/// Items 2, 4 and 6 starting from a frame. Item 4 holds when the round
/// trip succeeds exactly for descriptive frames.
pub fn frame_report(g: &TwoSortedFrame) -> Result<DualityReport> {
    let alg = underlying_algebra(g)?;
    let round = ultrafilter_frame(&alg.algebra)?;
    let iso = frame_isomorphism(&round, g);
    let descriptive = g.is_descriptive();
    let strong = g.is_strongly_descriptive();
    let permeated = alg.algebra.is_permeated()?.holds();
    Ok(DualityReport {
        items: vec![
            item(2, alg.algebra.kind() == Kind::Hybrid, "underlying algebra is hybrid", None),
            item(
                4,
                iso.is_some() == descriptive,
                format!("round trip isomorphic: {}, descriptive: {descriptive}", iso.is_some()),
                iso,
            ),
            item(6, !strong || permeated, format!("strongly descriptive: {strong}, underlying permeated: {permeated}"), None),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn e(ix: &[usize]) -> Element {
        Element::from_indices(ix.iter().copied())
    }

    fn dead_end_frame() -> TwoSortedFrame {
        TwoSortedFrame::full(vec!["u".into(), "v".into()], vec![e(&[0]), e(&[])], e(&[1])).unwrap()
    }

    #[test]
    fn underlying_examples() {
        let fa = underlying_algebra(&dead_end_frame()).unwrap();
        assert_eq!(fa.atom_sets, vec![e(&[0]), e(&[1])]);
        assert_eq!(fa.algebra.bao().diamond_on_atoms(), &[e(&[0]), e(&[])]);
        assert_eq!(fa.algebra.designated(), e(&[1]));

        let single = TwoSortedFrame::full(vec!["w".into()], vec![e(&[0])], e(&[0])).unwrap();
        let fa = underlying_algebra(&single).unwrap();
        assert_eq!(fa.algebra, HybridStructure::hybrid(FiniteBao::identity(1), e(&[0])).unwrap());
    }

    #[test]
    fn ultrafilter_examples() {
        let a = HybridStructure::hybrid(FiniteBao::identity(1), e(&[0])).unwrap();
        let g = ultrafilter_frame(&a).unwrap();
        assert_eq!(g.world_count(), 1);
        assert!(g.related(0, 0));
        assert_eq!(g.points(), e(&[0]));

        let empty = HybridStructure::hybrid(FiniteBao::new(vec![e(&[]), e(&[])]).unwrap(), e(&[0])).unwrap();
        let g = ultrafilter_frame(&empty).unwrap();
        assert_eq!(g.world_count(), 2);
        assert!(g.successors().iter().all(|s| s.is_bottom()));
    }

    #[test]
    fn q_relation_matches_atom_relation() {
        for k in 1..=3 {
            for bao in generate::baos(k) {
                let h = HybridStructure::hybrid(bao.clone(), e(&[0])).unwrap();
                let g = ultrafilter_frame(&h).unwrap();
                for x in 0..k {
                    for y in 0..k {
                        assert_eq!(g.related(x, y), bao.related(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn dead_end_frame_round_trips() {
        let r = frame_report(&dead_end_frame()).unwrap();
        assert!(r.all_hold());
        let w = r.item(4).unwrap().witness.clone().unwrap();
        let g = dead_end_frame();
        let round = ultrafilter_frame(&underlying_algebra(&g).unwrap().algebra).unwrap();
        assert!(check_frame_isomorphism(&round, &g, &w));
    }

    #[test]
    fn non_tight_frame_fails_round_trip() {
        // Three worlds, A generated by the partition {{0}, {1, 2}}, with
        // 0 R 1 only: not tight, since 0 ∈ ⟨R⟩{1,2} forces 0 R 2 as well.
        let g = TwoSortedFrame::new(
            generate::world_names(3),
            vec![e(&[1]), e(&[]), e(&[])],
            vec![e(&[]), e(&[0]), e(&[1, 2]), e(&[0, 1, 2])],
            e(&[0]),
        )
        .unwrap();
        assert!(!g.is_descriptive());
        let r = frame_report(&g).unwrap();
        assert!(r.item(4).unwrap().witness.is_none());
        assert!(r.item(4).unwrap().holds);
    }

    #[test]
    fn algebra_round_trips_small() {
        for h in generate::hybrid_algebras_upto(2) {
            let r = algebra_report(&h).unwrap();
            assert!(r.all_hold(), "{h:?}");
            let w = r.item(3).unwrap().witness.clone().unwrap();
            let back = underlying_algebra(&ultrafilter_frame(&h).unwrap()).unwrap().algebra;
            assert!(check_algebra_isomorphism(&back, &h, &w));
        }
    }
}
