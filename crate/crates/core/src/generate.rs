//! Deterministic enumeration and seeded random generation of structures.
//!
//! Exhaustive orders:
//! - BAOs with `k` atoms: table index `t` runs over `0..2^(k·k)`; `◇` of
//!   atom `y` is bits `k·y .. k·y + k` of `t`.
//! - Hybrid algebras: for each BAO in order, designated sets `X` in
//!   increasing bit order over `1..2^k`.
//! - Frames on `n` worlds: relation index `r` over `0..2^(n·n)`, where bit
//!   `n·u + v` means `uRv`; then admissible families (full powerset, or all
//!   `⟨R⟩`-closed Boolean subalgebras ordered by partition), then nonempty
//!   point sets in increasing bit order.

use rand::Rng;

use std::collections::BTreeMap;

use crate::algebra::{at_laws_hold, AtTable, FiniteBao, HybridStructure};
use crate::element::Element;
use crate::relational::{closure, diamond_of, TwoSortedFrame};
use crate::syntax::{Formula, Language};

pub fn bao_count(k: usize) -> u64 {
    1u64 << (k * k)
}

pub fn bao_by_index(k: usize, t: u64) -> FiniteBao {
    let mask = (1u64 << k) - 1;
    FiniteBao::new((0..k).map(|y| Element::from_bits(t >> (k * y) & mask)).collect()).expect("valid table")
}

/// Every BAO with `k` atoms (`(2^k)^k` of them).
pub fn baos(k: usize) -> impl Iterator<Item = FiniteBao> {
    assert!((1..=5).contains(&k), "exhaustive BAO enumeration is limited to 1..=5 atoms");
    (0..bao_count(k)).map(move |t| bao_by_index(k, t))
}

/// Every hybrid algebra with `k` atoms: each BAO with each nonempty `X`.
pub fn hybrid_algebras(k: usize) -> impl Iterator<Item = HybridStructure> {
    baos(k).flat_map(move |bao| {
        (1..1u64 << k).map(move |x| HybridStructure::hybrid(bao.clone(), Element::from_bits(x)).expect("nonempty X"))
    })
}

pub fn hybrid_algebras_upto(max_atoms: usize) -> impl Iterator<Item = HybridStructure> {
    (1..=max_atoms).flat_map(hybrid_algebras)
}

pub fn world_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

fn successors_by_index(n: usize, r: u64) -> Vec<Element> {
    let mask = (1u64 << n) - 1;
    (0..n).map(|u| Element::from_bits(r >> (n * u) & mask)).collect()
}

/// Frames over `n` worlds with every subset admissible: every relation
/// with every nonempty point set.
pub fn full_frames(n: usize) -> impl Iterator<Item = TwoSortedFrame> {
    assert!((1..=4).contains(&n), "frame enumeration is limited to 1..=4 worlds");
    (0..1u64 << (n * n)).flat_map(move |r| {
        let succ = successors_by_index(n, r);
        (1..1u64 << n).map(move |b| {
            TwoSortedFrame::full(world_names(n), succ.clone(), Element::from_bits(b)).expect("powerset frames are valid")
        })
    })
}

/// Set partitions of `0..n` as lists of blocks, in restricted-growth order.
pub fn partitions(n: usize) -> Vec<Vec<Element>> {
    fn go(i: usize, n: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<Element>>) {
        if i == n {
            let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
            let mut parts = vec![Element::BOTTOM; blocks];
            for (w, &l) in labels.iter().enumerate() {
                parts[l] |= Element::atom(w);
            }
            out.push(parts);
            return;
        }
        let next = labels.iter().copied().max().map_or(0, |m| m + 1);
        for l in 0..=next {
            labels.push(l);
            go(i + 1, n, labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// Every valid two-sorted frame on `n` worlds: admissible families are the
/// Boolean subalgebras of `P(W)` (one per partition) closed under `⟨R⟩`.
pub fn all_frames(n: usize) -> Vec<TwoSortedFrame> {
    assert!((1..=4).contains(&n), "frame enumeration is limited to 1..=4 worlds");
    let parts = partitions(n);
    let mut out = Vec::new();
    for r in 0..1u64 << (n * n) {
        let succ = successors_by_index(n, r);
        for blocks in &parts {
            let family: Vec<Element> =
                Element::full(blocks.len()).subsets().map(|s| s.indices().fold(Element::BOTTOM, |acc, i| acc | blocks[i])).collect();
            if family.iter().any(|&a| !family.contains(&diamond_of(&succ, a))) {
                continue;
            }
            let singletons = Element::from_indices(blocks.iter().filter(|b| b.is_atom()).filter_map(|b| b.first()));
            for pts in singletons.subsets().skip(1) {
                out.push(TwoSortedFrame::new(world_names(n), succ.clone(), family.clone(), pts).expect("closed family"));
            }
        }
    }
    out
}

/// `@` rows `@_s a = {z : g(z) ∈ a}` for every map `g` from atoms into
/// `s` that fixes the atoms of `s`.
pub fn at_rows(bao: &FiniteBao, s: Element) -> Vec<Vec<Element>> {
    let k = bao.atom_count();
    let targets: Vec<usize> = s.indices().collect();
    let free: Vec<usize> = (0..k).filter(|&z| !s.has(z)).collect();
    if targets.is_empty() {
        return Vec::new();
    }
    let mut rows = Vec::new();
    let mut choice = vec![0usize; free.len()];
    loop {
        let mut g: Vec<usize> = (0..k).collect();
        for (i, &z) in free.iter().enumerate() {
            g[z] = targets[choice[i]];
        }
        rows.push(bao.elements().map(|a| Element::from_indices((0..k).filter(|&z| a.has(g[z])))).collect());
        let Some(i) = (0..free.len()).rev().find(|&i| choice[i] + 1 < targets.len()) else {
            return rows;
        };
        choice[i] += 1;
        choice[i + 1..].iter_mut().for_each(|c| *c = 0);
    }
}

/// Every `@` table on `coords` assembled from [`at_rows`] that satisfies
/// the six laws.
pub fn at_tables(bao: &FiniteBao, coords: &[Element]) -> Vec<AtTable> {
    let mut coords = coords.to_vec();
    coords.sort();
    coords.dedup();
    let options: Vec<Vec<Vec<Element>>> = coords.iter().map(|&s| at_rows(bao, s)).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; coords.len()];
    if options.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let mut t = AtTable::new();
        for (i, &s) in coords.iter().enumerate() {
            t.insert_row(s, options[i][pick[i]].clone());
        }
        if at_laws_hold(bao, &coords, |x, a| t.get(x, a).expect("row present")) {
            out.push(t);
        }
        let Some(i) = (0..coords.len()).rev().find(|&i| pick[i] + 1 < options[i].len()) else {
            return out;
        };
        pick[i] += 1;
        pick[i + 1..].iter_mut().for_each(|c| *c = 0);
    }
}

fn assignments_of(names: &[&str], values: &[Element]) -> Vec<BTreeMap<String, Element>> {
    let mut out = vec![BTreeMap::new()];
    for name in names {
        out = out
            .into_iter()
            .flat_map(|m| {
                values.iter().map(move |&v| {
                    let mut m = m.clone();
                    m.insert(name.to_string(), v);
                    m
                })
            })
            .collect();
    }
    out
}

/// Orthodox interpretations on every BAO with `k` atoms, giving each named
/// nominal every element as its constant.
pub fn orthodox_bases(k: usize, names: &[&str]) -> Vec<HybridStructure> {
    let mut out = Vec::new();
    for bao in baos(k) {
        let values: Vec<Element> = bao.elements().collect();
        for constants in assignments_of(names, &values) {
            out.push(HybridStructure::orthodox(bao.clone(), constants, None).expect("constants in range"));
        }
    }
    out
}

/// Orthodox interpretations with `@` on every BAO with `k` atoms: nonzero
/// constants for each named nominal, with every lawful table.
pub fn at_bases(k: usize, names: &[&str]) -> Vec<HybridStructure> {
    let mut out = Vec::new();
    for bao in baos(k) {
        let values: Vec<Element> = bao.elements().skip(1).collect();
        for constants in assignments_of(names, &values) {
            let coords: Vec<Element> = constants.values().copied().collect();
            for table in at_tables(&bao, &coords) {
                let h = HybridStructure::orthodox(bao.clone(), constants.clone(), None).expect("constants in range");
                out.push(h.with_at_table(table).expect("valid table"));
            }
        }
    }
    out
}

pub fn random_bao<R: Rng>(rng: &mut R, k: usize) -> FiniteBao {
    FiniteBao::new((0..k).map(|_| Element::from_bits(rng.gen_range(0..1u64 << k))).collect()).expect("valid table")
}

pub fn random_hybrid<R: Rng>(rng: &mut R, k: usize) -> HybridStructure {
    let bao = random_bao(rng, k);
    HybridStructure::hybrid(bao, Element::from_bits(rng.gen_range(1..1u64 << k))).expect("nonempty X")
}

/// A random frame on `n` worlds whose admissible family is generated by
/// two random sets and the chosen point singletons.
pub fn random_frame<R: Rng>(rng: &mut R, n: usize) -> TwoSortedFrame {
    let succ: Vec<Element> = (0..n).map(|_| Element::from_bits(rng.gen_range(0..1u64 << n))).collect();
    let points = Element::from_bits(rng.gen_range(1..1u64 << n));
    let gens: Vec<Element> = (0..2).map(|_| Element::from_bits(rng.gen_range(0..1u64 << n))).collect();
    let mut all_gens = gens;
    all_gens.extend(points.indices().map(Element::atom));
    let family = closure(&succ, &all_gens);
    TwoSortedFrame::new(world_names(n), succ, family, points).expect("closure is closed")
}

/// A random formula of depth at most `depth` over the given symbols,
/// using only connectives of `lang`.
pub fn random_formula<R: Rng>(rng: &mut R, lang: Language, depth: usize, props: &[&str], noms: &[&str]) -> Formula {
    let leaf = |rng: &mut R| match rng.gen_range(0..4) {
        0 if !noms.is_empty() => Formula::nom(noms[rng.gen_range(0..noms.len())]),
        1 => Formula::Bot,
        _ if !props.is_empty() => Formula::prop(props[rng.gen_range(0..props.len())]),
        _ => Formula::top(),
    };
    if depth == 0 || rng.gen_range(0..4) == 0 {
        return leaf(rng);
    }
    let sub = |rng: &mut R| random_formula(rng, lang, depth - 1, props, noms);
    match rng.gen_range(0..5) {
        0 => sub(rng).not(),
        1 => sub(rng).and(sub(rng)),
        2 => sub(rng).diamond(),
        3 if lang == Language::HAt && !noms.is_empty() => sub(rng).at(noms[rng.gen_range(0..noms.len())]),
        3 if lang == Language::HE => sub(rng).exists(),
        _ => sub(rng).or(sub(rng)),
    }
}
