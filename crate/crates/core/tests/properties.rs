use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hybrix::algebra::structure::{product, project};
use hybrix::evaluation::meaning;
use hybrix::generate::{random_bao, random_formula, random_hybrid};
use hybrix::json::{algebra_from_str, algebra_to_value};
use hybrix::relativization::{compute_d, Relativization};
use hybrix::syntax::sorted_substitute;
use hybrix::{parse, Assignment, Element, Formula, HybridStructure, KripkeModel, Language, SubstitutionMap};

const PROPS: [&str; 2] = ["p", "q"];
const NOMS: [&str; 2] = ["i", "j"];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn lang_of(n: u8) -> Language {
    [Language::H, Language::HAt, Language::HE][n as usize % 3]
}

/// Algebras interpret `@` but not `E`.
fn algebra_lang_of(n: u8) -> Language {
    [Language::H, Language::HAt][n as usize % 2]
}

fn random_assignment(r: &mut ChaCha8Rng, h: &HybridStructure) -> Assignment {
    let range = h.nominal_range();
    let mut nu = Assignment::new();
    for p in PROPS {
        nu = nu.prop(p, Element::from_bits(r.gen_range(0..=h.top().bits())));
    }
    for i in NOMS {
        nu = nu.nom(i, range[r.gen_range(0..range.len())]);
    }
    nu
}

/// `σ` then `τ` as one simultaneous substitution.
fn compose(sigma: &SubstitutionMap, tau: &SubstitutionMap) -> SubstitutionMap {
    let mut out = SubstitutionMap::new();
    for (p, f) in &tau.props {
        out.props.insert(p.clone(), f.clone());
    }
    for (p, f) in &sigma.props {
        out.props.insert(p.clone(), sorted_substitute(f, tau));
    }
    for (i, j) in &tau.noms {
        out.noms.insert(i.clone(), j.clone());
    }
    for (i, j) in &sigma.noms {
        out.noms.insert(i.clone(), tau.noms.get(j).unwrap_or(j).clone());
    }
    out
}

fn random_substitution(r: &mut ChaCha8Rng, lang: Language) -> SubstitutionMap {
    let mut s = SubstitutionMap::new();
    for p in PROPS {
        if r.gen_bool(0.6) {
            s = s.prop(p, random_formula(r, lang, 2, &PROPS, &NOMS));
        }
    }
    for i in NOMS {
        if r.gen_bool(0.5) {
            s = s.nom(i, NOMS[r.gen_range(0..NOMS.len())]);
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_then_parsing_is_identity(seed: u64, l: u8) {
        let lang = lang_of(l);
        let phi = random_formula(&mut rng(seed), lang, 5, &PROPS, &NOMS);
        prop_assert_eq!(parse(&phi.to_string(), lang).unwrap(), phi);
    }

    #[test]
    fn substitutions_compose(seed: u64, l: u8) {
        let lang = lang_of(l);
        let mut r = rng(seed);
        let phi = random_formula(&mut r, lang, 4, &PROPS, &NOMS);
        let (sigma, tau) = (random_substitution(&mut r, lang), random_substitution(&mut r, lang));
        prop_assert_eq!(
            sorted_substitute(&sorted_substitute(&phi, &sigma), &tau),
            sorted_substitute(&phi, &compose(&sigma, &tau))
        );
    }

    #[test]
    fn substitution_commutes_with_meaning(seed: u64, k in 1usize..=3, l: u8) {
        let lang = algebra_lang_of(l);
        let mut r = rng(seed);
        let h = random_hybrid(&mut r, k);
        let phi = random_formula(&mut r, lang, 4, &PROPS, &NOMS);
        let sigma = random_substitution(&mut r, lang);
        let nu = random_assignment(&mut r, &h);
        let mut shifted = Assignment::new();
        for p in PROPS {
            let image = sigma.props.get(p).cloned().unwrap_or_else(|| Formula::prop(p));
            shifted = shifted.prop(p, meaning(&h, &nu, &image).unwrap());
        }
        for i in NOMS {
            let image = sigma.noms.get(i).map_or(i, String::as_str);
            shifted = shifted.nom(i, nu.noms[image]);
        }
        prop_assert_eq!(meaning(&h, &nu, &sorted_substitute(&phi, &sigma)).unwrap(), meaning(&h, &shifted, &phi).unwrap());
    }

    #[test]
    fn meaning_agrees_with_kripke_semantics(seed: u64, k in 1usize..=4, l: u8) {
        let lang = algebra_lang_of(l);
        let mut r = rng(seed);
        let h = random_hybrid(&mut r, k);
        let phi = random_formula(&mut r, lang, 5, &PROPS, &NOMS);
        let nu = random_assignment(&mut r, &h);
        let successors = (0..k).map(|x| h.bao().successors(x)).collect();
        let valuation: BTreeMap<String, Element> = nu.props.iter().chain(&nu.noms).map(|(n, &v)| (n.clone(), v)).collect();
        let model = KripkeModel::new((0..k).map(|x| format!("w{x}")).collect(), successors, valuation).unwrap();
        prop_assert_eq!(meaning(&h, &nu, &phi).unwrap(), model.extension(&phi).unwrap());
    }

    #[test]
    fn diamond_is_normal_additive_and_adjoint(seed: u64, k in 1usize..=6) {
        let mut r = rng(seed);
        let bao = random_bao(&mut r, k);
        let top = bao.top().bits();
        let a = Element::from_bits(r.gen_range(0..=top));
        let b = Element::from_bits(r.gen_range(0..=top));
        prop_assert_eq!(bao.diamond(Element::BOTTOM), Element::BOTTOM);
        prop_assert_eq!(bao.diamond(a | b), bao.diamond(a) | bao.diamond(b));
        if a.leq(b) {
            prop_assert!(bao.diamond(a).leq(bao.diamond(b)));
        }
        prop_assert_eq!(bao.diamond(a).leq(b), a.leq(bao.box_inv(b)));
        prop_assert_eq!(bao.diamond_inv(a).leq(b), a.leq(bao.boxed(b)));
        prop_assert_eq!(bao.diamond_inv(a), bao.diamond_inv_pointwise(a));
        prop_assert_eq!(bao.boxed(a), bao.neg(bao.diamond(bao.neg(a))));
    }

    #[test]
    fn product_projects_onto_the_grounded_left_factor(seed: u64, ka in 1usize..=3, kb in 1usize..=3) {
        let mut r = rng(seed);
        let (a, b) = (random_hybrid(&mut r, ka), random_hybrid(&mut r, kb));
        let prod = product(&a, &b).unwrap();
        let phi = random_formula(&mut r, Language::H, 4, &PROPS, &NOMS);
        let nu = random_assignment(&mut r, &prod);
        let left = |e: Element| project(ka, e).0;
        let nu_left = Assignment {
            props: nu.props.iter().map(|(p, &v)| (p.clone(), left(v))).collect(),
            noms: nu.noms.iter().map(|(i, &v)| (i.clone(), left(v))).collect(),
        };
        prop_assert_eq!(left(meaning(&prod, &nu, &phi).unwrap()), meaning(&a.grounded().unwrap(), &nu_left, &phi).unwrap());
    }

    #[test]
    fn relativization_is_a_homomorphism(seed: u64, k in 1usize..=5) {
        let mut r = rng(seed);
        let bao = random_bao(&mut r, k);
        let base = HybridStructure::orthodox(bao, BTreeMap::new(), None).unwrap();
        let seed_atom = Element::atom(r.gen_range(0..k));
        let rel = Relativization::from_seeds(&base, &[seed_atom]).unwrap();
        let (d, _) = compute_d(base.bao(), &[seed_atom]).unwrap();
        prop_assert_eq!(rel.d(), d);
        let a = Element::from_bits(r.gen_range(0..=base.top().bits()));
        let b = Element::from_bits(r.gen_range(0..=base.top().bits()));
        let (local, to) = (rel.local().bao(), |x| rel.to_local(x));
        prop_assert_eq!(rel.h(a), a & d);
        prop_assert_eq!(to(a | b), to(a) | to(b));
        prop_assert_eq!(to(base.bao().neg(a)), local.neg(to(a)));
        prop_assert_eq!(to(base.bao().diamond(a)), local.diamond(to(a)));
        prop_assert_eq!(rel.to_base(to(a)), a & d);
    }

    #[test]
    fn algebra_json_round_trips(seed: u64, k in 1usize..=4) {
        let h = random_hybrid(&mut rng(seed), k);
        let text = algebra_to_value(&h).to_string();
        prop_assert_eq!(algebra_from_str(&text).unwrap(), h);
    }
}
