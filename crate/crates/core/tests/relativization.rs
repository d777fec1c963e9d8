use hybrix::evaluation::{meaning, valid};
use hybrix::generate::{at_bases, baos, orthodox_bases};
use hybrix::relativization::{
    anchored_seeds, compute_d, hybridize_counterexample, lemma_suite, Case, ConstantClass, Relativization,
};
use hybrix::{parse, Assignment, Element, Error, Kind, Language};

const NAMES: [&str; 2] = ["i", "j"];

fn names() -> Vec<String> {
    NAMES.iter().map(|s| s.to_string()).collect()
}

#[test]
fn lemmas_hold_on_all_small_baos() {
    for k in 1..=3 {
        for bao in baos(k) {
            for seeds in bao.top().subsets().skip(1) {
                let seeds: Vec<Element> = seeds.indices().map(Element::atom).collect();
                let report = lemma_suite(&bao, &seeds).unwrap();
                assert!(report.violations.is_empty(), "{bao:?} {seeds:?}: {:?}", report.violations);
            }
        }
    }
}

#[test]
fn constants_relativize_to_bottom_or_atoms() {
    let mut bottoms = 0;
    let mut atoms = 0;
    for k in 1..=3 {
        for base in orthodox_bases(k, &NAMES) {
            if !NAMES.iter().all(|n| base.nom_schema_holds(n).unwrap()) {
                continue;
            }
            for seed in base.bao().atoms() {
                let r = Relativization::from_seeds(&base, &[seed]).unwrap();
                for class in r.classify_constants(&names()).unwrap().values() {
                    match class {
                        ConstantClass::Bottom => bottoms += 1,
                        ConstantClass::Atom(a) => {
                            assert!(a.is_atom());
                            atoms += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(bottoms > 0 && atoms > 0);
}

#[test]
fn non_nominal_constants_can_spread() {
    // Without the nominal axioms a constant can keep two atoms in A_D.
    let base = orthodox_bases(2, &["i"])
        .into_iter()
        .find(|b| b.bao().related(0, 1) && b.bao().related(1, 0) && b.constant("i") == Some(b.top()))
        .unwrap();
    assert!(!base.nom_schema_holds("i").unwrap());
    let r = Relativization::from_seeds(&base, &[Element::atom(0)]).unwrap();
    assert!(matches!(r.classify_constants(&["i".into()]), Err(Error::SchemaUnchecked(_))));
    assert_eq!(r.relativized_constant("i").unwrap().count(), 2);
}

#[test]
fn anchored_relativization_keeps_every_constant_as_an_atom() {
    for k in 1..=3 {
        for base in at_bases(k, &NAMES) {
            for d in base.bao().atoms() {
                let mut seeds = vec![d];
                seeds.extend(anchored_seeds(&base, d, &names()).unwrap());
                let r = Relativization::from_seeds(&base, &seeds).unwrap();
                let classes = r.classify_constants(&names()).unwrap();
                assert!(classes.values().all(|c| matches!(c, ConstantClass::Atom(_))));
                assert_eq!(r.at_homomorphism_violation(&names()).unwrap(), None, "{base:?} d={d:?}");
            }
        }
    }
}

#[test]
fn arbitrary_seeds_break_at_atomicity() {
    // Identity relation, s = ⊤, @ the identity map: seeding both atoms
    // keeps s^D = ⊤, which is not an atom.
    let base = at_bases(2, &["i"])
        .into_iter()
        .find(|b| b.bao().related(0, 0) && b.bao().related(1, 1) && b.constant("i") == Some(b.top())
            && b.bao().diamond_on_atoms().iter().all(|s| s.is_atom()))
        .unwrap();
    let r = Relativization::from_seeds(&base, &[Element::atom(0), Element::atom(1)]).unwrap();
    assert_eq!(r.relativized_constant("i").unwrap(), base.top());
    assert!(r.classify_constants(&["i".into()]).is_err());
}

#[test]
fn d_is_closed_under_converse_steps() {
    for bao in baos(3) {
        for seed in bao.atoms() {
            let (d, _) = compute_d(&bao, &[seed]).unwrap();
            assert!(d.leq(bao.boxed(d)));
            assert!(seed.leq(d));
        }
    }
}

fn refutations(formulas: &[&str], lang: Language) -> Vec<(usize, Case)> {
    let mut out = Vec::new();
    for k in 1..=2 {
        let bases = if lang == Language::HAt { at_bases(k, &NAMES) } else { orthodox_bases(k, &NAMES) };
        for base in bases {
            if lang == Language::H && !NAMES.iter().all(|n| base.nom_schema_holds(n).unwrap()) {
                continue;
            }
            for (fi, text) in formulas.iter().enumerate() {
                let phi = parse(text, lang).unwrap();
                for p in base.bao().elements() {
                    let nu = Assignment::new().prop("p", p);
                    if meaning(&base, &nu, &phi).unwrap() == base.top() {
                        continue;
                    }
                    let sigma = [parse("p -> <>p", Language::H).unwrap()];
                    match hybridize_counterexample(&base, &nu, &phi, &sigma) {
                        Ok(out_h) => {
                            assert_eq!(out_h.structure.kind(), Kind::Hybrid);
                            assert!(!valid(&out_h.structure, &phi).unwrap().holds);
                            assert_eq!(out_h.case, Case::of(&out_h.classes));
                            assert!(out_h.sigma_preserved);
                            out.push((fi, out_h.case));
                        }
                        Err(Error::NoConstantAvailable) => {
                            assert!(NAMES.iter().all(|n| base.constant(n) == Some(Element::BOTTOM)));
                        }
                        Err(e) => panic!("{text} on {base:?}: {e}"),
                    }
                }
            }
        }
    }
    out
}

#[test]
fn hybridization_refutes_on_every_small_nominal_base() {
    let formulas = ["p", "~i", "i -> []i", "j & ~i", "<>p -> p", "i | j", "<>(i & p) -> [](i -> p)", "~(i & j)"];
    let out = refutations(&formulas, Language::H);
    for case in [Case::One, Case::Two, Case::Three] {
        assert!(out.iter().any(|(_, c)| *c == case), "no {case:?}");
    }
}

#[test]
fn hybridization_under_at_is_always_the_first_case() {
    let formulas = ["@i p", "~@i j", "@i <>p -> p", "i -> @j p"];
    let out = refutations(&formulas, Language::HAt);
    assert!(!out.is_empty());
    assert!(out.iter().all(|(_, c)| *c == Case::One));
}
