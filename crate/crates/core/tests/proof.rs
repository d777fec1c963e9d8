use hybrix::duality::underlying_algebra;
use hybrix::generate::{all_frames, hybrid_algebras_upto};
use hybrix::proof::corpus::examples;
use hybrix::proof::{soundness_audit, soundness_audit_frames, verify, Builder, Logic, Rule};
use hybrix::relational::TwoSortedFrame;
use hybrix::{parse, Element, Language, SubstitutionMap};

fn dead_end_frame() -> TwoSortedFrame {
    TwoSortedFrame::full(vec!["u".into(), "v".into()], vec![Element::atom(0), Element::BOTTOM], Element::atom(1)).unwrap()
}

#[test]
fn corpus_is_sound_on_small_algebras_and_frames() {
    let algebras: Vec<_> = hybrid_algebras_upto(3).collect();
    let frames: Vec<_> = (1..=3).flat_map(all_frames).collect();
    for e in examples() {
        let d = &e.derivation;
        if d.logic.base != Language::HE {
            let r = soundness_audit(d, &algebras).unwrap();
            assert!(r.sound(), "{}: {:?}", e.name, r.violators);
            assert!(r.checked > 0 || !d.logic.sigma.is_empty(), "{}", e.name);
        }
        let r = soundness_audit_frames(d, &frames).unwrap();
        assert!(r.sound(), "{} on frames: {:?}", e.name, r.violators);
    }
}

#[test]
fn name_derivation_excludes_the_non_permeated_counterexample() {
    let sigma = vec![parse("j -> []bot", Language::H).unwrap()];
    let mut b = Builder::new(Logic::new(Language::H, true).with_sigma(sigma.clone()));
    let s = b.sigma(0, SubstitutionMap::new(), "j -> []bot").unwrap();
    b.rule(Rule::Name, &[s], "[]bot").unwrap();
    let d = b.finish();
    assert_eq!(verify(&d), Ok(()));

    let alg = underlying_algebra(&dead_end_frame()).unwrap().algebra;
    assert!(hybrix::evaluation::validates_theory(&alg, &sigma).unwrap());
    assert!(!hybrix::evaluation::valid(&alg, &parse("[]bot", Language::H).unwrap()).unwrap().holds);
    assert!(!alg.is_permeated().unwrap().holds());
    let r = soundness_audit(&d, &[alg]).unwrap();
    assert_eq!((r.checked, r.excluded), (0, 1));
    assert!(r.warning.is_some());
}

#[test]
fn empty_corpus_is_vacuous() {
    let d = &examples()[0].derivation;
    let r = soundness_audit(d, &[]).unwrap();
    assert!(r.sound() && r.warning.is_some());
}
