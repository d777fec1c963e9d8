//! Exhaustive and seeded-random property suites. Every failure carries a
//! witness: the files and command line that replay it.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::structure::{product, project};
use crate::algebra::{at_laws_hold, AtTable, HybridStructure, Kind};
use crate::duality::{algebra_report, check_algebra_isomorphism, check_frame_isomorphism, frame_report};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::evaluation::{equation_true_with_budget, meaning, Assignment, DEFAULT_BUDGET};
use crate::generate;
use crate::json::{algebra_to_value, frame_to_value};
use crate::proof::{self, corpus};
use crate::relational::TwoSortedFrame;
use crate::relativization::{anchored_seeds, hybridize_counterexample, lemma_suite, Case, Relativization};
use crate::syntax::{parse, Equation, Formula, Language};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub max_atoms: usize,
    pub max_worlds: usize,
    pub trials: usize,
    pub rng_seed: u64,
    /// Cap on assignments enumerated per equation check.
    pub budget: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_atoms: 3, max_worlds: 3, trials: 1000, rng_seed: 0, budget: DEFAULT_BUDGET }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_atoms == 0 || self.max_worlds == 0 || self.trials == 0 || self.budget == 0 {
            return Err(Error::Input("suite limits must be positive".into()));
        }
        if self.max_atoms > 4 || self.max_worlds > 4 {
            return Err(Error::Input("exhaustive suites are limited to 4 atoms and 4 worlds".into()));
        }
        Ok(())
    }
}

/// A failing case. Arguments of `command` that name a key of `files` are
/// paths to be filled in by whoever writes the files out.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub description: String,
    pub command: Vec<String>,
    pub files: BTreeMap<String, serde_json::Value>,
}

impl Witness {
    fn new(description: impl Into<String>, command: &[&str]) -> Self {
        Witness {
            description: description.into(),
            command: command.iter().map(|s| s.to_string()).collect(),
            files: BTreeMap::new(),
        }
    }

    fn file(mut self, name: &str, value: serde_json::Value) -> Self {
        self.files.insert(name.to_string(), value);
        self
    }

    fn arg(mut self, a: impl Into<String>) -> Self {
        self.command.push(a.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: u64,
    pub failures: Vec<Witness>,
    /// Counters describing what the corpus covered.
    pub notes: BTreeMap<String, u64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), checked: 0, failures: Vec::new(), notes: BTreeMap::new() }
    }

    fn note(&mut self, key: &str, n: u64) {
        *self.notes.entry(key.to_string()).or_default() += n;
    }

    fn absorb(&mut self, outcomes: Vec<Result<Outcome>>) -> Result<()> {
        for o in outcomes {
            let o = o?;
            self.checked += o.checked;
            self.failures.extend(o.failures);
            for (k, v) in o.notes {
                self.note(&k, v);
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct Outcome {
    checked: u64,
    failures: Vec<Witness>,
    notes: BTreeMap<String, u64>,
}

impl Outcome {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    fn note(&mut self, key: &str) {
        *self.notes.entry(key.to_string()).or_default() += 1;
    }
}

pub const SUITES: [&str; 8] = ["duality", "lemmas", "atoms", "at", "preservation", "hybridize", "kernel", "random"];

/// Equations checked by the preservation suite.
pub const EQUATION_CORPUS: [(&str, &str); 20] = [
    ("<>i", "top"),
    ("i -> <>i", "top"),
    ("<><>p -> <>p", "top"),
    ("p -> <>p", "top"),
    ("<>(i & p) -> [](i -> p)", "top"),
    ("i & <>i", "i"),
    ("<>i", "<>j"),
    ("i", "j"),
    ("~i", "bot"),
    ("i -> []~i", "top"),
    ("<>p -> []p", "top"),
    ("<>(p | q)", "<>p | <>q"),
    ("[]p -> p", "top"),
    ("<>i -> i", "top"),
    ("i & <>j -> <>(j & p) | <>(j & ~p)", "top"),
    ("<>i -> <><>i", "top"),
    ("[][]p -> []p", "top"),
    ("p & <>i -> <>(i & <>p)", "top"),
    ("i | j", "top"),
    ("<>top", "top"),
];

/// Formulas the hybridization suite tries to refute.
pub const FORMULA_CORPUS: [&str; 15] = [
    "p",
    "~i",
    "i -> []i",
    "j & ~i",
    "<>p -> p",
    "i | j",
    "<>(i & p) -> [](i -> p)",
    "~(i & j)",
    "<>i",
    "i -> <>i",
    "<>p -> []p",
    "[]p -> p",
    "p -> <>p",
    "<>j -> j",
    "i & p -> []p",
];

pub fn run(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    match name {
        "duality" => duality(cfg),
        "lemmas" => lemmas(cfg),
        "atoms" => atoms(cfg),
        "at" => at_operator(cfg),
        "preservation" => preservation(cfg),
        "hybridize" => hybridize(cfg),
        "kernel" => kernel(cfg),
        "random" => random(cfg),
        other => Err(Error::Input(format!("unknown suite `{other}`; expected one of {}", SUITES.join(", ")))),
    }
}

/// Maps `f` over `items` on all available cores, keeping input order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = items.len().div_ceil(workers).max(1);
    let f = &f;
    std::thread::scope(|s| {
        let handles: Vec<_> =
            items.chunks(chunk).map(|c| s.spawn(move || c.iter().map(f).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("suite worker panicked")).collect()
    })
}

fn seed_args(w: Witness, seeds: &[Element]) -> Witness {
    seeds.iter().fold(w, |w, s| w.arg("--seed").arg(format!("a{}", s.first().expect("seed atom"))))
}

fn frames_upto(n: usize) -> Vec<TwoSortedFrame> {
    (1..=n).flat_map(generate::all_frames).collect()
}

fn duality(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("duality");
    let algebras: Vec<HybridStructure> = generate::hybrid_algebras_upto(cfg.max_atoms).collect();
    report.absorb(par_map(&algebras, |h| {
        let mut o = Outcome::default();
        let r = algebra_report(h)?;
        let back = crate::duality::underlying_algebra(&crate::duality::ultrafilter_frame(h)?)?.algebra;
        let iso_ok = r.item(3).and_then(|i| i.witness.as_ref()).is_some_and(|w| check_algebra_isomorphism(&back, h, w));
        o.check(r.all_hold() && iso_ok, || {
            Witness::new("algebra round trip or duality item fails", &["roundtrip", "--algebra", "algebra.json"])
                .file("algebra.json", algebra_to_value(h))
        });
        Ok(o)
    }))?;
    let frames = frames_upto(cfg.max_worlds);
    report.absorb(par_map(&frames, |g| {
        let mut o = Outcome::default();
        let r = frame_report(g)?;
        let mut ok = r.all_hold();
        if let Some(w) = r.item(4).and_then(|i| i.witness.as_ref()) {
            let round = crate::duality::ultrafilter_frame(&crate::duality::underlying_algebra(g)?.algebra)?;
            ok &= check_frame_isomorphism(&round, g, w);
        }
        o.note(if g.is_descriptive() { "descriptive frames" } else { "non-descriptive frames" });
        o.check(ok, || {
            Witness::new("frame round trip or duality item fails", &["roundtrip", "--frame", "frame.json"])
                .file("frame.json", frame_to_value(g))
        });
        Ok(o)
    }))?;
    Ok(report)
}

fn lemmas(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemmas");
    let baos: Vec<_> = (1..=cfg.max_atoms).flat_map(generate::baos).collect();
    report.absorb(par_map(&baos, |bao| {
        let mut o = Outcome::default();
        for seeds in bao.top().subsets().skip(1) {
            let seeds: Vec<Element> = seeds.indices().map(Element::atom).collect();
            let r = lemma_suite(bao, &seeds)?;
            o.check(r.violations.is_empty(), || {
                let w = Witness::new(
                    format!("lemma violations: {:?}", r.violations.iter().map(|v| v.lemma).collect::<Vec<_>>()),
                    &["relativize", "--algebra", "algebra.json", "--lemmas"],
                )
                .file("algebra.json", algebra_to_value(&HybridStructure::degenerate(bao.clone())));
                seed_args(w, &seeds)
            });
        }
        Ok(o)
    }))?;
    Ok(report)
}

const NAMES: [&str; 2] = ["i", "j"];

fn names() -> Vec<String> {
    NAMES.iter().map(|s| s.to_string()).collect()
}

fn atoms(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("atoms");
    let plain: Vec<_> = (1..=cfg.max_atoms).flat_map(|k| generate::orthodox_bases(k, &NAMES)).collect();
    report.absorb(par_map(&plain, |base| {
        let mut o = Outcome::default();
        for n in NAMES {
            if !base.nom_schema_holds(n)? {
                o.note("bases failing Nom");
                return Ok(o);
            }
        }
        for seed in base.bao().atoms() {
            let r = Relativization::from_seeds(base, &[seed])?;
            let classes = r.classify_constants(&names());
            if let Ok(c) = &classes {
                for class in c.values() {
                    o.note(match class {
                        crate::relativization::ConstantClass::Bottom => "bottom constants",
                        crate::relativization::ConstantClass::Atom(_) => "atom constants",
                    });
                }
            }
            o.check(classes.is_ok(), || {
                let w = Witness::new("a constant relativizes to a non-atom", &["relativize", "--algebra", "algebra.json"])
                    .file("algebra.json", algebra_to_value(base));
                seed_args(w, &[seed])
            });
        }
        Ok(o)
    }))?;
    let with_at: Vec<_> = (1..=cfg.max_atoms).flat_map(|k| generate::at_bases(k, &NAMES)).collect();
    report.absorb(par_map(&with_at, |base| {
        let mut o = Outcome::default();
        for d in base.bao().atoms() {
            let mut seeds = vec![d];
            seeds.extend(anchored_seeds(base, d, &names())?);
            let r = Relativization::from_seeds(base, &seeds)?;
            let ok = r.classify_constants(&names()).is_ok() && r.at_homomorphism_violation(&names())?.is_none();
            o.note("@ relativizations");
            o.check(ok, || {
                let w = Witness::new(
                    "an @ constant is not an atom of A_D, or h does not preserve @",
                    &["relativize", "--algebra", "algebra.json", "--anchor"],
                )
                .file("algebra.json", algebra_to_value(base));
                seed_args(w, &[d])
            });
        }
        Ok(o)
    }))?;
    Ok(report)
}

/// Every table row for coordinate `x` satisfying the laws on its own,
/// found by enumerating all maps from elements to elements.
fn lawful_rows(h: &HybridStructure, x: Element) -> Vec<Vec<Element>> {
    let bao = h.bao();
    let n = bao.element_count();
    let mut rows = Vec::new();
    for code in 0..n.pow(n as u32) {
        let row: Vec<Element> = (0..n).map(|i| Element::from_bits(code / n.pow(i as u32) % n)).collect();
        if at_laws_hold(bao, &[x], |_, a| row[a.bits() as usize]) {
            rows.push(row);
        }
    }
    rows
}

fn at_operator(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("at");
    let algebras: Vec<_> = generate::hybrid_algebras_upto(cfg.max_atoms).collect();
    report.absorb(par_map(&algebras, |h| {
        let mut o = Outcome::default();
        let violations = h.check_at_axioms()?;
        o.check(violations.is_empty(), || {
            Witness::new("canonical @ breaks a law", &["valid", "--algebra", "algebra.json", "--at-laws"])
                .file("algebra.json", algebra_to_value(h))
        });
        if h.bao().atom_count() <= 2 {
            let coords: Vec<Element> = h.designated().indices().map(Element::atom).collect();
            let options: Vec<Vec<Vec<Element>>> = coords.iter().map(|&x| lawful_rows(h, x)).collect();
            let canonical = AtTable::canonical(h.bao(), coords.iter().copied());
            let mut pick = vec![0usize; coords.len()];
            if options.iter().all(|o| !o.is_empty()) {
                loop {
                    let mut t = AtTable::new();
                    for (k, &x) in coords.iter().enumerate() {
                        t.insert_row(x, options[k][pick[k]].clone());
                    }
                    if at_laws_hold(h.bao(), &coords, |x, a| t.get(x, a).expect("row")) {
                        o.note("lawful tables");
                        o.check(t == canonical, || {
                            let with = h.clone().with_at_table(t.clone()).expect("rows for every designated atom");
                            Witness::new("a lawful @ table is not canonical", &["valid", "--algebra", "algebra.json", "--at-laws"])
                                .file("algebra.json", algebra_to_value(&with))
                        });
                    }
                    let Some(k) = (0..coords.len()).rev().find(|&k| pick[k] + 1 < options[k].len()) else { break };
                    pick[k] += 1;
                    pick[k + 1..].iter_mut().for_each(|c| *c = 0);
                }
            }
        }
        Ok(o)
    }))?;
    Ok(report)
}

fn equation_corpus() -> Vec<Equation> {
    EQUATION_CORPUS
        .iter()
        .map(|(l, r)| Equation::new(parse(l, Language::H).expect("corpus parses"), parse(r, Language::H).expect("corpus parses")))
        .collect()
}

fn equation_witness(description: &str, h: &HybridStructure, eq: &Equation) -> Witness {
    Witness::new(description, &["valid", "--algebra", "algebra.json", "--lhs"])
        .arg(eq.lhs.to_string())
        .arg("--rhs")
        .arg(eq.rhs.to_string())
        .file("algebra.json", algebra_to_value(h))
}

fn preservation(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("preservation");
    let k = cfg.max_atoms.min(2);
    let eqs = equation_corpus();
    let algebras: Vec<HybridStructure> = generate::hybrid_algebras_upto(k).collect();
    let degenerate: Vec<HybridStructure> =
        (1..=k).flat_map(generate::baos).map(HybridStructure::degenerate).collect();
    let holds = |h: &HybridStructure, e: &Equation| equation_true_with_budget(h, e, cfg.budget).map(|v| v.holds);
    let table = |hs: &[HybridStructure], grounded: bool| -> Result<Vec<Vec<bool>>> {
        hs.iter()
            .map(|h| {
                let h = if grounded { h.grounded()? } else { h.clone() };
                eqs.iter().map(|e| holds(&h, e)).collect()
            })
            .collect()
    };
    let grounded_valid = table(&algebras, true)?;
    let plain_valid = table(&algebras, false)?;
    let degenerate_valid = table(&degenerate, true)?;

    let pairs: Vec<(usize, usize)> =
        (0..algebras.len()).flat_map(|a| (0..algebras.len()).map(move |b| (a, b))).collect();
    report.absorb(par_map(&pairs, |&(a, b)| {
        let mut o = Outcome::default();
        let (ha, hb) = (&algebras[a], &algebras[b]);
        let prod = product(ha, hb)?;
        for (e, eq) in eqs.iter().enumerate() {
            let both_plain = plain_valid[a][e] && plain_valid[b][e];
            if grounded_valid[a][e] && grounded_valid[b][e] {
                o.check(holds(&prod, eq)?, || equation_witness("grounding does not carry the equation to the product", &prod, eq));
            } else if both_plain && !holds(&prod, eq)? {
                o.note("products losing a valid equation");
            }
        }
        if ha.is_permeated()?.holds() && hb.is_permeated()?.holds() {
            o.check(prod.is_permeated()?.holds(), || {
                Witness::new("product of permeated algebras is not permeated", &["perm", "--algebra", "algebra.json"])
                    .file("algebra.json", algebra_to_value(&prod))
            });
        }
        Ok(o)
    }))?;

    let mixed: Vec<(usize, usize)> =
        (0..degenerate.len()).flat_map(|a| (0..algebras.len()).map(move |b| (a, b))).collect();
    report.absorb(par_map(&mixed, |&(a, b)| {
        let mut o = Outcome::default();
        let prod = product(&degenerate[a], &algebras[b])?;
        for (e, eq) in eqs.iter().enumerate() {
            if degenerate_valid[a][e] && plain_valid[b][e] {
                o.check(holds(&prod, eq)?, || equation_witness("degenerate product loses the equation", &prod, eq));
            }
        }
        Ok(o)
    }))?;
    Ok(report)
}

fn hybridize(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("hybridize");
    let k = cfg.max_atoms.min(2);
    let formulas: Vec<Formula> = FORMULA_CORPUS.iter().map(|f| parse(f, Language::H).expect("corpus parses")).collect();
    let bases: Vec<_> = (1..=k).flat_map(|k| generate::orthodox_bases(k, &NAMES)).collect();
    report.absorb(par_map(&bases, |base| {
        let mut o = Outcome::default();
        for n in NAMES {
            if !base.nom_schema_holds(n)? {
                return Ok(o);
            }
        }
        for phi in &formulas {
            let props: Vec<String> = phi.props().into_iter().collect();
            let values: Vec<Element> = base.bao().elements().collect();
            let total = values.len().pow(props.len() as u32);
            for code in 0..total {
                let mut nu = Assignment::new();
                for (k, p) in props.iter().enumerate() {
                    nu = nu.prop(p.clone(), values[code / values.len().pow(k as u32) % values.len()]);
                }
                if meaning(base, &nu, phi)? == base.top() {
                    continue;
                }
                let witness = || {
                    Witness::new("hybridization fails", &["hybridize", "--algebra", "algebra.json", "--formula"])
                        .arg(phi.to_string())
                        .arg("--assignment")
                        .arg("assignment.json")
                        .file("algebra.json", algebra_to_value(base))
                        .file("assignment.json", serde_json::to_value(&nu).expect("assignment serializes"))
                };
                match hybridize_counterexample(base, &nu, phi, &[]) {
                    Ok(out) => {
                        let refutes = !equation_true_with_budget(&out.structure, &Equation::valid(phi.clone()), cfg.budget)?.holds;
                        o.note(match out.case {
                            Case::One => "case 1",
                            Case::Two => "case 2",
                            Case::Three => "case 3",
                        });
                        o.check(out.structure.kind() == Kind::Hybrid && refutes && out.case == Case::of(&out.classes), witness);
                    }
                    Err(Error::NoConstantAvailable) => {
                        o.note("no constant available");
                        o.check(NAMES.iter().all(|n| base.constant(n) == Some(Element::BOTTOM)), witness);
                    }
                    Err(_) => o.check(false, witness),
                }
            }
        }
        Ok(o)
    }))?;
    Ok(report)
}

fn kernel(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("kernel");
    let algebras: Vec<HybridStructure> = generate::hybrid_algebras_upto(cfg.max_atoms).collect();
    let frames = frames_upto(cfg.max_worlds);
    let examples = corpus::examples();
    let witness = |d: &proof::Derivation, what: &str| {
        Witness::new(what, &["prove-check", "derivation.json", "--audit"])
            .file("derivation.json", serde_json::to_value(d).expect("derivation serializes"))
    };
    report.absorb(par_map(&examples, |e| {
        let mut o = Outcome::default();
        let d = &e.derivation;
        o.check(proof::verify(d).is_ok(), || witness(d, &format!("`{}` does not verify", e.name)));
        let audit = if d.logic.base == Language::HE {
            proof::soundness_audit_frames(d, &frames)?
        } else {
            proof::soundness_audit(d, &algebras)?
        };
        o.check(audit.sound(), || witness(d, &format!("`{}` has a countermodel", e.name)));
        Ok(o)
    }))?;
    let mut o = Outcome::default();
    for m in corpus::mutations() {
        o.check(proof::verify(&m.derivation) == Err(m.expected.clone()), || {
            witness(&m.derivation, &format!("mutation `{}` not rejected with {}", m.name, m.expected))
        });
    }
    report.absorb(vec![Ok(o)])?;
    Ok(report)
}

fn random(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("random");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut o = Outcome::default();
    for _ in 0..cfg.trials {
        let k = rng.gen_range(1..=5);
        let h = generate::random_hybrid(&mut rng, k);
        o.check(h.bao().adjoint_violation().is_none() && algebra_report(&h)?.all_hold(), || {
            Witness::new("random algebra fails adjunction or round trip", &["roundtrip", "--algebra", "algebra.json"])
                .file("algebra.json", algebra_to_value(&h))
        });

        let n = rng.gen_range(1..=4);
        let g = generate::random_frame(&mut rng, n);
        o.check(frame_report(&g)?.all_hold(), || {
            Witness::new("random frame round trip fails", &["roundtrip", "--frame", "frame.json"])
                .file("frame.json", frame_to_value(&g))
        });

        // Meaning commutes with the left projection of a product, read in
        // the grounded left factor.
        let (ka, kb) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let a = generate::random_hybrid(&mut rng, ka);
        let b = generate::random_hybrid(&mut rng, kb);
        let prod = product(&a, &b)?;
        let phi = generate::random_formula(&mut rng, Language::H, 4, &["p", "q"], &["i", "j"]);
        let range = prod.nominal_range();
        let mut nu = Assignment::new();
        for p in ["p", "q"] {
            nu = nu.prop(p, Element::from_bits(rng.gen_range(0..=prod.top().bits())));
        }
        for i in ["i", "j"] {
            nu = nu.nom(i, range[rng.gen_range(0..range.len())]);
        }
        let left = |e: Element| project(ka, e).0;
        let nu_left = Assignment {
            props: nu.props.iter().map(|(p, &v)| (p.clone(), left(v))).collect(),
            noms: nu.noms.iter().map(|(i, &v)| (i.clone(), left(v))).collect(),
        };
        let ok = left(meaning(&prod, &nu, &phi)?) == meaning(&a.grounded()?, &nu_left, &phi)?;
        o.check(ok, || {
            Witness::new("projection does not commute with meaning", &["eval", "--algebra", "algebra.json", "--formula"])
                .arg(phi.to_string())
                .arg("--assignment")
                .arg("assignment.json")
                .file("algebra.json", algebra_to_value(&prod))
                .file("assignment.json", serde_json::to_value(&nu).expect("assignment serializes"))
        });
    }
    report.absorb(vec![Ok(o)])?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_parse() {
        assert_eq!(equation_corpus().len(), 20);
        for f in FORMULA_CORPUS {
            parse(f, Language::H).unwrap();
        }
    }

    #[test]
    fn config_json() {
        let cfg: SuiteConfig = serde_json::from_str(r#"{"max_atoms":2,"rng_seed":9}"#).unwrap();
        assert_eq!(cfg.max_atoms, 2);
        assert_eq!(cfg.trials, 1000);
        assert!(SuiteConfig { trials: 0, ..SuiteConfig::default() }.validate().is_err());
        assert!(run("nope", &SuiteConfig::default()).is_err());
    }

    #[test]
    fn small_suites_pass() {
        let cfg = SuiteConfig { max_atoms: 2, max_worlds: 2, trials: 30, ..SuiteConfig::default() };
        for name in SUITES {
            let r = run(name, &cfg).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures.first());
            assert!(r.checked > 0, "{name}");
        }
    }

    #[test]
    fn random_suite_is_reproducible() {
        let cfg = SuiteConfig { trials: 20, rng_seed: 5, ..SuiteConfig::default() };
        assert_eq!(run("random", &cfg).unwrap(), run("random", &cfg).unwrap());
    }
}
