use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use hybrix::algebra::structure::product;
use hybrix::duality::{algebra_report, frame_report, ultrafilter_frame, underlying_algebra};
use hybrix::evaluation::{equation_true_with_budget, meaning, DEFAULT_BUDGET};
use hybrix::generate;
use hybrix::json::{algebra_from_str, algebra_to_value, frame_from_str, frame_to_value};
use hybrix::proof::{soundness_audit, soundness_audit_frames, verify, Derivation};
use hybrix::relativization::{
    anchored_seeds, hybridize_counterexample, lemma_suite, permeation_witnesses, Case, Relativization,
};
use hybrix::suite::{self, SuiteConfig, SuiteReport};
use hybrix::{parse, Assignment, Element, Equation, Error, Formula, HybridStructure, Kind, Language, TwoSortedFrame};

#[derive(Parser)]
#[command(name = "hybrix", version, about = "Finite hybrid algebras, general frames and a hybrid Hilbert proof checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its JSON form.
    Parse {
        text: String,
        #[arg(long, default_value = "H")]
        lang: Language,
    },
    /// Evaluate a formula in an algebra under an assignment.
    Eval {
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        formula: FormulaArg,
        #[arg(long)]
        assignment: Option<PathBuf>,
    },
    /// Decide validity of a formula or equation on an algebra or frame.
    Valid(ValidArgs),
    /// Check whether a hybrid algebra is permeated.
    Perm {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Product of two algebras.
    Product { left: PathBuf, right: PathBuf },
    /// Move between a hybrid algebra and its two-sorted frame.
    Dualize {
        #[arg(long)]
        to: Target,
        #[arg(long, conflicts_with = "frame", required_unless_present = "frame")]
        algebra: Option<PathBuf>,
        #[arg(long)]
        frame: Option<PathBuf>,
    },
    /// Run the duality round trip and report each item.
    Roundtrip {
        #[arg(long, conflicts_with = "frame", required_unless_present = "frame")]
        algebra: Option<PathBuf>,
        #[arg(long)]
        frame: Option<PathBuf>,
    },
    /// Relativize an orthodox structure to the closure of seed atoms.
    Relativize {
        #[arg(long)]
        algebra: PathBuf,
        /// Seed atom such as `a0`; repeatable.
        #[arg(long = "seed", required = true)]
        seeds: Vec<String>,
        /// Also seed the anchored atom of every named constant.
        #[arg(long)]
        anchor: bool,
        /// Check the relativization lemmas on the underlying BAO instead.
        #[arg(long)]
        lemmas: bool,
    },
    /// Turn a refuting orthodox assignment into a hybrid counterexample.
    Hybridize {
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        formula: FormulaArg,
        #[arg(long)]
        assignment: Option<PathBuf>,
        /// JSON list of formulas to check for preservation.
        #[arg(long)]
        sigma: Option<PathBuf>,
    },
    /// Verify a derivation file.
    ProveCheck {
        file: PathBuf,
        /// Also audit the conclusion on every small structure.
        #[arg(long)]
        audit: bool,
        #[arg(long, default_value_t = 3)]
        max_atoms: usize,
    },
    /// Run a property suite (or `all`).
    Suite {
        name: String,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write replay files for every failure here.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Generate structures exhaustively or at random.
    Gen {
        kind: GenKind,
        /// Atoms for algebras, worlds for frames.
        #[arg(long, default_value_t = 1)]
        size: usize,
        /// Only frames with every subset admissible.
        #[arg(long)]
        powerset: bool,
        /// Draw this many random structures instead of enumerating.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct FormulaArg {
    /// Formula text, or its JSON form.
    #[arg(long)]
    formula: String,
    #[arg(long)]
    lang: Option<Language>,
}

#[derive(Args)]
struct ValidArgs {
    #[arg(long, conflicts_with = "frame", required_unless_present = "frame")]
    algebra: Option<PathBuf>,
    #[arg(long)]
    frame: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["lhs", "at_laws"])]
    formula: Option<String>,
    #[arg(long, requires = "rhs")]
    lhs: Option<String>,
    #[arg(long, requires = "lhs")]
    rhs: Option<String>,
    /// Check the six laws for the algebra's @ operator.
    #[arg(long, conflicts_with = "frame")]
    at_laws: bool,
    #[arg(long)]
    lang: Option<Language>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Frame,
    Algebra,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Bao,
    Hybrid,
    Frame,
}

/// What a command prints: JSON on stdout, a line on stderr, and whether
/// the checked property held.
struct Report {
    json: Value,
    summary: String,
    holds: bool,
}

impl Report {
    fn new(value: impl Serialize, holds: bool, summary: impl Into<String>) -> Self {
        Report { json: serde_json::to_value(value).expect("reports serialize"), summary: summary.into(), holds }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<HybridStructure, Error> {
    algebra_from_str(&read(path)?)
}

fn load_frame(path: &Path) -> Result<TwoSortedFrame, Error> {
    frame_from_str(&read(path)?)
}

fn load_assignment(path: Option<&Path>) -> Result<Assignment, Error> {
    match path {
        None => Ok(Assignment::new()),
        Some(p) => serde_json::from_str(&read(p)?).map_err(|e| Error::Input(format!("{}: {e}", p.display()))),
    }
}

/// Text is parsed in `lang`; JSON trees are checked against it.
fn formula(text: &str, lang: Language) -> Result<Formula, Error> {
    if text.trim_start().starts_with('{') {
        let f: Formula = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        f.check_language(lang)?;
        Ok(f)
    } else {
        parse(text, lang)
    }
}

fn atom_arg(text: &str) -> Result<Element, Error> {
    text.strip_prefix('a')
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|&n| n < 64)
        .map(Element::atom)
        .ok_or_else(|| Error::Input(format!("`{text}` is not an atom name like a0")))
}

fn verdict_word(holds: bool) -> &'static str {
    if holds { "holds" } else { "fails" }
}

fn run(cli: Cli) -> Result<Report, Error> {
    match cli.command {
        Command::Parse { text, lang } => {
            let f = parse(&text, lang)?;
            let printed = f.to_string();
            let minimal = f.language()?;
            Ok(Report::new(
                json!({ "text": printed, "language": minimal, "formula": f }),
                true,
                format!("parsed: {printed}"),
            ))
        }
        Command::Eval { algebra, formula: fa, assignment } => {
            let h = load_algebra(&algebra)?;
            let phi = formula(&fa.formula, fa.lang.unwrap_or(Language::HAt))?;
            let nu = load_assignment(assignment.as_deref())?;
            let value = meaning(&h, &nu, &phi)?;
            Ok(Report::new(json!({ "value": value, "top": value == h.top() }), true, format!("value {value:?}")))
        }
        Command::Valid(args) => valid(args),
        Command::Perm { algebra } => {
            let h = load_algebra(&algebra)?;
            let verdict = h.is_permeated()?;
            let report = permeation_witnesses(&h)?;
            Ok(Report::new(
                json!({ "permeated": verdict.holds(), "verdict": verdict, "witnesses": report.witnesses }),
                verdict.holds(),
                format!("permeation {}", verdict_word(verdict.holds())),
            ))
        }
        Command::Product { left, right } => {
            let p = product(&load_algebra(&left)?, &load_algebra(&right)?)?;
            let atoms = p.bao().atom_count();
            Ok(Report::new(algebra_to_value(&p), true, format!("product with {atoms} atoms")))
        }
        Command::Dualize { to, algebra, frame } => match (to, algebra, frame) {
            (Target::Frame, Some(a), None) => {
                let g = ultrafilter_frame(&load_algebra(&a)?)?;
                Ok(Report::new(frame_to_value(&g), true, format!("ultrafilter frame with {} worlds", g.world_count())))
            }
            (Target::Algebra, None, Some(f)) => {
                let fa = underlying_algebra(&load_frame(&f)?)?;
                let atoms = fa.algebra.bao().atom_count();
                Ok(Report::new(
                    json!({ "algebra": algebra_to_value(&fa.algebra), "atom_sets": fa.atom_sets }),
                    true,
                    format!("underlying algebra with {atoms} atoms"),
                ))
            }
            _ => Err(Error::Input("--to frame takes --algebra, --to algebra takes --frame".into())),
        },
        Command::Roundtrip { algebra, frame } => {
            let r = match (algebra, frame) {
                (Some(a), _) => algebra_report(&load_algebra(&a)?)?,
                (None, Some(f)) => frame_report(&load_frame(&f)?)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            let holds = r.all_hold();
            Ok(Report::new(&r, holds, format!("round trip {}", verdict_word(holds))))
        }
        Command::Relativize { algebra, seeds, anchor, lemmas } => {
            let h = load_algebra(&algebra)?;
            let mut seeds = seeds.iter().map(|s| atom_arg(s)).collect::<Result<Vec<_>, _>>()?;
            if lemmas {
                let r = lemma_suite(h.bao(), &seeds)?;
                let holds = r.violations.is_empty();
                return Ok(Report::new(&r, holds, format!("{} lemma violations", r.violations.len())));
            }
            let names: Vec<String> = h.constants().keys().cloned().collect();
            if anchor {
                seeds.extend(anchored_seeds(&h, seeds[0], &names)?);
            }
            let r = Relativization::from_seeds(&h, &seeds)?;
            let (classes, class_error) = match r.classify_constants(&names) {
                Ok(c) => (Some(c), None),
                Err(e) => (None, Some(e)),
            };
            let at_violation = if h.at_table().is_some() { r.at_homomorphism_violation(&names)? } else { None };
            let holds = !matches!(class_error, Some(Error::InternalInvariantBreach(_))) && at_violation.is_none();
            Ok(Report::new(
                json!({
                    "seeds": seeds,
                    "d": r.d(),
                    "steps": r.steps(),
                    "local": algebra_to_value(r.local()),
                    "classes": classes,
                    "class_error": class_error.map(|e| e.to_string()),
                    "at_homomorphism_violation": at_violation,
                }),
                holds,
                format!("D = {:?} after {} steps", r.d(), r.steps()),
            ))
        }
        Command::Hybridize { algebra, formula: fa, assignment, sigma } => {
            let h = load_algebra(&algebra)?;
            let lang = fa.lang.unwrap_or(if h.at_table().is_some() { Language::HAt } else { Language::H });
            let phi = formula(&fa.formula, lang)?;
            let nu = load_assignment(assignment.as_deref())?;
            let sigma: Vec<Formula> = match sigma {
                None => Vec::new(),
                Some(p) => {
                    let raw: Vec<Value> =
                        serde_json::from_str(&read(&p)?).map_err(|e| Error::Input(format!("{}: {e}", p.display())))?;
                    raw.iter()
                        .map(|v| match v {
                            Value::String(s) => formula(s, lang),
                            other => formula(&other.to_string(), lang),
                        })
                        .collect::<Result<_, _>>()?
                }
            };
            match hybridize_counterexample(&h, &nu, &phi, &sigma) {
                Ok(out) => {
                    let refutes = !equation_true_with_budget(&out.structure, &Equation::valid(phi.clone()), DEFAULT_BUDGET)?.holds;
                    let holds = out.structure.kind() == Kind::Hybrid && refutes && out.case == Case::of(&out.classes);
                    let mut value = serde_json::to_value(&out).expect("reports serialize");
                    value["structure"] = algebra_to_value(&out.structure);
                    value["refutes"] = json!(refutes);
                    Ok(Report { json: value, summary: format!("case {:?}, refutes: {refutes}", out.case), holds })
                }
                Err(Error::NoConstantAvailable) => Ok(Report::new(
                    json!({ "error": Error::NoConstantAvailable.to_string() }),
                    false,
                    "no constant available",
                )),
                Err(e) => Err(e),
            }
        }
        Command::ProveCheck { file, audit, max_atoms } => {
            let d: Derivation = serde_json::from_str(&read(&file)?)
                .map_err(|e| Error::Input(format!("{}: {e}", file.display())))?;
            if let Err(e) = verify(&d) {
                return Ok(Report::new(json!({ "ok": false, "error": e }), false, e.to_string()));
            }
            let conclusion = d.conclusion().map(|f| f.to_string());
            if !audit {
                return Ok(Report::new(json!({ "ok": true, "conclusion": conclusion }), true, "derivation verifies"));
            }
            let report = if d.logic.base == Language::HE {
                let frames: Vec<_> = (1..=max_atoms.min(3)).flat_map(generate::all_frames).collect();
                soundness_audit_frames(&d, &frames)?
            } else {
                let algebras: Vec<_> = generate::hybrid_algebras_upto(max_atoms.min(4)).collect();
                soundness_audit(&d, &algebras)?
            };
            let sound = report.sound();
            Ok(Report::new(
                json!({ "ok": sound, "conclusion": conclusion, "audit": report }),
                sound,
                format!("derivation verifies; audit {}", if sound { "clean" } else { "found a countermodel" }),
            ))
        }
        Command::Suite { name, config, witness_dir } => {
            let cfg: SuiteConfig = match config {
                None => SuiteConfig::default(),
                Some(p) => serde_json::from_str(&read(&p)?).map_err(|e| Error::Input(format!("{}: {e}", p.display())))?,
            };
            let names: Vec<&str> = if name == "all" { suite::SUITES.to_vec() } else { vec![name.as_str()] };
            let mut reports = Vec::new();
            for n in names {
                let mut r = suite::run(n, &cfg)?;
                if let Some(dir) = &witness_dir {
                    write_witnesses(dir, &mut r)?;
                }
                reports.push(r);
            }
            let holds = reports.iter().all(SuiteReport::passed);
            let summary = reports
                .iter()
                .map(|r| format!("{}: {} checks, {} failures", r.suite, r.checked, r.failures.len()))
                .collect::<Vec<_>>()
                .join("; ");
            let json = if reports.len() == 1 {
                serde_json::to_value(&reports[0])
            } else {
                serde_json::to_value(&reports)
            };
            Ok(Report { json: json.expect("reports serialize"), summary, holds })
        }
        Command::Gen { kind, size, powerset, random, seed } => gen(kind, size, powerset, random, seed),
    }
}

fn valid(args: ValidArgs) -> Result<Report, Error> {
    let lang_default = if args.frame.is_some() { Language::HE } else { Language::HAt };
    let lang = args.lang.unwrap_or(lang_default);
    if args.at_laws {
        let h = load_algebra(args.algebra.as_deref().expect("clap requires --algebra with --at-laws"))?;
        let violations = h.check_at_axioms()?;
        let holds = violations.is_empty();
        return Ok(Report::new(
            json!({ "valid": holds, "violations": violations }),
            holds,
            format!("@ laws {}", verdict_word(holds)),
        ));
    }
    let eq = match (&args.formula, &args.lhs, &args.rhs) {
        (Some(f), None, None) => Equation::valid(formula(f, lang)?),
        (None, Some(l), Some(r)) => Equation::new(formula(l, lang)?, formula(r, lang)?),
        _ => return Err(Error::Input("give --formula, or --lhs and --rhs".into())),
    };
    if let Some(a) = &args.algebra {
        let h = load_algebra(a)?;
        let v = equation_true_with_budget(&h, &eq, args.budget)?;
        let holds = v.holds;
        let summary = format!("{eq} {} after {} assignments", verdict_word(holds), v.checked);
        return Ok(Report::new(
            json!({ "valid": holds, "falsifier": v.falsifier, "checked": v.checked }),
            holds,
            summary,
        ));
    }
    let g = load_frame(args.frame.as_deref().expect("clap requires a source"))?;
    let phi = eq.lhs.clone().iff(eq.rhs.clone());
    let falsifier = g.falsifier(&phi)?;
    let holds = falsifier.is_none();
    Ok(Report::new(json!({ "valid": holds, "falsifier": falsifier }), holds, format!("{eq} {} on the frame", verdict_word(holds))))
}

fn gen(kind: GenKind, size: usize, powerset: bool, random: Option<usize>, seed: u64) -> Result<Report, Error> {
    let limit = match kind {
        GenKind::Frame => 4,
        _ => 6,
    };
    if size == 0 || size > limit {
        return Err(Error::Input(format!("size must be between 1 and {limit}")));
    }
    if random.is_none() && size > 4 {
        return Err(Error::Input("exhaustive generation is limited to 4".into()));
    }
    let items: Vec<Value> = match random {
        Some(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n)
                .map(|_| match kind {
                    GenKind::Bao => algebra_to_value(&HybridStructure::degenerate(generate::random_bao(&mut rng, size))),
                    GenKind::Hybrid => algebra_to_value(&generate::random_hybrid(&mut rng, size)),
                    GenKind::Frame => frame_to_value(&generate::random_frame(&mut rng, size)),
                })
                .collect()
        }
        None => match kind {
            GenKind::Bao => generate::baos(size).map(|b| algebra_to_value(&HybridStructure::degenerate(b))).collect(),
            GenKind::Hybrid => generate::hybrid_algebras(size).map(|h| algebra_to_value(&h)).collect(),
            GenKind::Frame if powerset => generate::full_frames(size).map(|g| frame_to_value(&g)).collect(),
            GenKind::Frame => generate::all_frames(size).iter().map(frame_to_value).collect(),
        },
    };
    let n = items.len();
    Ok(Report::new(items, true, format!("{n} structures")))
}

/// Writes each failure's files plus a `witness.json` describing the replay
/// command, with file keys in the command replaced by their paths.
fn write_witnesses(dir: &Path, report: &mut SuiteReport) -> Result<(), Error> {
    let io = |e: std::io::Error| Error::Input(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    for (n, w) in report.failures.iter_mut().enumerate() {
        let case = dir.join(format!("{}-{n}", report.suite));
        fs::create_dir_all(&case).map_err(io)?;
        let mut paths = BTreeMap::new();
        for (key, value) in &w.files {
            let path = case.join(key);
            let text = serde_json::to_string_pretty(value).expect("witness files serialize");
            fs::write(&path, text + "\n").map_err(io)?;
            paths.insert(key.clone(), path.display().to_string());
        }
        let command: Vec<String> = std::iter::once("hybrix".to_string())
            .chain(w.command.iter().map(|a| paths.get(a).cloned().unwrap_or_else(|| a.clone())))
            .collect();
        let text = serde_json::to_string_pretty(&json!({ "description": w.description, "command": command }))
            .expect("witness serializes");
        fs::write(case.join("witness.json"), text + "\n").map_err(io)?;
        w.command = command;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON values print"));
            eprintln!("{}", report.summary);
            if report.holds { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
