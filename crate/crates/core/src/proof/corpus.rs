//! Hand-written derivations covering every schema and rule, plus
//! mutations that break a side condition of a non-orthodox rule.

use super::{Builder, Derivation, Logic, Rule, Schema, StepError, Violation};
use crate::syntax::{parse, Formula, Language, SubstitutionMap};

#[derive(Clone, Debug)]
pub struct Example {
    pub name: &'static str,
    pub derivation: Derivation,
}

#[derive(Clone, Debug)]
pub struct Mutation {
    pub name: &'static str,
    pub derivation: Derivation,
    pub expected: StepError,
}

fn logic(base: Language, plus: bool, sigma: &[&str]) -> Logic {
    Logic::new(base, plus).with_sigma(sigma.iter().map(|s| parse(s, base).expect("sigma parses")).collect())
}

fn sub() -> SubstitutionMap {
    SubstitutionMap::new()
}

fn f(text: &str, lang: Language) -> Formula {
    parse(text, lang).expect("corpus formula parses")
}

/// Builds an example; a parse error is a bug in the corpus itself.
fn ex(name: &'static str, logic: Logic, build: impl FnOnce(&mut Builder) -> crate::Result<usize>) -> Example {
    let mut b = Builder::new(logic);
    build(&mut b).expect("corpus formulas parse");
    Example { name, derivation: b.finish() }
}

fn single(name: &'static str, base: Language, schema: Schema, text: &'static str) -> Example {
    ex(name, logic(base, false, &[]), |b| b.axiom(schema, text))
}

pub fn examples() -> Vec<Example> {
    use Language::{HAt, HE, H};
    let mut out = vec![
        single("taut excluded middle", H, Schema::Taut, "p | ~p"),
        single("taut modal identity", H, Schema::Taut, "<>p -> <>p"),
        single("taut nominal", H, Schema::Taut, "i | ~i"),
        single("dual", H, Schema::Dual, "<>p <-> ~[]~p"),
        single("k", H, Schema::K, "[](p -> q) -> ([]p -> []q)"),
        single("nom 0 0", H, Schema::Nom, "i & p -> (i -> p)"),
        single("nom 1 2", H, Schema::Nom, "<>(i & p) -> [][](i -> p)"),
        single("nom 2 0", H, Schema::Nom, "<><>(j & <>q) -> (j -> <>q)"),
        single("dual at", HAt, Schema::Dual, "<>@i p <-> ~[]~@i p"),
        single("k at language", HAt, Schema::K, "[](p -> q) -> ([]p -> []q)"),
        single("k@", HAt, Schema::KAt, "@j(p -> q) -> (@j p -> @j q)"),
        single("selfdual", HAt, Schema::Selfdual, "~@j p <-> @j ~p"),
        single("intro", HAt, Schema::Intro, "j & p -> @j p"),
        single("ref", HAt, Schema::Ref, "@j j"),
        single("agree", HAt, Schema::Agree, "@i @j p -> @j p"),
        single("back", HAt, Schema::Back, "<>@j p -> @j p"),
        single("taut at", HAt, Schema::Taut, "@i p | ~@i p"),
        single("k_a", HE, Schema::KA, "A(p -> q) -> (A p -> A q)"),
        single("dual_a", HE, Schema::DualA, "E p <-> ~A ~p"),
        single("incl_j", HE, Schema::InclJ, "E j"),
        single("nom_e", HE, Schema::NomE, "E(i & p) -> A(i -> p)"),
        single("t_e", HE, Schema::TE, "p -> E p"),
        single("4_e", HE, Schema::FourE, "E E p -> E p"),
        single("b_e", HE, Schema::BE, "p -> A E p"),
        single("incl_diamond", HE, Schema::InclDiamond, "<>p -> E p"),
        single("dual e language", HE, Schema::Dual, "<>p <-> ~[]~p"),
    ];

    out.push(ex("box of identity", logic(H, false, &[]), |b| {
        let a = b.axiom(Schema::Taut, "p -> p")?;
        let n = b.rule(Rule::Nec, &[a], "[](p -> p)")?;
        let k = b.axiom(Schema::K, "[](p -> p) -> ([]p -> []p)")?;
        b.rule(Rule::Mp, &[k, n], "[]p -> []p")
    }));
    out.push(ex("substitution into a tautology", logic(H, false, &[]), |b| {
        let a = b.axiom(Schema::Taut, "p -> (q -> p)")?;
        let s = sub().prop("p", f("<>r", H)).prop("q", f("i", H));
        b.subst(a, s, "<>r -> (i -> <>r)")
    }));
    out.push(ex("nominal renaming", logic(H, false, &[]), |b| {
        let a = b.axiom(Schema::Nom, "<>(i & p) -> [](i -> p)")?;
        b.subst(a, sub().nom("i", "j"), "<>(j & p) -> [](j -> p)")
    }));
    out.push(ex("namelite", logic(H, false, &["~j"]), |b| {
        let s = b.sigma(0, sub(), "~j")?;
        b.rule(Rule::NameLite, &[s], "bot")
    }));
    out.push(ex("double necessitation", logic(H, false, &[]), |b| {
        let a = b.axiom(Schema::Taut, "p | ~p")?;
        let n = b.rule(Rule::Nec, &[a], "[](p | ~p)")?;
        b.rule(Rule::Nec, &[n], "[][](p | ~p)")
    }));
    out.push(ex("sigma instance", logic(H, false, &["<>p -> p"]), |b| {
        let s = b.sigma(0, sub().prop("p", f("q & r", H)), "<>(q & r) -> q & r")?;
        b.rule(Rule::Nec, &[s], "[](<>(q & r) -> q & r)")
    }));
    out.push(ex("box distributes over conjunction", logic(H, false, &[]), |b| {
        let t = b.axiom(Schema::Taut, "p & q -> p")?;
        let n = b.rule(Rule::Nec, &[t], "[](p & q -> p)")?;
        let k = b.axiom(Schema::K, "[](p & q -> p) -> ([](p & q) -> []p)")?;
        b.rule(Rule::Mp, &[k, n], "[](p & q) -> []p")
    }));
    out.push(ex("diamond is monotone", logic(H, false, &[]), |b| {
        let t = b.axiom(Schema::Taut, "~p -> ~(p & q)")?;
        let n = b.rule(Rule::Nec, &[t], "[](~p -> ~(p & q))")?;
        let k = b.axiom(Schema::K, "[](~p -> ~(p & q)) -> ([]~p -> []~(p & q))")?;
        let m = b.rule(Rule::Mp, &[k, n], "[]~p -> []~(p & q)")?;
        let d1 = b.axiom(Schema::Dual, "<>(p & q) <-> ~[]~(p & q)")?;
        let d2 = b.axiom(Schema::Dual, "<>p <-> ~[]~p")?;
        let glue = b.axiom(
            Schema::Taut,
            "([]~p -> []~(p & q)) -> ((<>(p & q) <-> ~[]~(p & q)) -> ((<>p <-> ~[]~p) -> (<>(p & q) -> <>p)))",
        )?;
        let g1 = b.rule(Rule::Mp, &[glue, m], "(<>(p & q) <-> ~[]~(p & q)) -> ((<>p <-> ~[]~p) -> (<>(p & q) -> <>p))")?;
        let g2 = b.rule(Rule::Mp, &[g1, d1], "(<>p <-> ~[]~p) -> (<>(p & q) -> <>p)")?;
        b.rule(Rule::Mp, &[g2, d2], "<>(p & q) -> <>p")
    }));
    out.push(ex("nom instance with necessitation", logic(H, false, &[]), |b| {
        let a = b.axiom(Schema::Nom, "<>(i & p) -> (i -> p)")?;
        b.rule(Rule::Nec, &[a], "[](<>(i & p) -> (i -> p))")
    }));
    out.push(ex("name", logic(H, true, &["j -> []bot"]), |b| {
        let s = b.sigma(0, sub(), "j -> []bot")?;
        b.rule(Rule::Name, &[s], "[]bot")
    }));
    out.push(ex("name on a tautology", logic(H, true, &[]), |b| {
        let t = b.axiom(Schema::Taut, "i -> (p | ~p)")?;
        b.rule(Rule::Name, &[t], "p | ~p")
    }));
    out.push(ex("paste n = 0", logic(H, true, &[]), |b| {
        let t = b.axiom(Schema::Taut, "i & <>(j & p) -> i")?;
        b.rule(Rule::Paste, &[t], "i & <>p -> i")
    }));
    out.push(ex("paste n = 1", logic(H, true, &["<>(i & <>(j & p)) -> q"]), |b| {
        let s = b.sigma(0, sub(), "<>(i & <>(j & p)) -> q")?;
        b.rule(Rule::Paste, &[s], "<>(i & <>p) -> q")
    }));
    out.push(ex("modus ponens under @", logic(HAt, false, &[]), |b| {
        let t = b.axiom(Schema::Taut, "p -> p")?;
        let n = b.rule(Rule::NecAt, &[t], "@i (p -> p)")?;
        let k = b.axiom(Schema::KAt, "@i(p -> p) -> (@i p -> @i p)")?;
        b.rule(Rule::Mp, &[k, n], "@i p -> @i p")
    }));
    out.push(ex("ref renamed", logic(HAt, false, &[]), |b| {
        let r = b.axiom(Schema::Ref, "@j j")?;
        b.subst(r, sub().nom("j", "k"), "@k k")
    }));
    out.push(ex("nec of ref", logic(HAt, false, &[]), |b| {
        let r = b.axiom(Schema::Ref, "@j j")?;
        b.rule(Rule::Nec, &[r], "[]@j j")
    }));
    out.push(ex("intro and back", logic(HAt, false, &[]), |b| {
        let i = b.axiom(Schema::Intro, "j & <>p -> @j <>p")?;
        let k = b.axiom(Schema::Back, "<>@j <>p -> @j <>p")?;
        let glue = b.axiom(
            Schema::Taut,
            "(j & <>p -> @j <>p) -> ((<>@j <>p -> @j <>p) -> ((j & <>p) | <>@j <>p -> @j <>p))",
        )?;
        let g = b.rule(Rule::Mp, &[glue, i], "(<>@j <>p -> @j <>p) -> ((j & <>p) | <>@j <>p -> @j <>p)")?;
        b.rule(Rule::Mp, &[g, k], "(j & <>p) | <>@j <>p -> @j <>p")
    }));
    out.push(ex("name_@", logic(HAt, true, &[]), |b| {
        let t = b.axiom(Schema::Taut, "p | ~p")?;
        let n = b.rule(Rule::NecAt, &[t], "@j (p | ~p)")?;
        b.rule(Rule::NameAt, &[n], "p | ~p")
    }));
    out.push(ex("bg_@ from a tautology", logic(HAt, true, &[]), |b| {
        let t = b.axiom(Schema::Taut, "@i <>j & @j p -> top")?;
        b.rule(Rule::BgAt, &[t], "@i <>p -> top")
    }));
    out.push(ex("bg_@ from sigma", logic(HAt, true, &["@i <>j & @j p -> q"]), |b| {
        let s = b.sigma(0, sub(), "@i <>j & @j p -> q")?;
        b.rule(Rule::BgAt, &[s], "@i <>p -> q")
    }));
    out.push(ex("nec_a", logic(HE, false, &[]), |b| {
        let t = b.axiom(Schema::Taut, "p | ~p")?;
        b.rule(Rule::NecA, &[t], "A (p | ~p)")
    }));
    out.push(ex("incl renamed", logic(HE, false, &[]), |b| {
        let a = b.axiom(Schema::InclJ, "E j")?;
        b.subst(a, sub().nom("j", "k"), "E k")
    }));
    out.push(ex("iterated existence", logic(HE, false, &[]), |b| {
        let a = b.axiom(Schema::InclJ, "E j")?;
        let t = b.axiom(Schema::TE, "E j -> E E j")?;
        b.rule(Rule::Mp, &[t, a], "E E j")
    }));
    out.push(ex("nec of incl", logic(HE, false, &[]), |b| {
        let a = b.axiom(Schema::InclJ, "E j")?;
        b.rule(Rule::Nec, &[a], "[]E j")
    }));
    out.push(ex("name_e", logic(HE, true, &[]), |b| {
        let t = b.axiom(Schema::Taut, "i -> (p | ~p)")?;
        b.rule(Rule::NameE, &[t], "p | ~p")
    }));
    out.push(ex("name_e from sigma", logic(HE, true, &["j -> A p"]), |b| {
        let s = b.sigma(0, sub(), "j -> A p")?;
        b.rule(Rule::NameE, &[s], "A p")
    }));
    out.push(ex("bg_e diamond", logic(HE, true, &["E(i & <>j) & E(j & p) -> q"]), |b| {
        let s = b.sigma(0, sub(), "E(i & <>j) & E(j & p) -> q")?;
        b.rule(Rule::BgEDiamond, &[s], "E(i & <>p) -> q")
    }));
    out.push(ex("bg_e diamond from a tautology", logic(HE, true, &[]), |b| {
        let t = b.axiom(Schema::Taut, "E(i & <>j) & E(j & p) -> q | ~q")?;
        b.rule(Rule::BgEDiamond, &[t], "E(i & <>p) -> q | ~q")
    }));
    out.push(ex("bg_ee", logic(HE, true, &["E(i & E j) & E(j & p) -> q"]), |b| {
        let s = b.sigma(0, sub(), "E(i & E j) & E(j & p) -> q")?;
        b.rule(Rule::BgEE, &[s], "E(i & E p) -> q")
    }));
    out.push(ex("bg_ee from a tautology", logic(HE, true, &[]), |b| {
        let t = b.axiom(Schema::Taut, "E(i & E j) & E(j & <>p) -> ~bot")?;
        b.rule(Rule::BgEE, &[t], "E(i & E <>p) -> ~bot")
    }));
    out
}

fn mutation(name: &'static str, index: usize, violation: Violation, example: Example) -> Mutation {
    Mutation { name, derivation: example.derivation, expected: StepError { index, violation } }
}

fn not_fresh(nominal: &str, place: &'static str) -> Violation {
    Violation::NotFresh { nominal: nominal.to_string(), place }
}

fn same(i: &str) -> Violation {
    Violation::SameNominal { i: i.to_string(), j: i.to_string() }
}

/// Each non-orthodox rule application with a side condition broken, and
/// every `+` example replayed in the base logic.
pub fn mutations() -> Vec<Mutation> {
    use Language::{HAt, HE, H};
    let mut out = vec![
        mutation("name with i in φ", 2, not_fresh("j", "φ"), ex("", logic(H, true, &["j -> <>j"]), |b| {
            let s = b.sigma(0, sub(), "j -> <>j")?;
            b.rule(Rule::Name, &[s], "<>j")
        })),
        mutation("paste with i = j", 2, same("i"), ex("", logic(H, true, &[]), |b| {
            let t = b.axiom(Schema::Taut, "i & <>(i & p) -> i")?;
            b.rule(Rule::Paste, &[t], "i & <>p -> i")
        })),
        mutation("paste with j in φ", 2, not_fresh("j", "φ"), ex("", logic(H, true, &[]), |b| {
            let t = b.axiom(Schema::Taut, "i & <>(j & (p & j)) -> i")?;
            b.rule(Rule::Paste, &[t], "i & <>(p & j) -> i")
        })),
        mutation("paste with j in ψ", 2, not_fresh("j", "ψ"), ex("", logic(H, true, &[]), |b| {
            let t = b.axiom(Schema::Taut, "i & <>(j & p) -> i | j")?;
            b.rule(Rule::Paste, &[t], "i & <>p -> i | j")
        })),
        mutation("name_@ with j in φ", 3, not_fresh("j", "φ"), ex("", logic(HAt, true, &[]), |b| {
            let t = b.axiom(Schema::Taut, "j | ~j")?;
            let n = b.rule(Rule::NecAt, &[t], "@j (j | ~j)")?;
            b.rule(Rule::NameAt, &[n], "j | ~j")
        })),
        mutation("bg_@ with i = j", 2, same("i"), ex("", logic(HAt, true, &[]), |b| {
            let t = b.axiom(Schema::Taut, "@i <>i & @i p -> top")?;
            b.rule(Rule::BgAt, &[t], "@i <>p -> top")
        })),
        mutation("bg_@ with j in φ", 2, not_fresh("j", "φ"), ex("", logic(HAt, true, &[]), |b| {
            let t = b.axiom(Schema::Taut, "@i <>j & @j (p & j) -> top")?;
            b.rule(Rule::BgAt, &[t], "@i <>(p & j) -> top")
        })),
        mutation("bg_@ with j in ψ", 2, not_fresh("j", "ψ"), ex("", logic(HAt, true, &[]), |b| {
            let t = b.axiom(Schema::Taut, "@i <>j & @j p -> top | @j p")?;
            b.rule(Rule::BgAt, &[t], "@i <>p -> top | @j p")
        })),
        mutation("name_e with i in φ", 2, not_fresh("i", "φ"), ex("", logic(HE, true, &[]), |b| {
            let t = b.axiom(Schema::Taut, "i -> (i | ~i)")?;
            b.rule(Rule::NameE, &[t], "i | ~i")
        })),
        mutation("bg_e diamond with i = j", 2, same("i"), ex("", logic(HE, true, &[]), |b| {
            let t = b.axiom(Schema::Taut, "E(i & <>i) & E(i & p) -> top")?;
            b.rule(Rule::BgEDiamond, &[t], "E(i & <>p) -> top")
        })),
        mutation("bg_e diamond with j in ψ", 2, not_fresh("j", "ψ"), ex("", logic(HE, true, &[]), |b| {
            let t = b.axiom(Schema::Taut, "E(i & <>j) & E(j & p) -> top | j")?;
            b.rule(Rule::BgEDiamond, &[t], "E(i & <>p) -> top | j")
        })),
        mutation("bg_ee with j in φ", 2, not_fresh("j", "φ"), ex("", logic(HE, true, &[]), |b| {
            let t = b.axiom(Schema::Taut, "E(i & E j) & E(j & (p & j)) -> top")?;
            b.rule(Rule::BgEE, &[t], "E(i & E (p & j)) -> top")
        })),
        mutation("bg_ee with i = j", 2, same("i"), ex("", logic(HE, true, &[]), |b| {
            let t = b.axiom(Schema::Taut, "E(i & E i) & E(i & p) -> top")?;
            b.rule(Rule::BgEE, &[t], "E(i & E p) -> top")
        })),
    ];
    for e in examples().into_iter().filter(|e| e.derivation.logic.plus) {
        let first = e.derivation.steps.iter().position(|s| {
            matches!(s, super::Step::Rule { rule, .. } if rule.is_non_orthodox())
        });
        if let Some(k) = first {
            let mut d = e.derivation;
            d.logic.plus = false;
            out.push(Mutation { name: e.name, derivation: d, expected: StepError { index: k + 1, violation: Violation::NonOrthodox } });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::verify;

    #[test]
    fn examples_verify() {
        let all = examples();
        assert!(all.len() >= 50);
        for e in &all {
            assert_eq!(verify(&e.derivation), Ok(()), "{}", e.name);
        }
    }

    #[test]
    fn coverage() {
        let all = examples();
        let steps = || all.iter().flat_map(|e| e.derivation.steps.iter());
        for schema in Schema::ALL {
            assert!(steps().any(|s| matches!(s, super::super::Step::Axiom { schema: x, .. } if *x == schema)), "{schema}");
        }
        for rule in Rule::ALL {
            assert!(steps().any(|s| matches!(s, super::super::Step::Rule { rule: x, .. } if *x == rule)), "{rule}");
        }
    }

    #[test]
    fn mutations_are_rejected() {
        for m in mutations() {
            assert_eq!(verify(&m.derivation), Err(m.expected.clone()), "{}", m.name);
        }
    }
}
