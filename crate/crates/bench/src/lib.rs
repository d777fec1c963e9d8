//! Fixed inputs shared by the benchmarks.

use hybrix::generate;
use hybrix::{parse, Equation, HybridStructure, Language};

/// Every hybrid algebra with exactly `k` atoms.
pub fn algebras(k: usize) -> Vec<HybridStructure> {
    generate::hybrid_algebras(k).collect()
}

/// Equations with two variables and two nominals, so each check walks the
/// whole assignment space on valid inputs.
pub fn equations() -> Vec<Equation> {
    [("<>(p | q)", "<>p | <>q"), ("i & <>j -> <>(j & p) | <>(j & ~p)", "top"), ("[]p & <>i -> <>(i & p)", "<>i & []p")]
        .iter()
        .map(|(l, r)| Equation::new(parse(l, Language::H).expect("fixture parses"), parse(r, Language::H).expect("fixture parses")))
        .collect()
}
