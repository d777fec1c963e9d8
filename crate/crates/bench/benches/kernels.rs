use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use hybrix::duality::algebra_report;
use hybrix::evaluation::equation_true;
use hybrix::generate;
use hybrix::proof::{corpus, is_tautology_instance, verify};
use hybrix::relativization::lemma_suite;
use hybrix::{parse, Element, Language};
use hybrix_bench::{algebras, equations};

fn evaluation(c: &mut Criterion) {
    let hs = algebras(3);
    let eqs = equations();
    c.bench_function("equation_true over all 3-atom algebras", |b| {
        b.iter(|| hs.iter().filter(|h| eqs.iter().all(|e| equation_true(h, e).unwrap().holds)).count())
    });
}

fn duality(c: &mut Criterion) {
    let hs = algebras(3);
    c.bench_function("algebra round trip, 3 atoms", |b| {
        b.iter(|| hs.iter().all(|h| algebra_report(h).unwrap().all_hold()))
    });
}

fn relativization(c: &mut Criterion) {
    let baos: Vec<_> = generate::baos(3).collect();
    c.bench_function("lemma suite, 3-atom BAOs seeded at a0", |b| {
        b.iter(|| baos.iter().map(|bao| lemma_suite(bao, &[Element::atom(0)]).unwrap().violations.len()).sum::<usize>())
    });
}

fn kernel(c: &mut Criterion) {
    let examples = corpus::examples();
    c.bench_function("verify derivation corpus", |b| {
        b.iter(|| examples.iter().all(|e| verify(&e.derivation).is_ok()))
    });
    let taut = parse("(<>p -> (q -> <>p)) & ((i -> ~[]q) | ~(i -> ~[]q)) & (@j p | ~@j p)", Language::HAt).unwrap();
    c.bench_function("tautology instance check", |b| b.iter(|| is_tautology_instance(black_box(&taut))));
}

criterion_group!(benches, evaluation, duality, relativization, kernel);
criterion_main!(benches);
