//! Propositional tautology instances, by abstracting every maximal
//! non-Boolean subformula to a letter and running a bit-parallel truth
//! table.

use crate::syntax::Formula;

/// Above this many distinct letters the table is not built and the check
/// answers `false`.
pub const MAX_LETTERS: usize = 24;

pub fn is_tautology_instance(phi: &Formula) -> bool {
    let mut letters = Vec::new();
    collect(phi, &mut letters);
    let n = letters.len();
    if n > MAX_LETTERS {
        return false;
    }
    let rows = 1usize << n;
    let words = rows.div_ceil(64);
    let table = eval(phi, &letters, words);
    let last = if rows.is_multiple_of(64) { u64::MAX } else { (1u64 << rows) - 1 };
    table[..words - 1].iter().all(|&w| w == u64::MAX) && table[words - 1] & last == last
}

fn collect<'a>(phi: &'a Formula, letters: &mut Vec<&'a Formula>) {
    match phi {
        Formula::Bot => {}
        Formula::Neg(a) => collect(a, letters),
        Formula::Conj(a, b) => {
            collect(a, letters);
            collect(b, letters);
        }
        other => {
            if !letters.contains(&other) {
                letters.push(other);
            }
        }
    }
}

/// Row `r` of the table assigns letter `k` the value of bit `k` of `r`.
fn column(k: usize, words: usize) -> Vec<u64> {
    const SMALL: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    (0..words).map(|w| if k < 6 { SMALL[k] } else if (w >> (k - 6)) & 1 == 1 { u64::MAX } else { 0 }).collect()
}

fn eval(phi: &Formula, letters: &[&Formula], words: usize) -> Vec<u64> {
    match phi {
        Formula::Bot => vec![0; words],
        Formula::Neg(a) => eval(a, letters, words).into_iter().map(|w| !w).collect(),
        Formula::Conj(a, b) => {
            let (x, y) = (eval(a, letters, words), eval(b, letters, words));
            x.into_iter().zip(y).map(|(p, q)| p & q).collect()
        }
        other => column(letters.iter().position(|l| *l == other).expect("collected"), words),
    }
}
