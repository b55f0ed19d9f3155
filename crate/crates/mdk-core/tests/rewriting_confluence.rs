//! The stack reducer applies rewrite rules eagerly, innermost first.
//! This test implements the same rule set as a naive rewriter that
//! repeatedly applies an arbitrary (randomly chosen) applicable rule
//! anywhere in the word, and checks both strategies reach the same
//! normal form: the rewriting system is confluent in practice.

use mdk_core::dyck::{reduce, DyckSymbol, ProjSet, ReducedForm, SymbolKind, Token};
use mdk_core::markov::TransitionMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn row(a: &TransitionMatrix, j: u8) -> ProjSet {
    ProjSet::from_mask(a.row_mask(j)).unwrap()
}

/// One rewrite at position `i` (acting on tokens `i`, `i+1`), if any
/// rule applies there. Returns false for "no rule applies".
fn try_rewrite(a: &TransitionMatrix, w: &mut Vec<Token>, i: usize, zero: &mut bool) -> bool {
    match (w[i], w[i + 1]) {
        (Token::Alpha(p), Token::Beta(q)) => {
            if p == q {
                w.splice(i..i + 2, [Token::Proj(row(a, p))]);
            } else {
                *zero = true;
            }
            true
        }
        (Token::Proj(s), Token::Proj(t)) => {
            match s.intersect(t) {
                Some(u) => {
                    w.splice(i..i + 2, [Token::Proj(u)]);
                }
                None => *zero = true,
            }
            true
        }
        (Token::Proj(s), Token::Beta(q)) => {
            if s.contains(q) {
                w.remove(i);
            } else {
                *zero = true;
            }
            true
        }
        (Token::Alpha(p), Token::Proj(s)) => {
            if s.contains(p) {
                w.remove(i + 1);
            } else {
                *zero = true;
            }
            true
        }
        // the two absorption rules only fire when they strictly shrink
        // the projection, otherwise they would loop forever
        (Token::Proj(s), Token::Alpha(q)) => match s.intersect(row(a, q)) {
            Some(u) if u != s => {
                w[i] = Token::Proj(u);
                true
            }
            Some(_) => false,
            None => {
                *zero = true;
                true
            }
        },
        (Token::Beta(p), Token::Proj(s)) => match row(a, p).intersect(s) {
            Some(u) if u != s => {
                w[i + 1] = Token::Proj(u);
                true
            }
            Some(_) => false,
            None => {
                *zero = true;
                true
            }
        },
        _ => false,
    }
}

fn naive_reduce(a: &TransitionMatrix, word: &[DyckSymbol], rng: &mut StdRng) -> ReducedForm {
    let mut w: Vec<Token> = Vec::new();
    for s in word {
        match s.kind {
            SymbolKind::Alpha => {
                w.push(Token::Proj(row(a, s.index)));
                w.push(Token::Alpha(s.index));
            }
            SymbolKind::Beta => {
                w.push(Token::Beta(s.index));
                w.push(Token::Proj(row(a, s.index)));
            }
        }
    }
    let mut zero = false;
    loop {
        if zero {
            return ReducedForm::Zero;
        }
        let candidates: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| {
                let mut probe = w.clone();
                let mut z = false;
                try_rewrite(a, &mut probe, i, &mut z)
            })
            .collect();
        if candidates.is_empty() {
            return ReducedForm::Word(w);
        }
        let i = candidates[rng.gen_range(0..candidates.len())];
        try_rewrite(a, &mut w, i, &mut zero);
    }
}

fn random_word(a: &TransitionMatrix, len: usize, rng: &mut StdRng) -> Vec<DyckSymbol> {
    (0..len)
        .map(|_| {
            let index = rng.gen_range(1..=a.size() as u8);
            if rng.gen_bool(0.5) {
                DyckSymbol::alpha(index)
            } else {
                DyckSymbol::beta(index)
            }
        })
        .collect()
}

#[test]
fn eager_and_random_order_reduction_agree() {
    let mut rng = StdRng::seed_from_u64(0x00d1ce);
    let matrices = [
        TransitionMatrix::fibonacci(),
        TransitionMatrix::full(2).unwrap(),
        TransitionMatrix::full(3).unwrap(),
    ];
    for _ in 0..10_000 {
        let a = &matrices[rng.gen_range(0..matrices.len())];
        let len = rng.gen_range(0..=12);
        let word = random_word(a, len, &mut rng);
        let eager = reduce(a, &word).unwrap();
        let naive = naive_reduce(a, &word, &mut rng);
        assert_eq!(eager, naive, "word {word:?}");
    }
}

#[test]
fn repeated_runs_are_deterministic_despite_random_order() {
    let mut rng = StdRng::seed_from_u64(7);
    let a = TransitionMatrix::full(2).unwrap();
    for _ in 0..500 {
        let word = random_word(&a, rng.gen_range(0..=10), &mut rng);
        let first = naive_reduce(&a, &word, &mut rng);
        for _ in 0..3 {
            assert_eq!(first, naive_reduce(&a, &word, &mut rng), "word {word:?}");
        }
    }
}
