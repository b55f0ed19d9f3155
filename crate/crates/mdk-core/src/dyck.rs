//! Admissibility for words of the topological Markov-Dyck shift `D_A`.
//!
//! A word over the bracket alphabet maps to a product of partial
//! isometries; it is forbidden exactly when that product vanishes. The
//! reducer below evaluates the product as a token sequence, rewriting
//! adjacent pairs until a fixed point. Symbols carry their range
//! projections: `beta(j)` seeds `proj(row(j))` on its right and
//! `alpha(j)` seeds `proj(row(j))` on its left, which is where the Markov
//! constraint enters. Ground truth is the path oracle on the
//! Cantor-horizon lambda-graph system (see `oracle_is_admissible`); the
//! rewriting system is validated against it, not assumed correct.

use alloc::vec::Vec;
use core::fmt;

use crate::lambda;
use crate::markov::TransitionMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    /// Opening bracket; maps to the adjoint partial isometry.
    Alpha,
    /// Closing bracket; maps to the partial isometry itself.
    Beta,
}

/// One letter of the `2N`-symbol alphabet of `D_A`.
///
/// Ordering is `alpha_1 < ... < alpha_N < beta_1 < ... < beta_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckSymbol {
    pub kind: SymbolKind,
    pub index: u8,
}

impl DyckSymbol {
    pub fn alpha(index: u8) -> Self {
        DyckSymbol { kind: SymbolKind::Alpha, index }
    }

    pub fn beta(index: u8) -> Self {
        DyckSymbol { kind: SymbolKind::Beta, index }
    }
}

impl fmt::Display for DyckSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymbolKind::Alpha => write!(f, "a{}", self.index),
            SymbolKind::Beta => write!(f, "b{}", self.index),
        }
    }
}

pub type DyckWord = Vec<DyckSymbol>;

/// Nonempty subset of `{1..N}` as a bitmask; bit `j-1` stands for `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjSet(u32);

impl ProjSet {
    pub fn from_mask(mask: u32) -> Option<Self> {
        if mask == 0 {
            None
        } else {
            Some(ProjSet(mask))
        }
    }

    pub fn contains(self, j: u8) -> bool {
        self.0 & (1 << (j - 1)) != 0
    }

    pub fn intersect(self, other: ProjSet) -> Option<ProjSet> {
        Self::from_mask(self.0 & other.0)
    }

    pub fn members(self) -> impl Iterator<Item = u8> {
        (1..=32u8).filter(move |j| self.0 & (1 << (j - 1)) != 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Token {
    Alpha(u8),
    Beta(u8),
    Proj(ProjSet),
}

/// Fixed point of the rewriting system: zero, or a canonical token
/// sequence with no `alpha(i) beta(j)` pair and no adjacent projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReducedForm {
    Zero,
    Word(Vec<Token>),
}

impl ReducedForm {
    pub fn is_zero(&self) -> bool {
        matches!(self, ReducedForm::Zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolError {
    OutOfRange { index: u8, alphabet: usize },
}

impl fmt::Display for SymbolError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolError::OutOfRange { index, alphabet } => {
                write!(f, "symbol index {index} out of range 1..={alphabet}")
            }
        }
    }
}

/// Incremental left-to-right evaluation; `Zero` absorbs.
#[derive(Clone)]
pub struct Reducer<'a> {
    a: &'a TransitionMatrix,
    state: Option<Vec<Token>>,
}

impl<'a> Reducer<'a> {
    pub fn new(a: &'a TransitionMatrix) -> Self {
        Reducer { a, state: Some(Vec::new()) }
    }

    pub fn is_zero(&self) -> bool {
        self.state.is_none()
    }

    fn row(&self, j: u8) -> ProjSet {
        // rows are nonzero by the TransitionMatrix invariant
        ProjSet::from_mask(self.a.row_mask(j)).expect("zero row")
    }

    pub fn push(&mut self, s: DyckSymbol) -> Result<(), SymbolError> {
        if s.index == 0 || s.index as usize > self.a.size() {
            return Err(SymbolError::OutOfRange { index: s.index, alphabet: self.a.size() });
        }
        match s.kind {
            SymbolKind::Alpha => {
                self.push_token(Token::Proj(self.row(s.index)));
                self.push_token(Token::Alpha(s.index));
            }
            SymbolKind::Beta => {
                self.push_token(Token::Beta(s.index));
                self.push_token(Token::Proj(self.row(s.index)));
            }
        }
        Ok(())
    }

    fn push_token(&mut self, mut t: Token) {
        let a = self.a;
        let row = |j: u8| ProjSet::from_mask(a.row_mask(j)).expect("zero row");
        let stack = match &mut self.state {
            Some(s) => s,
            None => return,
        };
        loop {
            let last = match stack.last() {
                Some(&l) => l,
                None => break,
            };
            match (last, t) {
                // R1: alpha(i) beta(j) -> 0 or proj(row(i))
                (Token::Alpha(i), Token::Beta(j)) => {
                    stack.pop();
                    if i != j {
                        self.state = None;
                        return;
                    }
                    t = Token::Proj(row(i));
                }
                // R2: proj(S) proj(T) -> proj(S /\ T)
                (Token::Proj(s), Token::Proj(u)) => {
                    stack.pop();
                    match s.intersect(u) {
                        Some(w) => t = Token::Proj(w),
                        None => {
                            self.state = None;
                            return;
                        }
                    }
                }
                // R3: proj(S) beta(j) -> beta(j) if j in S, else 0
                (Token::Proj(s), Token::Beta(j)) => {
                    if !s.contains(j) {
                        self.state = None;
                        return;
                    }
                    stack.pop();
                }
                // R4: alpha(k) proj(S) -> alpha(k) if k in S, else 0
                (Token::Alpha(k), Token::Proj(s)) => {
                    if !s.contains(k) {
                        self.state = None;
                    }
                    return;
                }
                // R5: proj(S) alpha(j) -> proj(S /\ row(j)) alpha(j)
                (Token::Proj(s), Token::Alpha(j)) => {
                    match s.intersect(row(j)) {
                        Some(w) => {
                            if w != s {
                                *stack.last_mut().unwrap() = Token::Proj(w);
                            }
                        }
                        None => {
                            self.state = None;
                            return;
                        }
                    }
                    break;
                }
                // R6: beta(k) proj(S) -> beta(k) proj(row(k) /\ S)
                (Token::Beta(k), Token::Proj(s)) => {
                    match row(k).intersect(s) {
                        Some(w) => t = Token::Proj(w),
                        None => {
                            self.state = None;
                            return;
                        }
                    }
                    break;
                }
                // no rule applies
                _ => break,
            }
        }
        if let Some(stack) = &mut self.state {
            stack.push(t);
        }
    }

    pub fn finish(self) -> ReducedForm {
        match self.state {
            None => ReducedForm::Zero,
            Some(tokens) => ReducedForm::Word(tokens),
        }
    }
}

/// Left-to-right stack evaluation of `w` in the relations of `O_A`.
pub fn reduce(a: &TransitionMatrix, w: &[DyckSymbol]) -> Result<ReducedForm, SymbolError> {
    let mut r = Reducer::new(a);
    for &s in w {
        r.push(s)?;
    }
    Ok(r.finish())
}

/// True iff the word maps to a nonzero element, i.e. is not forbidden.
pub fn is_admissible(a: &TransitionMatrix, w: &[DyckSymbol]) -> Result<bool, SymbolError> {
    Ok(!reduce(a, w)?.is_zero())
}

/// Independent admissibility check: does some labeled path of the
/// Cantor-horizon lambda-graph system, starting at a vertex of level at
/// most `search_bound`, carry the label sequence `w`?
pub fn oracle_is_admissible(
    a: &TransitionMatrix,
    w: &[DyckSymbol],
    search_bound: usize,
) -> Result<bool, lambda::LambdaError> {
    let system = lambda::build_cantor_horizon(a, search_bound + w.len())?;
    Ok(system.some_path_accepts(w, search_bound))
}

/// All admissible words of length `l` over the `2N`-letter alphabet, in
/// lexicographic order with `alpha_1 < ... < alpha_N < beta_1 < ... < beta_N`.
pub fn enumerate_admissible(a: &TransitionMatrix, l: usize) -> Vec<DyckWord> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(l);
    let r = Reducer::new(a);
    enumerate_rec(a, l, &r, &mut word, &mut out);
    out
}

pub(crate) fn alphabet(a: &TransitionMatrix) -> Vec<DyckSymbol> {
    let n = a.size() as u8;
    (1..=n).map(DyckSymbol::alpha).chain((1..=n).map(DyckSymbol::beta)).collect()
}

fn enumerate_rec(
    a: &TransitionMatrix,
    l: usize,
    r: &Reducer<'_>,
    word: &mut DyckWord,
    out: &mut Vec<DyckWord>,
) {
    if word.len() == l {
        out.push(word.clone());
        return;
    }
    for s in alphabet(a) {
        let mut next = r.clone();
        next.push(s).expect("alphabet symbol in range");
        // Zero absorbs, so the whole subtree is forbidden.
        if next.is_zero() {
            continue;
        }
        word.push(s);
        enumerate_rec(a, l, &next, word, out);
        word.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> TransitionMatrix {
        TransitionMatrix::fibonacci()
    }

    fn a(i: u8) -> DyckSymbol {
        DyckSymbol::alpha(i)
    }

    fn b(i: u8) -> DyckSymbol {
        DyckSymbol::beta(i)
    }

    #[test]
    fn paper_forbidden_pairs() {
        assert_eq!(reduce(&f(), &[a(1), b(2)]).unwrap(), ReducedForm::Zero);
        assert_eq!(reduce(&f(), &[b(2), b(2)]).unwrap(), ReducedForm::Zero);
        assert_eq!(reduce(&f(), &[a(2), a(2)]).unwrap(), ReducedForm::Zero);
    }

    #[test]
    fn alpha_beta_pair_is_projection() {
        let full = ProjSet::from_mask(0b11).unwrap();
        assert_eq!(
            reduce(&f(), &[a(1), b(1)]).unwrap(),
            ReducedForm::Word(alloc::vec![Token::Proj(full)])
        );
    }

    #[test]
    fn close_then_open_never_vanishes() {
        assert!(is_admissible(&f(), &[b(1), a(1)]).unwrap());
        assert!(is_admissible(&f(), &[]).unwrap());
        assert!(!is_admissible(&f(), &[a(1), b(2)]).unwrap());
    }

    #[test]
    fn oracle_matches_paper_examples() {
        assert!(!oracle_is_admissible(&f(), &[b(2), b(2)], 8).unwrap());
        assert!(oracle_is_admissible(&f(), &[b(1), b(2), b(1)], 8).unwrap());
        assert!(oracle_is_admissible(&f(), &[a(2), a(1)], 8).unwrap());
        assert!(is_admissible(&f(), &[a(2), a(1)]).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        let full2 = TransitionMatrix::full(2).unwrap();
        assert_eq!(enumerate_admissible(&full2, 1).len(), 4);
        // brute force: 16 words of length 2 minus the two alpha_i beta_j
        let brute: usize = {
            let mut n = 0;
            for s in alphabet(&full2) {
                for t in alphabet(&full2) {
                    if is_admissible(&full2, &[s, t]).unwrap() {
                        n += 1;
                    }
                }
            }
            n
        };
        assert_eq!(brute, 14);
        assert_eq!(enumerate_admissible(&full2, 2).len(), 14);

        let brute_f: usize = {
            let mut n = 0;
            for s in alphabet(&f()) {
                for t in alphabet(&f()) {
                    if is_admissible(&f(), &[s, t]).unwrap() {
                        n += 1;
                    }
                }
            }
            n
        };
        assert_eq!(enumerate_admissible(&f(), 2).len(), brute_f);
    }

    #[test]
    fn pure_beta_words_are_markov_words() {
        use crate::markov;
        for l in 0..=6 {
            for word in all_words(&f(), l) {
                if word.iter().all(|s| s.kind == SymbolKind::Beta) {
                    let letters: alloc::vec::Vec<u8> = word.iter().map(|s| s.index).collect();
                    assert_eq!(
                        is_admissible(&f(), &word).unwrap(),
                        markov::is_markov_admissible(&f(), &letters),
                        "{word:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn reflection_of_admissibility() {
        for m in [f(), TransitionMatrix::full(2).unwrap()] {
            for n in 1..=6 {
                for seq in index_tuples(m.size() as u8, n) {
                    let alphas: DyckWord = seq.iter().rev().map(|&i| a(i)).collect();
                    let betas: DyckWord = seq.iter().map(|&i| b(i)).collect();
                    assert_eq!(
                        is_admissible(&m, &alphas).unwrap(),
                        is_admissible(&m, &betas).unwrap(),
                        "{seq:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn factor_closure() {
        for m in [f(), TransitionMatrix::full(2).unwrap()] {
            for n in 0..=6 {
                for word in all_words(&m, n) {
                    if !is_admissible(&m, &word).unwrap() {
                        continue;
                    }
                    for i in 0..=word.len() {
                        for j in i..=word.len() {
                            assert!(is_admissible(&m, &word[i..j]).unwrap());
                        }
                    }
                }
            }
        }
    }

    fn index_tuples(n: u8, len: usize) -> alloc::vec::Vec<alloc::vec::Vec<u8>> {
        let mut out = alloc::vec![alloc::vec::Vec::new()];
        for _ in 0..len {
            let mut next = alloc::vec::Vec::new();
            for t in &out {
                for i in 1..=n {
                    let mut u = t.clone();
                    u.push(i);
                    next.push(u);
                }
            }
            out = next;
        }
        out
    }

    fn all_words(m: &TransitionMatrix, len: usize) -> alloc::vec::Vec<DyckWord> {
        let mut out = alloc::vec![DyckWord::new()];
        for _ in 0..len {
            let mut next = alloc::vec::Vec::new();
            for w in &out {
                for s in alphabet(m) {
                    let mut u = w.clone();
                    u.push(s);
                    next.push(u);
                }
            }
            out = next;
        }
        out
    }
}
