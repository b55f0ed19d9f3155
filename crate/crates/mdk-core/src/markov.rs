//! Transition matrices and topological Markov shifts.
//!
//! Words are sequences over `1..=N` ordered lexicographically from the
//! left; all enumeration is by depth-first extension with on-the-fly
//! admissibility, so memory stays proportional to the output.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

/// Square 0/1 matrix with no zero rows or columns.
#[derive(Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    n: usize,
    entries: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    Empty,
    NotSquare,
    ZeroRow(usize),
    ZeroColumn(usize),
    TooLarge(usize),
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::Empty => write!(f, "matrix must have size at least 1"),
            MatrixError::NotSquare => write!(f, "matrix must be square"),
            MatrixError::ZeroRow(i) => write!(f, "row {} is zero", i + 1),
            MatrixError::ZeroColumn(j) => write!(f, "column {} is zero", j + 1),
            MatrixError::TooLarge(n) => write!(f, "alphabet size {} exceeds 32", n),
        }
    }
}

impl TransitionMatrix {
    pub fn new(entries: Vec<Vec<bool>>) -> Result<Self, MatrixError> {
        let n = entries.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        if n > 32 {
            return Err(MatrixError::TooLarge(n));
        }
        if entries.iter().any(|r| r.len() != n) {
            return Err(MatrixError::NotSquare);
        }
        for (i, row) in entries.iter().enumerate() {
            if row.iter().all(|&x| !x) {
                return Err(MatrixError::ZeroRow(i));
            }
        }
        for j in 0..n {
            if entries.iter().all(|r| !r[j]) {
                return Err(MatrixError::ZeroColumn(j));
            }
        }
        Ok(TransitionMatrix { n, entries })
    }

    /// The Fibonacci matrix `[[1,1],[1,0]]`.
    pub fn fibonacci() -> Self {
        TransitionMatrix { n: 2, entries: alloc::vec![alloc::vec![true, true], alloc::vec![true, false]] }
    }

    /// All-ones matrix; `D_A` is then the Dyck shift `D_N`.
    pub fn full(n: usize) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        if n > 32 {
            return Err(MatrixError::TooLarge(n));
        }
        Ok(TransitionMatrix { n, entries: alloc::vec![alloc::vec![true; n]; n] })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `A(i, j)` with 1-based letters.
    pub fn allows(&self, i: u8, j: u8) -> bool {
        self.entries[(i - 1) as usize][(j - 1) as usize]
    }

    /// Bitmask of `{ j : A(i, j) = 1 }`; bit `j-1` stands for letter `j`.
    pub fn row_mask(&self, i: u8) -> u32 {
        let mut mask = 0u32;
        for j in 1..=self.n as u8 {
            if self.allows(i, j) {
                mask |= 1 << (j - 1);
            }
        }
        mask
    }

    pub fn is_permutation(&self) -> bool {
        let row_ok = self.entries.iter().all(|r| r.iter().filter(|&&x| x).count() == 1);
        let col_ok = (0..self.n).all(|j| self.entries.iter().filter(|r| r[j]).count() == 1);
        row_ok && col_ok
    }
}

impl fmt::Debug for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TransitionMatrix(")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for &x in row {
                write!(f, "{}", if x { 1 } else { 0 })?;
            }
        }
        write!(f, ")")
    }
}

/// Word over the alphabet `1..=N`; 1-based letters.
pub type MarkovWord = Vec<u8>;

pub fn is_markov_admissible(a: &TransitionMatrix, w: &[u8]) -> bool {
    w.iter().all(|&x| x >= 1 && x as usize <= a.size())
        && w.windows(2).all(|p| a.allows(p[0], p[1]))
}

/// All admissible words of length `l` in lexicographic order; `l = 0`
/// yields the single empty word.
pub fn admissible_words(a: &TransitionMatrix, l: usize) -> Vec<MarkovWord> {
    let mut out = Vec::new();
    let mut stack: Vec<u8> = Vec::with_capacity(l);
    extend(a, l, &mut stack, &mut out);
    out
}

fn extend(a: &TransitionMatrix, l: usize, prefix: &mut Vec<u8>, out: &mut Vec<MarkovWord>) {
    if prefix.len() == l {
        out.push(prefix.clone());
        return;
    }
    for j in 1..=a.size() as u8 {
        if let Some(&last) = prefix.last() {
            if !a.allows(last, j) {
                continue;
            }
        }
        prefix.push(j);
        extend(a, l, prefix, out);
        prefix.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    NotAdmissible,
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::NotAdmissible => write!(f, "not admissible"),
        }
    }
}

/// 1-based position of `w` among the admissible words of its length.
pub fn word_index(a: &TransitionMatrix, w: &[u8]) -> Result<usize, WordError> {
    if !is_markov_admissible(a, w) {
        return Err(WordError::NotAdmissible);
    }
    // count admissible words strictly below w in lex order
    let mut below = 0usize;
    for (pos, &letter) in w.iter().enumerate() {
        for j in 1..letter {
            if pos > 0 && !a.allows(w[pos - 1], j) {
                continue;
            }
            below += count_extensions(a, j, w.len() - pos - 1);
        }
    }
    Ok(below + 1)
}

/// Number of admissible words of length `1 + tail` starting with `first`.
fn count_extensions(a: &TransitionMatrix, first: u8, tail: usize) -> usize {
    let n = a.size();
    let mut counts = alloc::vec![0usize; n];
    counts[(first - 1) as usize] = 1;
    for _ in 0..tail {
        let mut next = alloc::vec![0usize; n];
        for i in 0..n {
            if counts[i] == 0 {
                continue;
            }
            for j in 0..n {
                if a.entries[i][j] {
                    next[j] += counts[i];
                }
            }
        }
        counts = next;
    }
    counts.iter().sum()
}

/// `m(l)`, the number of admissible words of length `l`.
pub fn count_words(a: &TransitionMatrix, l: usize) -> usize {
    if l == 0 {
        return 1;
    }
    (1..=a.size() as u8).map(|j| count_extensions(a, j, l - 1)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FibonacciError {
    ZeroIndex,
}

impl fmt::Display for FibonacciError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fibonacci is indexed from 1")
    }
}

/// `f_1 = f_2 = 1`, `f_{l+2} = f_{l+1} + f_l`, arbitrary precision.
pub fn fibonacci(l: usize) -> Result<BigUint, FibonacciError> {
    if l == 0 {
        return Err(FibonacciError::ZeroIndex);
    }
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for _ in 2..l {
        let c = &a + &b;
        a = b;
        b = c;
    }
    Ok(if l == 1 { a } else { b })
}

/// True iff the directed graph of `A` is strongly connected.
pub fn is_irreducible(a: &TransitionMatrix) -> bool {
    let n = a.size();
    let reach = |start: usize, forward: bool| -> Vec<bool> {
        let mut seen = alloc::vec![false; n];
        let mut stack = alloc::vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                let edge = if forward { a.entries[i][j] } else { a.entries[j][i] };
                if edge && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen
    };
    reach(0, true).iter().all(|&x| x) && reach(0, false).iter().all(|&x| x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectralError {
    Reducible,
    NoConvergence,
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::Reducible => {
                write!(f, "condition (I) check implemented for irreducible matrices only")
            }
            SpectralError::NoConvergence => write!(f, "power iteration did not converge"),
        }
    }
}

/// Condition (I) for irreducible `A`: true iff `A` is not a permutation
/// matrix. Errors on reducible input.
pub fn satisfies_condition_i(a: &TransitionMatrix) -> Result<bool, SpectralError> {
    if !is_irreducible(a) {
        return Err(SpectralError::Reducible);
    }
    Ok(!a.is_permutation())
}

fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

/// Spectral radius of an irreducible `A` by power iteration from the
/// all-ones vector; converges when successive Rayleigh quotients differ
/// by less than 1e-12, capped at 10^6 iterations.
pub fn perron_eigenvalue(a: &TransitionMatrix) -> Result<f64, SpectralError> {
    if !is_irreducible(a) {
        return Err(SpectralError::Reducible);
    }
    let n = a.size();
    let mut x = alloc::vec![1.0f64; n];
    let mut rayleigh = 0.0f64;
    for _ in 0..1_000_000 {
        let mut y = alloc::vec![0.0f64; n];
        for i in 0..n {
            for j in 0..n {
                if a.entries[i][j] {
                    y[i] += x[j];
                }
            }
        }
        let num: f64 = (0..n).map(|i| y[i] * x[i]).sum();
        let den: f64 = (0..n).map(|i| x[i] * x[i]).sum();
        let r = num / den;
        let norm: f64 = y.iter().map(|v| v * v).sum::<f64>();
        let scale = 1.0 / libm_sqrt(norm);
        for v in &mut y {
            *v *= scale;
        }
        if fabs(r - rayleigh) < 1e-12 {
            return Ok(r);
        }
        rayleigh = r;
        x = y;
    }
    Err(SpectralError::NoConvergence)
}

// Newton iteration; f64::sqrt is not available in core.
fn libm_sqrt(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let mut g = x;
    for _ in 0..64 {
        let next = 0.5 * (g + x / g);
        if fabs(next - g) < 1e-15 * g {
            return next;
        }
        g = next;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> TransitionMatrix {
        TransitionMatrix::fibonacci()
    }

    #[test]
    fn printed_small_enumerations() {
        assert_eq!(admissible_words(&f(), 1), alloc::vec![alloc::vec![1], alloc::vec![2]]);
        assert_eq!(
            admissible_words(&f(), 2),
            alloc::vec![alloc::vec![1, 1], alloc::vec![1, 2], alloc::vec![2, 1]]
        );
        let full2 = TransitionMatrix::full(2).unwrap();
        assert_eq!(admissible_words(&full2, 2).len(), 4);
        assert_eq!(admissible_words(&f(), 0), alloc::vec![Vec::<u8>::new()]);
    }

    #[test]
    fn printed_word_indices() {
        assert_eq!(word_index(&f(), &[2, 1]), Ok(3));
        assert_eq!(word_index(&f(), &[1]), Ok(1));
        assert_eq!(word_index(&f(), &[1, 1, 1]), Ok(1));
        assert_eq!(word_index(&f(), &[2, 2]), Err(WordError::NotAdmissible));
    }

    #[test]
    fn word_index_inverts_enumeration() {
        for l in 0..=8 {
            for (k, w) in admissible_words(&f(), l).iter().enumerate() {
                assert_eq!(word_index(&f(), w), Ok(k + 1));
            }
        }
    }

    #[test]
    fn counts_are_fibonacci() {
        assert_eq!(count_words(&f(), 4), 8);
        assert_eq!(count_words(&f(), 0), 1);
        // independent enumeration oracle for l = 10
        assert_eq!(admissible_words(&f(), 10).len(), 144);
        assert_eq!(count_words(&f(), 10), 144);
        for l in 0..=20 {
            let m = count_words(&f(), l);
            assert_eq!(BigUint::from(m), fibonacci(l + 2).unwrap(), "l = {l}");
        }
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(1).unwrap(), BigUint::from(1u32));
        assert_eq!(fibonacci(2).unwrap(), BigUint::from(1u32));
        assert_eq!(fibonacci(7).unwrap(), BigUint::from(13u32));
        assert!(fibonacci(0).is_err());
    }

    #[test]
    fn prefix_closure() {
        for l in 1..=8 {
            for w in admissible_words(&f(), l) {
                assert!(is_markov_admissible(&f(), &w[..l - 1]));
            }
        }
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&f()));
        assert!(is_irreducible(&TransitionMatrix::full(3).unwrap()));
        let id2 = TransitionMatrix::new(alloc::vec![
            alloc::vec![true, false],
            alloc::vec![false, true]
        ])
        .unwrap();
        assert!(!is_irreducible(&id2));
    }

    #[test]
    fn condition_i() {
        assert_eq!(satisfies_condition_i(&f()), Ok(true));
        assert_eq!(satisfies_condition_i(&TransitionMatrix::full(2).unwrap()), Ok(true));
        let cyc3 = TransitionMatrix::new(alloc::vec![
            alloc::vec![false, true, false],
            alloc::vec![false, false, true],
            alloc::vec![true, false, false],
        ])
        .unwrap();
        assert_eq!(satisfies_condition_i(&cyc3), Ok(false));
        let id2 = TransitionMatrix::new(alloc::vec![
            alloc::vec![true, false],
            alloc::vec![false, true]
        ])
        .unwrap();
        assert_eq!(satisfies_condition_i(&id2), Err(SpectralError::Reducible));
    }

    #[test]
    fn perron_values() {
        let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
        let lam = perron_eigenvalue(&f()).unwrap();
        assert!((lam - golden).abs() < 1e-9);
        assert!((lam * lam - lam - 1.0).abs() < 1e-8);
        let two = perron_eigenvalue(&TransitionMatrix::full(2).unwrap()).unwrap();
        assert!((two - 2.0).abs() < 1e-10);
        let one = perron_eigenvalue(&TransitionMatrix::full(1).unwrap()).unwrap();
        assert!((one - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_zero_rows_and_columns() {
        assert_eq!(
            TransitionMatrix::new(alloc::vec![
                alloc::vec![false, false],
                alloc::vec![true, true]
            ]),
            Err(MatrixError::ZeroRow(0))
        );
        assert_eq!(
            TransitionMatrix::new(alloc::vec![
                alloc::vec![true, false],
                alloc::vec![true, false]
            ]),
            Err(MatrixError::ZeroColumn(1))
        );
    }
}
