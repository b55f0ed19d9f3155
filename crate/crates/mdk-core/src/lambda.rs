//! The Cantor-horizon lambda-graph system of `D_A` and its symbolic
//! matrix system.
//!
//! Vertices at level `l` are the admissible Markov words of length `l`
//! over the closing symbols, in lexicographic order. Edges:
//!
//! * `alpha(j)` runs from the word `w` at level `l` to `j.w` at level
//!   `l+1` whenever `j.w` is admissible;
//! * `beta(j)` runs from `j.u` at level `l` to every admissible word of
//!   length `l+1` whose length-`(l-1)` prefix is `u` and whose first
//!   letter `i` has `A(j, i) = 1` (the letter condition only bites for
//!   `l <= 1`; for longer sources it is implied by admissibility);
//! * at level 0 the base vertex has an `alpha(j)` edge to `(j)` for every
//!   `j` and a `beta(j)` edge to `(i)` whenever `A(j, i) = 1`.
//!
//! The `iota` map deletes the rightmost letter. The fibonacci-case
//! recursions of the symbolic matrix system (`I`, `S`-blocks, and the
//! block formula for `M`) are provided alongside and are pinned to the
//! graph-derived matrices by tests.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::dyck::DyckSymbol;
use crate::intmat::IntMat;
use crate::markov::{self, MarkovWord, TransitionMatrix};

/// Refuse to build levels with more vertices than this.
pub const MEMORY_GUARD: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaError {
    TooManyVertices { level: usize, count: usize },
    LevelOutOfRange { requested: usize, max_level: usize },
}

impl fmt::Display for LambdaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaError::TooManyVertices { level, count } => {
                write!(f, "level {level} has {count} vertices, above the guard {MEMORY_GUARD}")
            }
            LambdaError::LevelOutOfRange { requested, max_level } => {
                write!(f, "level {requested} not built; increase max_level (currently {max_level})")
            }
        }
    }
}

/// Vertex handle: level plus position (0-based) in the lexicographic
/// vertex list of that level. The paper's ordinal is `index + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct VertexRef {
    pub level: usize,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabeledEdge {
    /// Source index within level `l`.
    pub source: usize,
    /// Target index within level `l+1`.
    pub target: usize,
    pub label: DyckSymbol,
}

#[derive(Clone)]
pub struct LambdaGraphSystem {
    a: TransitionMatrix,
    max_level: usize,
    /// `levels[l]` = admissible words of length `l`, lex order.
    levels: Vec<Vec<MarkovWord>>,
    /// `edges[l]` = edge set from level `l` to `l+1`.
    edges: Vec<Vec<LabeledEdge>>,
    /// `iota[l][j]` = index at level `l` of the truncation of vertex `j`
    /// at level `l+1`.
    iota: Vec<Vec<usize>>,
}

pub fn build_cantor_horizon(
    a: &TransitionMatrix,
    max_level: usize,
) -> Result<LambdaGraphSystem, LambdaError> {
    let mut levels: Vec<Vec<MarkovWord>> = Vec::with_capacity(max_level + 1);
    for l in 0..=max_level {
        let count = markov::count_words(a, l);
        if count > MEMORY_GUARD {
            return Err(LambdaError::TooManyVertices { level: l, count });
        }
        levels.push(markov::admissible_words(a, l));
    }

    let mut edges: Vec<Vec<LabeledEdge>> = Vec::with_capacity(max_level);
    let mut iota: Vec<Vec<usize>> = Vec::with_capacity(max_level);
    for l in 0..max_level {
        let target_index: BTreeMap<&[u8], usize> =
            levels[l + 1].iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let mut level_edges = Vec::new();

        if l == 0 {
            for j in 1..=a.size() as u8 {
                let t = target_index[&[j][..]];
                level_edges.push(LabeledEdge { source: 0, target: t, label: DyckSymbol::alpha(j) });
                for i in 1..=a.size() as u8 {
                    if a.allows(j, i) {
                        let t = target_index[&[i][..]];
                        level_edges.push(LabeledEdge {
                            source: 0,
                            target: t,
                            label: DyckSymbol::beta(j),
                        });
                    }
                }
            }
        } else {
            // group targets by their length-(l-1) prefix
            let mut by_prefix: BTreeMap<&[u8], Vec<usize>> = BTreeMap::new();
            for (t, w) in levels[l + 1].iter().enumerate() {
                by_prefix.entry(&w[..l - 1]).or_default().push(t);
            }
            for (s, w) in levels[l].iter().enumerate() {
                for j in 1..=a.size() as u8 {
                    if a.allows(j, w[0]) {
                        let mut jw = Vec::with_capacity(l + 1);
                        jw.push(j);
                        jw.extend_from_slice(w);
                        let t = target_index[&jw[..]];
                        level_edges.push(LabeledEdge {
                            source: s,
                            target: t,
                            label: DyckSymbol::alpha(j),
                        });
                    }
                }
                let j = w[0];
                if let Some(targets) = by_prefix.get(&w[1..]) {
                    for &t in targets {
                        if a.allows(j, levels[l + 1][t][0]) {
                            level_edges.push(LabeledEdge {
                                source: s,
                                target: t,
                                label: DyckSymbol::beta(j),
                            });
                        }
                    }
                }
            }
        }
        edges.push(level_edges);

        let parent_index: BTreeMap<&[u8], usize> =
            levels[l].iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        iota.push(levels[l + 1].iter().map(|w| parent_index[&w[..l]]).collect());
    }

    Ok(LambdaGraphSystem { a: a.clone(), max_level, levels, edges, iota })
}

impl LambdaGraphSystem {
    pub fn matrix(&self) -> &TransitionMatrix {
        &self.a
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn vertex_count(&self, l: usize) -> usize {
        self.levels[l].len()
    }

    pub fn vertex_word(&self, v: VertexRef) -> &[u8] {
        &self.levels[v.level][v.index]
    }

    pub fn level_words(&self, l: usize) -> &[MarkovWord] {
        &self.levels[l]
    }

    pub fn level_edges(&self, l: usize) -> &[LabeledEdge] {
        &self.edges[l]
    }

    /// The map `iota_{l,l+1}` as index lookup.
    pub fn iota_of(&self, v: VertexRef) -> VertexRef {
        assert!(v.level >= 1);
        VertexRef { level: v.level - 1, index: self.iota[v.level - 1][v.index] }
    }

    /// 0/1 matrix of `iota_{l,l+1}`: entry `(i, j)` is 1 iff the
    /// truncation of `v_j^{l+1}` is `v_i^l`.
    pub fn iota_matrix(&self, l: usize) -> Result<IntMat, LambdaError> {
        self.check_level(l + 1)?;
        let mut m = IntMat::zero(self.vertex_count(l), self.vertex_count(l + 1));
        for (j, &i) in self.iota[l].iter().enumerate() {
            m.set(i, j, BigInt::one());
        }
        Ok(m)
    }

    /// The pair `(M_{l,l+1}, I_{l,l+1})` read off the graph.
    pub fn symbolic_matrix_pair(&self, l: usize) -> Result<(SymbolicMatrix, IntMat), LambdaError> {
        self.check_level(l + 1)?;
        let mut m = SymbolicMatrix::empty(self.vertex_count(l), self.vertex_count(l + 1));
        for e in &self.edges[l] {
            m.push_symbol(e.source, e.target, e.label);
        }
        Ok((m, self.iota_matrix(l)?))
    }

    fn check_level(&self, l: usize) -> Result<(), LambdaError> {
        if l > self.max_level {
            return Err(LambdaError::LevelOutOfRange { requested: l, max_level: self.max_level });
        }
        Ok(())
    }

    /// True iff a path labeled `w` starts at `start`.
    pub fn path_accepts(&self, start: VertexRef, w: &[DyckSymbol]) -> Result<bool, LambdaError> {
        self.check_level(start.level + w.len())?;
        let mut frontier = alloc::vec![false; self.vertex_count(start.level)];
        frontier[start.index] = true;
        Ok(self.run_frontier(start.level, frontier, w))
    }

    /// True iff a path labeled `w` starts at some vertex of level at most
    /// `search_bound`.
    pub fn some_path_accepts(&self, w: &[DyckSymbol], search_bound: usize) -> bool {
        let bound = core::cmp::min(search_bound, self.max_level.saturating_sub(w.len()));
        (0..=bound).any(|l0| {
            let frontier = alloc::vec![true; self.vertex_count(l0)];
            self.run_frontier(l0, frontier, w)
        })
    }

    fn run_frontier(&self, start_level: usize, mut frontier: Vec<bool>, w: &[DyckSymbol]) -> bool {
        let mut level = start_level;
        for &s in w {
            let mut next = alloc::vec![false; self.vertex_count(level + 1)];
            let mut any = false;
            for e in &self.edges[level] {
                if e.label == s && frontier[e.source] {
                    next[e.target] = true;
                    any = true;
                }
            }
            if !any {
                return false;
            }
            frontier = next;
            level += 1;
        }
        true
    }
}

/// Multi-start frontier tracker for incremental (shared-prefix) oracle
/// evaluation: one frontier per start level `0..=search_bound`, all
/// advanced one symbol at a time.
#[derive(Clone)]
pub struct OracleFrontiers {
    depth: usize,
    frontiers: Vec<Option<Vec<bool>>>,
}

impl OracleFrontiers {
    pub fn new(system: &LambdaGraphSystem, search_bound: usize) -> Self {
        let frontiers = (0..=search_bound)
            .map(|l0| Some(alloc::vec![true; system.vertex_count(l0)]))
            .collect();
        OracleFrontiers { depth: 0, frontiers }
    }

    pub fn advance(&mut self, system: &LambdaGraphSystem, s: DyckSymbol) {
        for (l0, slot) in self.frontiers.iter_mut().enumerate() {
            let frontier = match slot {
                Some(f) => f,
                None => continue,
            };
            let level = l0 + self.depth;
            let mut next = alloc::vec![false; system.vertex_count(level + 1)];
            let mut any = false;
            for e in &system.edges[level] {
                if e.label == s && frontier[e.source] {
                    next[e.target] = true;
                    any = true;
                }
            }
            *slot = if any { Some(next) } else { None };
        }
        self.depth += 1;
    }

    /// Some labeled path with the consumed label sequence exists.
    pub fn accepts(&self) -> bool {
        self.frontiers.iter().any(|f| f.is_some())
    }
}

// ---------------------------------------------------------------------
// Symbolic matrices
// ---------------------------------------------------------------------

/// Matrix whose entries are formal sums (multisets) of symbols.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<DyckSymbol>>,
}

impl SymbolicMatrix {
    pub fn empty(rows: usize, cols: usize) -> Self {
        SymbolicMatrix { rows, cols, entries: alloc::vec![Vec::new(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &[DyckSymbol] {
        &self.entries[i * self.cols + j]
    }

    pub fn push_symbol(&mut self, i: usize, j: usize, s: DyckSymbol) {
        let e = &mut self.entries[i * self.cols + j];
        let pos = e.partition_point(|&x| x <= s);
        e.insert(pos, s);
    }

    fn extend_entry(&mut self, i: usize, j: usize, symbols: &[DyckSymbol], copies: usize) {
        for _ in 0..copies {
            for &s in symbols {
                self.push_symbol(i, j, s);
            }
        }
    }

    pub fn hstack(&self, right: &SymbolicMatrix) -> SymbolicMatrix {
        assert_eq!(self.rows, right.rows);
        let mut out = SymbolicMatrix::empty(self.rows, self.cols + right.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.extend_entry(i, j, self.get(i, j), 1);
            }
            for j in 0..right.cols {
                out.extend_entry(i, self.cols + j, right.get(i, j), 1);
            }
        }
        out
    }

    pub fn vstack(&self, below: &SymbolicMatrix) -> SymbolicMatrix {
        assert_eq!(self.cols, below.cols);
        let mut out = SymbolicMatrix::empty(self.rows + below.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.extend_entry(i, j, self.get(i, j), 1);
            }
        }
        for i in 0..below.rows {
            for j in 0..self.cols {
                out.extend_entry(self.rows + i, j, below.get(i, j), 1);
            }
        }
        out
    }

    pub fn add(&self, other: &SymbolicMatrix) -> SymbolicMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.extend_entry(i, j, other.get(i, j), 1);
            }
        }
        out
    }

    /// Diagonal matrix with every diagonal entry the single symbol `a`.
    pub fn diagonal(a: DyckSymbol, n: usize) -> SymbolicMatrix {
        let mut out = SymbolicMatrix::empty(n, n);
        for i in 0..n {
            out.push_symbol(i, i, a);
        }
        out
    }

    /// Entrywise count of symbols: the specialization sending every
    /// symbol to 1.
    pub fn specialize_to_counts(&self) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| BigInt::from(self.get(i, j).len()))
    }
}

impl fmt::Debug for SymbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymbolicMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " | ")?;
                }
                let e = self.get(i, j);
                if e.is_empty() {
                    write!(f, ".")?;
                } else {
                    for (k, s) in e.iter().enumerate() {
                        if k > 0 {
                            write!(f, "+")?;
                        }
                        write!(f, "{s}")?;
                    }
                }
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `I * M` with `I` a nonnegative integer matrix: formal sums scale by
/// multiplicity.
pub fn int_times_symbolic(i: &IntMat, m: &SymbolicMatrix) -> SymbolicMatrix {
    assert_eq!(i.cols(), m.rows());
    let mut out = SymbolicMatrix::empty(i.rows(), m.cols());
    for r in 0..i.rows() {
        for k in 0..i.cols() {
            let c = i.get(r, k);
            if c.is_zero() {
                continue;
            }
            let copies = c.to_usize().expect("nonnegative small coefficient");
            for j in 0..m.cols() {
                out.extend_entry(r, j, m.get(k, j), copies);
            }
        }
    }
    out
}

/// `M * I` with `I` a nonnegative integer matrix.
pub fn symbolic_times_int(m: &SymbolicMatrix, i: &IntMat) -> SymbolicMatrix {
    assert_eq!(m.cols(), i.rows());
    let mut out = SymbolicMatrix::empty(m.rows(), i.cols());
    for r in 0..m.rows() {
        for k in 0..m.cols() {
            for j in 0..i.cols() {
                let c = i.get(k, j);
                if c.is_zero() {
                    continue;
                }
                let copies = c.to_usize().expect("nonnegative small coefficient");
                out.extend_entry(r, j, m.get(r, k), copies);
            }
        }
    }
    out
}

/// The relation `I_{l,l+1} M_{l+1,l+2} = M_{l,l+1} I_{l+1,l+2}` on
/// explicit matrices, as symbolic (multiset) equality.
pub fn symbolic_intertwining_holds(
    i_l: &IntMat,
    m_l: &SymbolicMatrix,
    i_next: &IntMat,
    m_next: &SymbolicMatrix,
) -> bool {
    int_times_symbolic(i_l, m_next) == symbolic_times_int(m_l, i_next)
}

/// `verify_intertwining` on a built system.
pub fn verify_intertwining(system: &LambdaGraphSystem, l: usize) -> Result<bool, LambdaError> {
    let (m_l, i_l) = system.symbolic_matrix_pair(l)?;
    let (m_next, i_next) = system.symbolic_matrix_pair(l + 1)?;
    Ok(symbolic_intertwining_holds(&i_l, &m_l, &i_next, &m_next))
}

// ---------------------------------------------------------------------
// Fibonacci-case recursions for (M, I)
// ---------------------------------------------------------------------

/// `m(l) = f_{l+2}` for the Fibonacci matrix, with `m(-1) = 1`.
pub fn fib_m(l: isize) -> usize {
    if l == -1 {
        return 1;
    }
    assert!(l >= 0);
    let f = markov::fibonacci(l as usize + 2).expect("positive index");
    f.to_usize().expect("level within guard")
}

/// `I_{l,l+1}` for the Fibonacci matrix by the block recursion
/// `I_{l+2,l+3} = diag(I_{l+1,l+2}, I_{l,l+1})`.
pub fn i_matrix_recursion(l: usize) -> IntMat {
    match l {
        0 => IntMat::from_rows(&[&[1, 1]]),
        1 => IntMat::from_rows(&[&[1, 1, 0], &[0, 0, 1]]),
        _ => i_matrix_recursion(l - 1).direct_sum(&i_matrix_recursion(l - 2)),
    }
}

/// `S_l(a)`, an `m(l-1) x m(l+1)` matrix, by the recursion with seeds
/// `S_0(a) = [a, a]` and `S_1(a) = [a, a, a]`.
pub fn s_block(a: DyckSymbol, l: usize) -> SymbolicMatrix {
    match l {
        0 => {
            let mut m = SymbolicMatrix::empty(1, 2);
            m.push_symbol(0, 0, a);
            m.push_symbol(0, 1, a);
            m
        }
        1 => {
            let mut m = SymbolicMatrix::empty(1, 3);
            for j in 0..3 {
                m.push_symbol(0, j, a);
            }
            m
        }
        _ => {
            let top = s_block(a, l - 1);
            let bottom = s_block(a, l - 2);
            let ur = SymbolicMatrix::empty(fib_m(l as isize - 2), fib_m(l as isize - 1));
            let ll = SymbolicMatrix::empty(fib_m(l as isize - 3), fib_m(l as isize));
            top.hstack(&ur).vstack(&ll.hstack(&bottom))
        }
    }
}

/// `M_{l,l+1}` for the Fibonacci matrix by the block formula: the
/// `S`-block summand covers closing-symbol transitions, the diagonal
/// `alpha` summand covers opening-symbol transitions.
pub fn m_matrix_formula(l: usize) -> SymbolicMatrix {
    let a1 = DyckSymbol::alpha(1);
    let a2 = DyckSymbol::alpha(2);
    let b1 = DyckSymbol::beta(1);
    let b2 = DyckSymbol::beta(2);
    if l == 0 {
        let mut m = SymbolicMatrix::empty(1, 2);
        m.push_symbol(0, 0, a1);
        m.push_symbol(0, 0, b1);
        m.push_symbol(0, 0, b2);
        m.push_symbol(0, 1, a2);
        m.push_symbol(0, 1, b1);
        return m;
    }
    let li = l as isize;
    let beta_part = {
        let top = s_block(b1, l);
        let bottom = s_block(b2, l - 1).hstack(&SymbolicMatrix::empty(fib_m(li - 2), fib_m(li - 1)));
        top.vstack(&bottom)
    };
    let alpha_part = {
        let left = SymbolicMatrix::diagonal(a1, fib_m(li));
        let right = SymbolicMatrix::diagonal(a2, fib_m(li - 1))
            .vstack(&SymbolicMatrix::empty(fib_m(li - 2), fib_m(li - 1)));
        left.hstack(&right)
    };
    beta_part.add(&alpha_part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::DyckSymbol;

    fn f_system(max_level: usize) -> LambdaGraphSystem {
        build_cantor_horizon(&TransitionMatrix::fibonacci(), max_level).unwrap()
    }

    fn a(i: u8) -> DyckSymbol {
        DyckSymbol::alpha(i)
    }

    fn b(i: u8) -> DyckSymbol {
        DyckSymbol::beta(i)
    }

    fn sym(rows: usize, cols: usize, entries: &[&[&[DyckSymbol]]]) -> SymbolicMatrix {
        let mut m = SymbolicMatrix::empty(rows, cols);
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                for &s in e.iter() {
                    m.push_symbol(i, j, s);
                }
            }
        }
        m
    }

    #[test]
    fn vertex_listing_matches_paper() {
        let sys = f_system(4);
        assert_eq!(
            (0..=4).map(|l| sys.vertex_count(l)).collect::<Vec<_>>(),
            alloc::vec![1, 2, 3, 5, 8]
        );
        let v3: Vec<&[u8]> = sys.level_words(3).iter().map(|w| w.as_slice()).collect();
        assert_eq!(
            v3,
            alloc::vec![
                &[1, 1, 1][..],
                &[1, 1, 2],
                &[1, 2, 1],
                &[2, 1, 1],
                &[2, 1, 2]
            ]
        );
        let full2 =
            build_cantor_horizon(&TransitionMatrix::full(2).unwrap(), 3).unwrap();
        assert_eq!(
            (0..=3).map(|l| full2.vertex_count(l)).collect::<Vec<_>>(),
            alloc::vec![1, 2, 4, 8]
        );
    }

    #[test]
    fn printed_m_01_and_m_12() {
        let sys = f_system(2);
        let (m01, i01) = sys.symbolic_matrix_pair(0).unwrap();
        assert_eq!(m01, sym(1, 2, &[&[&[a(1), b(1), b(2)], &[a(2), b(1)]]]));
        assert_eq!(i01, IntMat::from_rows(&[&[1, 1]]));

        let (m12, i12) = sys.symbolic_matrix_pair(1).unwrap();
        assert_eq!(
            m12,
            sym(
                2,
                3,
                &[
                    &[&[a(1), b(1)], &[b(1)], &[a(2), b(1)]],
                    &[&[b(2)], &[a(1), b(2)], &[]],
                ]
            )
        );
        assert_eq!(i12, IntMat::from_rows(&[&[1, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn graph_matches_recursions_up_to_level_10() {
        let sys = f_system(11);
        for l in 0..=10 {
            let (m, i) = sys.symbolic_matrix_pair(l).unwrap();
            assert_eq!(i, i_matrix_recursion(l), "I at l = {l}");
            assert_eq!(m, m_matrix_formula(l), "M at l = {l}");
        }
    }

    #[test]
    fn s_block_printed_shapes() {
        for (l, rows, cols) in [(2usize, 2usize, 5usize), (3, 3, 8), (4, 5, 13)] {
            let s = s_block(a(1), l);
            assert_eq!((s.rows(), s.cols()), (rows, cols));
        }
        // printed S_2(a): [[a a a . .], [. . . a a]]
        let s2 = s_block(b(1), 2);
        let expect = sym(
            2,
            5,
            &[
                &[&[b(1)], &[b(1)], &[b(1)], &[], &[]],
                &[&[], &[], &[], &[b(1)], &[b(1)]],
            ],
        );
        assert_eq!(s2, expect);
    }

    #[test]
    fn iota_properties() {
        let sys = f_system(8);
        for l in 0..8 {
            let i = sys.iota_matrix(l).unwrap();
            // surjective: every row hits something; function: column sums 1
            for r in 0..i.rows() {
                assert!((0..i.cols()).any(|c| !i.get(r, c).is_zero()));
            }
            for c in 0..i.cols() {
                let sum: BigInt = (0..i.rows()).map(|r| i.get(r, c).clone()).sum();
                assert_eq!(sum, BigInt::one());
            }
        }
    }

    #[test]
    fn every_vertex_connected() {
        for m in [TransitionMatrix::fibonacci(), TransitionMatrix::full(2).unwrap()] {
            let sys = build_cantor_horizon(&m, 6).unwrap();
            for l in 1..=5 {
                for v in 0..sys.vertex_count(l) {
                    assert!(sys.edges[l].iter().any(|e| e.source == v), "out at {l}/{v}");
                    assert!(sys.edges[l - 1].iter().any(|e| e.target == v), "in at {l}/{v}");
                }
            }
        }
    }

    #[test]
    fn intertwining_holds_on_graph() {
        let sys = f_system(8);
        for l in 0..=6 {
            assert!(verify_intertwining(&sys, l).unwrap(), "l = {l}");
        }
        let full2 = build_cantor_horizon(&TransitionMatrix::full(2).unwrap(), 8).unwrap();
        for l in 0..=6 {
            assert!(verify_intertwining(&full2, l).unwrap(), "full:2 l = {l}");
        }
    }

    #[test]
    fn corrupted_edges_break_intertwining() {
        let sys = f_system(4);
        let (m1, i1) = sys.symbolic_matrix_pair(1).unwrap();
        let (mut m2, i2) = sys.symbolic_matrix_pair(2).unwrap();
        m2.push_symbol(0, 0, b(2));
        assert!(!symbolic_intertwining_holds(&i1, &m1, &i2, &m2));
    }

    #[test]
    fn path_acceptance_examples() {
        let sys = f_system(6);
        let base = VertexRef { level: 0, index: 0 };
        assert!(sys.path_accepts(base, &[b(1), b(2)]).unwrap());
        assert!(!sys.path_accepts(base, &[b(2), b(2)]).unwrap());
        assert!(sys.path_accepts(base, &[]).unwrap());
        assert!(matches!(
            sys.path_accepts(base, &[b(1); 9]),
            Err(LambdaError::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn memory_guard_triggers() {
        let full3 = TransitionMatrix::full(3).unwrap();
        assert!(matches!(
            build_cantor_horizon(&full3, 14),
            Err(LambdaError::TooManyVertices { .. })
        ));
    }
}
