//! The Fibonacci reduction chain: the level maps `A_{l+1,l}` of the
//! K0 tower and their successive column reductions
//! `A -> L -> M -> N -> H`, ending in the stationary description through
//! the vectors `R_l` and the maps `J_{l+1,l}`.
//!
//! Everything in this module is specific to the Fibonacci transition
//! matrix; the general-purpose tower lives in [`crate::tower`].
//!
//! Conventions. `m(l)` denotes the vertex count at level `l` (a shifted
//! Fibonacci number, with `m(-1) = 1`). All `foo_matrix(l)` functions
//! return the map *from* level `l` *into* level `l+1`, so e.g.
//! `a_matrix(1)` is the `m(2) x m(1)` matrix `A_{2,1}`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::group::AbelianGroupPresentation;
use crate::intmat::IntMat;
use crate::lambda::{fib_m, i_matrix_recursion, m_matrix_formula};
use crate::snf;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainError {
    LevelTooSmall { level: usize, min: usize },
    /// `L_{l+1,l}` turned out not to be column equivalent to
    /// `A_{l+1,l}` over the integers.
    ColumnEquivalenceFailed { level: usize, detail: String },
    ShapeViolation { level: usize, detail: String },
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::LevelTooSmall { level, min } => {
                write!(f, "level {level} below the smallest defined level {min}")
            }
            ChainError::ColumnEquivalenceFailed { level, detail } => {
                write!(f, "column equivalence failed at level {level}: {detail}")
            }
            ChainError::ShapeViolation { level, detail } => {
                write!(f, "unexpected shape at level {level}: {detail}")
            }
        }
    }
}

fn zeros(r: isize, c: isize) -> IntMat {
    IntMat::zero(fib_m(r), fib_m(c))
}

/// `A_{l+1,l} = M_{l,l+1}^t - I_{l,l+1}^t`, the `m(l+1) x m(l)` level
/// map of the K0 tower.
pub fn a_matrix(l: usize) -> IntMat {
    let m = m_matrix_formula(l).specialize_to_counts();
    let i = i_matrix_recursion(l);
    &m.transpose() - &i.transpose()
}

/// The four blocks `(UL, UR, LL, LR)` of `A_{l+1,l}`, split after row
/// `m(l)` and column `m(l-1)`.
pub fn a_blocks(l: usize) -> (IntMat, IntMat, IntMat, IntMat) {
    let a = a_matrix(l);
    split_blocks(&a, l)
}

fn split_blocks(a: &IntMat, l: usize) -> (IntMat, IntMat, IntMat, IntMat) {
    let li = l as isize;
    let (r0, c0) = (fib_m(li), fib_m(li - 1));
    let (r1, c1) = (a.rows() - r0, a.cols() - c0);
    (
        a.block(0, 0, r0, c0),
        a.block(0, c0, r0, c1),
        a.block(r0, 0, r1, c0),
        a.block(r0, c0, r1, c1),
    )
}

/// `B_l`: the upper `m(l) x m(l)` half of `A_{l+1,l}`.
pub fn b_matrix(l: usize) -> IntMat {
    let a = a_matrix(l);
    a.block(0, 0, fib_m(l as isize), a.cols())
}

/// The correction matrices `C_{l+1,l}` (`m(l+1) x m(l)`): explicit for
/// `l <= 5`, then by the six-block recursion.
pub fn c_matrix(l: usize) -> IntMat {
    match l {
        0 => IntMat::from_rows(&[&[2], &[2]]),
        1 => IntMat::from_rows(&[&[2, 0], &[2, 0], &[2, 0]]),
        2 => IntMat::from_rows(&[&[1i64, 1, 0][..]; 5]),
        3 => {
            let top = IntMat::from_rows(&[&[1i64, 0, 1, 0, 0][..]; 5]);
            let bottom = IntMat::from_rows(&[&[0i64, 1, 1, 0, 0][..]; 3]);
            top.vstack(&bottom)
        }
        4 => {
            let r1 = IntMat::from_rows(&[&[1i64, 0, 0, 1, 0, 0, 0, 0][..]; 5]);
            let r2 = IntMat::from_rows(&[&[0i64, 1, 0, 1, 0, 0, 0, 0][..]; 3]);
            let r3 = IntMat::from_rows(&[&[0i64, 0, 1, 0, 1, 0, 0, 0][..]; 5]);
            r1.vstack(&r2).vstack(&r3)
        }
        5 => {
            let e = |a: usize, b: usize, n: usize| {
                IntMat::from_fn(n, 13, |_, j| {
                    if j + 1 == a || j + 1 == b {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
            };
            e(1, 6, 5).vstack(&e(2, 6, 3)).vstack(&e(3, 7, 5)).vstack(&e(4, 8, 5)).vstack(&e(5, 8, 3))
        }
        _ => {
            let li = l as isize;
            let (ul1, um1, ll1, lm1) = c_six_blocks(l - 1);
            // upper blocks: stack the previous left/mid columns, pad by
            // zero columns; the right third is zero.
            let ul = ul1.vstack(&ll1).hstack(&zeros(li, li - 4));
            let um = um1.vstack(&lm1).hstack(&zeros(li, li - 5));
            let ur = zeros(li, li - 2);
            let (ul2, um2, ll2, lm2) = c_six_blocks(l - 2);
            let ll = zeros(li - 1, li - 3).hstack(&ul2.vstack(&ll2));
            let lm = zeros(li - 1, li - 4).hstack(&um2.vstack(&lm2));
            let lr = zeros(li - 1, li - 2);
            ul.hstack(&um).hstack(&ur).vstack(&ll.hstack(&lm).hstack(&lr))
        }
    }
}

/// The four recursion-relevant blocks `(UL, UM, LL, LM)` of
/// `C_{l+1,l}`; the right third is zero.
fn c_six_blocks(l: usize) -> (IntMat, IntMat, IntMat, IntMat) {
    let c = c_matrix(l);
    let li = l as isize;
    let (r0, c0, c1) = (fib_m(li), fib_m(li - 2), fib_m(li - 3));
    let r1 = c.rows() - r0;
    (
        c.block(0, 0, r0, c0),
        c.block(0, c0, r0, c1),
        c.block(r0, 0, r1, c0),
        c.block(r0, c0, r1, c1),
    )
}

/// `L_{l+1,l}`: the column-reduced form of `A_{l+1,l}`, whose lower
/// right block absorbs the correction `C_{l-1,l-2}`.
pub fn l_matrix(l: usize) -> Result<IntMat, ChainError> {
    if l == 0 {
        return Err(ChainError::LevelTooSmall { level: 0, min: 1 });
    }
    if l == 1 {
        return Ok(IntMat::from_rows(&[&[1, 0], &[0, 2], &[2, -3]]));
    }
    let li = l as isize;
    let (ul, _, ll, _) = a_blocks(l);
    let ur = zeros(li - 1, li - 2).vstack(&b_matrix(l - 2));
    let lr = &(-&i_matrix_recursion(l - 2).transpose()) - &c_matrix(l - 2);
    Ok(ul.hstack(&ur).vstack(&ll.hstack(&lr)))
}

/// The unimodular column operation `Gamma_l` with
/// `L_{l+1,l} = A_{l+1,l} Gamma_l`, solved exactly through the Smith
/// decomposition of `A_{l+1,l}`.
pub fn gamma(l: usize) -> Result<IntMat, ChainError> {
    let a = a_matrix(l);
    let ll = l_matrix(l)?;
    let dec = snf::smith_normal_form(&a);
    let rank = dec.rank();
    if rank < a.cols() {
        return Err(ChainError::ColumnEquivalenceFailed {
            level: l,
            detail: alloc::format!("A has column rank {rank} < {}", a.cols()),
        });
    }
    // A = U^-1 D V^-1, so X solves A X = L iff X = V D^+ U L with the
    // lower rows of U L vanishing and the divisions exact.
    let ul = &dec.u * &ll;
    let mut top = IntMat::zero(a.cols(), ll.cols());
    for i in 0..a.rows() {
        for j in 0..ll.cols() {
            let e = ul.get(i, j);
            if i < rank {
                let d = dec.d.get(i, i);
                let (q, r) = num_integer::Integer::div_rem(e, d);
                if !r.is_zero() {
                    return Err(ChainError::ColumnEquivalenceFailed {
                        level: l,
                        detail: alloc::format!("entry ({i},{j}) not divisible by factor {d}"),
                    });
                }
                top.set(i, j, q);
            } else if !e.is_zero() {
                return Err(ChainError::ColumnEquivalenceFailed {
                    level: l,
                    detail: alloc::format!("L leaves the column space of A at row {i}"),
                });
            }
        }
    }
    let g = &dec.v * &top;
    if !g.is_unimodular() {
        return Err(ChainError::ColumnEquivalenceFailed {
            level: l,
            detail: String::from("solution is not unimodular"),
        });
    }
    debug_assert_eq!(&a * &g, ll);
    Ok(g)
}

/// `M_{l+1,l}`: obtained from `L_{l+1,l}` by repeatedly applying
/// `I (+) Gamma_{l-2n}` on the right, clearing the trailing `B` blocks.
pub fn m_bb(l: usize) -> Result<IntMat, ChainError> {
    let mut m = l_matrix(l)?;
    let cols = m.cols();
    let mut n = 1;
    while l >= 2 * n + 1 {
        let g = gamma(l - 2 * n)?;
        let op = IntMat::identity(cols - g.cols()).direct_sum(&g);
        m = &m * &op;
        n += 1;
    }
    verify_m_shape(&m, l)?;
    Ok(m)
}

fn verify_m_shape(m: &IntMat, l: usize) -> Result<(), ChainError> {
    let k = fib_m(l as isize);
    let fail = |detail: String| Err(ChainError::ShapeViolation { level: l, detail });
    for i in 0..k {
        for j in 0..k {
            let e = m.get(i, j);
            if i < j && !e.is_zero() {
                return fail(alloc::format!("nonzero above diagonal at ({i},{j})"));
            }
            if i == j {
                let want = if i + 1 == k { BigInt::from(2) } else { BigInt::one() };
                if *e != want {
                    return fail(alloc::format!("diagonal entry {e} at ({i},{i}), wanted {want}"));
                }
            }
        }
    }
    Ok(())
}

/// The column vector `v_l` of length `m(l-1)`: the lower part of the
/// last column of `M_{l+1,l}`.
pub fn v_vector(l: usize) -> Result<Vec<BigInt>, ChainError> {
    let m = m_bb(l)?;
    let k = fib_m(l as isize);
    Ok((k..m.rows()).map(|i| m.get(i, k - 1).clone()).collect())
}

/// The sign and suffix recursion for `v_l`: constant `+-3` head of
/// length `m(l-2)` with sign depending on `l mod 4`, and tail obtained
/// from `v_{l-2}` by moving every entry four towards the other sign.
pub fn verify_v_recursion(l: usize) -> Result<bool, ChainError> {
    if l < 3 {
        return Err(ChainError::LevelTooSmall { level: l, min: 3 });
    }
    let v = v_vector(l)?;
    let prev = v_vector(l - 2)?;
    let head = fib_m(l as isize - 2);
    let sign = if l % 4 == 1 || l % 4 == 2 { -3 } else { 3 };
    let head_ok = v[..head].iter().all(|e| *e == BigInt::from(sign));
    let hat = |u: &BigInt| if u.is_zero() || *u > BigInt::zero() { u - 4 } else { u + 4 };
    let tail_ok =
        v.len() == head + prev.len() && v[head..].iter().zip(&prev).all(|(e, p)| *e == hat(p));
    Ok(head_ok && tail_ok)
}

fn near_identity_with_column(l: usize, below: &[BigInt]) -> IntMat {
    let k = fib_m(l as isize);
    let mut m = IntMat::zero(k + below.len(), k);
    for i in 0..k {
        m.set(i, i, BigInt::one());
    }
    m.set(k - 1, k - 1, BigInt::from(2));
    for (i, e) in below.iter().enumerate() {
        m.set(k + i, k - 1, e.clone());
    }
    m
}

/// `N_{l+1,l}`: identity with final diagonal entry 2 and the vector
/// `v_l` below it.
pub fn n_matrix(l: usize) -> Result<IntMat, ChainError> {
    Ok(near_identity_with_column(l, &v_vector(l)?))
}

/// `H_{l+1,l}`: identity with final diagonal entry 2 and `-1`s below it.
pub fn h_matrix(l: usize) -> Result<IntMat, ChainError> {
    if l == 0 {
        return Err(ChainError::LevelTooSmall { level: 0, min: 1 });
    }
    let below = alloc::vec![BigInt::from(-1); fib_m(l as isize - 1)];
    Ok(near_identity_with_column(l, &below))
}

/// The relation `I^t_{l,l+1} H_{l,l-1} = H_{l+1,l} I^t_{l-1,l}` modulo
/// the relations of the target level: exactly the statement that `I^t`
/// descends to the `H`-quotients, where the K0 limit is formed.
///
/// The analogous relation for `N` holds exactly at even `l` but fails
/// (even modulo the lattice) at odd `l`, because the sign of `v_l`
/// alternates; `N` enters the chain only through the abstract
/// cokernel isomorphism, never through an induced map. The even-`l`
/// exact identity is pinned down in tests.
pub fn verify_closed_form_intertwining(l: usize) -> Result<bool, ChainError> {
    if l < 2 {
        return Err(ChainError::LevelTooSmall { level: l, min: 2 });
    }
    let it_big = i_matrix_recursion(l).transpose();
    let it_small = i_matrix_recursion(l - 1).transpose();
    let h_big = h_matrix(l)?;
    let lhs = &it_big * &h_matrix(l - 1)?;
    let rhs = &h_big * &it_small;
    let g = AbelianGroupPresentation::cokernel(&h_big);
    Ok((0..lhs.cols()).all(|j| {
        let diff: Vec<BigInt> = (0..lhs.rows()).map(|i| lhs.get(i, j) - rhs.get(i, j)).collect();
        g.is_trivial_element(&diff)
    }))
}

// ---------------------------------------------------------------------
// Stationary description: R, Q, J
// ---------------------------------------------------------------------

/// `R_l`: column of length `m(l) + 1` with head 2 and tail `-1`s.
pub fn r_vector(l: usize) -> IntMat {
    let n = fib_m(l as isize) + 1;
    IntMat::from_fn(n, 1, |i, _| if i == 0 { BigInt::from(2) } else { BigInt::from(-1) })
}

/// `I^R_{l+1,l} = 1 (+) I^t_{l,l+1}`, carrying `Z^{m(l)+1}` into
/// `Z^{m(l+1)+1}`.
pub fn i_r_matrix(l: usize) -> IntMat {
    IntMat::identity(1).direct_sum(&i_matrix_recursion(l).transpose())
}

/// The unimodular `Q_l` with `Q_l R_l = (0, -1, 0, ..., 0)^t`.
pub fn q_matrix(l: usize) -> IntMat {
    let n = fib_m(l as isize) + 1;
    IntMat::from_fn(n, n, |i, j| {
        if i == j {
            BigInt::one()
        } else if j == 1 && i == 0 {
            BigInt::from(2)
        } else if j == 1 && i >= 2 {
            BigInt::from(-1)
        } else {
            BigInt::zero()
        }
    })
}

/// `I^c_{l+1,l}`: the interior of `I_{l,l+1}^t` with its first row and
/// its first two columns stripped, an `(m(l+1)-2) x (m(l)-1)` matrix.
pub fn i_c_matrix(l: usize) -> IntMat {
    let i = i_matrix_recursion(l);
    IntMat::from_fn(i.cols() - 2, i.rows() - 1, |r, c| i.get(c + 1, r + 2).clone())
}

/// `J_{l+1,l}`: zero first row over `I^c_{l+1,l}`.
pub fn j_matrix(l: usize) -> IntMat {
    let ic = i_c_matrix(l);
    IntMat::zero(1, ic.cols()).vstack(&ic)
}

/// `1 (+) J_{l+1,l}`, carrying `Z^{m(l)}` into `Z^{m(l+1)}`.
pub fn i_tilde_matrix(l: usize) -> IntMat {
    IntMat::identity(1).direct_sum(&j_matrix(l))
}

/// The isomorphism `Z^{m(l)+1}/R_l Z -> Z^{m(l)}` realized as matrices:
/// apply `Q_l`, then delete coordinate 2 (the image of `R_l`).
pub fn phi_matrix(l: usize) -> IntMat {
    q_matrix(l).delete_row(1)
}

/// Commutativity `phi_{l+1} I^R_{l+1,l} = (1 (+) J_{l+1,l}) phi_l` as an
/// exact matrix identity.
pub fn verify_phi_square(l: usize) -> bool {
    let lhs = &phi_matrix(l + 1) * &i_r_matrix(l);
    let rhs = &i_tilde_matrix(l) * &phi_matrix(l);
    lhs == rhs
}

/// The filtration property: `J_{l+1,l}` maps vectors supported past the
/// first `g_k` coordinates to vectors supported past the first
/// `g_{k+1}` coordinates.
pub fn verify_filtration(l: usize, g: &[usize]) -> bool {
    let j = j_matrix(l);
    g.windows(2).all(|w| {
        let (gk, gk1) = (w[0], w[1]);
        if gk >= j.cols() || gk1 > j.rows() {
            return true;
        }
        (0..gk1).all(|i| (gk..j.cols()).all(|c| j.get(i, c).is_zero()))
    })
}

/// Sanity identity behind the stationary picture: the cokernel of
/// `H_{l+1,l}` is free of rank `m(l-1)`, matching `Z^{m(l-1)+1}/R Z`.
pub fn verify_h_cokernel_rank(l: usize) -> Result<bool, ChainError> {
    let h = AbelianGroupPresentation::cokernel(&h_matrix(l)?);
    let r = AbelianGroupPresentation::cokernel(&r_vector(l - 1));
    Ok(h.is_isomorphic_to(&r)
        && h.free_rank() == fib_m(l as isize - 1)
        && h.invariant_factors().is_empty())
}
