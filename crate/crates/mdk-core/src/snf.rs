//! Smith and Hermite normal forms over the integers.
//!
//! The Smith decomposition keeps both transforms and their inverses so
//! that cokernel presentations can translate between ambient and normal
//! coordinates exactly. Pivoting is deterministic: the nonzero entry of
//! minimal absolute value wins, ties broken by smallest `(row, col)`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::intmat::IntMat;

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal with the
/// divisibility chain `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMat,
    pub u_inv: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1, ..., d_r` that are nonzero (r = rank).
    pub fn nonzero_diagonal(&self) -> impl Iterator<Item = &BigInt> {
        let n = core::cmp::min(self.d.rows(), self.d.cols());
        (0..n).map(|i| self.d.get(i, i)).filter(|x| !x.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.nonzero_diagonal().count()
    }
}

struct Worker {
    a: IntMat,
    u: IntMat,
    u_inv: IntMat,
    v: IntMat,
    v_inv: IntMat,
}

impl Worker {
    fn new(m: &IntMat) -> Self {
        Worker {
            a: m.clone(),
            u: IntMat::identity(m.rows()),
            u_inv: IntMat::identity(m.rows()),
            v: IntMat::identity(m.cols()),
            v_inv: IntMat::identity(m.cols()),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// row_i += q * row_k
    fn add_row(&mut self, i: usize, k: usize, q: &BigInt) {
        self.a.add_row_multiple(i, k, q);
        self.u.add_row_multiple(i, k, q);
        let nq = -q;
        self.u_inv.add_col_multiple(k, i, &nq);
    }

    /// col_j += q * col_k
    fn add_col(&mut self, j: usize, k: usize, q: &BigInt) {
        self.a.add_col_multiple(j, k, q);
        self.v.add_col_multiple(j, k, q);
        let nq = -q;
        self.v_inv.add_row_multiple(k, j, &nq);
    }
}

/// Quotient minimizing the absolute value of the remainder (ties go to the
/// quotient rounded toward zero), so elimination strictly shrinks pivots.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    let (mut q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.sign() == b.sign()) || a.is_zero() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

fn find_pivot(a: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            match &best {
                Some((b, _, _)) if *b <= ax => {}
                _ => best = Some((ax, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form(m: &IntMat) -> SmithDecomposition {
    let mut w = Worker::new(m);
    let steps = core::cmp::min(m.rows(), m.cols());
    for t in 0..steps {
        'pivot: loop {
            let (pi, pj) = match find_pivot(&w.a, t) {
                Some(p) => p,
                None => break,
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            // clear column t and row t
            let mut dirty = false;
            for i in t + 1..w.a.rows() {
                if w.a.get(i, t).is_zero() {
                    continue;
                }
                let q = -nearest_quotient(w.a.get(i, t), w.a.get(t, t));
                w.add_row(i, t, &q);
                if !w.a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..w.a.cols() {
                if w.a.get(t, j).is_zero() {
                    continue;
                }
                let q = -nearest_quotient(w.a.get(t, j), w.a.get(t, t));
                w.add_col(j, t, &q);
                if !w.a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // force divisibility: pivot must divide the remaining block
            let p = w.a.get(t, t).clone();
            for i in t + 1..w.a.rows() {
                for j in t + 1..w.a.cols() {
                    if !(w.a.get(i, j) % &p).is_zero() {
                        let one = BigInt::from(1);
                        w.add_row(t, i, &one);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if w.a.get(t, t).is_negative() {
            w.negate_row(t);
        }
    }
    let out = SmithDecomposition { u: w.u, u_inv: w.u_inv, d: w.a, v: w.v, v_inv: w.v_inv };
    debug_assert!(verify(m, &out));
    assert_eq!(&(&out.u * m) * &out.v, out.d, "SNF identity U*M*V = D failed");
    out
}

fn verify(m: &IntMat, s: &SmithDecomposition) -> bool {
    if &(&s.u * &s.u_inv) != &IntMat::identity(m.rows()) {
        return false;
    }
    if &(&s.v * &s.v_inv) != &IntMat::identity(m.cols()) {
        return false;
    }
    // divisibility chain
    let n = core::cmp::min(s.d.rows(), s.d.cols());
    let mut prev: Option<BigInt> = None;
    for i in 0..n {
        let di = s.d.get(i, i);
        if let Some(p) = &prev {
            if p.is_zero() && !di.is_zero() {
                return false;
            }
            if !p.is_zero() && !(di % p).is_zero() {
                return false;
            }
        }
        prev = Some(di.clone());
    }
    true
}

/// Row-style Hermite normal form: `h = u * m` with `u` unimodular, `h` in
/// row echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMat) -> (IntMat, IntMat) {
    let mut a = m.clone();
    let mut u = IntMat::identity(m.rows());
    let mut r = 0usize;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        // gcd elimination below row r in column c
        loop {
            let mut best: Option<(BigInt, usize)> = None;
            for i in r..a.rows() {
                let x = a.get(i, c);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                match &best {
                    Some((b, _)) if *b <= ax => {}
                    _ => best = Some((ax, i)),
                }
            }
            let (_, pi) = match best {
                Some(b) => b,
                None => break,
            };
            a.swap_rows(r, pi);
            u.swap_rows(r, pi);
            let mut done = true;
            for i in r + 1..a.rows() {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let q = -nearest_quotient(a.get(i, c), a.get(r, c));
                a.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !a.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            a.negate_row(r);
            u.negate_row(r);
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..r {
            use num_integer::Integer;
            let q = -a.get(i, c).div_floor(a.get(r, c));
            if !q.is_zero() {
                a.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
            }
        }
        r += 1;
    }
    (a, u)
}

/// Column-style Hermite normal form: `h = m * v` with `v` unimodular. The
/// columns of `h` canonically generate the column lattice of `m`.
pub fn column_hermite_normal_form(m: &IntMat) -> (IntMat, IntMat) {
    let (ht, ut) = hermite_normal_form(&m.transpose());
    (ht.transpose(), ut.transpose())
}

/// Canonical generators of the column lattice: the nonzero columns of the
/// column HNF. Two matrices span the same lattice iff these agree.
pub fn column_lattice_canonical(m: &IntMat) -> IntMat {
    let (h, _) = column_hermite_normal_form(m);
    let mut keep = alloc::vec::Vec::new();
    for j in 0..h.cols() {
        if (0..h.rows()).any(|i| !h.get(i, j).is_zero()) {
            keep.push(j);
        }
    }
    IntMat::from_fn(h.rows(), keep.len(), |i, j| h.get(i, keep[j]).clone())
}
