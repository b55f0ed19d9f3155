//! Property tests for the Smith decomposition against its algebraic
//! contract and an independent minor-gcd oracle.

use mdk_core::intmat::IntMat;
use mdk_core::snf::{column_lattice_canonical, hermite_normal_form, smith_normal_form};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arb_matrix(max_dim: usize) -> impl Strategy<Value = IntMat> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c)
            .prop_map(move |data| IntMat::from_fn(r, c, |i, j| BigInt::from(data[i * c + j])))
    })
}

/// Product of the gcds of all `k x k` minors, `k = 1..=min(r,c)`; the
/// `k`-th invariant factor is `gcd_k / gcd_{k-1}`.
fn minor_gcds(m: &IntMat) -> Vec<BigInt> {
    let (r, c) = (m.rows(), m.cols());
    let kmax = r.min(c);
    let mut out = Vec::new();
    for k in 1..=kmax {
        let mut g = BigInt::zero();
        for rows in combinations(r, k) {
            for cols in combinations(c, k) {
                let sub =
                    IntMat::from_fn(k, k, |i, j| m.get(rows[i], cols[j]).clone());
                g = g.gcd(&sub.determinant());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_decomposition_contract(m in arb_matrix(10)) {
        let dec = smith_normal_form(&m);
        // transforms are inverse pairs and unimodular
        prop_assert_eq!(&dec.u * &dec.u_inv, IntMat::identity(m.rows()));
        prop_assert_eq!(&dec.v * &dec.v_inv, IntMat::identity(m.cols()));
        prop_assert!(dec.u.is_unimodular());
        prop_assert!(dec.v.is_unimodular());
        // U M V = D
        prop_assert_eq!(&(&dec.u * &m) * &dec.v, dec.d.clone());
        // D diagonal, nonnegative, divisibility chain
        for i in 0..dec.d.rows() {
            for j in 0..dec.d.cols() {
                if i != j {
                    prop_assert!(dec.d.get(i, j).is_zero());
                }
            }
        }
        let diag: Vec<BigInt> = dec.nonzero_diagonal().cloned().collect();
        for w in diag.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(diag.iter().all(|d| *d > BigInt::zero()));
    }

    #[test]
    fn invariant_factors_match_minor_gcds(m in arb_matrix(4)) {
        let dec = smith_normal_form(&m);
        let computed: Vec<BigInt> = dec.nonzero_diagonal().cloned().collect();
        let gcds = minor_gcds(&m);
        prop_assert_eq!(computed.len(), gcds.len());
        let mut prev = BigInt::one();
        for (d, g) in computed.iter().zip(&gcds) {
            prop_assert_eq!(d * &prev, g.clone());
            prev = g.clone();
        }
    }

    #[test]
    fn hermite_form_contract(m in arb_matrix(8)) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert!(u.is_unimodular());
        prop_assert_eq!(&u * &m, h.clone());
        // pivots positive, strictly moving right, entries above reduced
        let mut last_col = None;
        for i in 0..h.rows() {
            let pivot = (0..h.cols()).find(|&j| !h.get(i, j).is_zero());
            if let Some(j) = pivot {
                if let Some(lc) = last_col {
                    prop_assert!(j > lc);
                }
                last_col = Some(j);
                let p = h.get(i, j);
                prop_assert!(*p > BigInt::zero());
                for r in 0..i {
                    let e = h.get(r, j);
                    prop_assert!(*e >= BigInt::zero() && e < p);
                }
            }
        }
    }

    #[test]
    fn column_lattice_invariant_under_column_ops(m in arb_matrix(6), seed in any::<u64>()) {
        // shuffle the columns through random unimodular operations
        let mut t = m.clone();
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for _ in 0..12 {
            let j = next() % t.cols();
            let k = next() % t.cols();
            match next() % 3 {
                0 => t.swap_cols(j, k),
                1 => t.negate_col(j),
                _ => {
                    if j != k {
                        let q = BigInt::from((next() % 7) as i64 - 3);
                        t.add_col_multiple(j, k, &q);
                    }
                }
            }
        }
        prop_assert_eq!(column_lattice_canonical(&m), column_lattice_canonical(&t));
    }
}
