//! Dense matrices over the integers with arbitrary-precision entries.
//!
//! All K-theoretic computations in this crate go through `IntMat`; no
//! floating point is ever involved. Matrices at the levels we handle stay
//! well below a thousand rows, so dense row-major storage is used
//! throughout.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row in matrix literal");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn column(col: &[i64]) -> Self {
        Self::from_fn(col.len(), 1, |i, _| BigInt::from(col[i]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Submatrix of size `rs x cs` with upper-left corner at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rs: usize, cs: usize) -> IntMat {
        assert!(r0 + rs <= self.rows && c0 + cs <= self.cols, "block out of range");
        IntMat::from_fn(rs, cs, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn hstack(&self, right: &IntMat) -> IntMat {
        assert_eq!(self.rows, right.rows, "hstack row mismatch");
        IntMat::from_fn(self.rows, self.cols + right.cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { right.get(i, j - self.cols).clone() }
        })
    }

    pub fn vstack(&self, below: &IntMat) -> IntMat {
        assert_eq!(self.cols, below.cols, "vstack column mismatch");
        IntMat::from_fn(self.rows + below.rows, self.cols, |i, j| {
            if i < self.rows { self.get(i, j).clone() } else { below.get(i - self.rows, j).clone() }
        })
    }

    pub fn block2x2(ul: &IntMat, ur: &IntMat, ll: &IntMat, lr: &IntMat) -> IntMat {
        ul.hstack(ur).vstack(&ll.hstack(lr))
    }

    pub fn direct_sum(&self, other: &IntMat) -> IntMat {
        IntMat::block2x2(
            self,
            &IntMat::zero(self.rows, other.cols),
            &IntMat::zero(other.rows, self.cols),
            other,
        )
    }

    /// Copy of the matrix with row `i` removed.
    pub fn delete_row(&self, i: usize) -> IntMat {
        assert!(i < self.rows);
        IntMat::from_fn(self.rows - 1, self.cols, |r, c| {
            let src = if r < i { r } else { r + 1 };
            self.get(src, c).clone()
        })
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let x = -self.get(i, c).clone();
            self.set(i, c, x);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let x = -self.get(r, j).clone();
            self.set(r, j, x);
        }
    }

    /// row_i += q * row_k
    pub fn add_row_multiple(&mut self, i: usize, k: usize, q: &BigInt) {
        assert_ne!(i, k);
        for c in 0..self.cols {
            let x = self.get(i, c) + q * self.get(k, c);
            self.set(i, c, x);
        }
    }

    /// col_j += q * col_k
    pub fn add_col_multiple(&mut self, j: usize, k: usize, q: &BigInt) {
        assert_ne!(j, k);
        for r in 0..self.rows {
            let x = self.get(r, j) + q * self.get(r, k);
            self.set(r, j, x);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, x);
                }
            }
            for i in k + 1..n {
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1).clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }
}

impl<'a> Mul for &'a IntMat {
    type Output = IntMat;

    fn mul(self, rhs: &'a IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = IntMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let x = out.get(i, j) + a * b;
                    out.set(i, j, x);
                }
            }
        }
        out
    }
}

impl<'a> Add for &'a IntMat {
    type Output = IntMat;

    fn add(self, rhs: &'a IntMat) -> IntMat {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        IntMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl<'a> Sub for &'a IntMat {
    type Output = IntMat;

    fn sub(self, rhs: &'a IntMat) -> IntMat {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        IntMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl Neg for &IntMat {
    type Output = IntMat;

    fn neg(self) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| -self.get(i, j).clone())
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}
