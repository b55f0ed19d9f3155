//! Finitely generated abelian groups presented by integer matrices, and
//! homomorphisms induced on cokernels.
//!
//! A presentation here is always a cokernel `Z^m / T Z^n` put into
//! invariant-factor coordinates via the Smith decomposition of `T`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::intmat::IntMat;
use crate::snf::{self, SmithDecomposition};

/// Isomorphism type of a finitely generated abelian group.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupSummary {
    pub free_rank: usize,
    /// Invariant factors strictly greater than 1, in divisibility order.
    pub invariant_factors: Vec<BigInt>,
}

impl fmt::Debug for GroupSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.free_rank == 0 && self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for d in &self.invariant_factors {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        if self.free_rank > 0 {
            if !first {
                write!(f, " + ")?;
            }
            if self.free_rank == 1 {
                write!(f, "Z")?;
            } else {
                write!(f, "Z^{}", self.free_rank)?;
            }
        }
        Ok(())
    }
}

/// `Z^m / T Z^n` with coordinates chosen by the Smith decomposition of
/// `T`: writing `U T V = D`, the composite `x -> U x` identifies the
/// quotient with `(+)_i Z/d_i (+) Z^{m - r}`.
#[derive(Clone)]
pub struct AbelianGroupPresentation {
    relation: IntMat,
    dec: SmithDecomposition,
    rank: usize,
}

impl AbelianGroupPresentation {
    pub fn cokernel(t: &IntMat) -> Self {
        let dec = snf::smith_normal_form(t);
        let rank = dec.rank();
        AbelianGroupPresentation { relation: t.clone(), dec, rank }
    }

    /// Number of generators of the ambient free group `Z^m`.
    pub fn ambient_dim(&self) -> usize {
        self.relation.rows()
    }

    pub fn relation_matrix(&self) -> &IntMat {
        &self.relation
    }

    pub fn decomposition(&self) -> &SmithDecomposition {
        &self.dec
    }

    pub fn relation_rank(&self) -> usize {
        self.rank
    }

    pub fn free_rank(&self) -> usize {
        self.relation.rows() - self.rank
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank)
            .map(|i| self.dec.d.get(i, i).clone())
            .filter(|d| *d > BigInt::from(1))
            .collect()
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary { free_rank: self.free_rank(), invariant_factors: self.invariant_factors() }
    }

    pub fn is_isomorphic_to(&self, other: &AbelianGroupPresentation) -> bool {
        self.summary() == other.summary()
    }

    /// Invariant-factor coordinates of an ambient vector.
    pub fn coordinates(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ambient_dim());
        let mut out = Vec::with_capacity(self.ambient_dim());
        for i in 0..self.ambient_dim() {
            let mut acc = BigInt::zero();
            for (k, xv) in x.iter().enumerate() {
                acc += self.dec.u.get(i, k) * xv;
            }
            if i < self.rank {
                let d = self.dec.d.get(i, i);
                acc = acc.mod_floor(d);
            }
            out.push(acc);
        }
        out
    }

    /// True iff the ambient vector lies in the relation lattice.
    pub fn is_trivial_element(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).iter().all(|c| c.is_zero())
    }
}

/// Basis of `ker T` as columns: the columns of `V` past the rank.
pub fn kernel_basis(t: &IntMat) -> IntMat {
    let dec = snf::smith_normal_form(t);
    let rank = dec.rank();
    let cols = t.cols() - rank;
    IntMat::from_fn(t.cols(), cols, |i, j| dec.v.get(i, rank + j).clone())
}

pub fn kernel_rank(t: &IntMat) -> usize {
    t.cols() - snf::smith_normal_form(t).rank()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InducedMapError {
    /// The ambient map does not carry the source relations into the
    /// target relations, so it induces nothing on the quotients.
    NotWellDefined { source_column: usize, detail: String },
    ShapeMismatch,
}

impl fmt::Display for InducedMapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InducedMapError::NotWellDefined { source_column, detail } => {
                write!(f, "map not well defined on quotients (source relation {source_column}): {detail}")
            }
            InducedMapError::ShapeMismatch => write!(f, "ambient dimensions do not match"),
        }
    }
}

/// Homomorphism between two presented groups, written in the
/// invariant-factor coordinates of source and target.
#[derive(Clone, Debug)]
pub struct GroupHomomorphism {
    pub source: GroupSummary,
    pub target: GroupSummary,
    /// Entry `(i, j)`: image of source generator `j`, coordinate `i` of
    /// the target; torsion rows are reduced mod their factor.
    pub matrix: IntMat,
}

/// The map on cokernels induced by `t: Z^{m_src} -> Z^{m_tgt}`.
///
/// Checks well-definedness: each source relation must land in the target
/// relation lattice. This is exactly the intertwining condition needed
/// for a map of towers, so failures surface as errors rather than silent
/// junk.
pub fn induced_map(
    src: &AbelianGroupPresentation,
    tgt: &AbelianGroupPresentation,
    t: &IntMat,
) -> Result<GroupHomomorphism, InducedMapError> {
    if t.rows() != tgt.ambient_dim() || t.cols() != src.ambient_dim() {
        return Err(InducedMapError::ShapeMismatch);
    }
    // the map in SNF coordinates of both sides
    let m = &(&tgt.dec.u * t) * &src.dec.u_inv;
    // source relation j is d_j * e_j; its image is d_j * column j of m,
    // which must vanish in the target quotient.
    for j in 0..src.rank {
        let d_src = src.dec.d.get(j, j);
        for i in 0..tgt.ambient_dim() {
            let entry = d_src * m.get(i, j);
            let ok = if i < tgt.rank {
                entry.mod_floor(tgt.dec.d.get(i, i)).is_zero()
            } else {
                entry.is_zero()
            };
            if !ok {
                return Err(InducedMapError::NotWellDefined {
                    source_column: j,
                    detail: alloc::format!(
                        "coordinate {i} of the image of {d_src} * e_{j} is {entry}"
                    ),
                });
            }
        }
    }
    let reduced = IntMat::from_fn(tgt.ambient_dim(), src.ambient_dim(), |i, j| {
        if i < tgt.rank {
            m.get(i, j).mod_floor(tgt.dec.d.get(i, i))
        } else {
            m.get(i, j).clone()
        }
    });
    Ok(GroupHomomorphism { source: src.summary(), target: tgt.summary(), matrix: reduced })
}
