//! Level-wise K-theoretic invariants for an arbitrary transition
//! matrix: the tower of cokernels and kernels of the specialized level
//! maps `M_{l,l+1}^t - I_{l,l+1}^t`, the homomorphisms connecting
//! consecutive levels, and the `g`-sequence measuring the growth of the
//! stationary filtration.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::group::{self, AbelianGroupPresentation, GroupHomomorphism, InducedMapError};
use crate::intmat::IntMat;
use crate::lambda::{build_cantor_horizon, LambdaError, LambdaGraphSystem};
use crate::markov::{self, TransitionMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TowerError {
    Lambda(LambdaError),
    /// The connecting map fails to descend to the quotients; the level
    /// structure is inconsistent.
    Connecting { level: usize, source: InducedMapError },
    /// `g_k` needs a level with at least `k` vertices below the guard.
    GSequenceOutOfReach { k: usize },
    GSequenceLevelDependent { k: usize, low: usize, high: usize },
}

impl fmt::Display for TowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerError::Lambda(e) => write!(f, "{e}"),
            TowerError::Connecting { level, source } => {
                write!(f, "connecting map at level {level}: {source}")
            }
            TowerError::GSequenceOutOfReach { k } => {
                write!(f, "no level with at least {k} vertices within the memory guard")
            }
            TowerError::GSequenceLevelDependent { k, low, high } => {
                write!(f, "g_{k} differs between levels: {low} versus {high}")
            }
        }
    }
}

impl From<LambdaError> for TowerError {
    fn from(e: LambdaError) -> Self {
        TowerError::Lambda(e)
    }
}

/// The specialized level map `A_{l+1,l} = M_{l,l+1}^t - I_{l,l+1}^t`
/// read off the graph.
pub fn level_map(system: &LambdaGraphSystem, l: usize) -> Result<IntMat, LambdaError> {
    let (m, i) = system.symbolic_matrix_pair(l)?;
    Ok(&m.specialize_to_counts().transpose() - &i.transpose())
}

/// One level of the K0 tower: the cokernel of `A_{l,l-1}` inside
/// `Z^{m(l)}`, together with its position.
pub struct TowerLevel {
    pub l: usize,
    /// Ambient rank `m(l)`.
    pub m: usize,
    pub k0: AbelianGroupPresentation,
    /// Rank of `ker A_{l,l-1}`, the level contribution to K1.
    pub k1_rank: usize,
}

/// The K0 tower up to `max_l`: levels `1..=max_l` and the connecting
/// homomorphisms induced by `I^t_{l,l+1}`.
pub struct KTheoryTower {
    pub levels: Vec<TowerLevel>,
    /// `maps[i]` connects `levels[i]` to `levels[i+1]`.
    pub maps: Vec<GroupHomomorphism>,
}

pub fn k_theory_tower(
    system: &LambdaGraphSystem,
    max_l: usize,
) -> Result<KTheoryTower, TowerError> {
    let mut levels: Vec<TowerLevel> = Vec::with_capacity(max_l);
    let mut maps = Vec::with_capacity(max_l.saturating_sub(1));
    for l in 1..=max_l {
        let a = level_map(system, l - 1)?;
        let k0 = AbelianGroupPresentation::cokernel(&a);
        let k1_rank = group::kernel_rank(&a);
        let level = TowerLevel { l, m: system.vertex_count(l), k0, k1_rank };
        if let Some(prev) = levels.last() {
            let it = system.iota_matrix(l - 1)?.transpose();
            let map = group::induced_map(&prev.k0, &level.k0, &it)
                .map_err(|source| TowerError::Connecting { level: l, source })?;
            maps.push(map);
        }
        levels.push(level);
    }
    Ok(KTheoryTower { levels, maps })
}

fn g_at_level(system: &LambdaGraphSystem, l: usize, k: usize) -> Result<usize, LambdaError> {
    let i = system.iota_matrix(l)?;
    let mut g = BigInt::from(0);
    for j in 0..k {
        for c in 1..i.cols() {
            g += i.get(j, c);
        }
    }
    Ok(g.to_usize().expect("nonnegative count"))
}

/// The sequence `g_1, ..., g_k_max`: partial row sums of `I_{l,l+1}`
/// with the first column dropped, checked to be independent of the
/// level `l` used to evaluate them.
pub fn g_sequence(a: &TransitionMatrix, k_max: usize) -> Result<Vec<usize>, TowerError> {
    let mut l = 1;
    while markov::count_words(a, l) < k_max {
        l += 1;
        if markov::count_words(a, l) > crate::lambda::MEMORY_GUARD {
            return Err(TowerError::GSequenceOutOfReach { k: k_max });
        }
    }
    let system = build_cantor_horizon(a, l + 2)?;
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let low = g_at_level(&system, l, k)?;
        let high = g_at_level(&system, l + 1, k)?;
        if low != high {
            return Err(TowerError::GSequenceLevelDependent { k, low, high });
        }
        out.push(low);
    }
    Ok(out)
}
