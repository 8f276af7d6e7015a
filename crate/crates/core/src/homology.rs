//! Representation-theoretic constraints on the induced action on `H^2`.
//!
//! Over the integers the induced action of `Z_p` on second cohomology splits
//! into `t` trivial summands of rank 1, `c` cyclotomic summands of rank `p-1`
//! and `r` regular summands of rank `p`, so `b2 = t + c(p-1) + rp`.

use alloc::format;
use alloc::vec::Vec;

use crate::dedekind::PrimeOrder;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomologyDecomposition {
    pub t: u64,
    pub c: u64,
    pub r: u64,
}

impl HomologyDecomposition {
    pub fn rank(&self, p: PrimeOrder) -> u64 {
        let p = u64::from(p.get());
        self.t + self.c * (p - 1) + self.r * p
    }

    pub fn is_trivial(&self) -> bool {
        self.c == 0 && self.r == 0
    }
}

/// Fixed point set of `m` isolated points and `n` spheres.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FixedSetShape {
    pub m: u64,
    pub n: u64,
}

impl FixedSetShape {
    pub fn euler_characteristic(&self) -> u64 {
        self.m + 2 * self.n
    }
}

/// Every `(t, c, r)` with `t + c(p-1) + rp = b2`, ordered by `(r, c)`.
pub fn decompositions(p: PrimeOrder, b2: u64) -> Result<Vec<HomologyDecomposition>> {
    if b2 == 0 {
        return Err(Error::Domain(format!("b2 must be positive, got {b2}")));
    }
    let p = u64::from(p.get());
    let mut out = Vec::new();
    for r in 0..=b2 / p {
        let rest = b2 - r * p;
        for c in 0..=rest / (p - 1) {
            out.push(HomologyDecomposition { t: rest - c * (p - 1), c, r });
        }
    }
    Ok(out)
}

/// Whether every `Z_p` action with this `b2` is forced to be homologically
/// trivial.
///
/// True when `(b2, 0, 0)` is the only decomposition, which always happens
/// for `p > b2 + 1`. For `b2 = 2` and odd `p` the action is also trivial on
/// homology by the classification for the homotopy types of `S^2 x S^2` and
/// `CP^2 # -CP^2`, although the rank count alone still admits one cyclotomic
/// summand at `p = 3`.
pub fn forces_trivial(p: PrimeOrder, b2: u64) -> Result<bool> {
    let all = decompositions(p, b2)?;
    let rank_forced = all.len() == 1 && all[0].is_trivial();
    Ok(rank_forced || (b2 == 2 && p.get() >= 3))
}

/// All `(m, n)` with `m + 2n = chi`, by ascending `n`.
pub fn fixed_set_shapes(chi: i64) -> Result<Vec<FixedSetShape>> {
    if chi < 3 {
        return Err(Error::Domain(format!(
            "Euler characteristic must be at least 3 for b2 > 0, got {chi}"
        )));
    }
    let chi = chi as u64;
    Ok((0..=chi / 2).map(|n| FixedSetShape { m: chi - 2 * n, n }).collect())
}

/// Betti numbers of the fixed point set with `Z_p` coefficients for a
/// non-free action: returns `(b1(F), b0(F) + b2(F)) = (c, t + 2)`.
pub fn betti_constraints(t: u64, c: u64) -> (u64, u64) {
    (c, t + 2)
}
