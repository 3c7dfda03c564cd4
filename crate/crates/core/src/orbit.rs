//! Orbit partitions of Z_n^d under `y ↦ yA` (superclasses) and
//! `x ↦ xA^{-t}` (supercharacters).
//!
//! Ordering contract: the zero orbit comes first, the remaining orbits are
//! sorted by `(size, representative)`, and each representative is the
//! lexicographically least member. Tables index rows and columns by it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupSet;
use crate::residue::{ModMatrix, ModVector, Modulus};

/// Upper bound on `n^d` accepted by the enumerator.
pub const MAX_POINTS: usize = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    /// `y ↦ yA`.
    Superclass,
    /// `x ↦ xA^{-t}`.
    Supercharacter,
    /// A hand-built partition not produced by a group action.
    Custom,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Superclass => "superclass",
            Action::Supercharacter => "supercharacter",
            Action::Custom => "custom",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub representative: ModVector,
    pub members: Vec<ModVector>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    modulus: Modulus,
    dim: usize,
    action: Action,
    orbits: Vec<Orbit>,
    /// Part index for each point in base-`n` encoding; `u32::MAX` if uncovered.
    index: Vec<u32>,
}

/// Number of points of Z_n^d, if it is small enough to enumerate.
pub fn point_count(modulus: Modulus, dim: usize) -> Result<usize> {
    let too_large = || Error::TooLarge { modulus: modulus.get(), dim };
    let n = usize::try_from(modulus.get()).map_err(|_| too_large())?;
    let mut total = 1usize;
    for _ in 0..dim {
        total = total.checked_mul(n).filter(|&t| t <= MAX_POINTS).ok_or_else(too_large)?;
    }
    Ok(total)
}

/// Base-`n` code with the first coordinate most significant, so code order is
/// lexicographic order.
#[inline]
pub(crate) fn encode(n: u64, v: &[u64]) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * n as usize + x as usize)
}

#[inline]
pub(crate) fn decode_into(n: u64, mut code: usize, out: &mut [u64]) {
    for slot in out.iter_mut().rev() {
        *slot = (code % n as usize) as u64;
        code /= n as usize;
    }
}

pub(crate) fn decode(modulus: Modulus, dim: usize, code: usize) -> ModVector {
    let mut v = vec![0; dim];
    decode_into(modulus.get(), code, &mut v);
    ModVector::from_reduced(modulus, v)
}

impl OrbitPartition {
    /// Builds a partition from explicit parts. The parts are not required to
    /// form a genuine partition; [`OrbitPartition::is_partition`] reports that.
    /// Empty parts are dropped and the ordering contract is applied.
    pub fn from_parts(modulus: Modulus, dim: usize, parts: Vec<Vec<ModVector>>, action: Action) -> Result<Self> {
        let total = point_count(modulus, dim)?;
        let mut orbits = Vec::with_capacity(parts.len());
        for mut members in parts {
            for v in &members {
                if v.modulus() != modulus {
                    return Err(Error::ModulusMismatch { left: modulus.get(), right: v.modulus().get() });
                }
                if v.dim() != dim {
                    return Err(Error::DimensionMismatch { left: dim, right: v.dim() });
                }
            }
            members.sort();
            members.dedup();
            if let Some(rep) = members.first().cloned() {
                orbits.push(Orbit { representative: rep, members });
            }
        }
        Ok(Self::assemble(modulus, dim, action, orbits, total))
    }

    fn assemble(modulus: Modulus, dim: usize, action: Action, mut orbits: Vec<Orbit>, total: usize) -> Self {
        orbits.sort_by(|a, b| {
            let za = a.representative.is_zero();
            let zb = b.representative.is_zero();
            zb.cmp(&za).then(a.size().cmp(&b.size())).then_with(|| a.representative.cmp(&b.representative))
        });
        let n = modulus.get();
        let mut index = vec![u32::MAX; total];
        for (i, o) in orbits.iter().enumerate() {
            for v in &o.members {
                let slot = &mut index[encode(n, v.entries())];
                if *slot == u32::MAX {
                    *slot = i as u32;
                }
            }
        }
        OrbitPartition { modulus, dim, action, orbits, index }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> Action {
        self.action
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Orbit::size).collect()
    }

    /// `n^d`.
    pub fn point_count(&self) -> usize {
        self.index.len()
    }

    /// Index of the part containing `v`, or `None` if no part covers it.
    pub fn locate(&self, v: &ModVector) -> Option<usize> {
        if v.modulus() != self.modulus || v.dim() != self.dim {
            return None;
        }
        match self.index[encode(self.modulus.get(), v.entries())] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// Part index per point, in base-`n` code order.
    pub fn assignment(&self) -> &[u32] {
        &self.index
    }

    /// Every point of Z_n^d lies in exactly one part.
    pub fn is_partition(&self) -> bool {
        let mut seen = vec![false; self.index.len()];
        for o in &self.orbits {
            for v in &o.members {
                let c = encode(self.modulus.get(), v.entries());
                if seen[c] {
                    return false;
                }
                seen[c] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Same parts as `other`, ignoring the action tag.
    pub fn same_parts(&self, other: &OrbitPartition) -> bool {
        self.modulus == other.modulus && self.dim == other.dim && self.orbits == other.orbits
    }
}

/// Enumerates the orbits of `g` on Z_n^d under the chosen action.
pub fn orbits(g: &GroupSet, action: Action) -> Result<OrbitPartition> {
    let modulus = g.modulus();
    let dim = g.dim();
    let total = point_count(modulus, dim)?;
    let matrices: Vec<ModMatrix> = match action {
        Action::Superclass | Action::Custom => g.elements().to_vec(),
        Action::Supercharacter => g.elements().iter().map(ModMatrix::inv_transpose).collect::<Result<_>>()?,
    };
    let n = modulus.get();
    let mut visited = vec![false; total];
    let mut seed = vec![0u64; dim];
    let mut image = vec![0u64; dim];
    let mut orbits = Vec::new();
    for code in 0..total {
        if visited[code] {
            continue;
        }
        decode_into(n, code, &mut seed);
        let mut codes = vec![code];
        visited[code] = true;
        for a in &matrices {
            a.apply_row(&seed, &mut image);
            let c = encode(n, &image);
            if !visited[c] {
                visited[c] = true;
                codes.push(c);
            }
        }
        codes.sort_unstable();
        let members: Vec<ModVector> = codes.into_iter().map(|c| decode(modulus, dim, c)).collect();
        orbits.push(Orbit { representative: members[0].clone(), members });
    }
    Ok(OrbitPartition::assemble(modulus, dim, action, orbits, total))
}

/// Histogram of orbit sizes: size ↦ number of orbits of that size.
pub fn orbit_census(p: &OrbitPartition) -> BTreeMap<usize, usize> {
    let mut census = BTreeMap::new();
    for o in p.orbits() {
        *census.entry(o.size()).or_insert(0) += 1;
    }
    census
}
