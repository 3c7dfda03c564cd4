//! Finite subgroups of GL_d(Z_n) held as explicit element sets.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::residue::{ModMatrix, Modulus};

pub const DEFAULT_CLOSURE_CAP: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryKind {
    Symmetric,
    JSymmetric,
    None,
}

impl fmt::Display for SymmetryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryKind::Symmetric => "symmetric",
            SymmetryKind::JSymmetric => "j-symmetric",
            SymmetryKind::None => "none",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryWitness {
    pub kind: SymmetryKind,
    pub j: Option<ModMatrix>,
}

impl SymmetryWitness {
    pub fn symmetric() -> Self {
        SymmetryWitness { kind: SymmetryKind::Symmetric, j: None }
    }

    pub fn none() -> Self {
        SymmetryWitness { kind: SymmetryKind::None, j: None }
    }

    pub fn j_symmetric(j: ModMatrix) -> Self {
        SymmetryWitness { kind: SymmetryKind::JSymmetric, j: Some(j) }
    }
}

/// A finite set `Γ ⊆ GL_d(Z_n)`, deduplicated and sorted row-major
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSet {
    modulus: Modulus,
    dim: usize,
    elements: Vec<ModMatrix>,
    witness: Option<SymmetryWitness>,
}

impl GroupSet {
    /// Builds a set from explicit elements. Every element must be invertible
    /// and of the right shape; closure is not checked here (see [`GroupSet::is_closed`]).
    pub fn from_elements(modulus: Modulus, dim: usize, elements: Vec<ModMatrix>) -> Result<Self> {
        for e in &elements {
            check_shape(modulus, dim, e)?;
            if !e.is_invertible() {
                return Err(Error::NotAUnit { det: e.det(), modulus: modulus.get() });
            }
        }
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        Ok(GroupSet { modulus, dim, elements, witness: None })
    }

    pub fn trivial(modulus: Modulus, dim: usize) -> Self {
        GroupSet { modulus, dim, elements: vec![ModMatrix::identity(modulus, dim)], witness: None }
    }

    pub fn with_witness(mut self, witness: SymmetryWitness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn witness(&self) -> Option<&SymmetryWitness> {
        self.witness.as_ref()
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[ModMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: &ModMatrix) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    /// Exhaustive check of the group axioms: identity, products and inverses
    /// stay in the set. Quadratic in `|Γ|`.
    pub fn is_closed(&self) -> bool {
        if !self.contains(&ModMatrix::identity(self.modulus, self.dim)) {
            return false;
        }
        let products_ok =
            self.elements.iter().all(|a| self.elements.iter().all(|b| self.contains(&a.mul_unchecked(b))));
        products_ok && self.elements.iter().all(|a| a.inverse().map(|inv| self.contains(&inv)).unwrap_or(false))
    }

    pub fn transposed(&self) -> Vec<ModMatrix> {
        let mut t: Vec<_> = self.elements.iter().map(ModMatrix::transpose).collect();
        t.sort();
        t
    }
}

fn check_shape(modulus: Modulus, dim: usize, a: &ModMatrix) -> Result<()> {
    if a.modulus() != modulus {
        return Err(Error::ModulusMismatch { left: modulus.get(), right: a.modulus().get() });
    }
    if a.dim() != dim {
        return Err(Error::DimensionMismatch { left: dim, right: a.dim() });
    }
    Ok(())
}

/// Breadth-first closure of `generators` under multiplication.
///
/// In a finite group the monoid generated by a set is already a group, so
/// inverses need not be added explicitly.
pub fn generate_closure(modulus: Modulus, dim: usize, generators: &[ModMatrix], cap: usize) -> Result<GroupSet> {
    for g in generators {
        check_shape(modulus, dim, g)?;
        if !g.is_invertible() {
            return Err(Error::NotAUnit { det: g.det(), modulus: modulus.get() });
        }
    }
    let identity = ModMatrix::identity(modulus, dim);
    let mut seen: HashSet<ModMatrix> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(a) = queue.pop_front() {
        for g in generators {
            let b = a.mul_unchecked(g);
            if !seen.contains(&b) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                seen.insert(b.clone());
                queue.push_back(b);
            }
        }
    }
    let mut elements: Vec<_> = seen.into_iter().collect();
    elements.sort();
    Ok(GroupSet { modulus, dim, elements, witness: None })
}

/// Decides whether `Γᵗ = Γ`, or failing that whether the supplied `J`
/// satisfies `JΓ = ΓᵗJ`. No search for an unknown `J` is attempted.
pub fn classify_symmetry(g: &GroupSet, j: Option<&ModMatrix>) -> Result<SymmetryWitness> {
    if let Some(j) = j {
        check_shape(g.modulus, g.dim, j).map_err(|e| Error::BadWitness(e.to_string()))?;
        if !j.is_symmetric() {
            return Err(Error::BadWitness("J is not symmetric".into()));
        }
        if !j.is_invertible() {
            return Err(Error::BadWitness("J is not invertible".into()));
        }
    }
    let transposed = g.transposed();
    if transposed == g.elements {
        return Ok(SymmetryWitness::symmetric());
    }
    if let Some(j) = j {
        let mut left: Vec<_> = g.elements.iter().map(|a| j.mul_unchecked(a)).collect();
        let mut right: Vec<_> = transposed.iter().map(|a| a.mul_unchecked(j)).collect();
        left.sort();
        right.sort();
        if left == right {
            return Ok(SymmetryWitness::j_symmetric(j.clone()));
        }
    }
    Ok(SymmetryWitness::none())
}
