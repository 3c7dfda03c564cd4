//! Supercharacter-theory axioms for a pair of partitions, and the two
//! theories every group has.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::orbit::{decode, point_count, Action, OrbitPartition};
use crate::residue::{ModVector, Modulus};
use crate::table::{orbit_sum, orthogonality_defects, par_map, SupercharTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstancyOptions {
    /// Check every member of every superclass when `n^d` is at most this.
    pub exhaustive_limit: usize,
    /// Members sampled per superclass above the limit.
    pub samples_per_class: usize,
    pub seed: u64,
}

impl Default for ConstancyOptions {
    fn default() -> Self {
        ConstancyOptions { exhaustive_limit: 100_000, samples_per_class: 64, seed: 0 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TheoryReport {
    pub is_partition_pair: bool,
    pub sizes_match: bool,
    pub zero_singleton: bool,
    pub constancy: bool,
    pub orthogonality: bool,
    pub details: Vec<String>,
}

impl TheoryReport {
    pub fn passed(&self) -> bool {
        self.is_partition_pair && self.sizes_match && self.zero_singleton && self.constancy && self.orthogonality
    }
}

fn zero_alone(p: &OrbitPartition) -> bool {
    p.orbits().first().is_some_and(|o| o.size() == 1 && o.representative.is_zero())
}

/// Checks the axioms on the pair underlying `t`: both sides partition Z_n^d,
/// `|𝒳| = |𝒦|`, `{0}` is a superclass and the trivial character is alone,
/// each `σ_i` is constant on every superclass, and the rows are orthogonal.
pub fn validate_theory(t: &SupercharTable, opts: &ConstancyOptions) -> TheoryReport {
    let x = t.supercharacters();
    let y = t.superclasses();
    let mut r = TheoryReport {
        is_partition_pair: x.is_partition() && y.is_partition(),
        sizes_match: x.len() == y.len(),
        zero_singleton: zero_alone(x) && zero_alone(y),
        ..Default::default()
    };
    if !r.is_partition_pair {
        r.details.push("a side does not partition the group".into());
    }
    if !r.sizes_match {
        r.details.push(format!("|X| = {} but |K| = {}", x.len(), y.len()));
    }
    if !r.zero_singleton {
        r.details.push("zero is not a singleton part on both sides".into());
    }

    let bad_cells = constancy_failures(t, opts);
    r.constancy = bad_cells.is_empty();
    for (i, j, v) in bad_cells.iter().take(8) {
        r.details.push(format!("sigma_{} not constant on superclass {}: differs at {}", i + 1, j + 1, v));
    }

    let defects = orthogonality_defects(t);
    r.orthogonality = defects.is_empty();
    for (i, k) in defects.iter().take(8) {
        r.details.push(format!("rows {} and {} violate orthogonality", i + 1, k + 1));
    }
    r
}

/// Cells `(i, j, y)` where `σ_i(y)` for a member `y` of `Y_j` differs from the
/// tabulated value.
fn constancy_failures(t: &SupercharTable, opts: &ConstancyOptions) -> Vec<(usize, usize, ModVector)> {
    let y = t.superclasses();
    let exhaustive = y.point_count() <= opts.exhaustive_limit;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut probes: Vec<(usize, &ModVector)> = Vec::new();
    for (j, orbit) in y.orbits().iter().enumerate() {
        if exhaustive || orbit.size() <= opts.samples_per_class {
            probes.extend(orbit.members.iter().map(|v| (j, v)));
        } else {
            probes.extend(orbit.members.choose_multiple(&mut rng, opts.samples_per_class).map(|v| (j, v)));
        }
    }
    let x = t.supercharacters();
    let found = par_map(&probes, |&(j, v)| {
        x.orbits()
            .iter()
            .enumerate()
            .filter(|(i, xi)| orbit_sum(xi, v) != *t.entry(*i, j))
            .map(|(i, _)| (i, j, v.clone()))
            .collect::<Vec<_>>()
    });
    found.into_iter().flatten().collect()
}

fn all_points(modulus: Modulus, dim: usize) -> Result<Vec<ModVector>> {
    let total = point_count(modulus, dim)?;
    Ok((0..total).map(|c| decode(modulus, dim, c)).collect())
}

/// m(G): singletons on both sides (irreducible characters and elements).
pub fn finest_theory(modulus: Modulus, dim: usize) -> Result<(OrbitPartition, OrbitPartition)> {
    let parts: Vec<Vec<ModVector>> = all_points(modulus, dim)?.into_iter().map(|v| vec![v]).collect();
    Ok((
        OrbitPartition::from_parts(modulus, dim, parts.clone(), Action::Custom)?,
        OrbitPartition::from_parts(modulus, dim, parts, Action::Custom)?,
    ))
}

/// M(G): `{0}` and everything else, on both sides.
pub fn coarsest_theory(modulus: Modulus, dim: usize) -> Result<(OrbitPartition, OrbitPartition)> {
    let mut points = all_points(modulus, dim)?;
    let zero = points.remove(0);
    let parts = vec![vec![zero], points];
    Ok((
        OrbitPartition::from_parts(modulus, dim, parts.clone(), Action::Custom)?,
        OrbitPartition::from_parts(modulus, dim, parts, Action::Custom)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::build_table;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn coarsest_theory_values() {
        let (x, k) = coarsest_theory(m(3), 2).unwrap();
        let t = build_table(&x, &k).unwrap();
        let r = validate_theory(&t, &ConstancyOptions::default());
        assert!(r.passed(), "{r:?}");
        assert_eq!(t.as_integers().unwrap(), vec![vec![1, 1], vec![8, -1]]);
    }

    #[test]
    fn finest_theory_is_dft() {
        let (x, k) = finest_theory(m(4), 1).unwrap();
        let t = build_table(&x, &k).unwrap();
        assert!(validate_theory(&t, &ConstancyOptions::default()).passed());
        assert_eq!(t.entry(1, 1), &crate::cyclotomic::CycValue::root_power(4, 1));
    }

    #[test]
    fn merged_superclasses_fail_sizes() {
        let (x, _) = finest_theory(m(3), 1).unwrap();
        let (_, k) = coarsest_theory(m(3), 1).unwrap();
        let t = build_table(&x, &k).unwrap();
        let r = validate_theory(&t, &ConstancyOptions::default());
        assert!(!r.sizes_match);
        assert!(!r.passed());
    }

    #[test]
    fn sampled_constancy_is_seeded() {
        let (x, k) = coarsest_theory(m(5), 2).unwrap();
        let t = build_table(&x, &k).unwrap();
        let opts = ConstancyOptions { exhaustive_limit: 0, samples_per_class: 4, seed: 7 };
        assert!(validate_theory(&t, &opts).constancy);
    }
}
