//! One group, both partitions, the table: the unit every front end works on.

use serde_json::{json, Map, Value};

use crate::cyclotomic::CycValue;
use crate::error::Result;
use crate::group::{classify_symmetry, GroupSet, SymmetryKind, SymmetryWitness};
use crate::orbit::{orbit_census, orbits, Action, OrbitPartition};
use crate::residue::{ModMatrix, ModVector};
use crate::table::{
    build_table, build_unitary, verify_unitary_properties, SupercharTable, UnitaryMatrix, UnitaryReport,
};
use crate::theory::{validate_theory, ConstancyOptions, TheoryReport};

#[derive(Clone, Debug)]
pub struct Analysis {
    pub group: GroupSet,
    pub witness: SymmetryWitness,
    pub table: SupercharTable,
}

#[derive(Clone, Debug)]
pub struct Verification {
    pub theory: TheoryReport,
    pub entry_bound: bool,
    pub unitary: Option<UnitaryReport>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.theory.passed() && self.entry_bound && self.unitary.as_ref().is_some_and(UnitaryReport::passed)
    }
}

impl Analysis {
    /// Classifies `group` (using its attached witness's `J` when `j` is not
    /// given), enumerates both actions and builds the table.
    pub fn new(group: GroupSet, j: Option<&ModMatrix>) -> Result<Self> {
        let attached = group.witness().and_then(|w| w.j.clone());
        let witness = classify_symmetry(&group, j.or(attached.as_ref()))?;
        let x = orbits(&group, Action::Supercharacter)?;
        let y = orbits(&group, Action::Superclass)?;
        let table = build_table(&x, &y)?;
        Ok(Analysis { group, witness, table })
    }

    pub fn superclasses(&self) -> &OrbitPartition {
        self.table.superclasses()
    }

    pub fn supercharacters(&self) -> &OrbitPartition {
        self.table.supercharacters()
    }

    pub fn unitary(&self) -> Result<UnitaryMatrix> {
        build_unitary(&self.table)
    }

    pub fn verify(&self, opts: &ConstancyOptions, tol: f64) -> Verification {
        let theory = validate_theory(&self.table, opts);
        let symmetric = self.witness.kind == SymmetryKind::Symmetric;
        let unitary = self.unitary().ok().map(|u| verify_unitary_properties(&u, symmetric, tol));
        Verification { theory, entry_bound: self.table.entry_bound_holds(), unitary }
    }

    pub fn meta_json(&self) -> Value {
        json!({
            "n": self.group.modulus().get(),
            "d": self.group.dim(),
            "group_order": self.group.order(),
            "symmetry": self.witness.kind.to_string(),
        })
    }
}

pub fn vector_json(v: &ModVector) -> Value {
    json!(v.entries())
}

/// `[{rep, size}]`, plus members when requested.
pub fn partition_json(p: &OrbitPartition, with_members: bool) -> Value {
    Value::Array(
        p.orbits()
            .iter()
            .map(|o| {
                let mut obj = Map::new();
                obj.insert("rep".into(), vector_json(&o.representative));
                obj.insert("size".into(), json!(o.size()));
                if with_members {
                    obj.insert("members".into(), Value::Array(o.members.iter().map(vector_json).collect()));
                }
                Value::Object(obj)
            })
            .collect(),
    )
}

/// Census as `[{size, count}]` in ascending size.
pub fn census_json(p: &OrbitPartition) -> Value {
    Value::Array(orbit_census(p).into_iter().map(|(size, count)| json!({"size": size, "count": count})).collect())
}

pub fn cyc_json(v: &CycValue) -> Value {
    let z = v.to_complex();
    json!({"coeffs": v.coeffs(), "re": z.re, "im": z.im})
}

pub fn table_json(t: &SupercharTable) -> Value {
    Value::Array(t.entries().iter().map(|row| Value::Array(row.iter().map(cyc_json).collect())).collect())
}

pub fn unitary_json(u: &UnitaryMatrix) -> Value {
    let h = u.dim();
    Value::Array(
        (0..h).map(|i| Value::Array((0..h).map(|j| json!([u.get(i, j).re, u.get(i, j).im])).collect())).collect(),
    )
}
