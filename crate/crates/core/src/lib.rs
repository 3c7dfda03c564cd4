//! Automorphic supercharacter theories of `G = Z_n^d`.
//!
//! A finite group `Γ ≤ GL_d(Z_n)` acts on `G` by `y ↦ yA` and on the
//! characters `ψ_x(y) = e(x·y/n)` by `x ↦ xA^{-t}`. When `Γ` is symmetric
//! (`Γᵗ = Γ`) or J-symmetric (`JΓ = ΓᵗJ`), the two orbit partitions form a
//! supercharacter theory whose table entries are orbit sums of roots of unity.
//! This crate enumerates both partitions, tabulates the supercharacters
//! exactly in Z[ζ_n], checks the theory axioms and builds the unitary matrix
//! `U`.
//!
//! ```
//! use supertab::{build_family, Analysis, FamilyName, FamilySpec};
//!
//! let spec = FamilySpec::new(FamilyName::Diagonal, 5, Some(2)).unwrap();
//! let analysis = Analysis::new(build_family(&spec).unwrap(), None).unwrap();
//! let table = analysis.table.as_integers().unwrap();
//! assert_eq!(table[1], vec![4, -1, 4, -1]);
//! ```

pub mod analysis;
pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod families;
pub mod group;
pub mod orbit;
pub mod residue;
pub mod table;
pub mod theory;

pub use analysis::{Analysis, Verification};
pub use cyclotomic::{cyclotomic_polynomial, ComplexApprox, CycValue};
pub use error::{Error, Result};
pub use families::{
    build_family, census_oracle, kloosterman_oracle, ramanujan_oracle, reference_table_oracle, FamilyName, FamilySpec,
    ReferenceTable,
};
pub use group::{classify_symmetry, generate_closure, GroupSet, SymmetryKind, SymmetryWitness, DEFAULT_CLOSURE_CAP};
pub use orbit::{orbit_census, orbits, Action, Orbit, OrbitPartition};
pub use residue::{dot, vec_mat_mul, ModMatrix, ModVector, Modulus};
pub use table::{
    build_table, build_unitary, check_orthogonality, orthogonality_defects, verify_unitary_properties, Check,
    SupercharTable, UnitaryMatrix, UnitaryReport, DEFAULT_TOL,
};
pub use theory::{coarsest_theory, finest_theory, validate_theory, ConstancyOptions, TheoryReport};
