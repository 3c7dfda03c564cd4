//! Named subgroups of GL_d(Z_n) whose supercharacters are classical
//! exponential sums, together with closed-form reference values.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::arith::{binomial, gcd, inv_mod, is_prime, mobius, pow_mod, totient};
use crate::error::{Error, Result};
use crate::group::{GroupSet, SymmetryWitness};
use crate::residue::{ModMatrix, Modulus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyName {
    Trivial,
    Sign,
    Diagonal,
    Kloosterman,
    Toeplitz,
    Units,
    QuadraticResidues,
    Jsym3,
    Heilbronn,
}

impl FamilyName {
    pub const ALL: [FamilyName; 9] = [
        FamilyName::Trivial,
        FamilyName::Sign,
        FamilyName::Diagonal,
        FamilyName::Kloosterman,
        FamilyName::Toeplitz,
        FamilyName::Units,
        FamilyName::QuadraticResidues,
        FamilyName::Jsym3,
        FamilyName::Heilbronn,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::Trivial => "trivial",
            FamilyName::Sign => "sign",
            FamilyName::Diagonal => "diagonal",
            FamilyName::Kloosterman => "kloosterman",
            FamilyName::Toeplitz => "toeplitz",
            FamilyName::Units => "units",
            FamilyName::QuadraticResidues => "quadratic_residues",
            FamilyName::Jsym3 => "jsym3",
            FamilyName::Heilbronn => "heilbronn",
        }
    }

    /// Fixed dimension, for families that have one.
    pub fn fixed_dim(self) -> Option<usize> {
        match self {
            FamilyName::Kloosterman => Some(2),
            FamilyName::Units | FamilyName::QuadraticResidues | FamilyName::Heilbronn => Some(1),
            FamilyName::Jsym3 => Some(3),
            _ => None,
        }
    }

    pub fn default_dim(self) -> usize {
        match self {
            FamilyName::Diagonal => 2,
            FamilyName::Toeplitz => 3,
            other => other.fixed_dim().unwrap_or(1),
        }
    }

    /// Whether the parameter is a prime `p` rather than an arbitrary modulus `n`.
    pub fn takes_prime(self) -> bool {
        !matches!(self, FamilyName::Trivial | FamilyName::Sign | FamilyName::Units)
    }

    pub fn needs_odd_prime(self) -> bool {
        matches!(
            self,
            FamilyName::Kloosterman | FamilyName::QuadraticResidues | FamilyName::Jsym3 | FamilyName::Heilbronn
        )
    }

    pub fn description(self) -> &'static str {
        match self {
            FamilyName::Trivial => "{I} on Z_n^d; the discrete Fourier transform",
            FamilyName::Sign => "{I, -I} on Z_n^d",
            FamilyName::Diagonal => "all diagonal matrices with unit entries on Z_p^d",
            FamilyName::Kloosterman => "{diag(a, 1/a)} on Z_p^2; Kloosterman sums",
            FamilyName::Toeplitz => "unit upper-triangular Toeplitz matrices on Z_p^d (J-symmetric)",
            FamilyName::Units => "Z_n^x acting on Z_n; Ramanujan sums",
            FamilyName::QuadraticResidues => "squares of units acting on Z_p; Gauss periods",
            FamilyName::Jsym3 => "upper-triangular matrices with diagonal (a, d, a) on Z_p^3 (J-symmetric)",
            FamilyName::Heilbronn => "{x^p mod p^2} acting on Z_{p^2}; Heilbronn sums (experimental)",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown family '{s}'")))
    }
}

/// A family with validated parameters. `param` is `n` for trivial, sign and
/// units, and the prime `p` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub name: FamilyName,
    pub param: u64,
    pub dim: usize,
}

impl FamilySpec {
    pub fn new(name: FamilyName, param: u64, dim: Option<usize>) -> Result<Self> {
        let dim = match (dim, name.fixed_dim()) {
            (Some(d), Some(fixed)) if d != fixed => {
                return Err(Error::BadParams(format!("{name} is defined only for d = {fixed}")))
            }
            (Some(d), _) => d,
            (None, _) => name.default_dim(),
        };
        if dim == 0 {
            return Err(Error::BadParams("d must be at least 1".into()));
        }
        if name == FamilyName::Toeplitz && dim < 2 {
            return Err(Error::BadParams("toeplitz needs d >= 2".into()));
        }
        if name.takes_prime() {
            if !is_prime(param) {
                return Err(Error::BadParams(format!("{name} needs a prime p, got {param}")));
            }
            if name.needs_odd_prime() && param == 2 {
                return Err(Error::BadParams(format!("{name} needs an odd prime p")));
            }
        } else if param < 2 {
            return Err(Error::BadParams(format!("{name} needs n >= 2, got {param}")));
        }
        Ok(FamilySpec { name, param, dim })
    }

    /// The modulus `n` of `G = Z_n^d`.
    pub fn modulus(&self) -> Modulus {
        let n = match self.name {
            FamilyName::Heilbronn => self.param * self.param,
            _ => self.param,
        };
        Modulus::new(n).expect("validated parameter")
    }

    pub fn label(&self) -> String {
        let key = if self.name.takes_prime() { "p" } else { "n" };
        format!("{}({key}={}, d={})", self.name, self.param, self.dim)
    }

    pub fn is_experimental(&self) -> bool {
        self.name == FamilyName::Heilbronn
    }
}

fn units(n: u64) -> impl Iterator<Item = u64> {
    (1..n).filter(move |&a| gcd(a, n) == 1)
}

/// All tuples in `ranges[0] × ranges[1] × …`.
fn cartesian(ranges: &[Vec<i64>]) -> Vec<Vec<i64>> {
    ranges.iter().fold(vec![Vec::new()], |acc, r| {
        acc.into_iter()
            .flat_map(|prefix| {
                r.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect()
    })
}

/// Builds `Γ` extensionally from its parametric description, with its
/// symmetry witness attached.
pub fn build_family(spec: &FamilySpec) -> Result<GroupSet> {
    let m = spec.modulus();
    let n = m.get();
    let d = spec.dim;
    let unit_list: Vec<i64> = units(n).map(|u| u as i64).collect();
    let all: Vec<i64> = (0..n as i64).collect();
    let mat = |rows: Vec<Vec<i64>>| ModMatrix::from_rows(m, &rows).expect("square by construction");
    let scalar = |v: i64| ModMatrix::diag(m, &[v]);

    let (elements, witness) = match spec.name {
        FamilyName::Trivial => (vec![ModMatrix::identity(m, d)], SymmetryWitness::symmetric()),
        FamilyName::Sign => {
            (vec![ModMatrix::identity(m, d), ModMatrix::diag(m, &vec![-1; d])], SymmetryWitness::symmetric())
        }
        FamilyName::Diagonal => {
            let ranges = vec![unit_list.clone(); d];
            (cartesian(&ranges).iter().map(|diag| ModMatrix::diag(m, diag)).collect(), SymmetryWitness::symmetric())
        }
        FamilyName::Kloosterman => (
            unit_list.iter().map(|&a| ModMatrix::diag(m, &[a, inv_mod(a as u64, n).unwrap() as i64])).collect(),
            SymmetryWitness::symmetric(),
        ),
        FamilyName::Toeplitz => {
            let ranges = vec![all.clone(); d - 1];
            let elements = cartesian(&ranges)
                .into_iter()
                .map(|params| {
                    // entry (i, j) is a_{j-i+1}, with a_1 = 1 on the diagonal
                    let rows = (0..d)
                        .map(|i| {
                            (0..d)
                                .map(|j| match j.checked_sub(i) {
                                    Some(0) => 1,
                                    Some(k) => params[k - 1],
                                    None => 0,
                                })
                                .collect()
                        })
                        .collect();
                    mat(rows)
                })
                .collect();
            (elements, SymmetryWitness::j_symmetric(ModMatrix::anti_identity(m, d)))
        }
        FamilyName::Units => (unit_list.iter().map(|&u| scalar(u)).collect(), SymmetryWitness::symmetric()),
        FamilyName::QuadraticResidues => {
            (unit_list.iter().map(|&u| scalar(u * u)).collect(), SymmetryWitness::symmetric())
        }
        FamilyName::Jsym3 => {
            let ranges = [unit_list.clone(), unit_list.clone(), all.clone(), all.clone(), all.clone()];
            let elements = cartesian(&ranges)
                .into_iter()
                .map(|v| {
                    let (a, dd, b, c, e) = (v[0], v[1], v[2], v[3], v[4]);
                    mat(vec![vec![a, b, c], vec![0, dd, e], vec![0, 0, a]])
                })
                .collect();
            (elements, SymmetryWitness::j_symmetric(ModMatrix::anti_identity(m, 3)))
        }
        FamilyName::Heilbronn => (
            unit_list.iter().map(|&x| scalar(pow_mod(x as u64, spec.param, n) as i64)).collect(),
            SymmetryWitness::symmetric(),
        ),
    };
    Ok(GroupSet::from_elements(m, d, elements)?.with_witness(witness))
}

/// The literal parametric set `{[[a,b,c],[0,d,b],[0,0,a]] : a, d units}` of
/// size `p²(p−1)²`. It is not closed under multiplication when `p > 2`;
/// [`build_family`] uses the group it generates instead.
pub fn jsym3_parametric_set(p: u64) -> Result<GroupSet> {
    let m = Modulus::new(p)?;
    let u: Vec<i64> = units(p).map(|x| x as i64).collect();
    let all: Vec<i64> = (0..p as i64).collect();
    let elements = cartesian(&[u.clone(), u, all.clone(), all])
        .into_iter()
        .map(|v| ModMatrix::from_rows(m, &[vec![v[0], v[2], v[3]], vec![0, v[1], v[2]], vec![0, 0, v[0]]]).unwrap())
        .collect();
    GroupSet::from_elements(m, 3, elements)
}

/// Ramanujan sum `c_n(y) = μ(m) φ(n) / φ(m)` with `m = n / gcd(n, y)`.
pub fn ramanujan_oracle(n: u64, y: i64) -> i64 {
    assert!(n >= 1);
    let y = y.rem_euclid(n as i64) as u64;
    let m = n / gcd(n, y);
    mobius(m) * (totient(n) / totient(m)) as i64
}

/// Kloosterman sum `Σ_{t ∈ Z_p^×} e((a t + b t⁻¹)/p)` by direct summation.
pub fn kloosterman_oracle(p: u64, a: i64, b: i64) -> Complex64 {
    let modulus = p as i64;
    units(p)
        .map(|t| {
            let inv = inv_mod(t, p).unwrap() as i64;
            let k = (a * t as i64 + b * inv).rem_euclid(modulus);
            Complex64::from_polar(1.0, TAU * k as f64 / p as f64)
        })
        .sum()
}

/// Closed-form 4×4 table for the two families with printed tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceTable {
    pub entries: Vec<Vec<i64>>,
    /// Cell whose printed value was replaced by the brute-force value.
    pub corrected: Option<(usize, usize)>,
}

/// Printed tables for `diagonal(p, d = 2)` and `jsym3(p)`, as polynomials in
/// `p`. The printed diagonal table gives `−(p−1)` at `(3, 3)`; the correct
/// value `1` is used when `correct_errata` is set.
pub fn reference_table_oracle(spec: &FamilySpec, correct_errata: bool) -> Result<ReferenceTable> {
    let p = spec.param as i64;
    let q = p - 1;
    match spec.name {
        FamilyName::Diagonal if spec.dim == 2 => Ok(ReferenceTable {
            entries: vec![
                vec![1, 1, 1, 1],
                vec![q, -1, q, -1],
                vec![q, q, -1, -1],
                vec![q * q, -q, -q, if correct_errata { 1 } else { -q }],
            ],
            corrected: correct_errata.then_some((3, 3)),
        }),
        FamilyName::Jsym3 => Ok(ReferenceTable {
            entries: vec![
                vec![1, 1, 1, 1],
                vec![q, q, q, -1],
                vec![p * q, p * q, -p, 0],
                vec![p * p * q, -p * p, 0, 0],
            ],
            corrected: None,
        }),
        _ => Err(Error::UnsupportedFamily(spec.label())),
    }
}

/// Closed-form orbit census (size ↦ count) for diagonal and Toeplitz groups.
pub fn census_oracle(spec: &FamilySpec) -> Result<BTreeMap<usize, usize>> {
    let p = spec.param as usize;
    let d = spec.dim;
    let mut census = BTreeMap::new();
    match spec.name {
        FamilyName::Diagonal => {
            for k in 0..=d {
                *census.entry((p - 1).pow(k as u32)).or_insert(0) += binomial(d as u64, k as u64) as usize;
            }
        }
        FamilyName::Toeplitz => {
            census.insert(1, 1);
            for i in 2..=d + 1 {
                *census.entry(p.pow((i - 2) as u32)).or_insert(0) += p - 1;
            }
        }
        _ => return Err(Error::UnsupportedFamily(spec.label())),
    }
    Ok(census)
}
