//! Supercharacter tables `σ_i(Y_j)` and the normalized unitary matrix `U`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::cyclotomic::{ComplexApprox, CycValue};
use crate::error::{Error, Result};
use crate::orbit::{Orbit, OrbitPartition};
use crate::residue::{dot_raw, ModVector};

pub const DEFAULT_TOL: f64 = 1e-10;

#[cfg(feature = "parallel")]
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Exact table `entries[i][j] = σ_{X_i}(rep Y_j) = Σ_{x ∈ X_i} ζ_n^{x·y}`.
///
/// Rows follow the supercharacter partition, columns the superclass partition.
/// The shape is rectangular when the two partitions have different lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupercharTable {
    x: OrbitPartition,
    y: OrbitPartition,
    entries: Vec<Vec<CycValue>>,
}

/// `σ_X(y)` computed from scratch.
pub(crate) fn orbit_sum(part: &Orbit, y: &ModVector) -> CycValue {
    let m = y.modulus();
    let n = m.get() as usize;
    let mut counts = vec![0i64; n];
    for x in &part.members {
        counts[dot_raw(m, x.entries(), y.entries()) as usize] += 1;
    }
    CycValue::from_coeffs(n, &counts)
}

pub fn build_table(x: &OrbitPartition, y: &OrbitPartition) -> Result<SupercharTable> {
    if x.modulus() != y.modulus() {
        return Err(Error::ModulusMismatch { left: x.modulus().get(), right: y.modulus().get() });
    }
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: y.dim() });
    }
    let reps: Vec<&ModVector> = y.orbits().iter().map(|o| &o.representative).collect();
    let entries = par_map(x.orbits(), |xi| reps.iter().map(|r| orbit_sum(xi, r)).collect());
    Ok(SupercharTable { x: x.clone(), y: y.clone(), entries })
}

impl SupercharTable {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.y.len()
    }

    pub fn entries(&self) -> &[Vec<CycValue>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycValue {
        &self.entries[i][j]
    }

    pub fn supercharacters(&self) -> &OrbitPartition {
        &self.x
    }

    pub fn superclasses(&self) -> &OrbitPartition {
        &self.y
    }

    /// `|G| = n^d`.
    pub fn group_order(&self) -> usize {
        self.y.point_count()
    }

    /// Cyclotomic order of the entries (the modulus n).
    pub fn root_order(&self) -> usize {
        self.x.modulus().get() as usize
    }

    /// Rational-integer view of the table, if every entry is an integer.
    pub fn as_integers(&self) -> Option<Vec<Vec<i64>>> {
        self.entries.iter().map(|row| row.iter().map(CycValue::as_integer).collect()).collect()
    }

    pub fn to_complex(&self) -> Vec<Vec<ComplexApprox>> {
        self.entries.iter().map(|r| r.iter().map(CycValue::to_complex).collect()).collect()
    }

    /// Triangle inequality `|σ_i(Y_j)| ≤ |X_i|` on every entry.
    pub fn entry_bound_holds(&self) -> bool {
        self.entries
            .iter()
            .zip(self.x.sizes())
            .all(|(row, size)| row.iter().all(|e| e.to_complex().norm() <= size as f64 + 1e-9))
    }
}

/// Row pairs `(i, i')`, `i ≤ i'`, violating
/// `Σ_j |Y_j| σ_i(Y_j) conj(σ_{i'}(Y_j)) = δ_{ii'} n^d |X_i|`, checked exactly.
pub fn orthogonality_defects(t: &SupercharTable) -> Vec<(usize, usize)> {
    let n = t.root_order();
    let sizes = t.y.sizes();
    let x_sizes = t.x.sizes();
    let conj: Vec<Vec<CycValue>> = t.entries.iter().map(|r| r.iter().map(CycValue::conj).collect()).collect();
    let pairs: Vec<(usize, usize)> = (0..t.rows()).flat_map(|i| (i..t.rows()).map(move |k| (i, k))).collect();
    let order = t.group_order() as i64;
    let ok = par_map(&pairs, |&(i, k)| {
        let mut acc = vec![0i64; n];
        for (j, &size) in sizes.iter().enumerate() {
            let a = t.entries[i][j].coeffs();
            let b = conj[k][j].coeffs();
            for (ea, &ca) in a.iter().enumerate().filter(|(_, &c)| c != 0) {
                let w = ca.checked_mul(size as i64).expect("orthogonality overflow");
                for (eb, &cb) in b.iter().enumerate().filter(|(_, &c)| c != 0) {
                    let slot = &mut acc[(ea + eb) % n];
                    *slot = slot
                        .checked_add(w.checked_mul(cb).expect("orthogonality overflow"))
                        .expect("orthogonality overflow");
                }
            }
        }
        let expected = if i == k { order * x_sizes[i] as i64 } else { 0 };
        CycValue::from_coeffs(n, &acc) == CycValue::from_int(n, expected)
    });
    pairs.into_iter().zip(ok).filter(|(_, ok)| !ok).map(|(p, _)| p).collect()
}

pub fn check_orthogonality(t: &SupercharTable) -> bool {
    orthogonality_defects(t).is_empty()
}

/// `U[i][j] = σ_i(Y_j) √|Y_j| / (√(n^d) √|X_i|)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    matrix: DMatrix<Complex64>,
}

pub fn build_unitary(t: &SupercharTable) -> Result<UnitaryMatrix> {
    if t.rows() != t.cols() {
        return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
    }
    let h = t.rows();
    let root_g = (t.group_order() as f64).sqrt();
    let xs = t.x.sizes();
    let ys = t.y.sizes();
    let matrix = DMatrix::from_fn(h, h, |i, j| {
        t.entries[i][j].to_complex() * ((ys[j] as f64).sqrt() / (root_g * (xs[i] as f64).sqrt()))
    });
    Ok(UnitaryMatrix { matrix })
}

impl UnitaryMatrix {
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Self {
        UnitaryMatrix { matrix }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Check {
    pub passed: bool,
    pub residual: f64,
}

impl Check {
    fn within(residual: f64, tol: f64) -> Self {
        Check { passed: residual <= tol, residual }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnitaryReport {
    pub tol: f64,
    /// `‖UU* − I‖_∞`.
    pub unitary: Check,
    /// `‖U − Uᵗ‖_∞`; only counts toward [`UnitaryReport::passed`] when required.
    pub symmetric: Check,
    pub symmetry_required: bool,
    /// `‖U² − P‖_∞` for the rounded permutation `P`.
    pub square_is_permutation: Check,
    /// `P` as `perm[i] = j` with `P[i][j] = 1`, when rounding yields a permutation.
    pub permutation: Option<Vec<usize>>,
    /// `‖U⁴ − I‖_∞`.
    pub fourth_power_identity: Check,
}

impl UnitaryReport {
    pub fn passed(&self) -> bool {
        self.unitary.passed
            && (!self.symmetry_required || self.symmetric.passed)
            && self.square_is_permutation.passed
            && self.fourth_power_identity.passed
    }
}

/// Largest entry modulus of `m`.
pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn round_to_permutation(m: &DMatrix<Complex64>) -> Option<Vec<usize>> {
    let h = m.nrows();
    let mut perm = vec![usize::MAX; h];
    let mut col_used = vec![false; h];
    for i in 0..h {
        for j in 0..h {
            let z = m[(i, j)];
            let (re, im) = (z.re.round(), z.im.round());
            if im != 0.0 {
                return None;
            }
            if re == 1.0 {
                if perm[i] != usize::MAX || col_used[j] {
                    return None;
                }
                perm[i] = j;
                col_used[j] = true;
            } else if re != 0.0 {
                return None;
            }
        }
    }
    perm.iter().all(|&p| p != usize::MAX).then_some(perm)
}

pub fn verify_unitary_properties(u: &UnitaryMatrix, symmetric: bool, tol: f64) -> UnitaryReport {
    let m = &u.matrix;
    let h = m.nrows();
    let id = DMatrix::<Complex64>::identity(h, h);
    let unitary = Check::within(max_abs(&(m * m.adjoint() - &id)), tol);
    let sym = Check::within(max_abs(&(m - m.transpose())), tol);
    let sq = m * m;
    let permutation = round_to_permutation(&sq);
    let square_is_permutation =
        match &permutation {
            Some(perm) => {
                let p = DMatrix::from_fn(h, h, |i, j| {
                    if perm[i] == j {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                Check::within(max_abs(&(&sq - p)), tol)
            }
            None => Check { passed: false, residual: f64::INFINITY },
        };
    let fourth = Check::within(max_abs(&(&sq * &sq - &id)), tol);
    UnitaryReport {
        tol,
        unitary,
        symmetric: sym,
        symmetry_required: symmetric,
        square_is_permutation,
        permutation,
        fourth_power_identity: fourth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::generate_closure;
    use crate::group::GroupSet;
    use crate::orbit::{orbits, Action};
    use crate::residue::{ModMatrix, Modulus};

    fn theory(g: &GroupSet) -> SupercharTable {
        let x = orbits(g, Action::Supercharacter).unwrap();
        let y = orbits(g, Action::Superclass).unwrap();
        build_table(&x, &y).unwrap()
    }

    fn diagonal(p: u64) -> GroupSet {
        let m = Modulus::new(p).unwrap();
        let gens: Vec<_> =
            (1..p as i64).flat_map(|a| [ModMatrix::diag(m, &[a, 1]), ModMatrix::diag(m, &[1, a])]).collect();
        generate_closure(m, 2, &gens, 10_000).unwrap()
    }

    /// Brute-force double sum `Σ_{x ∈ X} Σ ... e(x·y/p)` in floating point.
    fn brute(p: u64, xs: &[Vec<u64>], y: &[u64]) -> Complex64 {
        xs.iter()
            .map(|x| {
                let d: u64 = x.iter().zip(y).map(|(a, b)| a * b).sum::<u64>() % p;
                Complex64::from_polar(1.0, std::f64::consts::TAU * d as f64 / p as f64)
            })
            .sum()
    }

    #[test]
    fn diagonal_rows_match_closed_form() {
        for p in [3u64, 5, 7] {
            let t = theory(&diagonal(p));
            let q = p as i64 - 1;
            let ints = t.as_integers().unwrap();
            assert_eq!(ints[1], vec![q, -1, q, -1]);
            assert_eq!(ints[3][3], 1);
            let x4: Vec<Vec<u64>> =
                t.supercharacters().orbits()[3].members.iter().map(|v| v.entries().to_vec()).collect();
            assert!((brute(p, &x4, &[1, 1]) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
            assert!(check_orthogonality(&t));
            assert!(t.entry_bound_holds());
        }
    }

    #[test]
    fn orthogonality_of_rows_one_and_four() {
        let t = theory(&diagonal(3));
        assert!(orthogonality_defects(&t).is_empty());
        // with σ_4(Y_4) = −(p−1) instead the (0,3) pair would not vanish:
        // 4 − 4 − 4 + 4·(−2) ≠ 0
        let mut bad = t.clone();
        bad.entries[3][3] = CycValue::from_int(3, -2);
        assert!(orthogonality_defects(&bad).contains(&(0, 3)));
    }

    #[test]
    fn dft_two_point() {
        let m = Modulus::new(2).unwrap();
        let t = theory(&GroupSet::trivial(m, 1));
        let u = build_unitary(&t).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [[s, s], [s, -s]];
        for (i, row) in expect.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                assert!((u.get(i, j) - Complex64::new(e, 0.0)).norm() < 1e-15);
            }
        }
        let r = verify_unitary_properties(&u, true, DEFAULT_TOL);
        assert!(r.passed());
        assert_eq!(r.permutation, Some(vec![0, 1]));
    }

    #[test]
    fn diagonal_unitary_properties() {
        let t = theory(&diagonal(3));
        let u = build_unitary(&t).unwrap();
        let r = verify_unitary_properties(&u, true, 1e-12);
        assert!(r.passed(), "{r:?}");
        // U² = P pairs each superclass with its negative; all classes here are closed under −1
        assert_eq!(r.permutation, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn permutation_rounding_rejects_non_permutations() {
        let id = DMatrix::<Complex64>::identity(2, 2);
        assert_eq!(round_to_permutation(&id), Some(vec![0, 1]));
        let twice = &id * Complex64::new(2.0, 0.0);
        assert_eq!(round_to_permutation(&twice), None);
        let ones = DMatrix::from_element(2, 2, Complex64::new(1.0, 0.0));
        assert_eq!(round_to_permutation(&ones), None);
        let r = verify_unitary_properties(&UnitaryMatrix::from_matrix(twice), false, 1e-10);
        assert!(!r.passed());
        assert!(!r.square_is_permutation.passed);
    }

    #[test]
    fn not_square() {
        let m = Modulus::new(3).unwrap();
        let g = GroupSet::trivial(m, 1);
        let x = orbits(&g, Action::Supercharacter).unwrap();
        let z = ModVector::zeros(m, 1);
        let y = OrbitPartition::from_parts(
            m,
            1,
            vec![vec![z], vec![ModVector::new(m, [1]), ModVector::new(m, [2])]],
            Action::Custom,
        )
        .unwrap();
        let t = build_table(&x, &y).unwrap();
        assert_eq!((t.rows(), t.cols()), (3, 2));
        assert!(matches!(build_unitary(&t), Err(Error::NotSquare { rows: 3, cols: 2 })));
    }
}
