//! Scalars, row vectors and square matrices over the residue ring Z_n.
//!
//! Every value carries its [`Modulus`] and is kept reduced into `[0, n)`, so
//! structural equality is ring equality. Inversion goes through the adjugate
//! and a unit determinant, which is valid for composite `n` as well.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::inv_mod;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Modulus(n))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces a signed integer into `[0, n)`.
    #[inline]
    pub fn reduce(self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.0 as i128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn inverse(self, a: u64) -> Option<u64> {
        inv_mod(a, self.0)
    }

    fn check(self, other: Modulus) -> Result<()> {
        if self != other {
            return Err(Error::ModulusMismatch { left: self.0, right: other.0 });
        }
        Ok(())
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;
    fn try_from(n: u64) -> Result<Self> {
        Modulus::new(n)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn check_dim(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

/// Row vector in Z_n^d.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModVector {
    modulus: Modulus,
    entries: Vec<u64>,
}

impl ModVector {
    pub fn new<I: IntoIterator<Item = i64>>(modulus: Modulus, entries: I) -> Self {
        ModVector { modulus, entries: entries.into_iter().map(|v| modulus.reduce(v)).collect() }
    }

    pub(crate) fn from_reduced(modulus: Modulus, entries: Vec<u64>) -> Self {
        debug_assert!(entries.iter().all(|&e| e < modulus.get()));
        ModVector { modulus, entries }
    }

    pub fn zeros(modulus: Modulus, dim: usize) -> Self {
        ModVector { modulus, entries: vec![0; dim] }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// The right action `y ↦ yA`.
    pub fn mul_mat(&self, a: &ModMatrix) -> Result<ModVector> {
        self.modulus.check(a.modulus)?;
        check_dim(self.dim(), a.dim)?;
        let mut out = vec![0; a.dim];
        a.apply_row(&self.entries, &mut out);
        Ok(ModVector { modulus: self.modulus, entries: out })
    }

    /// Standard bilinear pairing `Σ x_i y_i mod n`.
    pub fn dot(&self, other: &ModVector) -> Result<u64> {
        self.modulus.check(other.modulus)?;
        check_dim(self.dim(), other.dim())?;
        Ok(dot_raw(self.modulus, &self.entries, &other.entries))
    }
}

impl fmt::Display for ModVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[inline]
pub(crate) fn dot_raw(m: Modulus, x: &[u64], y: &[u64]) -> u64 {
    let n = m.get() as u128;
    let s = x.iter().zip(y).fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % n);
    s as u64
}

/// Square matrix over Z_n, row-major.
///
/// The derived ordering compares entries row-major lexicographically once the
/// modulus and dimension agree; group element sets are sorted by it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix {
    modulus: Modulus,
    dim: usize,
    entries: Vec<u64>,
}

/// `vec_mat_mul` in free-function form.
pub fn vec_mat_mul(y: &ModVector, a: &ModMatrix) -> Result<ModVector> {
    y.mul_mat(a)
}

/// `dot` in free-function form.
pub fn dot(x: &ModVector, y: &ModVector) -> Result<u64> {
    x.dot(y)
}

impl ModMatrix {
    pub fn new<I: IntoIterator<Item = i64>>(modulus: Modulus, dim: usize, entries: I) -> Result<Self> {
        let entries: Vec<u64> = entries.into_iter().map(|v| modulus.reduce(v)).collect();
        check_dim(entries.len(), dim * dim)?;
        Ok(ModMatrix { modulus, dim, entries })
    }

    pub fn from_rows(modulus: Modulus, rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        for r in rows {
            check_dim(r.len(), dim)?;
        }
        Self::new(modulus, dim, rows.iter().flatten().copied())
    }

    pub fn identity(modulus: Modulus, dim: usize) -> Self {
        Self::diag(modulus, &vec![1; dim])
    }

    pub fn diag(modulus: Modulus, diagonal: &[i64]) -> Self {
        let dim = diagonal.len();
        let mut entries = vec![0; dim * dim];
        for (i, &v) in diagonal.iter().enumerate() {
            entries[i * dim + i] = modulus.reduce(v);
        }
        ModMatrix { modulus, dim, entries }
    }

    /// The anti-diagonal permutation matrix (ones on `i + j = d - 1`).
    pub fn anti_identity(modulus: Modulus, dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + (dim - 1 - i)] = 1;
        }
        ModMatrix { modulus, dim, entries }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.entries.chunks(self.dim.max(1))
    }

    pub fn transpose(&self) -> ModMatrix {
        let d = self.dim;
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j];
            }
        }
        ModMatrix { modulus: self.modulus, dim: d, entries }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.modulus, self.dim)
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<ModMatrix> {
        self.modulus.check(other.modulus)?;
        check_dim(self.dim, other.dim)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &ModMatrix) -> ModMatrix {
        let d = self.dim;
        let n = self.modulus.get() as u128;
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = 0u128;
                for k in 0..d {
                    acc += self.entries[i * d + k] as u128 * other.entries[k * d + j] as u128;
                }
                entries[i * d + j] = (acc % n) as u64;
            }
        }
        ModMatrix { modulus: self.modulus, dim: d, entries }
    }

    /// Writes `row · self` into `out`; both slices have length `dim`.
    #[inline]
    pub(crate) fn apply_row(&self, row: &[u64], out: &mut [u64]) {
        let d = self.dim;
        let n = self.modulus.get() as u128;
        for (j, o) in out.iter_mut().enumerate() {
            let mut acc = 0u128;
            for (k, &r) in row.iter().enumerate() {
                acc += r as u128 * self.entries[k * d + j] as u128;
            }
            *o = (acc % n) as u64;
        }
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    /// Determinant over the integers of the representatives in `[0, n)`.
    pub fn det_integer(&self) -> BigInt {
        bareiss_det(self.integer_rows())
    }

    /// Determinant reduced into `[0, n)`.
    pub fn det(&self) -> u64 {
        reduce_big(&self.det_integer(), self.modulus)
    }

    pub fn is_invertible(&self) -> bool {
        self.modulus.inverse(self.det()).is_some()
    }

    /// Inverse over Z_n as `det⁻¹ · adj(A)`.
    pub fn inverse(&self) -> Result<ModMatrix> {
        let det = self.det();
        let det_inv = self.modulus.inverse(det).ok_or(Error::NotAUnit { det, modulus: self.modulus.get() })?;
        let d = self.dim;
        let rows = self.integer_rows();
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                let minor: Vec<Vec<BigInt>> = rows
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != i)
                    .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let mut cof = reduce_big(&bareiss_det(minor), self.modulus);
                if (i + j) % 2 == 1 {
                    cof = (self.modulus.get() - cof) % self.modulus.get();
                }
                // adjugate is the transposed cofactor matrix
                entries[j * d + i] = self.modulus.mul(cof, det_inv);
            }
        }
        Ok(ModMatrix { modulus: self.modulus, dim: d, entries })
    }

    /// `A^{-t}`, the matrix by which `Γ` acts on characters.
    pub fn inv_transpose(&self) -> Result<ModMatrix> {
        Ok(self.inverse()?.transpose())
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn reduce_big(v: &BigInt, m: Modulus) -> u64 {
    v.mod_floor(&BigInt::from(m.get())).to_u64().expect("reduced value fits in u64")
}

/// Fraction-free Gaussian elimination; exact over Z.
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn modulus_rejects_small() {
        assert_eq!(Modulus::new(1), Err(Error::InvalidModulus(1)));
        assert!(Modulus::new(2).is_ok());
    }

    #[test]
    fn negative_entries_normalize() {
        let v = ModVector::new(m(5), [-1, 7, 0]);
        assert_eq!(v.entries(), &[4, 2, 0]);
    }

    #[test]
    fn mat_mul_examples() {
        let z5 = m(5);
        let a = ModMatrix::from_rows(z5, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(ModMatrix::identity(z5, 2).mul(&a).unwrap(), a);
        let prod = ModMatrix::diag(z5, &[2, 3]).mul(&ModMatrix::diag(z5, &[3, 2])).unwrap();
        assert_eq!(prod, ModMatrix::identity(z5, 2));
        let z3 = m(3);
        let u = ModMatrix::from_rows(z3, &[vec![1, 1], vec![0, 1]]).unwrap();
        let expect = ModMatrix::from_rows(z3, &[vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(u.mul(&u).unwrap(), expect);
    }

    #[test]
    fn mat_mul_mismatch() {
        let a = ModMatrix::identity(m(5), 2);
        assert!(matches!(a.mul(&ModMatrix::identity(m(5), 3)), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.mul(&ModMatrix::identity(m(7), 2)), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn determinant_examples() {
        for n in [2, 6, 11] {
            assert_eq!(ModMatrix::identity(m(n), 4).det(), 1);
        }
        assert_eq!(ModMatrix::diag(m(7), &[2, 3, 5]).det(), 30 % 7);
        assert_eq!(ModMatrix::anti_identity(m(5), 3).det(), 4);
        assert_eq!(ModMatrix::anti_identity(m(5), 3).det_integer(), BigInt::from(-1));
        let zero_pivot = ModMatrix::from_rows(m(13), &[vec![0, 1, 2], vec![3, 0, 4], vec![5, 6, 0]]).unwrap();
        // 0*(0-24) - 1*(0-20) + 2*(18-0) = 56
        assert_eq!(zero_pivot.det_integer(), BigInt::from(56));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(ModMatrix::identity(m(9), 3).inverse().unwrap(), ModMatrix::identity(m(9), 3));
        assert_eq!(ModMatrix::diag(m(5), &[2, 3]).inverse().unwrap(), ModMatrix::diag(m(5), &[3, 2]));
        let a = ModMatrix::from_rows(m(6), &[vec![2, 1], vec![1, 1]]).unwrap();
        let b = a.inverse().unwrap();
        assert_eq!(b, ModMatrix::from_rows(m(6), &[vec![1, 5], vec![5, 2]]).unwrap());
        assert!(a.mul(&b).unwrap().is_identity());
        assert!(b.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn inverse_rejects_non_units() {
        let a = ModMatrix::diag(m(6), &[2, 1]);
        assert_eq!(a.inverse(), Err(Error::NotAUnit { det: 2, modulus: 6 }));
        let singular = ModMatrix::from_rows(m(7), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(matches!(singular.inverse(), Err(Error::NotAUnit { det: 0, .. })));
    }

    #[test]
    fn inv_transpose_examples() {
        let s = ModMatrix::from_rows(m(7), &[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(s.inv_transpose().unwrap(), s.inverse().unwrap());
        assert_eq!(ModMatrix::diag(m(7), &[3, 5]).inv_transpose().unwrap(), ModMatrix::diag(m(7), &[5, 3]));
        let u = ModMatrix::from_rows(m(3), &[vec![1, 1], vec![0, 1]]).unwrap();
        let expect = ModMatrix::from_rows(m(3), &[vec![1, 0], vec![2, 1]]).unwrap();
        assert_eq!(u.inv_transpose().unwrap(), expect);
    }

    #[test]
    fn vector_action_examples() {
        let p = m(7);
        let a = ModMatrix::diag(p, &[3, 5]);
        assert!(ModVector::zeros(p, 2).mul_mat(&a).unwrap().is_zero());
        assert_eq!(ModVector::new(p, [1, 0]).mul_mat(&a).unwrap(), ModVector::new(p, [3, 0]));
        let t = ModMatrix::from_rows(p, &[vec![1, 4, 2], vec![0, 1, 4], vec![0, 0, 1]]).unwrap();
        assert_eq!(ModVector::new(p, [0, 1, 0]).mul_mat(&t).unwrap(), ModVector::new(p, [0, 1, 4]));
    }

    #[test]
    fn dot_examples() {
        let p = m(5);
        let x = ModVector::new(p, [1, 1]);
        assert_eq!(x.dot(&ModVector::zeros(p, 2)).unwrap(), 0);
        assert_eq!(x.dot(&ModVector::new(p, [3, 4])).unwrap(), 2);
        assert_eq!(ModVector::new(p, [1, 0, 0]).dot(&ModVector::new(p, [0, 3, 2])).unwrap(), 0);
        assert!(x.dot(&ModVector::zeros(p, 3)).is_err());
    }

    fn arb_case() -> impl Strategy<Value = (u64, usize, Vec<i64>, Vec<i64>, Vec<i64>, Vec<i64>)> {
        (2u64..13, 1usize..5).prop_flat_map(|(n, d)| {
            let e = -50i64..50;
            (
                Just(n),
                Just(d),
                proptest::collection::vec(e.clone(), d * d),
                proptest::collection::vec(e.clone(), d * d),
                proptest::collection::vec(e.clone(), d),
                proptest::collection::vec(e, d),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_laws((n, d, a, b, x, y) in arb_case()) {
            let md = m(n);
            let a = ModMatrix::new(md, d, a).unwrap();
            let b = ModMatrix::new(md, d, b).unwrap();
            let x = ModVector::new(md, x);
            let y = ModVector::new(md, y);
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.det(), md.mul(a.det(), b.det()));
            prop_assert_eq!(y.mul_mat(&a).unwrap().mul_mat(&b).unwrap(), y.mul_mat(&ab).unwrap());
            if let Ok(inv) = a.inverse() {
                prop_assert!(a.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&a).unwrap().is_identity());
                let lhs = x.mul_mat(&a.inv_transpose().unwrap()).unwrap().dot(&y.mul_mat(&a).unwrap()).unwrap();
                prop_assert_eq!(lhs, x.dot(&y).unwrap());
            } else {
                prop_assert!(md.inverse(a.det()).is_none());
            }
        }
    }
}
