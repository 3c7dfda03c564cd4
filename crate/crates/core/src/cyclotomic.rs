//! Exact arithmetic in the cyclotomic integers Z[ζ_n].
//!
//! A value is a length-`n` integer coefficient vector `Σ c_k ζ_n^k` reduced
//! modulo the cyclotomic polynomial Φ_n, so only the first φ(n) coefficients
//! can be nonzero and equality is componentwise. Coefficient arithmetic is
//! overflow-checked; an overflow panics rather than wrapping.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Double-precision complex approximation of a table entry.
pub type ComplexApprox = Complex64;

fn phi_cache() -> &'static Mutex<HashMap<usize, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

#[inline]
fn ck_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("cyclotomic coefficient overflow")
}

#[inline]
fn ck_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("cyclotomic coefficient overflow")
}

/// Coefficients of Φ_n, lowest degree first, from
/// `Φ_n = (x^n − 1) / Π_{d | n, d < n} Φ_d`. Memoized per `n`.
pub fn cyclotomic_polynomial(n: usize) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    let phi = Arc::new(num);
    phi_cache().lock().unwrap().insert(n, phi.clone());
    phi
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] = ck_add(rem[k + j], -ck_mul(c, dj));
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division was not exact");
    quot
}

/// Element of Z[ζ_n] in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycValue {
    n: usize,
    coeffs: Vec<i64>,
}

impl CycValue {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        CycValue { n, coeffs: vec![0; n] }
    }

    pub fn from_int(n: usize, k: i64) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[0] = k;
        v.normalize();
        v
    }

    pub fn one(n: usize) -> Self {
        Self::from_int(n, 1)
    }

    /// `ζ_n^k`, with `k` taken modulo `n`.
    pub fn root_power(n: usize, k: i64) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[k.rem_euclid(n as i64) as usize] = 1;
        v.normalize();
        v
    }

    /// `Σ_k counts[k] ζ_n^k`; `counts` may be any length, indices wrap mod `n`.
    pub fn from_coeffs(n: usize, counts: &[i64]) -> Self {
        let mut v = Self::zero(n);
        for (k, &c) in counts.iter().enumerate() {
            v.coeffs[k % n] = ck_add(v.coeffs[k % n], c);
        }
        v.normalize();
        v
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Normal-form coefficient vector of length `n`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    fn normalize(&mut self) {
        let phi = cyclotomic_polynomial(self.n);
        let deg = phi.len() - 1;
        for k in (deg..self.n).rev() {
            let c = self.coeffs[k];
            if c != 0 {
                let base = k - deg;
                for (j, &pj) in phi.iter().enumerate() {
                    self.coeffs[base + j] = ck_add(self.coeffs[base + j], -ck_mul(c, pj));
                }
                debug_assert_eq!(self.coeffs[k], 0);
            }
        }
    }

    fn check(&self, other: &CycValue) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch { left: self.n as u64, right: other.n as u64 });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CycValue) -> Result<CycValue> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| ck_add(a, b)).collect();
        Ok(CycValue { n: self.n, coeffs })
    }

    pub fn checked_sub(&self, other: &CycValue) -> Result<CycValue> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a.checked_sub(b).expect("cyclotomic coefficient overflow"))
            .collect();
        Ok(CycValue { n: self.n, coeffs })
    }

    /// Product via cyclic convolution modulo `x^n − 1`, then reduction by Φ_n.
    pub fn checked_mul(&self, other: &CycValue) -> Result<CycValue> {
        self.check(other)?;
        let n = self.n;
        let mut out = vec![0i64; n];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.coeffs.iter().enumerate().filter(|(_, &b)| b != 0) {
                let k = (i + j) % n;
                out[k] = ck_add(out[k], ck_mul(a, b));
            }
        }
        let mut v = CycValue { n, coeffs: out };
        v.normalize();
        Ok(v)
    }

    pub fn scale(&self, k: i64) -> CycValue {
        CycValue { n: self.n, coeffs: self.coeffs.iter().map(|&c| ck_mul(c, k)).collect() }
    }

    /// Complex conjugation `ζ^k ↦ ζ^{n−k}`.
    pub fn conj(&self) -> CycValue {
        let n = self.n;
        let mut out = vec![0i64; n];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[(n - k) % n] = c;
        }
        let mut v = CycValue { n, coeffs: out };
        v.normalize();
        v
    }

    pub fn to_complex(&self) -> ComplexApprox {
        eval_coeffs(self.n, &self.coeffs)
    }

    /// Plain-text rendering using `e(k/n) = exp(2πik/n)`.
    pub fn to_text(&self) -> String {
        self.render(|k, n| format!("e({k}/{n})"))
    }

    pub fn to_latex(&self) -> String {
        self.render(|k, n| if k == 1 { format!("\\zeta_{{{n}}}") } else { format!("\\zeta_{{{n}}}^{{{k}}}") })
    }

    fn render(&self, root: impl Fn(usize, usize) -> String) -> String {
        let mut out = String::new();
        for (k, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let mag = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            if k == 0 {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&mag.to_string());
                }
                out.push_str(&root(k, self.n));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// `Σ coeffs[k] e^{2πik/n}` in double precision, without normalizing.
pub fn eval_coeffs(n: usize, coeffs: &[i64]) -> ComplexApprox {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| Complex64::from_polar(c as f64, TAU * k as f64 / n as f64))
        .sum()
}

impl fmt::Display for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &CycValue {
    type Output = CycValue;
    fn add(self, rhs: &CycValue) -> CycValue {
        self.checked_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for &CycValue {
    type Output = CycValue;
    fn sub(self, rhs: &CycValue) -> CycValue {
        self.checked_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl Mul for &CycValue {
    type Output = CycValue;
    fn mul(self, rhs: &CycValue) -> CycValue {
        self.checked_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for &CycValue {
    type Output = CycValue;
    fn neg(self) -> CycValue {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for CycValue {
            type Output = CycValue;
            fn $method(self, rhs: CycValue) -> CycValue {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[derive(Serialize, Deserialize)]
struct CycRepr {
    n: usize,
    coeffs: Vec<i64>,
}

impl Serialize for CycValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycRepr { n: self.n, coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CycRepr::deserialize(d)?;
        if r.n == 0 {
            return Err(serde::de::Error::custom("n must be at least 1"));
        }
        Ok(CycValue::from_coeffs(r.n, &r.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: multiply out the product of (x − ζ^k) over primitive k
    /// numerically and round.
    fn phi_numeric(n: usize) -> Vec<i64> {
        let mut poly = vec![Complex64::new(1.0, 0.0)];
        for k in (1..=n).filter(|&k| num_integer::gcd(k, n) == 1) {
            let root = Complex64::from_polar(1.0, TAU * k as f64 / n as f64);
            let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * root;
            }
            poly = next;
        }
        poly.iter().map(|c| c.re.round() as i64).collect()
    }

    #[test]
    fn cyclotomic_polynomial_examples() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        for n in 1..=60 {
            assert_eq!(*cyclotomic_polynomial(n), phi_numeric(n), "n = {n}");
        }
    }

    #[test]
    fn root_power_examples() {
        assert_eq!(CycValue::root_power(7, 0), CycValue::one(7));
        assert_eq!(CycValue::root_power(2, 1), CycValue::from_int(2, -1));
        assert_eq!(CycValue::root_power(4, 2), CycValue::from_int(4, -1));
        assert_eq!(CycValue::root_power(5, -1), CycValue::root_power(5, 4));
    }

    #[test]
    fn vanishing_sums() {
        for n in [3, 5, 6, 7, 12] {
            let s = (0..n as i64).fold(CycValue::zero(n), |acc, k| &acc + &CycValue::root_power(n, k));
            assert!(s.is_zero(), "n = {n}");
        }
        let third = &(&CycValue::one(3) + &CycValue::root_power(3, 1)) + &CycValue::root_power(3, 2);
        assert_eq!(third, CycValue::zero(3));
    }

    #[test]
    fn ring_operation_examples() {
        assert_eq!(CycValue::root_power(5, 1).conj(), CycValue::root_power(5, 4));
        let z6 = CycValue::root_power(6, 1);
        let sq = &z6 * &z6;
        assert_eq!(sq, CycValue::root_power(6, 2));
        assert_eq!(sq, &z6 - &CycValue::one(6));
        assert_eq!(sq.coeffs(), &[-1, 1, 0, 0, 0, 0]);
        let s = &CycValue::root_power(8, 1) + &CycValue::root_power(8, 7);
        assert_eq!(CycValue::from_coeffs(8, s.coeffs()), s);
        assert!(CycValue::one(5).checked_add(&CycValue::one(7)).is_err());
    }

    #[test]
    fn complex_values() {
        assert!((CycValue::one(9).to_complex() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((CycValue::root_power(4, 1).to_complex() - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        // K(1,1) mod 5: exponents t + 1/t for t = 1..4 are 2, 0, 0, 3
        let k = CycValue::from_coeffs(5, &[2, 0, 1, 1, 0]);
        let direct: Complex64 = (1..5u64)
            .map(|t| {
                let inv = crate::arith::inv_mod(t, 5).unwrap();
                Complex64::from_polar(1.0, TAU * ((t + inv) % 5) as f64 / 5.0)
            })
            .sum();
        assert!((k.to_complex() - direct).norm() < 1e-12);
        assert!((k.to_complex().re - 0.381_966_011_250_105).abs() < 1e-12);
    }

    #[test]
    fn rendering() {
        assert_eq!(CycValue::from_int(5, -3).to_text(), "-3");
        assert_eq!(CycValue::zero(5).to_text(), "0");
        let v = CycValue::from_coeffs(5, &[0, 2, -1]);
        assert_eq!(v.to_text(), "2e(1/5) - e(2/5)");
        assert_eq!(v.to_latex(), "2\\zeta_{5} - \\zeta_{5}^{2}");
    }

    #[test]
    fn json_shape() {
        let v = CycValue::root_power(3, 2);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"n":3,"coeffs":[-1,-1,0]}"#);
        let back: CycValue = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    fn arb_value() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
        (1usize..40).prop_flat_map(|n| {
            (Just(n), proptest::collection::vec(-20i64..20, n), proptest::collection::vec(-20i64..20, n))
        })
    }

    proptest! {
        #[test]
        fn exact_laws((n, a, b) in arb_value(), i in -100i64..100, j in -100i64..100) {
            let x = CycValue::from_coeffs(n, &a);
            let y = CycValue::from_coeffs(n, &b);
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!(&CycValue::root_power(n, i) * &CycValue::root_power(n, j), CycValue::root_power(n, i + j));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(CycValue::from_coeffs(n, x.coeffs()), x.clone());
            let phi = cyclotomic_polynomial(n).len() - 1;
            prop_assert!(x.coeffs()[phi..].iter().all(|&c| c == 0));
            let naive = eval_coeffs(n, &a);
            let tol = 1e-12 * (1.0 + a.iter().map(|c| c.abs() as f64).sum::<f64>());
            prop_assert!((x.to_complex() - naive).norm() <= tol);
            prop_assert!(((&x * &y).to_complex() - x.to_complex() * y.to_complex()).norm() <= 1e-9 * (1.0 + naive.norm()) * (1.0 + y.to_complex().norm()) * 10.0);
        }
    }
}
