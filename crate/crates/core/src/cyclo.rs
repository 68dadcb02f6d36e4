//! Exact arithmetic in the cyclotomic field Q(ω), ω = exp(2πi/q).
//!
//! Elements are stored in the redundant group-ring basis `1, ω, …, ω^{q-1}`.
//! That basis is not linearly independent over Q once q is composite (or even
//! prime), so no canonical form is kept between operations. Equality and the
//! zero test reduce the coefficient polynomial modulo the q-th cyclotomic
//! polynomial Φ_q, which is exact for every q ≥ 2.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("invalid modulus {0}: q must be at least 2")]
    InvalidModulus(usize),
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
}

/// An exact element `Σ_j coeffs[j] ω^j` of Q(ω_q).
#[derive(Clone, Debug)]
pub struct CycNumber {
    q: usize,
    coeffs: Vec<BigRational>,
}

fn check_modulus(q: usize) -> Result<(), CycloError> {
    if q < 2 {
        Err(CycloError::InvalidModulus(q))
    } else {
        Ok(())
    }
}

impl CycNumber {
    pub fn zero(q: usize) -> Result<Self, CycloError> {
        check_modulus(q)?;
        Ok(Self { q, coeffs: vec![BigRational::zero(); q] })
    }

    pub fn one(q: usize) -> Result<Self, CycloError> {
        Self::omega_pow(q, 0)
    }

    /// The root of unity `ω^(e mod q)`.
    pub fn omega_pow(q: usize, e: i64) -> Result<Self, CycloError> {
        let mut out = Self::zero(q)?;
        out.coeffs[e.rem_euclid(q as i64) as usize] = BigRational::one();
        Ok(out)
    }

    pub fn from_coeffs(q: usize, coeffs: Vec<BigRational>) -> Result<Self, CycloError> {
        check_modulus(q)?;
        if coeffs.len() != q {
            return Err(CycloError::CoefficientCount { expected: q, got: coeffs.len() });
        }
        Ok(Self { q, coeffs })
    }

    pub fn from_integers(q: usize, coeffs: &[i64]) -> Result<Self, CycloError> {
        Self::from_coeffs(
            q,
            coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        )
    }

    /// Builds `Σ_j counts[j] ω^j` from integer exponent tallies.
    pub(crate) fn from_counts(q: usize, counts: &[i64]) -> Self {
        debug_assert_eq!(counts.len(), q);
        Self {
            q,
            coeffs: counts.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        }
    }

    pub fn from_rational(q: usize, r: BigRational) -> Result<Self, CycloError> {
        let mut out = Self::zero(q)?;
        out.coeffs[0] = r;
        Ok(out)
    }

    pub fn modulus(&self) -> usize {
        self.q
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn same_modulus(&self, other: &Self) -> Result<(), CycloError> {
        if self.q == other.q {
            Ok(())
        } else {
            Err(CycloError::ModulusMismatch { left: self.q, right: other.q })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.same_modulus(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { q: self.q, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.same_modulus(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { q: self.q, coeffs })
    }

    /// Polynomial product with exponents folded mod q.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.same_modulus(other)?;
        let q = self.q;
        let mut coeffs = vec![BigRational::zero(); q];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[(i + j) % q] += a * b;
            }
        }
        Ok(Self { q, coeffs })
    }

    /// Multiplication by `ω^e`; a cyclic rotation of the coefficients.
    pub fn mul_omega_pow(&self, e: i64) -> Self {
        let shift = e.rem_euclid(self.q as i64) as usize;
        let mut coeffs = self.coeffs.clone();
        coeffs.rotate_right(shift);
        Self { q: self.q, coeffs }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self { q: self.q, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Complex conjugation: `ω^j ↦ ω^{q-j}`.
    pub fn conjugate(&self) -> Self {
        let q = self.q;
        let mut coeffs = vec![BigRational::zero(); q];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[(q - j) % q] = c.clone();
        }
        Self { q, coeffs }
    }

    /// Remainder of the coefficient polynomial modulo Φ_q, padded with zeros
    /// back to length q. Equal field elements have equal reductions, so this
    /// doubles as a canonical form.
    pub fn reduced(&self) -> Vec<BigRational> {
        let phi = cyclotomic_polynomial_cached(self.q);
        let deg = phi.len() - 1;
        let mut r = self.coeffs.clone();
        for top in (deg..self.q).rev() {
            if r[top].is_zero() {
                continue;
            }
            let lead = r[top].clone();
            // Φ_q is monic, so the quotient digit is just the leading coefficient.
            for (k, p) in phi.iter().enumerate() {
                if !p.is_zero() {
                    r[top - deg + k] -= &lead * BigRational::from_integer(p.clone());
                }
            }
        }
        r
    }

    pub fn canonical(&self) -> Self {
        Self { q: self.q, coeffs: self.reduced() }
    }

    /// True iff Φ_q divides the coefficient polynomial.
    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(Zero::is_zero) {
            return true;
        }
        self.reduced().iter().all(Zero::is_zero)
    }

    /// If the value is a rational number, returns it.
    pub fn as_rational(&self) -> Option<BigRational> {
        let r = self.reduced();
        if r[1..].iter().all(Zero::is_zero) {
            Some(r[0].clone())
        } else {
            None
        }
    }

    /// Floating-point evaluation, for display and cross-checks only.
    pub fn as_complex(&self) -> Complex64 {
        let q = self.q as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let angle = 2.0 * std::f64::consts::PI * j as f64 / q;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        match self.checked_sub(other) {
            Ok(diff) => diff.is_zero(),
            Err(_) => false,
        }
    }
}

impl Eq for CycNumber {}

impl fmt::Display for CycNumber {
    /// Prints the canonical reduction, e.g. `1 - 2*w^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        let mut first = true;
        for (j, c) in r.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "w^{j}")?,
                (_, false) => write!(f, "{mag}*w^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Operator impls panic on modulus mismatch; use the `checked_*` methods when
/// the moduli are not known to agree.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                self.$checked(rhs).expect("cyclotomic operands with different moduli")
            }
        }
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber { q: self.q, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

/// Coefficients of Φ_q, lowest degree first.
///
/// Computed as `(x^q - 1) / Π_{d | q, d < q} Φ_d` by exact division.
pub fn cyclotomic_polynomial(q: usize) -> Vec<BigInt> {
    assert!(q >= 1, "cyclotomic polynomial index must be positive");
    let mut num = vec![BigInt::zero(); q + 1];
    num[0] = BigInt::from(-1);
    num[q] = BigInt::one();
    for d in (1..q).filter(|d| q.is_multiple_of(*d)) {
        num = exact_div(&num, &cyclotomic_polynomial_cached(d));
    }
    num
}

fn cyclotomic_polynomial_cached(q: usize) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().expect("cyclotomic cache poisoned").get(&q) {
        return Arc::clone(p);
    }
    let p = Arc::new(cyclotomic_polynomial(q));
    cache.write().expect("cyclotomic cache poisoned").entry(q).or_insert(p).clone()
}

/// Division by a monic integer polynomial that is known to divide `num`.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for top in (dn..num.len()).rev() {
        let c = rem[top].clone();
        if c.is_zero() {
            continue;
        }
        quot[top - dn] = c.clone();
        for (k, d) in den.iter().enumerate() {
            rem[top - dn + k] -= &c * d;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}
