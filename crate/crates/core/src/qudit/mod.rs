//! Qudit state vectors, generalized Pauli operators and exact inner products.

mod ket;
mod pauli;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use thiserror::Error;

use crate::cyclo::{CycNumber, CycloError};

pub use ket::{digits_of, index_of, Ket};
pub(crate) use pauli::advance;
pub use pauli::{enumerate_paulis, pauli_count, PauliOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuditError {
    #[error("invalid local dimension {0}: q must be at least 2")]
    InvalidModulus(usize),
    #[error("dimension mismatch ({what}): {left} vs {right}")]
    DimensionMismatch { what: &'static str, left: usize, right: usize },
    #[error("expected {expected} amplitudes, got {got}")]
    AmplitudeCount { expected: usize, got: usize },
    #[error("position {pos} out of range for {n} qudits")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("digit {digit} at position {pos} is not in Z_{q}")]
    DigitOutOfRange { pos: usize, digit: u32, q: usize },
    #[error("state space {q}^{n} is too large")]
    TooLarge { q: usize, n: usize },
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// An exact scalar `value · q^{-half_exp/2}`.
///
/// Inner products of states with norm exponents `h` and `h'` carry
/// `half_exp = h + h'`, so a unit-norm overlap has `value = q^{(h+h')/2}`.
#[derive(Clone, Debug)]
pub struct InnerProductValue {
    value: CycNumber,
    half_exp: u32,
}

impl InnerProductValue {
    pub fn new(value: CycNumber, half_exp: u32) -> Self {
        Self { value, half_exp }
    }

    pub fn value(&self) -> &CycNumber {
        &self.value
    }

    pub fn half_exp(&self) -> u32 {
        self.half_exp
    }

    pub fn modulus(&self) -> usize {
        self.value.modulus()
    }

    /// Pulls every whole factor of q out of the scale, leaving `half_exp` in {0, 1}.
    pub fn normalized(&self) -> Self {
        if self.half_exp < 2 {
            return self.clone();
        }
        let q = BigInt::from(self.value.modulus());
        let steps = self.half_exp / 2;
        let inv = BigRational::new(BigInt::from(1), num_traits::pow(q, steps as usize));
        Self { value: self.value.scale(&inv), half_exp: self.half_exp % 2 }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        let n = self.normalized();
        n.half_exp == 0 && n.value == CycNumber::one(n.value.modulus()).expect("valid modulus")
    }

    pub fn conjugate(&self) -> Self {
        Self { value: self.value.conjugate(), half_exp: self.half_exp }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(Self { value: self.value.checked_mul(&other.value)?, half_exp: self.half_exp + other.half_exp })
    }

    pub fn mul_omega_pow(&self, e: i64) -> Self {
        Self { value: self.value.mul_omega_pow(e), half_exp: self.half_exp }
    }

    pub fn as_complex(&self) -> Complex64 {
        let scale = (self.value.modulus() as f64).powf(-(self.half_exp as f64) / 2.0);
        self.value.as_complex() * scale
    }
}

impl PartialEq for InnerProductValue {
    /// Values whose normalized scales differ by a half-integer power of q
    /// compare equal only when both vanish.
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        if a.half_exp == b.half_exp {
            a.value == b.value
        } else {
            a.value.is_zero() && b.value.is_zero()
        }
    }
}

impl Eq for InnerProductValue {}

impl std::fmt::Display for InnerProductValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.normalized();
        if n.half_exp == 0 {
            write!(f, "{}", n.value)
        } else {
            write!(f, "({}) / sqrt({})", n.value, n.value.modulus())
        }
    }
}
