use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::{InnerProductValue, PauliOp, QuditError};
use crate::cyclo::CycNumber;

#[derive(Clone, Debug)]
enum Amplitudes {
    /// Every amplitude is a bare root of unity `ω^e`; the common case for the
    /// code states, kept compact so dense sweeps stay in integer arithmetic.
    Phases(Vec<u32>),
    Exact(Vec<CycNumber>),
}

/// An unnormalized state on n qudits of dimension q. The physical state is
/// `q^{-norm_exp/2}` times the stored amplitude vector.
///
/// Amplitude index is the big-endian base-q digit string `c_1 c_2 … c_n`
/// (qudit 1 is the most significant digit).
#[derive(Clone, Debug)]
pub struct Ket {
    q: usize,
    n: usize,
    norm_exp: u32,
    amps: Amplitudes,
}

fn dimension(q: usize, n: usize) -> Result<usize, QuditError> {
    if q < 2 {
        return Err(QuditError::InvalidModulus(q));
    }
    q.checked_pow(n as u32).ok_or(QuditError::TooLarge { q, n })
}

impl Ket {
    pub fn from_amplitudes(q: usize, n: usize, amps: Vec<CycNumber>, norm_exp: u32) -> Result<Self, QuditError> {
        let dim = dimension(q, n)?;
        if amps.len() != dim {
            return Err(QuditError::AmplitudeCount { expected: dim, got: amps.len() });
        }
        if let Some(bad) = amps.iter().find(|a| a.modulus() != q) {
            return Err(QuditError::DimensionMismatch { what: "amplitude modulus", left: q, right: bad.modulus() });
        }
        Ok(Self { q, n, norm_exp, amps: Amplitudes::Exact(amps) })
    }

    /// A state whose amplitude at index `c` is `ω^{phases[c]}`.
    pub fn from_phases(q: usize, n: usize, phases: Vec<u32>, norm_exp: u32) -> Result<Self, QuditError> {
        let dim = dimension(q, n)?;
        if phases.len() != dim {
            return Err(QuditError::AmplitudeCount { expected: dim, got: phases.len() });
        }
        let qq = q as u32;
        Ok(Self { q, n, norm_exp, amps: Amplitudes::Phases(phases.into_iter().map(|e| e % qq).collect()) })
    }

    /// The computational basis state `|digits⟩`.
    pub fn basis(q: usize, digits: &[u32]) -> Result<Self, QuditError> {
        let n = digits.len();
        let dim = dimension(q, n)?;
        let mut amps = vec![CycNumber::zero(q)?; dim];
        amps[index_of(q, digits)?] = CycNumber::one(q)?;
        Self::from_amplitudes(q, n, amps, 0)
    }

    pub fn modulus(&self) -> usize {
        self.q
    }

    pub fn num_qudits(&self) -> usize {
        self.n
    }

    pub fn norm_exp(&self) -> u32 {
        self.norm_exp
    }

    pub fn len(&self) -> usize {
        match &self.amps {
            Amplitudes::Phases(p) => p.len(),
            Amplitudes::Exact(a) => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn amplitude(&self, index: usize) -> CycNumber {
        match &self.amps {
            Amplitudes::Phases(p) => CycNumber::omega_pow(self.q, p[index] as i64).expect("modulus validated"),
            Amplitudes::Exact(a) => a[index].clone(),
        }
    }

    pub fn amplitudes(&self) -> Vec<CycNumber> {
        (0..self.len()).map(|i| self.amplitude(i)).collect()
    }

    /// Phase exponents when every amplitude is a bare root of unity.
    pub fn phases(&self) -> Option<&[u32]> {
        match &self.amps {
            Amplitudes::Phases(p) => Some(p),
            Amplitudes::Exact(_) => None,
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<(), QuditError> {
        if self.q != other.q {
            return Err(QuditError::DimensionMismatch { what: "local dimension", left: self.q, right: other.q });
        }
        if self.n != other.n {
            return Err(QuditError::DimensionMismatch { what: "qudit count", left: self.n, right: other.n });
        }
        Ok(())
    }

    /// Kronecker product `self ⊗ other`; `self` occupies the leading qudits.
    pub fn tensor(&self, other: &Self) -> Result<Self, QuditError> {
        if self.q != other.q {
            return Err(QuditError::DimensionMismatch { what: "local dimension", left: self.q, right: other.q });
        }
        let n = self.n + other.n;
        dimension(self.q, n)?;
        let norm_exp = self.norm_exp + other.norm_exp;
        let amps = match (&self.amps, &other.amps) {
            (Amplitudes::Phases(u), Amplitudes::Phases(v)) => {
                let q = self.q as u32;
                Amplitudes::Phases(u.iter().flat_map(|&a| v.iter().map(move |&b| (a + b) % q)).collect())
            }
            _ => {
                let (u, v) = (self.amplitudes(), other.amplitudes());
                Amplitudes::Exact(u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect())
            }
        };
        Ok(Self { q: self.q, n, norm_exp, amps })
    }

    /// Applies `ω^p ⊗_i X(a_i)Z(b_i)`, sending `|c⟩` to `ω^{p + b·c} |c + a⟩`.
    pub fn apply_pauli(&self, op: &PauliOp) -> Result<Self, QuditError> {
        if op.modulus() != self.q {
            return Err(QuditError::DimensionMismatch { what: "local dimension", left: self.q, right: op.modulus() });
        }
        if op.num_qudits() != self.n {
            return Err(QuditError::DimensionMismatch { what: "qudit count", left: self.n, right: op.num_qudits() });
        }
        let q = self.q;
        let dim = self.len();
        let mut digits = vec![0u32; self.n];
        let mut targets = Vec::with_capacity(dim);
        for _ in 0..dim {
            let mut phase = op.phase_exp() as u64;
            let mut target = 0usize;
            for (i, &c) in digits.iter().enumerate() {
                phase += op.zvec()[i] as u64 * c as u64;
                target = target * q + (c as usize + op.xvec()[i] as usize) % q;
            }
            targets.push((target, (phase % q as u64) as u32));
            increment(&mut digits, q as u32);
        }
        let amps = match &self.amps {
            Amplitudes::Phases(p) => {
                let mut out = vec![0u32; dim];
                for (src, &(dst, ph)) in targets.iter().enumerate() {
                    out[dst] = (p[src] + ph) % q as u32;
                }
                Amplitudes::Phases(out)
            }
            Amplitudes::Exact(a) => {
                let mut out = vec![CycNumber::zero(q)?; dim];
                for (src, &(dst, ph)) in targets.iter().enumerate() {
                    out[dst] = a[src].mul_omega_pow(ph as i64);
                }
                Amplitudes::Exact(out)
            }
        };
        Ok(Self { q, n: self.n, norm_exp: self.norm_exp, amps })
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<InnerProductValue, QuditError> {
        self.check_same_space(other)?;
        let q = self.q;
        let value = match (&self.amps, &other.amps) {
            (Amplitudes::Phases(u), Amplitudes::Phases(v)) => {
                let mut counts = vec![0i64; q];
                for (&a, &b) in u.iter().zip(v) {
                    counts[(b as usize + q - a as usize) % q] += 1;
                }
                CycNumber::from_counts(q, &counts)
            }
            _ => {
                let mut acc = vec![BigRational::zero(); q];
                for i in 0..self.len() {
                    let (a, b) = (self.amplitude(i), other.amplitude(i));
                    for (j, ca) in a.coeffs().iter().enumerate() {
                        if ca.is_zero() {
                            continue;
                        }
                        for (k, cb) in b.coeffs().iter().enumerate() {
                            if !cb.is_zero() {
                                acc[(k + q - j) % q] += ca * cb;
                            }
                        }
                    }
                }
                CycNumber::from_coeffs(q, acc)?
            }
        };
        Ok(InnerProductValue::new(value, self.norm_exp + other.norm_exp))
    }

    /// Floating-point amplitudes including the normalization, for display.
    pub fn to_complex(&self) -> Vec<Complex64> {
        let scale = (self.q as f64).powf(-(self.norm_exp as f64) / 2.0);
        (0..self.len()).map(|i| self.amplitude(i).as_complex() * scale).collect()
    }

    /// Multiplies the stored vector by a rational without touching `norm_exp`.
    pub fn scaled(&self, r: &BigRational) -> Self {
        let amps = self.amplitudes().iter().map(|a| a.scale(r)).collect();
        Self { q: self.q, n: self.n, norm_exp: self.norm_exp, amps: Amplitudes::Exact(amps) }
    }

    /// Exact (unnormalized) sum; both states must share `norm_exp`.
    pub fn add(&self, other: &Self) -> Result<Self, QuditError> {
        self.check_same_space(other)?;
        if self.norm_exp != other.norm_exp {
            return Err(QuditError::DimensionMismatch {
                what: "norm exponent",
                left: self.norm_exp as usize,
                right: other.norm_exp as usize,
            });
        }
        let amps = (0..self.len()).map(|i| &self.amplitude(i) + &other.amplitude(i)).collect();
        Ok(Self { q: self.q, n: self.n, norm_exp: self.norm_exp, amps: Amplitudes::Exact(amps) })
    }
}

/// Big-endian base-q index of a digit string.
pub fn index_of(q: usize, digits: &[u32]) -> Result<usize, QuditError> {
    digits.iter().enumerate().try_fold(0usize, |acc, (pos, &d)| {
        if d as usize >= q {
            Err(QuditError::DigitOutOfRange { pos, digit: d, q })
        } else {
            Ok(acc * q + d as usize)
        }
    })
}

pub fn digits_of(q: usize, n: usize, mut index: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for slot in out.iter_mut().rev() {
        *slot = (index % q) as u32;
        index /= q;
    }
    out
}

fn increment(digits: &mut [u32], q: u32) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return;
        }
        *d = 0;
    }
}

impl PartialEq for Ket {
    /// Equality of the physical (normalized) states.
    fn eq(&self, other: &Self) -> bool {
        if self.check_same_space(other).is_err() {
            return false;
        }
        if self.norm_exp == other.norm_exp {
            if let (Amplitudes::Phases(u), Amplitudes::Phases(v)) = (&self.amps, &other.amps) {
                return u == v;
            }
        }
        // Compare q^{h'} |u⟩ with q^{h} |v⟩ after clearing even exponent gaps.
        let (hu, hv) = (self.norm_exp as i64, other.norm_exp as i64);
        if (hu - hv) % 2 != 0 {
            return (0..self.len()).all(|i| self.amplitude(i).is_zero() && other.amplitude(i).is_zero());
        }
        let q = BigRational::from_integer(BigInt::from(self.q));
        let gap = ((hu - hv) / 2).unsigned_abs() as usize;
        let factor = num_traits::pow(q, gap);
        (0..self.len()).all(|i| {
            let (a, b) = (self.amplitude(i), other.amplitude(i));
            if hu >= hv {
                a == b.scale(&factor)
            } else {
                a.scale(&factor) == b
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli(q: usize, x: &[u32], z: &[u32]) -> PauliOp {
        PauliOp::new(q, x.to_vec(), z.to_vec(), 0).unwrap()
    }

    #[test]
    fn tensor_of_basis_states() {
        let zero = Ket::basis(2, &[0]).unwrap();
        let zz = zero.tensor(&zero).unwrap();
        assert_eq!(zz, Ket::basis(2, &[0, 0]).unwrap());
        let u = Ket::from_phases(3, 1, vec![0, 1, 2], 1).unwrap();
        let v = Ket::from_phases(3, 2, vec![0; 9], 2).unwrap();
        let uv = u.tensor(&v).unwrap();
        assert_eq!(uv.norm_exp(), 3);
        assert_eq!(uv.num_qudits(), 3);
        assert_eq!(uv.len(), 27);
        assert!(u.tensor(&Ket::basis(2, &[1]).unwrap()).is_err());
    }

    #[test]
    fn apply_pauli_examples() {
        let s = Ket::from_phases(3, 2, vec![0, 1, 2, 1, 1, 0, 2, 2, 2], 2).unwrap();
        assert_eq!(s.apply_pauli(&PauliOp::identity(3, 2).unwrap()).unwrap(), s);

        let plus = Ket::from_phases(2, 1, vec![0, 0], 1).unwrap();
        assert_eq!(plus.apply_pauli(&pauli(2, &[1], &[0])).unwrap(), plus);

        let two = Ket::basis(3, &[2]).unwrap();
        let out = two.apply_pauli(&pauli(3, &[0], &[1])).unwrap();
        assert_eq!(out.amplitude(2), CycNumber::omega_pow(3, 2).unwrap());
        assert!(out.amplitude(0).is_zero() && out.amplitude(1).is_zero());

        assert!(s.apply_pauli(&PauliOp::identity(3, 3).unwrap()).is_err());
    }

    #[test]
    fn x_then_z_convention() {
        // X(1)Z(1)|1⟩ = ω|2⟩ for q = 3.
        let one = Ket::basis(3, &[1]).unwrap();
        let out = one.apply_pauli(&pauli(3, &[1], &[1])).unwrap();
        assert_eq!(out.amplitude(2), CycNumber::omega_pow(3, 1).unwrap());
    }

    #[test]
    fn inner_examples() {
        let zero = Ket::basis(2, &[0]).unwrap();
        let one = Ket::basis(2, &[1]).unwrap();
        assert!(zero.inner(&one).unwrap().is_zero());
        assert!(zero.inner(&zero).unwrap().is_one());

        let s = Ket::from_phases(3, 1, vec![0, 1, 2], 1).unwrap();
        let ip = s.inner(&s).unwrap();
        assert_eq!(ip.half_exp(), 2);
        assert_eq!(ip.value(), &CycNumber::from_integers(3, &[3, 0, 0]).unwrap());
        assert!(ip.is_one());
        assert!(s.inner(&zero).is_err());
    }

    #[test]
    fn exact_and_phase_paths_agree() {
        let s = Ket::from_phases(4, 2, (0..16).map(|i| (i * 7 % 5) as u32).collect(), 2).unwrap();
        let t = Ket::from_phases(4, 2, (0..16).map(|i| (i * 3 % 4) as u32).collect(), 2).unwrap();
        let s_exact = Ket::from_amplitudes(4, 2, s.amplitudes(), 2).unwrap();
        assert_eq!(s.inner(&t).unwrap(), s_exact.inner(&t).unwrap());
        let op = pauli(4, &[1, 3], &[2, 1]);
        assert_eq!(s.apply_pauli(&op).unwrap(), s_exact.apply_pauli(&op).unwrap());
        assert_eq!(s.tensor(&t).unwrap(), s_exact.tensor(&t).unwrap());
    }

    #[test]
    fn digit_indexing_is_big_endian() {
        assert_eq!(index_of(3, &[1, 0, 2]).unwrap(), 11);
        assert_eq!(digits_of(3, 3, 11), vec![1, 0, 2]);
        assert!(index_of(3, &[3]).is_err());
    }

    #[test]
    fn amplitude_count_checked() {
        assert!(Ket::from_phases(2, 2, vec![0; 3], 0).is_err());
        assert!(Ket::from_amplitudes(2, 1, vec![CycNumber::one(3).unwrap(); 2], 0).is_err());
    }
}
