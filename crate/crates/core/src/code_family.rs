//! The `[[n, n-3 : 1, 2]]` hybrid code family over Z_q (n odd).
//!
//! With `n = 2t + 1`, a codeword is `|φ_{a,b}⟩ ⊗ |ψ_m⟩` where `|φ_{a,b}⟩` is a
//! product of t two-qudit pair states on qudits `1..2t` and `|ψ_m⟩` is a
//! Fourier state on qudit n. Inner code `C_m` collects the labels with
//! `Σ a_i ≡ 0` and `Σ b_i ≡ m (mod q)`, giving `K = q^{n-3}` codewords per
//! message and `M = q` messages.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::qudit::{advance, Ket, PauliOp, QuditError};
use crate::verifier::{self, Engine, VerificationReport};

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("invalid modulus {0}: q must be at least 2")]
    InvalidModulus(usize),
    #[error("n must be odd (got {0})")]
    EvenLength(usize),
    #[error("n must be at least 3 (got {0})")]
    TooShort(usize),
    #[error("message {m} is not in Z_{q}")]
    MessageOutOfRange { m: u32, q: usize },
    #[error("label vectors must both have length {expected}")]
    LabelLength { expected: usize },
    #[error("cannot split: every inner code already has dimension 1")]
    CannotSplit,
    #[error("invalid split coordinate {coord}: {reason}")]
    InvalidSelector { coord: LabelCoordinate, reason: String },
    #[error("split is not a valid hybrid code: error {} is not detected", .error.label())]
    SplitInvalid { error: PauliOp, report: Box<VerificationReport> },
    #[error(transparent)]
    Qudit(#[from] QuditError),
}

/// Label `(a, b, m)` of a codeword `|φ_{a,b}⟩ ⊗ |ψ_m⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodewordLabel {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub m: u32,
}

/// A free label coordinate, `a_i` or `b_i` with `1 ≤ i ≤ t-1` (stored zero-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LabelCoordinate {
    A(usize),
    B(usize),
}

impl LabelCoordinate {
    fn value(&self, label: &CodewordLabel) -> u32 {
        match *self {
            LabelCoordinate::A(i) => label.a[i],
            LabelCoordinate::B(i) => label.b[i],
        }
    }

    fn index(&self) -> usize {
        match *self {
            LabelCoordinate::A(i) | LabelCoordinate::B(i) => i,
        }
    }
}

impl fmt::Display for LabelCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LabelCoordinate::A(i) => write!(f, "a{}", i + 1),
            LabelCoordinate::B(i) => write!(f, "b{}", i + 1),
        }
    }
}

impl FromStr for LabelCoordinate {
    type Err = String;

    /// Parses one-based selectors such as `a1` or `b2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (kind, rest) = s.split_at(s.len().min(1));
        let idx: usize = rest.parse().map_err(|_| format!("expected a<i> or b<i>, got {s:?}"))?;
        if idx == 0 {
            return Err("coordinate indices are one-based".to_string());
        }
        match kind {
            "a" | "A" => Ok(LabelCoordinate::A(idx - 1)),
            "b" | "B" => Ok(LabelCoordinate::B(idx - 1)),
            _ => Err(format!("expected a<i> or b<i>, got {s:?}")),
        }
    }
}

/// One message-indexed quantum code: an ordered orthonormal basis.
#[derive(Clone, Debug)]
pub struct InnerCode {
    pub labels: Vec<CodewordLabel>,
    pub states: Vec<Ket>,
}

impl InnerCode {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct HybridCode {
    q: usize,
    n: usize,
    inner_codes: Vec<InnerCode>,
    claimed_distance: usize,
    splits: Vec<LabelCoordinate>,
}

impl HybridCode {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of pair factors.
    pub fn t(&self) -> usize {
        (self.n - 1) / 2
    }

    /// Dimension of each inner code.
    pub fn k_dim(&self) -> usize {
        self.inner_codes[0].len()
    }

    /// Number of classical messages.
    pub fn num_messages(&self) -> usize {
        self.inner_codes.len()
    }

    pub fn num_codewords(&self) -> usize {
        self.k_dim() * self.num_messages()
    }

    pub fn claimed_distance(&self) -> usize {
        self.claimed_distance
    }

    pub fn inner_codes(&self) -> &[InnerCode] {
        &self.inner_codes
    }

    /// Coordinates this code was split on, in order.
    pub fn splits(&self) -> &[LabelCoordinate] {
        &self.splits
    }

    pub fn norm_exp(&self) -> u32 {
        self.n as u32
    }

    /// Codewords are numbered message-major: `global = message * K + index`.
    pub fn codeword(&self, global: usize) -> &Ket {
        let k = self.k_dim();
        &self.inner_codes[global / k].states[global % k]
    }

    pub fn label(&self, global: usize) -> &CodewordLabel {
        let k = self.k_dim();
        &self.inner_codes[global / k].labels[global % k]
    }
}

fn check_modulus(q: usize) -> Result<(), CodeError> {
    if q < 2 {
        Err(CodeError::InvalidModulus(q))
    } else {
        Ok(())
    }
}

/// Validates `n` (odd, at least 3) and returns `t = (n-1)/2`.
pub fn pair_count(n: usize) -> Result<usize, CodeError> {
    if n.is_multiple_of(2) {
        return Err(CodeError::EvenLength(n));
    }
    if n < 3 {
        return Err(CodeError::TooShort(n));
    }
    Ok((n - 1) / 2)
}

/// `Σ_{c ∈ Z_q²} ω^{(c_1 - a)(c_2 - b)} |c_1 c_2⟩`, norm exponent 2.
pub fn build_pair_state(q: usize, a: u32, b: u32) -> Result<Ket, CodeError> {
    check_modulus(q)?;
    let qi = q as i64;
    let (a, b) = (a as i64, b as i64);
    let phases = (0..qi)
        .flat_map(|c1| (0..qi).map(move |c2| ((c1 - a) * (c2 - b)).rem_euclid(qi) as u32))
        .collect();
    Ok(Ket::from_phases(q, 2, phases, 2)?)
}

/// Tensor product of pair states over `i = 1..t`.
pub fn build_phi(q: usize, a: &[u32], b: &[u32]) -> Result<Ket, CodeError> {
    check_modulus(q)?;
    if a.len() != b.len() {
        return Err(CodeError::LabelLength { expected: a.len() });
    }
    let mut state = Ket::from_phases(q, 0, vec![0], 0)?;
    for (&ai, &bi) in a.iter().zip(b) {
        state = state.tensor(&build_pair_state(q, ai, bi)?)?;
    }
    Ok(state)
}

/// `Σ_c ω^{mc} |c⟩`, norm exponent 1.
pub fn build_psi(q: usize, m: u32) -> Result<Ket, CodeError> {
    check_modulus(q)?;
    let phases = (0..q as u64).map(|c| (m as u64 * c % q as u64) as u32).collect();
    Ok(Ket::from_phases(q, 1, phases, 1)?)
}

pub fn build_codeword(q: usize, label: &CodewordLabel) -> Result<Ket, CodeError> {
    Ok(build_phi(q, &label.a, &label.b)?.tensor(&build_psi(q, label.m)?)?)
}

/// All labels of inner code `C_m`.
///
/// The free coordinates `a_1..a_{t-1}, b_1..b_{t-1}` sweep lexicographically
/// (`a_1` most significant); `a_t` and `b_t` are fixed by the sum constraints.
pub fn enumerate_labels(q: usize, n: usize, m: u32) -> Result<Vec<CodewordLabel>, CodeError> {
    check_modulus(q)?;
    let t = pair_count(n)?;
    if m as usize >= q {
        return Err(CodeError::MessageOutOfRange { m, q });
    }
    let qq = q as u64;
    let free = 2 * (t - 1);
    let mut digits = vec![0usize; free];
    let mut out = Vec::new();
    loop {
        let mut a: Vec<u32> = digits[..t - 1].iter().map(|&d| d as u32).collect();
        let mut b: Vec<u32> = digits[t - 1..].iter().map(|&d| d as u32).collect();
        let sa: u64 = a.iter().map(|&x| x as u64).sum();
        let sb: u64 = b.iter().map(|&x| x as u64).sum();
        a.push(((qq - sa % qq) % qq) as u32);
        b.push(((m as u64 + qq - sb % qq) % qq) as u32);
        out.push(CodewordLabel { a, b, m });
        if !advance(&mut digits, q) {
            break;
        }
    }
    Ok(out)
}

pub fn build_hybrid_code(q: usize, n: usize) -> Result<HybridCode, CodeError> {
    check_modulus(q)?;
    pair_count(n)?;
    let inner_codes = (0..q as u32)
        .map(|m| {
            let labels = enumerate_labels(q, n, m)?;
            let states = labels.iter().map(|l| build_codeword(q, l)).collect::<Result<Vec<_>, _>>()?;
            Ok(InnerCode { labels, states })
        })
        .collect::<Result<Vec<_>, CodeError>>()?;
    Ok(HybridCode { q, n, inner_codes, claimed_distance: 2, splits: Vec::new() })
}

/// The translation `t_m` with `t_m C_0 = C_m` as ordered bases:
/// `X(m)` on qudit `n-1` (shifting `b_t` by m) and `Z(m)` on qudit n
/// (sending `|ψ_0⟩` to `|ψ_m⟩`).
pub fn translation_operator(q: usize, n: usize, m: u32) -> Result<PauliOp, CodeError> {
    check_modulus(q)?;
    pair_count(n)?;
    let m = m % q as u32;
    let mut x = vec![0; n];
    let mut z = vec![0; n];
    x[n - 2] = m;
    z[n - 1] = m;
    Ok(PauliOp::new(q, x, z, 0)?)
}

/// `2^{n-2} (1 - 1/(n-1))`, the upper bound on K for binary `((n, K, 2))`
/// codes of odd length.
pub fn rains_bound(n: usize) -> Result<BigRational, CodeError> {
    pair_count(n)?;
    let pow = num_traits::pow(BigInt::from(2), n - 2);
    Ok(BigRational::new(pow * BigInt::from(n - 2), BigInt::from(n - 1)))
}

/// Result of a successful split: the new code and the report certifying it.
#[derive(Debug)]
pub struct SplitOutcome {
    pub code: HybridCode,
    pub report: VerificationReport,
}

/// Trades one qudit of quantum dimension for one classical symbol by
/// partitioning every inner code on the value of a free label coordinate.
///
/// The candidate is verified at weight `d - 1` and rejected if any error
/// there is undetected.
pub fn trivial_split(code: &HybridCode, coord: LabelCoordinate, engine: Engine) -> Result<SplitOutcome, CodeError> {
    let q = code.q;
    let k = code.k_dim();
    if k == 1 {
        return Err(CodeError::CannotSplit);
    }
    let t = code.t();
    if coord.index() + 1 >= t {
        return Err(CodeError::InvalidSelector {
            coord,
            reason: format!("only a1..a{0} and b1..b{0} are free for n = {1}", t - 1, code.n),
        });
    }
    if code.splits.contains(&coord) {
        return Err(CodeError::InvalidSelector { coord, reason: "coordinate is already fixed".to_string() });
    }

    let mut inner_codes = Vec::with_capacity(code.num_messages() * q);
    for inner in &code.inner_codes {
        let mut groups: BTreeMap<u32, InnerCode> =
            (0..q as u32).map(|v| (v, InnerCode { labels: Vec::new(), states: Vec::new() })).collect();
        for (label, state) in inner.labels.iter().zip(&inner.states) {
            let group = groups.get_mut(&coord.value(label)).expect("coordinate value in Z_q");
            group.labels.push(label.clone());
            group.states.push(state.clone());
        }
        if groups.values().any(|g| g.len() * q != k) {
            return Err(CodeError::InvalidSelector {
                coord,
                reason: "coordinate does not split the inner codes evenly".to_string(),
            });
        }
        inner_codes.extend(groups.into_values());
    }

    let mut splits = code.splits.clone();
    splits.push(coord);
    let candidate = HybridCode { q, n: code.n, inner_codes, claimed_distance: code.claimed_distance, splits };
    let report = verifier::verify_hybrid(&candidate, code.claimed_distance - 1, engine)
        .expect("weight d - 1 is within range");
    if let Some(bad) = report.certificates.iter().find(|c| c.is_violation()) {
        return Err(CodeError::SplitInvalid { error: bad.error.clone(), report: Box::new(report) });
    }
    Ok(SplitOutcome { code: candidate, report })
}
