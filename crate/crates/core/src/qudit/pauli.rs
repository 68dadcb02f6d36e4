use std::fmt;

use super::QuditError;

/// A generalized Pauli operator `ω^phase · ⊗_i X(x_i) Z(z_i)` on n qudits.
///
/// On a single qudit `X(a)Z(b)|x⟩ = ω^{bx}|x+a⟩`: Z acts first, then X.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliOp {
    q: usize,
    xvec: Vec<u32>,
    zvec: Vec<u32>,
    phase: u32,
}

impl PauliOp {
    pub fn new(q: usize, xvec: Vec<u32>, zvec: Vec<u32>, phase: i64) -> Result<Self, QuditError> {
        if q < 2 {
            return Err(QuditError::InvalidModulus(q));
        }
        if xvec.len() != zvec.len() {
            return Err(QuditError::DimensionMismatch {
                what: "pauli x/z length",
                left: xvec.len(),
                right: zvec.len(),
            });
        }
        let qq = q as u32;
        Ok(Self {
            q,
            xvec: xvec.into_iter().map(|v| v % qq).collect(),
            zvec: zvec.into_iter().map(|v| v % qq).collect(),
            phase: phase.rem_euclid(q as i64) as u32,
        })
    }

    pub fn identity(q: usize, n: usize) -> Result<Self, QuditError> {
        Self::new(q, vec![0; n], vec![0; n], 0)
    }

    /// `X(x)Z(z)` on the zero-based position `pos`, identity elsewhere.
    pub fn single(q: usize, n: usize, pos: usize, x: u32, z: u32) -> Result<Self, QuditError> {
        if pos >= n {
            return Err(QuditError::PositionOutOfRange { pos, n });
        }
        let mut op = Self::identity(q, n)?;
        op.xvec[pos] = x % q as u32;
        op.zvec[pos] = z % q as u32;
        Ok(op)
    }

    pub fn modulus(&self) -> usize {
        self.q
    }

    pub fn num_qudits(&self) -> usize {
        self.xvec.len()
    }

    pub fn xvec(&self) -> &[u32] {
        &self.xvec
    }

    pub fn zvec(&self) -> &[u32] {
        &self.zvec
    }

    pub fn phase_exp(&self) -> u32 {
        self.phase
    }

    pub fn acts_on(&self, pos: usize) -> bool {
        self.xvec[pos] != 0 || self.zvec[pos] != 0
    }

    /// Zero-based positions where the operator is not the identity.
    pub fn support(&self) -> Vec<usize> {
        (0..self.num_qudits()).filter(|&i| self.acts_on(i)).collect()
    }

    pub fn weight(&self) -> usize {
        (0..self.num_qudits()).filter(|&i| self.acts_on(i)).count()
    }

    /// Identity up to global phase.
    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    fn check_compatible(&self, other: &Self) -> Result<(), QuditError> {
        if self.q != other.q {
            return Err(QuditError::DimensionMismatch { what: "local dimension", left: self.q, right: other.q });
        }
        if self.num_qudits() != other.num_qudits() {
            return Err(QuditError::DimensionMismatch {
                what: "qudit count",
                left: self.num_qudits(),
                right: other.num_qudits(),
            });
        }
        Ok(())
    }

    /// Operator product `self · other`.
    ///
    /// `(X(a)Z(b))(X(a')Z(b')) = ω^{b·a'} X(a+a')Z(b+b')`.
    pub fn compose(&self, other: &Self) -> Result<Self, QuditError> {
        self.check_compatible(other)?;
        let q = self.q as u64;
        let cross: u64 = self.zvec.iter().zip(&other.xvec).map(|(&b, &a)| b as u64 * a as u64 % q).sum();
        let add = |u: &[u32], v: &[u32]| -> Vec<u32> {
            u.iter().zip(v).map(|(&a, &b)| ((a as u64 + b as u64) % q) as u32).collect()
        };
        Ok(Self {
            q: self.q,
            xvec: add(&self.xvec, &other.xvec),
            zvec: add(&self.zvec, &other.zvec),
            phase: ((self.phase as u64 + other.phase as u64 + cross) % q) as u32,
        })
    }

    /// Hermitian adjoint: `(ω^p X(a)Z(b))† = ω^{-p + a·b} X(-a)Z(-b)`.
    pub fn adjoint(&self) -> Self {
        let q = self.q as u64;
        let neg = |v: &[u32]| -> Vec<u32> { v.iter().map(|&a| ((q - a as u64) % q) as u32).collect() };
        let ab: u64 = self.xvec.iter().zip(&self.zvec).map(|(&a, &b)| a as u64 * b as u64 % q).sum();
        Self {
            q: self.q,
            xvec: neg(&self.xvec),
            zvec: neg(&self.zvec),
            phase: ((q - self.phase as u64 + ab) % q) as u32,
        }
    }

    /// Phase-free restriction to the positions `range` (as a smaller operator).
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Self {
        Self {
            q: self.q,
            xvec: self.xvec[range.clone()].to_vec(),
            zvec: self.zvec[range].to_vec(),
            phase: 0,
        }
    }

    /// Compact label such as `X1Z0@5` (one-based positions), `I` for identity.
    pub fn label(&self) -> String {
        let mut parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|i| format!("X{}Z{}@{}", self.xvec[i], self.zvec[i], i + 1))
            .collect();
        if parts.is_empty() {
            parts.push("I".to_string());
        }
        let body = parts.join(" ");
        if self.phase == 0 {
            body
        } else {
            format!("w^{} {}", self.phase, body)
        }
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Number of phase-free Paulis of weight `1..=max_weight`:
/// `Σ_j C(n, j) (q² - 1)^j`.
pub fn pauli_count(q: usize, n: usize, max_weight: usize) -> u128 {
    let per_site = (q * q - 1) as u128;
    let mut total = 0u128;
    let mut binom = 1u128;
    for j in 1..=max_weight.min(n) {
        binom = binom * (n - j + 1) as u128 / j as u128;
        total += binom * per_site.pow(j as u32);
    }
    total
}

/// Every phase-free Pauli of weight between 1 and `max_weight`, each once.
///
/// Order: by weight ascending; within a weight, supports in lexicographic
/// order of their sorted position lists; within a support, the per-site pairs
/// `(a, b) ∈ Z_q² \ {(0,0)}` in lexicographic order with the leftmost
/// position most significant.
pub fn enumerate_paulis(q: usize, n: usize, max_weight: usize) -> Vec<PauliOp> {
    let mut out = Vec::with_capacity(pauli_count(q, n, max_weight) as usize);
    let nonzero: Vec<(u32, u32)> = (0..q as u32)
        .flat_map(|a| (0..q as u32).map(move |b| (a, b)))
        .filter(|&p| p != (0, 0))
        .collect();
    for w in 1..=max_weight.min(n) {
        for support in combinations(n, w) {
            let mut digits = vec![0usize; w];
            loop {
                let mut xvec = vec![0; n];
                let mut zvec = vec![0; n];
                for (slot, &pos) in support.iter().enumerate() {
                    let (a, b) = nonzero[digits[slot]];
                    xvec[pos] = a;
                    zvec[pos] = b;
                }
                out.push(PauliOp { q, xvec, zvec, phase: 0 });
                if !advance(&mut digits, nonzero.len()) {
                    break;
                }
            }
        }
    }
    out
}

/// Odometer increment with the last digit fastest; false once it wraps.
pub(crate) fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}
