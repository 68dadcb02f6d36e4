//! Exhaustive detectability checks for hybrid codes.
//!
//! An error E is detected by the hybrid code iff
//! `⟨c_j^(b)| E |c_i^(a)⟩ = λ_{E,a} δ_{ij} δ_{ab}` for every pair of codewords.
//! The quantum-union check treats all inner codes as one quantum code, so λ
//! may not depend on the message.
//!
//! Two engines compute the matrix elements: `Dense` applies E to full
//! `q^n`-dimensional codewords, `Factored` multiplies per-factor overlaps of
//! the pair states and the final Fourier state and skips codeword pairs that
//! disagree on a factor where E acts trivially.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::code_family::{build_pair_state, build_psi, CodewordLabel, HybridCode};
use crate::cyclo::CycNumber;
use crate::qudit::{enumerate_paulis, InnerProductValue, PauliOp, QuditError};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("codeword index ({message}, {index}) out of range for K = {k}, M = {m}")]
    IndexOutOfRange { message: usize, index: usize, k: usize, m: usize },
    #[error("sweep weight {weight} outside 1..={n}")]
    InvalidWeight { weight: usize, n: usize },
    #[error("error operator does not act on this code's space")]
    ErrorShape,
    #[error(transparent)]
    Qudit(#[from] QuditError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Dense,
    Factored,
}

impl std::str::FromStr for Engine {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dense" => Ok(Engine::Dense),
            "factored" => Ok(Engine::Factored),
            other => Err(format!("unknown engine {other:?} (expected dense or factored)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Hybrid,
    QuantumUnion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CodewordIndex {
    pub message: usize,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Every matrix element vanishes.
    ZeroDetected,
    /// Diagonal blocks are `λ_{E,a}` times the identity, some λ nonzero.
    DegenerateDetected,
    Violation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Nonzero element between different messages.
    CrossBlock,
    /// Nonzero element between distinct codewords of one message.
    OffDiagonal,
    /// A diagonal element differing from its block's λ.
    NonScalarDiagonal,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub kind: ViolationKind,
    pub row: CodewordIndex,
    pub col: CodewordIndex,
    pub element: InnerProductValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<InnerProductValue>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DetectionCertificate {
    pub error: PauliOp,
    pub status: Status,
    /// `λ_{E,a}` per message; absent on violation.
    pub lambda_table: Option<Vec<InnerProductValue>>,
    pub witness: Option<Witness>,
}

impl DetectionCertificate {
    pub fn is_violation(&self) -> bool {
        self.status == Status::Violation
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub zero_detected: usize,
    pub degenerate_detected: usize,
    pub violations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub q: usize,
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub claimed_distance: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub params: CodeParams,
    pub weight: usize,
    pub engine: Engine,
    pub mode: Mode,
    pub verdict: Verdict,
    pub counts: Counts,
    /// In enumeration order of the swept errors.
    pub certificates: Vec<DetectionCertificate>,
    pub wall_time_ms: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn certificate(&self, error: &PauliOp) -> Option<&DetectionCertificate> {
        self.certificates.iter().find(|c| &c.error == error)
    }
}

fn check_index(code: &HybridCode, idx: CodewordIndex) -> Result<usize, VerifyError> {
    let (k, m) = (code.k_dim(), code.num_messages());
    if idx.message >= m || idx.index >= k {
        return Err(VerifyError::IndexOutOfRange { message: idx.message, index: idx.index, k, m });
    }
    Ok(idx.message * k + idx.index)
}

fn check_error(code: &HybridCode, e: &PauliOp) -> Result<(), VerifyError> {
    if e.modulus() != code.q() || e.num_qudits() != code.n() {
        return Err(VerifyError::ErrorShape);
    }
    Ok(())
}

/// `⟨c_j^(b)| E |c_i^(a)⟩` by dense application on the full state space.
pub fn kl_matrix_element(
    code: &HybridCode,
    e: &PauliOp,
    row: CodewordIndex,
    col: CodewordIndex,
) -> Result<InnerProductValue, VerifyError> {
    check_error(code, e)?;
    let (r, c) = (check_index(code, row)?, check_index(code, col)?);
    Ok(code.codeword(r).inner(&code.codeword(c).apply_pauli(e)?)?)
}

/// The same matrix element as a product over tensor factors.
pub fn factored_matrix_element(
    code: &HybridCode,
    e: &PauliOp,
    row: CodewordIndex,
    col: CodewordIndex,
) -> Result<InnerProductValue, VerifyError> {
    check_error(code, e)?;
    let (r, c) = (check_index(code, row)?, check_index(code, col)?);
    let mut tables = FactorTables::new(code.q());
    Ok(tables.element(code, &FactoredError::new(e), code.label(r), code.label(c)))
}

/// Per-factor restriction of an error: one two-qudit piece per pair, one
/// single-qudit piece for the last qudit.
pub(crate) struct FactoredError<'a> {
    op: &'a PauliOp,
    pairs: Vec<Option<[u32; 4]>>,
    last: Option<[u32; 2]>,
}

impl<'a> FactoredError<'a> {
    pub(crate) fn new(op: &'a PauliOp) -> Self {
        let n = op.num_qudits();
        let (x, z) = (op.xvec(), op.zvec());
        let pairs = (0..(n - 1) / 2)
            .map(|p| {
                let key = [x[2 * p], z[2 * p], x[2 * p + 1], z[2 * p + 1]];
                (key != [0; 4]).then_some(key)
            })
            .collect();
        let last = (x[n - 1] != 0 || z[n - 1] != 0).then_some([x[n - 1], z[n - 1]]);
        Self { op, pairs, last }
    }

    /// Labels on the factors where the error acts trivially; codewords with
    /// different keys have a vanishing matrix element.
    fn trivial_key(&self, label: &CodewordLabel) -> Vec<u32> {
        let mut key = Vec::new();
        for (p, piece) in self.pairs.iter().enumerate() {
            if piece.is_none() {
                key.push(label.a[p]);
                key.push(label.b[p]);
            }
        }
        if self.last.is_none() {
            key.push(label.m);
        }
        key
    }
}

/// Memoized per-factor overlaps, each computed by dense evaluation on the
/// factor's own 2- or 1-qudit space.
pub(crate) struct FactorTables {
    q: usize,
    pairs: HashMap<(u32, u32, u32, u32, [u32; 4]), InnerProductValue>,
    last: HashMap<(u32, u32, [u32; 2]), InnerProductValue>,
}

impl FactorTables {
    pub(crate) fn new(q: usize) -> Self {
        Self { q, pairs: HashMap::new(), last: HashMap::new() }
    }

    fn pair(&mut self, row: (u32, u32), col: (u32, u32), piece: [u32; 4]) -> &InnerProductValue {
        let q = self.q;
        self.pairs.entry((row.0, row.1, col.0, col.1, piece)).or_insert_with(|| {
            let op = PauliOp::new(q, vec![piece[0], piece[2]], vec![piece[1], piece[3]], 0).expect("valid piece");
            let bra = build_pair_state(q, row.0, row.1).expect("valid modulus");
            let ket = build_pair_state(q, col.0, col.1).expect("valid modulus");
            bra.inner(&ket.apply_pauli(&op).expect("matching shape")).expect("matching shape").normalized()
        })
    }

    fn last(&mut self, row: u32, col: u32, piece: [u32; 2]) -> &InnerProductValue {
        let q = self.q;
        self.last.entry((row, col, piece)).or_insert_with(|| {
            let op = PauliOp::new(q, vec![piece[0]], vec![piece[1]], 0).expect("valid piece");
            let bra = build_psi(q, row).expect("valid modulus");
            let ket = build_psi(q, col).expect("valid modulus");
            bra.inner(&ket.apply_pauli(&op).expect("matching shape")).expect("matching shape").normalized()
        })
    }

    pub(crate) fn element(
        &mut self,
        code: &HybridCode,
        e: &FactoredError<'_>,
        row: &CodewordLabel,
        col: &CodewordLabel,
    ) -> InnerProductValue {
        let q = self.q;
        let zero = || InnerProductValue::new(CycNumber::zero(q).expect("valid modulus"), 0);
        // identity factors contribute δ(labels) by orthonormality
        for (p, piece) in e.pairs.iter().enumerate() {
            if piece.is_none() && (row.a[p] != col.a[p] || row.b[p] != col.b[p]) {
                return zero();
            }
        }
        if e.last.is_none() && row.m != col.m {
            return zero();
        }
        let mut acc = InnerProductValue::new(CycNumber::one(q).expect("valid modulus"), 0);
        for (p, piece) in e.pairs.iter().enumerate() {
            let Some(piece) = piece else { continue };
            let f = self.pair((row.a[p], row.b[p]), (col.a[p], col.b[p]), *piece);
            if f.is_zero() {
                return zero();
            }
            acc = acc.checked_mul(f).expect("same modulus");
        }
        if let Some(piece) = e.last {
            let f = self.last(row.m, col.m, piece);
            if f.is_zero() {
                return zero();
            }
            acc = acc.checked_mul(f).expect("same modulus");
        }
        debug_assert_eq!(code.q(), q);
        acc.mul_omega_pow(e.op.phase_exp() as i64)
    }
}

/// Nonzero matrix elements of E keyed by (row, col) global codeword index.
type Elements = BTreeMap<(usize, usize), InnerProductValue>;

fn dense_elements(code: &HybridCode, e: &PauliOp) -> Elements {
    let total = code.num_codewords();
    let mut out = Elements::new();
    for c in 0..total {
        let image = code.codeword(c).apply_pauli(e).expect("error shape checked");
        for r in 0..total {
            let v = code.codeword(r).inner(&image).expect("same space");
            if !v.is_zero() {
                out.insert((r, c), v.normalized());
            }
        }
    }
    out
}

fn factored_elements(code: &HybridCode, e: &PauliOp, tables: &mut FactorTables) -> Elements {
    let fe = FactoredError::new(e);
    let mut buckets: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for g in 0..code.num_codewords() {
        buckets.entry(fe.trivial_key(code.label(g))).or_default().push(g);
    }
    let mut out = Elements::new();
    for members in buckets.values() {
        for &c in members {
            for &r in members {
                let v = tables.element(code, &fe, code.label(r), code.label(c));
                if !v.is_zero() {
                    out.insert((r, c), v);
                }
            }
        }
    }
    out
}

fn to_index(code: &HybridCode, g: usize) -> CodewordIndex {
    let k = code.k_dim();
    CodewordIndex { message: g / k, index: g % k }
}

fn classify(code: &HybridCode, e: &PauliOp, elements: &Elements, mode: Mode) -> DetectionCertificate {
    let (k, m) = (code.k_dim(), code.num_messages());
    let q = code.q();
    let zero = InnerProductValue::new(CycNumber::zero(q).expect("valid modulus"), 0);
    let diag = |g: usize| elements.get(&(g, g)).cloned().unwrap_or_else(|| zero.clone());
    let lambdas: Vec<InnerProductValue> = match mode {
        Mode::Hybrid => (0..m).map(|a| diag(a * k)).collect(),
        Mode::QuantumUnion => vec![diag(0); m],
    };

    let mut first: Option<Witness> = None;
    let mut consider = |w: Witness| {
        let pos = |w: &Witness| (w.row, w.col);
        if first.as_ref().is_none_or(|f| pos(&w) < pos(f)) {
            first = Some(w);
        }
    };
    for (&(r, c), v) in elements {
        if r != c {
            let kind = if r / k != c / k { ViolationKind::CrossBlock } else { ViolationKind::OffDiagonal };
            consider(Witness { kind, row: to_index(code, r), col: to_index(code, c), element: v.clone(), expected: None });
            // elements are (row, col)-ordered; later off-diagonals cannot precede this one
            break;
        }
    }
    for g in 0..k * m {
        let v = diag(g);
        let expected = &lambdas[g / k];
        if &v != expected {
            let idx = to_index(code, g);
            consider(Witness {
                kind: ViolationKind::NonScalarDiagonal,
                row: idx,
                col: idx,
                element: v,
                expected: Some(expected.clone()),
            });
            break;
        }
    }

    match first {
        Some(w) => DetectionCertificate { error: e.clone(), status: Status::Violation, lambda_table: None, witness: Some(w) },
        None => {
            let status = if elements.is_empty() { Status::ZeroDetected } else { Status::DegenerateDetected };
            DetectionCertificate { error: e.clone(), status, lambda_table: Some(lambdas), witness: None }
        }
    }
}

/// Certifies a single error.
pub fn certify_error(code: &HybridCode, e: &PauliOp, mode: Mode, engine: Engine) -> Result<DetectionCertificate, VerifyError> {
    check_error(code, e)?;
    let elements = match engine {
        Engine::Dense => dense_elements(code, e),
        Engine::Factored => factored_elements(code, e, &mut FactorTables::new(code.q())),
    };
    Ok(classify(code, e, &elements, mode))
}

/// Certifies every error in `errors`, in parallel on the current rayon pool.
/// Certificates come back in input order.
pub fn verify_errors(
    code: &HybridCode,
    errors: &[PauliOp],
    weight: usize,
    mode: Mode,
    engine: Engine,
) -> Result<VerificationReport, VerifyError> {
    for e in errors {
        check_error(code, e)?;
    }
    let start = Instant::now();
    let certificates: Vec<DetectionCertificate> = match engine {
        Engine::Dense => errors.par_iter().map(|e| classify(code, e, &dense_elements(code, e), mode)).collect(),
        Engine::Factored => errors
            .par_iter()
            .map_init(
                || FactorTables::new(code.q()),
                |tables, e| classify(code, e, &factored_elements(code, e, tables), mode),
            )
            .collect(),
    };
    let mut counts = Counts::default();
    for c in &certificates {
        match c.status {
            Status::ZeroDetected => counts.zero_detected += 1,
            Status::DegenerateDetected => counts.degenerate_detected += 1,
            Status::Violation => counts.violations += 1,
        }
    }
    Ok(VerificationReport {
        params: CodeParams {
            q: code.q(),
            n: code.n(),
            k: code.k_dim(),
            m: code.num_messages(),
            claimed_distance: code.claimed_distance(),
        },
        weight,
        engine,
        mode,
        verdict: if counts.violations == 0 { Verdict::Pass } else { Verdict::Fail },
        counts,
        certificates,
        wall_time_ms: Some(start.elapsed().as_millis() as u64),
    })
}

fn sweep(code: &HybridCode, weight: usize, mode: Mode, engine: Engine) -> Result<VerificationReport, VerifyError> {
    if weight == 0 || weight > code.n() {
        return Err(VerifyError::InvalidWeight { weight, n: code.n() });
    }
    let errors = enumerate_paulis(code.q(), code.n(), weight);
    verify_errors(code, &errors, weight, mode, engine)
}

/// Hybrid detectability of every error of weight `1..=weight`.
pub fn verify_hybrid(code: &HybridCode, weight: usize, engine: Engine) -> Result<VerificationReport, VerifyError> {
    sweep(code, weight, Mode::Hybrid, engine)
}

/// Plain quantum-code detectability of the union of all inner codes.
pub fn verify_quantum_union(code: &HybridCode, weight: usize, engine: Engine) -> Result<VerificationReport, VerifyError> {
    sweep(code, weight, Mode::QuantumUnion, engine)
}

/// Gram matrix of all codewords in global order, computed densely.
pub fn gram_matrix(code: &HybridCode) -> Vec<Vec<InnerProductValue>> {
    let total = code.num_codewords();
    (0..total)
        .into_par_iter()
        .map(|r| {
            (0..total)
                .map(|c| code.codeword(r).inner(code.codeword(c)).expect("same space").normalized())
                .collect()
        })
        .collect()
}
