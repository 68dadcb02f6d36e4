//! Exact construction and exhaustive verification of the nonbinary
//! error-detecting hybrid codes `[[n, n-3 : 1, 2]]` over Z_q.
//!
//! - [`cyclo`]: exact arithmetic in Q(ω_q) with a sound zero test.
//! - [`qudit`]: state vectors, generalized Pauli operators, inner products.
//! - [`code_family`]: the code construction, translations, bound and split.
//! - [`verifier`]: hybrid Knill–Laflamme sweeps with dense and factored engines.
//! - [`cli`]: the `zq-hybrid` command-line front end and its JSON artifacts.

pub mod cli;
pub mod code_family;
pub mod cyclo;
pub mod json;
pub mod qudit;
pub mod verifier;

pub use code_family::{build_hybrid_code, HybridCode};
pub use cyclo::CycNumber;
pub use qudit::{InnerProductValue, Ket, PauliOp};
pub use verifier::{verify_hybrid, verify_quantum_union, Engine, VerificationReport};
