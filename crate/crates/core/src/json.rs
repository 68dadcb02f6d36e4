//! JSON encodings for exact scalars, operators, codes and bounds.
//!
//! Exact values are never written as floats. A cyclotomic number becomes
//! `{"q": q, "coeffs": [[num, den], ...], "approx": "re+imi"}` where `coeffs`
//! is the canonical reduction modulo Φ_q (so equal values serialize equally)
//! and `approx` is for human reading only.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use serde_json::{json, Value};

use crate::code_family::{rains_bound, CodeError, CodewordLabel, HybridCode};
use crate::cyclo::CycNumber;
use crate::qudit::{InnerProductValue, PauliOp};

fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn rational_json(r: &BigRational) -> Value {
    json!([int_json(r.numer()), int_json(r.denom())])
}

pub fn approx_string(z: Complex64) -> String {
    let clean = |v: f64| if v.abs() < 5e-13 { 0.0 } else { v };
    format!("{:.12}{:+.12}i", clean(z.re), clean(z.im))
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<Value> = self.reduced().iter().map(rational_json).collect();
        let mut st = s.serialize_struct("CycNumber", 3)?;
        st.serialize_field("q", &self.modulus())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("approx", &approx_string(self.as_complex()))?;
        st.end()
    }
}

impl Serialize for InnerProductValue {
    /// Written in normalized form: `value · q^{-half_exp/2}` with `half_exp ∈ {0, 1}`.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.normalized();
        let coeffs: Vec<Value> = n.value().reduced().iter().map(rational_json).collect();
        let mut st = s.serialize_struct("InnerProductValue", 4)?;
        st.serialize_field("q", &n.modulus())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("half_exp", &n.half_exp())?;
        st.serialize_field("approx", &approx_string(n.as_complex()))?;
        st.end()
    }
}

impl Serialize for PauliOp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let support: Vec<usize> = self.support().iter().map(|p| p + 1).collect();
        let mut st = s.serialize_struct("PauliOp", 5)?;
        st.serialize_field("label", &self.label())?;
        st.serialize_field("x", self.xvec())?;
        st.serialize_field("z", self.zvec())?;
        st.serialize_field("phase", &self.phase_exp())?;
        st.serialize_field("support", &support)?;
        st.end()
    }
}

impl Serialize for CodewordLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CodewordLabel", 3)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("b", &self.b)?;
        st.serialize_field("m", &self.m)?;
        st.end()
    }
}

/// Code artifact. Amplitudes are exact: every codeword amplitude is
/// `ω^e · q^{-norm_exp/2}` and only the exponents `e` are listed.
pub fn code_json(code: &HybridCode) -> Value {
    let labels: Vec<&[CodewordLabel]> = code.inner_codes().iter().map(|c| c.labels.as_slice()).collect();
    let amplitudes: Vec<Vec<&[u32]>> = code
        .inner_codes()
        .iter()
        .map(|c| c.states.iter().map(|s| s.phases().expect("code states are phase states")).collect())
        .collect();
    json!({
        "q": code.q(),
        "n": code.n(),
        "t": code.t(),
        "K": code.k_dim(),
        "M": code.num_messages(),
        "claimed_distance": code.claimed_distance(),
        "splits": code.splits().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "labels": labels,
        "norm_exp": code.norm_exp(),
        "amplitude_encoding": "omega_exponent",
        "amplitudes": amplitudes,
    })
}

/// The binary bound for odd-length distance-2 codes next to `K·M = q^{n-2}`.
pub fn bound_json(q: usize, n: usize) -> Result<Value, CodeError> {
    let bound = rains_bound(n)?;
    let km = num_traits::pow(BigInt::from(q), n - 2);
    let exceeds = BigRational::from_integer(km.clone()) > bound;
    Ok(json!({
        "q": q,
        "n": n,
        "bound": {"num": int_json(bound.numer()), "den": int_json(bound.denom())},
        "bound_display": format!("{}/{}", bound.numer(), bound.denom()),
        "KM": int_json(&km),
        "exceeds": exceeds,
        "binary_bound_applies": q == 2,
    }))
}
