use proptest::prelude::*;
use zq_hybrid::code_family::{build_phi, build_psi};
use zq_hybrid::cyclo::CycNumber;
use zq_hybrid::qudit::{digits_of, index_of, Ket, PauliOp};

fn random_state(q: usize, n: usize) -> impl Strategy<Value = Ket> {
    let dim = q.pow(n as u32);
    prop_oneof![
        prop::collection::vec(0u32..q as u32, dim).prop_map(move |p| Ket::from_phases(q, n, p, n as u32).unwrap()),
        prop::collection::vec(prop::collection::vec(-2i64..=2, q), dim).prop_map(move |c| {
            let amps = c.iter().map(|v| CycNumber::from_integers(q, v).unwrap()).collect();
            Ket::from_amplitudes(q, n, amps, 0).unwrap()
        }),
    ]
}

fn random_pauli(q: usize, n: usize) -> impl Strategy<Value = PauliOp> {
    (
        prop::collection::vec(0u32..q as u32, n),
        prop::collection::vec(0u32..q as u32, n),
        0i64..q as i64,
    )
        .prop_map(move |(x, z, p)| PauliOp::new(q, x, z, p).unwrap())
}

fn space() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=4, 1usize..=3)
}

/// `ω^p ⊗ X(a)Z(b)` evaluated straight from its definition with exact
/// multiplications, independent of the rotation path in `apply_pauli`.
fn apply_by_definition(op: &PauliOp, s: &Ket) -> Vec<CycNumber> {
    let (q, n) = (s.modulus(), s.num_qudits());
    let mut out = vec![CycNumber::zero(q).unwrap(); s.len()];
    for idx in 0..s.len() {
        let x = digits_of(q, n, idx);
        let mut phase = CycNumber::omega_pow(q, op.phase_exp() as i64).unwrap();
        for (&b, &c) in op.zvec().iter().zip(&x) {
            phase = &phase * &CycNumber::omega_pow(q, b as i64 * c as i64).unwrap();
        }
        let target: Vec<u32> = (0..n).map(|i| (x[i] + op.xvec()[i]) % q as u32).collect();
        out[index_of(q, &target).unwrap()] = &phase * &s.amplitude(idx);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pauli_preserves_norm(
        (op, s) in space().prop_flat_map(|(q, n)| (random_pauli(q, n), random_state(q, n)))
    ) {
        let ps = s.apply_pauli(&op).unwrap();
        prop_assert_eq!(ps.inner(&ps).unwrap(), s.inner(&s).unwrap());
    }

    #[test]
    fn inner_is_conjugate_symmetric(
        (u, v) in space().prop_flat_map(|(q, n)| (random_state(q, n), random_state(q, n)))
    ) {
        prop_assert_eq!(u.inner(&v).unwrap(), v.inner(&u).unwrap().conjugate());
    }

    #[test]
    fn composition_matches_sequential_application(
        (p1, p2, s) in space().prop_flat_map(|(q, n)| (random_pauli(q, n), random_pauli(q, n), random_state(q, n)))
    ) {
        let composed = s.apply_pauli(&p1.compose(&p2).unwrap()).unwrap();
        let sequential = s.apply_pauli(&p2).unwrap().apply_pauli(&p1).unwrap();
        prop_assert_eq!(composed, sequential);
    }

    #[test]
    fn application_matches_definition(
        (op, s) in space().prop_flat_map(|(q, n)| (random_pauli(q, n), random_state(q, n)))
    ) {
        prop_assert_eq!(s.apply_pauli(&op).unwrap().amplitudes(), apply_by_definition(&op, &s));
    }
}

#[test]
fn weight_one_on_basis_states_matches_formula() {
    for q in 2..=5usize {
        let n = 3;
        for idx in 0..q.pow(n as u32) {
            let digits = digits_of(q, n, idx);
            let basis = Ket::basis(q, &digits).unwrap();
            for pos in 0..n {
                for a in 0..q as u32 {
                    for b in 0..q as u32 {
                        let out = basis.apply_pauli(&PauliOp::single(q, n, pos, a, b).unwrap()).unwrap();
                        let mut target = digits.clone();
                        target[pos] = (target[pos] + a) % q as u32;
                        let expect = Ket::from_amplitudes(
                            q,
                            n,
                            (0..basis.len())
                                .map(|i| {
                                    if i == index_of(q, &target).unwrap() {
                                        CycNumber::omega_pow(q, (b * digits[pos]) as i64).unwrap()
                                    } else {
                                        CycNumber::zero(q).unwrap()
                                    }
                                })
                                .collect(),
                            0,
                        )
                        .unwrap();
                        assert_eq!(out, expect);
                    }
                }
            }
        }
    }
}

#[test]
fn tensor_of_phi_and_psi() {
    let s = build_phi(2, &[0], &[0]).unwrap().tensor(&build_psi(2, 0).unwrap()).unwrap();
    assert_eq!(s.len(), 8);
    assert_eq!(s.norm_exp(), 3);
    assert!(s.inner(&s).unwrap().is_one());
}

#[test]
fn psi_states_orthonormal_q3() {
    assert!(build_psi(3, 0).unwrap().inner(&build_psi(3, 1).unwrap()).unwrap().is_zero());
}

#[test]
fn symmetric_superposition_fixed_by_x() {
    let plus = Ket::from_amplitudes(2, 1, vec![CycNumber::one(2).unwrap(); 2], 1).unwrap();
    assert_eq!(plus.apply_pauli(&PauliOp::single(2, 1, 0, 1, 0).unwrap()).unwrap(), plus);
}
