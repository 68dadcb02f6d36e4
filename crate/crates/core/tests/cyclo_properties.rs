use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zq_hybrid::cyclo::{cyclotomic_polynomial, CycNumber};

fn cyc(q: usize, c: &[(i64, i64)]) -> CycNumber {
    CycNumber::from_coeffs(q, c.iter().map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d))).collect())
        .unwrap()
}

fn element(q: usize) -> impl Strategy<Value = CycNumber> {
    prop::collection::vec((-4i64..=4, 1i64..=3), q).prop_map(move |c| cyc(q, &c))
}

fn triple() -> impl Strategy<Value = (CycNumber, CycNumber, CycNumber)> {
    (2usize..=12).prop_flat_map(|q| (element(q), element(q), element(q)))
}

fn totient(q: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (1..=q).filter(|&k| gcd(k, q) == 1).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((x, y, z) in triple()) {
        prop_assert!((&(&x * &y) * &z - &x * &(&y * &z)).is_zero());
        prop_assert!((&x * &y - &y * &x).is_zero());
        prop_assert!((&x + &y - (&y + &x)).is_zero());
        prop_assert!((&x * &(&y + &z) - (&x * &y + &x * &z)).is_zero());
    }

    #[test]
    fn conjugation_is_an_involutive_homomorphism((x, y, _) in triple()) {
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
        prop_assert_eq!(x.conjugate().conjugate(), x.clone());
        let z = x.as_complex().conj();
        prop_assert!((x.conjugate().as_complex() - z).norm() < 1e-9);
    }

    #[test]
    fn numeric_evaluation_is_multiplicative((x, y, _) in triple()) {
        let lhs = (&x * &y).as_complex();
        let rhs = x.as_complex() * y.as_complex();
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }
}

#[test]
fn root_sums_vanish() {
    for q in 2..=30 {
        let sum = (0..q as i64).fold(CycNumber::zero(q).unwrap(), |acc, j| acc + CycNumber::omega_pow(q, j).unwrap());
        assert!(sum.is_zero(), "q = {q}");
    }
}

#[test]
fn cyclotomic_degree_is_totient() {
    for q in 1..=30 {
        assert_eq!(cyclotomic_polynomial(q).len() - 1, totient(q), "q = {q}");
    }
}

/// The exact zero test against floating-point evaluation. Random elements are
/// biased toward zero by adding random multiples of known vanishing sums.
#[test]
fn zero_test_agrees_with_numeric_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut zeros = 0;
    for _ in 0..1000 {
        let q = rng.gen_range(2..=12usize);
        let mut x = CycNumber::zero(q).unwrap();
        // sums over cosets of subgroups ω^{j + k q/d}, k = 0..d, vanish for d > 1
        let divisors: Vec<usize> = (2..=q).filter(|d| q % d == 0).collect();
        for _ in 0..rng.gen_range(0..4) {
            let d = divisors[rng.gen_range(0..divisors.len())];
            let j = rng.gen_range(0..q as i64);
            let c = rng.gen_range(-3..=3i64);
            for k in 0..d as i64 {
                let term = CycNumber::omega_pow(q, j + k * (q / d) as i64).unwrap();
                x = x + term.scale(&BigRational::from_integer(BigInt::from(c)));
            }
        }
        if rng.gen_bool(0.5) {
            let j = rng.gen_range(0..q as i64);
            x = x + CycNumber::omega_pow(q, j).unwrap().scale(&BigRational::new(1.into(), rng.gen_range(1..5i64).into()));
        }
        let exact = x.is_zero();
        zeros += exact as usize;
        assert_eq!(exact, x.as_complex().norm() < 1e-9, "q = {q}, x = {x}");
    }
    assert!(zeros > 100, "sampler should produce plenty of zeros, got {zeros}");
}

#[test]
fn composite_modulus_examples() {
    // ω_6² is a primitive cube root: 1 + ω² + ω⁴ = 0 in Q(ω_6)
    assert!(CycNumber::from_integers(6, &[1, 0, 1, 0, 1, 0]).unwrap().is_zero());
    // but 1 + ω + ω² ≠ 0 there
    assert!(!CycNumber::from_integers(6, &[1, 1, 1, 0, 0, 0]).unwrap().is_zero());
    // ω_4² = -1
    assert_eq!(CycNumber::omega_pow(4, 2).unwrap(), CycNumber::from_integers(4, &[-1, 0, 0, 0]).unwrap());
}
