use deltazx::angle::scalar_from_phase;
use deltazx::{Angle, CycloScalar, Ring};
use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = CycloScalar> {
    (prop::array::uniform4(-20i64..=20), 0u32..=6).prop_map(|(c, k)| CycloScalar::from_i64s(c, k))
}

fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&a.neg()), CycloScalar::zero());
        prop_assert_eq!(a.mul(&CycloScalar::one()), a.clone());
    }

    #[test]
    fn to_complex_is_a_homomorphism(a in scalar(), b in scalar()) {
        prop_assert!(close(a.mul(&b).to_complex(), a.to_complex() * b.to_complex(), 1e-10));
        prop_assert!(close(a.add(&b).to_complex(), a.to_complex() + b.to_complex(), 1e-10));
    }

    #[test]
    fn normalize_is_idempotent_and_value_preserving(c in prop::array::uniform4(-50i64..=50), k in 0u32..=6) {
        let raw = c.map(BigInt::from);
        let n = CycloScalar::normalize(raw.clone(), k);
        prop_assert_eq!(CycloScalar::normalize(n.coeffs().clone(), n.sqrt2_exp()), n.clone());
        let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let direct: Complex64 = (0..4).map(|i| c[i] as f64 * w.powi(i as i32)).sum::<Complex64>() / 2f64.sqrt().powi(k as i32);
        prop_assert!((n.to_complex() - direct).norm() <= 1e-12 * (1.0 + direct.norm()));
    }

    #[test]
    fn equality_agrees_with_values(a in scalar(), b in scalar()) {
        let same_value = (a.to_complex() - b.to_complex()).norm() < 1e-9;
        prop_assert_eq!(a == b, same_value);
        // a scaled copy written with a different exponent is still equal
        let twice = a.mul(&CycloScalar::from_int(2));
        let scaled = CycloScalar::normalize(twice.coeffs().clone(), twice.sqrt2_exp() + 2);
        prop_assert_eq!(scaled, a);
    }
}

#[test]
fn phases_multiply_exhaustively() {
    for i in 0..8 {
        for j in 0..8 {
            let p = scalar_from_phase(&Angle::quarter(i)).unwrap().mul(&scalar_from_phase(&Angle::quarter(j)).unwrap());
            assert_eq!(p, scalar_from_phase(&Angle::quarter((i + j) % 8)).unwrap());
        }
    }
}
