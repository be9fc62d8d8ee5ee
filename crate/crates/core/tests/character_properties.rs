use num_complex::Complex64;
use proptest::prelude::*;
use zeta_lab::characters::{enumerate_characters, euler_phi, gcd, primitive_characters};

proptest! {
    #[test]
    fn row_orthogonality(q in 1u64..=30) {
        let chars = enumerate_characters(q);
        let phi = euler_phi(q) as f64;
        prop_assert_eq!(chars.len() as u64, euler_phi(q));
        for (i, x) in chars.iter().enumerate() {
            for (j, y) in chars.iter().enumerate() {
                let s: Complex64 = (1..=q as i64).map(|a| x.value(a) * y.value(a).conj()).sum();
                let want = if i == j { phi } else { 0.0 };
                prop_assert!((s - want).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn column_orthogonality(q in 1u64..=30, a in 1i64..=60, b in 1i64..=60) {
        let chars = enumerate_characters(q);
        let s: Complex64 = chars.iter().map(|c| c.value(a) * c.value(b).conj()).sum();
        let qi = q as i64;
        let same = (a - b).rem_euclid(qi) == 0 && gcd(a as u64, q) == 1;
        let want = if same { euler_phi(q) as f64 } else { 0.0 };
        prop_assert!((s - want).norm() < 1e-10);
    }

    #[test]
    fn gauss_sum_factorizes(q in 3u64..=30) {
        for chi in primitive_characters(q) {
            let tau = chi.gauss_sum(1);
            prop_assert!((tau.norm() - (q as f64).sqrt()).abs() < 1e-10);
            for n in 0..q as i64 {
                prop_assert!((chi.gauss_sum(n) - chi.value(n).conj() * tau).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn values_are_periodic_and_multiplicative(q in 1u64..=40, m in -80i64..80, n in -80i64..80) {
        for chi in enumerate_characters(q) {
            prop_assert!((chi.value(m + q as i64) - chi.value(m)).norm() < 1e-12);
            prop_assert!((chi.value(m * n) - chi.value(m) * chi.value(n)).norm() < 1e-12);
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    for q in 1..=30 {
        assert_eq!(enumerate_characters(q), enumerate_characters(q));
    }
}

#[test]
fn principal_character_has_label_zero() {
    for q in 1..=30 {
        let chars = enumerate_characters(q);
        assert!(chars[0].is_principal && chars[0].label == 0);
        assert!(chars[1..].iter().all(|c| !c.is_principal));
    }
}
