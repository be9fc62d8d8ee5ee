use num_complex::Complex64;
use proptest::prelude::*;
use zeta_lab::logpoly::LogPoly;
use zeta_lab::quad::gauss_legendre;
use zeta_lab::sawtooth::{kernel_segment, kernel_tail, psi, psi2, sawtooth_tail, Kernel};
use zeta_lab::TailIntegralSpec;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn psi_periodic_and_odd(u in -1e3f64..1e3) {
        prop_assert!((psi(u + 1.0) - psi(u)).abs() < 1e-12);
        if u.fract() != 0.0 {
            prop_assert!((psi(-u) + psi(u)).abs() < 1e-12);
        }
    }

    #[test]
    fn psi2_differentiates_to_psi(k in -100i64..100, f in 0.01f64..0.99) {
        let u = k as f64 + f;
        let h = 1e-6;
        let fd = (psi2(u + h) - psi2(u - h)) / (2.0 * h);
        prop_assert!((fd - psi(u)).abs() < 1e-6);
    }
}

#[test]
fn psi_integrates_to_zero_over_a_period() {
    let one = LogPoly::new(c(0.0, 0.0), vec![c(1.0, 0.0)]);
    for shift in [0.0, 0.3, 0.75] {
        let v = kernel_segment(Kernel::Sawtooth { lambda: 0.0 }, 1.0, 2.0, shift, &one);
        assert!(v.value.norm() <= 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Moving the lower limit out by a segment leaves the tail unchanged,
    /// so the internal cutoff choice does not leak into the value.
    #[test]
    fn tail_independent_of_cutoff(lower in 1.0f64..20.0, shift in 0.01f64..1.0,
                                  a in -2.5f64..-1.01, im in -5.0f64..5.0, r in 0usize..5,
                                  lambda in prop::sample::select(vec![0.0, 0.2, 0.7])) {
        let g = LogPoly::monomial(c(a, im), r);
        let k = Kernel::Sawtooth { lambda };
        let full = kernel_tail(k, lower, shift, &g).unwrap();
        let far = 2.0 * lower + 3.3;
        let split = kernel_segment(k, lower, far, shift, &g) + kernel_tail(k, far, shift, &g).unwrap();
        let tol = full.error_bound + split.error_bound + 1e-13 * full.value.norm().max(1.0);
        prop_assert!((full.value - split.value).norm() <= tol);
    }
}

/// Brute force on unit pieces between sawtooth jumps, to `upper`, plus the
/// second-mean-value bound `|g(upper)|/6` for the rest (monotone `g`).
fn brute_force(lower: f64, shift: f64, a: f64, r: usize, upper: f64) -> (f64, f64) {
    let g = |u: f64| u.powf(a) * u.ln().powi(r as i32);
    let mut total = 0.0;
    let mut err = 0.0;
    let mut left = lower;
    while left < upper {
        let mut next_jump = (left - shift).floor() + 1.0 + shift;
        if next_jump <= left + 1e-9 {
            next_jump += 1.0;
        }
        let right = next_jump.min(upper);
        let (v, e) = gauss_legendre(left, right, |u| c(psi(u - shift) * g(u), 0.0));
        total += v.re;
        err += e;
        left = right;
    }
    (total, err + g(upper).abs() / 6.0 + 1e-13)
}

#[test]
fn error_bound_is_honest_against_brute_force() {
    let mut cases = 0;
    for &lower in &[1.0, 2.5, 7.0] {
        for &shift in &[1.0, 0.3, 0.85] {
            for &(a, r) in &[
                (-2.0, 0),
                (-1.5, 1),
                (-2.0, 3),
                (-3.0, 2),
                (-2.2, 4),
                (-1.7, 2),
            ] {
                if cases == 50 {
                    break;
                }
                cases += 1;
                let spec = TailIntegralSpec::new(lower, shift, c(a, 0.0), r);
                let got = sawtooth_tail(&spec).unwrap();
                let (oracle, oracle_err) = brute_force(lower, shift, a, r, 2e4);
                let diff = (got.value.re - oracle).abs();
                assert!(
                    diff <= got.error_bound + oracle_err,
                    "x={lower} α={shift} a={a} r={r}: {diff:e}"
                );
            }
        }
    }
    assert_eq!(cases, 50);
}
