#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use zeta_lab::zeta::direct_series_oracle;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `0.1 ≤ Re(s) ≤ 1`, `|Im(s)| < 30`, away from the pole.
pub fn strip_s() -> impl Strategy<Value = Complex64> {
    (0.1f64..=1.0, -30.0f64..30.0).prop_filter_map("pole", |(re, im)| {
        let s = c(re, im);
        ((s - 1.0).norm() > 0.05).then_some(s)
    })
}

pub fn agree(a: Complex64, ea: f64, b: Complex64, eb: f64) -> bool {
    (a - b).norm() <= ea + eb + 1e-12 * a.norm().max(1.0)
}

/// `(−1)^r Σ_{n>N} e^{2πiλn}(n+α)^{−s} log^r(n+α)`: Euler-Maclaurin for
/// `λ = 0`, repeated summation by parts (forward differences) otherwise.
pub fn series_tail(s: Complex64, alpha: f64, lambda: f64, r: usize, n: u64) -> Complex64 {
    let f = |m: f64| (-s * m.ln()).exp() * m.ln().powi(r as i32);
    let sign = if r.is_multiple_of(2) { 1.0 } else { -1.0 };
    let start = (n + 1) as f64 + alpha;
    if lambda == 0.0 {
        // ∫_c^∞ u^{−s} L^j du = c^{1−s}L^j/(s−1) + j/(s−1)·(j−1 case)
        let l = start.ln();
        let base = (-(s - 1.0) * l).exp() / (s - 1.0);
        let mut integral = base;
        for j in 1..=r {
            integral = base * l.powi(j as i32) + integral * (j as f64) / (s - 1.0);
        }
        let fp = (-(s + 1.0) * l).exp()
            * (r as f64 * if r > 0 { l.powi(r as i32 - 1) } else { 0.0 } - s * l.powi(r as i32));
        return sign * (integral + f(start) / 2.0 - fp / 12.0);
    }
    let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * lambda);
    let zn = Complex64::from_polar(
        1.0,
        2.0 * std::f64::consts::PI * (lambda * (n + 1) as f64).fract(),
    );
    // Σ_{k≥0} z^k f(start+k) = (1/(1−z)) Σ_j (z/(1−z))^j Δ^j f(start)
    let terms = 12;
    let mut row: Vec<Complex64> = (0..=terms).map(|k| f(start + k as f64)).collect();
    let ratio = z / (1.0 - z);
    let mut total = c(0.0, 0.0);
    let mut w = c(1.0, 0.0);
    for _ in 0..=terms {
        total += w * row[0];
        w *= ratio;
        row = row.windows(2).map(|p| p[1] - p[0]).collect();
        if row.is_empty() {
            break;
        }
    }
    sign * zn * total / (1.0 - z)
}

pub fn oracle(s: Complex64, alpha: f64, lambda: f64, r: usize) -> Complex64 {
    let n = 20_000;
    direct_series_oracle(s, alpha, lambda, r, n) + series_tail(s, alpha, lambda, r, n)
}
