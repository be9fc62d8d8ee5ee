//! Closed-form power-log integrals and a small Gauss-Legendre helper.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::logpoly::LogPoly;

const SERIES_TERMS: usize = 24;
/// Largest `|z|` fed to [`m_table`]; keeps the series free of cancellation.
const MAX_Z: f64 = 0.5;

/// `M_k(z) = ∫_0^1 τ^k e^{zτ} dτ` for `k = 0..=kmax`, by the power series
/// `Σ_m z^m / (m! (k+m+1))`. Only for `|z| ≤ MAX_Z`.
fn m_table(z: Complex64, kmax: usize) -> Vec<Complex64> {
    let mut powers = Vec::with_capacity(SERIES_TERMS);
    let mut term = Complex64::new(1.0, 0.0);
    for m in 0..SERIES_TERMS {
        powers.push(term);
        term = term * z / (m as f64 + 1.0);
    }
    (0..=kmax)
        .map(|k| {
            powers
                .iter()
                .enumerate()
                .rev()
                .map(|(m, p)| p / (k + m + 1) as f64)
                .sum()
        })
        .collect()
}

/// Contribution of one log-piece `[e^{l0}, e^{l0+h}]`. Returns
/// `(∫ g du, ∫ (u - e^{l0}) g du)`; the second entry only if `linear`.
fn log_piece(l0: f64, h: f64, g: &LogPoly, linear: bool) -> (Complex64, Complex64) {
    let w = g.power + 1.0;
    let z = w * h;
    let p = g.shifted_coeffs(l0);
    let deg = p.len() - 1;
    let extra = if linear { SERIES_TERMS } else { 0 };
    let mt = m_table(z, deg + extra);
    let scale = (w * l0).exp();

    let mut base = Complex64::new(0.0, 0.0);
    let mut hp = h;
    for (k, pk) in p.iter().enumerate() {
        base += pk * hp * mt[k];
        hp *= h;
    }
    let base = base * scale;
    if !linear {
        return (base, Complex64::new(0.0, 0.0));
    }
    // ∫_0^1 σ^k e^{zσ}(e^{hσ} - 1) dσ = Σ_{j≥1} h^j/j! M_{k+j}(z)
    let mut lin = Complex64::new(0.0, 0.0);
    let mut hp = h;
    for (k, pk) in p.iter().enumerate() {
        let mut d = Complex64::new(0.0, 0.0);
        let mut coef = 1.0;
        for j in 1..SERIES_TERMS {
            coef *= h / j as f64;
            d += mt[k + j] * coef;
        }
        lin += pk * hp * d;
        hp *= h;
    }
    (base, lin * scale * l0.exp())
}

fn piece_count(c: f64, d: f64, g: &LogPoly) -> (usize, f64) {
    let total = (d / c).ln();
    let w = (g.power + 1.0).norm().max(1.0);
    let n = ((total * w) / MAX_Z).ceil().max(1.0) as usize;
    (n, total / n as f64)
}

/// Exact `∫_c^d u^b P(ln u) du` for `0 < c ≤ d`.
pub fn power_log_integral(c: f64, d: f64, g: &LogPoly) -> Complex64 {
    if d <= c {
        return Complex64::new(0.0, 0.0);
    }
    let (n, h) = piece_count(c, d, g);
    let l0 = c.ln();
    (0..n)
        .map(|i| log_piece(l0 + i as f64 * h, h, g, false).0)
        .sum()
}

/// Exact `∫_c^d (u - c + offset) u^b P(ln u) du` for `0 < c ≤ d`.
///
/// Splitting off `u - c` keeps the linear weight small on each piece, so the
/// sawtooth `ψ(u - α) = (u - c) + ψ(c - α)` integrates without cancelling
/// two large moments against each other.
pub fn linear_power_log_integral(c: f64, d: f64, offset: f64, g: &LogPoly) -> Complex64 {
    if d <= c {
        return Complex64::new(0.0, 0.0);
    }
    let (n, h) = piece_count(c, d, g);
    let l0 = c.ln();
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let li = l0 + i as f64 * h;
        let start = li.exp();
        let (base, lin) = log_piece(li, h, g, true);
        total += lin + base * (offset + (start - c));
    }
    total
}

/// Exact `∫_0^c u^β (ln u)^j du` for `Re β > -1`.
pub fn power_log_from_zero(c: f64, beta: Complex64, j: usize) -> Complex64 {
    let w = beta + 1.0;
    let l = c.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut falling = 1.0;
    let mut wp = w;
    for i in 0..=j {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * falling * l.powi((j - i) as i32) / wp;
        falling *= (j - i) as f64;
        wp *= w;
    }
    (w * l).exp() * sum
}

/// Exact `∫_c^∞ u^β (ln u)^j du` for `Re β < -1`.
pub fn power_log_to_infinity(c: f64, beta: Complex64, j: usize) -> Complex64 {
    -power_log_from_zero(c, beta, j)
}

fn legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wt = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wt;
        w[n - 1 - i] = wt;
    }
    (x, w)
}

fn rule(n: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static R16: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    static R24: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    match n {
        16 => R16.get_or_init(|| legendre_nodes(16)),
        _ => R24.get_or_init(|| legendre_nodes(24)),
    }
}

/// 24-point Gauss-Legendre on `[a, b]` with the 16-point rule as an error
/// estimate. Returns `(value, |value - value_16|)`.
pub fn gauss_legendre<F: Fn(f64) -> Complex64>(a: f64, b: f64, f: F) -> (Complex64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let apply = |n: usize| -> Complex64 {
        let (x, w) = rule(n);
        x.iter()
            .zip(w)
            .map(|(xi, wi)| f(mid + half * xi) * *wi)
            .sum::<Complex64>()
            * half
    };
    let fine = apply(24);
    let coarse = apply(16);
    (fine, (fine - coarse).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn m_table_against_closed_form() {
        let z = c(0.3, -0.4);
        let m = m_table(z, 3);
        assert!((m[0] - (z.exp() - 1.0) / z).norm() < 1e-15);
        // M_1 = (e^z - M_0)/z
        let err = (m[1] - (z.exp() - m[0]) / z).norm();
        assert!(err < 1e-14, "{err}");
    }

    #[test]
    fn power_log_integral_elementary() {
        // ∫_1^e u^{-2} ln u du = 1 - 2/e
        let g = LogPoly::monomial(c(-2.0, 0.0), 1);
        let v = power_log_integral(1.0, std::f64::consts::E, &g);
        assert!((v - c(1.0 - 2.0 / std::f64::consts::E, 0.0)).norm() < 1e-15);
        // b = -1: ∫_2^7 ln^2 u / u du = (ln^3 7 - ln^3 2)/3
        let g = LogPoly::monomial(c(-1.0, 0.0), 2);
        let v = power_log_integral(2.0, 7.0, &g);
        let want = (7f64.ln().powi(3) - 2f64.ln().powi(3)) / 3.0;
        assert!((v.re - want).abs() < 1e-14 && v.im.abs() < 1e-16);
    }

    #[test]
    fn near_minus_one_exponent_stays_accurate() {
        // ∫_1^5 u^{-1-ε} du = (1 - 5^{-ε})/ε, ε = 1e-9
        let eps = 1e-9;
        let g = LogPoly::monomial(c(-1.0 - eps, 0.0), 0);
        let v = power_log_integral(1.0, 5.0, &g).re;
        let want = -(-eps * 5f64.ln()).exp_m1() / eps;
        assert!((v - want).abs() < 1e-14);
    }

    #[test]
    fn linear_weight_matches_gauss_legendre() {
        let g = LogPoly::new(c(-1.7, 3.0), vec![c(0.4, 0.0), c(-1.0, 0.5)]);
        let (a, b) = (2.3, 3.3);
        let off = -0.2;
        let exact = linear_power_log_integral(a, b, off, &g);
        let (gl, _) = gauss_legendre(a, b, |u| g.eval(u) * (u - a + off));
        assert!((exact - gl).norm() < 1e-14);
    }

    #[test]
    fn from_zero_formula() {
        // ∫_0^{0.5} u^{-0.5} ln u du = [2 u^{1/2}(ln u - 2)]_0^{0.5}
        let v = power_log_from_zero(0.5, c(-0.5, 0.0), 1);
        let want = 2.0 * 0.5f64.sqrt() * (0.5f64.ln() - 2.0);
        assert!((v.re - want).abs() < 1e-14);
    }

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let (v, _) = gauss_legendre(0.0, 2.0, |u| c(u.powi(20), 0.0));
        assert!((v.re - 2f64.powi(21) / 21.0).abs() < 1e-9);
    }
}
