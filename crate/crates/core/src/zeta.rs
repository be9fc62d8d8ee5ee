//! `ζ^(r)(s,α)`, `Z^(r)(s,a,q)`, `L^(r)(s,χ)` and `φ^(r)(λ,α,s)` for
//! `Re(s) > 0` from their Euler-summation representations with a free split
//! point `x`.
//!
//! For Hurwitz zeta and every `x > 0`:
//!
//! ```text
//! ζ^(r)(s,α) − d^r/ds^r (x^{1−s}/(s−1))
//!     = Σ_{0≤n≤x−α} (n+α)^{−s}(−log(n+α))^r + ψ(x−α) x^{−s}(−log x)^r
//!       − ∫_x^∞ ψ(u−α) u^{−1} d^r/ds^r(s u^{−s}) du.
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::characters::DirichletCharacter;
use crate::error::{domain, Error, Result};
use crate::logpoly::{power_derivative_kernel, s_derivative_kernel};
use crate::sawtooth::{kernel_tail, psi, EvalResult, Kernel};
use crate::summation::ComplexNeumaier;

/// Highest supported derivative order.
pub const MAX_ORDER: usize = 24;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Arguments of [`hurwitz_deriv`]. `split` is the free parameter `x`;
/// `None` selects [`default_split`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HurwitzArgs {
    pub s: Complex64,
    pub alpha: f64,
    pub order: usize,
    pub split: Option<f64>,
}

impl HurwitzArgs {
    pub fn new(s: Complex64, alpha: f64, order: usize) -> Self {
        HurwitzArgs {
            s,
            alpha,
            order,
            split: None,
        }
    }

    pub fn split(mut self, x: f64) -> Self {
        self.split = Some(x);
        self
    }
}

/// Arguments of [`lerch_deriv`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LerchArgs {
    pub lambda: f64,
    pub alpha: f64,
    pub s: Complex64,
    pub order: usize,
    pub split: Option<f64>,
}

impl LerchArgs {
    pub fn new(lambda: f64, alpha: f64, s: Complex64, order: usize) -> Self {
        LerchArgs {
            lambda,
            alpha,
            s,
            order,
            split: None,
        }
    }

    pub fn split(mut self, x: f64) -> Self {
        self.split = Some(x);
        self
    }
}

/// `x = max(1, |Im s|/2π) + α`.
pub fn default_split(s: Complex64, alpha: f64) -> f64 {
    (s.im.abs() / (2.0 * PI)).max(1.0) + alpha
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(domain("alpha", alpha, "0 < α ≤ 1"))
    }
}

pub(crate) fn check_order(r: usize) -> Result<()> {
    if r <= MAX_ORDER {
        Ok(())
    } else {
        Err(domain("r", r, "r ≤ 24"))
    }
}

fn check_split(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain("x", x, "a finite real > 0"))
    }
}

fn check_strip(s: Complex64) -> Result<()> {
    if s.re > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(domain("s", fmt_complex(s), "Re(s) > 0"))
    }
}

pub(crate) fn fmt_complex(s: Complex64) -> String {
    format!("{}{:+}i", s.re, s.im)
}

/// `d^r/ds^r (x^{1−s}/(s−1))`, by Leibniz.
pub fn pole_term(s: Complex64, r: usize, x: f64) -> Complex64 {
    let lx = x.ln();
    let head = (Complex64::new(1.0, 0.0) - s) * lx;
    let base = head.exp();
    let w = s - 1.0;
    let mut total = ZERO;
    let mut binom = 1.0;
    let mut fact = 1.0;
    for l in 0..=r {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        total += binom * (-lx).powi((r - l) as i32) * sign * fact / w.powi(l as i32 + 1);
        binom = binom * (r - l) as f64 / (l + 1) as f64;
        fact *= (l + 1) as f64;
    }
    total * base
}

/// `d^r/ds^r m^{−s} = m^{−s}(−log m)^r`.
pub(crate) fn power_deriv(s: Complex64, r: usize, m: f64) -> Complex64 {
    let l = m.ln();
    (-s * l).exp() * (-l).powi(r as i32)
}

/// Floating-point allowance for a sum whose terms have total magnitude `mag`;
/// `(−log m)^r` costs about `r` ulps on top of `exp`.
pub(crate) fn rounding(mag: f64, r: usize) -> f64 {
    (r as f64 + 8.0) * f64::EPSILON * mag
}

/// The part of every Euler-summation assembly that is not the pole term:
///
/// `Σ_{0≤n≤x−α} ((k(n+α))^{−s})^{(r)} + ψ(x−α)((kx)^{−s})^{(r)}
///  − ∫_x^∞ ψ(u−α) u^{−1} (s(ku)^{−s})^{(r)} du`.
///
/// `diff` is `x − α`, passed separately so that callers with integer data
/// (`(X − a)/q`) place the boundary exactly.
pub(crate) fn euler_core(
    s: Complex64,
    r: usize,
    alpha: f64,
    x: f64,
    diff: f64,
    k: f64,
) -> Result<EvalResult> {
    let mut sum = ComplexNeumaier::default();
    let mut mag = 0.0;
    if diff >= 0.0 {
        let top = diff.floor() as u64;
        for n in 0..=top {
            let term = power_deriv(s, r, k * (n as f64 + alpha));
            mag += term.norm();
            sum.add(term);
        }
    }
    let boundary = psi(diff) * power_deriv(s, r, k * x);
    let kernel = s_derivative_kernel(s, r, k);
    let tail = kernel_tail(Kernel::Sawtooth { lambda: 0.0 }, x, alpha, &kernel)?;
    mag += boundary.norm() + tail.value.norm();
    Ok(EvalResult::new(sum.value() + boundary, rounding(mag, r)) - tail)
}

/// `ζ^(r)(s,α)` for `Re(s) > 0`, `s ≠ 1`.
pub fn hurwitz_deriv(args: &HurwitzArgs) -> Result<EvalResult> {
    let HurwitzArgs {
        s, alpha, order, ..
    } = *args;
    check_strip(s)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    check_alpha(alpha)?;
    check_order(order)?;
    let x = args.split.unwrap_or_else(|| default_split(s, alpha));
    check_split(x)?;
    let core = euler_core(s, order, alpha, x, x - alpha, 1.0)?;
    let pole = pole_term(s, order, x);
    Ok(core + EvalResult::new(pole, rounding(pole.norm(), order)))
}

fn check_residue(a: u64, q: u64) -> Result<()> {
    if q == 0 {
        return Err(domain("q", q, "a positive integer"));
    }
    if !(1..=q).contains(&a) {
        return Err(domain("a", a, "1 ≤ a ≤ q"));
    }
    Ok(())
}

/// The Euler-summation core for the progression `n ≡ a (mod q)` with split `X`.
fn progression_core(s: Complex64, r: usize, a: u64, q: u64, big_x: f64) -> Result<EvalResult> {
    let qf = q as f64;
    let alpha = a as f64 / qf;
    euler_core(s, r, alpha, big_x / qf, (big_x - a as f64) / qf, qf)
}

/// `Z^(r)(s,a,q) = d^r/ds^r (q^{−s} ζ(s, a/q))` with split `X`.
pub fn z_deriv(s: Complex64, a: u64, q: u64, r: usize, big_x: f64) -> Result<EvalResult> {
    check_strip(s)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    check_residue(a, q)?;
    check_order(r)?;
    check_split(big_x)?;
    let core = progression_core(s, r, a, q, big_x)?;
    let pole = pole_term(s, r, big_x) / q as f64;
    Ok(core + EvalResult::new(pole, rounding(pole.norm(), r)))
}

/// `L^(r)(s,χ)` for non-principal `χ`; `s = 1` is allowed.
pub fn l_deriv(s: Complex64, chi: &DirichletCharacter, r: usize, big_x: f64) -> Result<EvalResult> {
    if chi.is_principal {
        return Err(Error::PrincipalCharacter);
    }
    check_strip(s)?;
    check_order(r)?;
    check_split(big_x)?;
    let q = chi.modulus;
    let mut total = EvalResult::exact(ZERO);
    for a in 1..=q {
        let c = chi.value(a as i64);
        if c.norm() == 0.0 {
            continue;
        }
        total += progression_core(s, r, a, q, big_x)?.scale(c);
    }
    Ok(total)
}

/// `φ^(r)(λ,α,s)` for `0 < λ < 1`, `Re(s) > 0`.
pub fn lerch_deriv(args: &LerchArgs) -> Result<EvalResult> {
    let LerchArgs {
        lambda,
        alpha,
        s,
        order: r,
        ..
    } = *args;
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(domain("lambda", lambda, "0 < λ < 1"));
    }
    check_strip(s)?;
    check_alpha(alpha)?;
    check_order(r)?;
    let x = args.split.unwrap_or_else(|| default_split(s, alpha));
    check_split(x)?;
    let kappa = 2.0 * PI * lambda;
    let diff = x - alpha;

    let mut sum = ComplexNeumaier::default();
    let mut mag = 0.0;
    if diff >= 0.0 {
        for n in 0..=diff.floor() as u64 {
            let nf = n as f64;
            let term = Complex64::from_polar(1.0, kappa * nf) * power_deriv(s, r, nf + alpha);
            mag += term.norm();
            sum.add(term);
        }
    }
    let boundary = Complex64::from_polar(psi(diff), kappa * diff) * power_deriv(s, r, x);
    let g_power = power_derivative_kernel(s, r, 1.0);
    let g_kernel = s_derivative_kernel(s, r, 1.0);
    let plain = kernel_tail(Kernel::Plain { freq: kappa }, x, alpha, &g_power)?;
    let weighted = kernel_tail(Kernel::Sawtooth { lambda }, x, alpha, &g_power)?;
    let kernel = kernel_tail(Kernel::Sawtooth { lambda }, x, alpha, &g_kernel)?;
    mag +=
        boundary.norm() + plain.value.norm() + kappa * weighted.value.norm() + kernel.value.norm();
    Ok(EvalResult::new(sum.value() + boundary, rounding(mag, r))
        + plain
        + weighted.scale(Complex64::new(0.0, kappa))
        - kernel)
}

/// `(−1)^r Σ_{n=0}^{N} e^{2πiλn}(n+α)^{−s} log^r(n+α)`, the truncated
/// Dirichlet series of `φ^(r)(λ,α,s)` (Hurwitz when `λ = 0`).
pub fn direct_series_oracle(
    s: Complex64,
    alpha: f64,
    lambda: f64,
    r: usize,
    n_max: u64,
) -> Complex64 {
    let mut sum = ComplexNeumaier::default();
    for n in (0..=n_max).rev() {
        let m = n as f64 + alpha;
        let l = m.ln();
        let phase = 2.0 * PI * ((lambda * n as f64).fract());
        sum.add(Complex64::from_polar(1.0, phase) * (-s * l).exp() * l.powi(r as i32));
    }
    let sign = if r.is_multiple_of(2) { 1.0 } else { -1.0 };
    sum.value() * sign
}
