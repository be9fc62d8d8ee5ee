//! The sawtooth `ψ(u) = u − [u] − 1/2`, its antiderivative `ψ₂`, and the
//! infinite tail integrals weighted by `ψ(u−α)` and/or `e^{2πiλ(u−α)}`.
//!
//! A tail `∫_x^∞ W(u−α) g(u) du` with `g(u) = u^b P(ln u)` is split at a
//! cutoff `U`. On `[x, U]` the non-oscillatory sawtooth is integrated in
//! closed form piece by piece (ψ is linear between its jumps); oscillatory
//! kernels use Gauss-Legendre on short pieces. Beyond `U` the kernel is
//! integrated by parts `K` times against bounded quasi-periodic
//! antiderivatives `A_k`, and the remainder is bounded by
//! `sup|A_K| · ∫_U^∞ |g^{(K-1)}|`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::logpoly::LogPoly;
use crate::quad;

const TWO_PI: f64 = 2.0 * PI;
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
/// Largest number of integrations by parts in the asymptotic tail.
const MAX_PARTS: usize = 24;
const MAX_CUTOFF: f64 = 1e8;
/// Ulps allowed per evaluated quantity in the rounding estimates.
const ROUNDING: f64 = 16.0 * f64::EPSILON;

/// `ψ(u) = u − [u] − 1/2`; equals `−1/2` at integers.
pub fn psi(u: f64) -> f64 {
    u - u.floor() - 0.5
}

/// `ψ₂(u) = ({u}² − {u} + 1/6)/2`, the periodic antiderivative of `ψ`.
pub fn psi2(u: f64) -> f64 {
    let f = u - u.floor();
    0.5 * (f * f - f + 1.0 / 6.0)
}

/// A complex value with a bound on its truncation and quadrature error,
/// plus an allowance for floating-point rounding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: Complex64,
    pub error_bound: f64,
}

impl EvalResult {
    pub fn new(value: Complex64, error_bound: f64) -> Self {
        EvalResult { value, error_bound }
    }

    pub fn exact(value: Complex64) -> Self {
        EvalResult::new(value, 0.0)
    }

    pub fn scale(self, factor: Complex64) -> Self {
        EvalResult::new(self.value * factor, self.error_bound * factor.norm())
    }
}

impl std::ops::Add for EvalResult {
    type Output = EvalResult;
    fn add(self, rhs: EvalResult) -> EvalResult {
        EvalResult::new(self.value + rhs.value, self.error_bound + rhs.error_bound)
    }
}

impl std::ops::Sub for EvalResult {
    type Output = EvalResult;
    fn sub(self, rhs: EvalResult) -> EvalResult {
        EvalResult::new(self.value - rhs.value, self.error_bound + rhs.error_bound)
    }
}

impl std::ops::AddAssign for EvalResult {
    fn add_assign(&mut self, rhs: EvalResult) {
        *self = *self + rhs;
    }
}

impl std::ops::SubAssign for EvalResult {
    fn sub_assign(&mut self, rhs: EvalResult) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for EvalResult {
    fn sum<I: Iterator<Item = EvalResult>>(iter: I) -> EvalResult {
        iter.fold(EvalResult::exact(ZERO), |a, b| a + b)
    }
}

/// The weight multiplying `g(u)` in a tail integral, as a function of
/// `v = u − α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Kernel {
    /// `ψ(v) e^{2πiλv}`, `0 ≤ λ < 1`.
    Sawtooth { lambda: f64 },
    /// `e^{i·freq·v}`.
    Plain { freq: f64 },
}

impl Kernel {
    fn eval(&self, v: f64) -> Complex64 {
        match *self {
            Kernel::Sawtooth { lambda } => {
                let w = psi(v);
                if lambda == 0.0 {
                    Complex64::new(w, 0.0)
                } else {
                    Complex64::from_polar(w, TWO_PI * lambda * v)
                }
            }
            Kernel::Plain { freq } => Complex64::from_polar(1.0, freq * v),
        }
    }

    /// Smallest frequency present in the kernel's Fourier expansion.
    fn min_freq(&self) -> f64 {
        match *self {
            Kernel::Sawtooth { lambda } => TWO_PI * (1.0 - lambda),
            Kernel::Plain { freq } => freq.abs(),
        }
    }

    fn max_freq(&self) -> f64 {
        match *self {
            Kernel::Sawtooth { lambda } => TWO_PI * lambda,
            Kernel::Plain { freq } => freq.abs(),
        }
    }

    /// `A_k(v)`: the bounded `(k−1)`-fold antiderivative, `A_1` the kernel.
    pub fn antiderivative(&self, k: usize, v: f64) -> Complex64 {
        match *self {
            Kernel::Sawtooth { lambda } => sawtooth_antiderivative(lambda, k, v),
            Kernel::Plain { freq } => {
                Complex64::from_polar(1.0, freq * v) / Complex64::new(0.0, freq).powi(k as i32 - 1)
            }
        }
    }

    /// Upper bound for `sup_v |A_k(v)|`, `k ≥ 2`.
    pub fn antiderivative_sup(&self, k: usize) -> f64 {
        match *self {
            Kernel::Sawtooth { lambda } => sawtooth_antiderivative_sup(lambda, k),
            Kernel::Plain { freq } => freq.abs().powi(1 - k as i32),
        }
    }
}

const BERNOULLI: [f64; 13] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
];
/// Orders up to this use the Bernoulli polynomial; above it the Fourier
/// series, which then converges like `n^{-m}`.
const BERNOULLI_MAX: usize = 12;
const FOURIER_TERMS: i64 = 40;
/// Fourier modes of `ψ e^{2πiλv}` kept explicitly in [`sawtooth_antiderivative`].
const NEAR_MODES: i64 = 6;

/// `P_m(v) = B_m({v})/m! = −Σ_{n≠0} e^{2πinv}/(2πin)^m`, `m ≥ 1`.
pub fn periodic_bernoulli(m: usize, v: f64) -> f64 {
    let f = v - v.floor();
    if m <= BERNOULLI_MAX {
        let mut binom = 1.0;
        let mut sum = 0.0;
        let mut fact = 1.0;
        for k in 0..=m {
            sum += binom * BERNOULLI[k] * f.powi((m - k) as i32);
            binom = binom * (m - k) as f64 / (k + 1) as f64;
        }
        for i in 2..=m {
            fact *= i as f64;
        }
        sum / fact
    } else {
        -fourier_part(m, f, 1, FOURIER_TERMS)
    }
}

/// `Σ_{lo≤|n|≤hi} e^{2πinv}/(2πin)^m` (real for real `v`).
fn fourier_part(m: usize, v: f64, lo: i64, hi: i64) -> f64 {
    let mut sum = 0.0;
    // n and −n pair to 2 Re(e^{2πinv} (2πin)^{-m})
    for n in (lo..=hi).rev() {
        let z = Complex64::from_polar(1.0, TWO_PI * n as f64 * v)
            / Complex64::new(0.0, TWO_PI * n as f64).powi(m as i32);
        sum += 2.0 * z.re;
    }
    sum
}

/// `A_k(v)` for the kernel `ψ(v)e^{iκv}`, `κ = 2πλ`:
/// `A_k(v) = −Σ_{n≠0} e^{2πi(n+λ)v} / (2πin (2πi(n+λ))^{k−1})`.
///
/// Modes with `|n| ≤ NEAR_MODES` are summed directly. For the rest
/// `(n+λ)^{1−k}` is expanded in `λ/n`, turning the far modes into tails of
/// periodic Bernoulli functions of order `k + j`.
pub fn sawtooth_antiderivative(lambda: f64, k: usize, v: f64) -> Complex64 {
    assert!(k >= 1);
    let frac = v - v.floor();
    let kappa = TWO_PI * lambda;
    let two_pi_i = Complex64::new(0.0, TWO_PI);
    if k == 1 {
        return Complex64::from_polar(psi(v), kappa * v);
    }
    let mut near = ZERO;
    for n in (1..=NEAR_MODES).rev() {
        for n in [n, -n] {
            let nf = n as f64;
            let term = Complex64::from_polar(1.0, TWO_PI * nf * frac)
                / (two_pi_i * nf * (two_pi_i * (nf + lambda)).powi(k as i32 - 1));
            near -= term;
        }
    }
    // far modes: Σ_j C(1−k, j) (iκ)^j T_{k+j}(v),
    // T_m = −Σ_{|n|>N} e^{2πinv}/(2πin)^m = P_m − P_m^{(N)}
    let ik = Complex64::new(0.0, kappa);
    let mut far = ZERO;
    let mut coef = Complex64::new(1.0, 0.0);
    let ratio = lambda / (NEAR_MODES as f64 + 1.0);
    let mut size = 1.0;
    for j in 0..400 {
        let m = k + j;
        let tail = if m <= BERNOULLI_MAX {
            periodic_bernoulli(m, frac) + fourier_part(m, frac, 1, NEAR_MODES)
        } else {
            -fourier_part(m, frac, NEAR_MODES + 1, FOURIER_TERMS)
        };
        far += coef * tail;
        // C(1−k, j+1) = C(1−k, j)·(1−k−j)/(j+1)
        let step = (1.0 - k as f64 - j as f64) / (j as f64 + 1.0);
        coef *= ik * step;
        size *= ratio * step.abs();
        if lambda == 0.0 || size < 1e-18 {
            break;
        }
    }
    Complex64::from_polar(1.0, kappa * v) * (near + far)
}

/// `Σ_{n≠0} 1/(2π|n| · |2π(n+λ)|^{k−1})`, an upper bound for `|A_k|`.
pub fn sawtooth_antiderivative_sup(lambda: f64, k: usize) -> f64 {
    assert!(k >= 2);
    const N: i64 = 60;
    let mut sum = 0.0;
    for n in (1..=N).rev() {
        for n in [n, -n] {
            let nf = n as f64;
            sum += 1.0 / (TWO_PI * nf.abs() * (TWO_PI * (nf + lambda).abs()).powi(k as i32 - 1));
        }
    }
    // |n| > N: |n+λ| ≥ |n|−1, and Σ_{m≥N} m^{−k} ≤ (N−1)^{1−k}/(k−1)
    let kf = k as f64;
    let tail = 2.0 * TWO_PI.powf(-kf) * ((N - 1) as f64).powf(1.0 - kf) / (kf - 1.0);
    sum + tail
}

/// `∫_c^d W(u−α) g(u) du` on a finite segment, `0 < c ≤ d`.
pub fn kernel_segment(kernel: Kernel, c: f64, d: f64, shift: f64, g: &LogPoly) -> EvalResult {
    if d <= c {
        return EvalResult::exact(ZERO);
    }
    match kernel {
        Kernel::Sawtooth { lambda } if lambda == 0.0 => sawtooth_exact(c, d, shift, g),
        Kernel::Sawtooth { .. } => {
            let mut total = EvalResult::exact(ZERO);
            for (a, b) in unit_breaks(c, d, shift) {
                total += smooth_segment(kernel, a, b, shift, g, 1.0);
            }
            total
        }
        Kernel::Plain { .. } => smooth_segment(kernel, c, d, shift, g, f64::INFINITY),
    }
}

/// Splits `[c, d]` at the points where `u − α` is an integer.
fn unit_breaks(c: f64, d: f64, shift: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut a = c;
    while a < d {
        let next = ((a - shift).floor() + 1.0 + shift).min(d);
        // guard against a break point that rounds onto `a`
        let next = if next <= a {
            (a - shift).floor() + 2.0 + shift
        } else {
            next
        }
        .min(d);
        out.push((a, next));
        a = next;
    }
    out
}

/// Rounding in `∫_a^b W(u−α) g(u) du` over one short piece: the size of the
/// piece times the relative error of evaluating `u^b`, the logs and the
/// kernel phase there.
fn rounding(kernel: Kernel, a: f64, b: f64, shift: f64, g: &LogPoly) -> f64 {
    let logs = a.ln().abs().max(b.ln().abs());
    let cond =
        1.0 + g.power.norm() * logs + g.degree() as f64 + kernel.max_freq() * (b - shift).abs();
    let size = [a, 0.5 * (a + b), b]
        .iter()
        .map(|&u| g.eval(u).norm())
        .fold(0.0, f64::max);
    ROUNDING * cond * size * (b - a)
}

/// Closed-form `∫_c^d ψ(u−α) g(u) du`.
fn sawtooth_exact(c: f64, d: f64, shift: f64, g: &LogPoly) -> EvalResult {
    let kernel = Kernel::Sawtooth { lambda: 0.0 };
    unit_breaks(c, d, shift)
        .into_iter()
        .map(|(a, b)| {
            let m = (0.5 * (a + b) - shift).floor();
            let offset = a - shift - m - 0.5;
            EvalResult::new(
                quad::linear_power_log_integral(a, b, offset, g),
                rounding(kernel, a, b, shift, g),
            )
        })
        .fold(EvalResult::exact(ZERO), |acc, piece| acc + piece)
}

/// Gauss-Legendre over pieces short enough for the oscillation of both the
/// kernel and `u^{Im b}`.
fn smooth_segment(
    kernel: Kernel,
    c: f64,
    d: f64,
    shift: f64,
    g: &LogPoly,
    max_len: f64,
) -> EvalResult {
    let bnorm = g.power.norm().max(1.0) + g.degree() as f64;
    let omega = kernel.max_freq().max(1e-300);
    let mut a = c;
    let mut total = EvalResult::exact(ZERO);
    while a < d {
        let len = max_len.min(0.5 * a).min(2.0 * a / bnorm).min(3.0 / omega);
        let b = (a + len).min(d);
        let (v, e) = quad::gauss_legendre(a, b, |u| kernel.eval(u - shift) * g.eval(u));
        total += EvalResult::new(v, e + rounding(kernel, a, b, shift, g));
        a = b;
    }
    total
}

/// `∫_U^∞ W(u−α) g(u) du` by `K−1` integrations by parts with the best `K`;
/// returns `None` if no `K` gives a finite remainder bound. The second field
/// is the rounding allowance, kept apart from the truncation remainder.
fn asymptotic_tail(
    kernel: Kernel,
    cutoff: f64,
    shift: f64,
    g: &LogPoly,
) -> Option<(EvalResult, f64)> {
    let v = cutoff - shift;
    let mut derivs = vec![g.clone()];
    let mut best: Option<(usize, f64)> = None;
    for k in 2..=MAX_PARTS + 1 {
        // remainder after k−1 parts: sup|A_k| ∫|g^{(k−1)}|
        if derivs.len() < k {
            let next = derivs[k - 2].derivative();
            derivs.push(next);
        }
        let Some(tail) = derivs[k - 1].abs_tail_bound(cutoff) else {
            continue;
        };
        let rem = kernel.antiderivative_sup(k) * tail;
        if best.is_none_or(|(_, r)| rem < r) {
            best = Some((k, rem));
        }
    }
    let (k_best, rem) = best?;
    let mut value = ZERO;
    let mut size = 0.0;
    for k in 1..k_best {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * kernel.antiderivative(k + 1, v) * derivs[k - 1].eval(cutoff);
        size += term.norm();
        value += term;
    }
    let cond = 1.0 + g.power.norm() * cutoff.ln() + g.degree() as f64 + kernel.max_freq() * v.abs();
    Some((EvalResult::new(value, rem), ROUNDING * cond * size))
}

/// `∫_x^∞ W(u−α) g(u) du` for a kernel and a power-log `g`.
///
/// Requires `Re(b) < 0` (so that `g → 0`); for `Kernel::Plain` with zero
/// frequency `Re(b) < −1` and the integral is done in closed form.
pub fn kernel_tail(kernel: Kernel, lower: f64, shift: f64, g: &LogPoly) -> Result<EvalResult> {
    if !(lower > 0.0 && lower.is_finite()) {
        return Err(domain("lower", lower, "a finite real > 0"));
    }
    if let Kernel::Sawtooth { lambda } = kernel {
        if !(0.0..1.0).contains(&lambda) {
            return Err(domain("lambda", lambda, "0 ≤ λ < 1"));
        }
    }
    if g.is_zero() {
        return Ok(EvalResult::exact(ZERO));
    }
    if let Kernel::Plain { freq } = kernel {
        if freq == 0.0 {
            if g.power.re >= -1.0 {
                return Err(Error::Divergent("non-oscillatory tail needs Re(a) < −1"));
            }
            let value = g
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c * quad::power_log_to_infinity(lower, g.power, j))
                .sum::<Complex64>();
            return Ok(EvalResult::exact(value));
        }
    }
    if g.power.re >= 0.0 {
        return Err(Error::Divergent("tail integrand must decay: Re(a) < 0"));
    }

    let bnorm = g.power.norm() + g.degree() as f64 + 8.0;
    let mut cutoff = lower
        .max(std::f64::consts::E)
        .max(2.0 * bnorm / kernel.min_freq());
    let mut finite = kernel_segment(kernel, lower, cutoff, shift, g);
    loop {
        let (tail, round) = asymptotic_tail(kernel, cutoff, shift, g).ok_or(Error::Divergent(
            "no integration-by-parts order gives a finite bound",
        ))?;
        let total = finite + tail;
        let tol = (1e-14 * total.value.norm()).max(1e-17);
        if tail.error_bound <= tol || cutoff >= MAX_CUTOFF {
            return Ok(total + EvalResult::new(ZERO, round));
        }
        let next = 2.0 * cutoff;
        finite += kernel_segment(kernel, cutoff, next, shift, g);
        cutoff = next;
    }
}

/// Parameters of `∫_x^∞ ψ(u−α)^{[weighted]} e^{2πiλ(u−α)} u^a log^r u du`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailIntegralSpec {
    pub lower: f64,
    pub shift: f64,
    pub exponent: Complex64,
    pub log_power: usize,
    pub oscillation: f64,
}

impl TailIntegralSpec {
    pub fn new(lower: f64, shift: f64, exponent: Complex64, log_power: usize) -> Self {
        TailIntegralSpec {
            lower,
            shift,
            exponent,
            log_power,
            oscillation: 0.0,
        }
    }

    pub fn with_oscillation(mut self, lambda: f64) -> Self {
        self.oscillation = lambda;
        self
    }

    fn integrand(&self) -> LogPoly {
        LogPoly::monomial(self.exponent, self.log_power)
    }

    fn check_shift(&self) -> Result<()> {
        if !(self.shift > 0.0 && self.shift <= 1.0) {
            return Err(domain("alpha", self.shift, "0 < α ≤ 1"));
        }
        Ok(())
    }
}

/// `∫_x^∞ ψ(u−α) u^a log^r u du`.
pub fn sawtooth_tail(spec: &TailIntegralSpec) -> Result<EvalResult> {
    spec.check_shift()?;
    if spec.oscillation != 0.0 {
        return Err(domain(
            "lambda",
            spec.oscillation,
            "0 for the plain sawtooth tail",
        ));
    }
    kernel_tail(
        Kernel::Sawtooth { lambda: 0.0 },
        spec.lower,
        spec.shift,
        &spec.integrand(),
    )
}

/// Which oscillatory tail to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oscillatory {
    /// `∫ ψ(u−α) e^{2πiλ(u−α)} u^a log^r u du`.
    Weighted,
    /// `∫ e^{2πiλ(u−α)} u^a log^r u du`.
    Pure,
}

/// The Lerch-type tails, with or without the sawtooth weight.
pub fn oscillatory_tail(spec: &TailIntegralSpec, variant: Oscillatory) -> Result<EvalResult> {
    spec.check_shift()?;
    let lambda = spec.oscillation;
    match variant {
        Oscillatory::Weighted => {
            if !(0.0..1.0).contains(&lambda) {
                return Err(domain("lambda", lambda, "0 ≤ λ < 1"));
            }
            kernel_tail(
                Kernel::Sawtooth { lambda },
                spec.lower,
                spec.shift,
                &spec.integrand(),
            )
        }
        Oscillatory::Pure => {
            if !(0.0..1.0).contains(&lambda) {
                return Err(domain("lambda", lambda, "0 ≤ λ < 1"));
            }
            kernel_tail(
                Kernel::Plain {
                    freq: TWO_PI * lambda,
                },
                spec.lower,
                spec.shift,
                &spec.integrand(),
            )
        }
    }
}

/// `∫_0^x e^{iω(u−α)} g(u) du` for `Re(b) > −1`.
pub fn plain_segment_from_zero(freq: f64, shift: f64, x: f64, g: &LogPoly) -> Result<EvalResult> {
    if g.power.re <= -1.0 {
        return Err(Error::Divergent("segment from 0 needs Re(b) > −1"));
    }
    // series in e^{iωu} on [0, c0], |ω|c0 ≤ 1
    let c0 = x.min(1.0 / freq.abs().max(1.0));
    let iw = Complex64::new(0.0, freq);
    let mut near = ZERO;
    let mut coef = Complex64::new(1.0, 0.0);
    for m in 0..30 {
        let beta = g.power + m as f64;
        let part: Complex64 = g
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * quad::power_log_from_zero(c0, beta, j))
            .sum();
        near += coef * part;
        coef *= iw / (m as f64 + 1.0);
    }
    let near = near * Complex64::from_polar(1.0, -freq * shift);
    let far = kernel_segment(Kernel::Plain { freq }, c0, x, shift, g);
    Ok(far + EvalResult::exact(near))
}
