//! Approximate functional equations for `ζ^(r)(s,α)` and `L^(r)(s,χ)` with
//! `0 ≤ σ < 1`, and the complex gamma machinery they need.
//!
//! Starting from the Euler-summation form with split `x`, the sawtooth is
//! expanded as `ψ(v) = −Σ_{|n|≥1} e^{2πinv}/(2πin)`. Modes with
//! `1 ≤ |n| ≤ y`, `y = |t|/(2πx)`, are integrated by parts and completed to
//! `∫_0^∞`, which produces the gamma factor `Γ(1−s)(2πin)^{s−1}`; the modes
//! with `|n| > y` are kept as a sawtooth tail minus finitely many pure
//! oscillations.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::characters::DirichletCharacter;
use crate::error::{domain, Error, Result};
use crate::logpoly::{power_derivative_kernel, s_derivative_kernel};
use crate::sawtooth::{kernel_tail, plain_segment_from_zero, psi, EvalResult, Kernel};
use crate::summation::ComplexNeumaier;
use crate::zeta::{check_alpha, fmt_complex, pole_term, power_deriv};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const TWO_PI: f64 = 2.0 * PI;

/// Highest derivative order the gamma factor supports.
pub const AFE_MAX_ORDER: usize = 2;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// `log Γ(z)` for `Re z ≥ 1/2` (Lanczos, `g = 7`, 9 terms). Not the
/// principal branch of `log Γ`, only some logarithm of `Γ(z)`.
fn lanczos_log_gamma(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (TWO_PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Some logarithm of `Γ(z)`, with reflection for `Re z < 1/2`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) || !z.is_finite() {
        return Err(domain("s", fmt_complex(z), "not a nonpositive integer"));
    }
    if z.re >= 0.5 {
        return Ok(lanczos_log_gamma(z));
    }
    let sin = (PI * z).sin();
    Ok(Complex64::new(PI.ln(), 0.0) - sin.ln() - lanczos_log_gamma(ONE - z))
}

/// `Γ(s)`.
pub fn complex_gamma(s: Complex64) -> Result<Complex64> {
    if s.im == 0.0 && s.re > 0.0 && s.re <= 171.0 {
        // keep real arguments exactly real
        return Ok(Complex64::new(log_gamma(s)?.re.exp(), 0.0));
    }
    log_gamma(s).map(|l| l.exp())
}

// B_{2k} for k = 1..=7
const BERNOULLI_EVEN: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

const SHIFT: f64 = 12.0;

/// The digamma function `ψ₀(z)`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(domain("z", fmt_complex(z), "not a nonpositive integer"));
    }
    if z.re < 0.5 {
        let cot = (PI * z).cos() / (PI * z).sin();
        return Ok(digamma(ONE - z)? - PI * cot);
    }
    let mut z = z;
    let mut acc = ZERO;
    while z.re < SHIFT {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut series = ZERO;
    let mut p = inv2;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        series += b / (2.0 * (k + 1) as f64) * p;
        p *= inv2;
    }
    Ok(acc + z.ln() - 0.5 / z - series)
}

/// The trigamma function `ψ₁(z)`.
pub fn trigamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(domain("z", fmt_complex(z), "not a nonpositive integer"));
    }
    if z.re < 0.5 {
        let sin = (PI * z).sin();
        return Ok(PI * PI / (sin * sin) - trigamma(ONE - z)?);
    }
    let mut z = z;
    let mut acc = ZERO;
    while z.re < SHIFT {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = ZERO;
    let mut p = inv2 * inv;
    for b in BERNOULLI_EVEN {
        series += b * p;
        p *= inv2;
    }
    Ok(acc + inv + 0.5 * inv2 + series)
}

/// `q^{−s}Γ(1−s)(2πin)^{s−1} = Γ(1−s)(2πin/q)^{s−1}/q` and its first two
/// `s`-derivatives; `q = 1` for the Hurwitz case.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GammaFactor {
    pub s: Complex64,
    pub n: i64,
    pub modulus: u64,
    pub value: Complex64,
    /// `d^k/ds^k` of `value` for `k = 0, 1, 2`.
    pub derivatives: [Complex64; 3],
}

impl GammaFactor {
    pub fn new(s: Complex64, n: i64) -> Result<Self> {
        Self::with_modulus(s, n, 1)
    }

    pub fn with_modulus(s: Complex64, n: i64, modulus: u64) -> Result<Self> {
        if n == 0 {
            return Err(domain("n", n, "a nonzero integer"));
        }
        if modulus == 0 {
            return Err(domain("q", modulus, "a positive integer"));
        }
        let one_minus = ONE - s;
        let sgn = n.signum() as f64;
        // principal log(2πin/q)
        let log_w = Complex64::new(
            (TWO_PI * n.unsigned_abs() as f64 / modulus as f64).ln(),
            sgn * PI / 2.0,
        );
        let value = (log_gamma(one_minus)? + (s - 1.0) * log_w).exp() / modulus as f64;
        let l1 = log_w - digamma(one_minus)?;
        let d1 = value * l1;
        let d2 = value * (l1 * l1 + trigamma(one_minus)?);
        Ok(GammaFactor {
            s,
            n,
            modulus,
            value,
            derivatives: [value, d1, d2],
        })
    }
}

/// Split, order and the derived mode cutoff of one evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AfeConfig {
    pub split: f64,
    pub derivative_order: usize,
    /// `y = |t|/(2πx)` (Hurwitz) or `q|t|/(2πX)` (L-functions).
    pub cutoff: f64,
}

impl AfeConfig {
    /// `split` is `x` for the Hurwitz case and `X` for the L-case
    /// (`modulus = q`).
    pub fn new(s: Complex64, split: f64, derivative_order: usize, modulus: u64) -> Result<Self> {
        check_strip(s)?;
        if derivative_order > AFE_MAX_ORDER {
            return Err(domain("r", derivative_order, "r ≤ 2"));
        }
        if !(split > 0.0 && split.is_finite()) {
            return Err(domain("x", split, "a finite real > 0"));
        }
        let cutoff = modulus as f64 * s.im.abs() / (TWO_PI * split);
        if !cutoff.is_finite() || cutoff > 1e6 {
            return Err(domain("y", cutoff, "a finite cutoff y ≤ 10⁶"));
        }
        Ok(AfeConfig {
            split,
            derivative_order,
            cutoff,
        })
    }

    /// The modes `1 ≤ |n| ≤ y`.
    pub fn modes(&self) -> Vec<i64> {
        let top = self.cutoff.floor() as i64;
        (1..=top).flat_map(|n| [n, -n]).collect()
    }
}

fn check_strip(s: Complex64) -> Result<()> {
    if s.re >= 0.0 && s.re < 1.0 && s.is_finite() {
        Ok(())
    } else {
        Err(domain("s", fmt_complex(s), "0 ≤ Re(s) < 1"))
    }
}

fn unit(phase_turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, TWO_PI * phase_turns.rem_euclid(1.0))
}

/// The approximate functional equation for `d^r/ds^r Σ_{n≥0} (k(n+α))^{−s}`
/// minus its pole part, with split `x` (`diff = x − α`).
fn afe_core(
    s: Complex64,
    r: usize,
    alpha: f64,
    x: f64,
    diff: f64,
    k: u64,
    modes: &[i64],
) -> Result<EvalResult> {
    let kf = k as f64;
    let mut sum = ComplexNeumaier::default();
    if diff >= 0.0 {
        for n in 0..=diff.floor() as u64 {
            sum.add(power_deriv(s, r, kf * (n as f64 + alpha)));
        }
    }
    let mut fourier = ZERO;
    for &n in modes {
        let nf = n as f64;
        let g = GammaFactor::with_modulus(s, n, k)?;
        sum.add(unit(nf * alpha) * g.derivatives[r]);
        fourier += unit(nf * diff) / Complex64::new(0.0, TWO_PI * nf);
    }
    let boundary = (psi(diff) + fourier) * power_deriv(s, r, kf * x);
    sum.add(boundary);

    let power = power_derivative_kernel(s, r, kf);
    let kernel = s_derivative_kernel(s, r, kf);
    let mut total = EvalResult::exact(sum.value());
    total -= kernel_tail(Kernel::Sawtooth { lambda: 0.0 }, x, alpha, &kernel)?;
    for &n in modes {
        let freq = TWO_PI * n as f64;
        total -= plain_segment_from_zero(freq, alpha, x, &power)?;
        let tail = kernel_tail(Kernel::Plain { freq }, x, alpha, &kernel)?;
        total -= tail.scale(ONE / Complex64::new(0.0, freq));
    }
    Ok(total)
}

/// `ζ^(r)(s,α)` for `0 ≤ σ < 1`, `r ≤ 2`, split `x > 0`.
pub fn afe_hurwitz(s: Complex64, alpha: f64, r: usize, x: f64) -> Result<EvalResult> {
    check_alpha(alpha)?;
    let cfg = AfeConfig::new(s, x, r, 1)?;
    let core = afe_core(s, r, alpha, x, x - alpha, 1, &cfg.modes())?;
    Ok(core + EvalResult::exact(pole_term(s, r, x)))
}

/// `L^(r)(s,χ)` for non-principal `χ`, `0 ≤ σ < 1`, `r ≤ 2`, split `X > 0`.
pub fn afe_l(s: Complex64, chi: &DirichletCharacter, r: usize, big_x: f64) -> Result<EvalResult> {
    if chi.is_principal {
        return Err(Error::PrincipalCharacter);
    }
    let q = chi.modulus;
    let cfg = AfeConfig::new(s, big_x, r, q)?;
    let modes = cfg.modes();
    let qf = q as f64;
    let mut total = EvalResult::exact(ZERO);
    for a in 1..=q {
        let c = chi.value(a as i64);
        if c.norm() == 0.0 {
            continue;
        }
        let core = afe_core(
            s,
            r,
            a as f64 / qf,
            big_x / qf,
            (big_x - a as f64) / qf,
            q,
            &modes,
        )?;
        total += core.scale(c);
    }
    Ok(total)
}
