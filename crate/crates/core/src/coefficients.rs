//! Expansion coefficients at `s = 1` and `s = 0`, each by a closed form and,
//! where the definition is a limit, by that limit.
//!
//! Normalizations:
//!
//! * `γ_r(α)` is the Laurent coefficient, `ζ(s,α) − 1/(s−1) = Σ γ_r(α)(s−1)^r`.
//!   The classical constant `lim (Σ log^r n/n − log^{r+1}N/(r+1))` equals
//!   `(−1)^r r! γ_r(1)`; see [`classical_stieltjes`].
//! * `γ_r(a,q) = lim_{N→∞} (Σ_{n≡a, n≤N} log^r n/n − log^{r+1}N/(q(r+1)))`.
//! * `β_r(α) = ζ^(r)(0,α)/r!`, `γ_r(χ) = L^(r)(1,χ)/r!`,
//!   `γ_r(λ,α) = φ^(r)(λ,α,1)/r!`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::DirichletCharacter;
use crate::error::{domain, Error, Result};
use crate::logpoly::LogPoly;
use crate::sawtooth::{kernel_tail, EvalResult, Kernel};
use crate::summation::Neumaier;
use crate::zeta::{check_alpha, check_order, euler_core, l_deriv, lerch_deriv, LerchArgs};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn sign(r: usize) -> f64 {
    if r.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// `lim_{s→1}(ζ^(r)(s,α) − (−1)^r r!/(s−1)^{r+1})` from the representation
/// with split `x`:
/// `(−log x)^{r+1}/(r+1) + Σ_{0≤n≤x−α} (−log(n+α))^r/(n+α)
///  + ψ(x−α)(−log x)^r/x − ∫_x^∞ ψ(u−α)u^{−2}(−log u)^{r−1}(r − log u) du`.
pub fn regular_part_at_one(r: usize, alpha: f64, x: f64) -> Result<EvalResult> {
    check_alpha(alpha)?;
    check_order(r)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain("x", x, "a finite real > 0"));
    }
    let core = euler_core(real(1.0), r, alpha, x, x - alpha, 1.0)?;
    let pole_excess = (-x.ln()).powi(r as i32 + 1) / (r as f64 + 1.0);
    Ok(core + EvalResult::exact(real(pole_excess)))
}

/// `γ_r(α)`, the Laurent coefficient of `ζ(s,α)` at `s = 1` (split `x = 1`).
pub fn stieltjes_gamma(r: usize, alpha: f64) -> Result<EvalResult> {
    let v = regular_part_at_one(r, alpha, 1.0)?;
    Ok(real_part(v.scale(real(1.0 / factorial(r)))))
}

/// `(−1)^r r! γ_r(α)`, the normalization of the classical Stieltjes
/// constants (`γ_1 = −0.0728…`).
pub fn classical_stieltjes(r: usize, alpha: f64) -> Result<EvalResult> {
    let v = regular_part_at_one(r, alpha, 1.0)?;
    Ok(real_part(v.scale(real(sign(r)))))
}

fn real_part(v: EvalResult) -> EvalResult {
    EvalResult::new(real(v.value.re), v.error_bound)
}

/// Partial sums `Σ_{n=0}^{N} log^j(n+α)/(n+α)` for `j = 0..=r_max`.
fn log_harmonic_sums(r_max: usize, alpha: f64, first: u64, step: u64, last: u64) -> Vec<f64> {
    let mut sums = vec![Neumaier::default(); r_max + 1];
    let count = (last - first) / step;
    for i in (0..=count).rev() {
        let m = (first + i * step) as f64 + alpha;
        let l = m.ln();
        let mut t = 1.0 / m;
        for s in sums.iter_mut() {
            s.add(t);
            t *= l;
        }
    }
    sums.iter().map(Neumaier::value).collect()
}

/// `((−1)^r/r!)(Σ_{n=0}^{N} log^r(n+α)/(n+α) − log^{r+1}(N+α)/(r+1))`.
pub fn limit_oracle_gamma(r: usize, alpha: f64, n: u64) -> Result<f64> {
    check_alpha(alpha)?;
    if n < 10 {
        return Err(domain("N", n, "N ≥ 10"));
    }
    let sums = log_harmonic_sums(r, alpha, 0, 1, n);
    let top = (n as f64 + alpha).ln();
    let bracket = sums[r] - top.powi(r as i32 + 1) / (r as f64 + 1.0);
    Ok(sign(r) / factorial(r) * bracket)
}

/// `Σ_{n≡a, n≤N} log^r n/n − log^{r+1}N/(q(r+1))`.
pub fn limit_oracle_gamma_aq(r: usize, a: u64, q: u64, n: u64) -> Result<f64> {
    check_progression(a, q)?;
    if n < q {
        return Err(domain("N", n, "N ≥ q"));
    }
    let sums = log_harmonic_sums(r, 0.0, a, q, a + (n - a) / q * q);
    let top = (n as f64).ln();
    Ok(sums[r] - top.powi(r as i32 + 1) / (q as f64 * (r as f64 + 1.0)))
}

/// Cutoffs used for extrapolated limit oracles.
pub const ORACLE_CUTOFFS: [u64; 3] = [100_000, 200_000, 400_000];

/// Richardson over `N` values `V(N) = C + c·h(N)`, with `h` the shape of the
/// first neglected Euler-Maclaurin term; the estimate is the spread between
/// the two pairwise extrapolations.
fn richardson(values: &[f64], shapes: &[f64]) -> EvalResult {
    let pair = |i: usize| {
        let c = (values[i] - values[i + 1]) / (shapes[i] - shapes[i + 1]);
        values[i + 1] - c * shapes[i + 1]
    };
    let (a, b) = (pair(0), pair(1));
    EvalResult::new(real(b), (a - b).abs())
}

/// `f(u) = log^r u/u` and its derivatives, as a [`LogPoly`].
fn log_harmonic_term(r: usize) -> LogPoly {
    LogPoly::monomial(real(-1.0), r)
}

/// The limit oracle for `γ_r(α)`, with the endpoint Euler-Maclaurin terms
/// `f/2` and `f'/12` removed and Richardson over [`ORACLE_CUTOFFS`].
pub fn limit_oracle_gamma_extrapolated(r: usize, alpha: f64) -> Result<EvalResult> {
    check_alpha(alpha)?;
    let f = log_harmonic_term(r);
    let f1 = f.derivative();
    let f3 = f1.derivative().derivative();
    let mut values = Vec::new();
    let mut shapes = Vec::new();
    for &n in &ORACLE_CUTOFFS {
        let end = n as f64 + alpha;
        let raw = limit_oracle_gamma(r, alpha, n)?;
        let corr = f.eval(end).re / 2.0 + f1.eval(end).re / 12.0;
        values.push(raw - sign(r) / factorial(r) * corr);
        shapes.push(f3.eval(end).re);
    }
    Ok(richardson(&values, &shapes))
}

/// The limit oracle for `γ_r(a,q)`, corrected at the last progression term
/// `n_L` (Euler-Maclaurin with step `q`) and extrapolated.
pub fn limit_oracle_gamma_aq_extrapolated(r: usize, a: u64, q: u64) -> Result<EvalResult> {
    check_progression(a, q)?;
    let f = log_harmonic_term(r);
    let f1 = f.derivative();
    let f3 = f1.derivative().derivative();
    let antideriv = |u: f64| u.ln().powi(r as i32 + 1) / (r as f64 + 1.0);
    let qf = q as f64;
    let mut values = Vec::new();
    let mut shapes = Vec::new();
    for &n in &ORACLE_CUTOFFS {
        let last = (a + (n - a) / q * q) as f64;
        let raw = limit_oracle_gamma_aq(r, a, q, n)?;
        let corr = (antideriv(last) - antideriv(n as f64)) / qf
            + f.eval(last).re / 2.0
            + qf * f1.eval(last).re / 12.0;
        values.push(raw - corr);
        shapes.push(f3.eval(last).re);
    }
    Ok(richardson(&values, &shapes))
}

fn check_progression(a: u64, q: u64) -> Result<()> {
    if q == 0 {
        return Err(domain("q", q, "a positive integer"));
    }
    if !(1..=q).contains(&a) {
        return Err(domain("a", a, "1 ≤ a ≤ q"));
    }
    Ok(())
}

/// `β_r(α) = ζ^(r)(0,α)/r!`, from
/// `ζ^(r)(0,α) + r! = (−1)^r{log^r α + r∫_1^∞ ψ(u−α)u^{−1}log^{r−1}u du}`.
pub fn beta_coefficient(r: usize, alpha: f64) -> Result<EvalResult> {
    check_alpha(alpha)?;
    check_order(r)?;
    if r == 0 {
        return Ok(EvalResult::exact(real(0.5 - alpha)));
    }
    let la = alpha.ln();
    let g = LogPoly::monomial(real(-1.0), r - 1);
    let tail = kernel_tail(Kernel::Sawtooth { lambda: 0.0 }, 1.0, alpha, &g)?;
    let braces = EvalResult::exact(real(la.powi(r as i32))) + tail.scale(real(r as f64));
    let deriv = braces.scale(real(sign(r))) - EvalResult::exact(real(factorial(r)));
    Ok(real_part(deriv.scale(real(1.0 / factorial(r)))))
}

/// `ζ^(r)(0,α)` from the general representation at `s = 0` with split `x`.
pub fn hurwitz_deriv_at_zero(r: usize, alpha: f64, x: f64) -> Result<EvalResult> {
    check_alpha(alpha)?;
    check_order(r)?;
    let core = euler_core(ZERO, r, alpha, x, x - alpha, 1.0)?;
    Ok(real_part(
        core + EvalResult::exact(crate::zeta::pole_term(ZERO, r, x)),
    ))
}

/// `c_n(q,α) = Σ_{j=0}^{n} γ_{n−j}(α)(−1)^j log^j q / j!`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvolutionCoefficient {
    pub n: usize,
    pub value: f64,
    pub error_bound: f64,
}

/// `c_0..c_{r_max}` from a table of `γ_k(α)`.
pub fn convolution_coefficients(q: u64, gammas: &[EvalResult]) -> Vec<ConvolutionCoefficient> {
    let lq = (q as f64).ln();
    (0..gammas.len())
        .map(|n| {
            let mut value = Neumaier::default();
            let mut err = 0.0;
            for j in 0..=n {
                let w = sign(j) * lq.powi(j as i32) / factorial(j);
                value.add(w * gammas[n - j].value.re);
                err += w.abs() * gammas[n - j].error_bound;
            }
            ConvolutionCoefficient {
                n,
                value: value.value(),
                error_bound: err,
            }
        })
        .collect()
}

/// `lim_{s→1} {q^{−s}(ζ(s,a/q) − 1/(s−1))}^{(r)}
///  = (r!/q) Σ_{ℓ=0}^{r} (−1)^ℓ log^ℓ q/ℓ! · γ_{r−ℓ}(a/q)`.
fn finite_sum(r: usize, q: u64, gammas: &[EvalResult]) -> EvalResult {
    let lq = (q as f64).ln();
    let mut total = EvalResult::exact(ZERO);
    for l in 0..=r {
        let w = factorial(r) / q as f64 * sign(l) * lq.powi(l as i32) / factorial(l);
        total += gammas[r - l].scale(real(w));
    }
    total
}

/// The amount by which the limit constant `γ_r(a,q)` differs from
/// `(−1)^r lim_{s→1}{q^{−s}(ζ(s,a/q) − 1/(s−1))}^{(r)}`: the regular part of
/// `(q^{−s} − 1/q)/(s−1)` contributes `−log^{r+1}q/(q(r+1))`.
pub fn progression_offset(r: usize, q: u64) -> f64 {
    -(q as f64).ln().powi(r as i32 + 1) / (q as f64 * (r as f64 + 1.0))
}

/// `γ_r(a,q)` by both routes; returns `(finite_sum, convolution)`.
pub fn gamma_aq_routes(r: usize, a: u64, q: u64) -> Result<(EvalResult, EvalResult)> {
    check_progression(a, q)?;
    check_order(r)?;
    let alpha = a as f64 / q as f64;
    let gammas = (0..=r)
        .map(|k| stieltjes_gamma(k, alpha))
        .collect::<Result<Vec<_>>>()?;
    let offset = EvalResult::exact(real(progression_offset(r, q)));
    let prop = finite_sum(r, q, &gammas).scale(real(sign(r))) + offset;
    let c = convolution_coefficients(q, &gammas)[r];
    let conv = EvalResult::new(real(c.value), c.error_bound)
        .scale(real(sign(r) * factorial(r) / q as f64))
        + offset;
    Ok((prop, conv))
}

/// `γ_r(a,q)` through the finite sum over Hurwitz-Stieltjes constants, fed by [`stieltjes_gamma`].
pub fn gamma_aq(r: usize, a: u64, q: u64) -> Result<EvalResult> {
    gamma_aq_routes(r, a, q).map(|(p, _)| p)
}

/// `L^(r)(1,χ)` from the representation at `s = 1` with split `X`.
pub fn l_deriv_at_1_exact(r: usize, chi: &DirichletCharacter, big_x: f64) -> Result<EvalResult> {
    l_deriv(real(1.0), chi, r, big_x)
}

fn check_truncation(r: usize, chi: &DirichletCharacter) -> Result<()> {
    if chi.is_principal {
        return Err(Error::PrincipalCharacter);
    }
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive {
            conductor: chi.conductor,
            modulus: chi.modulus,
        });
    }
    if chi.modulus < 3 {
        return Err(domain("q", chi.modulus, "q ≥ 3"));
    }
    if r < 1 {
        return Err(domain("r", r, "r ≥ 1"));
    }
    check_order(r)
}

/// `Σ_{n≤X} χ(n) log^r n · n^{−p}`.
fn truncated_sum(chi: &DirichletCharacter, r: usize, big_x: f64, p: f64) -> Complex64 {
    let mut re = Neumaier::default();
    let mut im = Neumaier::default();
    for n in (2..=big_x.floor() as u64).rev() {
        let c = chi.value(n as i64);
        let nf = n as f64;
        let w = nf.ln().powi(r as i32) * nf.powf(-p);
        re.add(c.re * w);
        im.add(c.im * w);
    }
    Complex64::new(re.value(), im.value())
}

/// Guard constant for the implied constants of the truncation estimates.
pub const GUARD: f64 = 10.0;

/// `(−1)^r Σ_{n≤qe^{r/2}} χ(n) log^r n/n`, error bound
/// `10·q^{−1/2}e^{−r/2} log q (log q + r/2)^r`.
pub fn l_deriv_at_1_truncated(r: usize, chi: &DirichletCharacter) -> Result<EvalResult> {
    check_truncation(r, chi)?;
    let q = chi.modulus as f64;
    let rf = r as f64;
    let cut = q * (rf / 2.0).exp();
    let value = truncated_sum(chi, r, cut, 1.0) * sign(r);
    let lq = q.ln();
    let bound = GUARD * q.powf(-0.5) * (-rf / 2.0).exp() * lq * (lq + rf / 2.0).powi(r as i32);
    Ok(EvalResult::new(value, bound))
}

/// `L^(r)(0,χ)` from the representation at `s = 0` with split `X`.
pub fn l_deriv_at_0(r: usize, chi: &DirichletCharacter, big_x: f64) -> Result<EvalResult> {
    if chi.is_principal {
        return Err(Error::PrincipalCharacter);
    }
    check_order(r)?;
    if !(big_x > 0.0 && big_x.is_finite()) {
        return Err(domain("X", big_x, "a finite real > 0"));
    }
    let q = chi.modulus;
    let qf = q as f64;
    let mut total = EvalResult::exact(ZERO);
    for a in 1..=q {
        let c = chi.value(a as i64);
        if c.norm() == 0.0 {
            continue;
        }
        let alpha = a as f64 / qf;
        let core = euler_core(ZERO, r, alpha, big_x / qf, (big_x - a as f64) / qf, qf)?;
        total += core.scale(c);
    }
    Ok(total)
}

/// `(−1)^r Σ_{n≤qe^{r−1}} χ(n) log^r n`, error bound
/// `10·q^{1/2} log q (log q + r)^r`.
pub fn l_deriv_at_0_truncated(r: usize, chi: &DirichletCharacter) -> Result<EvalResult> {
    check_truncation(r, chi)?;
    let q = chi.modulus as f64;
    let rf = r as f64;
    let cut = q * (rf - 1.0).exp();
    let value = truncated_sum(chi, r, cut, 0.0) * sign(r);
    let lq = q.ln();
    let bound = GUARD * q.sqrt() * lq * (lq + rf).powi(r as i32);
    Ok(EvalResult::new(value, bound))
}

/// `γ_r(λ,α) = φ^(r)(λ,α,1)/r!`.
pub fn lerch_taylor_at_1(r: usize, lambda: f64, alpha: f64) -> Result<EvalResult> {
    if lambda == 0.0 || lambda == 1.0 {
        return Err(domain(
            "lambda",
            lambda,
            "0 < λ < 1 (use stieltjes_gamma at λ = 0)",
        ));
    }
    let v = lerch_deriv(&LerchArgs::new(lambda, alpha, real(1.0), r).split(1.0))?;
    Ok(v.scale(real(1.0 / factorial(r))))
}

/// Which sequence of coefficients a [`CoefficientTable`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientKind {
    /// Laurent coefficients `γ_r(α)` at `s = 1`.
    StieltjesGamma,
    /// Taylor coefficients `β_r(α)` of `ζ(s,α)` at `s = 0`.
    BetaAtZero,
    /// Limit constants `γ_r(a,q)`.
    GammaAq,
    /// Taylor coefficients `γ_r(χ)` of `L(s,χ)` at `s = 1`.
    GammaChi,
    /// Taylor coefficients `γ_r(λ,α)` of `φ(λ,α,s)` at `s = 1`.
    LerchAtOne,
    /// Taylor coefficients `L^(r)(0,χ)/r!` at `s = 0`.
    LDerivAtZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameters {
    Alpha { alpha: f64 },
    Progression { a: u64, q: u64 },
    Character { q: u64, label: usize },
    Lerch { lambda: f64, alpha: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    ClosedForm,
    Proposition,
    Truncated,
    LimitOracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoefficientEntry {
    pub r: usize,
    pub value: Complex64,
    pub error_estimate: f64,
    pub route: Route,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientTable {
    pub kind: CoefficientKind,
    pub parameters: Parameters,
    pub entries: Vec<CoefficientEntry>,
}

fn build<F>(r_max: usize, route: Route, f: F) -> Result<Vec<CoefficientEntry>>
where
    F: Fn(usize) -> Result<EvalResult> + Sync,
{
    check_order(r_max)?;
    (0..=r_max)
        .into_par_iter()
        .map(|r| {
            f(r).map(|v| CoefficientEntry {
                r,
                value: v.value,
                error_estimate: v.error_bound,
                route,
            })
        })
        .collect()
}

impl CoefficientTable {
    pub fn stieltjes(alpha: f64, r_max: usize) -> Result<Self> {
        Ok(CoefficientTable {
            kind: CoefficientKind::StieltjesGamma,
            parameters: Parameters::Alpha { alpha },
            entries: build(r_max, Route::ClosedForm, |r| stieltjes_gamma(r, alpha))?,
        })
    }

    pub fn beta(alpha: f64, r_max: usize) -> Result<Self> {
        Ok(CoefficientTable {
            kind: CoefficientKind::BetaAtZero,
            parameters: Parameters::Alpha { alpha },
            entries: build(r_max, Route::ClosedForm, |r| beta_coefficient(r, alpha))?,
        })
    }

    pub fn gamma_aq(a: u64, q: u64, r_max: usize) -> Result<Self> {
        Ok(CoefficientTable {
            kind: CoefficientKind::GammaAq,
            parameters: Parameters::Progression { a, q },
            entries: build(r_max, Route::Proposition, |r| gamma_aq(r, a, q))?,
        })
    }

    pub fn gamma_chi(chi: &DirichletCharacter, r_max: usize) -> Result<Self> {
        let x = chi.modulus as f64;
        Ok(CoefficientTable {
            kind: CoefficientKind::GammaChi,
            parameters: Parameters::Character {
                q: chi.modulus,
                label: chi.label,
            },
            entries: build(r_max, Route::ClosedForm, |r| {
                l_deriv_at_1_exact(r, chi, x).map(|v| v.scale(real(1.0 / factorial(r))))
            })?,
        })
    }

    pub fn lerch_at_one(lambda: f64, alpha: f64, r_max: usize) -> Result<Self> {
        Ok(CoefficientTable {
            kind: CoefficientKind::LerchAtOne,
            parameters: Parameters::Lerch { lambda, alpha },
            entries: build(r_max, Route::ClosedForm, |r| {
                lerch_taylor_at_1(r, lambda, alpha)
            })?,
        })
    }

    pub fn l_deriv_at_zero(chi: &DirichletCharacter, r_max: usize) -> Result<Self> {
        let x = chi.modulus as f64;
        Ok(CoefficientTable {
            kind: CoefficientKind::LDerivAtZero,
            parameters: Parameters::Character {
                q: chi.modulus,
                label: chi.label,
            },
            entries: build(r_max, Route::ClosedForm, |r| {
                l_deriv_at_0(r, chi, x).map(|v| v.scale(real(1.0 / factorial(r))))
            })?,
        })
    }

    /// `0` for expansions at `s = 0`, `1` otherwise.
    pub fn expansion_point(&self) -> f64 {
        match self.kind {
            CoefficientKind::BetaAtZero | CoefficientKind::LDerivAtZero => 0.0,
            _ => 1.0,
        }
    }
}

/// Partial sum of the expansion held in `table`, including the polar part
/// for the Hurwitz and progression kinds.
pub fn reconstruct_series(table: &CoefficientTable, s: Complex64) -> Result<Complex64> {
    let w = s - table.expansion_point();
    if w.norm() > 0.5 {
        return Err(domain(
            "s",
            crate::zeta::fmt_complex(s),
            "|s − expansion point| ≤ 1/2",
        ));
    }
    if table.entries.len() < 9 {
        return Err(domain(
            "r_max",
            table.entries.len().saturating_sub(1),
            "r_max ≥ 8",
        ));
    }
    let mut total = ZERO;
    for e in table.entries.iter().rev() {
        let coef = match table.kind {
            CoefficientKind::GammaAq => e.value * sign(e.r) / factorial(e.r),
            _ => e.value,
        };
        total = total * w + coef;
    }
    // Horner above ran from the top entry down, so `total` is Σ c_r w^r.
    match (table.kind, table.parameters) {
        (CoefficientKind::StieltjesGamma, _) => {
            if w.norm() == 0.0 {
                return Err(Error::Pole);
            }
            Ok(total + 1.0 / w)
        }
        (CoefficientKind::GammaAq, Parameters::Progression { q, .. }) => {
            if w.norm() == 0.0 {
                return Err(Error::Pole);
            }
            Ok(total + 1.0 / (q as f64 * w))
        }
        _ => Ok(total),
    }
}
