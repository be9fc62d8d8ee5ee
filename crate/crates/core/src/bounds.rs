//! Numeric certification of the explicit coefficient bounds.
//!
//! Every report lists one case per parameter tuple with `margin = bound −
//! measured`. Cases marked `asserted: false` are informational and do not
//! affect `all_pass`.

use std::collections::BTreeMap;
use std::f64::consts::{E, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{enumerate_characters, primitive_characters, DirichletCharacter};
use crate::coefficients::{
    beta_coefficient, l_deriv_at_0, l_deriv_at_0_truncated, l_deriv_at_1_exact,
    l_deriv_at_1_truncated, lerch_taylor_at_1, stieltjes_gamma, GUARD,
};
use crate::error::{domain, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundId {
    #[serde(rename = "T2_Ib")]
    T2Ib,
    #[serde(rename = "T2_IIb")]
    T2IIb,
    #[serde(rename = "T2_IIIb")]
    T2IIIb,
    #[serde(rename = "T3_Ib")]
    T3Ib,
    #[serde(rename = "T3_IIb")]
    T3IIb,
    Berndt,
    #[serde(rename = "Ishikawa_compare")]
    IshikawaCompare,
    PolyaVinogradov,
}

impl BoundId {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundId::T2Ib => "T2_Ib",
            BoundId::T2IIb => "T2_IIb",
            BoundId::T2IIIb => "T2_IIIb",
            BoundId::T3Ib => "T3_Ib",
            BoundId::T3IIb => "T3_IIb",
            BoundId::Berndt => "Berndt",
            BoundId::IshikawaCompare => "Ishikawa_compare",
            BoundId::PolyaVinogradov => "PolyaVinogradov",
        }
    }
}

/// Parameters of one case; unused fields are omitted from output.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct CaseParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCase {
    pub params: CaseParams,
    pub measured: f64,
    pub bound: f64,
    pub margin: f64,
    pub asserted: bool,
    /// Extra informational columns (printed forms, competing bounds,
    /// observed implied constants).
    pub columns: BTreeMap<&'static str, f64>,
}

impl BoundCase {
    fn new(params: CaseParams, measured: f64, bound: f64) -> Self {
        BoundCase {
            params,
            measured,
            bound,
            margin: bound - measured,
            asserted: true,
            columns: BTreeMap::new(),
        }
    }

    fn informational(mut self) -> Self {
        self.asserted = false;
        self
    }

    fn column(mut self, name: &'static str, value: f64) -> Self {
        self.columns.insert(name, value);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub cases: Vec<BoundCase>,
    pub all_pass: bool,
    pub worst_margin: f64,
}

impl BoundReport {
    fn from_cases(bound_id: BoundId, cases: Vec<BoundCase>) -> Self {
        let asserted: Vec<&BoundCase> = cases.iter().filter(|c| c.asserted).collect();
        let all_pass = asserted.iter().all(|c| c.margin >= 0.0);
        let pool: Vec<&BoundCase> = if asserted.is_empty() {
            cases.iter().collect()
        } else {
            asserted
        };
        let worst_margin = pool.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);
        BoundReport {
            bound_id,
            cases,
            all_pass,
            worst_margin,
        }
    }

    /// Largest `measured / bound` over asserted cases.
    pub fn worst_ratio(&self) -> f64 {
        self.cases
            .iter()
            .filter(|c| c.asserted && c.bound > 0.0)
            .map(|c| c.measured / c.bound)
            .fold(0.0, f64::max)
    }
}

/// `{0.1, 0.2, …, 1.0} ∪ {1/3, 1/7}`.
pub fn default_alpha_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = (1..=10).map(|k| k as f64 / 10.0).collect();
    grid.push(1.0 / 3.0);
    grid.push(1.0 / 7.0);
    grid
}

pub const DEFAULT_Q_SET: [u64; 6] = [3, 4, 5, 7, 8, 11];
pub const DEFAULT_LAMBDA_GRID: [f64; 3] = [0.1, 0.5, 0.9];

fn ln_factorial(r: usize) -> f64 {
    (2..=r).map(|k| (k as f64).ln()).sum()
}

fn sign(r: usize) -> f64 {
    if r.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `e·(r/2e)^r/r!`, evaluated in log space.
pub fn t2_ib_bound(r: usize) -> f64 {
    let rf = r as f64;
    let power = if r == 0 {
        0.0
    } else {
        rf * (rf / (2.0 * E)).ln()
    };
    (1.0 + power - ln_factorial(r)).exp()
}

/// `e·2^{−r}/√r`, the abstract's form of the same bound.
pub fn abstract_bound(r: usize) -> f64 {
    E * 2f64.powi(-(r as i32)) / (r as f64).sqrt()
}

/// `4/(rπ^r)` for odd `r`, `2/(rπ^r)` for even `r`.
pub fn berndt_bound(r: usize) -> f64 {
    let num = if r % 2 == 1 { 4.0 } else { 2.0 };
    num / (r as f64 * PI.powi(r as i32))
}

/// `(r/e)^r/r!` in log space.
fn r_over_e_power(r: usize) -> f64 {
    let rf = r as f64;
    let power = if r == 0 { 0.0 } else { rf * (rf / E).ln() };
    (power - ln_factorial(r)).exp()
}

/// `(e/3)(r/e)^r/r! + 1`, the form that follows from the `−r!` pole value.
pub fn t2_iib_bound(r: usize) -> f64 {
    E / 3.0 * r_over_e_power(r) + 1.0
}

/// `(e/3)(r/e)^r/r! + 1/r!`, as printed.
pub fn t2_iib_printed_bound(r: usize) -> f64 {
    E / 3.0 * r_over_e_power(r) + (-ln_factorial(r)).exp()
}

/// `10·(r^r e^{−r}/r!)(1/λ + 1/(1−λ))`.
pub fn t2_iiib_bound(r: usize, lambda: f64) -> f64 {
    GUARD * r_over_e_power(r) * (1.0 / lambda + 1.0 / (1.0 - lambda))
}

fn check_grid(r_max: usize, alpha_grid: &[f64]) -> Result<()> {
    if !(1..=20).contains(&r_max) {
        return Err(domain("r_max", r_max, "1 ≤ r_max ≤ 20"));
    }
    for &a in alpha_grid {
        if !(a > 0.0 && a <= 1.0) {
            return Err(domain("alpha", a, "0 < α ≤ 1"));
        }
    }
    Ok(())
}

fn collect<T, F>(inputs: Vec<T>, f: F) -> Result<Vec<BoundCase>>
where
    T: Send,
    F: Fn(T) -> Result<BoundCase> + Sync + Send,
{
    inputs.into_par_iter().map(f).collect()
}

fn grid_pairs(r_max: usize, alpha_grid: &[f64]) -> Vec<(usize, f64)> {
    let mut alphas = alpha_grid.to_vec();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    (1..=r_max)
        .flat_map(|r| alphas.iter().map(move |&a| (r, a)))
        .collect()
}

/// `|γ_r(α) − (−1)^r log^r α/(r!α)| ≤ e(r/2e)^r/r!`, with Berndt's and the
/// abstract's bounds as extra columns.
pub fn certify_t2_ib(r_max: usize, alpha_grid: &[f64]) -> Result<BoundReport> {
    check_grid(r_max, alpha_grid)?;
    let cases = collect(grid_pairs(r_max, alpha_grid), |(r, alpha)| {
        let g = stieltjes_gamma(r, alpha)?.value.re;
        let main = sign(r) * alpha.ln().powi(r as i32) / (ln_factorial(r).exp() * alpha);
        let params = CaseParams {
            r: Some(r),
            alpha: Some(alpha),
            ..Default::default()
        };
        Ok(BoundCase::new(params, (g - main).abs(), t2_ib_bound(r))
            .column("berndt", berndt_bound(r))
            .column("abstract_form", abstract_bound(r)))
    })?;
    Ok(BoundReport::from_cases(BoundId::T2Ib, cases))
}

/// `e(r/2e)^r/r!` against Berndt's bound, per `r`. Informational: for
/// `r ≥ 2` Berndt's bound is the smaller one.
pub fn berndt_compare(r_max: usize) -> Result<BoundReport> {
    check_grid(r_max, &[])?;
    let cases = (1..=r_max)
        .map(|r| {
            let params = CaseParams {
                r: Some(r),
                ..Default::default()
            };
            BoundCase::new(params, t2_ib_bound(r), berndt_bound(r)).informational()
        })
        .collect();
    Ok(BoundReport::from_cases(BoundId::Berndt, cases))
}

fn iib_deviation(r: usize, alpha: f64) -> Result<f64> {
    let b = beta_coefficient(r, alpha)?.value.re;
    let main = sign(r) * alpha.ln().powi(r as i32) / ln_factorial(r).exp();
    Ok((b - main).abs())
}

/// `|β_r(α) − (−1)^r log^r α/r!| ≤ (e/3)(r/e)^r/r! + 1`; the printed
/// `+1/r!` form is reported in the `printed_bound`/`printed_margin` columns.
pub fn certify_t2_iib(r_max: usize, alpha_grid: &[f64]) -> Result<BoundReport> {
    check_grid(r_max, alpha_grid)?;
    let cases = collect(grid_pairs(r_max, alpha_grid), |(r, alpha)| {
        let measured = iib_deviation(r, alpha)?;
        let params = CaseParams {
            r: Some(r),
            alpha: Some(alpha),
            ..Default::default()
        };
        let printed = t2_iib_printed_bound(r);
        Ok(BoundCase::new(params, measured, t2_iib_bound(r))
            .column("printed_bound", printed)
            .column("printed_margin", printed - measured))
    })?;
    Ok(BoundReport::from_cases(BoundId::T2IIb, cases))
}

/// The same sweep asserting the printed `(e/3)(r/e)^r/r! + 1/r!` form.
/// It fails on most of the default grid: the pole at `s = 1` drives
/// `β_r(1)` to `−1`, while `1/r!` decays.
pub fn certify_t2_iib_printed(r_max: usize, alpha_grid: &[f64]) -> Result<BoundReport> {
    check_grid(r_max, alpha_grid)?;
    let cases = collect(grid_pairs(r_max, alpha_grid), |(r, alpha)| {
        let params = CaseParams {
            r: Some(r),
            alpha: Some(alpha),
            check: Some("printed_form"),
            ..Default::default()
        };
        Ok(BoundCase::new(
            params,
            iib_deviation(r, alpha)?,
            t2_iib_printed_bound(r),
        ))
    })?;
    Ok(BoundReport::from_cases(BoundId::T2IIb, cases))
}

/// `|γ_r(λ,α) − (−1)^r log^r α/(r!α)| ≤ 10(r/e)^r/r!·(1/λ + 1/(1−λ))`.
pub fn certify_t2_iiib(
    r_max: usize,
    lambda_grid: &[f64],
    alpha_grid: &[f64],
) -> Result<BoundReport> {
    check_grid(r_max, alpha_grid)?;
    for &l in lambda_grid {
        if !(l > 0.0 && l < 1.0) {
            return Err(domain("lambda", l, "0 < λ < 1"));
        }
    }
    let inputs: Vec<(usize, f64, f64)> = grid_pairs(r_max, alpha_grid)
        .into_iter()
        .flat_map(|(r, a)| lambda_grid.iter().map(move |&l| (r, l, a)))
        .collect();
    let cases = collect(inputs, |(r, lambda, alpha)| {
        let g = lerch_taylor_at_1(r, lambda, alpha)?.value;
        let main = sign(r) * alpha.ln().powi(r as i32) / (ln_factorial(r).exp() * alpha);
        let measured = (g - main).norm();
        let bound = t2_iiib_bound(r, lambda);
        let params = CaseParams {
            r: Some(r),
            alpha: Some(alpha),
            lambda: Some(lambda),
            ..Default::default()
        };
        Ok(BoundCase::new(params, measured, bound)
            .column("observed_constant", GUARD * measured / bound))
    })?;
    Ok(BoundReport::from_cases(BoundId::T2IIIb, cases))
}

fn character_params(chi: &DirichletCharacter, r: usize, check: &'static str) -> CaseParams {
    CaseParams {
        r: Some(r),
        q: Some(chi.modulus),
        label: Some(chi.label),
        check: Some(check),
        ..Default::default()
    }
}

fn primitive_set(q_set: &[u64]) -> Result<Vec<DirichletCharacter>> {
    let mut out = Vec::new();
    for &q in q_set {
        if q < 3 {
            return Err(domain("q", q, "q ≥ 3"));
        }
        let p = primitive_characters(q);
        if p.is_empty() {
            return Err(Error::NoPrimitiveCharacter(q));
        }
        out.extend(p);
    }
    Ok(out)
}

/// Truncation checks at `s = 1` (`X = qe^{r/2}`) and `s = 0`
/// (`X = qe^{r−1}`) for every primitive character, plus the magnitude bound
/// `|L^(r)(1,χ)| ≤ 10(log q + r/2)^{r+1}`. Returns the `s = 1` and `s = 0`
/// reports in that order.
pub fn certify_t3(q_set: &[u64], r_max: usize) -> Result<Vec<BoundReport>> {
    if !(1..=8).contains(&r_max) {
        return Err(domain("r_max", r_max, "1 ≤ r_max ≤ 8"));
    }
    let chars = primitive_set(q_set)?;
    let inputs: Vec<(usize, &DirichletCharacter)> = chars
        .iter()
        .flat_map(|chi| (1..=r_max).map(move |r| (r, chi)))
        .collect();
    let shape = |chi: &DirichletCharacter, r: usize| {
        let lq = (chi.modulus as f64).ln();
        (lq + r as f64 / 2.0).powi(r as i32 + 1)
    };
    let at_one: Vec<Vec<BoundCase>> = inputs
        .par_iter()
        .map(|&(r, chi)| {
            let x = chi.modulus as f64;
            let exact = l_deriv_at_1_exact(r, chi, x)?;
            let trunc = l_deriv_at_1_truncated(r, chi)?;
            let err = (trunc.value - exact.value).norm();
            let truncation = BoundCase::new(
                character_params(chi, r, "truncation"),
                err,
                trunc.error_bound,
            )
            .column("observed_constant", GUARD * err / trunc.error_bound);
            let size = exact.value.norm();
            let magnitude = BoundCase::new(
                character_params(chi, r, "magnitude"),
                size,
                GUARD * shape(chi, r),
            )
            .column("observed_constant", size / shape(chi, r));
            Ok(vec![truncation, magnitude])
        })
        .collect::<Result<_>>()?;
    let at_zero: Vec<BoundCase> = inputs
        .par_iter()
        .map(|&(r, chi)| {
            let exact = l_deriv_at_0(r, chi, chi.modulus as f64)?;
            let trunc = l_deriv_at_0_truncated(r, chi)?;
            let err = (trunc.value - exact.value).norm();
            Ok(BoundCase::new(
                character_params(chi, r, "truncation"),
                err,
                trunc.error_bound,
            )
            .column("observed_constant", GUARD * err / trunc.error_bound))
        })
        .collect::<Result<_>>()?;
    Ok(vec![
        BoundReport::from_cases(BoundId::T3Ib, at_one.into_iter().flatten().collect()),
        BoundReport::from_cases(BoundId::T3IIb, at_zero),
    ])
}

/// `log` of Ishikawa's `q^{r/log r − 1/2} exp(r log log r − r log log r/log r)`.
pub fn ishikawa_log_bound(q: u64, r: usize) -> f64 {
    let rf = r as f64;
    let lr = rf.ln();
    let llr = lr.ln();
    (rf / lr - 0.5) * (q as f64).ln() + rf * llr - rf * llr / lr
}

/// Informational: `|L^(r)(1,χ)|` against `10(log q + r/2)^{r+1}`
/// (`bound`) and Ishikawa's bound (column `ishikawa`), for `r` in
/// `r_min..=r_max` within `5..=20`.
pub fn ishikawa_compare(q: u64, r_min: usize, r_max: usize) -> Result<BoundReport> {
    if r_min < 5 || r_max > 20 || r_min > r_max {
        return Err(domain(
            "r_range",
            format!("{r_min}..={r_max}"),
            "within 5..=20",
        ));
    }
    let chars = primitive_set(&[q])?;
    let inputs: Vec<(usize, &DirichletCharacter)> = chars
        .iter()
        .flat_map(|chi| (r_min..=r_max).map(move |r| (r, chi)))
        .collect();
    let cases = inputs
        .par_iter()
        .map(|&(r, chi)| {
            let value = l_deriv_at_1_exact(r, chi, q as f64)?.value.norm();
            let lq = (q as f64).ln();
            let shape = GUARD * (lq + r as f64 / 2.0).powi(r as i32 + 1);
            Ok(
                BoundCase::new(character_params(chi, r, "ishikawa"), value, shape)
                    .informational()
                    .column("ishikawa", ishikawa_log_bound(q, r).exp()),
            )
        })
        .collect::<Result<_>>()?;
    Ok(BoundReport::from_cases(BoundId::IshikawaCompare, cases))
}

/// `max_{x≤q} |Σ_{a≤x} χ(a)| ≤ √q log q` for every non-principal character
/// with `q_min ≤ q ≤ q_max`.
pub fn polya_vinogradov(q_min: u64, q_max: u64) -> Result<BoundReport> {
    if q_min < 3 || q_min > q_max {
        return Err(domain(
            "q_range",
            format!("{q_min}..={q_max}"),
            "3 ≤ q_min ≤ q_max",
        ));
    }
    let chars: Vec<DirichletCharacter> = (q_min..=q_max)
        .flat_map(enumerate_characters)
        .filter(|c| !c.is_principal)
        .collect();
    let cases = chars
        .par_iter()
        .map(|chi| {
            let q = chi.modulus;
            let mut best: f64 = 0.0;
            for x in 1..=q {
                best = best.max(chi.partial_sum(x as f64)?.norm());
            }
            let bound = (q as f64).sqrt() * (q as f64).ln();
            Ok(BoundCase::new(
                character_params(chi, 0, "partial_sum"),
                best,
                bound,
            ))
        })
        .collect::<Result<_>>()?;
    Ok(BoundReport::from_cases(BoundId::PolyaVinogradov, cases))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_arithmetic() {
        assert!((t2_ib_bound(1) - 0.5).abs() < 1e-15);
        assert!((berndt_bound(1) - 4.0 / PI).abs() < 1e-15);
        assert!((t2_iib_bound(1) - 4.0 / 3.0).abs() < 1e-15);
        assert!((t2_iib_printed_bound(1) - 4.0 / 3.0).abs() < 1e-15);
        assert!(t2_ib_bound(20) > 0.0 && t2_ib_bound(20).is_finite());
    }

    #[test]
    fn informational_cases_do_not_fail() {
        let r = berndt_compare(6).unwrap();
        assert!(r.all_pass);
        assert!(r.cases[1].margin < 0.0);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(certify_t2_ib(21, &[1.0]).is_err());
        assert!(certify_t2_ib(3, &[1.5]).is_err());
        assert!(certify_t3(&[6], 2).is_err());
        assert!(ishikawa_compare(5, 4, 10).is_err());
    }
}
