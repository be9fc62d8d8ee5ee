use std::collections::BTreeSet;
use std::f64::consts::PI;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use zeta_lab::afe::{afe_hurwitz, afe_l, AfeConfig};
use zeta_lab::bounds::{self, BoundReport};
use zeta_lab::characters::{character, enumerate_characters, DirichletCharacter};
use zeta_lab::coefficients::CoefficientTable;
use zeta_lab::sawtooth::{oscillatory_tail, sawtooth_tail, Oscillatory};
use zeta_lab::zeta::{
    default_split, hurwitz_deriv, l_deriv, lerch_deriv, z_deriv, HurwitzArgs, LerchArgs,
};
use zeta_lab::{EvalResult, TailIntegralSpec};

use crate::output::{json, num, opt, Table};

pub struct Outcome {
    pub json: String,
    pub table: Table,
    pub summary: Vec<String>,
    pub passed: bool,
}

type Run = Result<Outcome, String>;

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let parse = |p: &str| {
        p.parse::<f64>()
            .map_err(|_| format!("`{p}` is not a number"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err("expected `re,im`".to_string()),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("--{flag} is required for --kind {kind}"))
}

fn lookup(q: u64, label: usize) -> Result<DirichletCharacter, String> {
    character(q, label).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Evaluation {
    value: Complex64,
    error_bound: f64,
    route: &'static str,
    split: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    cutoff: Option<f64>,
}

fn value_table(name: &str, v: &EvalResult) -> Table {
    let mut t = Table::new(["quantity", "re", "im", "error_bound"]);
    t.push(vec![
        name.to_string(),
        num(v.value.re),
        num(v.value.im),
        num(v.error_bound),
    ]);
    t
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalKind {
    Hurwitz,
    Z,
    L,
    Lerch,
}

#[derive(Args, Serialize)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    kind: EvalKind,
    /// `re,im` or `re`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    s: Complex64,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<u64>,
    /// Character label as listed by `characters`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
    #[arg(long, default_value_t = 0)]
    r: usize,
    /// Split point (x, or X for z and l); defaults to a t-dependent choice.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<f64>,
}

pub fn eval(args: &EvalArgs) -> Run {
    let s = args.s;
    let (name, split, v) = match args.kind {
        EvalKind::Hurwitz => {
            let alpha = need(args.alpha, "alpha", "hurwitz")?;
            let x = args.x.unwrap_or_else(|| default_split(s, alpha));
            let v = hurwitz_deriv(&HurwitzArgs::new(s, alpha, args.r).split(x));
            ("zeta^(r)(s,alpha)", x, v)
        }
        EvalKind::Z => {
            let a = need(args.a, "a", "z")?;
            let q = need(args.q, "q", "z")?;
            let x = args.x.unwrap_or_else(|| q as f64 * default_split(s, 1.0));
            ("Z^(r)(s,a,q)", x, z_deriv(s, a, q, args.r, x))
        }
        EvalKind::L => {
            let q = need(args.q, "q", "l")?;
            let chi = lookup(q, need(args.label, "label", "l")?)?;
            let x = args.x.unwrap_or_else(|| q as f64 * default_split(s, 1.0));
            ("L^(r)(s,chi)", x, l_deriv(s, &chi, args.r, x))
        }
        EvalKind::Lerch => {
            let lambda = need(args.lambda, "lambda", "lerch")?;
            let alpha = need(args.alpha, "alpha", "lerch")?;
            let x = args.x.unwrap_or_else(|| default_split(s, alpha));
            let v = lerch_deriv(&LerchArgs::new(lambda, alpha, s, args.r).split(x));
            ("phi^(r)(lambda,alpha,s)", x, v)
        }
    };
    let v = v.map_err(|e| e.to_string())?;
    let result = Evaluation {
        value: v.value,
        error_bound: v.error_bound,
        route: "euler_summation",
        split,
        cutoff: None,
    };
    Ok(Outcome {
        json: json("eval", args, &result),
        table: value_table(name, &v),
        summary: vec![format!("split {split}")],
        passed: true,
    })
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoeffKind {
    /// γ_r(α), Laurent coefficients of ζ(s,α) at s = 1.
    Gamma,
    /// β_r(α), Taylor coefficients of ζ(s,α) at s = 0.
    Beta,
    /// γ_r(a,q), progression limit constants.
    GammaAq,
    /// Taylor coefficients of L(s,χ) at s = 1.
    GammaChi,
    /// Taylor coefficients of φ(λ,α,s) at s = 1.
    Lerch,
    /// Taylor coefficients of L(s,χ) at s = 0.
    LZero,
}

#[derive(Args, Serialize)]
pub struct CoeffArgs {
    #[arg(long, value_enum)]
    kind: CoeffKind,
    #[arg(long, default_value_t = 5)]
    r_max: usize,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
}

pub fn coeff(args: &CoeffArgs) -> Run {
    let r_max = args.r_max;
    let table = match args.kind {
        CoeffKind::Gamma => CoefficientTable::stieltjes(need(args.alpha, "alpha", "gamma")?, r_max),
        CoeffKind::Beta => CoefficientTable::beta(need(args.alpha, "alpha", "beta")?, r_max),
        CoeffKind::GammaAq => {
            let a = need(args.a, "a", "gamma-aq")?;
            CoefficientTable::gamma_aq(a, need(args.q, "q", "gamma-aq")?, r_max)
        }
        CoeffKind::GammaChi => {
            let chi = lookup(
                need(args.q, "q", "gamma-chi")?,
                need(args.label, "label", "gamma-chi")?,
            )?;
            CoefficientTable::gamma_chi(&chi, r_max)
        }
        CoeffKind::Lerch => {
            let lambda = need(args.lambda, "lambda", "lerch")?;
            CoefficientTable::lerch_at_one(lambda, need(args.alpha, "alpha", "lerch")?, r_max)
        }
        CoeffKind::LZero => {
            let chi = lookup(
                need(args.q, "q", "l-zero")?,
                need(args.label, "label", "l-zero")?,
            )?;
            CoefficientTable::l_deriv_at_zero(&chi, r_max)
        }
    }
    .map_err(|e| e.to_string())?;
    let mut t = Table::new(["r", "re", "im", "error_estimate", "route"]);
    for e in &table.entries {
        let route = serde_json::to_value(e.route).expect("unit enum");
        t.push(vec![
            e.r.to_string(),
            num(e.value.re),
            num(e.value.im),
            num(e.error_estimate),
            route.as_str().unwrap_or_default().to_string(),
        ]);
    }
    Ok(Outcome {
        json: json("coeff", args, &table),
        table: t,
        summary: Vec::new(),
        passed: true,
    })
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// |γ_r(α) − (−1)^r log^r α/(r!α)| ≤ e(r/2e)^r/r!.
    T2Ib,
    /// |β_r(α) − (−1)^r log^r α/r!| ≤ (e/3)(r/e)^r/r! + 1.
    T2Iib,
    /// Lerch coefficient deviation against 10(r/e)^r/r!·(1/λ + 1/(1−λ)).
    T2Iiib,
    /// Truncated L^(r)(1,χ) and L^(r)(0,χ) for primitive χ.
    T3,
    /// The I(b) bound against Berndt's (informational).
    Berndt,
    /// |L^(r)(1,χ)| against Ishikawa's bound (informational).
    Ishikawa,
    /// max_x |Σ_{a≤x} χ(a)| ≤ √q log q.
    Polya,
}

#[derive(Args, Serialize)]
pub struct CertifyArgs {
    #[arg(long, value_enum)]
    bound: BoundKind,
    /// Default: 20 (8 for t3, 10 for t2-iiib).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    r_max: Option<usize>,
    /// Lower end of the r range for ishikawa (default 5).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    r_min: Option<usize>,
    /// Comma-separated moduli: the set for t3, a single q for ishikawa.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    q: Vec<u64>,
    /// Modulus range for polya (default 3..=50).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    q_min: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    q_max: Option<u64>,
    /// Comma-separated α grid (default {0.1,…,1.0} ∪ {1/3, 1/7}; {0.25, 1} for t2-iiib).
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    alpha: Vec<f64>,
    /// t2-iib: assert the printed `+1/r!` form instead of `+1` (fails, exit 2).
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    printed: bool,
    /// Comma-separated λ grid for t2-iiib (default 0.1,0.5,0.9).
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    lambda: Vec<f64>,
}

#[derive(Serialize)]
struct Certification<'a> {
    all_pass: bool,
    reports: &'a [BoundReport],
}

fn or_default<T: Clone>(given: &[T], default: Vec<T>) -> Vec<T> {
    if given.is_empty() {
        default
    } else {
        given.to_vec()
    }
}

pub fn certify(args: &CertifyArgs) -> Run {
    let alphas = or_default(&args.alpha, bounds::default_alpha_grid());
    let reports = match args.bound {
        BoundKind::T2Ib => vec![bounds::certify_t2_ib(args.r_max.unwrap_or(20), &alphas)],
        BoundKind::T2Iib if args.printed => vec![bounds::certify_t2_iib_printed(
            args.r_max.unwrap_or(20),
            &alphas,
        )],
        BoundKind::T2Iib => vec![bounds::certify_t2_iib(args.r_max.unwrap_or(20), &alphas)],
        BoundKind::T2Iiib => {
            let lambdas = or_default(&args.lambda, bounds::DEFAULT_LAMBDA_GRID.to_vec());
            let alphas = or_default(&args.alpha, vec![0.25, 1.0]);
            vec![bounds::certify_t2_iiib(
                args.r_max.unwrap_or(10),
                &lambdas,
                &alphas,
            )]
        }
        BoundKind::T3 => {
            let qs = or_default(&args.q, bounds::DEFAULT_Q_SET.to_vec());
            match bounds::certify_t3(&qs, args.r_max.unwrap_or(8)) {
                Ok(reps) => reps.into_iter().map(Ok).collect(),
                Err(e) => vec![Err(e)],
            }
        }
        BoundKind::Berndt => vec![bounds::berndt_compare(args.r_max.unwrap_or(20))],
        BoundKind::Ishikawa => {
            let q = match args.q.as_slice() {
                [] => 101,
                [q] => *q,
                _ => return Err("--bound ishikawa takes a single --q".to_string()),
            };
            vec![bounds::ishikawa_compare(
                q,
                args.r_min.unwrap_or(5),
                args.r_max.unwrap_or(20),
            )]
        }
        BoundKind::Polya => vec![bounds::polya_vinogradov(
            args.q_min.unwrap_or(3),
            args.q_max.unwrap_or(50),
        )],
    };
    let reports: Vec<BoundReport> = reports
        .into_iter()
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let all_pass = reports.iter().all(|r| r.all_pass);

    let extra: BTreeSet<&str> = reports
        .iter()
        .flat_map(|r| r.cases.iter().flat_map(|c| c.columns.keys().copied()))
        .collect();
    let mut header = vec![
        "bound_id", "r", "alpha", "lambda", "q", "label", "check", "measured", "bound", "margin",
        "asserted",
    ];
    header.extend(extra.iter().copied());
    let mut t = Table::new(header);
    let mut summary = Vec::new();
    for rep in &reports {
        for c in &rep.cases {
            let p = &c.params;
            let mut row = vec![
                rep.bound_id.as_str().to_string(),
                opt(p.r),
                opt(p.alpha.map(num)),
                opt(p.lambda.map(num)),
                opt(p.q),
                opt(p.label),
                opt(p.check),
                num(c.measured),
                num(c.bound),
                num(c.margin),
                c.asserted.to_string(),
            ];
            row.extend(
                extra
                    .iter()
                    .map(|k| opt(c.columns.get(k).copied().map(num))),
            );
            t.push(row);
        }
        summary.push(format!(
            "{}: {} cases, all_pass {}, worst margin {:.6e}",
            rep.bound_id.as_str(),
            rep.cases.len(),
            rep.all_pass,
            rep.worst_margin
        ));
    }
    let result = Certification {
        all_pass,
        reports: &reports,
    };
    Ok(Outcome {
        json: json("certify", args, &result),
        table: t,
        summary,
        passed: all_pass,
    })
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AfeKind {
    Hurwitz,
    L,
}

#[derive(Args, Serialize)]
pub struct AfeArgs {
    #[arg(long, value_enum)]
    kind: AfeKind,
    /// `re,im` with 0 ≤ re < 1.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    s: Complex64,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<usize>,
    /// Derivative order, at most 2.
    #[arg(long, default_value_t = 0)]
    r: usize,
    /// Split x (X for l); default √(|t|/2π), times q for l.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<f64>,
}

pub fn afe(args: &AfeArgs) -> Run {
    let s = args.s;
    let balanced = (s.im.abs() / (2.0 * PI)).sqrt().max(0.5);
    let (name, modulus, split, v) = match args.kind {
        AfeKind::Hurwitz => {
            let alpha = need(args.alpha, "alpha", "hurwitz")?;
            let x = args.x.unwrap_or(balanced);
            ("zeta^(r)(s,alpha)", 1, x, afe_hurwitz(s, alpha, args.r, x))
        }
        AfeKind::L => {
            let q = need(args.q, "q", "l")?;
            let chi = lookup(q, need(args.label, "label", "l")?)?;
            let x = args.x.unwrap_or(q as f64 * balanced);
            ("L^(r)(s,chi)", q, x, afe_l(s, &chi, args.r, x))
        }
    };
    let v = v.map_err(|e| e.to_string())?;
    let cfg = AfeConfig::new(s, split, args.r, modulus).map_err(|e| e.to_string())?;
    let result = Evaluation {
        value: v.value,
        error_bound: v.error_bound,
        route: "afe",
        split,
        cutoff: Some(cfg.cutoff),
    };
    Ok(Outcome {
        json: json("afe", args, &result),
        table: value_table(name, &v),
        summary: vec![format!("split {split}, cutoff y = {}", cfg.cutoff)],
        passed: true,
    })
}

#[derive(Args, Serialize)]
pub struct CharactersArgs {
    #[arg(long)]
    q: u64,
    /// Only primitive characters.
    #[arg(long)]
    primitive: bool,
}

pub fn characters(args: &CharactersArgs) -> Run {
    if args.q == 0 {
        return Err("--q must be a positive integer".to_string());
    }
    let chars: Vec<DirichletCharacter> = enumerate_characters(args.q)
        .into_iter()
        .filter(|c| !args.primitive || c.is_primitive())
        .collect();
    let mut t = Table::new([
        "label",
        "conductor",
        "parity",
        "primitive",
        "principal",
        "n",
        "re",
        "im",
    ]);
    let mut summary = Vec::new();
    for c in &chars {
        for (n, v) in c.values.iter().enumerate() {
            t.push(vec![
                c.label.to_string(),
                c.conductor.to_string(),
                c.parity.to_string(),
                c.is_primitive().to_string(),
                c.is_principal.to_string(),
                n.to_string(),
                num(v.re),
                num(v.im),
            ]);
        }
        let values: Vec<String> = c
            .values
            .iter()
            .map(|v| format!("({:.6},{:.6})", v.re, v.im))
            .collect();
        summary.push(format!(
            "chi_{} mod {}: conductor {}, parity {}, values {}",
            c.label,
            c.modulus,
            c.conductor,
            c.parity,
            values.join(" ")
        ));
    }
    Ok(Outcome {
        json: json("characters", args, &chars),
        table: t,
        summary,
        passed: true,
    })
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailVariant {
    /// ∫ ψ(u−α) e^{2πiλ(u−α)} u^a log^r u du.
    Weighted,
    /// ∫ e^{2πiλ(u−α)} u^a log^r u du.
    Pure,
}

#[derive(Args, Serialize)]
pub struct TailArgs {
    /// Lower limit.
    #[arg(long)]
    x: f64,
    /// Shift of the sawtooth, 0 < α ≤ 1.
    #[arg(long)]
    alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    re_a: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    im_a: f64,
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    #[arg(long, value_enum, default_value_t = TailVariant::Weighted)]
    variant: TailVariant,
}

pub fn tail(args: &TailArgs) -> Run {
    let spec = TailIntegralSpec::new(
        args.x,
        args.alpha,
        Complex64::new(args.re_a, args.im_a),
        args.r,
    )
    .with_oscillation(args.lambda);
    let v = match (args.variant, args.lambda == 0.0) {
        (TailVariant::Weighted, true) => sawtooth_tail(&spec),
        (TailVariant::Weighted, false) => oscillatory_tail(&spec, Oscillatory::Weighted),
        (TailVariant::Pure, _) => oscillatory_tail(&spec, Oscillatory::Pure),
    }
    .map_err(|e| e.to_string())?;
    Ok(Outcome {
        json: json("tail", args, &v),
        table: value_table("tail", &v),
        summary: Vec::new(),
        passed: true,
    })
}
