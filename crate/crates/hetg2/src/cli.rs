//! Command-line front end: verification suite, regime points, sweeps, and
//! evaluation of named quantities.

use crate::anomaly::trace_defect;
use crate::checks::{ideal_minimality_audit, run_checks};
use crate::connections::{
    build_connection, curvature, flux_form, lambda0_poly, residual_coefficients, ConnectionSpec,
};
use crate::exterior::Form;
use crate::g2::{build_model, flux_fields, torsion_forms};
use crate::regimes::{
    case_point, case_point_f64, order_fit, sweep, table_to_csv, table_to_json, CaseId, CaseParams,
    NumericMode, RegimeError,
};
use crate::scalars::{ParamPoly, Rational};
use crate::verifier::MultiplierSupport;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_ENGINE_ERROR: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INADMISSIBLE: i32 = 65;

#[derive(Parser, Debug)]
#[command(
    name = "hetg2",
    about = "Exact symbolic verifier and regime explorer for an approximate heterotic G2 system",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// JSON config file mirroring the flags; explicit flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the named-check verification suite.
    Verify(VerifyArgs),
    /// Compute one admissible regime point.
    Regime(RegimeArgs),
    /// Sweep alpha' and fit the residual scaling.
    Sweep(SweepArgs),
    /// Render a named quantity.
    Eval(EvalArgs),
}

#[derive(Args, Debug, Default)]
pub struct VerifyArgs {
    /// Comma-separated check names, e.g. C01,C26.
    #[arg(long)]
    pub only: Option<String>,
    /// text | json
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
    /// restricted | full
    #[arg(long)]
    pub multiplier_support: Option<String>,
    /// Include per-check wall-clock times (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
    /// Also run the ideal minimality audit.
    #[arg(long)]
    pub audit_ideal: bool,
}

#[derive(Args, Debug, Default)]
pub struct RegimeArgs {
    /// 1 | 2 | 3 | custom
    #[arg(long)]
    pub case: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// text | json
    #[arg(long)]
    pub format: Option<String>,
    /// rational | double
    #[arg(long)]
    pub numeric_mode: Option<String>,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct SweepArgs {
    #[arg(long)]
    pub case: Option<String>,
    /// Comma-separated values or a range A:B:logN (N log-spaced points from A down to B).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// csv | json
    #[arg(long)]
    pub format: Option<String>,
    /// rational | double
    #[arg(long)]
    pub numeric_mode: Option<String>,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct EvalArgs {
    /// phi | psi | omega | re_omega | im_omega | vol | tau0..tau3 | lambda |
    /// flux | dflux | theta | torsion | curvature | residual | defect | lambda0
    pub quantity: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

/// Exact rational from "p/q", integer, decimal, or scientific notation.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if frac_part.contains(['+', '-']) {
        return None;
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() || int_part == "-" || int_part == "+" {
            format!("{}0", int_part)
        } else {
            int_part.to_string()
        },
        frac_part
    );
    let n: BigInt = digits.parse().ok()?;
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut r = Rational::from(n);
    if shift >= 0 {
        for _ in 0..shift {
            r *= Rational::from(ten.clone());
        }
    } else {
        for _ in 0..-shift {
            r /= Rational::from(ten.clone());
        }
    }
    Some(r)
}

/// Exact integer nth root when one exists.
fn exact_nth_root(x: &Rational, n: u32) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let rn = x.numer().nth_root(n);
    let rd = x.denom().nth_root(n);
    let pow = |b: &BigInt| -> BigInt {
        let mut acc = BigInt::one();
        for _ in 0..n {
            acc *= b;
        }
        acc
    };
    if &pow(&rn) == x.numer() && &pow(&rd) == x.denom() {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

/// "A:B:logN" -> N log-spaced values from A down to B inclusive;
/// comma-separated values otherwise.
pub fn parse_alpha_spec(s: &str) -> Result<Vec<Rational>, String> {
    if let Some((head, tail)) = s.rsplit_once(':') {
        if let Some(count) = tail.strip_prefix("log") {
            let n: usize = count
                .parse()
                .map_err(|_| format!("bad point count in range spec: {tail}"))?;
            let (a_str, b_str) = head
                .split_once(':')
                .ok_or_else(|| format!("range spec must be A:B:logN, got {s}"))?;
            let a = parse_rational(a_str).ok_or_else(|| format!("bad rational {a_str}"))?;
            let b = parse_rational(b_str).ok_or_else(|| format!("bad rational {b_str}"))?;
            if n == 0 {
                return Ok(Vec::new());
            }
            if n == 1 {
                return Ok(vec![a]);
            }
            if !a.is_positive() || !b.is_positive() || b >= a {
                return Err("range spec requires A > B > 0".into());
            }
            let ratio = &b / &a;
            let step = exact_nth_root(&ratio, (n - 1) as u32).ok_or_else(|| {
                format!(
                    "log step ({ratio})^(1/{}) is not an exact rational; \
                     list the points explicitly or adjust the range",
                    n - 1
                )
            })?;
            let mut out = Vec::with_capacity(n);
            let mut current = a;
            for _ in 0..n {
                out.push(current.clone());
                current *= &step;
            }
            return Ok(out);
        }
    }
    s.split(',')
        .map(|p| parse_rational(p).ok_or_else(|| format!("bad rational {p}")))
        .collect()
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn usage(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn inadmissible(err: &RegimeError) -> i32 {
    eprintln!("error: {err}");
    EXIT_INADMISSIBLE
}

/// Overlay for flag defaults loaded from --config.
#[derive(Debug, Default, serde::Deserialize)]
pub struct ConfigFile {
    pub only: Option<String>,
    pub format: Option<String>,
    pub multiplier_support: Option<String>,
    pub timings: Option<bool>,
    pub audit_ideal: Option<bool>,
    pub case: Option<String>,
    pub alpha: Option<String>,
    pub delta: Option<String>,
    pub m: Option<String>,
    pub k: Option<String>,
    pub eps: Option<String>,
    pub numeric_mode: Option<String>,
    pub output: Option<String>,
    pub quantity: Option<String>,
}

fn load_config(path: &Option<PathBuf>) -> Result<ConfigFile, String> {
    match path {
        None => Ok(ConfigFile::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", p.display()))
        }
    }
}

fn merged<'a>(flag: &'a Option<String>, cfg: &'a Option<String>) -> Option<&'a str> {
    flag.as_deref().or(cfg.as_deref())
}

pub fn run(cli: Cli) -> i32 {
    let cfg = match load_config(&cli.config) {
        Ok(c) => c,
        Err(e) => return usage(&e),
    };
    match cli.command {
        Command::Verify(args) => cmd_verify(args, &cfg),
        Command::Regime(args) => cmd_regime(args, &cfg),
        Command::Sweep(args) => cmd_sweep(args, &cfg),
        Command::Eval(args) => cmd_eval(args, &cfg),
    }
}

fn parse_support(s: Option<&str>) -> Result<MultiplierSupport, String> {
    match s {
        None | Some("restricted") => Ok(MultiplierSupport::Restricted),
        Some("full") => Ok(MultiplierSupport::Full),
        Some(other) => Err(format!("unknown multiplier support: {other}")),
    }
}

fn parse_mode(s: Option<&str>) -> Result<NumericMode, String> {
    match s {
        None | Some("rational") => Ok(NumericMode::Rational),
        Some("double") => Ok(NumericMode::Double),
        Some(other) => Err(format!("unknown numeric mode: {other}")),
    }
}

fn cmd_verify(args: VerifyArgs, cfg: &ConfigFile) -> i32 {
    let support = match parse_support(merged(&args.multiplier_support, &cfg.multiplier_support)) {
        Ok(s) => s,
        Err(e) => return usage(&e),
    };
    let only = merged(&args.only, &cfg.only).map(|s| {
        s.split(',')
            .map(|p| p.trim().to_string())
            .filter(|p| !p.is_empty())
            .collect::<Vec<_>>()
    });
    let report = match run_checks(only.as_deref(), support) {
        Ok(r) => r,
        Err(e) => return usage(&e.to_string()),
    };
    let timings = args.timings || cfg.timings.unwrap_or(false);
    let format = merged(&args.format, &cfg.format).unwrap_or("text");
    let mut rendered = match format {
        "json" => report.to_json_string(timings),
        "text" => report.to_text(timings),
        other => return usage(&format!("unknown format: {other}")),
    };
    if args.audit_ideal || cfg.audit_ideal.unwrap_or(false) {
        let audit = ideal_minimality_audit(support);
        if format == "text" {
            rendered.push_str("ideal minimality audit:\n");
            for (skip, broke) in &audit {
                rendered.push_str(&format!(
                    "  without generator {}: relations {}\n",
                    skip,
                    if *broke { "break (needed)" } else { "still reduce (redundant)" }
                ));
            }
        }
        if audit.iter().any(|(_, broke)| !broke) {
            eprintln!("error: ideal minimality audit found a redundant generator");
            return EXIT_ENGINE_ERROR;
        }
    }
    let out_path = args
        .output
        .or_else(|| cfg.output.as_ref().map(PathBuf::from));
    if let Err(e) = write_output(&out_path, &rendered) {
        return usage(&e);
    }
    if report.has_errors() {
        EXIT_ENGINE_ERROR
    } else if !report.all_pass() {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    }
}

fn case_params(
    case: &str,
    delta: Option<&str>,
    m: Option<&str>,
    k: Option<&str>,
) -> Result<CaseParams, String> {
    let parse = |name: &str, v: Option<&str>| -> Result<Rational, String> {
        let v = v.ok_or_else(|| format!("case {case} requires --{name}"))?;
        parse_rational(v).ok_or_else(|| format!("bad rational for --{name}: {v}"))
    };
    match CaseId::parse(case) {
        Some(CaseId::Case1) => Ok(CaseParams::Case1 {
            delta: parse("delta", delta)?,
        }),
        Some(CaseId::Case2) => Ok(CaseParams::Case2 { m: parse("m", m)? }),
        Some(CaseId::Case3) => Ok(CaseParams::Case3 { m: parse("m", m)? }),
        Some(CaseId::Custom) => Ok(CaseParams::Custom {
            delta: parse("delta", delta)?,
            k: parse("k", k)?,
            m: parse("m", m)?,
        }),
        None => Err(format!("unknown case: {case}")),
    }
}

fn regime_point_text(rows: &[crate::regimes::RegimePointJson]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!(
            "alpha_prime = {} ({})\neps = {} (eps^2 = {})\nk = {} ({})\ndelta = {} | m = {}\n",
            r.alpha_prime,
            r.exact.alpha_prime,
            r.eps,
            r.exact.eps_sq,
            r.k,
            r.exact.k,
            r.exact.delta,
            r.exact.m,
        ));
        out.push_str(&format!(
            "lambda0 = {} ({})\nlambda1 = {} ({})\nlambda2 = {} ({})\nlambda3 = {} ({})\n",
            r.lambda0,
            r.exact.lambda0,
            r.lambda1,
            r.exact.lambda1,
            r.lambda2,
            r.exact.lambda2,
            r.lambda3,
            r.exact.lambda3,
        ));
        out.push_str(&format!(
            "alpha' * lambda0 = 8 (exact)\nsmall-fibre regime: eps < 1: {} | k > 1: {}\n",
            r.eps < 1.0,
            r.k > 1.0
        ));
    }
    out
}

fn cmd_regime(args: RegimeArgs, cfg: &ConfigFile) -> i32 {
    let case = match merged(&args.case, &cfg.case) {
        Some(c) => c.to_string(),
        None => return usage("regime requires --case"),
    };
    let alpha_str = match merged(&args.alpha, &cfg.alpha) {
        Some(a) => a.to_string(),
        None => return usage("regime requires --alpha"),
    };
    let params = match case_params(
        &case,
        merged(&args.delta, &cfg.delta),
        merged(&args.m, &cfg.m),
        merged(&args.k, &cfg.k),
    ) {
        Ok(p) => p,
        Err(e) => return usage(&e),
    };
    let mode = match parse_mode(merged(&args.numeric_mode, &cfg.numeric_mode)) {
        Ok(m) => m,
        Err(e) => return usage(&e),
    };
    let format = merged(&args.format, &cfg.format).unwrap_or("text");
    let rendered = match mode {
        NumericMode::Rational => {
            let alpha = match parse_rational(&alpha_str) {
                Some(a) => a,
                None => return usage(&format!("bad rational for --alpha: {alpha_str}")),
            };
            let point = match case_point(&params, &alpha) {
                Ok(p) => p,
                Err(e) => return inadmissible(&e),
            };
            let row = point.to_json_row();
            match format {
                "json" => {
                    let mut s =
                        serde_json::to_string_pretty(&row).expect("serializable");
                    s.push('\n');
                    s
                }
                "text" => regime_point_text(std::slice::from_ref(&row)),
                other => return usage(&format!("unknown format: {other}")),
            }
        }
        NumericMode::Double => {
            let alpha: f64 = match alpha_str.parse() {
                Ok(a) => a,
                Err(_) => return usage(&format!("bad double for --alpha: {alpha_str}")),
            };
            let point = match case_point_f64(&params, alpha) {
                Ok(p) => p,
                Err(e) => return inadmissible(&e),
            };
            match format {
                "json" => {
                    let mut s = serde_json::to_string_pretty(&point).expect("serializable");
                    s.push('\n');
                    s
                }
                "text" => format!(
                    "alpha_prime = {}\neps = {}\nk = {}\ndelta = {} | m = {}\nlambda0 = {}\nlambda1 = {}\nlambda2 = {}\nlambda3 = {}\nalpha' * lambda0 - 8 = {:e}\n",
                    point.alpha_prime,
                    point.eps,
                    point.k,
                    point.delta,
                    point.m,
                    point.lambdas[0],
                    point.lambdas[1],
                    point.lambdas[2],
                    point.lambdas[3],
                    point.alpha_prime * point.lambdas[0] - 8.0
                ),
                other => return usage(&format!("unknown format: {other}")),
            }
        }
    };
    let out_path = args
        .output
        .or_else(|| cfg.output.as_ref().map(PathBuf::from));
    if let Err(e) = write_output(&out_path, &rendered) {
        return usage(&e);
    }
    EXIT_OK
}

fn cmd_sweep(args: SweepArgs, cfg: &ConfigFile) -> i32 {
    let case = match merged(&args.case, &cfg.case) {
        Some(c) => c.to_string(),
        None => return usage("sweep requires --case"),
    };
    let alpha_str = match merged(&args.alpha, &cfg.alpha) {
        Some(a) => a.to_string(),
        None => return usage("sweep requires --alpha"),
    };
    let params = match case_params(
        &case,
        merged(&args.delta, &cfg.delta),
        merged(&args.m, &cfg.m),
        merged(&args.k, &cfg.k),
    ) {
        Ok(p) => p,
        Err(e) => return usage(&e),
    };
    let mode = match parse_mode(merged(&args.numeric_mode, &cfg.numeric_mode)) {
        Ok(m) => m,
        Err(e) => return usage(&e),
    };
    let alphas = match parse_alpha_spec(&alpha_str) {
        Ok(a) => a,
        Err(e) => return usage(&e),
    };
    let format = merged(&args.format, &cfg.format).unwrap_or("csv");
    let rendered = match mode {
        NumericMode::Rational => {
            let table = match sweep(&params, &alphas) {
                Ok(t) => t,
                Err(e) => return inadmissible(&e),
            };
            let fits = order_fit(&table).ok();
            match format {
                "csv" => table_to_csv(&table, fits.as_deref()),
                "json" => {
                    let mut s = serde_json::to_string_pretty(&table_to_json(&table, fits))
                        .expect("serializable");
                    s.push('\n');
                    s
                }
                other => return usage(&format!("unknown format: {other}")),
            }
        }
        NumericMode::Double => {
            let mut rows = Vec::new();
            for a in &alphas {
                let af = a.to_f64().unwrap_or(f64::NAN);
                match case_point_f64(&params, af) {
                    Ok(p) => rows.push(p),
                    Err(e) => return inadmissible(&e),
                }
            }
            match format {
                "csv" => {
                    let mut out = String::from(crate::regimes::CSV_HEADER);
                    out.push('\n');
                    for p in &rows {
                        out.push_str(&format!(
                            "{},{},{},{},{},{},{},{},{}\n",
                            p.alpha_prime,
                            p.eps,
                            p.k,
                            p.delta,
                            p.m,
                            p.lambdas[0],
                            p.lambdas[1],
                            p.lambdas[2],
                            p.lambdas[3]
                        ));
                    }
                    out.push_str("# order_fit: n/a (double mode)\n");
                    out
                }
                "json" => {
                    let mut s = serde_json::to_string_pretty(&rows).expect("serializable");
                    s.push('\n');
                    s
                }
                other => return usage(&format!("unknown format: {other}")),
            }
        }
    };
    let out_path = args
        .output
        .or_else(|| cfg.output.as_ref().map(PathBuf::from));
    if let Err(e) = write_output(&out_path, &rendered) {
        return usage(&e);
    }
    EXIT_OK
}

/// Substitutes numeric parameters into a form's coefficients for display.
fn specialize(form: &Form, point: &[Option<Rational>; 4]) -> Form {
    let mut out = Form::zero();
    for (m, poly) in form.terms() {
        out = out.add(&Form::monomial(*m, poly.subst(point)));
    }
    out
}

fn cmd_eval(args: EvalArgs, cfg: &ConfigFile) -> i32 {
    let quantity = match args
        .quantity
        .as_deref()
        .or(cfg.quantity.as_deref())
    {
        Some(q) => q.to_string(),
        None => return usage("eval requires a quantity name"),
    };
    let parse_opt = |name: &str, flag: &Option<String>, c: &Option<String>| -> Result<Option<Rational>, String> {
        match merged(flag, c) {
            None => Ok(None),
            Some(v) => parse_rational(v)
                .map(Some)
                .ok_or_else(|| format!("bad rational for --{name}: {v}")),
        }
    };
    let delta = match parse_opt("delta", &args.delta, &cfg.delta) {
        Ok(v) => v,
        Err(e) => return usage(&e),
    };
    let k = match parse_opt("k", &args.k, &cfg.k) {
        Ok(v) => v,
        Err(e) => return usage(&e),
    };
    let m = match parse_opt("m", &args.m, &cfg.m) {
        Ok(v) => v,
        Err(e) => return usage(&e),
    };
    let eps = match parse_opt("eps", &args.eps, &cfg.eps) {
        Ok(v) => v,
        Err(e) => return usage(&e),
    };
    let point = [eps.clone(), k.clone(), delta.clone(), m.clone()];
    let spec = ConnectionSpec {
        delta: delta.map(ParamPoly::constant).unwrap_or_else(ParamPoly::delta),
        k: k.map(ParamPoly::constant).unwrap_or_else(ParamPoly::k),
        m: m.map(ParamPoly::constant).unwrap_or_else(ParamPoly::m),
        label: "eval".into(),
    };

    let model = build_model().expect("model");
    let show_form = |f: &Form| specialize(f, &point).render() + "\n";
    let show_poly = |p: &ParamPoly| format!("{}\n", p.subst(&point));

    let rendered = match quantity.as_str() {
        "phi" => show_form(&model.phi),
        "psi" => show_form(&model.psi),
        "omega" => show_form(&model.omega),
        "re_omega" => show_form(&model.re_omega),
        "im_omega" => show_form(&model.im_omega),
        "vol" => show_form(&model.vol),
        "tau0" | "tau1" | "tau2" | "tau3" | "lambda" => {
            let torsion = match torsion_forms(&model) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_ENGINE_ERROR;
                }
            };
            match quantity.as_str() {
                "tau0" => show_poly(&torsion.tau0),
                "tau1" => show_form(&torsion.tau1),
                "tau2" => show_form(&torsion.tau2),
                "tau3" => show_form(&torsion.tau3),
                _ => {
                    let geo = match flux_fields(&model, &torsion) {
                        Ok(g) => g,
                        Err(e) => {
                            eprintln!("error: {e}");
                            return EXIT_ENGINE_ERROR;
                        }
                    };
                    show_poly(&geo.lambda)
                }
            }
        }
        "flux" => show_form(&flux_form()),
        "dflux" => show_form(&flux_form().d()),
        "theta" | "torsion" | "curvature" | "residual" | "defect" | "lambda0" => {
            match quantity.as_str() {
                "lambda0" => show_poly(&lambda0_poly(&spec)),
                "residual" => {
                    let c = residual_coefficients(&spec);
                    format!(
                        "lambda1 = {}\nlambda2 = {}\nlambda3 = {}\n",
                        c.lambda1.subst(&point),
                        c.lambda2.subst(&point),
                        c.lambda3.subst(&point)
                    )
                }
                "defect" => {
                    let ideal = crate::verifier::build_ideal();
                    match trace_defect(&spec, &ideal, MultiplierSupport::Restricted) {
                        Ok(r) => format!(
                            "defect (mod ideal) = {}\nmatches recorded closed form: {}\nlambda0 (recorded) = {}\nlambda0 (observed) = {}\n",
                            specialize(&r.defect, &point).render(),
                            r.matches_asserted,
                            r.lambda0.subst(&point),
                            r.lambda0_observed.subst(&point),
                        ),
                        Err(e) => {
                            eprintln!("error: {e}");
                            return EXIT_ENGINE_ERROR;
                        }
                    }
                }
                _ => {
                    let conn = match build_connection(&spec) {
                        Ok(c) => c,
                        Err(e) => {
                            eprintln!("error: {e}");
                            return EXIT_ENGINE_ERROR;
                        }
                    };
                    match quantity.as_str() {
                        "theta" => conn.matrix.map(|f| specialize(f, &point)).render(),
                        "torsion" => conn.torsion.map(|f| specialize(f, &point)).render(),
                        _ => {
                            let curv = match curvature(&conn) {
                                Ok(c) => c,
                                Err(e) => {
                                    eprintln!("error: {e}");
                                    return EXIT_ENGINE_ERROR;
                                }
                            };
                            curv.matrix.map(|f| specialize(f, &point)).render()
                        }
                    }
                }
            }
        }
        other => return usage(&format!("unknown quantity: {other}")),
    };
    let out_path = args
        .output
        .or_else(|| cfg.output.as_ref().map(PathBuf::from));
    if let Err(e) = write_output(&out_path, &rendered) {
        return usage(&e);
    }
    EXIT_OK
}
