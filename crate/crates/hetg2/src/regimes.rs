//! Numeric parameter regimes of the anomaly-free condition: the three case
//! Ansaetze, alpha'-sweeps, and the log-log order fit of the residual
//! coefficients.
//!
//! Exact-rational mode is the default; every generated point satisfies
//! alpha' * lambda0 = 8 exactly, with lambda0 the recorded normalizer
//! polynomial (see the anomaly module for the computed alternative). The
//! residual magnitudes lambda1..lambda3 realize the size of R ^ psi through
//! its coefficient polynomials; the coframe is orthonormal, so coefficient
//! magnitude is norm-equivalent with parameter-free constants.

use crate::connections::{lambda0_poly, residual_coefficients, ConnectionSpec};
use crate::scalars::{int, ParamPoly, Rational};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegimeError {
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("order fit needs at least 3 rows, got {0}")]
    NotEnoughPoints(usize),
    #[error("closure violated: {0}")]
    Closure(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseId {
    Case1,
    Case2,
    Case3,
    Custom,
}

impl CaseId {
    pub fn parse(s: &str) -> Option<CaseId> {
        match s {
            "1" | "case1" => Some(CaseId::Case1),
            "2" | "case2" => Some(CaseId::Case2),
            "3" | "case3" => Some(CaseId::Case3),
            "custom" => Some(CaseId::Custom),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    #[default]
    Rational,
    Double,
}

/// k is rational for Cases 2, 3 and custom points; Case 1 prescribes k^2, so
/// k itself may be the square root of a rational.
#[derive(Debug, Clone, PartialEq)]
pub enum KValue {
    Exact(Rational),
    SqrtOf(Rational),
}

impl KValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            KValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            KValue::SqrtOf(r) => r.to_f64().map(f64::sqrt).unwrap_or(f64::NAN),
        }
    }

    pub fn render(&self) -> String {
        match self {
            KValue::Exact(r) => format!("{}", r),
            KValue::SqrtOf(r) => format!("sqrt({})", r),
        }
    }

    fn square(&self) -> Rational {
        match self {
            KValue::Exact(r) => r * r,
            KValue::SqrtOf(r) => r.clone(),
        }
    }
}

/// Rational square root when the argument is a perfect square.
fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().sqrt();
    let den = r.denom().sqrt();
    if &(&num * &num) == r.numer() && &(&den * &den) == r.denom() {
        Some(Rational::new(num, den))
    } else {
        None
    }
}

/// One admissible parameter choice with its residual coefficients.
#[derive(Debug, Clone)]
pub struct RegimePoint {
    pub alpha_prime: Rational,
    pub eps_sq: Rational,
    pub k: KValue,
    pub delta: Rational,
    pub m: Rational,
    /// lambda0..lambda3, evaluated exactly.
    pub lambdas: [Rational; 4],
}

impl RegimePoint {
    pub fn eps_f64(&self) -> f64 {
        self.eps_sq.to_f64().map(f64::sqrt).unwrap_or(f64::NAN)
    }

    /// The nine output fields as doubles.
    pub fn fields_f64(&self) -> [f64; 9] {
        [
            self.alpha_prime.to_f64().unwrap_or(f64::NAN),
            self.eps_f64(),
            self.k.to_f64(),
            self.delta.to_f64().unwrap_or(f64::NAN),
            self.m.to_f64().unwrap_or(f64::NAN),
            self.lambdas[0].to_f64().unwrap_or(f64::NAN),
            self.lambdas[1].to_f64().unwrap_or(f64::NAN),
            self.lambdas[2].to_f64().unwrap_or(f64::NAN),
            self.lambdas[3].to_f64().unwrap_or(f64::NAN),
        ]
    }
}

/// Evaluates a parameter polynomial at eps = sqrt(eps_sq), the given k, and
/// rational delta, m. Only even eps powers can occur in the residual
/// polynomials; odd k powers require a rational k.
fn eval_lambda(
    poly: &ParamPoly,
    eps_sq: &Rational,
    k: &KValue,
    delta: &Rational,
    m: &Rational,
) -> Result<Rational, RegimeError> {
    let specialized = poly.subst(&[None, None, Some(delta.clone()), Some(m.clone())]);
    let mut acc = Rational::zero();
    for (exp, coeff) in specialized.terms() {
        let (eps_deg, k_deg) = (exp[0], exp[1]);
        if eps_deg % 2 != 0 {
            return Err(RegimeError::Closure(format!(
                "odd eps power {eps_deg} cannot be evaluated exactly"
            )));
        }
        let mut term = coeff.clone();
        for _ in 0..eps_deg / 2 {
            term *= eps_sq;
        }
        match k {
            KValue::Exact(kv) => {
                for _ in 0..k_deg {
                    term *= kv;
                }
            }
            KValue::SqrtOf(ksq) => {
                if k_deg % 2 != 0 {
                    return Err(RegimeError::Closure(format!(
                        "odd k power {k_deg} with irrational k"
                    )));
                }
                for _ in 0..k_deg / 2 {
                    term *= ksq;
                }
            }
        }
        acc += term;
    }
    Ok(acc)
}

fn lambdas_at(
    eps_sq: &Rational,
    k: &KValue,
    delta: &Rational,
    m: &Rational,
) -> Result<[Rational; 4], RegimeError> {
    let spec = ConnectionSpec::symbolic();
    let l0 = lambda0_poly(&spec);
    let res = residual_coefficients(&spec);
    Ok([
        eval_lambda(&l0, eps_sq, k, delta, m)?,
        eval_lambda(&res.lambda1, eps_sq, k, delta, m)?,
        eval_lambda(&res.lambda2, eps_sq, k, delta, m)?,
        eval_lambda(&res.lambda3, eps_sq, k, delta, m)?,
    ])
}

fn finish_point(
    alpha: Rational,
    eps_sq: Rational,
    k: KValue,
    delta: Rational,
    m: Rational,
) -> Result<RegimePoint, RegimeError> {
    if !eps_sq.is_positive() {
        return Err(RegimeError::Inadmissible(format!(
            "eps^2 = {eps_sq} is not positive"
        )));
    }
    let lambdas = lambdas_at(&eps_sq, &k, &delta, &m)?;
    if !lambdas[0].is_positive() {
        return Err(RegimeError::Inadmissible(format!(
            "lambda0 = {} is not positive",
            lambdas[0]
        )));
    }
    let closure = &alpha * &lambdas[0];
    if closure != int(8) {
        return Err(RegimeError::Closure(format!(
            "alpha' * lambda0 = {closure}, expected 8"
        )));
    }
    Ok(RegimePoint {
        alpha_prime: alpha,
        eps_sq,
        k,
        delta,
        m,
        lambdas,
    })
}

fn check_alpha(alpha: &Rational) -> Result<(), RegimeError> {
    if !alpha.is_positive() {
        return Err(RegimeError::Inadmissible("alpha' must be positive".into()));
    }
    Ok(())
}

/// Case 1: 1 - delta + m = 0 with delta away from 0 and -1;
/// k^2 = alpha'^-3 and eps^2 = 8 alpha'^5 / (delta^2 (1+delta)^2).
pub fn case1_point(alpha: &Rational, delta: &Rational) -> Result<RegimePoint, RegimeError> {
    check_alpha(alpha)?;
    if delta.is_zero() || *delta == -Rational::one() {
        return Err(RegimeError::Inadmissible(
            "case 1 requires delta distinct from 0 and -1".into(),
        ));
    }
    let m = delta - Rational::one();
    let k_sq = alpha.pow(-3);
    let k = match exact_sqrt(&k_sq) {
        Some(r) => KValue::Exact(r),
        None => KValue::SqrtOf(k_sq),
    };
    let d1 = delta + Rational::one();
    let eps_sq = int(8) * alpha.pow(5) / (delta * delta * (&d1 * &d1));
    finish_point(alpha.clone(), eps_sq, k, delta.clone(), m)
}

/// Case 2: delta = 0, m < -1, (1+m)(k+3) < 0; k = alpha'^-3 and
/// eps^2 = -8 alpha'^8 / ((1+m)(1+3 alpha'^3)) (positive on the admissible range).
pub fn case2_point(alpha: &Rational, m: &Rational) -> Result<RegimePoint, RegimeError> {
    check_alpha(alpha)?;
    if *m >= -Rational::one() {
        return Err(RegimeError::Inadmissible("case 2 requires m < -1".into()));
    }
    let k = alpha.pow(-3);
    let m1 = m + Rational::one();
    if !(&m1 * (&k + int(3))).is_negative() {
        return Err(RegimeError::Inadmissible(
            "case 2 requires (1+m)(k+3) < 0".into(),
        ));
    }
    let eps_sq = int(-8) * alpha.pow(8) / (&m1 * (Rational::one() + int(3) * alpha.pow(3)));
    finish_point(
        alpha.clone(),
        eps_sq,
        KValue::Exact(k),
        Rational::zero(),
        m.clone(),
    )
}

/// Case 3: delta = -1, m > -2, (2+m)(4k-3) > 0; k = alpha'^-3 and
/// eps^2 = 8 alpha'^8 / ((2+m)(4 - 3 alpha'^3)).
pub fn case3_point(alpha: &Rational, m: &Rational) -> Result<RegimePoint, RegimeError> {
    check_alpha(alpha)?;
    if *m <= int(-2) {
        return Err(RegimeError::Inadmissible("case 3 requires m > -2".into()));
    }
    let k = alpha.pow(-3);
    let m2 = m + int(2);
    if !(&m2 * (int(4) * &k - int(3))).is_positive() {
        return Err(RegimeError::Inadmissible(
            "case 3 requires (2+m)(4k-3) > 0".into(),
        ));
    }
    let denom = &m2 * (int(4) - int(3) * alpha.pow(3));
    if !denom.is_positive() {
        return Err(RegimeError::Inadmissible(
            "case 3 requires 4 - 3 alpha'^3 > 0".into(),
        ));
    }
    let eps_sq = int(8) * alpha.pow(8) / denom;
    finish_point(
        alpha.clone(),
        eps_sq,
        KValue::Exact(k),
        int(-1),
        m.clone(),
    )
}

/// Custom point: user-chosen (delta, k, m); eps^2 is solved from
/// alpha' * lambda0 = 8.
pub fn custom_point(
    alpha: &Rational,
    delta: &Rational,
    k: &Rational,
    m: &Rational,
) -> Result<RegimePoint, RegimeError> {
    check_alpha(alpha)?;
    if k.is_zero() {
        return Err(RegimeError::Inadmissible("k must be nonzero".into()));
    }
    // lambda0 = k^2 eps^2 P(delta, k, m); positivity requires P > 0
    let spec = ConnectionSpec::symbolic();
    let l0 = lambda0_poly(&spec);
    let p_poly = l0
        .div_exact_monomial(&[2, 2, 0, 0])
        .expect("lambda0 carries k^2 eps^2");
    let p = p_poly.eval(&[Rational::one(), k.clone(), delta.clone(), m.clone()]);
    if !p.is_positive() {
        return Err(RegimeError::Inadmissible(format!(
            "lambda0 sign factor {p} is not positive"
        )));
    }
    let eps_sq = int(8) / (alpha * k * k * &p);
    finish_point(
        alpha.clone(),
        eps_sq,
        KValue::Exact(k.clone()),
        delta.clone(),
        m.clone(),
    )
}

/// Extra case parameter: delta for Case 1, m for Cases 2-3, the full triple
/// for custom points.
#[derive(Debug, Clone)]
pub enum CaseParams {
    Case1 { delta: Rational },
    Case2 { m: Rational },
    Case3 { m: Rational },
    Custom { delta: Rational, k: Rational, m: Rational },
}

impl CaseParams {
    pub fn case_id(&self) -> CaseId {
        match self {
            CaseParams::Case1 { .. } => CaseId::Case1,
            CaseParams::Case2 { .. } => CaseId::Case2,
            CaseParams::Case3 { .. } => CaseId::Case3,
            CaseParams::Custom { .. } => CaseId::Custom,
        }
    }
}

pub fn case_point(params: &CaseParams, alpha: &Rational) -> Result<RegimePoint, RegimeError> {
    match params {
        CaseParams::Case1 { delta } => case1_point(alpha, delta),
        CaseParams::Case2 { m } => case2_point(alpha, m),
        CaseParams::Case3 { m } => case3_point(alpha, m),
        CaseParams::Custom { delta, k, m } => custom_point(alpha, delta, k, m),
    }
}

/// Sweep rows ordered by strictly decreasing alpha'.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub case: CaseId,
    pub mode: NumericMode,
    pub rows: Vec<RegimePoint>,
}

impl SweepTable {
    /// Whether every row sits in the small-fibre regime eps < 1, k > 1.
    pub fn small_fibre_all_rows(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.eps_sq < Rational::one() && r.k.square() > Rational::one())
    }
}

/// Builds the table and checks the asymptotic monotonicity (eps decreasing,
/// k increasing along decreasing alpha') for the three standard cases.
pub fn sweep(params: &CaseParams, alphas: &[Rational]) -> Result<SweepTable, RegimeError> {
    for w in alphas.windows(2) {
        if w[0] <= w[1] {
            return Err(RegimeError::Inadmissible(
                "alpha' list must be strictly decreasing".into(),
            ));
        }
    }
    let mut rows = Vec::with_capacity(alphas.len());
    for alpha in alphas {
        rows.push(case_point(params, alpha)?);
    }
    if !matches!(params, CaseParams::Custom { .. }) {
        for w in rows.windows(2) {
            if w[1].eps_sq >= w[0].eps_sq {
                return Err(RegimeError::Closure("eps is not strictly decreasing".into()));
            }
            if w[1].k.square() <= w[0].k.square() {
                return Err(RegimeError::Closure("k is not strictly increasing".into()));
            }
        }
    }
    Ok(SweepTable {
        case: params.case_id(),
        mode: NumericMode::Rational,
        rows,
    })
}

/// Fit outcome for one residual coefficient along a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LambdaFit {
    /// The coefficient vanishes identically along the sweep.
    ExactZero,
    /// Least-squares slope of log|lambda| against log alpha'.
    Slope { slope: f64 },
    /// Mixed signs or zeros prevented a fit.
    Unfit { reason: String },
}

/// Least-squares slope of log|lambda_i| vs log alpha' for each of
/// lambda1..lambda3.
pub fn order_fit(table: &SweepTable) -> Result<Vec<LambdaFit>, RegimeError> {
    if table.rows.len() < 3 {
        return Err(RegimeError::NotEnoughPoints(table.rows.len()));
    }
    let mut fits = Vec::with_capacity(3);
    for li in 1..=3usize {
        let values: Vec<&Rational> = table.rows.iter().map(|r| &r.lambdas[li]).collect();
        if values.iter().all(|v| v.is_zero()) {
            fits.push(LambdaFit::ExactZero);
            continue;
        }
        if values.iter().any(|v| v.is_zero()) {
            fits.push(LambdaFit::Unfit {
                reason: "mixed zero and nonzero values".into(),
            });
            continue;
        }
        let all_pos = values.iter().all(|v| v.is_positive());
        let all_neg = values.iter().all(|v| v.is_negative());
        if !all_pos && !all_neg {
            fits.push(LambdaFit::Unfit {
                reason: "sign change along the sweep".into(),
            });
            continue;
        }
        let points: Vec<(f64, f64)> = table
            .rows
            .iter()
            .map(|r| {
                let x = r.alpha_prime.to_f64().expect("alpha fits in f64").ln();
                let y = r.lambdas[li].to_f64().expect("lambda fits in f64").abs().ln();
                (x, y)
            })
            .collect();
        fits.push(LambdaFit::Slope {
            slope: least_squares_slope(&points),
        });
    }
    Ok(fits)
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Double-precision regime point for large sweeps.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegimePointF64 {
    pub alpha_prime: f64,
    pub eps: f64,
    pub k: f64,
    pub delta: f64,
    pub m: f64,
    pub lambdas: [f64; 4],
}

/// Closure tolerance of the double-precision path.
pub const DOUBLE_CLOSURE_TOL: f64 = 1e-12;

pub fn case_point_f64(params: &CaseParams, alpha: f64) -> Result<RegimePointF64, RegimeError> {
    if !(alpha > 0.0) {
        return Err(RegimeError::Inadmissible("alpha' must be positive".into()));
    }
    let (delta, k, m, eps_sq) = match params {
        CaseParams::Case1 { delta } => {
            let d = delta.to_f64().unwrap();
            if d == 0.0 || d == -1.0 {
                return Err(RegimeError::Inadmissible(
                    "case 1 requires delta distinct from 0 and -1".into(),
                ));
            }
            let k = alpha.powi(-3).sqrt();
            let eps_sq = 8.0 * alpha.powi(5) / (d * d * (1.0 + d) * (1.0 + d));
            (d, k, d - 1.0, eps_sq)
        }
        CaseParams::Case2 { m } => {
            let mv = m.to_f64().unwrap();
            if mv >= -1.0 {
                return Err(RegimeError::Inadmissible("case 2 requires m < -1".into()));
            }
            let k = alpha.powi(-3);
            let eps_sq = -8.0 * alpha.powi(8) / ((1.0 + mv) * (1.0 + 3.0 * alpha.powi(3)));
            (0.0, k, mv, eps_sq)
        }
        CaseParams::Case3 { m } => {
            let mv = m.to_f64().unwrap();
            if mv <= -2.0 {
                return Err(RegimeError::Inadmissible("case 3 requires m > -2".into()));
            }
            let k = alpha.powi(-3);
            let eps_sq = 8.0 * alpha.powi(8) / ((2.0 + mv) * (4.0 - 3.0 * alpha.powi(3)));
            (-1.0, k, mv, eps_sq)
        }
        CaseParams::Custom { delta, k, m } => {
            let d = delta.to_f64().unwrap();
            let kv = k.to_f64().unwrap();
            let mv = m.to_f64().unwrap();
            let p = kv * kv * d * d * (1.0 + d) * (1.0 + d)
                + (1.0 - d + mv) * (kv * (4.0 * d * d - (1.0 + d) * (1.0 + d)) - 3.0);
            if !(p > 0.0) {
                return Err(RegimeError::Inadmissible(
                    "lambda0 sign factor is not positive".into(),
                ));
            }
            (d, kv, mv, 8.0 / (alpha * kv * kv * p))
        }
    };
    if !(eps_sq > 0.0) {
        return Err(RegimeError::Inadmissible("eps^2 is not positive".into()));
    }
    let k2e2 = k * k * eps_sq;
    let ke2 = k * eps_sq;
    let d1 = 1.0 + delta;
    let lambda0 =
        k2e2 * (k * k * delta * delta * d1 * d1 + (1.0 - delta + m) * (k * (4.0 * delta * delta - d1 * d1) - 3.0));
    let lambda1 = ke2 * (6.0 * (1.0 - delta + m) + k * (1.0 - delta) * (1.0 + 3.0 * delta)) / 4.0;
    let lambda2 = k2e2 * (1.0 + m - 5.0 * delta) * d1 / 4.0;
    let lambda3 = k2e2 * (delta * delta - 2.0 * (2.0 + m) * delta - 1.0) / 4.0;
    if (alpha * lambda0 - 8.0).abs() > DOUBLE_CLOSURE_TOL {
        return Err(RegimeError::Closure(format!(
            "alpha' * lambda0 = {} deviates from 8 beyond {DOUBLE_CLOSURE_TOL}",
            alpha * lambda0
        )));
    }
    Ok(RegimePointF64 {
        alpha_prime: alpha,
        eps: eps_sq.sqrt(),
        k,
        delta,
        m,
        lambdas: [lambda0, lambda1, lambda2, lambda3],
    })
}

pub const CSV_HEADER: &str = "alpha_prime,eps,k,delta,m,lambda0,lambda1,lambda2,lambda3";

/// CSV rendering with the fixed header; the order-fit summary is appended as
/// comment lines when available.
pub fn table_to_csv(table: &SweepTable, fits: Option<&[LambdaFit]>) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &table.rows {
        let f = row.fields_f64();
        let cells: Vec<String> = f.iter().map(|x| format!("{}", x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out.push_str(&format!(
        "# small-fibre regime (eps < 1 and k > 1) on all rows: {}\n",
        table.small_fibre_all_rows()
    ));
    if let Some(fits) = fits {
        for (i, fit) in fits.iter().enumerate() {
            let desc = match fit {
                LambdaFit::ExactZero => "exact zero".to_string(),
                LambdaFit::Slope { slope } => format!("slope {:.9}", slope),
                LambdaFit::Unfit { reason } => format!("unfit ({reason})"),
            };
            out.push_str(&format!("# order_fit lambda{}: {}\n", i + 1, desc));
        }
    } else {
        out.push_str("# order_fit: n/a\n");
    }
    out
}

/// JSON mirror of one exact row: doubles plus exact strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegimePointJson {
    pub alpha_prime: f64,
    pub eps: f64,
    pub k: f64,
    pub delta: f64,
    pub m: f64,
    pub lambda0: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub exact: ExactFields,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExactFields {
    pub alpha_prime: String,
    pub eps_sq: String,
    pub k: String,
    pub delta: String,
    pub m: String,
    pub lambda0: String,
    pub lambda1: String,
    pub lambda2: String,
    pub lambda3: String,
}

impl RegimePoint {
    pub fn to_json_row(&self) -> RegimePointJson {
        let f = self.fields_f64();
        RegimePointJson {
            alpha_prime: f[0],
            eps: f[1],
            k: f[2],
            delta: f[3],
            m: f[4],
            lambda0: f[5],
            lambda1: f[6],
            lambda2: f[7],
            lambda3: f[8],
            exact: ExactFields {
                alpha_prime: self.alpha_prime.to_string(),
                eps_sq: self.eps_sq.to_string(),
                k: self.k.render(),
                delta: self.delta.to_string(),
                m: self.m.to_string(),
                lambda0: self.lambdas[0].to_string(),
                lambda1: self.lambdas[1].to_string(),
                lambda2: self.lambdas[2].to_string(),
                lambda3: self.lambdas[3].to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepTableJson {
    pub case: CaseId,
    pub numeric_mode: NumericMode,
    /// eps < 1 and k > 1 on every row.
    pub small_fibre_all_rows: bool,
    pub rows: Vec<RegimePointJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_fit: Option<Vec<LambdaFit>>,
    /// How the residual size is measured: the maximum magnitude of the
    /// coefficient polynomials of R ^ psi in the orthonormal coframe.
    pub residual_measure: String,
}

pub const RESIDUAL_MEASURE_NOTE: &str = "residual size = coefficient magnitudes of R^psi in the \
orthonormal coframe (norm-equivalent with parameter-free constants); lambda0 is the recorded \
normalizer polynomial, see the verification report for the computed alternative";

pub fn table_to_json(table: &SweepTable, fits: Option<Vec<LambdaFit>>) -> SweepTableJson {
    SweepTableJson {
        case: table.case,
        numeric_mode: table.mode,
        small_fibre_all_rows: table.small_fibre_all_rows(),
        rows: table.rows.iter().map(|r| r.to_json_row()).collect(),
        order_fit: fits,
        residual_measure: RESIDUAL_MEASURE_NOTE.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn q(n: i64, d: i64) -> Rational {
        rat(n, d)
    }

    #[test]
    fn case1_closure_example() {
        let p = case1_point(&q(1, 100), &int(1)).unwrap();
        assert_eq!(p.k, KValue::Exact(int(1000)));
        assert_eq!(p.eps_sq, q(1, 5_000_000_000));
        assert_eq!(&p.alpha_prime * &p.lambdas[0], int(8));
        assert_eq!(p.lambdas[0], int(800));
        // lambda1 vanishes identically in case 1 at delta = 1
        assert!(p.lambdas[1].is_zero());
    }

    #[test]
    fn case1_rejects_bad_delta() {
        assert!(matches!(
            case1_point(&q(1, 100), &int(-1)),
            Err(RegimeError::Inadmissible(_))
        ));
        assert!(matches!(
            case1_point(&q(1, 100), &int(0)),
            Err(RegimeError::Inadmissible(_))
        ));
    }

    #[test]
    fn case2_admissible_point() {
        let p = case2_point(&q(1, 100), &int(-2)).unwrap();
        assert!(p.lambdas[0].is_positive());
        assert_eq!(&p.alpha_prime * &p.lambdas[0], int(8));
        assert!(matches!(p.k, KValue::Exact(ref k) if *k == int(1_000_000)));
        assert!(case2_point(&q(1, 10), &int(0)).is_err());
    }

    #[test]
    fn case3_lambda2_vanishes() {
        let p = case3_point(&q(1, 10), &int(0)).unwrap();
        assert!(p.lambdas[2].is_zero());
        assert_eq!(&p.alpha_prime * &p.lambdas[0], int(8));
        assert!(case3_point(&q(1, 10), &int(-2)).is_err());
    }

    #[test]
    fn custom_point_closure() {
        let p = custom_point(&q(1, 10), &int(0), &int(-4), &int(0)).unwrap();
        // P = (1)((-4)(-1) - 3) = 1 > 0
        assert_eq!(&p.alpha_prime * &p.lambdas[0], int(8));
        // P < 0 rejected: delta=0, k=1, m=0 gives P = -4
        assert!(custom_point(&q(1, 10), &int(0), &int(1), &int(0)).is_err());
    }

    #[test]
    fn lambda_cross_validation_against_direct_formulas() {
        // case formulas evaluated directly, against poly_eval of the
        // symbolic coefficients
        for alpha in [q(1, 10), q(1, 100), q(1, 1000)] {
            let p = case1_point(&alpha, &int(2)).unwrap();
            let k2e2 = &p.k.square() * &p.eps_sq;
            // lambda1 = (1-d)(1+3d)/4 k^2 eps^2; lambda2 = -d(1+d) k^2 eps^2;
            // lambda3 = -(1+d)^2/4 k^2 eps^2 at d = 2
            assert_eq!(p.lambdas[1], &k2e2 * &q(-7, 4));
            assert_eq!(p.lambdas[2], &k2e2 * &int(-6));
            assert_eq!(p.lambdas[3], &k2e2 * &q(-9, 4));

            let p2 = case2_point(&alpha, &q(-3, 2)).unwrap();
            let k = match &p2.k {
                KValue::Exact(k) => k.clone(),
                _ => unreachable!(),
            };
            let k2e2 = &(&k * &k) * &p2.eps_sq;
            let ke2 = &k * &p2.eps_sq;
            // delta = 0: lambda1 = (6(1+m)+k) k eps^2/4, lambda2 = (1+m) k^2 eps^2/4,
            // lambda3 = -k^2 eps^2/4
            assert_eq!(p2.lambdas[1], (int(6) * q(-1, 2) + &k) * &ke2 / int(4));
            assert_eq!(p2.lambdas[2], &k2e2 * &q(-1, 8));
            assert_eq!(p2.lambdas[3], &k2e2 * &q(-1, 4));

            let p3 = case3_point(&alpha, &int(1)).unwrap();
            let k = match &p3.k {
                KValue::Exact(k) => k.clone(),
                _ => unreachable!(),
            };
            let k2e2 = &(&k * &k) * &p3.eps_sq;
            let ke2 = &k * &p3.eps_sq;
            // delta = -1: lambda1 = (6(2+m) - 4k) k eps^2 / 4, lambda3 = (2+m) k^2 eps^2/2
            assert_eq!(
                p3.lambdas[1],
                (int(18) - int(4) * &k) * &ke2 / int(4)
            );
            assert_eq!(p3.lambdas[3], &k2e2 * &q(3, 2));
        }
    }

    fn decades(top: i64, count: usize) -> Vec<Rational> {
        (0..count)
            .map(|i| q(1, 10i64.pow(top as u32 + i as u32)))
            .collect()
    }

    #[test]
    fn sweep_monotonicity_and_fit_case1() {
        let params = CaseParams::Case1 { delta: int(1) };
        let table = sweep(&params, &decades(1, 4)).unwrap();
        assert_eq!(table.rows.len(), 4);
        let fits = order_fit(&table).unwrap();
        assert_eq!(fits[0], LambdaFit::ExactZero);
        for fit in &fits[1..] {
            match fit {
                LambdaFit::Slope { slope } => {
                    assert!((slope - 2.0).abs() <= 1e-9, "slope {slope}")
                }
                other => panic!("expected slope, got {:?}", other),
            }
        }
    }

    #[test]
    fn sweep_fit_cases_2_and_3() {
        let t2 = sweep(&CaseParams::Case2 { m: int(-2) }, &decades(4, 4)).unwrap();
        for fit in order_fit(&t2).unwrap() {
            match fit {
                LambdaFit::Slope { slope } => {
                    assert!((slope - 2.0).abs() <= 1e-9, "case2 slope {slope}")
                }
                other => panic!("case2 expected slope, got {:?}", other),
            }
        }
        let t3 = sweep(&CaseParams::Case3 { m: int(0) }, &decades(4, 4)).unwrap();
        let fits3 = order_fit(&t3).unwrap();
        assert_eq!(fits3[1], LambdaFit::ExactZero);
        for fit in [&fits3[0], &fits3[2]] {
            match fit {
                LambdaFit::Slope { slope } => {
                    assert!((slope - 2.0).abs() <= 1e-9, "case3 slope {slope}")
                }
                other => panic!("case3 expected slope, got {:?}", other),
            }
        }
    }

    #[test]
    fn closure_holds_on_decade_grid_for_all_cases() {
        for i in 1..=6u32 {
            let alpha = q(1, 10i64.pow(i));
            for params in [
                CaseParams::Case1 { delta: int(1) },
                CaseParams::Case2 { m: int(-2) },
                CaseParams::Case3 { m: int(0) },
            ] {
                let p = case_point(&params, &alpha).unwrap();
                assert_eq!(&p.alpha_prime * &p.lambdas[0], int(8));
                assert!(p.lambdas[0].is_positive());
            }
        }
    }

    #[test]
    fn sweep_edge_cases() {
        let params = CaseParams::Case1 { delta: int(1) };
        let empty = sweep(&params, &[]).unwrap();
        assert!(empty.rows.is_empty());
        assert!(matches!(
            order_fit(&empty),
            Err(RegimeError::NotEnoughPoints(0))
        ));
        let single = sweep(&params, &[q(1, 10)]).unwrap();
        assert_eq!(single.rows.len(), 1);
    }

    #[test]
    fn double_mode_closure() {
        let p = case_point_f64(&CaseParams::Case1 { delta: int(1) }, 0.01).unwrap();
        assert!((p.alpha_prime * p.lambdas[0] - 8.0).abs() <= DOUBLE_CLOSURE_TOL);
        assert!((p.k - 1000.0).abs() < 1e-9);
        let p2 = case_point_f64(&CaseParams::Case2 { m: int(-2) }, 0.001).unwrap();
        assert!((p2.alpha_prime * p2.lambdas[0] - 8.0).abs() <= DOUBLE_CLOSURE_TOL);
    }

    #[test]
    fn csv_and_json_shapes() {
        let params = CaseParams::Case1 { delta: int(1) };
        let table = sweep(&params, &decades(1, 4)).unwrap();
        let fits = order_fit(&table).unwrap();
        let csv = table_to_csv(&table, Some(&fits));
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 1 + 4 + 1 + 3);
        let json = table_to_json(&table, Some(fits));
        let text = serde_json::to_string(&json).unwrap();
        let back: SweepTableJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.rows.len(), 4);
        assert_eq!(back.rows[0].exact.alpha_prime, "1/10");
    }

    #[test]
    fn exact_sqrt_detection() {
        assert_eq!(exact_sqrt(&q(1, 4)), Some(q(1, 2)));
        assert_eq!(exact_sqrt(&int(1_000_000)), Some(int(1000)));
        assert_eq!(exact_sqrt(&int(1000)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
    }
}
