//! Command-line front end: matrix parsing, the command dispatcher and the
//! plain, LaTeX and JSON renderers.

use std::fmt::Write as _;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::IntMatrix;
use crate::oracle::{cross_check, CheckOutcome, CheckStatus};
use crate::poly::{IntPoly, RatFunc, Sign};
use crate::zeta::{
    artin_mazur_product_form, Certificate, Fault, ReportOptions, ZetaReport, DEFAULT_TOLERANCE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty matrix")]
    Empty,
    #[error("ragged row {row}: expected {expected} entries, found {found}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix is not square: {rows} rows of length {cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid token {token:?} at row {row}, column {col}")]
    InvalidToken {
        token: String,
        row: usize,
        col: usize,
    },
    #[error("unexpected {found} at offset {offset}, expected {expected}")]
    Syntax {
        found: String,
        offset: usize,
        expected: &'static str,
    },
}

/// Parses the nested bracket form `[[2,1],[1,1]]`.
///
/// Whitespace is allowed anywhere between tokens. Rows and columns in error
/// messages are 1-based.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    p.expect('[', "'['")?;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    p.skip_ws();
    if p.peek() == Some(']') {
        return Err(ParseError::Empty);
    }
    loop {
        let row = rows.len() + 1;
        p.expect('[', "'[' starting a row")?;
        let mut entries = Vec::new();
        p.skip_ws();
        if p.peek() != Some(']') {
            loop {
                let col = entries.len() + 1;
                entries.push(p.integer(row, col)?);
                p.skip_ws();
                match p.bump() {
                    Some(',') => continue,
                    Some(']') => break,
                    other => return Err(p.syntax(other, "',' or ']'")),
                }
            }
        } else {
            p.bump();
        }
        if let Some(first) = rows.first() {
            if entries.len() != first.len() {
                return Err(ParseError::Ragged {
                    row,
                    expected: first.len(),
                    found: entries.len(),
                });
            }
        }
        rows.push(entries);
        p.skip_ws();
        match p.bump() {
            Some(',') => continue,
            Some(']') => break,
            other => return Err(p.syntax(other, "',' or ']'")),
        }
    }
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.syntax(Some(c), "end of input"));
    }
    let cols = rows[0].len();
    if cols == 0 {
        return Err(ParseError::Empty);
    }
    if cols != rows.len() {
        return Err(ParseError::NotSquare {
            rows: rows.len(),
            cols,
        });
    }
    Ok(IntMatrix::from_rows(rows).expect("validated square"))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn syntax(&self, found: Option<char>, expected: &'static str) -> ParseError {
        ParseError::Syntax {
            found: found.map_or_else(|| "end of input".to_string(), |c| format!("{c:?}")),
            offset: self.pos,
            expected,
        }
    }

    fn expect(&mut self, want: char, expected: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        match self.bump() {
            Some(c) if c == want => Ok(()),
            other => Err(self.syntax(other, expected)),
        }
    }

    fn integer(&mut self, row: usize, col: usize) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| !c.is_whitespace() && c != ',' && c != ']' && c != '[')
        {
            self.bump();
        }
        let token = &self.src[start..self.pos];
        let digits = token.strip_prefix(['-', '+']).unwrap_or(token);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::InvalidToken {
                token: token.to_string(),
                row,
                col,
            });
        }
        Ok(token.parse().expect("validated decimal integer"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Zeta,
    Lefschetz,
    Counts,
    Exponents,
    Classify,
    Check,
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Plain,
    Latex,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixSource {
    Inline(String),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct CliConfig {
    pub command: Command,
    pub matrix_source: MatrixSource,
    pub max_m: usize,
    pub format: Format,
    pub tolerance: f64,
    pub unreduced: bool,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

impl CliConfig {
    pub fn new(command: Command, matrix_source: MatrixSource) -> Self {
        Self {
            command,
            matrix_source,
            max_m: 10,
            format: Format::Plain,
            tolerance: DEFAULT_TOLERANCE,
            unreduced: false,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

impl CliOutput {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            exit_code: EXIT_INPUT_ERROR,
        }
    }
}

pub fn run(config: &CliConfig) -> CliOutput {
    if config.max_m == 0 {
        return CliOutput::input_error("--max-m must be at least 1");
    }
    if config.tolerance.is_nan() || config.tolerance <= 0.0 {
        return CliOutput::input_error("--tolerance must be positive");
    }
    let text = match &config.matrix_source {
        MatrixSource::Inline(t) => t.clone(),
        MatrixSource::File(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return CliOutput::input_error(format!("{}: {e}", path.display())),
        },
    };
    let matrix = match parse_matrix(&text) {
        Ok(m) => m,
        Err(e) => return CliOutput::input_error(e),
    };
    let options = ReportOptions {
        max_m: config.max_m,
        tolerance: config.tolerance,
        fault: config.fault,
    };
    let report = match ZetaReport::compute(&matrix, &options) {
        Ok(r) => r,
        Err(e) => return CliOutput::input_error(e),
    };

    let checks = (config.command == Command::Check).then(|| cross_check(&report));
    let failed = checks
        .as_ref()
        .is_some_and(|c| c.iter().any(|o| o.status == CheckStatus::Fail));
    let stdout = match config.format {
        Format::Json => {
            let mut record = StructuredReport::from_report(&report);
            record.checks = checks
                .as_deref()
                .map(|c| c.iter().map(StructuredCheck::from).collect());
            let mut s = serde_json::to_string_pretty(&record).expect("serializable record");
            s.push('\n');
            s
        }
        style => render(config, &report, checks.as_deref(), style),
    };
    CliOutput {
        stdout,
        stderr: String::new(),
        exit_code: if failed { EXIT_CHECK_FAILED } else { EXIT_OK },
    }
}

fn render(
    config: &CliConfig,
    report: &ZetaReport,
    checks: Option<&[CheckOutcome]>,
    style: Format,
) -> String {
    let latex = style == Format::Latex;
    let mut out = String::new();
    match config.command {
        Command::Zeta if config.unreduced => {
            out += &render_product(report, true, latex);
        }
        Command::Lefschetz if config.unreduced => {
            out += &render_product(report, false, latex);
        }
        Command::Zeta => {
            writeln!(out, "{}", format_ratfunc(&report.artin_mazur_zeta, latex)).unwrap();
        }
        Command::Lefschetz => {
            writeln!(out, "{}", format_ratfunc(&report.lefschetz_zeta, latex)).unwrap();
        }
        Command::Counts => out += &render_counts(report, latex),
        Command::Exponents => out += &render_exponents(report, latex),
        Command::Classify => out += &render_classification(report),
        Command::Check => {
            for c in checks.unwrap_or_default() {
                let tag = match c.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Skipped => "SKIP",
                };
                writeln!(out, "{tag} {}: {}", c.name, c.detail).unwrap();
            }
        }
        Command::Report => {
            let (zeta_name, lef_name) = if latex {
                ("\\zeta_M(z)", "\\tilde\\zeta_M(z)")
            } else {
                ("zeta", "lefschetz")
            };
            writeln!(out, "matrix: {}", report.matrix).unwrap();
            writeln!(
                out,
                "{lef_name} = {}",
                format_ratfunc(&report.lefschetz_zeta, latex)
            )
            .unwrap();
            writeln!(
                out,
                "{zeta_name} = {}",
                format_ratfunc(&report.artin_mazur_zeta, latex)
            )
            .unwrap();
            let s = &report.signs;
            writeln!(
                out,
                "signs: sigma = {}, tau = {}, delta = {:+}, epsilon = {:+}",
                s.sigma,
                s.tau,
                s.delta.to_i64(),
                s.epsilon.to_i64()
            )
            .unwrap();
            out += &render_counts(report, latex);
            out += &render_exponents(report, latex);
            out += &render_classification(report);
            match &report.functional_equation {
                Some(fe) => writeln!(
                    out,
                    "functional_equation: {} (D = {}, B = {})",
                    if fe.holds() { "holds" } else { "FAILS" },
                    fe.det,
                    fe.b
                )
                .unwrap(),
                None => writeln!(out, "functional_equation: skipped (det = 0)").unwrap(),
            }
            match report.growth_rate {
                Some(g) => writeln!(out, "growth_rate: {} +- {:.1e}", g.value, g.error).unwrap(),
                None => writeln!(out, "growth_rate: absent").unwrap(),
            }
        }
    }
    out
}

fn render_counts(report: &ZetaReport, latex: bool) -> String {
    let mut out = String::new();
    if latex {
        out += "\\begin{tabular}{rrr}\n$m$ & $\\tilde a_m$ & $a_m$ \\\\\n\\hline\n";
    } else {
        out += "m\tsigned\tcount\n";
    }
    for (i, (s, a)) in report.signed_counts.iter().zip(&report.counts).enumerate() {
        if latex {
            writeln!(out, "{} & {} & {} \\\\", i + 1, s, a).unwrap();
        } else {
            writeln!(out, "{}\t{}\t{}", i + 1, s, a).unwrap();
        }
    }
    if latex {
        out += "\\end{tabular}\n";
    }
    out
}

fn render_exponents(report: &ZetaReport, latex: bool) -> String {
    let mut out = String::new();
    if latex {
        out += "\\begin{tabular}{rr}\n$m$ & $c_m$ \\\\\n\\hline\n";
    } else {
        out += "m\texponent\n";
    }
    for (i, c) in report.exponents.iter().enumerate() {
        if latex {
            writeln!(out, "{} & {} \\\\", i + 1, c).unwrap();
        } else {
            writeln!(out, "{}\t{}", i + 1, c).unwrap();
        }
    }
    if latex {
        out += "\\end{tabular}\n";
    }
    out
}

fn render_classification(report: &ZetaReport) -> String {
    let c = &report.classification;
    let orders: Vec<String> = c.root_of_unity_orders.iter().map(u64::to_string).collect();
    let cert = match c.certificate {
        Certificate::Exact => "exact",
        Certificate::Numeric => "numeric",
    };
    format!(
        "singular: {}\nroot_of_unity_orders: [{}]\nquasihyperbolic: {}\nhyperbolic: {} ({cert})\n",
        c.singular,
        orders.join(", "),
        c.quasihyperbolic,
        c.hyperbolic,
    )
}

/// Factor-by-factor product `prod_k P_k(δ z)^(ε (-1)^(k+1))`.
fn render_product(report: &ZetaReport, artin_mazur: bool, latex: bool) -> String {
    let m = &report.matrix;
    let (delta, epsilon) = if artin_mazur {
        (report.signs.delta, report.signs.epsilon)
    } else {
        (Sign::Plus, Sign::Plus)
    };
    let mut out = String::new();
    let mut pieces = Vec::new();
    for k in 0..=m.dim() {
        let factor = if artin_mazur {
            single_factor(m, k, delta)
        } else {
            report.char_factors.factors[k].clone()
        };
        let exponent = (Sign::parity(k + 1) * epsilon).to_i64();
        let body = format_poly(&factor, latex);
        pieces.push(if latex {
            format!("\\left({body}\\right)^{{{exponent}}}")
        } else {
            format!("({body})^({exponent})")
        });
    }
    let joined = pieces.join(if latex { " \\cdot " } else { " * " });
    writeln!(out, "{joined}").unwrap();
    // cross-reference with the reduced value
    let product = if artin_mazur {
        artin_mazur_product_form(m, delta, epsilon)
    } else {
        report.lefschetz_zeta.clone()
    };
    writeln!(out, "= {}", format_ratfunc(&product, latex)).unwrap();
    out
}

fn single_factor(m: &IntMatrix, k: usize, delta: Sign) -> IntPoly {
    let wedge = m.exterior_power(k).expect("k <= dim");
    let scale = BigInt::from(-delta.to_i64());
    crate::poly::det_poly_linear(&IntMatrix::identity(wedge.dim()), &wedge.scale(&scale))
        .expect("square exterior power")
}

/// Ascending terms, e.g. `1 - 3 z + z^2`.
pub fn format_poly(p: &IntPoly, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out += if c.is_negative() { " - " } else { " + " };
        }
        if i == 0 {
            write!(out, "{mag}").unwrap();
            continue;
        }
        if !mag.is_one() {
            write!(out, "{mag} ").unwrap();
        }
        match (i, latex) {
            (1, _) => out.push('z'),
            (_, false) => write!(out, "z^{i}").unwrap(),
            (_, true) => write!(out, "z^{{{i}}}").unwrap(),
        }
    }
    out
}

/// Squarefree-factored form: `(1 - z)^2`, `2 (1 + z)`, `z^3`.
fn format_factored(p: &IntPoly, latex: bool, standalone: bool) -> String {
    let sqf = p.squarefree_decomposition().expect("nonzero polynomial");
    let mut unit = sqf.unit;
    let mut factors = Vec::new();
    for (q, mult) in sqf.factors {
        // present every factor with positive lowest-order coefficient
        let q = if q.trailing().unwrap().is_negative() {
            if mult % 2 == 1 {
                unit = -unit;
            }
            -&q
        } else {
            q
        };
        factors.push((q, mult));
    }
    if factors.is_empty() {
        return unit.to_string();
    }
    let mut out = String::new();
    if unit == -BigInt::one() {
        out.push('-');
    } else if !unit.is_one() {
        write!(out, "{unit} ").unwrap();
    }
    let bare = standalone && unit.is_one() && factors.len() == 1 && factors[0].1 == 1;
    let body: Vec<String> = factors
        .iter()
        .map(|(q, mult)| {
            let monomial = q.coeffs().len() == 2 && q.coeff(0).is_zero();
            let inner = format_poly(q, latex);
            let base = if bare || monomial {
                inner
            } else if latex {
                format!("\\left({inner}\\right)")
            } else {
                format!("({inner})")
            };
            match (*mult, latex) {
                (1, _) => base,
                (k, false) => format!("{base}^{k}"),
                (k, true) => format!("{base}^{{{k}}}"),
            }
        })
        .collect();
    out += &body.join(" ");
    out
}

/// Reduced rational function, numerator and denominator in squarefree
/// factored form: `(1 - z)^2 / (1 - 3 z + z^2)`.
pub fn format_ratfunc(f: &RatFunc, latex: bool) -> String {
    if f.is_zero() {
        return "0".into();
    }
    if f.den().is_one() {
        return format_factored(f.num(), latex, true);
    }
    let num = format_factored(f.num(), latex, false);
    let den = format_factored(f.den(), latex, false);
    if latex {
        format!("\\frac{{{num}}}{{{den}}}")
    } else {
        format!("{num} / {den}")
    }
}

/// Numerator and denominator as ascending decimal-string coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredRatFunc {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl StructuredRatFunc {
    fn from_ratfunc(f: &RatFunc) -> Self {
        let coeffs = |p: &IntPoly| p.coeffs().iter().map(BigInt::to_string).collect();
        Self {
            num: coeffs(f.num()),
            den: coeffs(f.den()),
        }
    }

    pub fn to_ratfunc(&self) -> Option<RatFunc> {
        let poly = |v: &[String]| -> Option<IntPoly> {
            v.iter()
                .map(|s| s.parse().ok())
                .collect::<Option<Vec<BigInt>>>()
                .map(IntPoly::new)
        };
        RatFunc::new(poly(&self.num)?, poly(&self.den)?).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredSigns {
    pub sigma: usize,
    pub tau: usize,
    pub delta: i64,
    pub epsilon: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredClassification {
    pub singular: bool,
    pub root_of_unity_orders: Vec<u64>,
    pub quasihyperbolic: bool,
    pub hyperbolic: bool,
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredFunctionalEquation {
    pub holds: bool,
    pub lefschetz: bool,
    pub artin_mazur: bool,
    pub det: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuredGrowth {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredCheck {
    pub name: String,
    pub status: String,
    pub detail: String,
}

impl From<&CheckOutcome> for StructuredCheck {
    fn from(c: &CheckOutcome) -> Self {
        let status = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        };
        Self {
            name: c.name.to_string(),
            status: status.into(),
            detail: c.detail.clone(),
        }
    }
}

/// The JSON record. Integers are decimal strings so that no value is
/// truncated by a consumer's number type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuredReport {
    pub matrix: Vec<Vec<String>>,
    pub artin_mazur_zeta: StructuredRatFunc,
    pub lefschetz_zeta: StructuredRatFunc,
    pub signs: StructuredSigns,
    pub counts: Vec<String>,
    pub signed_counts: Vec<String>,
    pub exponents: Vec<String>,
    pub classification: StructuredClassification,
    pub functional_equation: Option<StructuredFunctionalEquation>,
    pub growth_rate: Option<StructuredGrowth>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<StructuredCheck>>,
}

impl StructuredReport {
    pub fn from_report(r: &ZetaReport) -> Self {
        let strings = |v: &[BigInt]| v.iter().map(BigInt::to_string).collect();
        let c = &r.classification;
        Self {
            matrix: r.matrix.rows().map(strings).collect(),
            artin_mazur_zeta: StructuredRatFunc::from_ratfunc(&r.artin_mazur_zeta),
            lefschetz_zeta: StructuredRatFunc::from_ratfunc(&r.lefschetz_zeta),
            signs: StructuredSigns {
                sigma: r.signs.sigma,
                tau: r.signs.tau,
                delta: r.signs.delta.to_i64(),
                epsilon: r.signs.epsilon.to_i64(),
            },
            counts: strings(&r.counts),
            signed_counts: strings(&r.signed_counts),
            exponents: strings(&r.exponents),
            classification: StructuredClassification {
                singular: c.singular,
                root_of_unity_orders: c.root_of_unity_orders.iter().copied().collect(),
                quasihyperbolic: c.quasihyperbolic,
                hyperbolic: c.hyperbolic,
                certificate: match c.certificate {
                    Certificate::Exact => "exact".into(),
                    Certificate::Numeric => "numeric".into(),
                },
            },
            functional_equation: r.functional_equation.as_ref().map(|fe| {
                StructuredFunctionalEquation {
                    holds: fe.holds(),
                    lefschetz: fe.lefschetz_holds,
                    artin_mazur: fe.artin_mazur_holds,
                    det: fe.det.to_string(),
                    b: fe.b.to_string(),
                }
            }),
            growth_rate: r.growth_rate.map(|g| StructuredGrowth {
                value: g.value,
                error: g.error,
            }),
            checks: None,
        }
    }
}
