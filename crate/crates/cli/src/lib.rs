//! The `homore` command line: evaluate elements, compute associators and
//! brackets, and run the exhaustive identity checks.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 for usage, parse or configuration errors.

use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use homore_core::{
    alpha_t, associator, bracket, certify, certify_weak_unit, check_deformation, eval_str, hom_associator,
    AlgebraPreset, CheckReport, DeformationCheck, Error, EvalConfig, Identity, OrePoly, ParamScalar, PresetName,
    ProductMode, Rational,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "homore",
    version,
    about = "Hom-associative Ore extensions: evaluation and identity checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    QuantumPlane,
    Enveloping,
}

impl From<Algebra> for PresetName {
    fn from(a: Algebra) -> Self {
        match a {
            Algebra::QuantumPlane => PresetName::QuantumPlane,
            Algebra::Enveloping => PresetName::Enveloping,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Product {
    Assoc,
    Star,
}

impl From<Product> for ProductMode {
    fn from(p: Product) -> Self {
        match p {
            Product::Assoc => ProductMode::Assoc,
            Product::Star => ProductMode::Star,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A parameter value: `sym` keeps it symbolic, otherwise a rational like `3/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamValue {
    Symbolic,
    Value(Rational),
}

impl FromStr for ParamValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "sym" {
            return Ok(ParamValue::Symbolic);
        }
        Rational::from_str(s)
            .map(ParamValue::Value)
            .map_err(|_| format!("expected `sym` or a rational such as 3/2, got `{s}`"))
    }
}

impl ParamValue {
    fn scalar(&self, symbol: ParamScalar) -> ParamScalar {
        match self {
            ParamValue::Symbolic => symbol,
            ParamValue::Value(r) => ParamScalar::constant(r.clone()),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Algebra preset.
    #[arg(long, global = true, value_enum, default_value_t = Algebra::QuantumPlane)]
    pub algebra: Algebra,

    /// Product used for `*`: the associative Ore product or alpha composed with it.
    #[arg(long, global = true, value_enum, default_value_t = Product::Star)]
    pub product: Product,

    /// Value of q (`sym` or a nonzero rational).
    #[arg(long, global = true, default_value = "sym")]
    pub q: ParamValue,

    /// Value of k (`sym` or a rational).
    #[arg(long, global = true, default_value = "sym")]
    pub k: ParamValue,

    /// Degree bound D: checks range over y^m x^n with m, n <= D.
    #[arg(long, global = true, default_value_t = 3)]
    pub degree: u32,

    /// Truncation order N for series in t.
    #[arg(long, global = true, default_value_t = homore_core::deformation::DEFAULT_ORDER)]
    pub order: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl CliConfig {
    fn eval_config(&self, product: ProductMode) -> Result<EvalConfig, Error> {
        EvalConfig::new(
            self.algebra.into(),
            product,
            self.q.scalar(ParamScalar::q()),
            self.k.scalar(ParamScalar::k()),
        )
    }

    fn preset(&self) -> Result<AlgebraPreset, Error> {
        Ok(self.eval_config(ProductMode::Star)?.handle().preset().clone())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of an expression.
    Eval { expr: String },
    /// a(bc) - (ab)c.
    Associator { a: String, b: String, c: String },
    /// alpha(a)(bc) - (ab)alpha(c).
    HomAssociator { a: String, b: String, c: String },
    /// ab - ba.
    Bracket { a: String, b: String },
    /// Run exhaustive checks: assoc, hom-assoc, hom-jacobi, anti-comm,
    /// weak-unit, alpha-mult, bridge, hom-assoc-deform, hom-lie-deform.
    Check {
        #[arg(required = true)]
        names: Vec<String>,
        /// Candidate weak unit for `weak-unit`.
        #[arg(long, default_value = "1")]
        unit: String,
    },
    /// Expand alpha_t of an element (evaluated with the associative product).
    DeformExpand { expr: String },
    /// Compare both readings of the quantum-plane relation x*y = k*q*y*x.
    RelationAudit,
}

/// Parsed check name: an identity on a product handle or a deformation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    Identity(Identity),
    Deformation(DeformationCheck),
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.parse::<Identity>()
            .map(CheckName::Identity)
            .or_else(|_| s.parse::<DeformationCheck>().map(CheckName::Deformation))
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Run the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut io = Io { out, err };
    match execute(&cli, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli, io: &mut Io<'_>) -> Result<i32, Error> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Eval { expr } => {
            let ec = cfg.eval_config(cfg.product.into())?;
            let value = evaluate(expr, &ec, io)?;
            emit_value(cfg, io, "eval", &[expr], &value);
            Ok(EXIT_OK)
        }
        Command::Associator { a, b, c } | Command::HomAssociator { a, b, c } => {
            let ec = cfg.eval_config(cfg.product.into())?;
            let (va, vb, vc) = (evaluate(a, &ec, io)?, evaluate(b, &ec, io)?, evaluate(c, &ec, io)?);
            let (name, value) = match cli.command {
                Command::Associator { .. } => ("associator", associator(&va, &vb, &vc, ec.handle())),
                _ => ("hom-associator", hom_associator(&va, &vb, &vc, ec.handle())),
            };
            emit_value(cfg, io, name, &[a, b, c], &value);
            Ok(EXIT_OK)
        }
        Command::Bracket { a, b } => {
            let ec = cfg.eval_config(cfg.product.into())?;
            let (va, vb) = (evaluate(a, &ec, io)?, evaluate(b, &ec, io)?);
            emit_value(cfg, io, "bracket", &[a, b], &bracket(&va, &vb, ec.handle()));
            Ok(EXIT_OK)
        }
        Command::Check { names, unit } => run_checks(cfg, names, unit, io),
        Command::DeformExpand { expr } => {
            let ec = cfg.eval_config(ProductMode::Assoc)?;
            let value = evaluate(expr, &ec, io)?;
            let series = alpha_t(&value, cfg.order)?;
            match cfg.format {
                Format::Text => {
                    let _ = writeln!(io.out, "{series}");
                }
                Format::Json => {
                    let layers: Vec<_> = series
                        .layers()
                        .map(|(i, p)| json!({"t": i, "coefficient": p.to_string()}))
                        .collect();
                    let record = json!({
                        "command": "deform-expand",
                        "input": expr,
                        "order": cfg.order,
                        "result": series.to_string(),
                        "layers": layers,
                    });
                    let _ = writeln!(io.out, "{record}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::RelationAudit => relation_audit(cfg, io),
    }
}

fn evaluate(src: &str, cfg: &EvalConfig, io: &mut Io<'_>) -> Result<OrePoly, Error> {
    let evaluated = eval_str(src, cfg)?;
    for d in &evaluated.diagnostics {
        let _ = writeln!(io.err, "{d}");
    }
    Ok(evaluated.value)
}

fn emit_value(cfg: &CliConfig, io: &mut Io<'_>, command: &str, inputs: &[&String], value: &OrePoly) {
    match cfg.format {
        Format::Text => {
            let _ = writeln!(io.out, "{value}");
        }
        Format::Json => {
            let record = json!({
                "command": command,
                "algebra": PresetName::from(cfg.algebra).as_str(),
                "product": ProductMode::from(cfg.product).as_str(),
                "inputs": inputs,
                "result": value.to_string(),
            });
            let _ = writeln!(io.out, "{record}");
        }
    }
}

fn emit_report(cfg: &CliConfig, io: &mut Io<'_>, report: &CheckReport) {
    match cfg.format {
        Format::Text => {
            let _ = writeln!(io.out, "{report}");
        }
        Format::Json => {
            let line = serde_json::to_string(report).expect("reports serialize");
            let _ = writeln!(io.out, "{line}");
        }
    }
}

fn run_checks(cfg: &CliConfig, names: &[String], unit: &str, io: &mut Io<'_>) -> Result<i32, Error> {
    let checks = names
        .iter()
        .map(|n| n.parse::<CheckName>())
        .collect::<Result<Vec<_>, _>>()?;
    let ec = cfg.eval_config(cfg.product.into())?;
    let mut all_passed = true;
    for check in checks {
        let report = match check {
            CheckName::Identity(Identity::WeakUnit) => {
                let e = evaluate(unit, &ec, io)?;
                certify_weak_unit(&e, ec.handle(), cfg.degree)
            }
            CheckName::Identity(id) => certify(id, ec.handle(), cfg.degree),
            CheckName::Deformation(which) => check_deformation(&cfg.preset()?, which, cfg.degree, cfg.order)?,
        };
        all_passed &= report.passed;
        emit_report(cfg, io, &report);
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[derive(Serialize)]
struct Reading {
    reading: &'static str,
    rhs: String,
    holds: bool,
    difference: String,
}

/// The relation `x * y = k q y * x` read with `y * x` as the monomial `yx`
/// and as the star product of `y` and `x`.
fn relation_audit(cfg: &CliConfig, io: &mut Io<'_>) -> Result<i32, Error> {
    let ec = EvalConfig::new(
        PresetName::QuantumPlane,
        ProductMode::Star,
        cfg.q.scalar(ParamScalar::q()),
        cfg.k.scalar(ParamScalar::k()),
    )?;
    let h = ec.handle();
    let (x, y) = (OrePoly::x(), OrePoly::y());
    let lhs = h.mul(&x, &y);
    let kq = ec.k() * ec.q();
    let readings = [
        ("monomial", "k*q*(yx)", OrePoly::monomial(kq.clone(), 1, 1)),
        ("star", "k*q*(y*x)", h.mul(&y, &x).scale(&kq)),
    ]
    .map(|(reading, label, rhs)| {
        let difference = &lhs - &rhs;
        (
            label,
            Reading {
                reading,
                rhs: rhs.to_string(),
                holds: difference.is_zero(),
                difference: difference.to_string(),
            },
        )
    });
    match cfg.format {
        Format::Text => {
            let _ = writeln!(io.out, "relation x*y = k*q*y*x in quantum-plane (star product)");
            let _ = writeln!(io.out, "  x*y = {lhs}");
            for (label, r) in &readings {
                let verdict = if r.holds {
                    "holds".to_string()
                } else {
                    format!("differs by {}", r.difference)
                };
                let _ = writeln!(io.out, "  reading {:<8} {label} = {}: {verdict}", r.reading, r.rhs);
            }
        }
        Format::Json => {
            let record = json!({
                "command": "relation-audit",
                "relation": "x*y = k*q*y*x",
                "lhs": lhs.to_string(),
                "readings": readings.iter().map(|(_, r)| r).collect::<Vec<_>>(),
            });
            let _ = writeln!(io.out, "{record}");
        }
    }
    Ok(EXIT_OK)
}
