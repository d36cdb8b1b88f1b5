//! Command-line front end. [`run`] takes the argument list and output sinks and
//! returns the process exit code: 0 success, 1 a failed or unexpected verdict,
//! 2 usage, input or configuration errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::catalog;
use crate::conformal::{self, DistanceMethod, DistanceOptions, DomainSpec, PlanarDomain};
use crate::error::{Error, Result};
use crate::format::{complex15, sig15};
use crate::ode;
use crate::suite::{self, OutputFormat, OutputSpec, SuiteConfig, SuiteReport};
use crate::weights::{self, GridSpec, WeightFamily, WeightSpec};

#[derive(Debug, Parser)]
#[command(name = "schwarz", version, about = "Hyperbolic metrics and sampled verification of contraction inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite (the built-in one without --config).
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the config seed and the SCHWARZ_SEED environment variable.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        /// Replaces every sample count in the config.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Distance between two points of a planar domain, as JSON.
    Distance {
        #[arg(value_enum)]
        domain: DomainArg,
        #[arg(allow_hyphen_values = true)]
        z: String,
        #[arg(allow_hyphen_values = true)]
        w: String,
        /// Weight of the strip: strip, half_plane, sinh, hyperbolic_interval or JSON.
        #[arg(long, default_value = "strip")]
        weight: String,
        /// Minimise over paths even when a closed form exists.
        #[arg(long)]
        variational: bool,
    },
    /// Tabulate k_ω of a weight or the Gauss curvature of a domain.
    Curvature {
        #[arg(long, conflicts_with = "domain")]
        weight: Option<String>,
        #[arg(long, value_enum)]
        domain: Option<DomainArg>,
        #[arg(long, default_value_t = 11)]
        points: usize,
        /// Real-part range as `lo,hi`.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        /// Imaginary part of domain sample points.
        #[arg(long, default_value_t = 0.25, allow_hyphen_values = true)]
        imag: f64,
    },
    /// Integrate λ″ = e^λ from a closed-form family and compare, as CSV.
    Ode {
        /// strip, half_plane, sinh or a JSON weight family.
        #[arg(long, default_value = "strip")]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        from: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 11)]
        points: usize,
    },
    /// List the holomorphic test maps.
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Summarise a saved suite report.
    Report {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReportFormat {
    Table,
    Csv,
    /// The payload alone, without run metadata.
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Disk,
    #[value(alias = "half_plane")]
    Halfplane,
    Strip,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = match &e {
            Error::Config(list) => json!({ "errors": list }).to_string(),
            other => json!({ "errors": [other.to_string()] }).to_string(),
        };
        Failure { code: 2, message }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: json!({ "errors": [message.into()] }).to_string(),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "{}", f.message);
            }
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    match cmd {
        Command::Verify {
            config,
            seed,
            threads,
            count,
            output,
            format,
        } => cmd_verify(config, seed, threads, count, output, format, out),
        Command::Distance {
            domain,
            z,
            w,
            weight,
            variational,
        } => cmd_distance(domain, &z, &w, &weight, variational, out),
        Command::Curvature {
            weight,
            domain,
            points,
            range,
            imag,
        } => cmd_curvature(weight, domain, points, range, imag, out),
        Command::Ode {
            family,
            from,
            to,
            tol,
            points,
        } => cmd_ode(&family, from, to, tol, points, out),
        Command::Catalog { json } => cmd_catalog(json, out),
        Command::Report { path, format } => cmd_report(path, format, out),
    }
}

/// A closed downstream pipe ends the command quietly.
fn io(e: std::io::Error) -> Failure {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return Failure {
            code: 0,
            message: String::new(),
        };
    }
    Failure::from(Error::Io(e))
}

fn cmd_verify(
    config: Option<PathBuf>,
    seed: Option<u64>,
    threads: Option<usize>,
    count: Option<usize>,
    output: Option<PathBuf>,
    format: Option<Format>,
    out: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    let mut cfg = match &config {
        Some(path) => SuiteConfig::load(path)?,
        None => SuiteConfig::default_suite(),
    };
    cfg.apply_env_seed()?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(n) = count {
        cfg.sample.count = n;
        for c in &mut cfg.cases {
            c.count = c.count.map(|_| n);
        }
    }
    if let Some(path) = output {
        let format = match format {
            Some(Format::Csv) => OutputFormat::Csv,
            Some(Format::Json) => OutputFormat::Json,
            None => cfg.output.as_ref().map(|o| o.format).unwrap_or_default(),
        };
        cfg.output = Some(OutputSpec { path, format });
    } else if let (Some(o), Some(f)) = (cfg.output.as_mut(), format) {
        o.format = match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        };
    }
    let report = suite::run_suite(&cfg, threads)?;
    write!(out, "{}", report.summary_table()).map_err(io)?;
    if let Some(spec) = &cfg.output {
        report.write(spec)?;
    }
    Ok(if report.payload.passed { 0 } else { 1 })
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, Failure> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|_| usage(format!("cannot parse {s:?} as a complex number (e.g. 0.5, -1+2i, 0.3i)")))
}

/// Named weights or a JSON weight spec / family.
pub fn parse_weight(s: &str) -> Result<WeightSpec> {
    match s {
        "strip" => Ok(WeightSpec::Strip),
        "half_plane" | "halfplane" => Ok(WeightSpec::HalfPlane),
        "hyperbolic_interval" => Ok(WeightSpec::HyperbolicInterval),
        "sinh" => Ok(WeightSpec::Family(WeightFamily::sinh_unit())),
        _ => serde_json::from_str::<WeightSpec>(s)
            .or_else(|_| serde_json::from_str::<WeightFamily>(s).map(WeightSpec::Family))
            .map_err(|_| Error::InvalidInput(format!("unknown weight {s:?}"))),
    }
}

/// Named families or a JSON weight family.
pub fn parse_family(s: &str) -> Result<WeightFamily> {
    match s {
        "strip" => Ok(WeightFamily::strip()),
        "half_plane" | "halfplane" => Ok(WeightFamily::half_plane()),
        "sinh" => Ok(WeightFamily::sinh_unit()),
        _ => serde_json::from_str(s).map_err(|_| Error::InvalidInput(format!("unknown weight family {s:?}"))),
    }
}

fn domain_spec(d: DomainArg, weight: &str) -> Result<DomainSpec> {
    Ok(match d {
        DomainArg::Disk => DomainSpec::Disk,
        DomainArg::Halfplane => DomainSpec::HalfPlane,
        DomainArg::Strip => DomainSpec::Strip(parse_weight(weight)?),
    })
}

/// Rounds to the 15 significant digits used for every printed number.
fn rounded(x: f64) -> f64 {
    sig15(x).parse().unwrap_or(x)
}

fn cmd_distance(d: DomainArg, z: &str, w: &str, weight: &str, variational: bool, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let domain = domain_spec(d, weight)?.build()?;
    let (z, w) = (parse_complex(z)?, parse_complex(w)?);
    let opts = DistanceOptions {
        force_variational: variational,
        ..DistanceOptions::default()
    };
    let r = conformal::distance_with(&domain, z, w, &opts)?;
    let method = match r.method {
        DistanceMethod::ClosedForm => "closed_form",
        DistanceMethod::Variational => "variational",
    };
    let mut body = json!({
        "value": rounded(r.value),
        "method": method,
        "iterations": r.certificate.as_ref().map(|c| c.iterations),
    });
    if let Some(c) = &r.certificate {
        body["gradient_norm"] = json!(rounded(c.gradient_norm));
        body["converged"] = json!(c.converged);
    }
    writeln!(out, "{body}").map_err(io)?;
    Ok(0)
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), Failure> {
    let bad = || usage(format!("range {s:?} must look like lo,hi with lo < hi"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let (lo, hi): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if lo < hi {
        Ok((lo, hi))
    } else {
        Err(bad())
    }
}

fn cmd_curvature(
    weight: Option<String>,
    domain: Option<DomainArg>,
    points: usize,
    range: Option<String>,
    imag: f64,
    out: &mut dyn Write,
) -> std::result::Result<i32, Failure> {
    if points == 0 {
        return Err(usage("--points must be at least 1"));
    }
    let range = range.as_deref().map(parse_range).transpose()?;
    if let Some(d) = domain {
        let planar = domain_spec(d, weight.as_deref().unwrap_or("strip"))?.build()?;
        let (lo, hi) = range.unwrap_or(match &planar {
            PlanarDomain::PoincareDisk => (-0.9, 0.9),
            PlanarDomain::HalfPlane => (0.1, 5.0),
            PlanarDomain::Strip(w) => {
                let dom = w.domain();
                let c = dom.interior_point();
                let half = if dom.is_bounded() { 0.45 * (dom.hi() - dom.lo()) } else { 0.9 };
                (c - half, c + half)
            }
        });
        writeln!(out, "# {}", planar.describe()).map_err(io)?;
        writeln!(out, "{:>28} {:>22} {:>22}", "z", "K", "K_numeric").map_err(io)?;
        for t in linspace(lo, hi, points) {
            let z = Complex64::new(t, imag);
            let k = conformal::gauss_curvature(&planar, z)?;
            let kn = conformal::gauss_curvature_numeric(&planar, z).map(sig15).unwrap_or_else(|_| "n/a".into());
            writeln!(out, "{:>28} {:>22} {:>22}", complex15(z), sig15(k), kn).map_err(io)?;
        }
        return Ok(0);
    }
    let w = parse_weight(weight.as_deref().unwrap_or("strip"))?.build()?;
    let grid = match range {
        Some((lo, hi)) => GridSpec::with_range(points, lo, hi),
        None => GridSpec { points, range: None },
    };
    writeln!(out, "# k_ω for ω = {} on {}", w.name(), w.domain()).map_err(io)?;
    writeln!(out, "{:>22} {:>22} {:>22}", "t", "k", "k_numeric").map_err(io)?;
    for t in grid.points(w.domain())? {
        let k = weights::curvature_k(&w, t)?;
        let kn = weights::curvature_k_numeric(&w, t).map(sig15).unwrap_or_else(|_| "n/a".into());
        writeln!(out, "{:>22} {:>22} {:>22}", sig15(t), sig15(k), kn).map_err(io)?;
    }
    Ok(0)
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn cmd_ode(family: &str, from: Option<f64>, to: Option<f64>, tol: f64, points: usize, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    if points < 2 {
        return Err(usage("--points must be at least 2"));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    let f = parse_family(family)?;
    weights::family_weight(&f)?;
    let dom = f.interval;
    let c = dom.interior_point();
    let half = if dom.is_bounded() { (0.5f64).min(0.45 * (dom.hi() - dom.lo())) } else { 0.5 };
    let (t0, t1) = (from.unwrap_or(c - half), to.unwrap_or(c + half));
    let initial = ode::LiouvilleState::from_family(&f, t0)?;
    let traj = ode::solve_liouville(initial, t1, tol)?;
    writeln!(out, "t,lambda_num,lambda_exact,err").map_err(io)?;
    for t in linspace(t0, t1, points) {
        let Some(s) = traj.eval(t) else { break };
        let exact = ode::closed_form_lambda(&f, t)?;
        writeln!(out, "{},{},{},{}", sig15(t), sig15(s.lambda), sig15(exact), sig15((s.lambda - exact).abs())).map_err(io)?;
    }
    if let Some(tb) = traj.blow_up() {
        return Err(usage(format!("solution blows up near t = {}", sig15(tb))));
    }
    Ok(0)
}

fn cmd_catalog(as_json: bool, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let entries = catalog::catalog();
    if as_json {
        writeln!(out, "{}", serde_json::to_string_pretty(&entries).map_err(Error::from)?).map_err(io)?;
        return Ok(0);
    }
    writeln!(out, "{:<22} {:<20} params", "id", "codomain").map_err(io)?;
    for f in entries {
        let params = serde_json::to_string(&f.kind).map_err(Error::from)?;
        writeln!(out, "{:<22} {:<20} {params}", f.id, f.codomain.name()).map_err(io)?;
    }
    Ok(0)
}

fn cmd_report(path: PathBuf, format: ReportFormat, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let text = std::fs::read_to_string(&path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let report: SuiteReport = serde_json::from_str(&text).map_err(|e| usage(format!("{} is not a suite report: {e}", path.display())))?;
    match format {
        ReportFormat::Table => write!(out, "{}", report.summary_table()).map_err(io)?,
        ReportFormat::Json => writeln!(out, "{}", report.payload_json()?).map_err(io)?,
        ReportFormat::Csv => {
            writeln!(out, "case_id,check,status,samples,min_margin,mean_margin,violations").map_err(io)?;
            for case in &report.payload.cases {
                for r in &case.reports {
                    let opt = |x: Option<f64>| x.map(sig15).unwrap_or_default();
                    let status = serde_json::to_value(r.status).map_err(Error::from)?;
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        r.case_id,
                        r.check,
                        status.as_str().unwrap_or_default(),
                        r.samples,
                        opt(r.min_margin),
                        opt(r.mean_margin),
                        r.violations.len()
                    )
                    .map_err(io)?;
                }
            }
        }
    }
    Ok(if report.payload.passed { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("schwarz").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn distance_examples() {
        let (code, out, _) = call(&["distance", "disk", "0", "0.5"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], json!(1.09861228866811));
        assert_eq!(v["method"], "closed_form");
        let (_, out, _) = call(&["distance", "halfplane", "1", "2.718281828459045"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn distance_outside_domain_is_a_usage_error() {
        let (code, _, err) = call(&["distance", "disk", "0", "1.5"]);
        assert_eq!(code, 2);
        assert!(serde_json::from_str::<serde_json::Value>(&err).unwrap()["errors"].is_array());
        assert_eq!(call(&["distance", "halfplane", "-1", "1"]).0, 2);
        assert_eq!(call(&["distance", "disk", "zero", "0.1"]).0, 2);
    }

    #[test]
    fn curvature_columns() {
        let (code, out, _) = call(&["curvature", "--weight", "strip"]);
        assert_eq!(code, 0);
        for line in out.lines().skip(2) {
            let k: f64 = line.split_whitespace().nth(1).unwrap().parse().unwrap();
            assert!((k + 1.0).abs() < 1e-8, "{line}");
        }
        let (_, out, _) = call(&["curvature", "--weight", "hyperbolic_interval", "--range", "-0.5,0.5", "--points", "3"]);
        let ks: Vec<f64> = out.lines().skip(2).map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap()).collect();
        assert!((ks[0] + 0.625).abs() < 1e-8 && (ks[1] + 0.5).abs() < 1e-8);
        let (code, out, _) = call(&["curvature", "--domain", "disk"]);
        assert_eq!(code, 0);
        assert!(out.lines().skip(2).all(|l| (l.split_whitespace().nth(1).unwrap().parse::<f64>().unwrap() + 1.0).abs() < 1e-12));
    }

    #[test]
    fn ode_csv() {
        let (code, out, _) = call(&["ode", "--family", "sinh", "--points", "5"]);
        assert_eq!(code, 0, "{out}");
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("t,lambda_num,lambda_exact,err"));
        let rows: Vec<_> = lines.collect();
        assert_eq!(rows.len(), 5);
        for r in rows {
            let err: f64 = r.split(',').nth(3).unwrap().parse().unwrap();
            assert!(err < 1e-6);
        }
        assert_eq!(call(&["ode", "--family", "nonsense"]).0, 2);
    }

    #[test]
    fn catalog_listing() {
        let (code, out, _) = call(&["catalog"]);
        assert_eq!(code, 0);
        assert!(out.contains("strip_map") && out.contains("right_half_plane"));
        let (_, out, _) = call(&["catalog", "--json"]);
        let v: Vec<catalog::HoloFunction> = serde_json::from_str(&out).unwrap();
        assert_eq!(v, catalog::catalog());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["verify", "--config", "/nonexistent/config.json"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn weight_parsing() {
        assert_eq!(parse_weight("strip").unwrap(), WeightSpec::Strip);
        let fam = r#"{"kind": "sinh", "k": 2, "interval": {"lo": 0, "hi": null}}"#;
        assert!(matches!(parse_weight(fam).unwrap(), WeightSpec::Family(f) if f.k == 2.0));
        assert!(parse_weight("nope").is_err());
    }
}
