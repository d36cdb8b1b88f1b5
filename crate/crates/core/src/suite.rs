//! Suite configuration, validation and execution.
//!
//! A suite is a JSON document listing inequality cases over the holomorphic
//! catalog (plus user-supplied maps). Every problem in a config is reported at
//! once before anything runs, and the JSON payload of a run depends only on the
//! config and the seed.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, Codomain, HoloFunction};
use crate::disk::DiskPoint;
use crate::error::{Error, Result};
use crate::format::{complex15, sig15};
use crate::verify::{self, InequalityCase, SampleSpec, Scheme, Status, Target, Tolerance, VerificationReport};
use crate::weights::{GridSpec, Weight, WeightFamily, WeightSpec};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 0x5eed_2024;
/// Environment variable overriding the seed of a config.
pub const SEED_ENV: &str = "SCHWARZ_SEED";

/// Radius up to which catalog entries are re-validated before a run.
const VALIDATION_RADIUS: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleDefaults {
    #[serde(default = "default_count")]
    pub count: usize,
    #[serde(default = "default_cap")]
    pub radius_cap: f64,
    #[serde(default)]
    pub scheme: Scheme,
}

fn default_count() -> usize {
    10_000
}

fn default_cap() -> f64 {
    0.999
}

impl Default for SampleDefaults {
    fn default() -> Self {
        Self {
            count: default_count(),
            radius_cap: default_cap(),
            scheme: Scheme::UniformDisk,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
}

/// A polar grid of `rings × spokes` points with radii from 0 to `radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarGrid {
    pub rings: usize,
    pub spokes: usize,
    pub radius: f64,
}

impl Default for PolarGrid {
    fn default() -> Self {
        Self {
            rings: 101,
            spokes: 101,
            radius: 0.99,
        }
    }
}

impl PolarGrid {
    fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.rings == 0 || self.spokes == 0 {
            out.push("grid needs at least one ring and one spoke".into());
        }
        if !(self.radius >= 0.0 && DiskPoint::from_parts(self.radius, 0.0).is_ok()) {
            out.push(format!("grid radius {} must lie in [0, 1 - 1e-9)", self.radius));
        }
        out
    }
}

fn kv_factor() -> f64 {
    4.0 / PI
}

fn default_panels() -> usize {
    16
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum CheckSpec {
    ReContraction {
        function: String,
        weight: WeightSpec,
    },
    PointwiseGradient {
        function: String,
        weight: WeightSpec,
        #[serde(default)]
        grid: PolarGrid,
    },
    /// Disk `σ` of the moduli, or Bergman `β` in the slice of `𝔹ⁿ` when `ball_dim` is set.
    ModulusContraction {
        function: String,
        #[serde(default)]
        ball_dim: Option<usize>,
    },
    Pavlovic {
        function: String,
        #[serde(default)]
        grid: PolarGrid,
    },
    KvFactor {
        function: String,
        #[serde(default = "kv_factor")]
        factor: f64,
    },
    SchwarzPick {
        function: String,
    },
    ProofChain {
        function: String,
        weight: WeightSpec,
        #[serde(default = "default_panels")]
        panels: usize,
    },
    /// Uses the suite-level `ball_dims`.
    AbsInequalities,
    /// `factor·lower ≤ upper` on a grid.
    WeightComparison {
        upper: WeightSpec,
        lower: WeightSpec,
        factor: f64,
        grid: GridSpec,
    },
}

impl CheckSpec {
    pub fn name(&self) -> &'static str {
        match self {
            CheckSpec::ReContraction { .. } => "re_contraction",
            CheckSpec::PointwiseGradient { .. } => "pointwise_gradient",
            CheckSpec::ModulusContraction { .. } => "modulus_contraction",
            CheckSpec::Pavlovic { .. } => "pavlovic",
            CheckSpec::KvFactor { .. } => "kv_factor",
            CheckSpec::SchwarzPick { .. } => "schwarz_pick",
            CheckSpec::ProofChain { .. } => "proof_chain",
            CheckSpec::AbsInequalities => "abs_inequalities",
            CheckSpec::WeightComparison { .. } => "weight_comparison",
        }
    }

    fn function(&self) -> Option<&str> {
        match self {
            CheckSpec::ReContraction { function, .. }
            | CheckSpec::PointwiseGradient { function, .. }
            | CheckSpec::ModulusContraction { function, .. }
            | CheckSpec::Pavlovic { function, .. }
            | CheckSpec::KvFactor { function, .. }
            | CheckSpec::SchwarzPick { function }
            | CheckSpec::ProofChain { function, .. } => Some(function),
            CheckSpec::AbsInequalities | CheckSpec::WeightComparison { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub id: String,
    #[serde(flatten)]
    pub check: CheckSpec,
    /// Status the case must end in for the suite to pass.
    #[serde(default = "expect_pass")]
    pub expect: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<Scheme>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius_cap: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Tolerance>,
}

fn expect_pass() -> Status {
    Status::Pass
}

impl CaseSpec {
    pub fn new(id: impl Into<String>, check: CheckSpec) -> Self {
        Self {
            id: id.into(),
            check,
            expect: Status::Pass,
            count: None,
            scheme: None,
            radius_cap: None,
            tolerance: None,
        }
    }

    pub fn expect(mut self, status: Status) -> Self {
        self.expect = status;
        self
    }

    pub fn count(mut self, count: usize) -> Self {
        self.count = Some(count);
        self
    }

    pub fn scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = Some(scheme);
        self
    }

    pub fn tolerance(mut self, tolerance: Tolerance) -> Self {
        self.tolerance = Some(tolerance);
        self
    }
}

fn default_dims() -> Vec<usize> {
    vec![1, 2, 3]
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub schema_version: u32,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub sample: SampleDefaults,
    #[serde(default = "default_dims")]
    pub ball_dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
    /// Replaces the default violation tolerance of every case without its own.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Tolerance>,
    /// User maps, available to cases next to the built-in catalog.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functions: Vec<HoloFunction>,
    pub cases: Vec<CaseSpec>,
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(vec![format!("parse error: {e}")]))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(vec![format!("cannot read {}: {e}", path.display())]))?;
        Self::from_json(&text)
    }

    /// Applies a seed taken from [`SEED_ENV`], if set.
    pub fn apply_env_seed(&mut self) -> Result<()> {
        if let Ok(v) = std::env::var(SEED_ENV) {
            self.seed = v
                .trim()
                .parse()
                .map_err(|_| Error::Config(vec![format!("{SEED_ENV}={v:?} is not an unsigned 64-bit integer")]))?;
        }
        Ok(())
    }

    /// The full theorem suite over the built-in catalog.
    pub fn default_suite() -> Self {
        let weights: [(&str, WeightSpec); 3] = [
            ("strip", WeightSpec::Strip),
            ("half_plane", WeightSpec::HalfPlane),
            ("sinh", WeightSpec::Family(WeightFamily::sinh_unit())),
        ];
        let mut cases = Vec::new();
        for f in catalog::catalog() {
            let id = f.id.as_str();
            let function = || f.id.clone();
            for (wname, w) in &weights {
                let domain = w.build().expect("built-in weights are valid").domain();
                if !verify::interval_within(f.codomain.re_interval(), domain) {
                    continue;
                }
                cases.push(CaseSpec::new(
                    format!("re/{id}/{wname}"),
                    CheckSpec::ReContraction {
                        function: function(),
                        weight: *w,
                    },
                ));
                cases.push(CaseSpec::new(
                    format!("gradient/{id}/{wname}"),
                    CheckSpec::PointwiseGradient {
                        function: function(),
                        weight: *w,
                        grid: PolarGrid::default(),
                    },
                ));
                cases.push(
                    CaseSpec::new(
                        format!("chain/{id}/{wname}"),
                        CheckSpec::ProofChain {
                            function: function(),
                            weight: *w,
                            panels: default_panels(),
                        },
                    )
                    .count(2000)
                    .tolerance(Tolerance::absolute(1e-6)),
                );
            }
            if f.codomain.is_bounded_by_one() {
                let ball_dim = match f.codomain {
                    Codomain::BallSlice { dim } => Some(dim),
                    _ => None,
                };
                cases.push(CaseSpec::new(
                    format!("modulus/{id}"),
                    CheckSpec::ModulusContraction {
                        function: function(),
                        ball_dim,
                    },
                ));
                cases.push(CaseSpec::new(
                    format!("pavlovic/{id}"),
                    CheckSpec::Pavlovic {
                        function: function(),
                        grid: PolarGrid::default(),
                    },
                ));
                cases.push(CaseSpec::new(format!("schwarz_pick/{id}"), CheckSpec::SchwarzPick { function: function() }));
            }
            if f.codomain.re_interval().hi() <= 1.0 {
                cases.push(
                    CaseSpec::new(
                        format!("kv/{id}"),
                        CheckSpec::KvFactor {
                            function: function(),
                            factor: kv_factor(),
                        },
                    )
                    .count(100_000)
                    .scheme(Scheme::BoundaryBiased),
                );
            }
        }
        cases.push(
            CaseSpec::new("abs", CheckSpec::AbsInequalities)
                .count(100_000)
                .tolerance(Tolerance::absolute(1e-12)),
        );
        cases.push(CaseSpec::new(
            "comparison/strip_vs_hyperbolic_interval",
            CheckSpec::WeightComparison {
                upper: WeightSpec::Strip,
                lower: WeightSpec::HyperbolicInterval,
                factor: FRAC_PI_4,
                grid: GridSpec::with_range(10_000, -1.0 + 1e-6, 1.0 - 1e-6),
            },
        ));
        cases.push(
            CaseSpec::new(
                "gate/identity/hyperbolic_interval",
                CheckSpec::ReContraction {
                    function: "identity".into(),
                    weight: WeightSpec::HyperbolicInterval,
                },
            )
            .expect(Status::HypothesisNotMet),
        );
        Self {
            schema_version: SCHEMA_VERSION,
            seed: DEFAULT_SEED,
            sample: SampleDefaults::default(),
            ball_dims: default_dims(),
            threads: None,
            output: None,
            tolerance: None,
            functions: Vec::new(),
            cases,
        }
    }

    /// Checks everything and resolves names; all problems are returned together.
    pub fn resolve(&self) -> Result<Vec<ResolvedCase>> {
        let mut problems = Vec::new();
        if self.schema_version != SCHEMA_VERSION {
            problems.push(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        if let Err(e) = SampleSpec::new(self.sample.count, self.seed, self.sample.radius_cap, self.sample.scheme) {
            problems.push(format!("sample: {e}"));
        }
        for &n in &self.ball_dims {
            if !(1..=8).contains(&n) {
                problems.push(format!("ball_dims: {n} is outside 1..=8"));
            }
        }
        if self.threads == Some(0) {
            problems.push("threads must be at least 1".into());
        }
        if let Some(t) = &self.tolerance {
            problems.extend(tolerance_problems("tolerance", t));
        }
        if self.cases.is_empty() {
            problems.push("cases: at least one case is required".into());
        }

        let mut functions: BTreeMap<String, HoloFunction> =
            catalog::catalog().into_iter().map(|f| (f.id.clone(), f)).collect();
        for f in &self.functions {
            if functions.contains_key(&f.id) {
                problems.push(format!("functions: id {:?} is already defined", f.id));
            } else {
                functions.insert(f.id.clone(), f.clone());
            }
        }

        let mut seen = BTreeSet::new();
        let mut resolved = Vec::new();
        for (i, case) in self.cases.iter().enumerate() {
            let label = format!("cases[{i}] ({})", case.id);
            if case.id.is_empty() {
                problems.push(format!("{label}: id must not be empty"));
            }
            if !seen.insert(case.id.clone()) {
                problems.push(format!("{label}: duplicate id"));
            }
            match self.resolve_case(case, &functions) {
                Ok(r) => resolved.push(r),
                Err(errs) => problems.extend(errs.into_iter().map(|e| format!("{label}: {e}"))),
            }
        }
        if problems.is_empty() {
            Ok(resolved)
        } else {
            Err(Error::Config(problems))
        }
    }

    fn resolve_case(&self, case: &CaseSpec, functions: &BTreeMap<String, HoloFunction>) -> std::result::Result<ResolvedCase, Vec<String>> {
        let mut problems = Vec::new();
        let sample = SampleSpec {
            count: case.count.unwrap_or(self.sample.count),
            seed: self.seed,
            radius_cap: case.radius_cap.unwrap_or(self.sample.radius_cap),
            scheme: case.scheme.unwrap_or(self.sample.scheme),
        };
        if let Err(e) = sample.validate() {
            problems.push(e.to_string());
        }
        let tolerance = case.tolerance.or(self.tolerance).unwrap_or_default();
        problems.extend(tolerance_problems("tolerance", &tolerance));

        let function = case.check.function().and_then(|id| match functions.get(id) {
            Some(f) => Some(f.clone()),
            None => {
                problems.push(format!("unknown function {id:?}"));
                None
            }
        });
        fn weight_of(spec: &WeightSpec, problems: &mut Vec<String>) -> Option<Weight> {
            spec.build().map_err(|e| problems.push(format!("weight: {e}"))).ok()
        }

        let job = match &case.check {
            CheckSpec::ReContraction { weight: w, .. } => weight_of(w, &mut problems).map(|w| Job::Re(Target::Weight(w))),
            CheckSpec::PointwiseGradient { weight: w, grid, .. } => {
                problems.extend(grid.problems());
                weight_of(w, &mut problems).map(|w| Job::Gradient(Target::Weight(w), *grid))
            }
            CheckSpec::ProofChain { weight: w, panels, .. } => {
                if *panels == 0 {
                    problems.push("panels must be at least 1".into());
                }
                weight_of(w, &mut problems).map(|w| Job::Chain(Target::Weight(w), *panels))
            }
            CheckSpec::ModulusContraction { ball_dim, .. } => match ball_dim {
                Some(n) if !(1..=8).contains(n) => {
                    problems.push(format!("ball_dim {n} is outside 1..=8"));
                    None
                }
                Some(dim) => Some(Job::Modulus(Target::BallBeta { dim: *dim })),
                None => Some(Job::Modulus(Target::DiskSigma)),
            },
            CheckSpec::Pavlovic { grid, .. } => {
                problems.extend(grid.problems());
                Some(Job::Pavlovic(*grid))
            }
            CheckSpec::KvFactor { factor, .. } => {
                if !(factor.is_finite() && *factor > 0.0) {
                    problems.push(format!("factor {factor} must be positive"));
                }
                Some(Job::Kv(*factor))
            }
            CheckSpec::SchwarzPick { .. } => Some(Job::SchwarzPick),
            CheckSpec::AbsInequalities => {
                if self.ball_dims.is_empty() {
                    problems.push("abs_inequalities needs a nonempty ball_dims".into());
                }
                Some(Job::Abs(self.ball_dims.clone()))
            }
            CheckSpec::WeightComparison { upper, lower, factor, grid } => {
                if !(factor.is_finite() && *factor > 0.0) {
                    problems.push(format!("factor {factor} must be positive"));
                }
                if grid.points == 0 {
                    problems.push("grid needs at least one point".into());
                }
                match (weight_of(upper, &mut problems), weight_of(lower, &mut problems)) {
                    (Some(u), Some(l)) => {
                        if u.domain() != l.domain() {
                            problems.push(format!("weights live on different intervals {} and {}", u.domain(), l.domain()));
                        }
                        Some(Job::Comparison(u, l, *factor, *grid))
                    }
                    _ => None,
                }
            }
        };

        let inequality = match (&function, &job) {
            (Some(f), Some(job)) => {
                let target = match job {
                    Job::Re(t) | Job::Gradient(t, _) | Job::Chain(t, _) | Job::Modulus(t) => t.clone(),
                    Job::Kv(_) => Target::Weight(crate::weights::hyperbolic_interval_weight()),
                    _ => Target::DiskSigma,
                };
                let factor = match job {
                    Job::Kv(c) => *c,
                    _ => 1.0,
                };
                let ineq = InequalityCase::new(case.id.clone(), f.clone(), target)
                    .with_factor(factor)
                    .with_tolerance(tolerance);
                if let Err(e) = ineq.compatible() {
                    problems.push(e.to_string());
                }
                Some(ineq)
            }
            _ => None,
        };

        match (problems.is_empty(), job) {
            (true, Some(job)) => Ok(ResolvedCase {
                id: case.id.clone(),
                check: case.check.name(),
                expect: case.expect,
                sample,
                tolerance,
                inequality,
                job,
            }),
            _ => Err(problems),
        }
    }
}

fn tolerance_problems(label: &str, t: &Tolerance) -> Vec<String> {
    let ok = |x: f64| x.is_finite() && x >= 0.0;
    if ok(t.absolute) && ok(t.relative) {
        Vec::new()
    } else {
        vec![format!("{label}: absolute and relative must be finite and nonnegative")]
    }
}

#[derive(Debug, Clone)]
enum Job {
    Re(Target),
    Gradient(Target, PolarGrid),
    Chain(Target, usize),
    Modulus(Target),
    Pavlovic(PolarGrid),
    Kv(f64),
    SchwarzPick,
    Abs(Vec<usize>),
    Comparison(Weight, Weight, f64, GridSpec),
}

/// A validated case, ready to run.
#[derive(Debug, Clone)]
pub struct ResolvedCase {
    pub id: String,
    pub check: &'static str,
    pub expect: Status,
    pub sample: SampleSpec,
    pub tolerance: Tolerance,
    pub inequality: Option<InequalityCase>,
    job: Job,
}

impl ResolvedCase {
    fn run(&self) -> Result<Vec<VerificationReport>> {
        let ineq = || self.inequality.as_ref().expect("function cases carry an inequality");
        let grid = |g: &PolarGrid| catalog::polar_grid(g.rings, g.spokes, g.radius);
        Ok(match &self.job {
            Job::Re(_) => vec![verify::verify_re_contraction(ineq(), &self.sample)?],
            Job::Gradient(_, g) => vec![verify::verify_pointwise_gradient(ineq(), &grid(g))?],
            Job::Chain(_, panels) => vec![verify::verify_proof_chain(ineq(), &self.sample, *panels)?],
            Job::Modulus(_) => vec![verify::verify_modulus_contraction(ineq(), &self.sample)?],
            Job::Pavlovic(g) => vec![verify::verify_pavlovic(ineq(), &grid(g))?],
            Job::Kv(_) => vec![verify::verify_kv_factor(ineq(), &self.sample)?],
            Job::SchwarzPick => vec![verify::verify_schwarz_pick(ineq(), &self.sample)?],
            Job::Abs(dims) => verify::verify_abs_inequalities(&self.id, &self.sample, dims, self.tolerance)?,
            Job::Comparison(u, l, c, g) => vec![verify::verify_weight_comparison(&self.id, u, l, *c, g, self.tolerance)?],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub id: String,
    pub check: String,
    pub expect: Status,
    pub status: Status,
    pub as_expected: bool,
    pub reports: Vec<VerificationReport>,
}

/// Everything that depends only on the config and the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuitePayload {
    pub schema_version: u32,
    pub seed: u64,
    pub passed: bool,
    pub cases: Vec<CaseOutcome>,
}

/// Run facts that vary between executions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub crate_version: String,
    pub threads: usize,
    pub wall_time_seconds: f64,
    pub case_wall_time_seconds: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub payload: SuitePayload,
    pub metadata: RunMetadata,
}

impl SuiteReport {
    pub fn payload_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.payload)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One row per sample of every case: `case_id,index,z,w,lhs,rhs,margin`.
    pub fn samples_csv(&self) -> String {
        let mut out = String::from("case_id,index,z,w,lhs,rhs,margin\n");
        let join = |v: &[num_complex::Complex64]| v.iter().map(|c| complex15(*c)).collect::<Vec<_>>().join(";");
        for case in &self.payload.cases {
            for r in &case.reports {
                for rec in &r.records {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        r.case_id,
                        rec.index,
                        join(&rec.z),
                        join(&rec.w),
                        sig15(rec.lhs),
                        sig15(rec.rhs),
                        sig15(rec.margin)
                    );
                }
            }
        }
        out
    }

    pub fn write(&self, spec: &OutputSpec) -> Result<()> {
        let body = match spec.format {
            OutputFormat::Json => self.to_json()?,
            OutputFormat::Csv => self.samples_csv(),
        };
        std::fs::write(&spec.path, body)?;
        Ok(())
    }

    /// Fixed-width summary, one line per report.
    pub fn summary_table(&self) -> String {
        summary_table(&self.payload)
    }
}

pub fn summary_table(payload: &SuitePayload) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<48} {:<18} {:>8} {:>22} {:>10}", "case", "status", "samples", "min_margin", "violations");
    for case in &payload.cases {
        for r in &case.reports {
            let status = match (r.status, case.as_expected) {
                (s, true) => format!("{s:?}"),
                (s, false) => format!("{s:?} (!)"),
            };
            let _ = writeln!(
                out,
                "{:<48} {:<18} {:>8} {:>22} {:>10}",
                r.case_id,
                status,
                r.samples,
                r.min_margin.map(sig15).unwrap_or_else(|| "-".into()),
                r.violations.len()
            );
        }
    }
    let verdict = if payload.passed { "PASS" } else { "FAIL" };
    let n = payload.cases.len();
    let noun = if n == 1 { "case" } else { "cases" };
    let _ = writeln!(out, "suite {verdict}: {n} {noun}, seed {}", payload.seed);
    out
}

fn combined_status(reports: &[VerificationReport]) -> Status {
    [Status::Defect, Status::HypothesisNotMet, Status::Fail]
        .into_iter()
        .find(|s| reports.iter().any(|r| r.status == *s))
        .unwrap_or(Status::Pass)
}

/// Validates `config`, re-checks every map it uses against its declared
/// codomain, then runs all cases on a pool of `threads` workers
/// (config value, then the rayon default, when `None`).
pub fn run_suite(config: &SuiteConfig, threads: Option<usize>) -> Result<SuiteReport> {
    let cases = config.resolve()?;
    let threads = threads.or(config.threads).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot build thread pool: {e}")))?;
    let started = Instant::now();

    let mut defects: BTreeMap<String, String> = BTreeMap::new();
    for f in cases.iter().filter_map(|c| c.inequality.as_ref()).map(|i| &i.function) {
        if defects.contains_key(&f.id) {
            continue;
        }
        let v = pool.install(|| catalog::validate(f, VALIDATION_RADIUS));
        if !v.passes {
            defects.insert(
                f.id.clone(),
                format!(
                    "{} failed validation: {} codomain violations, derivative error {}",
                    f.id,
                    v.codomain_violations,
                    sig15(v.max_derivative_error)
                ),
            );
        }
    }

    let mut outcomes = Vec::with_capacity(cases.len());
    let mut times = BTreeMap::new();
    for case in &cases {
        let t0 = Instant::now();
        let defect = case.inequality.as_ref().and_then(|i| defects.get(&i.function.id));
        let reports = match defect {
            Some(msg) => vec![defect_report(case, msg.clone())],
            None => match pool.install(|| case.run()) {
                Ok(r) => r,
                Err(e) => vec![defect_report(case, e.to_string())],
            },
        };
        times.insert(case.id.clone(), t0.elapsed().as_secs_f64());
        let status = combined_status(&reports);
        outcomes.push(CaseOutcome {
            id: case.id.clone(),
            check: case.check.to_string(),
            expect: case.expect,
            status,
            as_expected: status == case.expect,
            reports,
        });
    }

    Ok(SuiteReport {
        payload: SuitePayload {
            schema_version: SCHEMA_VERSION,
            seed: config.seed,
            passed: outcomes.iter().all(|c| c.as_expected),
            cases: outcomes,
        },
        metadata: RunMetadata {
            crate_version: env!("CARGO_PKG_VERSION").into(),
            threads: pool.current_num_threads(),
            wall_time_seconds: started.elapsed().as_secs_f64(),
            case_wall_time_seconds: times,
        },
    })
}

fn defect_report(case: &ResolvedCase, message: String) -> VerificationReport {
    let mut r: VerificationReport = serde_json::from_value(serde_json::json!({
        "case_id": case.id,
        "check": case.check,
        "subject": case.inequality.as_ref().map(|i| i.function.id.clone()).unwrap_or_default(),
        "status": Status::Defect,
        "samples": 0,
        "min_margin": null,
        "mean_margin": null,
        "argmin": null,
        "violations": [],
        "tolerance": case.tolerance,
        "seed": case.sample.seed,
        "observations": {},
        "message": null,
    }))
    .expect("report literal matches its schema");
    r.message = Some(message);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(cases: Vec<CaseSpec>) -> SuiteConfig {
        SuiteConfig {
            sample: SampleDefaults {
                count: 300,
                ..SampleDefaults::default()
            },
            cases,
            ..SuiteConfig::default_suite()
        }
    }

    #[test]
    fn default_suite_resolves() {
        let c = SuiteConfig::default_suite();
        let resolved = c.resolve().unwrap();
        assert_eq!(resolved.len(), c.cases.len());
        let ids: BTreeSet<_> = c.cases.iter().map(|c| c.id.as_str()).collect();
        for id in ["re/strip_map/strip", "re/cayley/half_plane", "re/cayley_square/sinh", "kv/strip_map", "abs", "gate/identity/hyperbolic_interval"] {
            assert!(ids.contains(id), "{id}");
        }
        assert!(!ids.contains("re/cayley/strip"));
    }

    #[test]
    fn config_round_trips_through_json() {
        let c = SuiteConfig::default_suite();
        let text = serde_json::to_string_pretty(&c).unwrap();
        assert_eq!(SuiteConfig::from_json(&text).unwrap(), c);
    }

    #[test]
    fn all_problems_are_reported_together() {
        let text = r#"{
            "schema_version": 7,
            "sample": {"count": 0, "radius_cap": 1.5},
            "ball_dims": [0, 9],
            "threads": 0,
            "cases": [
                {"id": "a", "check": "re_contraction", "function": "nope", "weight": "strip"},
                {"id": "a", "check": "re_contraction", "function": "cayley", "weight": "strip"},
                {"id": "b", "check": "schwarz_pick", "function": "strip_map"},
                {"id": "c", "check": "pointwise_gradient", "function": "identity", "weight": "strip", "grid": {"rings": 0, "spokes": 3, "radius": 2.0}}
            ]
        }"#;
        let err = SuiteConfig::from_json(text).unwrap().resolve().unwrap_err();
        let Error::Config(list) = err else { panic!("{err:?}") };
        let joined = list.join("\n");
        for needle in ["schema_version", "sample", "ball_dims: 0", "ball_dims: 9", "threads", "unknown function", "duplicate id", "outside the weight interval", "disk-valued", "ring", "grid radius"] {
            assert!(joined.contains(needle), "missing {needle:?} in\n{joined}");
        }
    }

    #[test]
    fn unknown_fields_and_bad_json_are_config_errors() {
        assert!(matches!(SuiteConfig::from_json("{"), Err(Error::Config(_))));
        assert!(matches!(
            SuiteConfig::from_json(r#"{"schema_version": 1, "cases": [], "bogus": 1}"#),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn user_rational_maps_join_the_catalog() {
        let text = r#"{
            "schema_version": 1,
            "sample": {"count": 500},
            "functions": [
                {"id": "half_z_plus", "codomain": {"type": "disk"}, "kind": "rational",
                 "numerator": [[0.1, 0.0], [0.5, 0.0]], "denominator": [[1.0, 0.0]]},
                {"id": "lying", "codomain": {"type": "disk"}, "kind": "monomial", "c": [2.0, 0.0], "d": 1}
            ],
            "cases": [
                {"id": "sp", "check": "schwarz_pick", "function": "half_z_plus"},
                {"id": "re", "check": "re_contraction", "function": "half_z_plus", "weight": "strip"},
                {"id": "bad", "check": "schwarz_pick", "function": "lying"}
            ]
        }"#;
        let report = run_suite(&SuiteConfig::from_json(text).unwrap(), Some(2)).unwrap();
        let status: Vec<_> = report.payload.cases.iter().map(|c| c.status).collect();
        assert_eq!(status, [Status::Pass, Status::Pass, Status::Defect]);
        assert!(!report.payload.passed);
    }

    #[test]
    fn expectations_drive_the_verdict() {
        let gate = CaseSpec::new(
            "gate",
            CheckSpec::ReContraction {
                function: "identity".into(),
                weight: WeightSpec::HyperbolicInterval,
            },
        );
        let r = run_suite(&small(vec![gate.clone()]), Some(1)).unwrap();
        assert_eq!(r.payload.cases[0].status, Status::HypothesisNotMet);
        assert!(!r.payload.passed);
        let r = run_suite(&small(vec![gate.expect(Status::HypothesisNotMet)]), Some(1)).unwrap();
        assert!(r.payload.passed);
    }

    #[test]
    fn payload_is_independent_of_threads() {
        let cases = vec![
            CaseSpec::new("m", CheckSpec::ModulusContraction { function: "blaschke_product".into(), ball_dim: None }),
            CaseSpec::new("abs", CheckSpec::AbsInequalities),
        ];
        let cfg = small(cases);
        let a = run_suite(&cfg, Some(1)).unwrap();
        let b = run_suite(&cfg, Some(3)).unwrap();
        assert_eq!(a.payload_json().unwrap(), b.payload_json().unwrap());
        assert_eq!(a.samples_csv(), b.samples_csv());
        assert_eq!(a.metadata.threads, 1);
        assert_eq!(b.metadata.threads, 3);
    }

    #[test]
    fn seed_changes_samples() {
        let cases = vec![CaseSpec::new("sp", CheckSpec::SchwarzPick { function: "square".into() })];
        let mut cfg = small(cases);
        let a = run_suite(&cfg, Some(1)).unwrap();
        cfg.seed += 1;
        let b = run_suite(&cfg, Some(1)).unwrap();
        assert_ne!(a.payload.cases[0].reports[0].min_margin, b.payload.cases[0].reports[0].min_margin);
    }

    #[test]
    fn csv_lists_every_sample() {
        let cfg = small(vec![CaseSpec::new("sp", CheckSpec::SchwarzPick { function: "square".into() })]);
        let r = run_suite(&cfg, Some(1)).unwrap();
        let csv = r.samples_csv();
        assert_eq!(csv.lines().count(), 301);
        assert!(csv.starts_with("case_id,index,z,w,lhs,rhs,margin\nsp,0,"));
    }

    #[test]
    fn report_json_round_trips() {
        let cfg = small(vec![CaseSpec::new("pv", CheckSpec::Pavlovic { function: "square".into(), grid: PolarGrid::default() })]);
        let r = run_suite(&cfg, Some(1)).unwrap();
        let back: SuiteReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back.payload_json().unwrap(), r.payload_json().unwrap());
        assert!(r.summary_table().contains("pv"));
    }
}
