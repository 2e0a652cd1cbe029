//! Experiment driver: validated run configurations, CSV emission of
//! solutions, sensor readings and diagnostics, and parameter sweeps.
//!
//! Output files (all comma-separated with a header row, LF line endings,
//! floats printed with 17 significant digits so identical configurations
//! produce byte-identical files):
//!   solution.csv     element,node,x,u_numeric,u_reference
//!   sensor.csv       step,element,S1,S3,ratio,alpha
//!   diagnostics.csv  step,t,dt,TV,min,max,troubled_count,entropy,conservation_defect
//!   summary.txt      one line with the L1/L2/Linf errors and the final range
//!   config.txt       the canonical key=value form of the configuration

use std::cell::Cell;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::rc::Rc;

use crate::bernstein::BoundsSpec;
use crate::capture::{ApplyPoint, CaptureConfig};
use crate::error::{Error, Result};
use crate::problems::{
    burgers_characteristic, burgers_initial_prime, default_kappa, error_norms, exact_advection,
    fv_reference, make_problem, FVOracleConfig, FvProfile, Norm, ProblemId, ProblemSpec,
    ReferenceKind, RefSolution,
};
use crate::run::run_observed;
use crate::sensor::SensorConfig;
use crate::solver::{ElementBasis, Mesh, RunConfig, SolutionState};

/// Environment variable that, when set, becomes the root for relative
/// output directories.
pub const OUTPUT_ROOT_ENV: &str = "BERNSTEIN_DG_OUT";

/// Which post-processing filter an experiment runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FilterKind {
    None,
    #[default]
    Bernstein,
    Mean,
}

impl FilterKind {
    pub fn name(&self) -> &'static str {
        match self {
            FilterKind::None => "none",
            FilterKind::Bernstein => "bernstein",
            FilterKind::Mean => "mean",
        }
    }
}

impl std::str::FromStr for FilterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(FilterKind::None),
            "bernstein" => Ok(FilterKind::Bernstein),
            "mean" => Ok(FilterKind::Mean),
            other => Err(Error::Config(format!("unknown filter '{other}'"))),
        }
    }
}

/// Reference-solution override for error reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReferenceChoice {
    /// Closed form for advection, characteristics for pre-break Burgers,
    /// the FV oracle otherwise.
    #[default]
    Auto,
    ClosedForm,
    Characteristics,
    FvOracle,
}

impl ReferenceChoice {
    pub fn name(&self) -> &'static str {
        match self {
            ReferenceChoice::Auto => "auto",
            ReferenceChoice::ClosedForm => "closed-form",
            ReferenceChoice::Characteristics => "characteristics",
            ReferenceChoice::FvOracle => "fv-oracle",
        }
    }
}

impl std::str::FromStr for ReferenceChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(ReferenceChoice::Auto),
            "closed-form" | "closedform" | "exact" => Ok(ReferenceChoice::ClosedForm),
            "characteristics" => Ok(ReferenceChoice::Characteristics),
            "fv-oracle" | "fv" | "oracle" => Ok(ReferenceChoice::FvOracle),
            other => Err(Error::Config(format!("unknown reference '{other}'"))),
        }
    }
}

/// A fully specified experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problem: ProblemId,
    pub degree: usize,
    pub elements: usize,
    pub kappa: f64,
    pub t_final: f64,
    pub cfl: f64,
    pub filter: FilterKind,
    pub bounds: Option<(f64, f64)>,
    pub timing: ApplyPoint,
    pub reference: ReferenceChoice,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    /// A configuration with the per-problem default kappa, C = 0.1, the
    /// Bernstein filter applied per stage and the automatic reference.
    pub fn new(
        problem: ProblemId,
        degree: usize,
        elements: usize,
        t_final: f64,
        out_dir: impl Into<PathBuf>,
    ) -> Self {
        ExperimentConfig {
            problem,
            degree,
            elements,
            kappa: default_kappa(problem),
            t_final,
            cfl: 0.1,
            filter: FilterKind::Bernstein,
            bounds: None,
            timing: ApplyPoint::PerStage,
            reference: ReferenceChoice::Auto,
            out_dir: out_dir.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::Config("degree must be at least 1".into()));
        }
        if self.filter != FilterKind::None && self.degree < 3 {
            return Err(Error::Config(
                "the order-3 sensor stencil needs at least 4 nodes (degree >= 3)".into(),
            ));
        }
        if self.elements == 0 {
            return Err(Error::Config("elements must be at least 1".into()));
        }
        if !(0.0 < self.kappa && self.kappa < 1.0) {
            return Err(Error::Config(format!("kappa = {} outside (0, 1)", self.kappa)));
        }
        if !(self.t_final >= 0.0) {
            return Err(Error::Config("tmax must be nonnegative".into()));
        }
        if !(self.cfl > 0.0) {
            return Err(Error::Config("cfl must be positive".into()));
        }
        if let Some((m, max)) = self.bounds {
            if !(m <= max) {
                return Err(Error::Config(format!("bounds {m},{max} need lower <= upper")));
            }
        }
        Ok(())
    }
}

/// Canonical key=value serialisation (fixed key order, one pair per line).
pub fn serialize_config(cfg: &ExperimentConfig) -> String {
    let mut out = String::new();
    out.push_str(&format!("problem={}\n", cfg.problem.name()));
    out.push_str(&format!("degree={}\n", cfg.degree));
    out.push_str(&format!("elements={}\n", cfg.elements));
    out.push_str(&format!("kappa={}\n", cfg.kappa));
    out.push_str(&format!("tmax={}\n", cfg.t_final));
    out.push_str(&format!("cfl={}\n", cfg.cfl));
    out.push_str(&format!("filter={}\n", cfg.filter.name()));
    if let Some((m, max)) = cfg.bounds {
        out.push_str(&format!("bounds={m},{max}\n"));
    }
    let timing = match cfg.timing {
        ApplyPoint::PerStage => "stage",
        ApplyPoint::PerStep => "step",
    };
    out.push_str(&format!("timing={timing}\n"));
    out.push_str(&format!("reference={}\n", cfg.reference.name()));
    out.push_str(&format!("out={}\n", cfg.out_dir.display()));
    out
}

/// Parses the flat key=value configuration format (blank lines and
/// `#` comments ignored; keys may appear in any order).
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut problem = None;
    let mut degree = None;
    let mut elements = None;
    let mut kappa = None;
    let mut t_final = None;
    let mut cfl = 0.1;
    let mut filter = FilterKind::Bernstein;
    let mut bounds = None;
    let mut timing = ApplyPoint::PerStage;
    let mut reference = ReferenceChoice::Auto;
    let mut out_dir = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |what: &str| Error::Config(format!("line {}: bad {what} '{value}'", lineno + 1));
        match key {
            "problem" => problem = Some(value.parse::<ProblemId>()?),
            "degree" => degree = Some(value.parse().map_err(|_| bad("degree"))?),
            "elements" => elements = Some(value.parse().map_err(|_| bad("elements"))?),
            "kappa" => kappa = Some(value.parse().map_err(|_| bad("kappa"))?),
            "tmax" => t_final = Some(value.parse().map_err(|_| bad("tmax"))?),
            "cfl" => cfl = value.parse().map_err(|_| bad("cfl"))?,
            "filter" => filter = value.parse()?,
            "bounds" => bounds = Some(parse_bounds(value)?),
            "timing" => {
                timing = match value {
                    "stage" => ApplyPoint::PerStage,
                    "step" => ApplyPoint::PerStep,
                    _ => return Err(bad("timing")),
                }
            }
            "reference" => reference = value.parse()?,
            "out" => out_dir = Some(PathBuf::from(value)),
            other => return Err(Error::Config(format!("line {}: unknown key '{other}'", lineno + 1))),
        }
    }

    let problem = problem.ok_or_else(|| Error::Config("missing key 'problem'".into()))?;
    let cfg = ExperimentConfig {
        problem,
        degree: degree.ok_or_else(|| Error::Config("missing key 'degree'".into()))?,
        elements: elements.ok_or_else(|| Error::Config("missing key 'elements'".into()))?,
        kappa: kappa.unwrap_or_else(|| default_kappa(problem)),
        t_final: t_final.ok_or_else(|| Error::Config("missing key 'tmax'".into()))?,
        cfl,
        filter,
        bounds,
        timing,
        reference,
        out_dir: out_dir.ok_or_else(|| Error::Config("missing key 'out'".into()))?,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Parses "m,M" bound pairs.
pub fn parse_bounds(s: &str) -> Result<(f64, f64)> {
    let (m, max) = s
        .split_once(',')
        .ok_or_else(|| Error::Config(format!("bounds '{s}' must be 'm,M'")))?;
    let m: f64 = m.trim().parse().map_err(|_| Error::Config(format!("bad bound '{m}'")))?;
    let max: f64 = max.trim().parse().map_err(|_| Error::Config(format!("bad bound '{max}'")))?;
    if !(m <= max) {
        return Err(Error::Config(format!("bounds {m},{max} need lower <= upper")));
    }
    Ok((m, max))
}

/// Numbers in CSV files carry 17 significant digits.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn resolve_out_dir(dir: &Path) -> PathBuf {
    if dir.is_relative() {
        if let Ok(root) = std::env::var(OUTPUT_ROOT_ENV) {
            return PathBuf::from(root).join(dir);
        }
    }
    dir.to_path_buf()
}

/// Result of one experiment.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
    pub min: f64,
    pub max: f64,
    pub total_variation: f64,
    pub steps: usize,
    pub out_dir: PathBuf,
}

impl RunSummary {
    pub fn summary_line(&self) -> String {
        format!(
            "l1={} l2={} linf={} min={} max={} tv={} steps={}",
            fmt(self.l1),
            fmt(self.l2),
            fmt(self.linf),
            fmt(self.min),
            fmt(self.max),
            fmt(self.total_variation),
            self.steps
        )
    }
}

enum ReferenceData {
    Map(Box<dyn Fn(f64) -> f64>),
    Profile(FvProfile),
}

/// Builds the reference solution for the configured problem and time.
fn build_reference(
    cfg: &ExperimentConfig,
    problem: &ProblemSpec,
) -> Result<(ReferenceData, Rc<Cell<bool>>)> {
    let failed = Rc::new(Cell::new(false));
    let choice = match cfg.reference {
        ReferenceChoice::Auto => match problem.reference {
            ReferenceKind::ClosedForm => ReferenceChoice::ClosedForm,
            ReferenceKind::Characteristics => {
                if problem.break_time.is_none_or(|tb| cfg.t_final < tb) {
                    ReferenceChoice::Characteristics
                } else {
                    ReferenceChoice::FvOracle
                }
            }
            ReferenceKind::FvOracle => ReferenceChoice::FvOracle,
        },
        explicit => explicit,
    };
    let data = match choice {
        ReferenceChoice::ClosedForm => {
            if cfg.problem != ProblemId::LinearAdvection {
                return Err(Error::Config(
                    "closed-form reference only exists for the linear advection problem".into(),
                ));
            }
            let p = problem.clone();
            let t = cfg.t_final;
            ReferenceData::Map(Box::new(move |x| {
                exact_advection(&|y| p.initial(y), x, t, p.domain)
            }))
        }
        ReferenceChoice::Characteristics => {
            if cfg.problem != ProblemId::Burgers {
                return Err(Error::Config(
                    "the characteristic reference only exists for the Burgers problem".into(),
                ));
            }
            let p = problem.clone();
            let t = cfg.t_final;
            let u0p = burgers_initial_prime();
            let flag = Rc::clone(&failed);
            ReferenceData::Map(Box::new(move |x| {
                match burgers_characteristic(&|y| p.initial(y), &u0p, x, t) {
                    Ok(v) => v,
                    Err(_) => {
                        flag.set(true);
                        f64::NAN
                    }
                }
            }))
        }
        ReferenceChoice::FvOracle => {
            let profile = fv_reference(problem, cfg.t_final, &FVOracleConfig::default())?;
            ReferenceData::Profile(profile)
        }
        ReferenceChoice::Auto => unreachable!(),
    };
    Ok((data, failed))
}

/// Runs one experiment: solves the problem, writes `solution.csv`,
/// `sensor.csv`, `diagnostics.csv`, `config.txt` and `summary.txt` into the
/// output directory and returns the error norms against the configured
/// reference. On solver blow-up the last completed step is dumped to
/// `last_good_state.csv` and the error is returned.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunSummary> {
    cfg.validate()?;
    let problem = make_problem(cfg.problem);
    let out_dir = resolve_out_dir(&cfg.out_dir);
    fs::create_dir_all(&out_dir)?;
    fs::write(out_dir.join("config.txt"), serialize_config(cfg))?;

    let mesh = Mesh::new(problem.domain, cfg.elements)?;
    let run_config = RunConfig::new(mesh.clone(), cfg.degree, cfg.t_final)?.with_cfl(cfg.cfl)?;
    let sensor = SensorConfig::new(cfg.kappa)?;
    let bounds = cfg.bounds.map(|(m, max)| BoundsSpec::new(m, max)).transpose()?;
    let capture = match cfg.filter {
        FilterKind::None => CaptureConfig::none(sensor),
        FilterKind::Bernstein => match bounds {
            Some(b) => CaptureConfig::bernstein_bounded(sensor, b),
            None => CaptureConfig::bernstein(sensor),
        },
        FilterKind::Mean => CaptureConfig::mean_filter(sensor),
    }
    .with_apply_point(cfg.timing);
    let basis = ElementBasis::new(cfg.degree)?;

    let mut sensor_file = BufWriter::new(File::create(out_dir.join("sensor.csv"))?);
    writeln!(sensor_file, "step,element,S1,S3,ratio,alpha")?;
    let mut diag_file = BufWriter::new(File::create(out_dir.join("diagnostics.csv"))?);
    writeln!(
        diag_file,
        "step,t,dt,TV,min,max,troubled_count,entropy,conservation_defect"
    )?;

    let mut last_good: Option<SolutionState> = None;
    let mut write_error: Option<std::io::Error> = None;
    let result = run_observed(&problem, &run_config, &capture, |state, record, readings| {
        if write_error.is_some() {
            return;
        }
        let mut write = || -> std::io::Result<()> {
            for (i, r) in readings.iter().enumerate() {
                writeln!(
                    sensor_file,
                    "{},{},{},{},{},{}",
                    record.step,
                    i,
                    fmt(r.s1),
                    fmt(r.s3),
                    fmt(r.ratio),
                    fmt(r.alpha)
                )?;
            }
            writeln!(
                diag_file,
                "{},{},{},{},{},{},{},{},{}",
                record.step,
                fmt(record.t),
                fmt(record.dt),
                fmt(record.total_variation),
                fmt(record.min),
                fmt(record.max),
                record.troubled,
                fmt(record.entropy),
                fmt(record.conservation_defect)
            )
        };
        if let Err(e) = write() {
            write_error = Some(e);
        }
        match &mut last_good {
            Some(s) => s.clone_from(state),
            None => last_good = Some(state.clone()),
        }
    });
    sensor_file.flush()?;
    diag_file.flush()?;
    if let Some(e) = write_error {
        return Err(e.into());
    }

    let (final_state, diagnostics) = match result {
        Ok(pair) => pair,
        Err(e) => {
            let dump = last_good
                .unwrap_or_else(|| SolutionState::sample(|x| problem.initial(x), &mesh, &basis));
            write_state_csv(&out_dir.join("last_good_state.csv"), &dump, &basis, &mesh, None)?;
            return Err(e);
        }
    };

    let (reference, char_failed) = build_reference(cfg, &problem)?;
    let ref_fn: Box<dyn Fn(f64) -> f64 + '_> = match &reference {
        ReferenceData::Map(f) => Box::new(f.as_ref()),
        ReferenceData::Profile(p) => Box::new(move |x| p.value_at(x)),
    };
    write_state_csv(
        &out_dir.join("solution.csv"),
        &final_state,
        &basis,
        &mesh,
        Some(ref_fn.as_ref()),
    )?;

    let ref_solution = match &reference {
        ReferenceData::Map(f) => RefSolution::Map(f.as_ref()),
        ReferenceData::Profile(p) => RefSolution::Profile(p),
    };
    let l1 = error_norms(&final_state, &basis, &mesh, &ref_solution, Norm::L1);
    let l2 = error_norms(&final_state, &basis, &mesh, &ref_solution, Norm::L2);
    let linf = error_norms(&final_state, &basis, &mesh, &ref_solution, Norm::LInf);
    if char_failed.get() {
        return Err(Error::OracleDiverged {
            x: f64::NAN,
            t: cfg.t_final,
        });
    }

    let summary = RunSummary {
        l1,
        l2,
        linf,
        min: final_state.min(),
        max: final_state.max(),
        total_variation: crate::run::discrete_total_variation(&final_state),
        steps: diagnostics.steps.len(),
        out_dir: out_dir.clone(),
    };
    let mut summary_file = BufWriter::new(File::create(out_dir.join("summary.txt"))?);
    writeln!(summary_file, "{}", summary.summary_line())?;
    summary_file.flush()?;
    Ok(summary)
}

fn write_state_csv(
    path: &Path,
    state: &SolutionState,
    basis: &ElementBasis,
    mesh: &Mesh,
    reference: Option<&dyn Fn(f64) -> f64>,
) -> Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    match reference {
        Some(_) => writeln!(file, "element,node,x,u_numeric,u_reference")?,
        None => writeln!(file, "element,node,x,u_numeric")?,
    }
    for i in 0..state.num_elements() {
        for k in 0..basis.num_nodes() {
            let x = mesh.to_physical(i, basis.nodes()[k]);
            match reference {
                Some(r) => writeln!(
                    file,
                    "{},{},{},{},{}",
                    i,
                    k,
                    fmt(x),
                    fmt(state.values[(k, i)]),
                    fmt(r(x))
                )?,
                None => writeln!(file, "{},{},{},{}", i, k, fmt(x), fmt(state.values[(k, i)]))?,
            }
        }
    }
    file.flush()?;
    Ok(())
}

/// One sweep combination's outcome.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub kappa: f64,
    pub degree: usize,
    pub elements: usize,
    pub outcome: std::result::Result<RunSummary, String>,
}

/// Runs the cartesian product of the given parameter lists over the base
/// configuration, one output subdirectory per combination, and writes an
/// `index.csv` manifest. Individual failures are recorded in the manifest
/// and do not stop the sweep. Combinations are independent; this driver
/// runs them sequentially for reproducible logs.
pub fn sweep(
    base: &ExperimentConfig,
    kappa_list: &[f64],
    degree_list: &[usize],
    elements_list: &[usize],
) -> Result<Vec<SweepRow>> {
    if kappa_list.is_empty() || degree_list.is_empty() || elements_list.is_empty() {
        return Err(Error::Config("sweep lists must be nonempty".into()));
    }
    let root = resolve_out_dir(&base.out_dir);
    fs::create_dir_all(&root)?;
    let mut rows = Vec::new();
    for &kappa in kappa_list {
        for &degree in degree_list {
            for &elements in elements_list {
                let sub = root.join(format!("k{kappa}_N{degree}_I{elements}"));
                let cfg = ExperimentConfig {
                    kappa,
                    degree,
                    elements,
                    out_dir: sub,
                    ..base.clone()
                };
                let outcome = run_experiment(&cfg).map_err(|e| e.to_string());
                rows.push(SweepRow {
                    kappa,
                    degree,
                    elements,
                    outcome,
                });
            }
        }
    }

    let mut manifest = BufWriter::new(File::create(root.join("index.csv"))?);
    writeln!(manifest, "kappa,degree,elements,status,l1,l2,linf,out_dir,message")?;
    for row in &rows {
        match &row.outcome {
            Ok(s) => writeln!(
                manifest,
                "{},{},{},ok,{},{},{},{},",
                row.kappa,
                row.degree,
                row.elements,
                fmt(s.l1),
                fmt(s.l2),
                fmt(s.linf),
                s.out_dir.display()
            )?,
            Err(msg) => writeln!(
                manifest,
                "{},{},{},failed,,,,,{}",
                row.kappa,
                row.degree,
                row.elements,
                msg.replace(',', ";")
            )?,
        }
    }
    manifest.flush()?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config(dir: &Path) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(ProblemId::LinearAdvection, 4, 10, 0.05, dir);
        cfg.kappa = 0.5;
        cfg
    }

    #[test]
    fn config_round_trip() {
        let mut cfg = tiny_config(Path::new("out/run1"));
        cfg.bounds = Some((0.0, 1.0));
        cfg.timing = ApplyPoint::PerStep;
        let text = serialize_config(&cfg);
        let parsed = parse_config(&text).unwrap();
        assert_eq!(parsed, cfg);
        assert_eq!(serialize_config(&parsed), text);

        // scrambled key order and comments normalise to the canonical form
        let scrambled = "\n# comment\nout=out/run1\ntmax=0.05\nproblem=linear\n\
                         degree=4\nelements=10\nkappa=0.5\n";
        let parsed = parse_config(scrambled).unwrap();
        assert_eq!(parsed.problem, ProblemId::LinearAdvection);
        assert_eq!(parsed.cfl, 0.1);
        let canonical = serialize_config(&parsed);
        assert_eq!(parse_config(&canonical).unwrap(), parsed);
    }

    #[test]
    fn config_rejects_bad_values() {
        assert!(parse_config("problem=linear\ndegree=4\nelements=10\ntmax=1\nout=o\nkappa=1.5\n").is_err());
        assert!(parse_config("problem=nosuch\ndegree=4\nelements=10\ntmax=1\nout=o\n").is_err());
        assert!(parse_config("problem=linear\ndegree=4\nelements=10\ntmax=1\nout=o\nwat=1\n").is_err());
        assert!(parse_config("degree=4\nelements=10\ntmax=1\nout=o\n").is_err());
        // degree 2 cannot host the order-3 stencil
        assert!(parse_config("problem=linear\ndegree=2\nelements=10\ntmax=1\nout=o\n").is_err());
    }

    #[test]
    fn experiment_writes_all_files() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = tiny_config(&dir.path().join("run"));
        let summary = run_experiment(&cfg).unwrap();
        for name in ["solution.csv", "sensor.csv", "diagnostics.csv", "config.txt", "summary.txt"] {
            assert!(dir.path().join("run").join(name).exists(), "{name} missing");
        }
        assert!(summary.l1.is_finite());
        assert!(summary.steps > 0);
        let solution = fs::read_to_string(dir.path().join("run/solution.csv")).unwrap();
        assert!(solution.starts_with("element,node,x,u_numeric,u_reference\n"));
        assert_eq!(solution.lines().count(), 1 + 10 * 5);
    }

    #[test]
    fn zero_time_run_reports_interpolation_error_only() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = tiny_config(&dir.path().join("run"));
        cfg.t_final = 0.0;
        let summary = run_experiment(&cfg).unwrap();
        assert_eq!(summary.steps, 0);
        // nodal values match the sampled IC exactly, so solution.csv pairs
        // u_numeric with the identical reference at every node
        let solution = fs::read_to_string(dir.path().join("run/solution.csv")).unwrap();
        for line in solution.lines().skip(1) {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(cols[3], cols[4], "IC sample differs from reference: {line}");
        }
        // the box IC is discontinuous, so only interpolation error remains
        assert!(summary.l1 < 0.2, "l1 = {}", summary.l1);
    }

    #[test]
    fn identical_configs_produce_identical_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let cfg_a = tiny_config(&dir.path().join("a"));
        let cfg_b = ExperimentConfig {
            out_dir: dir.path().join("b"),
            ..cfg_a.clone()
        };
        run_experiment(&cfg_a).unwrap();
        run_experiment(&cfg_b).unwrap();
        for name in ["solution.csv", "sensor.csv", "diagnostics.csv", "summary.txt"] {
            let a = fs::read(dir.path().join("a").join(name)).unwrap();
            let b = fs::read(dir.path().join("b").join(name)).unwrap();
            assert_eq!(a, b, "{name} differs between identical runs");
        }
    }

    #[test]
    fn sweep_manifest_has_one_row_per_combination() {
        let dir = tempfile::tempdir().unwrap();
        let mut base = tiny_config(&dir.path().join("sweep"));
        base.t_final = 0.01;
        let rows = sweep(&base, &[0.25, 0.75], &[4], &[5, 10]).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.outcome.is_ok()));
        let manifest = fs::read_to_string(dir.path().join("sweep/index.csv")).unwrap();
        assert_eq!(manifest.lines().count(), 1 + 4);

        // single-element lists behave like run_experiment
        let rows = sweep(&base, &[0.5], &[4], &[5]).unwrap();
        assert_eq!(rows.len(), 1);
    }
}
