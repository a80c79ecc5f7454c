use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use powerlaw_bl::{
    default_step, format_significant, pohlhausen_skin_friction, reference_row, reference_table,
    solve, solve_by_shooting, write_profile_csv, AutoBoundary, Boundary, Error, GridSpec,
    ModelParameter, ShootingConfig, SolutionProfile, TransformResult,
};
use rayon::prelude::*;
use thiserror::Error;

use crate::report::{Column, RowStatus, RunRecord, RunReport, DISPLAY_DIGITS};

/// Largest accepted |non-ITM − shooting| in `validate`.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

/// Default start of the truncated-boundary search.
const AUTO_START: f64 = 5.0;

/// Allowed |ours − reference| for a row of the reference table: `5e-3` at
/// `P = 0.05`, where the stiff small-P rows are sensitive to the unknown
/// grid, and `5e-4` elsewhere.
pub fn table_tolerance(p: f64) -> f64 {
    if p <= 0.05 + 1e-12 {
        5e-3
    } else {
        5e-4
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Solver(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(e) if e.is_domain_error() => 2,
            CliError::Solver(Error::InvalidArgument(_) | Error::InvalidGrid(_)) => 2,
            _ => 1,
        }
    }
}

/// Truncated boundary request: a fixed η*∞ or `auto`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EtaInf {
    Fixed(f64),
    Auto,
}

impl Default for EtaInf {
    fn default() -> Self {
        EtaInf::Fixed(powerlaw_bl::transform::DEFAULT_TRUNCATED_BOUNDARY)
    }
}

impl FromStr for EtaInf {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(EtaInf::Auto);
        }
        match s.parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(EtaInf::Fixed(v)),
            _ => Err(format!("expected a positive number or `auto`, got `{s}`")),
        }
    }
}

/// Grid options shared by every command that runs the solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOptions {
    /// `None` picks the per-P default step.
    pub step: Option<f64>,
    pub eta_inf: EtaInf,
    /// Plateau tolerance for `EtaInf::Auto`.
    pub tol: f64,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            step: None,
            eta_inf: EtaInf::default(),
            tol: AutoBoundary::default().tol,
        }
    }
}

impl GridOptions {
    pub fn boundary(&self, param: &ModelParameter) -> Result<Boundary, Error> {
        let step = self.step.unwrap_or_else(|| default_step(param));
        Ok(match self.eta_inf {
            EtaInf::Fixed(eta_inf) => Boundary::Fixed(GridSpec::new(step, eta_inf)?),
            EtaInf::Auto => Boundary::Auto(AutoBoundary {
                step,
                tol: self.tol,
                start: AUTO_START,
            }),
        })
    }

    pub fn solve(&self, p: f64) -> Result<TransformResult, Error> {
        let param = ModelParameter::new(p)?;
        solve(&param, self.boundary(&param)?)
    }
}

fn record_from(result: &TransformResult) -> RunRecord {
    let p = result.param.p();
    let mut record = RunRecord::new(p);
    record.delta = Some(result.param.delta());
    record.lambda = Some(result.lambda);
    record.starred_slope = Some(result.starred_slope_at_infinity);
    record.skin_friction = Some(result.skin_friction);
    record.pohlhausen = pohlhausen_skin_friction(p).ok();
    record.reference = reference_row(p).copied();
    record
}

/// Paths `{prefix}_starred.csv` and `{prefix}_physical.csv`.
pub fn csv_paths(prefix: &Path) -> (PathBuf, PathBuf) {
    let with_suffix = |suffix: &str| {
        let mut name = prefix.as_os_str().to_owned();
        name.push(suffix);
        PathBuf::from(name)
    };
    (with_suffix("_starred.csv"), with_suffix("_physical.csv"))
}

fn write_csv(path: &Path, profile: &SolutionProfile) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    write_profile_csv(profile, BufWriter::new(file)).map_err(io_err)
}

/// Single solve; prints a key/value summary and optionally writes both profiles.
pub fn cmd_solve(
    p: f64,
    grid: &GridOptions,
    out_prefix: Option<&Path>,
    out: &mut dyn Write,
) -> Result<RunRecord, CliError> {
    let result = grid.solve(p)?;
    let record = record_from(&result);
    let show = |x: f64| format_significant(x, DISPLAY_DIGITS);
    let lines = [
        ("P", format_significant(p, DISPLAY_DIGITS)),
        ("delta", show(result.param.delta())),
        ("step", show(result.starred.spacing())),
        ("eta_inf_starred", show(result.truncated_boundary)),
        ("eta_inf_physical", show(result.physical.final_abscissa())),
        ("starred_slope", show(result.starred_slope_at_infinity)),
        ("lambda", show(result.lambda)),
        ("skin_friction", show(result.skin_friction)),
    ];
    let io_err = |source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    for (key, value) in lines {
        writeln!(out, "{key} = {value}").map_err(io_err)?;
    }
    if let Some(prefix) = out_prefix {
        let (starred, physical) = csv_paths(prefix);
        write_csv(&starred, &result.starred)?;
        write_csv(&physical, &result.physical)?;
        writeln!(out, "wrote {}", starred.display()).map_err(io_err)?;
        writeln!(out, "wrote {}", physical.display()).map_err(io_err)?;
    }
    Ok(record)
}

/// P values of the reference table that have a non-ITM entry.
pub fn default_table_ps() -> Vec<f64> {
    reference_table()
        .iter()
        .filter(|r| r.nonitm.is_some())
        .map(|r| r.p)
        .collect()
}

/// Regression against the reference table; rows run in parallel and are
/// reported in the requested order.
pub fn cmd_table(ps: &[f64], grid: &GridOptions) -> RunReport {
    let records = ps
        .par_iter()
        .map(|&p| match grid.solve(p) {
            Ok(result) => {
                let mut record = record_from(&result);
                record.fill_deviations();
                if let Some(dev) = record.reference_deviation {
                    let tol = table_tolerance(p);
                    record.tolerance = Some(tol);
                    if !(dev <= tol) {
                        record.status = RowStatus::OutOfTolerance;
                    }
                }
                record
            }
            Err(e) => with_reference(p).fail(&e),
        })
        .collect();
    RunReport { records }
}

pub const TABLE_COLUMNS: [Column; 8] = [
    Column::P,
    Column::Acrivos,
    Column::PohlhausenTable,
    Column::PohlhausenFormula,
    Column::ReferenceNonItm,
    Column::OursNonItm,
    Column::ReferenceDeviation,
    Column::Status,
];

fn with_reference(p: f64) -> RunRecord {
    let mut record = RunRecord::new(p);
    record.reference = reference_row(p).copied();
    record.pohlhausen = pohlhausen_skin_friction(p).ok();
    record
}

/// Runs the transformation method and the shooting oracle on the same
/// physical grid and compares their f''(0).
pub fn cmd_validate(ps: &[f64], grid: &GridOptions) -> RunReport {
    let records = ps
        .par_iter()
        .map(|&p| {
            let run = || -> Result<RunRecord, Error> {
                let result = grid.solve(p)?;
                let config = ShootingConfig::with_grid(result.physical.grid()?);
                let oracle = solve_by_shooting(&result.param, &config)?;
                let mut record = record_from(&result);
                record.oracle_skin_friction = Some(oracle);
                record.fill_deviations();
                record.tolerance = Some(ORACLE_TOLERANCE);
                if !(record.oracle_deviation.unwrap_or(f64::INFINITY) <= ORACLE_TOLERANCE) {
                    record.status = RowStatus::OutOfTolerance;
                }
                Ok(record)
            };
            run().unwrap_or_else(|e| RunRecord::new(p).fail(&e))
        })
        .collect();
    RunReport { records }
}

pub const VALIDATE_COLUMNS: [Column; 7] = [
    Column::P,
    Column::Delta,
    Column::Lambda,
    Column::OursNonItm,
    Column::Oracle,
    Column::OracleDeviation,
    Column::Status,
];

/// Evaluates the Pohlhausen formula next to the tabulated columns. The
/// formula is reported as is; disagreement with the table is not an error.
pub fn cmd_pohlhausen(ps: &[f64]) -> RunReport {
    let records = ps
        .iter()
        .map(|&p| match pohlhausen_skin_friction(p) {
            Ok(_) => with_reference(p),
            Err(e) => RunRecord::new(p).fail(&e),
        })
        .collect();
    RunReport { records }
}

pub const POHLHAUSEN_COLUMNS: [Column; 5] = [
    Column::P,
    Column::PohlhausenFormula,
    Column::PohlhausenTable,
    Column::Acrivos,
    Column::Status,
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_inf_parsing() {
        assert_eq!("auto".parse::<EtaInf>().unwrap(), EtaInf::Auto);
        assert_eq!("10".parse::<EtaInf>().unwrap(), EtaInf::Fixed(10.0));
        assert!("-1".parse::<EtaInf>().is_err());
        assert!("ten".parse::<EtaInf>().is_err());
    }

    #[test]
    fn csv_path_suffixes() {
        let (a, b) = csv_paths(Path::new("out/prof"));
        assert_eq!(a, PathBuf::from("out/prof_starred.csv"));
        assert_eq!(b, PathBuf::from("out/prof_physical.csv"));
    }

    #[test]
    fn default_table_excludes_blank_row() {
        let ps = default_table_ps();
        assert_eq!(ps.len(), 11);
        assert!(!ps.contains(&0.5));
    }

    #[test]
    fn table_row_for_excluded_parameter() {
        let report = cmd_table(&[0.5], &GridOptions::default());
        let status = &report.records[0].status;
        assert!(
            matches!(status, RowStatus::Failed { message, domain: true } if message.contains("singular scaling exponent"))
        );
        assert_eq!(report.exit_code(), 2);
    }

    #[test]
    fn validate_outside_laminar_range() {
        let report = cmd_validate(&[2.5], &GridOptions::default());
        assert!(report.records[0]
            .status
            .label()
            .contains("outside laminar range"));
        assert_eq!(report.exit_code(), 2);
    }

    #[test]
    fn solve_summary_lines() {
        let mut buf = Vec::new();
        let record = cmd_solve(1.0, &GridOptions::default(), None, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("skin_friction = 0.332057336\n"), "{text}");
        assert!(text.contains("delta = -1\n"));
        assert!(text.contains("eta_inf_starred = 10\n"));
        assert!(record.skin_friction.is_some());
    }

    #[test]
    fn pohlhausen_rows() {
        let report = cmd_pohlhausen(&[1.0, 2.5]);
        assert!((report.records[0].pohlhausen.unwrap() - 0.32321).abs() < 1e-5);
        assert_eq!(report.exit_code(), 2);
    }
}
