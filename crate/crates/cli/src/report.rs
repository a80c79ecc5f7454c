//! Per-P records shared by the `table`, `validate` and `pohlhausen` commands.

use std::fmt::Write as _;

use powerlaw_bl::{format_significant, Error, ReferenceRow};

/// Digits shown for computed skin frictions.
pub const DISPLAY_DIGITS: usize = 9;

/// Outcome of one requested row.
#[derive(Debug, Clone, PartialEq)]
pub enum RowStatus {
    Ok,
    /// Solved, but a deviation exceeded its tolerance.
    OutOfTolerance,
    /// The solver failed; the message is shown inline.
    Failed {
        message: String,
        domain: bool,
    },
}

impl RowStatus {
    pub fn from_error(err: &Error) -> Self {
        RowStatus::Failed {
            message: err.to_string(),
            domain: err.is_domain_error(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            RowStatus::Ok => "ok".into(),
            RowStatus::OutOfTolerance => "FAIL tolerance".into(),
            RowStatus::Failed { message, .. } => format!("FAILED: {message}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub p: f64,
    pub delta: Option<f64>,
    pub lambda: Option<f64>,
    pub starred_slope: Option<f64>,
    pub skin_friction: Option<f64>,
    /// The Pohlhausen formula evaluated at `p`.
    pub pohlhausen: Option<f64>,
    pub oracle_skin_friction: Option<f64>,
    pub reference: Option<ReferenceRow>,
    /// `|ours - reference non-ITM|`, present iff both are.
    pub reference_deviation: Option<f64>,
    /// `|ours - oracle|`, present iff both are.
    pub oracle_deviation: Option<f64>,
    pub tolerance: Option<f64>,
    pub status: RowStatus,
}

impl RunRecord {
    pub fn new(p: f64) -> Self {
        Self {
            p,
            delta: None,
            lambda: None,
            starred_slope: None,
            skin_friction: None,
            pohlhausen: None,
            oracle_skin_friction: None,
            reference: None,
            reference_deviation: None,
            oracle_deviation: None,
            tolerance: None,
            status: RowStatus::Ok,
        }
    }

    pub fn fail(mut self, err: &Error) -> Self {
        self.status = RowStatus::from_error(err);
        self
    }

    /// Fills both deviation columns from whatever operands are present.
    pub fn fill_deviations(&mut self) {
        let ours = self.skin_friction;
        let reference = self.reference.and_then(|r| r.nonitm);
        self.reference_deviation = ours.zip(reference).map(|(a, b)| (a - b).abs());
        self.oracle_deviation = ours
            .zip(self.oracle_skin_friction)
            .map(|(a, b)| (a - b).abs());
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunReport {
    pub records: Vec<RunRecord>,
}

impl RunReport {
    /// 0 when every row succeeded within tolerance, 2 if any row hit a domain
    /// error, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        let mut code = 0;
        for r in &self.records {
            match &r.status {
                RowStatus::Ok => {}
                RowStatus::Failed { domain: true, .. } => return 2,
                RowStatus::Failed { .. } | RowStatus::OutOfTolerance => code = 1,
            }
        }
        code
    }

    pub fn render(&self, columns: &[Column]) -> String {
        let header: Vec<String> = columns.iter().map(|c| c.title().to_string()).collect();
        let rows: Vec<Vec<String>> = self
            .records
            .iter()
            .map(|r| columns.iter().map(|c| c.cell(r)).collect())
            .collect();
        let widths: Vec<usize> = (0..columns.len())
            .map(|j| {
                rows.iter()
                    .map(|row| row[j].chars().count())
                    .chain([header[j].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, cells: &[String]| {
            let joined: Vec<String> = cells
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(j, (cell, &w))| {
                    // last column (status) is left-aligned and unpadded
                    if j + 1 == cells.len() {
                        cell.clone()
                    } else {
                        let pad = w.saturating_sub(cell.chars().count());
                        format!("{}{cell}", " ".repeat(pad))
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", joined.join(" | ").trim_end());
        };
        line(&mut out, &header);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w.max(1))).collect();
        let _ = writeln!(out, "{}", rule.join("-+-"));
        for row in &rows {
            line(&mut out, row);
        }
        out
    }
}

/// Columns available to [`RunReport::render`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    P,
    Delta,
    Lambda,
    Acrivos,
    PohlhausenTable,
    PohlhausenFormula,
    ReferenceNonItm,
    OursNonItm,
    ReferenceDeviation,
    Oracle,
    OracleDeviation,
    Status,
}

impl Column {
    fn title(self) -> &'static str {
        match self {
            Column::P => "P",
            Column::Delta => "delta",
            Column::Lambda => "lambda",
            Column::Acrivos => "Acrivos",
            Column::PohlhausenTable => "Pohlhausen(table)",
            Column::PohlhausenFormula => "Pohlhausen(formula)",
            Column::ReferenceNonItm => "non-ITM(ref)",
            Column::OursNonItm => "non-ITM(ours)",
            Column::ReferenceDeviation => "|Δ|",
            Column::Oracle => "shooting",
            Column::OracleDeviation => "|Δ oracle|",
            Column::Status => "status",
        }
    }

    fn cell(self, r: &RunRecord) -> String {
        let computed = |v: Option<f64>| opt(v, DISPLAY_DIGITS);
        // tabulated values are shown as printed (at most seven digits)
        let tabulated = |v: Option<f64>| opt(v, 7);
        let deviation = |v: Option<f64>| v.map_or_else(|| "-".into(), |d| format!("{d:.3e}"));
        match self {
            Column::P => format_significant(r.p, 6),
            Column::Delta => computed(r.delta),
            Column::Lambda => computed(r.lambda),
            Column::Acrivos => tabulated(r.reference.and_then(|x| x.acrivos)),
            Column::PohlhausenTable => tabulated(r.reference.and_then(|x| x.pohlhausen)),
            Column::PohlhausenFormula => computed(r.pohlhausen),
            Column::ReferenceNonItm => tabulated(r.reference.and_then(|x| x.nonitm)),
            Column::OursNonItm => computed(r.skin_friction),
            Column::ReferenceDeviation => deviation(r.reference_deviation),
            Column::Oracle => computed(r.oracle_skin_friction),
            Column::OracleDeviation => deviation(r.oracle_deviation),
            Column::Status => r.status.label(),
        }
    }
}

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "-".into(), |x| format_significant(x, digits))
}
