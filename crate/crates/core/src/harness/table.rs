use std::fmt::Write as _;

use super::cell::{run_cell_with, Execution, RiskReport, SimulationSpec};
use super::format::sig6;
use crate::error::{Error, Result};
use crate::estimator::EstimatorConfig;
use crate::kernel::KernelConfig;
use crate::models::{MeanFunction, VarianceShape};

pub const CSV_HEADER: &str = "table,mean,var,n,reps,r,estimator,mise,se,paper_ref_value";

const VARS: [VarianceShape; 4] = [
    VarianceShape::V1,
    VarianceShape::V2,
    VarianceShape::Bumps,
    VarianceShape::Doppler,
];
const MEANS: [MeanFunction; 5] = [
    MeanFunction::Zero,
    MeanFunction::Sin20,
    MeanFunction::Bumps,
    MeanFunction::Blocks,
    MeanFunction::Doppler,
];
const R_VALUES: [f64; 3] = [0.2, 0.5, 0.8];

/// Published MISEs, n = 4096, 500 replications: rows V1, V2, Bumps, Doppler.
const TABLE1: [[f64; 5]; 4] = [
    [0.0817, 0.0842, 0.0825, 0.0860, 0.0837],
    [0.0523, 0.0553, 0.0557, 0.0563, 0.0567],
    [0.1949, 0.2062, 0.2146, 0.2133, 0.2060],
    [0.4162, 0.5037, 0.4817, 0.4888, 0.4902],
];
/// Columns r = 0.2, 0.5, 0.8.
const TABLE2: [[f64; 3]; 4] = [
    [0.0838, 0.0817, 0.0859],
    [0.0581, 0.0523, 0.0532],
    [0.1981, 0.1949, 0.2065],
    [0.4852, 0.4162, 0.4335],
];
/// Columns wavelet, kernel.
const TABLE3: [[f64; 2]; 4] = [
    [0.0817, 0.1208],
    [0.0523, 0.0631],
    [0.1949, 0.2296],
    [0.4762, 0.5463],
];

/// Published value for a single cell, when one exists.
pub fn paper_reference(
    table: u8,
    mean: MeanFunction,
    var: VarianceShape,
    r: f64,
    kernel: bool,
) -> Option<f64> {
    let vi = VARS.iter().position(|&v| v == var)?;
    match table {
        1 if !kernel && r == 0.5 => Some(TABLE1[vi][MEANS.iter().position(|&m| m == mean)?]),
        2 if !kernel && mean == MeanFunction::Zero => {
            Some(TABLE2[vi][R_VALUES.iter().position(|&x| x == r)?])
        }
        3 if mean == MeanFunction::Zero && r == 0.5 => Some(TABLE3[vi][usize::from(kernel)]),
        _ => None,
    }
}

/// Settings shared by every cell of a reproduced table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableOptions {
    pub reps: usize,
    pub seed: u64,
    pub n: usize,
    pub execution: Execution,
}

impl TableOptions {
    pub fn new(reps: usize, seed: u64) -> Self {
        Self {
            reps,
            seed,
            n: 4096,
            execution: Execution::Parallel,
        }
    }
}

/// One line of a reproduced table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    /// Published table the row belongs to; `None` for ad hoc cells.
    pub table: Option<u8>,
    pub mean: MeanFunction,
    pub var: VarianceShape,
    pub n: usize,
    pub reps: usize,
    pub r: f64,
    pub estimator: &'static str,
    pub mise: f64,
    pub se: f64,
    pub paper: Option<f64>,
}

impl TableRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.table.map(|t| t.to_string()).unwrap_or_default(),
            self.mean,
            self.var,
            self.n,
            self.reps,
            sig6(self.r),
            self.estimator,
            sig6(self.mise),
            sig6(self.se),
            self.paper.map(sig6).unwrap_or_default()
        )
    }
}

/// Reproduction of one published table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableArtifact {
    pub which: u8,
    pub rows: Vec<TableRow>,
    pub reports: Vec<RiskReport>,
}

fn wavelet_row(table: u8, report: &RiskReport) -> TableRow {
    let s = &report.spec;
    TableRow {
        table: Some(table),
        mean: s.mean,
        var: s.var,
        n: s.n,
        reps: s.reps,
        r: s.estimator.r,
        estimator: "wavelet",
        mise: report.wavelet.mise_mean,
        se: report.wavelet.mise_se,
        paper: paper_reference(table, s.mean, s.var, s.estimator.r, false),
    }
}

/// Runs every cell of Table 1, 2 or 3.
pub fn reproduce_table(which: u8, options: &TableOptions) -> Result<TableArtifact> {
    if options.reps == 0 {
        return Err(Error::InvalidParameter("reps must be at least 1".into()));
    }
    let cell = |mean, var, r: f64, baseline: Option<KernelConfig>| {
        let mut spec = SimulationSpec::new(mean, var, options.n, options.reps, options.seed);
        spec.estimator = EstimatorConfig {
            r,
            ..Default::default()
        };
        spec.baseline = baseline;
        run_cell_with(&spec, options.execution)
    };
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    match which {
        1 => {
            for var in VARS {
                for mean in MEANS {
                    let report = cell(mean, var, 0.5, None)?;
                    rows.push(wavelet_row(1, &report));
                    reports.push(report);
                }
            }
        }
        2 => {
            for var in VARS {
                for r in R_VALUES {
                    let report = cell(MeanFunction::Zero, var, r, None)?;
                    rows.push(wavelet_row(2, &report));
                    reports.push(report);
                }
            }
        }
        3 => {
            for var in VARS {
                let report = cell(MeanFunction::Zero, var, 0.5, Some(KernelConfig::default()))?;
                rows.push(wavelet_row(3, &report));
                let kernel = report.kernel.as_ref().expect("baseline requested");
                rows.push(TableRow {
                    estimator: "kernel",
                    mise: kernel.mise_mean,
                    se: kernel.mise_se,
                    paper: paper_reference(3, MeanFunction::Zero, var, 0.5, true),
                    ..wavelet_row(3, &report)
                });
                reports.push(report);
            }
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "table {which} does not exist; use 1, 2 or 3"
            )))
        }
    }
    Ok(TableArtifact {
        which,
        rows,
        reports,
    })
}

/// CSV rows for a single cell: the wavelet estimator, then the kernel
/// baseline when it was run. Published values are attached at `n = 4096`
/// (Table 1 for the wavelet row, Table 3 for the kernel row).
pub fn report_rows(report: &RiskReport) -> Vec<TableRow> {
    let s = &report.spec;
    let published = |table, kernel| {
        (s.n == 4096)
            .then(|| paper_reference(table, s.mean, s.var, s.estimator.r, kernel))
            .flatten()
    };
    let mut rows = vec![TableRow {
        table: None,
        paper: published(1, false),
        ..wavelet_row(1, report)
    }];
    if let Some(k) = &report.kernel {
        rows.push(TableRow {
            table: None,
            estimator: "kernel",
            mise: k.mise_mean,
            se: k.mise_se,
            paper: published(3, true),
            ..wavelet_row(3, report)
        });
    }
    rows
}

/// Header line followed by one line per row.
pub fn rows_to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

impl TableArtifact {
    pub fn to_csv(&self) -> String {
        rows_to_csv(&self.rows)
    }

    fn find(&self, pred: impl Fn(&TableRow) -> bool) -> Option<&TableRow> {
        self.rows.iter().find(|r| pred(r))
    }

    /// Aligned markdown with `ours (published)` in every cell.
    pub fn to_markdown(&self) -> String {
        let cellfmt = |row: Option<&TableRow>| match row {
            Some(r) => match r.paper {
                Some(p) => format!("{:.4} ({p:.4})", r.mise),
                None => format!("{:.4}", r.mise),
            },
            None => "-".to_string(),
        };
        let (header, body): (Vec<String>, Vec<Vec<String>>) = match self.which {
            1 => (
                std::iter::once("V \\ f".to_string())
                    .chain(MEANS.iter().map(|m| m.to_string()))
                    .collect(),
                VARS.iter()
                    .map(|&v| {
                        std::iter::once(v.to_string())
                            .chain(
                                MEANS
                                    .iter()
                                    .map(|&m| cellfmt(self.find(|r| r.var == v && r.mean == m))),
                            )
                            .collect()
                    })
                    .collect(),
            ),
            2 => (
                std::iter::once("r".to_string())
                    .chain(VARS.iter().map(|v| v.to_string()))
                    .collect(),
                R_VALUES
                    .iter()
                    .map(|&rv| {
                        std::iter::once(format!("{rv}"))
                            .chain(
                                VARS.iter()
                                    .map(|&v| cellfmt(self.find(|r| r.var == v && r.r == rv))),
                            )
                            .collect()
                    })
                    .collect(),
            ),
            _ => (
                std::iter::once("estimator".to_string())
                    .chain(VARS.iter().map(|v| v.to_string()))
                    .collect(),
                ["wavelet", "kernel"]
                    .iter()
                    .map(|&e| {
                        std::iter::once(e.to_string())
                            .chain(VARS.iter().map(|&v| {
                                let mut c = cellfmt(self.find(|r| r.var == v && r.estimator == e));
                                if e == "wavelet" && v == VarianceShape::Doppler {
                                    let _ = write!(c, " [table 1: {:.4}]", TABLE1[3][0]);
                                }
                                c
                            }))
                            .collect()
                    })
                    .collect(),
            ),
        };
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                body.iter()
                    .map(|row| row[c].len())
                    .chain([header[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            format!("| {} |\n", padded.join(" | "))
        };
        let reps = self.rows.first().map_or(0, |r| r.reps);
        let n = self.rows.first().map_or(0, |r| r.n);
        let mut out = format!(
            "Table {}: MISE over {reps} replications, n = {n}; published values in parentheses\n\n",
            self.which
        );
        out.push_str(&line(&header));
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&line(&rule));
        for row in &body {
            out.push_str(&line(row));
        }
        out
    }
}
