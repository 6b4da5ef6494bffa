//! Monte Carlo experiment runner: risk metrics, cells, and table reproduction.

mod cell;
mod format;
mod io;
mod metrics;
mod table;

pub use cell::{run_cell, run_cell_with, Execution, RiskReport, RiskSummary, SimulationSpec};
pub use format::sig6;
pub use io::{estimate_to_csv, parse_series_csv, two_column_data};
pub use metrics::{mean_and_se, mise, mse_at_point};
pub use table::{
    paper_reference, report_rows, reproduce_table, rows_to_csv, TableArtifact, TableOptions,
    TableRow, CSV_HEADER,
};
