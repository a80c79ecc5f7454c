//! Command implementations behind the `powerlaw-bl` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod report;

pub use commands::{
    cmd_pohlhausen, cmd_solve, cmd_table, cmd_validate, csv_paths, default_table_ps,
    table_tolerance, CliError, EtaInf, GridOptions, ORACLE_TOLERANCE,
};
pub use report::{Column, RowStatus, RunRecord, RunReport};
