//! Library surface of the fracspec CLI: configuration, exporters, the
//! subcommand implementations and the validation criteria. The binary
//! in `main.rs` is a thin argument-parsing shell over these.

// negated float comparisons are deliberate NaN guards
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod criteria;
pub mod output;
