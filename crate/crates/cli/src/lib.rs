//! Library side of the experiment harness: grid parsing, table
//! serialization and the five named experiments. The binary in `main.rs`
//! is a thin argument-parsing wrapper.

pub mod error;
pub mod experiments;
pub mod grid;
pub mod table;

pub use error::CliError;
pub use experiments::{
    bounds, limit, montecarlo, round_steps, simulate, theorem1, RunOutcome, SweepConfig,
};
pub use grid::{FloatGrid, UsizeGrid};
pub use table::{Cell, Table};
