pub mod amalgam;
pub mod arcs;
pub mod check;
pub mod coset;
pub mod gf64;
pub mod grp;
pub mod harness;
pub mod psu;
pub mod structure;
pub mod subgroups;

pub use check::Check;
pub use coset::{CosetGraph, CosetSpace, GraphError, GraphSummary, Side};
pub use gf64::{Gf64, DEFAULT_MODULUS};
pub use harness::{
    export, field_table, format_orbits, verify, Config, Context, ExportFormat, GroupScope, HarnessError, Verdict, VerificationReport,
};
pub use subgroups::Which;
