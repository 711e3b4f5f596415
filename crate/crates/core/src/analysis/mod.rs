//! Entropy profiles, Θ-class diagnostics and exact verifiers for the
//! complexity inequalities relating a subshift to its images.

pub mod bounds;
pub mod counterexample;
pub mod entropy;
mod report;
pub mod suite;
pub mod theta;

pub use bounds::{
    verify_lower_bound_general, verify_lower_bound_general_tables, verify_lower_bound_l2l,
    verify_lower_bound_l2l_tables, verify_upper_bound, verify_upper_bound_tables, LowerBoundTables,
};
pub use counterexample::{counterexample_suite, CounterexampleBundle};
pub use entropy::{entropy_profile, entropy_transfer, profile_from_table, EntropyProfile};
pub use report::{BoundReport, InequalityCheck, Violation};
pub use suite::{run_all, SuiteEntry, SuiteReport};
pub use theta::{theta_diagnostic, ThetaReport};
