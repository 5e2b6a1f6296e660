//! Fixture database, claim checks and run reports.

mod checks;
mod db;
mod report;

pub use checks::{
    full_suite, ratio_checks, eight_n_two_witness, verify_descent, verify_pentagonal_identity, verify_exception_sets,
    verify_genus_fixtures, verify_identities, verify_lemmas, verify_all_tuples, verify_eight_n_two, verify_tuple,
    EightNTwoCase, EightNTwoWitness, SuiteParams,
};
pub use db::{FixtureDatabase, GenusEntry, RatioEntry, TupleGroup};
pub use report::{CheckResult, ReportFormat, RunReport, Status};
