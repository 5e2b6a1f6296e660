//! Exact arithmetic for integral positive-definite ternary quadratic forms.

mod binary;
mod exceptions;
mod form;
mod represent;
mod symbol;

pub use binary::{three_free_rewrite, DiagBinary, ThreeFreeKind};
pub use exceptions::{exception_formula_check, exception_set, ExceptionSet, FormulaCheck, KnownSet};
pub use form::TernaryForm;
pub use represent::{
    count, first_representation, for_each_vector_up_to, representation_counts, representations, Parity,
    RepConstraint, Representation, ResidueClass,
};
pub use symbol::kronecker_symbol;
