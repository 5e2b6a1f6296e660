//! Form identities as validated rewrite rules, and constructive descent drivers.

mod drivers;
mod rules;

pub use drivers::{
    descend_odd_1_5_10, descend_odd_binary, lagrange_even_odd_decomposition, sign_normalize, DescentStep,
    DescentTrace, LagrangeDecomposition, OddBinaryKind, StepKind,
};
pub use rules::{
    builtin_rules, lagrange_rule, validate_rule, Congruence, GramForm, RewriteRule, RuleFailure, RuleLibrary,
    RULE_IDS,
};
