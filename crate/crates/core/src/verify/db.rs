use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::TernaryForm;
use crate::tuples::SumTuple;

const BUILTIN: &str = include_str!("../../fixtures/claims.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleGroup {
    pub name: String,
    pub tuples: Vec<SumTuple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusEntry {
    pub determinant: i64,
    /// Class representatives; the first seeds the neighbor closure.
    pub forms: Vec<TernaryForm>,
    pub primes: Vec<i64>,
}

/// `Σ weights[i] · r(m p², forms[i]) = factor · (p + 1 − (−m·det / p))`
/// for the classes of the genus of `genus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioEntry {
    pub genus: TernaryForm,
    pub m: i64,
    pub weights: Vec<i64>,
    pub factor: i64,
    pub prime_limit: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureDatabase {
    pub tuple_groups: Vec<TupleGroup>,
    pub identities: Vec<String>,
    pub exception_sets: Vec<String>,
    pub genera: Vec<GenusEntry>,
    pub ratio_checks: Vec<RatioEntry>,
}

impl FixtureDatabase {
    pub fn from_json(text: &str) -> Result<Self> {
        let db: FixtureDatabase = serde_json::from_str(text)?;
        for g in &db.genera {
            if g.forms.is_empty() {
                return Err(Error::Precondition(format!("genus of determinant {} has no forms", g.determinant)));
            }
        }
        for r in &db.ratio_checks {
            if db.genus(&r.genus).is_none() {
                return Err(Error::Precondition(format!("ratio check names unknown genus {}", r.genus)));
            }
        }
        Ok(db)
    }

    /// The checked-in database.
    pub fn builtin() -> &'static FixtureDatabase {
        static DB: OnceLock<FixtureDatabase> = OnceLock::new();
        DB.get_or_init(|| FixtureDatabase::from_json(BUILTIN).expect("checked-in fixture database parses"))
    }

    /// Every tuple with its group name, in file order.
    pub fn tuples(&self) -> Vec<(&str, SumTuple)> {
        self.tuple_groups
            .iter()
            .flat_map(|g| g.tuples.iter().map(move |t| (g.name.as_str(), *t)))
            .collect()
    }

    pub fn genus(&self, seed: &TernaryForm) -> Option<&GenusEntry> {
        self.genera.iter().find(|g| g.forms[0] == *seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sizes() {
        let db = FixtureDatabase::builtin();
        let sizes: Vec<(&str, usize)> = db.tuple_groups.iter().map(|g| (g.name.as_str(), g.tuples.len())).collect();
        assert_eq!(
            sizes,
            [("list-a", 7), ("list-b", 18), ("list-c-i", 4), ("list-c-ii", 5), ("list-d", 9), ("list-e", 1)]
        );
        assert_eq!(db.tuples().len(), 44);
        assert_eq!(db.genera.len(), 12);
        assert_eq!(db.identities, crate::descent::RULE_IDS);
    }

    #[test]
    fn rejects_bad_data() {
        assert!(FixtureDatabase::from_json("{}").is_err());
        let bad = BUILTIN.replace("\"5,1,2,2,1,1\"", "\"5,2,2,2,1,1\"");
        assert!(FixtureDatabase::from_json(&bad).is_err());
    }
}
