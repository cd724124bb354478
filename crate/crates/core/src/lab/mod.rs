//! Randomized verification of the subsumption relations between criteria.
//!
//! A subsumption claim `c1 ⇒ c2` is tested by generating suites that
//! satisfy `c1` on random graphs and checking them against `c2`. A
//! non-subsumption claim is refuted by finding a witness suite. Every
//! result is reproducible from a single seed.

pub mod sampler;
pub mod table;
pub mod verify;
pub mod witness;

pub use sampler::{random_complete_path, CycleMode, MealySpec, RandomGraphSpec};
pub use table::{expected_relation, table_criterion, Relation, RelationTable, TABLE_CODES};
pub use verify::{
    mix, pair_spec, run_table_verification, search_counterexample, verify_subsumes, CellMode, CellReport,
    RelationVerdict, Status, TableConfig, TableReport,
};
pub use witness::{open_questions, satisfies, Witness};
