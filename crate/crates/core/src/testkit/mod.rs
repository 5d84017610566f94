//! Test support: random small instances and a reference evaluator for SCL
//! sentences. Enabled by the `testkit` feature.

mod generate;
mod scl_eval;

pub use generate::{fresh_predicate_triple, random_instance, total_assignments, GenConfig, Instance};
pub use scl_eval::{satisfies, satisfies_formula};
