//! Validity under the standard semantics and the four recursive semantics.
//!
//! [`validate`] searches only the pairs whose shape lies on a dependency
//! cycle; [`brute_force_validate`] enumerates every assignment over the whole
//! universe and applies the definitions literally. Both feed the same
//! [`Outcome`] into the report builder, so they differ only in how the
//! consistent assignments are produced.

mod engine;
mod oracle;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::ast::{Document, ShapeName};
use crate::eval::{target_nodes, Assignment, Sign};
use crate::rdf::{Graph, Term, Triple};

pub use engine::{validate, validate_standard, validate_with, DEFAULT_MAX_PAIRS};
pub use oracle::{brute_force_validate, brute_force_validate_with, DEFAULT_ORACLE_MAX_PAIRS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemanticsMode {
    Standard,
    BravePartial,
    BraveTotal,
    CautiousPartial,
    CautiousTotal,
}

impl SemanticsMode {
    pub const ALL: [SemanticsMode; 5] = [
        SemanticsMode::Standard,
        SemanticsMode::BravePartial,
        SemanticsMode::BraveTotal,
        SemanticsMode::CautiousPartial,
        SemanticsMode::CautiousTotal,
    ];

    pub fn is_total(self) -> bool {
        matches!(self, SemanticsMode::BraveTotal | SemanticsMode::CautiousTotal)
    }

    pub fn is_cautious(self) -> bool {
        matches!(
            self,
            SemanticsMode::CautiousPartial | SemanticsMode::CautiousTotal
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SemanticsMode::Standard => "standard",
            SemanticsMode::BravePartial => "brave-partial",
            SemanticsMode::BraveTotal => "brave-total",
            SemanticsMode::CautiousPartial => "cautious-partial",
            SemanticsMode::CautiousTotal => "cautious-total",
        }
    }
}

impl fmt::Display for SemanticsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SemanticsMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SemanticsMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown semantics `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub focus: Term,
    pub shape: ShapeName,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes: usize,
    pub shapes: usize,
    pub guessable_pairs: usize,
    pub assignments_tried: u64,
    pub elapsed: Duration,
    pub oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationResult {
    pub valid: bool,
    pub mode: SemanticsMode,
    /// A faithful assignment (total in total modes) when one was found.
    pub witness: Option<Assignment>,
    pub violations: Vec<Violation>,
    pub stats: Stats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("standard semantics requires a non-recursive document; recursive shapes: {}", list(.shapes))]
    Recursion { shapes: Vec<ShapeName> },
    #[error("{pairs} guessable pairs exceed the search limit of {limit}")]
    SearchBudgetExceeded { pairs: usize, limit: usize },
    #[error("{pairs} pairs exceed the oracle limit of {limit}")]
    OracleBudgetExceeded { pairs: usize, limit: usize },
}

fn list(shapes: &[ShapeName]) -> String {
    shapes
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Adding `t` cannot change validity: its predicate is not mentioned by `d`
/// and `d` has no closed constraint.
pub fn monotone_extension_check(_g: &Graph, d: &Document, t: &Triple) -> bool {
    !d.contains_closed() && !d.mentioned_terms().contains(&t.predicate)
}

/// What a search learned about the consistent assignments of one
/// instance.
#[derive(Debug, Default)]
struct Outcome {
    /// First faithful assignment in enumeration order.
    witness: Option<Assignment>,
    /// First consistent assignment that misses a target.
    counterexample: Option<Assignment>,
    /// Whether any consistent assignment was seen.
    consistent: bool,
    /// Target pairs that were `Pos` in some consistent assignment. Only
    /// meaningful when the search was exhaustive.
    possibly_pos: BTreeSet<(Term, ShapeName)>,
    tried: u64,
}

impl Outcome {
    /// Records a complete consistent assignment. Returns `true` when the
    /// search can stop.
    fn record(&mut self, sigma: &Assignment, targets: &[(Term, ShapeName)], mode: SemanticsMode) -> bool {
        self.consistent = true;
        let mut hits_all = true;
        for (n, s) in targets {
            if sigma.get(n, s) == Some(Sign::Pos) {
                self.possibly_pos.insert((n.clone(), s.clone()));
            } else {
                hits_all = false;
            }
        }
        if hits_all {
            if self.witness.is_none() {
                self.witness = Some(sigma.clone());
            }
            !mode.is_cautious()
        } else {
            if self.counterexample.is_none() {
                self.counterexample = Some(sigma.clone());
            }
            mode.is_cautious()
        }
    }

    fn valid(&self, mode: SemanticsMode) -> bool {
        self.witness.is_some() && !(mode.is_cautious() && self.counterexample.is_some())
    }
}

/// Every (target node, shape) pair of `d` in `g`, sorted.
fn target_pairs(g: &Graph, d: &Document) -> Vec<(Term, ShapeName)> {
    let mut out = BTreeSet::new();
    for shape in d.shapes() {
        for t in &shape.targets {
            for n in target_nodes(g, t) {
                out.insert((n, shape.name.clone()));
            }
        }
    }
    out.into_iter().collect()
}

/// Short stable fingerprint of an assignment.
pub fn assignment_digest(sigma: &Assignment) -> String {
    let mut hasher = Sha256::new();
    for (n, s, sign) in sigma.iter() {
        let mark = match sign {
            Sign::Pos => '+',
            Sign::Neg => '-',
        };
        hasher.update(format!("{n}\t{s}\t{mark}\n").as_bytes());
    }
    hasher
        .finalize()
        .iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Builds the report from a finished search.
fn conclude(
    mode: SemanticsMode,
    outcome: Outcome,
    targets: &[(Term, ShapeName)],
    cyclic_pairs: &[(Term, ShapeName)],
    stats: Stats,
) -> ValidationResult {
    let valid = outcome.valid(mode);
    let mut violations = Vec::new();
    if !valid {
        let missing = |sigma: &Assignment, detail: &str| -> Vec<Violation> {
            targets
                .iter()
                .filter(|(n, s)| sigma.get(n, s) != Some(Sign::Pos))
                .map(|(n, s)| Violation {
                    focus: n.clone(),
                    shape: s.clone(),
                    detail: detail.to_string(),
                })
                .collect()
        };
        if !outcome.consistent {
            let detail = if mode.is_total() {
                "no total assignment is consistent with constraint evaluation for this shape"
            } else {
                "no assignment is consistent with constraint evaluation for this shape"
            };
            violations = cyclic_pairs
                .iter()
                .map(|(n, s)| Violation {
                    focus: n.clone(),
                    shape: s.clone(),
                    detail: detail.to_string(),
                })
                .collect();
        } else if mode.is_cautious() {
            let counter = outcome
                .counterexample
                .as_ref()
                .expect("cautious failure has a counterexample");
            let detail = format!(
                "not conforming in assignment {} that is consistent with constraint evaluation",
                assignment_digest(counter)
            );
            violations = missing(counter, &detail);
        } else {
            violations = targets
                .iter()
                .filter(|pair| !outcome.possibly_pos.contains(pair))
                .map(|(n, s)| Violation {
                    focus: n.clone(),
                    shape: s.clone(),
                    detail: if mode == SemanticsMode::Standard {
                        "does not conform".to_string()
                    } else {
                        "does not conform in any assignment consistent with constraint evaluation".to_string()
                    },
                })
                .collect();
            if violations.is_empty() {
                // Each target conforms somewhere but never all at once.
                let counter = outcome
                    .counterexample
                    .as_ref()
                    .expect("consistent but no witness");
                violations = missing(counter, "targets cannot conform simultaneously");
            }
        }
    }
    ValidationResult {
        valid,
        mode,
        witness: outcome.witness,
        violations,
        stats,
    }
}

#[cfg(test)]
mod tests;
