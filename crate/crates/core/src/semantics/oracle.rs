use std::time::Instant;

use super::{conclude, target_pairs, Outcome, SemanticsMode, Stats, ValidationError, ValidationResult};
use std::collections::HashMap;

use crate::ast::{Document, Shape, ShapeName};
use crate::eval::{
    check_condition1_over, eval_constraint, node_universe, Assignment, NodeUniverse, ShapeSigns, Sign,
};
use crate::rdf::{Graph, Term};

pub const DEFAULT_ORACLE_MAX_PAIRS: usize = 16;

pub fn brute_force_validate(
    g: &Graph,
    d: &Document,
    mode: SemanticsMode,
) -> Result<ValidationResult, ValidationError> {
    brute_force_validate_with(g, d, mode, DEFAULT_ORACLE_MAX_PAIRS)
}

/// Enumerates every assignment over `nodes(g, d)` × shapes, `3^k` of them in
/// partial modes and `2^k` in total modes, in lexicographic pair order with
/// `Undefined < Neg < Pos`.
pub fn brute_force_validate_with(
    g: &Graph,
    d: &Document,
    mode: SemanticsMode,
    max_pairs: usize,
) -> Result<ValidationResult, ValidationError> {
    let start = Instant::now();
    if mode == SemanticsMode::Standard && d.is_recursive() {
        return Err(ValidationError::Recursion {
            shapes: d.dependency_graph().cyclic_shapes().into_iter().collect(),
        });
    }
    let universe = node_universe(g, d);
    let pairs: Vec<(Term, ShapeName)> = universe
        .iter()
        .flat_map(|n| d.names().map(move |s| (n.clone(), s.clone())))
        .collect();
    if pairs.len() > max_pairs {
        return Err(ValidationError::OracleBudgetExceeded {
            pairs: pairs.len(),
            limit: max_pairs,
        });
    }
    let choices: &[Option<Sign>] = if mode.is_total() {
        &[Some(Sign::Neg), Some(Sign::Pos)]
    } else {
        &[None, Some(Sign::Neg), Some(Sign::Pos)]
    };
    let targets = target_pairs(g, d);
    let shapes: Vec<&Shape> = d.shapes().collect();
    let mut table = DenseSigns::new(&universe, d);
    let mut outcome = Outcome::default();
    let mut digits = vec![0usize; pairs.len()];
    // Consistency is checked pair by pair starting from the pair that
    // failed last; consecutive assignments tend to fail on the same pair.
    let mut first = 0;
    loop {
        outcome.tried += 1;
        for (slot, &i) in digits.iter().enumerate() {
            table.signs[slot] = choices[i];
        }
        let failing = (0..pairs.len()).map(|k| (first + k) % pairs.len()).find(|&k| {
            let (n, _) = &pairs[k];
            let shape = shapes[k % shapes.len()];
            let value = eval_constraint(g, &table, &shape.constraint, n);
            table.signs[k] != Sign::of(value)
        });
        match failing {
            Some(k) => first = k,
            None => {
                let sigma: Assignment = pairs
                    .iter()
                    .zip(&digits)
                    .filter_map(|((n, s), &i)| choices[i].map(|sign| (n.clone(), s.clone(), sign)))
                    .collect();
                debug_assert!(check_condition1_over(g, &sigma, d, &universe));
                if outcome.record(&sigma, &targets, mode) {
                    break;
                }
            }
        }
        // the last pair varies fastest
        let Some(pos) = digits.iter().rposition(|&i| i + 1 < choices.len()) else {
            break;
        };
        digits[pos] += 1;
        digits[pos + 1..].iter_mut().for_each(|i| *i = 0);
    }
    let cyclic = d.dependency_graph().cyclic_shapes();
    let cyclic_pairs: Vec<_> = pairs
        .iter()
        .filter(|(_, s)| cyclic.contains(s))
        .cloned()
        .collect();
    let stats = Stats {
        nodes: universe.len(),
        shapes: d.len(),
        guessable_pairs: pairs.len(),
        assignments_tried: outcome.tried,
        elapsed: start.elapsed(),
        oracle: true,
    };
    Ok(conclude(mode, outcome, &targets, &cyclic_pairs, stats))
}

/// Signs of every universe × shape pair, laid out in the oracle's pair order
/// (node-major, shapes in name order).
struct DenseSigns<'a> {
    nodes: HashMap<&'a Term, usize>,
    shapes: HashMap<&'a ShapeName, usize>,
    signs: Vec<Option<Sign>>,
}

impl<'a> DenseSigns<'a> {
    fn new(universe: &'a NodeUniverse, d: &'a Document) -> Self {
        DenseSigns {
            nodes: universe.iter().enumerate().map(|(i, n)| (n, i)).collect(),
            shapes: d.names().enumerate().map(|(i, s)| (s, i)).collect(),
            signs: vec![None; universe.len() * d.len()],
        }
    }
}

impl ShapeSigns for DenseSigns<'_> {
    fn sign(&self, node: &Term, shape: &ShapeName) -> Option<Sign> {
        let n = *self.nodes.get(node)?;
        let s = *self.shapes.get(shape)?;
        self.signs[n * self.shapes.len() + s]
    }
}
