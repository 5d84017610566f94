use std::collections::BTreeSet;
use std::time::Instant;

use super::{conclude, target_pairs, Outcome, SemanticsMode, Stats, ValidationError, ValidationResult};
use crate::ast::{Document, Shape, ShapeName};
use crate::eval::{eval_constraint, node_universe, Assignment, NodeUniverse, Sign};
use crate::rdf::{Graph, Term};

pub const DEFAULT_MAX_PAIRS: usize = 24;

pub fn validate(g: &Graph, d: &Document, mode: SemanticsMode) -> Result<ValidationResult, ValidationError> {
    validate_with(g, d, mode, DEFAULT_MAX_PAIRS)
}

/// Validates `g` against a non-recursive `d` by evaluating shapes leaves
/// first. The resulting assignment is the only one consistent with constraint evaluation.
pub fn validate_standard(g: &Graph, d: &Document) -> Result<ValidationResult, ValidationError> {
    validate_with(g, d, SemanticsMode::Standard, 0)
}

/// SCC-pruned search. Shapes off every cycle are evaluated; pairs whose shape
/// lies on a cycle are guessed one component at a time, dependencies first.
pub fn validate_with(
    g: &Graph,
    d: &Document,
    mode: SemanticsMode,
    max_pairs: usize,
) -> Result<ValidationResult, ValidationError> {
    let start = Instant::now();
    let deps = d.dependency_graph();
    let cyclic = deps.cyclic_shapes();
    if mode == SemanticsMode::Standard && !cyclic.is_empty() {
        return Err(ValidationError::Recursion {
            shapes: cyclic.into_iter().collect(),
        });
    }
    let universe = node_universe(g, d);
    let guessable = universe.len() * cyclic.len();
    if guessable > max_pairs {
        return Err(ValidationError::SearchBudgetExceeded {
            pairs: guessable,
            limit: max_pairs,
        });
    }
    let targets = target_pairs(g, d);
    let components: Vec<Component> = deps
        .components()
        .into_iter()
        .map(|names| Component {
            guessed: names.iter().any(|s| cyclic.contains(s)),
            shapes: names
                .iter()
                .map(|s| d.get(s).expect("component shapes belong to the document"))
                .collect(),
        })
        .collect();

    let mut search = Search {
        g,
        mode,
        universe: &universe,
        components: &components,
        targets: &targets,
        target_set: targets.iter().cloned().collect(),
        prune_targets: matches!(mode, SemanticsMode::BravePartial | SemanticsMode::BraveTotal),
        outcome: Outcome::default(),
    };
    let mut sigma = Assignment::new();
    search.component(0, &mut sigma);
    let mut outcome = search.outcome;
    if search.prune_targets && outcome.witness.is_none() {
        // The pruned pass saw only assignments that keep every target Pos.
        // Re-run without pruning to learn which targets can conform at all.
        let mut full = Search {
            prune_targets: false,
            outcome: Outcome::default(),
            ..search
        };
        full.component(0, &mut Assignment::new());
        full.outcome.tried += outcome.tried;
        outcome = full.outcome;
    }

    let cyclic_pairs = guessed_pairs(&outcome, &universe, &components);
    let stats = Stats {
        nodes: universe.len(),
        shapes: d.len(),
        guessable_pairs: guessable,
        assignments_tried: outcome.tried,
        elapsed: start.elapsed(),
        oracle: false,
    };
    Ok(conclude(mode, outcome, &targets, &cyclic_pairs, stats))
}

/// When no assignment is consistent with constraint evaluation, every guessed pair;
/// otherwise nothing.
fn guessed_pairs(
    outcome: &Outcome,
    universe: &NodeUniverse,
    components: &[Component],
) -> Vec<(Term, ShapeName)> {
    if outcome.consistent {
        return Vec::new();
    }
    let mut out = Vec::new();
    for n in universe.iter() {
        for c in components.iter().filter(|c| c.guessed) {
            for s in &c.shapes {
                out.push((n.clone(), s.name.clone()));
            }
        }
    }
    out.sort();
    out
}

struct Component<'d> {
    guessed: bool,
    shapes: Vec<&'d Shape>,
}

struct Search<'a> {
    g: &'a Graph,
    mode: SemanticsMode,
    universe: &'a NodeUniverse,
    components: &'a [Component<'a>],
    targets: &'a [(Term, ShapeName)],
    target_set: BTreeSet<(Term, ShapeName)>,
    /// Skip branches where a target pair is not `Pos`. Sound only when the
    /// search looks for a witness and nothing else.
    prune_targets: bool,
    outcome: Outcome,
}

impl Search<'_> {
    /// Extends `sigma` through components `i..`. Returns `true` to stop.
    fn component(&mut self, i: usize, sigma: &mut Assignment) -> bool {
        let Some(comp) = self.components.get(i) else {
            self.outcome.tried += 1;
            return self.outcome.record(sigma, self.targets, self.mode);
        };
        if !comp.guessed {
            let shape = comp.shapes[0];
            let mut ok = true;
            for n in self.universe.iter() {
                let value = eval_constraint(self.g, &*sigma, &shape.constraint, n);
                match Sign::of(value) {
                    Some(sign) => sigma.set(n.clone(), shape.name.clone(), sign),
                    None => sigma.clear(n, &shape.name),
                }
                if !self.allowed(n, &shape.name, Sign::of(value)) {
                    ok = false;
                }
            }
            return ok && self.component(i + 1, sigma);
        }
        let pairs: Vec<(&Term, &Shape)> = self
            .universe
            .iter()
            .flat_map(|n| comp.shapes.iter().map(move |s| (n, *s)))
            .collect();
        self.guess(i, &pairs, 0, sigma)
    }

    fn allowed(&self, n: &Term, s: &ShapeName, sign: Option<Sign>) -> bool {
        !self.prune_targets || sign == Some(Sign::Pos) || !self.target_set.contains(&(n.clone(), s.clone()))
    }

    /// Enumerates signs for `pairs[k..]`, then checks consistency on the
    /// component and moves on.
    fn guess(&mut self, i: usize, pairs: &[(&Term, &Shape)], k: usize, sigma: &mut Assignment) -> bool {
        let Some(&(n, shape)) = pairs.get(k) else {
            let consistent = pairs.iter().all(|&(n, shape)| {
                let value = eval_constraint(self.g, &*sigma, &shape.constraint, n);
                sigma.get(n, &shape.name) == Sign::of(value)
            });
            if !consistent {
                self.outcome.tried += 1;
                return false;
            }
            return self.component(i + 1, sigma);
        };
        let choices: &[Option<Sign>] = if self.mode.is_total() {
            &[Some(Sign::Neg), Some(Sign::Pos)]
        } else {
            &[None, Some(Sign::Neg), Some(Sign::Pos)]
        };
        for &choice in choices {
            if !self.allowed(n, &shape.name, choice) {
                continue;
            }
            match choice {
                Some(sign) => sigma.set(n.clone(), shape.name.clone(), sign),
                None => sigma.clear(n, &shape.name),
            }
            if self.guess(i, pairs, k + 1, sigma) {
                return true;
            }
        }
        sigma.clear(n, &shape.name);
        false
    }
}
