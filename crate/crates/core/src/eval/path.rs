use std::collections::BTreeSet;

use crate::ast::Path;
use crate::rdf::{Graph, Term};

/// Nodes reachable from `start` through `path`.
pub fn path_eval(g: &Graph, path: &Path, start: &Term) -> BTreeSet<Term> {
    step(g, path, false, start)
}

/// Evaluates `path` (or its inverse when `inverted`) from a single node.
fn step(g: &Graph, path: &Path, inverted: bool, start: &Term) -> BTreeSet<Term> {
    match path {
        Path::Predicate(p) => {
            if inverted {
                g.subjects(p, start).clone()
            } else {
                g.objects(start, p).clone()
            }
        }
        Path::Inverse(q) => step(g, q, !inverted, start),
        Path::Sequence(first, second) => {
            // inverse of (a / b) is (b^ / a^)
            let (a, b) = if inverted {
                (second, first)
            } else {
                (first, second)
            };
            step(g, a, inverted, start)
                .iter()
                .flat_map(|mid| step(g, b, inverted, mid))
                .collect()
        }
        Path::Alternative(a, b) => {
            let mut out = step(g, a, inverted, start);
            out.extend(step(g, b, inverted, start));
            out
        }
        Path::ZeroOrOne(q) => {
            let mut out = step(g, q, inverted, start);
            out.insert(start.clone());
            out
        }
        Path::ZeroOrMore(q) => {
            let mut out = closure(g, q, inverted, start);
            out.insert(start.clone());
            out
        }
        Path::OneOrMore(q) => closure(g, q, inverted, start),
    }
}

/// Transitive closure of one `q` step starting from `start` (excluding the
/// zero-length path unless a cycle returns to `start`).
fn closure(g: &Graph, q: &Path, inverted: bool, start: &Term) -> BTreeSet<Term> {
    let mut seen = BTreeSet::new();
    let mut frontier: Vec<Term> = step(g, q, inverted, start).into_iter().collect();
    while let Some(node) = frontier.pop() {
        if seen.insert(node.clone()) {
            frontier.extend(
                step(g, q, inverted, &node)
                    .into_iter()
                    .filter(|n| !seen.contains(n)),
            );
        }
    }
    seen
}
