use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{AstError, Constraint, Document, Path, ShapeName};

/// Per-shape and document-level recursion flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionReport {
    pub recursive: bool,
    pub shapes: BTreeMap<ShapeName, bool>,
}

/// Edge `s → s'` iff `s'` is directly referenced by the constraint of `s`.
#[derive(Clone, Debug)]
pub struct DependencyGraph {
    graph: DiGraph<ShapeName, ()>,
    index: BTreeMap<ShapeName, NodeIndex>,
}

impl DependencyGraph {
    pub fn shapes(&self) -> impl Iterator<Item = &ShapeName> + '_ {
        self.index.keys()
    }

    pub fn edges(&self) -> Vec<(ShapeName, ShapeName)> {
        let mut edges: Vec<_> = self
            .graph
            .edge_indices()
            .filter_map(|e| self.graph.edge_endpoints(e))
            .map(|(a, b)| (self.graph[a].clone(), self.graph[b].clone()))
            .collect();
        edges.sort();
        edges
    }

    pub fn has_edge(&self, from: &ShapeName, to: &ShapeName) -> bool {
        match (self.index.get(from), self.index.get(to)) {
            (Some(&a), Some(&b)) => self.graph.contains_edge(a, b),
            _ => false,
        }
    }

    /// Strongly connected components ordered so that every component comes
    /// after all components it depends on. Members are sorted by name.
    pub fn components(&self) -> Vec<Vec<ShapeName>> {
        // tarjan_scc yields components in reverse topological order of the
        // edge direction, i.e. dependencies first.
        tarjan_scc(&self.graph)
            .into_iter()
            .map(|scc| {
                let mut names: Vec<_> = scc.into_iter().map(|i| self.graph[i].clone()).collect();
                names.sort();
                names
            })
            .collect()
    }

    /// Shapes lying on a cycle (including self-loops).
    pub fn cyclic_shapes(&self) -> BTreeSet<ShapeName> {
        let mut out = BTreeSet::new();
        for component in self.components() {
            let cyclic = component.len() > 1 || self.has_edge(&component[0], &component[0]);
            if cyclic {
                out.extend(component);
            }
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        self.cyclic_shapes().is_empty()
    }
}

impl Document {
    pub fn dependency_graph(&self) -> DependencyGraph {
        let mut graph = DiGraph::new();
        let mut index = BTreeMap::new();
        for name in self.names() {
            index.insert(name.clone(), graph.add_node(name.clone()));
        }
        for shape in self.shapes() {
            for target in shape.constraint.direct_refs() {
                if let Some(&to) = index.get(&target) {
                    graph.add_edge(index[&shape.name], to, ());
                }
            }
        }
        DependencyGraph { graph, index }
    }

    /// Least fixpoint of direct-reference expansion, starting from the shapes
    /// directly referenced by `name`'s constraint.
    pub fn referenced_closure(&self, name: &ShapeName) -> Result<BTreeSet<ShapeName>, AstError> {
        let shape = self
            .get(name)
            .ok_or_else(|| AstError::UnknownShape(name.clone()))?;
        let mut closure = shape.constraint.direct_refs();
        let mut frontier: Vec<ShapeName> = closure.iter().cloned().collect();
        while let Some(next) = frontier.pop() {
            let shape = self
                .get(&next)
                .ok_or_else(|| AstError::UnknownShape(next.clone()))?;
            for r in shape.constraint.direct_refs() {
                if closure.insert(r.clone()) {
                    frontier.push(r);
                }
            }
        }
        Ok(closure)
    }

    pub fn recursion(&self) -> RecursionReport {
        let shapes: BTreeMap<_, _> = self
            .names()
            .map(|n| {
                let recursive = self.referenced_closure(n).map(|c| c.contains(n)).unwrap_or(false);
                (n.clone(), recursive)
            })
            .collect();
        RecursionReport {
            recursive: shapes.values().any(|&r| r),
            shapes,
        }
    }

    pub fn is_recursive(&self) -> bool {
        self.recursion().recursive
    }

    pub fn fragment_letters(&self) -> Fragment {
        let mut fragment = Fragment::default();
        for shape in self.shapes() {
            constraint_letters(&shape.constraint, &mut fragment);
        }
        fragment
    }
}

/// Syntactic feature letters of a document or sentence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FragmentLetter {
    /// sequence paths
    S,
    /// zero-or-one paths
    Z,
    /// alternative paths
    A,
    /// zero-or-more and one-or-more paths
    T,
    /// property pair disjointness
    D,
    /// property pair equality
    E,
    /// property pair order
    O,
    /// cardinality other than 1
    C,
}

impl fmt::Display for FragmentLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fragment(pub BTreeSet<FragmentLetter>);

impl Fragment {
    pub fn insert(&mut self, letter: FragmentLetter) {
        self.0.insert(letter);
    }

    pub fn contains(&self, letter: FragmentLetter) -> bool {
        self.0.contains(&letter)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = FragmentLetter> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<FragmentLetter> for Fragment {
    fn from_iter<I: IntoIterator<Item = FragmentLetter>>(iter: I) -> Self {
        Fragment(iter.into_iter().collect())
    }
}

/// `∅` or the letters in canonical order, e.g. `TC`.
impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        for letter in &self.0 {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

fn constraint_letters(c: &Constraint, out: &mut Fragment) {
    match c {
        Constraint::True
        | Constraint::HasValue(_)
        | Constraint::Filter(_)
        | Constraint::Ref(_)
        | Constraint::Closed(_) => {}
        Constraint::Not(inner) => constraint_letters(inner, out),
        Constraint::And(a, b) => {
            constraint_letters(a, out);
            constraint_letters(b, out);
        }
        Constraint::AtLeast { count, path, inner } => {
            if count.get() != 1 {
                out.insert(FragmentLetter::C);
            }
            path_letters(path, out);
            constraint_letters(inner, out);
        }
        Constraint::Equals { path, .. } => {
            out.insert(FragmentLetter::E);
            path_letters(path, out);
        }
        Constraint::Disjoint { path, .. } => {
            out.insert(FragmentLetter::D);
            path_letters(path, out);
        }
        Constraint::Order { path, .. } => {
            out.insert(FragmentLetter::O);
            path_letters(path, out);
        }
    }
}

fn path_letters(path: &Path, out: &mut Fragment) {
    match path {
        Path::Predicate(_) => {}
        Path::Inverse(q) => path_letters(q, out),
        Path::Sequence(a, b) => {
            out.insert(FragmentLetter::S);
            path_letters(a, out);
            path_letters(b, out);
        }
        Path::Alternative(a, b) => {
            out.insert(FragmentLetter::A);
            path_letters(a, out);
            path_letters(b, out);
        }
        Path::ZeroOrOne(q) => {
            out.insert(FragmentLetter::Z);
            path_letters(q, out);
        }
        Path::ZeroOrMore(q) | Path::OneOrMore(q) => {
            out.insert(FragmentLetter::T);
            path_letters(q, out);
        }
    }
}
