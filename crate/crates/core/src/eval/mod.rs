//! Three-valued constraint evaluation under shape assignments.

mod constraint;
mod faithful;
mod filter;
mod path;

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Not;

use crate::ast::{Document, ShapeName, TargetDecl};
use crate::rdf::{Graph, Term};
use crate::vocab::rdf;

pub use constraint::eval_constraint;
pub use faithful::{check_condition1, check_condition1_over, check_targets, is_faithful, is_total};
pub use filter::{compare_literals, eval_filter};
pub use path::path_eval;

/// Kleene truth value, ordered `False < Undefined < True`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue {
    False,
    Undefined,
    True,
}

impl TruthValue {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    pub fn and(self, other: TruthValue) -> TruthValue {
        self.min(other)
    }

    pub fn or(self, other: TruthValue) -> TruthValue {
        self.max(other)
    }

    pub fn is_defined(self) -> bool {
        self != TruthValue::Undefined
    }
}

impl Not for TruthValue {
    type Output = TruthValue;

    fn not(self) -> TruthValue {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            TruthValue::Undefined => TruthValue::Undefined,
        }
    }
}

/// `Pos` records `s ∈ σ(n)`, `Neg` records `¬s ∈ σ(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn truth(self) -> TruthValue {
        match self {
            Sign::Pos => TruthValue::True,
            Sign::Neg => TruthValue::False,
        }
    }

    /// The sign matching a defined truth value.
    pub fn of(value: TruthValue) -> Option<Sign> {
        match value {
            TruthValue::True => Some(Sign::Pos),
            TruthValue::False => Some(Sign::Neg),
            TruthValue::Undefined => None,
        }
    }
}

/// Read access to the sign recorded for a (node, shape) pair.
pub trait ShapeSigns {
    fn sign(&self, node: &Term, shape: &ShapeName) -> Option<Sign>;

    fn truth(&self, node: &Term, shape: &ShapeName) -> TruthValue {
        self.sign(node, shape).map_or(TruthValue::Undefined, Sign::truth)
    }
}

/// A shape assignment. Pairs without a sign are `Undefined`; a pair can never
/// carry both signs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    signs: BTreeMap<Term, BTreeMap<ShapeName, Sign>>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a sign, replacing any previous one for the pair.
    pub fn set(&mut self, node: Term, shape: ShapeName, sign: Sign) {
        self.signs.entry(node).or_default().insert(shape, sign);
    }

    /// Makes the pair `Undefined`.
    pub fn clear(&mut self, node: &Term, shape: &ShapeName) {
        if let Some(m) = self.signs.get_mut(node) {
            m.remove(shape);
            if m.is_empty() {
                self.signs.remove(node);
            }
        }
    }

    pub fn get(&self, node: &Term, shape: &ShapeName) -> Option<Sign> {
        self.signs.get(node)?.get(shape).copied()
    }

    /// Signed pairs in (node, shape) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Term, &ShapeName, Sign)> + '_ {
        self.signs
            .iter()
            .flat_map(|(n, m)| m.iter().map(move |(s, &sign)| (n, s, sign)))
    }

    /// Number of signed pairs.
    pub fn len(&self) -> usize {
        self.signs.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }
}

impl ShapeSigns for Assignment {
    fn sign(&self, node: &Term, shape: &ShapeName) -> Option<Sign> {
        self.get(node, shape)
    }
}

impl FromIterator<(Term, ShapeName, Sign)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Term, ShapeName, Sign)>>(iter: I) -> Self {
        let mut a = Assignment::new();
        for (n, s, sign) in iter {
            a.set(n, s, sign);
        }
        a
    }
}

/// `nodes(G, M)`: subjects and objects of `G` plus every node-target constant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodeUniverse(pub BTreeSet<Term>);

impl NodeUniverse {
    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Term> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.0.contains(t)
    }
}

pub fn node_universe(g: &Graph, d: &Document) -> NodeUniverse {
    let mut nodes = g.nodes();
    for shape in d.shapes() {
        for target in &shape.targets {
            if let TargetDecl::Node(c) = target {
                nodes.insert(c.clone());
            }
        }
    }
    NodeUniverse(nodes)
}

/// Nodes selected by a target declaration. Node targets select their
/// constant whether or not it occurs in `g`.
pub fn target_nodes(g: &Graph, target: &TargetDecl) -> BTreeSet<Term> {
    match target {
        TargetDecl::Node(c) => BTreeSet::from([c.clone()]),
        TargetDecl::Class(c) => g.subjects(&Term::iri(rdf::TYPE), c).clone(),
        TargetDecl::SubjectsOf(p) => g.subjects_with(p).clone(),
        TargetDecl::ObjectsOf(p) => g.objects_with(p).clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_turtle_subset;

    const FIG1_DATA: &str = "@prefix : <http://example.org/> .
        :Anne a :Employee .
        :Bob a :Employee ; :hasOfficeNumber \"18\" ; :hasOfficeNumber \"3\" .
        :Carl a :Employee ; :hasOfficeNumber \"171\" .
        :David a :Customer .";

    fn ex(s: &str) -> Term {
        Term::iri(format!("http://example.org/{s}"))
    }

    #[test]
    fn kleene_tables() {
        use TruthValue::*;
        let all = [False, Undefined, True];
        for a in all {
            for b in all {
                assert_eq!(a.and(b), b.and(a));
                assert_eq!(!(a.and(b)), (!a).or(!b));
            }
        }
        assert_eq!(!Undefined, Undefined);
        assert_eq!(Undefined.and(False), False);
        assert_eq!(Undefined.or(True), True);
        assert_eq!(Undefined.and(True), Undefined);
    }

    #[test]
    fn assignment_set_and_clear() {
        let s = ShapeName::iri("urn:s");
        let mut a = Assignment::new();
        a.set(ex("x"), s.clone(), Sign::Pos);
        a.set(ex("x"), s.clone(), Sign::Neg);
        assert_eq!(a.get(&ex("x"), &s), Some(Sign::Neg));
        assert_eq!(a.len(), 1);
        a.clear(&ex("x"), &s);
        assert!(a.is_empty());
        assert_eq!(a.truth(&ex("x"), &s), TruthValue::Undefined);
    }

    #[test]
    fn targets() {
        let g = parse_turtle_subset(FIG1_DATA).unwrap();
        assert_eq!(
            target_nodes(&g, &TargetDecl::Class(ex("Employee"))),
            BTreeSet::from([ex("Anne"), ex("Bob"), ex("Carl")])
        );
        let empty = Graph::new();
        assert_eq!(
            target_nodes(&empty, &TargetDecl::Node(ex("DailySpecial"))),
            BTreeSet::from([ex("DailySpecial")])
        );
        assert!(target_nodes(&empty, &TargetDecl::SubjectsOf(ex("worksAt"))).is_empty());
        assert_eq!(
            target_nodes(&g, &TargetDecl::ObjectsOf(ex("hasOfficeNumber"))),
            BTreeSet::from([Term::string("18"), Term::string("3"), Term::string("171")])
        );
        assert_eq!(
            target_nodes(&g, &TargetDecl::SubjectsOf(ex("hasOfficeNumber"))),
            BTreeSet::from([ex("Bob"), ex("Carl")])
        );
    }

    #[test]
    fn universe_examples() {
        use crate::ast::{Constraint, Shape};
        let g = parse_turtle_subset(FIG1_DATA).unwrap();
        let u = node_universe(&g, &Document::empty());
        // 4 subjects, 2 classes, 3 office-number literals
        assert_eq!(u.len(), 9);
        assert!(u.contains(&ex("Customer")));
        assert!(!u.contains(&Term::iri(rdf::TYPE)));

        let s = ShapeName::iri("urn:s");
        let inconsistent =
            Document::new([Shape::new(s.clone(), [], Constraint::not(Constraint::Ref(s)))]).unwrap();
        assert!(node_universe(&Graph::new(), &inconsistent).is_empty());

        let targeted = Document::new([Shape::new(
            ShapeName::iri("urn:t"),
            [TargetDecl::Node(ex("x"))],
            Constraint::True,
        )])
        .unwrap();
        assert_eq!(
            node_universe(&Graph::new(), &targeted).0,
            BTreeSet::from([ex("x")])
        );
    }
}
