use std::collections::{BTreeSet, HashMap};

use super::term::{Term, Triple};

type Index = HashMap<Term, HashMap<Term, BTreeSet<Term>>>;

/// A set of triples with subject-predicate and object-predicate indexes.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    // subject -> predicate -> objects
    forward: Index,
    // object -> predicate -> subjects
    backward: Index,
    // predicate -> (subjects, objects)
    by_predicate: HashMap<Term, (BTreeSet<Term>, BTreeSet<Term>)>,
}

static EMPTY: BTreeSet<Term> = BTreeSet::new();

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns false if the triple was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.triples.contains(&triple) {
            return false;
        }
        let Triple {
            subject,
            predicate,
            object,
        } = triple.clone();
        self.forward
            .entry(subject.clone())
            .or_default()
            .entry(predicate.clone())
            .or_default()
            .insert(object.clone());
        self.backward
            .entry(object.clone())
            .or_default()
            .entry(predicate.clone())
            .or_default()
            .insert(subject.clone());
        let (subjects, objects) = self.by_predicate.entry(predicate).or_default();
        subjects.insert(subject);
        objects.insert(object);
        self.triples.insert(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    /// Triples in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.triples.iter()
    }

    /// `{ o | (s, p, o) ∈ g }`
    pub fn objects(&self, subject: &Term, predicate: &Term) -> &BTreeSet<Term> {
        self.forward
            .get(subject)
            .and_then(|m| m.get(predicate))
            .unwrap_or(&EMPTY)
    }

    /// `{ s | (s, p, o) ∈ g }`
    pub fn subjects(&self, predicate: &Term, object: &Term) -> &BTreeSet<Term> {
        self.backward
            .get(object)
            .and_then(|m| m.get(predicate))
            .unwrap_or(&EMPTY)
    }

    /// Subjects of any triple with this predicate.
    pub fn subjects_with(&self, predicate: &Term) -> &BTreeSet<Term> {
        self.by_predicate.get(predicate).map(|(s, _)| s).unwrap_or(&EMPTY)
    }

    /// Objects of any triple with this predicate.
    pub fn objects_with(&self, predicate: &Term) -> &BTreeSet<Term> {
        self.by_predicate.get(predicate).map(|(_, o)| o).unwrap_or(&EMPTY)
    }

    /// Predicates of the triples whose subject is `subject`.
    pub fn predicates_of(&self, subject: &Term) -> impl Iterator<Item = &Term> + '_ {
        self.forward.get(subject).into_iter().flat_map(|m| m.keys())
    }

    pub fn predicates(&self) -> impl Iterator<Item = &Term> + '_ {
        self.by_predicate.keys()
    }

    /// Every term occurring in subject or object position.
    pub fn nodes(&self) -> BTreeSet<Term> {
        self.forward.keys().chain(self.backward.keys()).cloned().collect()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter);
        g
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = std::collections::btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}
