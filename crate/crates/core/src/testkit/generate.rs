use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::ast::{Comparison, Constraint, Document, FilterKind, Path, Pattern, Shape, ShapeName, TargetDecl};
use crate::eval::{node_universe, Assignment, Sign};
use crate::rdf::{Graph, Term, Triple};
use crate::vocab::{rdf, xsd};

const EX: &str = "http://example.org/";

fn ex(local: &str) -> Term {
    Term::iri(format!("{EX}{local}"))
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    /// Upper bound on `|nodes(g, d)| × |shapes|`.
    pub max_pairs: usize,
    pub max_shapes: usize,
    pub max_triples: usize,
    pub max_depth: u32,
    pub allow_closed: bool,
    pub allow_pairs: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_pairs: 12,
            max_shapes: 3,
            max_triples: 6,
            max_depth: 3,
            allow_closed: true,
            allow_pairs: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub document: Document,
}

impl Instance {
    pub fn pair_count(&self) -> usize {
        node_universe(&self.graph, &self.document).len() * self.document.len()
    }
}

/// Candidate nodes. IRIs come first so small pools stay mostly IRIs.
fn node_candidates() -> Vec<Term> {
    vec![
        ex("a"),
        ex("b"),
        ex("C"),
        Term::integer(1),
        ex("c"),
        Term::string("abc"),
        Term::blank("b0"),
        Term::integer(2),
    ]
}

fn predicates() -> Vec<Term> {
    vec![ex("p"), ex("q"), Term::iri(rdf::TYPE)]
}

struct Gen<'a, R> {
    rng: &'a mut R,
    config: &'a GenConfig,
    pool: Vec<Term>,
    shapes: Vec<ShapeName>,
}

/// A random graph and document whose universe times shape count stays within
/// `config.max_pairs`. Every universe node is drawn from a pool sized to
/// respect the bound.
pub fn random_instance<R: Rng>(rng: &mut R, config: &GenConfig) -> Instance {
    let shape_count = rng.random_range(1..=config.max_shapes.max(1));
    let max_nodes = (config.max_pairs / shape_count).clamp(1, node_candidates().len());
    let pool_size = rng.random_range(1..=max_nodes);
    let mut pool = node_candidates();
    pool.truncate(pool_size);
    let shapes: Vec<ShapeName> = (0..shape_count)
        .map(|i| ShapeName(ex(&format!("s{i}"))))
        .collect();
    let mut gen = Gen {
        rng,
        config,
        pool,
        shapes,
    };
    let graph = gen.graph();
    let document = gen.document();
    Instance { graph, document }
}

impl<R: Rng> Gen<'_, R> {
    fn node(&mut self) -> Term {
        self.pool.choose(self.rng).expect("pool is never empty").clone()
    }

    fn predicate(&mut self) -> Term {
        predicates().choose(self.rng).unwrap().clone()
    }

    fn graph(&mut self) -> Graph {
        let mut g = Graph::new();
        let n = self.rng.random_range(0..=self.config.max_triples);
        for _ in 0..n {
            let s = self.node();
            let p = self.predicate();
            let o = self.node();
            g.insert(Triple::new(s, p, o));
        }
        g
    }

    fn document(&mut self) -> Document {
        let names = self.shapes.clone();
        let shapes: Vec<Shape> = names
            .into_iter()
            .map(|name| {
                let targets = self.targets();
                let constraint = self.constraint(self.config.max_depth);
                Shape::new(name, targets, constraint)
            })
            .collect();
        Document::new(shapes).expect("generated shapes reference only generated names")
    }

    fn targets(&mut self) -> Vec<TargetDecl> {
        let mut out = Vec::new();
        while self.rng.random_bool(0.45) && out.len() < 2 {
            let t = match self.rng.random_range(0..4) {
                0 => TargetDecl::Node(self.node()),
                1 => TargetDecl::Class(ex("C")),
                2 => TargetDecl::SubjectsOf(self.predicate()),
                _ => TargetDecl::ObjectsOf(self.predicate()),
            };
            out.push(t);
        }
        out
    }

    fn path(&mut self, depth: u32) -> Path {
        if depth == 0 || self.rng.random_bool(0.6) {
            return Path::Predicate(self.predicate());
        }
        let a = self.path(depth - 1);
        match self.rng.random_range(0..6) {
            0 => a.inverse(),
            1 => a.then(self.path(depth - 1)),
            2 => a.or(self.path(depth - 1)),
            3 => a.zero_or_one(),
            4 => a.zero_or_more(),
            _ => a.one_or_more(),
        }
    }

    fn filter(&mut self) -> FilterKind {
        match self.rng.random_range(0..8) {
            0 => FilterKind::NodeKindIri,
            1 => FilterKind::NodeKindBlank,
            2 => FilterKind::NodeKindLiteral,
            3 => FilterKind::Datatype(Term::iri(xsd::INTEGER)),
            4 => FilterKind::MinLength(self.rng.random_range(1..=3)),
            5 => FilterKind::MaxLength(self.rng.random_range(1..=3)),
            6 => FilterKind::Pattern(Pattern::new("^a", "").expect("constant pattern")),
            _ => {
                let k = self.rng.random_range(1..=2);
                FilterKind::In((0..k).map(|_| self.node()).collect())
            }
        }
    }

    fn leaf(&mut self) -> Constraint {
        loop {
            return match self.rng.random_range(0..7) {
                0 => Constraint::True,
                1 => Constraint::HasValue(self.node()),
                2 => Constraint::Filter(self.filter()),
                3 | 4 => Constraint::Ref(self.shapes.choose(self.rng).unwrap().clone()),
                5 if self.config.allow_closed => {
                    let allowed: BTreeSet<Term> = predicates()
                        .into_iter()
                        .filter(|_| self.rng.random_bool(0.5))
                        .collect();
                    Constraint::Closed(allowed)
                }
                6 if self.config.allow_pairs => {
                    let path = self.path(1);
                    let predicate = self.predicate();
                    match self.rng.random_range(0..3) {
                        0 => Constraint::Equals { path, predicate },
                        1 => Constraint::Disjoint { path, predicate },
                        _ => Constraint::Order {
                            path,
                            predicate,
                            comparison: *[Comparison::Less, Comparison::LessOrEqual]
                                .choose(self.rng)
                                .unwrap(),
                        },
                    }
                }
                _ => continue,
            };
        }
    }

    fn constraint(&mut self, depth: u32) -> Constraint {
        if depth == 0 || self.rng.random_bool(0.3) {
            return self.leaf();
        }
        match self.rng.random_range(0..4) {
            0 => Constraint::not(self.constraint(depth - 1)),
            1 => Constraint::and(self.constraint(depth - 1), self.constraint(depth - 1)),
            _ => {
                let count = self.rng.random_range(1..=2);
                let path = self.path(2);
                Constraint::at_least(count, path, self.constraint(depth - 1)).expect("count is positive")
            }
        }
    }
}

/// A triple whose predicate is not mentioned by `d`. Its subject and object
/// are either existing universe nodes or fresh IRIs.
pub fn fresh_predicate_triple<R: Rng>(rng: &mut R, g: &Graph, d: &Document) -> Triple {
    let universe: Vec<Term> = node_universe(g, d).0.into_iter().collect();
    let mentioned = d.mentioned_terms();
    let mut i = 0;
    let predicate = loop {
        let p = ex(&format!("fresh{i}"));
        if !mentioned.contains(&p) {
            break p;
        }
        i += 1;
    };
    let mut end = |label: &str| match universe.choose(rng) {
        Some(n) if rng.random_bool(0.6) => n.clone(),
        _ => ex(label),
    };
    let s = end("newSubject");
    let o = end("newObject");
    Triple::new(s, predicate, o)
}

/// Every total assignment over `nodes(g, d)` × shapes.
pub fn total_assignments(g: &Graph, d: &Document) -> Vec<Assignment> {
    let universe = node_universe(g, d);
    let pairs: Vec<(Term, ShapeName)> = universe
        .iter()
        .flat_map(|n| d.names().map(move |s| (n.clone(), s.clone())))
        .collect();
    assert!(pairs.len() < 24, "too many pairs to enumerate");
    (0u32..1 << pairs.len())
        .map(|bits| {
            pairs
                .iter()
                .enumerate()
                .map(|(i, (n, s))| {
                    let sign = if bits >> i & 1 == 1 { Sign::Pos } else { Sign::Neg };
                    (n.clone(), s.clone(), sign)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn instances_respect_the_pair_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let config = GenConfig::default();
        for _ in 0..300 {
            let inst = random_instance(&mut rng, &config);
            assert!(inst.pair_count() <= config.max_pairs);
        }
    }

    #[test]
    fn closed_can_be_switched_off() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let config = GenConfig {
            allow_closed: false,
            ..GenConfig::default()
        };
        for _ in 0..300 {
            assert!(!random_instance(&mut rng, &config).document.contains_closed());
        }
    }

    #[test]
    fn fresh_predicates_are_unmentioned() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let inst = random_instance(&mut rng, &GenConfig::default());
            let t = fresh_predicate_triple(&mut rng, &inst.graph, &inst.document);
            assert!(!inst.document.mentioned_terms().contains(&t.predicate));
        }
    }

    #[test]
    fn total_assignment_count() {
        let mut g = Graph::new();
        g.insert(Triple::new(ex("a"), ex("p"), ex("b")));
        let d = Document::new([Shape::new(ShapeName(ex("s")), [], Constraint::True)]).unwrap();
        assert_eq!(total_assignments(&g, &d).len(), 4);
    }
}
