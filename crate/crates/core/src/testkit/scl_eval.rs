//! Model checking of SCL sentences on the structure induced by a graph and
//! an assignment.
//!
//! The domain is `nodes(g, d)`. `R_p` holds the `p`-triples, `isA` the
//! `rdf:type` triples, `Σs` the `Pos` pairs of the assignment. Path formulas
//! are computed as whole binary relations, bottom up, so this shares no code
//! with the focus-node path evaluator.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::ast::{Comparison, Document};
use crate::eval::{compare_literals, eval_filter, node_universe, Assignment, Sign};
use crate::rdf::{Graph, Term};
use crate::scl::{SclAxiom, SclFormula, SclPath, SclSentence, TargetForm};
use crate::vocab::rdf;

type Relation = BTreeSet<(Term, Term)>;

struct Structure<'a> {
    g: &'a Graph,
    sigma: &'a Assignment,
    domain: Vec<Term>,
}

/// `I ⊨ s` where `I` is induced by `g`, `sigma` and the universe of `d`.
pub fn satisfies(g: &Graph, sigma: &Assignment, d: &Document, s: &SclSentence) -> bool {
    let st = Structure {
        g,
        sigma,
        domain: node_universe(g, d).0.into_iter().collect(),
    };
    s.conjuncts.iter().all(|a| st.axiom(a))
}

/// Truth of `f` at `x` in the induced structure.
pub fn satisfies_formula(g: &Graph, sigma: &Assignment, d: &Document, f: &SclFormula, x: &Term) -> bool {
    let st = Structure {
        g,
        sigma,
        domain: node_universe(g, d).0.into_iter().collect(),
    };
    st.formula(f, x)
}

impl Structure<'_> {
    fn role(&self, p: &Term) -> Relation {
        self.g
            .iter()
            .filter(|t| &t.predicate == p)
            .map(|t| (t.subject.clone(), t.object.clone()))
            .collect()
    }

    fn shape_holds(&self, s: &crate::ast::ShapeName, x: &Term) -> bool {
        self.sigma.get(x, s) == Some(Sign::Pos)
    }

    fn axiom(&self, a: &SclAxiom) -> bool {
        match a {
            SclAxiom::Target { form, shape, param } => {
                let targeted: BTreeSet<Term> = match form {
                    TargetForm::Node => BTreeSet::from([param.clone()]),
                    TargetForm::Class => self
                        .role(&Term::iri(rdf::TYPE))
                        .into_iter()
                        .filter(|(_, c)| c == param)
                        .map(|(x, _)| x)
                        .collect(),
                    TargetForm::SubjectsOf => self.role(param).into_iter().map(|(x, _)| x).collect(),
                    TargetForm::ObjectsOf => self.role(param).into_iter().map(|(_, x)| x).collect(),
                };
                targeted.iter().all(|x| self.shape_holds(shape, x))
            }
            SclAxiom::Constraint { shape, body } => self
                .domain
                .iter()
                .all(|x| self.shape_holds(shape, x) == self.formula(body, x)),
        }
    }

    fn path(&self, p: &SclPath) -> Relation {
        match p {
            SclPath::Rel { relation, inverse } => {
                let r = self.role(relation);
                if *inverse {
                    r.into_iter().map(|(a, b)| (b, a)).collect()
                } else {
                    r
                }
            }
            SclPath::Seq(a, b) => compose(&self.path(a), &self.path(b)),
            SclPath::Alt(a, b) => self.path(a).union(&self.path(b)).cloned().collect(),
            SclPath::ZeroOrOne(q) => {
                let mut r = self.identity();
                r.extend(self.path(q));
                r
            }
            SclPath::Star(q) => {
                let mut r = self.identity();
                r.extend(self.path(q));
                star(r)
            }
            SclPath::Plus(q) => {
                let step = self.path(q);
                let mut refl = self.identity();
                refl.extend(step.iter().cloned());
                compose(&step, &star(refl))
            }
        }
    }

    fn identity(&self) -> Relation {
        self.domain.iter().map(|x| (x.clone(), x.clone())).collect()
    }

    fn successors(&self, p: &SclPath, x: &Term) -> Vec<Term> {
        self.path(p)
            .into_iter()
            .filter(|(a, _)| a == x)
            .map(|(_, b)| b)
            .collect()
    }

    fn related(&self, p: &Term, x: &Term, y: &Term) -> bool {
        self.role(p).contains(&(x.clone(), y.clone()))
    }

    fn formula(&self, f: &SclFormula, x: &Term) -> bool {
        match f {
            SclFormula::Top => true,
            SclFormula::Neg(inner) => !self.formula(inner, x),
            SclFormula::Conj(a, b) => self.formula(a, x) && self.formula(b, x),
            SclFormula::EqConst(c) => x == c,
            SclFormula::Filter(kind) => eval_filter(kind, x),
            SclFormula::Shape(s) => self.shape_holds(s, x),
            SclFormula::Exists { path, body } => {
                self.successors(path, x).iter().any(|y| self.formula(body, y))
            }
            SclFormula::CountGeq { count, path, body } => {
                self.successors(path, x)
                    .iter()
                    .filter(|y| self.formula(body, y))
                    .count()
                    >= count.get()
            }
            SclFormula::Disjoint { path, relation } => !self
                .successors(path, x)
                .iter()
                .any(|y| self.related(relation, x, y)),
            SclFormula::Equals { path, relation } => {
                let along: BTreeSet<Term> = self.successors(path, x).into_iter().collect();
                self.domain
                    .iter()
                    .all(|y| along.contains(y) == self.related(relation, x, y))
            }
            SclFormula::OrderAll {
                path,
                relation,
                comparison,
            } => {
                let along = self.successors(path, x);
                self.domain
                    .iter()
                    .filter(|z| self.related(relation, x, z))
                    .all(|z| {
                        along.iter().all(|y| {
                            let ord = compare_literals(y, z);
                            match comparison {
                                Comparison::Less => ord == Some(Ordering::Less),
                                Comparison::LessOrEqual => {
                                    matches!(ord, Some(Ordering::Less | Ordering::Equal))
                                }
                                Comparison::Greater => ord == Some(Ordering::Greater),
                                Comparison::GreaterOrEqual => {
                                    matches!(ord, Some(Ordering::Greater | Ordering::Equal))
                                }
                            }
                        })
                    })
            }
            SclFormula::Closed(allowed) => self
                .g
                .iter()
                .filter(|t| &t.subject == x)
                .all(|t| allowed.contains(&t.predicate)),
        }
    }
}

fn compose(a: &Relation, b: &Relation) -> Relation {
    let mut out = Relation::new();
    for (x, y) in a {
        for (y2, z) in b {
            if y == y2 {
                out.insert((x.clone(), z.clone()));
            }
        }
    }
    out
}

/// Transitive closure of a reflexive relation, by squaring to a fixpoint.
fn star(mut r: Relation) -> Relation {
    loop {
        let next: Relation = r.union(&compose(&r, &r)).cloned().collect();
        if next.len() == r.len() {
            return r;
        }
        r = next;
    }
}
