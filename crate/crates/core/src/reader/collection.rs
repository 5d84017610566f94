use std::collections::BTreeSet;

use super::ReaderError;
use crate::ast::Path;
use crate::rdf::{Graph, Term};
use crate::vocab::{rdf, sh};

/// Members of the RDF collection starting at `head`.
pub(super) fn read_list(g: &Graph, head: &Term) -> Result<Vec<Term>, ReaderError> {
    let first = Term::iri(rdf::FIRST);
    let rest = Term::iri(rdf::REST);
    let nil = Term::iri(rdf::NIL);
    let mut items = Vec::new();
    let mut seen = BTreeSet::new();
    let mut cell = head.clone();
    while cell != nil {
        if !seen.insert(cell.clone()) {
            return Err(malformed(head, "cyclic rdf:rest chain"));
        }
        let item =
            single(g, &cell, &first).ok_or_else(|| malformed(head, "cell without exactly one rdf:first"))?;
        let next =
            single(g, &cell, &rest).ok_or_else(|| malformed(head, "cell without exactly one rdf:rest"))?;
        items.push(item);
        cell = next;
    }
    Ok(items)
}

pub(super) fn is_list(g: &Graph, node: &Term) -> bool {
    *node == Term::iri(rdf::NIL) || !g.objects(node, &Term::iri(rdf::FIRST)).is_empty()
}

fn single(g: &Graph, s: &Term, p: &Term) -> Option<Term> {
    let values = g.objects(s, p);
    if values.len() == 1 {
        values.iter().next().cloned()
    } else {
        None
    }
}

fn malformed(head: &Term, message: &str) -> ReaderError {
    ReaderError::MalformedCollection {
        node: head.clone(),
        message: message.to_string(),
    }
}

/// Reads the object of `sh:path` as a property path.
pub(super) fn read_path(g: &Graph, shape: &Term, node: &Term) -> Result<Path, ReaderError> {
    read_path_guarded(g, shape, node, &mut BTreeSet::new())
}

fn read_path_guarded(
    g: &Graph,
    shape: &Term,
    node: &Term,
    open: &mut BTreeSet<Term>,
) -> Result<Path, ReaderError> {
    let bad = |message: &str| ReaderError::InvalidPath {
        shape: shape.clone(),
        message: message.to_string(),
    };
    match node {
        Term::Literal(_) => return Err(ReaderError::LiteralPath { shape: shape.clone() }),
        Term::Iri(_) if *node != Term::iri(rdf::NIL) => return Ok(Path::Predicate(node.clone())),
        _ => {}
    }
    if !open.insert(node.clone()) {
        return Err(bad("cyclic path structure"));
    }
    let path = if is_list(g, node) {
        let items = read_list(g, node)?;
        fold(g, shape, &items, open, Path::then).ok_or_else(|| bad("empty sequence path"))??
    } else {
        let unary = [
            (sh::INVERSE_PATH, Path::inverse as fn(Path) -> Path),
            (sh::ZERO_OR_MORE_PATH, Path::zero_or_more),
            (sh::ONE_OR_MORE_PATH, Path::one_or_more),
            (sh::ZERO_OR_ONE_PATH, Path::zero_or_one),
        ];
        let mut found = Vec::new();
        for (pred, build) in unary {
            for inner in g.objects(node, &Term::iri(pred)) {
                found.push(read_path_guarded(g, shape, inner, open).map(build));
            }
        }
        for list in g.objects(node, &Term::iri(sh::ALTERNATIVE_PATH)) {
            let items = read_list(g, list)?;
            found.push(fold(g, shape, &items, open, Path::or).ok_or_else(|| bad("empty alternative path"))?);
        }
        if found.len() != 1 {
            return Err(bad("blank path node must have exactly one path operator"));
        }
        found.pop().expect("one element")?
    };
    open.remove(node);
    Ok(path)
}

/// Right fold of the member paths with `combine`; `None` for an empty list.
fn fold(
    g: &Graph,
    shape: &Term,
    items: &[Term],
    open: &mut BTreeSet<Term>,
    combine: fn(Path, Path) -> Path,
) -> Option<Result<Path, ReaderError>> {
    let (last, init) = items.split_last()?;
    let mut acc = match read_path_guarded(g, shape, last, open) {
        Ok(p) => p,
        Err(e) => return Some(Err(e)),
    };
    for item in init.iter().rev() {
        match read_path_guarded(g, shape, item, open) {
            Ok(p) => acc = combine(p, acc),
            Err(e) => return Some(Err(e)),
        }
    }
    Some(Ok(acc))
}
