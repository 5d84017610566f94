use std::cmp::Ordering;

use crate::ast::FilterKind;
use crate::rdf::{Literal, Term};
use crate::vocab::xsd;

/// Two-valued filter test on a single node.
pub fn eval_filter(filter: &FilterKind, node: &Term) -> bool {
    match filter {
        FilterKind::NodeKindIri => node.is_iri(),
        FilterKind::NodeKindBlank => node.is_blank(),
        FilterKind::NodeKindLiteral => node.is_literal(),
        FilterKind::Datatype(d) => match (node, d) {
            (Term::Literal(lit), Term::Iri(dt)) => lit.datatype() == &**dt,
            _ => false,
        },
        // Blank nodes have no string form in SHACL length/pattern semantics.
        FilterKind::MinLength(k) => !node.is_blank() && node.lexical_form().chars().count() >= *k,
        FilterKind::MaxLength(k) => !node.is_blank() && node.lexical_form().chars().count() <= *k,
        FilterKind::Pattern(p) => !node.is_blank() && p.is_match(node.lexical_form()),
        FilterKind::In(set) => set.contains(node),
    }
}

/// Order between two literals: numeric when both datatypes are numeric,
/// code-point order when both are strings, `None` otherwise.
pub fn compare_literals(a: &Term, b: &Term) -> Option<Ordering> {
    let (a, b) = (a.as_literal()?, b.as_literal()?);
    if is_numeric(a) && is_numeric(b) {
        return Some(Decimal::parse(a.lexical())?.cmp(&Decimal::parse(b.lexical())?));
    }
    if a.datatype() == xsd::STRING && b.datatype() == xsd::STRING {
        return Some(a.lexical().cmp(b.lexical()));
    }
    None
}

fn is_numeric(lit: &Literal) -> bool {
    xsd::NUMERIC.contains(&lit.datatype())
}

/// Exact decimal: sign, integer digits without leading zeros, fraction
/// digits without trailing zeros.
#[derive(Debug, PartialEq, Eq)]
struct Decimal {
    negative: bool,
    int: String,
    frac: String,
}

impl Decimal {
    fn parse(text: &str) -> Option<Decimal> {
        let text = text.trim();
        let (negative, body) = match text.as_bytes().first()? {
            b'-' => (true, &text[1..]),
            b'+' => (false, &text[1..]),
            _ => (false, text),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.bytes().chain(frac.bytes()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let int = int.trim_start_matches('0').to_string();
        let frac = frac.trim_end_matches('0').to_string();
        let zero = int.is_empty() && frac.is_empty();
        Some(Decimal {
            negative: negative && !zero,
            int,
            frac,
        })
    }

    fn cmp_magnitude(&self, other: &Decimal) -> Ordering {
        self.int
            .len()
            .cmp(&other.int.len())
            .then_with(|| self.int.cmp(&other.int))
            .then_with(|| self.frac.cmp(&other.frac))
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.negative, other.negative) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (false, false) => self.cmp_magnitude(other),
            (true, true) => other.cmp_magnitude(self),
        }
    }
}
