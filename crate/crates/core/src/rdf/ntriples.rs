use super::cursor::Cursor;
use super::{Graph, ParseError, Term, Triple, UnsupportedFeature};
use crate::vocab::xsd;

/// Parses line-oriented N-Triples. `#` comments and blank lines are allowed.
pub fn parse_ntriples(text: &str) -> Result<Graph, ParseError> {
    let mut graph = Graph::new();
    for (index, line) in text.lines().enumerate() {
        let mut cur = Cursor::at_line(line, index + 1);
        cur.skip_inline_space();
        if cur.is_eof() || cur.peek() == Some('#') {
            continue;
        }
        let subject = match cur.peek() {
            Some('<') => Term::iri(cur.iri_ref()?),
            Some('_') => blank(&mut cur)?,
            _ => return Err(cur.syntax("expected IRI or blank node as subject")),
        };
        cur.skip_inline_space();
        if cur.peek() != Some('<') {
            return Err(cur.syntax("expected IRI as predicate"));
        }
        let predicate = Term::iri(cur.iri_ref()?);
        cur.skip_inline_space();
        let object = match cur.peek() {
            Some('<') => Term::iri(cur.iri_ref()?),
            Some('_') => blank(&mut cur)?,
            Some('"') => literal(&mut cur)?,
            _ => return Err(cur.syntax("expected IRI, blank node or literal as object")),
        };
        cur.skip_inline_space();
        cur.expect('.')?;
        cur.skip_inline_space();
        if !(cur.is_eof() || cur.peek() == Some('#')) {
            return Err(cur.syntax("unexpected content after `.`"));
        }
        graph.insert(Triple::new(subject, predicate, object));
    }
    Ok(graph)
}

fn blank(cur: &mut Cursor) -> Result<Term, ParseError> {
    if !cur.starts_with("_:") {
        return Err(cur.syntax("expected `_:`"));
    }
    cur.advance(2);
    Ok(Term::blank(cur.blank_label()?))
}

fn literal(cur: &mut Cursor) -> Result<Term, ParseError> {
    let lexical = cur.quoted_string()?;
    if cur.starts_with("^^") {
        cur.advance(2);
        return Ok(Term::literal(lexical, cur.iri_ref()?));
    }
    if cur.peek() == Some('@') {
        let (line, column) = cur.position();
        return Err(ParseError::Unsupported {
            line,
            column,
            feature: UnsupportedFeature::LanguageTag,
        });
    }
    Ok(Term::literal(lexical, xsd::STRING))
}
