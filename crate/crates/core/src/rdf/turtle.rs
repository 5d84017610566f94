//! A Turtle subset: `@prefix`/`PREFIX` directives, prefixed names, the `a`
//! keyword, `;` and `,` lists, string/integer/decimal/boolean literals,
//! `^^` datatypes, `[ ... ]` anonymous nodes and `( ... )` collections.
//!
//! Language tags, long (triple-quoted) strings, doubles and base IRIs are
//! rejected with [`ParseError::Unsupported`].

use std::collections::HashMap;

use super::cursor::Cursor;
use super::{Graph, ParseError, Term, Triple, UnsupportedFeature};
use crate::vocab::{rdf, xsd};

/// Parses the supported Turtle subset. Anonymous nodes and collection cells
/// are labelled `b0`, `b1`, ... in document order.
pub fn parse_turtle_subset(text: &str) -> Result<Graph, ParseError> {
    let mut parser = Parser {
        cur: Cursor::new(text),
        prefixes: HashMap::new(),
        graph: Graph::new(),
        next_blank: 0,
    };
    parser.document()?;
    Ok(parser.graph)
}

struct Parser {
    cur: Cursor,
    prefixes: HashMap<String, String>,
    graph: Graph,
    next_blank: usize,
}

impl Parser {
    fn document(&mut self) -> Result<(), ParseError> {
        loop {
            self.cur.skip_trivia();
            if self.cur.is_eof() {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn unsupported(&self, feature: UnsupportedFeature) -> ParseError {
        let (line, column) = self.cur.position();
        ParseError::Unsupported {
            line,
            column,
            feature,
        }
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        if self.cur.starts_with("@prefix") {
            self.cur.advance("@prefix".len());
            self.prefix_body()?;
            self.cur.skip_trivia();
            return self.cur.expect('.');
        }
        if self.cur.starts_with_ignore_case("prefix") && self.cur.peek_at(6).is_some_and(char::is_whitespace)
        {
            self.cur.advance("prefix".len());
            return self.prefix_body();
        }
        if self.cur.starts_with("@base")
            || (self.cur.starts_with_ignore_case("base")
                && self.cur.peek_at(4).is_some_and(char::is_whitespace))
        {
            return Err(self.unsupported(UnsupportedFeature::BaseIri));
        }
        if self.cur.peek() == Some('@') {
            return Err(self.cur.syntax("unknown directive"));
        }
        self.triples()?;
        self.cur.skip_trivia();
        self.cur.expect('.')
    }

    fn prefix_body(&mut self) -> Result<(), ParseError> {
        self.cur.skip_trivia();
        let mut name = String::new();
        while let Some(c) = self.cur.peek() {
            if c == ':' {
                break;
            }
            if !(c.is_alphanumeric() || c == '_' || c == '-' || c == '.') {
                return Err(self.cur.syntax("expected prefix name followed by `:`"));
            }
            name.push(c);
            self.cur.bump();
        }
        self.cur.expect(':')?;
        self.cur.skip_trivia();
        let iri = self.cur.iri_ref()?;
        self.prefixes.insert(name, iri);
        Ok(())
    }

    fn fresh_blank(&mut self) -> Term {
        let label = format!("b{}", self.next_blank);
        self.next_blank += 1;
        Term::blank(label)
    }

    fn emit(&mut self, s: &Term, p: &Term, o: Term) {
        self.graph.insert(Triple::new(s.clone(), p.clone(), o));
    }

    fn triples(&mut self) -> Result<(), ParseError> {
        if self.cur.peek() == Some('[') {
            let subject = self.blank_property_list()?;
            self.cur.skip_trivia();
            if self.cur.peek() == Some('.') {
                return Ok(());
            }
            return self.predicate_object_list(&subject);
        }
        let subject = match self.cur.peek() {
            Some('(') => self.collection()?,
            Some('"') => return Err(self.cur.syntax("literal in subject position")),
            _ => self.iri_or_blank()?,
        };
        self.predicate_object_list(&subject)
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), ParseError> {
        loop {
            self.cur.skip_trivia();
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            self.cur.skip_trivia();
            if !self.cur.eat(';') {
                return Ok(());
            }
            // Repeated or trailing semicolons are allowed.
            loop {
                self.cur.skip_trivia();
                if !self.cur.eat(';') {
                    break;
                }
            }
            if matches!(self.cur.peek(), Some('.' | ']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Term, ParseError> {
        if self.cur.peek() == Some('a')
            && self
                .cur
                .peek_at(1)
                .is_some_and(|c| c.is_whitespace() || c == '<' || c == '[' || c == '(' || c == '"')
        {
            self.cur.bump();
            return Ok(Term::iri(rdf::TYPE));
        }
        match self.cur.peek() {
            Some('<') => Ok(Term::iri(self.cur.iri_ref()?)),
            Some(c) if c.is_alphabetic() || c == ':' => self.prefixed_name(),
            _ => Err(self.cur.syntax("expected predicate")),
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Term) -> Result<(), ParseError> {
        loop {
            self.cur.skip_trivia();
            let object = self.object()?;
            self.emit(subject, predicate, object);
            self.cur.skip_trivia();
            if !self.cur.eat(',') {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> Result<Term, ParseError> {
        match self.cur.peek() {
            Some('[') => self.blank_property_list(),
            Some('(') => self.collection(),
            Some('"') => self.string_literal(),
            Some('\'') => Err(self.unsupported(UnsupportedFeature::SingleQuotedString)),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' || c == '.' => self.numeric_literal(),
            _ => {
                for (word, value) in [("true", "true"), ("false", "false")] {
                    if self.cur.starts_with(word)
                        && !self
                            .cur
                            .peek_at(word.len())
                            .is_some_and(|c| c.is_alphanumeric() || c == ':' || c == '_' || c == '-')
                    {
                        self.cur.advance(word.len());
                        return Ok(Term::literal(value, xsd::BOOLEAN));
                    }
                }
                self.iri_or_blank()
            }
        }
    }

    fn iri_or_blank(&mut self) -> Result<Term, ParseError> {
        match self.cur.peek() {
            Some('<') => Ok(Term::iri(self.cur.iri_ref()?)),
            Some('_') if self.cur.peek_at(1) == Some(':') => {
                self.cur.advance(2);
                Ok(Term::blank(self.cur.blank_label()?))
            }
            Some(c) if c.is_alphabetic() || c == ':' => self.prefixed_name(),
            Some(c) => Err(self.cur.syntax(format!("unexpected character `{c}`"))),
            None => Err(self.cur.syntax("unexpected end of input")),
        }
    }

    fn prefixed_name(&mut self) -> Result<Term, ParseError> {
        let (line, column) = self.cur.position();
        let mut prefix = String::new();
        while let Some(c) = self.cur.peek() {
            if c == ':' {
                break;
            }
            if c.is_alphanumeric() || c == '_' || c == '-' || c == '.' {
                prefix.push(c);
                self.cur.bump();
            } else {
                return Err(self.cur.syntax(format!("unexpected character `{c}` in name")));
            }
        }
        self.cur.expect(':')?;
        let mut local = String::new();
        while let Some(c) = self.cur.peek() {
            let continues = c.is_alphanumeric() || c == '_' || c == '-' || c == ':';
            let inner_dot = c == '.'
                && self
                    .cur
                    .peek_at(1)
                    .is_some_and(|n| n.is_alphanumeric() || n == '_' || n == '-' || n == ':');
            if continues || inner_dot {
                local.push(c);
                self.cur.bump();
            } else if c == '\\' {
                self.cur.bump();
                match self.cur.bump() {
                    Some(e) if "_~.-!$&'()*+,;=/?#@%".contains(e) => local.push(e),
                    _ => return Err(self.cur.syntax("invalid escape in local name")),
                }
            } else {
                break;
            }
        }
        let namespace = self.prefixes.get(&prefix).ok_or(ParseError::UndeclaredPrefix {
            line,
            column,
            prefix: prefix.clone(),
        })?;
        Ok(Term::iri(format!("{namespace}{local}")))
    }

    fn blank_property_list(&mut self) -> Result<Term, ParseError> {
        self.cur.expect('[')?;
        let node = self.fresh_blank();
        self.cur.skip_trivia();
        if !self.cur.eat(']') {
            self.predicate_object_list(&node)?;
            self.cur.skip_trivia();
            self.cur.expect(']')?;
        }
        Ok(node)
    }

    fn collection(&mut self) -> Result<Term, ParseError> {
        self.cur.expect('(')?;
        let first = Term::iri(rdf::FIRST);
        let rest = Term::iri(rdf::REST);
        let mut head: Option<Term> = None;
        let mut last: Option<Term> = None;
        loop {
            self.cur.skip_trivia();
            match self.cur.peek() {
                Some(')') => {
                    self.cur.bump();
                    break;
                }
                None => return Err(self.cur.syntax("unterminated collection")),
                _ => {}
            }
            let cell = self.fresh_blank();
            let item = self.object()?;
            self.emit(&cell, &first, item);
            match &last {
                Some(prev) => self.emit(prev, &rest, cell.clone()),
                None => head = Some(cell.clone()),
            }
            last = Some(cell);
        }
        let nil = Term::iri(rdf::NIL);
        match (head, last) {
            (Some(head), Some(last)) => {
                self.emit(&last, &rest, nil);
                Ok(head)
            }
            _ => Ok(nil),
        }
    }

    fn string_literal(&mut self) -> Result<Term, ParseError> {
        if self.cur.starts_with("\"\"\"") {
            return Err(self.unsupported(UnsupportedFeature::LongString));
        }
        let lexical = self.cur.quoted_string()?;
        if self.cur.starts_with("^^") {
            self.cur.advance(2);
            let datatype = match self.cur.peek() {
                Some('<') => Term::iri(self.cur.iri_ref()?),
                _ => self.prefixed_name()?,
            };
            let Term::Iri(datatype) = datatype else {
                unreachable!("datatype parsed as IRI")
            };
            return Ok(Term::literal(lexical, datatype));
        }
        if self.cur.peek() == Some('@') {
            return Err(self.unsupported(UnsupportedFeature::LanguageTag));
        }
        Ok(Term::literal(lexical, xsd::STRING))
    }

    fn numeric_literal(&mut self) -> Result<Term, ParseError> {
        let mut text = String::new();
        if let Some(sign @ ('+' | '-')) = self.cur.peek() {
            text.push(sign);
            self.cur.bump();
        }
        let mut digits = 0;
        while let Some(c) = self.cur.peek().filter(char::is_ascii_digit) {
            text.push(c);
            self.cur.bump();
            digits += 1;
        }
        let mut decimal = false;
        if self.cur.peek() == Some('.') && self.cur.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            decimal = true;
            text.push('.');
            self.cur.bump();
            while let Some(c) = self.cur.peek().filter(char::is_ascii_digit) {
                text.push(c);
                self.cur.bump();
                digits += 1;
            }
        }
        if matches!(self.cur.peek(), Some('e' | 'E')) {
            return Err(self.unsupported(UnsupportedFeature::DoubleLiteral));
        }
        if digits == 0 {
            return Err(self.cur.syntax("expected a number"));
        }
        let datatype = if decimal { xsd::DECIMAL } else { xsd::INTEGER };
        Ok(Term::literal(text, datatype))
    }
}
