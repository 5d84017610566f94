use super::ParseError;

/// Character cursor with 1-based line/column tracking.
pub(super) struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Self {
        Self::at_line(text, 1)
    }

    pub fn at_line(text: &str, line: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
            column: 1,
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.peek_at(i) == Some(c))
    }

    pub fn starts_with_ignore_case(&self, s: &str) -> bool {
        s.chars()
            .enumerate()
            .all(|(i, c)| self.peek_at(i).is_some_and(|d| d.eq_ignore_ascii_case(&c)))
    }

    pub fn advance(&mut self, n: usize) {
        for _ in 0..n {
            self.bump();
        }
    }

    pub fn is_eof(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub fn position(&self) -> (usize, usize) {
        (self.line, self.column)
    }

    /// Skips spaces and tabs only.
    pub fn skip_inline_space(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.bump();
        }
    }

    /// Skips whitespace, newlines and `#` comments.
    pub fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while !matches!(self.peek(), None | Some('\n')) {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    pub fn syntax(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.position();
        ParseError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.syntax(match self.peek() {
                Some(found) => format!("expected `{c}`, found `{found}`"),
                None => format!("expected `{c}`, found end of input"),
            }))
        }
    }

    /// Reads `<...>` and returns the IRI text. The cursor must be on `<`.
    pub fn iri_ref(&mut self) -> Result<String, ParseError> {
        let (line, column) = self.position();
        let malformed = |message: &str| ParseError::MalformedIri {
            line,
            column,
            message: message.to_string(),
        };
        if !self.eat('<') {
            return Err(malformed("expected `<`"));
        }
        let mut iri = String::new();
        loop {
            match self.peek() {
                None | Some('\n') => return Err(malformed("missing closing `>`")),
                Some('>') => {
                    self.bump();
                    break;
                }
                Some('\\') => {
                    self.bump();
                    match self.bump() {
                        Some('u') => iri.push(self.hex_escape(4)?),
                        Some('U') => iri.push(self.hex_escape(8)?),
                        _ => return Err(malformed("invalid escape in IRI")),
                    }
                }
                Some(c) if c.is_whitespace() || "<\"{}|^`".contains(c) => {
                    return Err(malformed(&format!("character `{c}` not allowed in IRI")))
                }
                Some(c) => {
                    self.bump();
                    iri.push(c);
                }
            }
        }
        if iri.is_empty() {
            return Err(malformed("empty IRI"));
        }
        if !iri.contains(':') {
            return Err(malformed("relative IRI (no base IRI support)"));
        }
        Ok(iri)
    }

    fn hex_escape(&mut self, digits: usize) -> Result<char, ParseError> {
        let mut value = 0u32;
        for _ in 0..digits {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.syntax("invalid unicode escape"))?;
            value = value * 16 + d;
        }
        char::from_u32(value).ok_or_else(|| self.syntax("escape is not a unicode scalar value"))
    }

    /// Reads a `"..."` string with escapes. The cursor must be on `"`.
    pub fn quoted_string(&mut self) -> Result<String, ParseError> {
        let (line, column) = self.position();
        self.expect('"')?;
        let mut value = String::new();
        loop {
            match self.peek() {
                None | Some('\n') => return Err(ParseError::UnterminatedLiteral { line, column }),
                Some('"') => {
                    self.bump();
                    return Ok(value);
                }
                Some('\\') => {
                    self.bump();
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_escape(4)?,
                        Some('U') => self.hex_escape(8)?,
                        None => return Err(ParseError::UnterminatedLiteral { line, column }),
                        Some(other) => return Err(self.syntax(format!("invalid string escape `\\{other}`"))),
                    };
                    value.push(c);
                }
                Some(c) => {
                    self.bump();
                    value.push(c);
                }
            }
        }
    }

    /// Reads a blank node label after `_:`.
    pub fn blank_label(&mut self) -> Result<String, ParseError> {
        let mut label = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '-' {
                label.push(c);
                self.bump();
            } else if c == '.'
                && self
                    .peek_at(1)
                    .is_some_and(|n| n.is_alphanumeric() || n == '_' || n == '-')
            {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if label.is_empty() {
            Err(self.syntax("empty blank node label"))
        } else {
            Ok(label)
        }
    }
}
