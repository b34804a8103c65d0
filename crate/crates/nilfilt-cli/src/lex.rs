//! Tokenizer shared by the session and expression parsers. Whitespace is
//! insignificant, `#` starts a comment running to the end of the line, and
//! every token carries its line/column for error messages.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Punct(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(s) => write!(f, "`{s}`"),
            Tok::Punct(c) => write!(f, "`{c}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone)]
pub struct LexError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for LexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

const PUNCT: &[char] = &['[', ']', '(', ')', ',', '=', '+', '-', '*', '^', '/', '.'];

pub fn tokenize(text: &str) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(idx) => &line[..idx],
            None => line,
        };
        let mut chars = line.char_indices().peekable();
        while let Some(&(idx, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c.is_ascii_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token {
                    tok: Tok::Ident(s),
                    line: lineno + 1,
                    col: idx + 1,
                });
            } else if c.is_ascii_digit() {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token {
                    tok: Tok::Int(s),
                    line: lineno + 1,
                    col: idx + 1,
                });
            } else if PUNCT.contains(&c) {
                chars.next();
                out.push(Token {
                    tok: Tok::Punct(c),
                    line: lineno + 1,
                    col: idx + 1,
                });
            } else {
                return Err(LexError {
                    line: lineno + 1,
                    col: idx + 1,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    let (line, col) = out.last().map(|t| (t.line, t.col + 1)).unwrap_or((1, 1));
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// A cursor over the token stream with one-token lookahead.
pub struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(tokens: Vec<Token>) -> Cursor {
        Cursor { tokens, pos: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    pub fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos.min(self.tokens.len() - 1)].clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    pub fn at_punct(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    pub fn at_ident(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(i) if i == s)
    }

    pub fn eat_punct(&mut self, c: char) -> bool {
        if self.at_punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn error(&self, message: impl Into<String>) -> LexError {
        let t = self.peek();
        LexError {
            line: t.line,
            col: t.col,
            message: message.into(),
        }
    }

    pub fn expect_punct(&mut self, c: char) -> Result<(), LexError> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.peek().tok)))
        }
    }

    pub fn expect_ident(&mut self) -> Result<String, LexError> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => Err(self.error(format!("expected an identifier, found {other}"))),
        }
    }

    pub fn expect_int(&mut self) -> Result<String, LexError> {
        match self.peek().tok.clone() {
            Tok::Int(s) => {
                self.bump();
                Ok(s)
            }
            other => Err(self.error(format!("expected a number, found {other}"))),
        }
    }
}
