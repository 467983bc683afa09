//! Minimal s-expression reader shared by the formula, FO and proof-script parsers.

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Token { text: String, pos: usize },
    List { items: Vec<Sexp>, pos: usize },
}

impl Sexp {
    pub fn pos(&self) -> usize {
        match self {
            Sexp::Token { pos, .. } | Sexp::List { pos, .. } => *pos,
        }
    }

    pub fn token(&self) -> Option<&str> {
        match self {
            Sexp::Token { text, .. } => Some(text),
            Sexp::List { .. } => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List { items, .. } => Some(items),
            Sexp::Token { .. } => None,
        }
    }

    /// Head symbol and tail of a non-empty list whose first item is a token.
    pub fn head(&self) -> Option<(&str, &[Sexp])> {
        let items = self.list()?;
        let (first, rest) = items.split_first()?;
        Some((first.token()?, rest))
    }
}

/// Reads every top-level expression in `text`. `;` starts a line comment.
pub fn parse_all(text: &str) -> Result<Vec<Sexp>, Error> {
    parse_all_at(text, 0)
}

/// Like [`parse_all`] but reports positions shifted by `offset`.
pub fn parse_all_at(text: &str, offset: usize) -> Result<Vec<Sexp>, Error> {
    let bytes = text.as_bytes();
    let mut stack: Vec<(usize, Vec<Sexp>)> = Vec::new();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'(' => {
                stack.push((i + offset, Vec::new()));
                i += 1;
            }
            b')' => {
                let (pos, items) = stack
                    .pop()
                    .ok_or_else(|| Error::parse(i + offset, "unbalanced ')'"))?;
                let node = Sexp::List { items, pos };
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(node),
                    None => out.push(node),
                }
                i += 1;
            }
            b';' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && bytes[i] != b'('
                    && bytes[i] != b')'
                    && bytes[i] != b';'
                {
                    i += 1;
                }
                let node = Sexp::Token {
                    text: text[start..i].to_string(),
                    pos: start + offset,
                };
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(node),
                    None => out.push(node),
                }
            }
        }
    }
    if let Some((pos, _)) = stack.pop() {
        return Err(Error::parse(pos, "unclosed '('"));
    }
    Ok(out)
}

/// Reads exactly one expression.
pub fn parse_one(text: &str) -> Result<Sexp, Error> {
    let mut all = parse_all(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(Error::parse(0, "empty input")),
        _ => Err(Error::parse(all[1].pos(), "trailing input after expression")),
    }
}
