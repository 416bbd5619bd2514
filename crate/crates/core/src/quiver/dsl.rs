//! Reader for the textual quiver format.
//!
//! ```text
//! quiver { vertices v0 vinf  arrow x v0 v0  arrow v vinf v0 }
//! alpha v0 = 2 vinf = 1
//! lambda v0 = 1 vinf = -2
//! ```
//!
//! Tokens are whitespace separated; `{`, `}` and `=` always stand alone and
//! `#` starts a comment running to the end of the line.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::{parse_rational, valid_identifier, DimVector, Quiver, QuiverDocument, QuiverError, Weights};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: duplicate identifier {id}")]
    DuplicateId { id: String, line: usize, col: usize },
    #[error("{line}:{col}: unknown vertex {name}")]
    UnknownVertex { name: String, line: usize, col: usize },
    #[error("{line}:{col}: invalid value {value:?}: {message}")]
    InvalidValue {
        value: String,
        line: usize,
        col: usize,
        message: String,
    },
    #[error("invalid JSON document: {0}")]
    Json(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    line: usize,
    col: usize,
}

fn tokenize(src: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut current: Option<Token> = None;
    let mut in_comment = false;
    let (mut line, mut col) = (1, 0);
    for ch in src.chars() {
        if ch == '\n' {
            line += 1;
            col = 0;
            in_comment = false;
            tokens.extend(current.take());
            continue;
        }
        col += 1;
        if in_comment {
            continue;
        }
        if ch == '#' {
            in_comment = true;
            tokens.extend(current.take());
        } else if ch.is_whitespace() {
            tokens.extend(current.take());
        } else if matches!(ch, '{' | '}' | '=') {
            tokens.extend(current.take());
            tokens.push(Token {
                text: ch.to_string(),
                line,
                col,
            });
        } else {
            current
                .get_or_insert_with(|| Token {
                    text: String::new(),
                    line,
                    col,
                })
                .text
                .push(ch);
        }
    }
    tokens.extend(current);
    tokens
}

struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self, what: &str) -> Result<Token, ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(ParseError::Syntax {
                line: self.end.0,
                col: self.end.1,
                message: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    fn expect(&mut self, keyword: &str) -> Result<Token, ParseError> {
        let t = self.next(&format!("{keyword:?}"))?;
        if t.text != keyword {
            return Err(syntax(&t, format!("expected {keyword:?}, found {:?}", t.text)));
        }
        Ok(t)
    }

    fn identifier(&mut self, what: &str) -> Result<Token, ParseError> {
        let t = self.next(what)?;
        if is_keyword(&t.text) || !valid_identifier(&t.text) {
            return Err(syntax(&t, format!("expected {what}, found {:?}", t.text)));
        }
        Ok(t)
    }
}

fn syntax(t: &Token, message: String) -> ParseError {
    ParseError::Syntax {
        line: t.line,
        col: t.col,
        message,
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(
        s,
        "quiver" | "vertices" | "arrow" | "lambda" | "alpha" | "{" | "}" | "="
    )
}

/// Parses a quiver file, ignoring nothing: trailing `alpha`/`lambda` blocks
/// are validated and returned alongside the quiver.
pub fn parse_document(src: &str) -> Result<QuiverDocument, ParseError> {
    let tokens = tokenize(src);
    let end = src
        .lines()
        .enumerate()
        .last()
        .map(|(i, l)| (i + 1, l.chars().count() + 1))
        .unwrap_or((1, 1));
    let mut cur = Cursor { tokens, pos: 0, end };

    cur.expect("quiver")?;
    cur.expect("{")?;
    cur.expect("vertices")?;

    let mut seen = HashSet::new();
    let mut vertices = Vec::new();
    while let Some(t) = cur.peek() {
        if t.text == "arrow" || t.text == "}" {
            break;
        }
        let t = cur.identifier("vertex identifier")?;
        if !seen.insert(t.text.clone()) {
            return Err(ParseError::DuplicateId {
                id: t.text,
                line: t.line,
                col: t.col,
            });
        }
        vertices.push(t.text);
    }
    if vertices.is_empty() {
        let t = cur.next("vertex identifier")?;
        return Err(syntax(&t, "expected at least one vertex".into()));
    }

    let mut arrows = Vec::new();
    loop {
        let t = cur.next("\"arrow\" or \"}\"")?;
        match t.text.as_str() {
            "}" => break,
            "arrow" => {
                let id = cur.identifier("arrow identifier")?;
                if !seen.insert(id.text.clone()) {
                    return Err(ParseError::DuplicateId {
                        id: id.text,
                        line: id.line,
                        col: id.col,
                    });
                }
                let tail = cur.identifier("tail vertex")?;
                let head = cur.identifier("head vertex")?;
                for end in [&tail, &head] {
                    if !vertices.contains(&end.text) {
                        return Err(ParseError::UnknownVertex {
                            name: end.text.clone(),
                            line: end.line,
                            col: end.col,
                        });
                    }
                }
                arrows.push((id.text, tail.text, head.text));
            }
            _ => return Err(syntax(&t, format!("expected \"arrow\" or \"}}\", found {:?}", t.text))),
        }
    }
    let quiver = Quiver::new(vertices, arrows)?;

    let mut alpha = None;
    let mut lambda = None;
    while let Some(t) = cur.peek().cloned() {
        cur.pos += 1;
        match t.text.as_str() {
            "alpha" => {
                if alpha.is_some() {
                    return Err(syntax(&t, "duplicate alpha block".into()));
                }
                let entries = block_entries(&mut cur, &quiver)?;
                let mut v = vec![0u64; quiver.vertex_count()];
                for (i, value) in entries {
                    v[i] = parse_count(&value)?;
                }
                alpha = Some(DimVector(v));
            }
            "lambda" => {
                if lambda.is_some() {
                    return Err(syntax(&t, "duplicate lambda block".into()));
                }
                let entries = block_entries(&mut cur, &quiver)?;
                let mut v = vec![BigRational::zero(); quiver.vertex_count()];
                for (i, value) in entries {
                    v[i] = parse_weight(&value)?;
                }
                lambda = Some(Weights(v));
            }
            _ => {
                return Err(syntax(
                    &t,
                    format!("expected \"alpha\" or \"lambda\", found {:?}", t.text),
                ))
            }
        }
    }

    Ok(QuiverDocument { quiver, alpha, lambda })
}

/// Parses only the quiver part of a file.
pub fn parse_quiver(src: &str) -> Result<Quiver, ParseError> {
    parse_document(src).map(|d| d.quiver)
}

fn block_entries(cur: &mut Cursor, quiver: &Quiver) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    while let Some(t) = cur.peek() {
        if t.text == "alpha" || t.text == "lambda" {
            break;
        }
        let vid = cur.next("vertex identifier")?;
        let i = quiver
            .vertex_index(&vid.text)
            .ok_or_else(|| ParseError::UnknownVertex {
                name: vid.text.clone(),
                line: vid.line,
                col: vid.col,
            })?;
        if !seen.insert(i) {
            return Err(ParseError::DuplicateId {
                id: vid.text,
                line: vid.line,
                col: vid.col,
            });
        }
        cur.expect("=")?;
        let value = cur.next("value")?;
        entries.push((i, value));
    }
    if entries.is_empty() {
        let (line, col) = cur.end;
        return Err(ParseError::Syntax {
            line,
            col,
            message: "empty block".into(),
        });
    }
    Ok(entries)
}

fn parse_count(t: &Token) -> Result<u64, ParseError> {
    t.text.parse::<u64>().map_err(|_| ParseError::InvalidValue {
        value: t.text.clone(),
        line: t.line,
        col: t.col,
        message: "expected a nonnegative integer".into(),
    })
}

fn parse_weight(t: &Token) -> Result<BigRational, ParseError> {
    parse_rational(&t.text).ok_or_else(|| ParseError::InvalidValue {
        value: t.text.clone(),
        line: t.line,
        col: t.col,
        message: "expected a rational p or p/q".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calogero_moser() {
        let q = parse_quiver("quiver { vertices v0 vinf  arrow x v0 v0  arrow v vinf v0 }").unwrap();
        assert_eq!(q.vertices(), ["v0", "vinf"]);
        assert_eq!(q.arrow_count(), 2);
        assert_eq!((q.arrows()[0].tail, q.arrows()[0].head), (0, 0));
        assert_eq!((q.arrows()[1].tail, q.arrows()[1].head), (1, 0));
    }

    #[test]
    fn single_vertex() {
        let q = parse_quiver("quiver { vertices u }").unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.arrow_count(), 0);
    }

    #[test]
    fn unknown_vertex() {
        let err = parse_quiver("quiver { vertices u  arrow a u w }").unwrap_err();
        assert!(err.to_string().contains("unknown vertex w"), "{err}");
        assert!(matches!(err, ParseError::UnknownVertex { col: 32, line: 1, .. }));
    }

    #[test]
    fn duplicate_identifier() {
        let err = parse_quiver("quiver { vertices u\n arrow u u u }").unwrap_err();
        assert!(
            matches!(err, ParseError::DuplicateId { line: 2, col: 8, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_quiver("quiver {\n  vertices u\n  arrow a u u\n  junk }").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 4, col: 3, .. }), "{err:?}");
        let err = parse_quiver("quiver { vertices u").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }));
        let err = parse_quiver("quiver { vertices }").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }));
    }

    #[test]
    fn blocks_and_comments() {
        let doc = parse_document(
            "# Calogero-Moser\nquiver { vertices v0 vinf # two vertices\n arrow x v0 v0 arrow v vinf v0 }\n\
             alpha v0=2 vinf = 1\nlambda v0 = 1 vinf=-2\n",
        )
        .unwrap();
        assert_eq!(doc.alpha, Some(DimVector(vec![2, 1])));
        assert_eq!(doc.lambda, Some(Weights::from_integers(&[1, -2])));
    }

    #[test]
    fn block_errors() {
        let base = "quiver { vertices u }";
        assert!(matches!(
            parse_document(&format!("{base} alpha u = -1")),
            Err(ParseError::InvalidValue { .. })
        ));
        assert!(matches!(
            parse_document(&format!("{base} lambda u = 1/0")),
            Err(ParseError::InvalidValue { .. })
        ));
        assert!(matches!(
            parse_document(&format!("{base} alpha w = 1")),
            Err(ParseError::UnknownVertex { .. })
        ));
        assert!(matches!(
            parse_document(&format!("{base} alpha u = 1 u = 2")),
            Err(ParseError::DuplicateId { .. })
        ));
        assert!(matches!(
            parse_document(&format!("{base} alpha")),
            Err(ParseError::Syntax { .. })
        ));
    }
}
