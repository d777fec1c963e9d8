//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! iff   := imp ("<->" imp)*            left associative
//! imp   := disj ("->" imp)?            right associative
//! disj  := conj ("|" conj)*
//! conj  := unary ("&" unary)*
//! unary := ("~" | "<>" | "[]" | "E" | "A" | "@" NOM) unary | atom
//! atom  := "bot" | "top" | NAME | "(" iff ")"
//! ```

use super::{is_nominal_name, Formula, Language};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Not,
    Diamond,
    Box,
    Exists,
    Always,
    At(String),
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Bot,
    Top,
    Name(String),
}

fn is_name_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\''
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |position: usize, message: &str| Error::Syntax { position, message: message.into() };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let rest = &bytes[i..];
        let tok = if c.is_ascii_whitespace() {
            i += 1;
            continue;
        } else if rest.starts_with(b"<->") {
            i += 3;
            Tok::Iff
        } else if rest.starts_with(b"<>") {
            i += 2;
            Tok::Diamond
        } else if rest.starts_with(b"[]") {
            i += 2;
            Tok::Box
        } else if rest.starts_with(b"->") {
            i += 2;
            Tok::Implies
        } else {
            i += 1;
            match c {
                b'~' | b'!' => Tok::Not,
                b'&' => Tok::And,
                b'|' => Tok::Or,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'E' => Tok::Exists,
                b'A' => Tok::Always,
                b'@' => {
                    while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                        i += 1;
                    }
                    let name_start = i;
                    while i < bytes.len() && is_name_char(bytes[i]) {
                        i += 1;
                    }
                    let name = &text[name_start..i];
                    if name.is_empty() || !is_nominal_name(name) {
                        return Err(err(start, "`@` must be followed by a nominal"));
                    }
                    Tok::At(name.to_owned())
                }
                b'a'..=b'z' => {
                    while i < bytes.len() && is_name_char(bytes[i]) {
                        i += 1;
                    }
                    match &text[start..i] {
                        "bot" => Tok::Bot,
                        "top" => Tok::Top,
                        name => Tok::Name(name.to_owned()),
                    }
                }
                _ => return Err(err(start, &format!("unexpected character `{}`", c as char))),
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    lang: Language,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { position: self.offset(), message: message.into() }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implication()?;
        while self.eat(&Tok::Iff) {
            lhs = lhs.iff(self.implication()?);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            return Ok(lhs.implies(self.implication()?));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn gate(&self, connective: &'static str, allowed: bool) -> Result<()> {
        if allowed {
            Ok(())
        } else {
            Err(Error::Language { connective, language: self.lang })
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        match tok {
            Tok::Not => {
                self.pos += 1;
                Ok(self.unary()?.not())
            }
            Tok::Diamond => {
                self.pos += 1;
                Ok(self.unary()?.diamond())
            }
            Tok::Box => {
                self.pos += 1;
                Ok(self.unary()?.boxed())
            }
            Tok::Exists | Tok::Always => {
                self.gate(if tok == Tok::Exists { "E" } else { "A" }, self.lang == Language::HE)?;
                self.pos += 1;
                let inner = self.unary()?;
                Ok(if tok == Tok::Exists { inner.exists() } else { inner.always() })
            }
            Tok::At(nominal) => {
                self.gate("@", self.lang == Language::HAt)?;
                self.pos += 1;
                Ok(self.unary()?.at(nominal))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Bot) => {
                self.pos += 1;
                Ok(Formula::Bot)
            }
            Some(Tok::Top) => {
                self.pos += 1;
                Ok(Formula::top())
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                Ok(if is_nominal_name(&name) { Formula::Nom(name) } else { Formula::Prop(name) })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(other) => Err(self.error(format!("unexpected token {other:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses `text` as a formula of `lang`, expanding derived connectives.
pub fn parse(text: &str, lang: Language) -> Result<Formula> {
    if text.trim().is_empty() {
        return Err(Error::Syntax { position: 0, message: "empty formula".into() });
    }
    let toks = lex(text)?;
    let mut parser = Parser { toks: &toks, pos: 0, end: text.len(), lang };
    let f = parser.iff()?;
    if parser.pos != toks.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(f)
}
