use std::fmt;

use thiserror::Error;

use super::{Formula, Logic, LogicError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

const KEYWORDS: &[&str] = &[
    "X", "F", "G", "U", "W", "R", "V", "A", "E", "AX", "AF", "AG", "EX", "EF", "EG", "true", "false", "TRUE", "FALSE",
];

/// Whether `s` can be used as a proposition name in the plain grammar.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !KEYWORDS.contains(&s)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Kw(&'static str),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Always,
    Eventually,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Kw(k) => write!(f, "`{k}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Not => f.write_str("`!`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Implies => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::Always => f.write_str("`[]`"),
            Tok::Eventually => f.write_str("`<>`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, message: String| ParseError { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let peek = |k: usize| chars.get(i + k).copied();
        let mut push = |tok: Tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned { tok, line: start_line, column: start_col });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '[' if peek(1) == Some(']') => push(Tok::Always, 2, &mut i, &mut col),
            '[' => push(Tok::LBracket, 1, &mut i, &mut col),
            ']' => push(Tok::RBracket, 1, &mut i, &mut col),
            '!' | '~' => push(Tok::Not, 1, &mut i, &mut col),
            '&' if peek(1) == Some('&') => push(Tok::And, 2, &mut i, &mut col),
            '&' => push(Tok::And, 1, &mut i, &mut col),
            '|' if peek(1) == Some('|') => push(Tok::Or, 2, &mut i, &mut col),
            '|' => push(Tok::Or, 1, &mut i, &mut col),
            '-' if peek(1) == Some('>') => push(Tok::Implies, 2, &mut i, &mut col),
            '=' if peek(1) == Some('>') => push(Tok::Implies, 2, &mut i, &mut col),
            '<' if peek(1) == Some('-') && peek(2) == Some('>') => push(Tok::Iff, 3, &mut i, &mut col),
            '<' if peek(1) == Some('>') => push(Tok::Eventually, 2, &mut i, &mut col),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = match KEYWORDS.iter().find(|k| **k == word) {
                    Some(k) => Tok::Kw(k),
                    None => Tok::Ident(word),
                };
                let width = j - i;
                push(tok, width, &mut i, &mut col);
            }
            other => return Err(err(start_line, start_col, format!("unexpected character `{other}`"))),
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError { line: s.line, column: s.column, message: message.into() }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(format!("expected {tok}, found {}", self.peek())))
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.implies()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut items = vec![self.and()?];
        while *self.peek() == Tok::Or {
            self.bump();
            items.push(self.and()?);
        }
        Ok(Formula::or(items))
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut items = vec![self.binary()?];
        while *self.peek() == Tok::And {
            self.bump();
            items.push(self.binary()?);
        }
        Ok(Formula::and(items))
    }

    fn binary(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        let op = match self.peek() {
            Tok::Kw(k @ ("U" | "W" | "R" | "V")) => *k,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.binary()?;
        Ok(match op {
            "U" => Formula::until(lhs, rhs),
            "W" => Formula::weak_until(lhs, rhs),
            _ => Formula::release(lhs, rhs),
        })
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Kw("X") => {
                self.bump();
                Ok(Formula::next(self.unary()?))
            }
            Tok::Kw("F") | Tok::Eventually => {
                self.bump();
                Ok(Formula::finally(self.unary()?))
            }
            Tok::Kw("G") | Tok::Always => {
                self.bump();
                Ok(Formula::globally(self.unary()?))
            }
            Tok::Kw(k @ ("AX" | "AF" | "AG" | "EX" | "EF" | "EG")) => {
                self.bump();
                let body = self.unary()?;
                let temporal = match &k[1..] {
                    "X" => Formula::next(body),
                    "F" => Formula::finally(body),
                    _ => Formula::globally(body),
                };
                Ok(quantify(k.starts_with('A'), temporal))
            }
            Tok::Kw(q @ ("A" | "E")) => {
                self.bump();
                let universal = q == "A";
                if *self.peek() == Tok::LBracket {
                    self.bump();
                    let at = self.pos;
                    let body = self.iff()?;
                    if !matches!(body, Formula::Until(..) | Formula::WeakUntil(..)) {
                        self.pos = at;
                        return Err(self.error_here(format!("expected `p U q` or `p W q` inside `{q} [ ]`")));
                    }
                    self.expect(Tok::RBracket)?;
                    return Ok(quantify(universal, body));
                }
                let at = self.pos;
                let body = self.unary()?;
                if !matches!(body, Formula::Next(_) | Formula::Finally(_) | Formula::Globally(_)) {
                    self.pos = at;
                    return Err(self.error_here(format!("`{q}` must be followed by a temporal operator")));
                }
                Ok(quantify(universal, body))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.bump() {
            Tok::Kw("true" | "TRUE") => Ok(Formula::True),
            Tok::Kw("false" | "FALSE") => Ok(Formula::False),
            Tok::Ident(name) => Ok(Formula::atom(name)),
            Tok::LParen => {
                let f = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            other => {
                self.pos -= 1;
                Err(self.error_here(format!("expected a formula, found {other}")))
            }
        }
    }
}

fn quantify(universal: bool, body: Formula) -> Formula {
    if universal {
        Formula::forall(body)
    } else {
        Formula::exists(body)
    }
}

/// Parses the plain grammar (see the module docs) and checks the result
/// against the requested logic.
pub fn parse_formula(text: &str, logic: Logic) -> Result<Formula, LogicError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.iff()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error_here(format!("unexpected {}", p.peek())).into());
    }
    match logic {
        Logic::Ltl => f.require_ltl()?,
        Logic::Ctl => f.check_ctl()?,
    }
    Ok(f)
}
