use std::collections::BTreeSet;

use super::{Clause, Declarations, Mission, MissionError, MissionTree};
use crate::logic::{is_identifier, Atom};
use crate::patterns::{PatternId, PatternParams, Variant};

const RESERVED: &[&str] = &["and", "or", "robot", "shall"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Number(u32),
    Comma,
    Colon,
    LParen,
    RParen,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Word(w) => format!("`{w}`"),
        Tok::Number(n) => format!("`{n}`"),
        Tok::Comma => "`,`".into(),
        Tok::Colon => "`:`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, MissionError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, column) = (li + 1, i + 1);
            let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line, column });
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                ',' | ':' | '(' | ')' => {
                    let tok = match c {
                        ',' => Tok::Comma,
                        ':' => Tok::Colon,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    };
                    push(&mut out, tok);
                    i += 1;
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    let n = s.parse().map_err(|_| MissionError::Syntax {
                        line,
                        column,
                        message: format!("number `{s}` is too large"),
                    })?;
                    push(&mut out, Tok::Number(n));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    push(&mut out, Tok::Word(chars[start..i].iter().collect()));
                }
                other => {
                    return Err(MissionError::Syntax {
                        line,
                        column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        }
    }
    let (line, column) = out.last().map(|t| (t.line, t.column + 1)).unwrap_or((1, 1));
    out.push(Token { tok: Tok::Eof, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    decls: Option<Declarations>,
    robot: Option<String>,
}

#[derive(Clone, Copy)]
enum Role {
    Location,
    Any,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_word(&self) -> Option<&str> {
        match &self.peek().tok {
            Tok::Word(w) => Some(w),
            _ => None,
        }
    }

    fn peek_is(&self, w: &str) -> bool {
        self.peek_word() == Some(w)
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String) -> MissionError {
        let t = self.peek();
        MissionError::Syntax { line: t.line, column: t.column, message }
    }

    fn expected(&self, what: &str) -> MissionError {
        self.error(format!("expected {what}, found {}", describe(&self.peek().tok)))
    }

    fn expect_word(&mut self, w: &str) -> Result<(), MissionError> {
        if self.peek_is(w) {
            self.bump();
            Ok(())
        } else {
            Err(self.expected(&format!("`{w}`")))
        }
    }

    fn eat(&mut self, w: &str) -> bool {
        let hit = self.peek_is(w);
        if hit {
            self.bump();
        }
        hit
    }

    fn expect(&mut self, tok: Tok) -> Result<(), MissionError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.expected(&describe(&tok)))
        }
    }

    /// A bare identifier, checked against the declarations when present.
    fn name(&mut self, role: Option<Role>) -> Result<Atom, MissionError> {
        let t = self.peek().clone();
        let w = match &t.tok {
            Tok::Word(w) if is_identifier(w) && !RESERVED.contains(&w.as_str()) => w.clone(),
            _ => return Err(self.expected("a proposition name")),
        };
        if let (Some(d), Some(role)) = (&self.decls, role) {
            let kind = d.kind_of(&w);
            let ok = match role {
                Role::Location => kind == Some(crate::logic::PropKind::Location),
                Role::Any => kind.is_some(),
            };
            if !ok {
                let kind = if matches!(role, Role::Location) { "location" } else { "proposition" };
                return Err(MissionError::Undeclared { line: t.line, column: t.column, kind, name: w });
            }
        }
        self.bump();
        Ok(Atom::new(w))
    }

    fn names(&mut self, role: Option<Role>) -> Result<Vec<Atom>, MissionError> {
        let mut out = vec![self.name(role)?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            out.push(self.name(role)?);
        }
        Ok(out)
    }

    fn number(&mut self) -> Result<u32, MissionError> {
        match self.peek().tok {
            Tok::Number(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.expected("a number")),
        }
    }

    fn declarations(&mut self) -> Result<Declarations, MissionError> {
        let mut d = Declarations::default();
        let mut seen = BTreeSet::new();
        loop {
            if self.peek_is("mission") && self.toks.get(self.pos + 1).is_some_and(|t| t.tok == Tok::Colon) {
                return Ok(d);
            }
            let key =
                self.peek_word().map(str::to_string).ok_or_else(|| self.expected("a declaration or `mission:`"))?;
            let slot = match key.as_str() {
                "robots" | "robot" => &mut d.robots,
                "locations" | "location" => &mut d.locations,
                "conditions" | "condition" => &mut d.conditions,
                "actions" | "action" => &mut d.actions,
                _ => return Err(self.expected("`robots`, `locations`, `conditions` or `actions`")),
            };
            self.bump();
            self.expect(Tok::Colon)?;
            for n in self.names(None)? {
                if !seen.insert(n.to_string()) {
                    return Err(MissionError::DuplicateDeclaration(n.to_string()));
                }
                slot.push(n.to_string());
            }
        }
    }

    fn expr(&mut self) -> Result<MissionTree, MissionError> {
        let mut parts = vec![self.conj()?];
        while self.eat("or") {
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { MissionTree::Or(parts) })
    }

    fn conj(&mut self) -> Result<MissionTree, MissionError> {
        let mut parts = vec![self.item()?];
        while self.eat("and") {
            parts.push(self.item()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { MissionTree::And(parts) })
    }

    fn item(&mut self) -> Result<MissionTree, MissionError> {
        if self.peek().tok == Tok::LParen {
            self.bump();
            let e = self.expr()?;
            self.expect(Tok::RParen)?;
            return Ok(e);
        }
        if self.eat("robot") {
            let t = self.peek().clone();
            let r = self.name(None)?;
            if let Some(d) = &self.decls {
                if !d.robots.iter().any(|x| x == r.as_str()) {
                    return Err(MissionError::Undeclared {
                        line: t.line,
                        column: t.column,
                        kind: "robot",
                        name: r.to_string(),
                    });
                }
            }
            self.expect_word("shall")?;
            self.robot = Some(r.to_string());
        }
        self.clause().map(MissionTree::Leaf)
    }

    fn clause(&mut self) -> Result<Clause, MissionError> {
        use PatternId::*;
        let start = self.peek().clone();
        let word = match &start.tok {
            Tok::Word(w) => w.clone(),
            _ => return Err(self.expected("a pattern phrase")),
        };
        let loc = Some(Role::Location);
        let any = Some(Role::Any);
        let (id, params) = match word.as_str() {
            "visit" => {
                self.bump();
                (Visit, PatternParams::locations(self.names(loc)?))
            }
            "patrolling" => {
                self.bump();
                self.expect_word("of")?;
                (Patrolling, PatternParams::locations(self.names(loc)?))
            }
            "sequenced" | "ordered" | "strict" | "fair" => {
                self.bump();
                let strict = word == "strict";
                if strict {
                    self.expect_word("ordered")?;
                }
                let patrol = if self.eat("visit") {
                    false
                } else if self.eat("patrolling") {
                    true
                } else {
                    return Err(self.expected("`visit` or `patrolling`"));
                };
                self.expect_word("of")?;
                let mut params = PatternParams::locations(self.names(loc)?);
                let id = match (word.as_str(), patrol) {
                    ("sequenced", false) => SequencedVisit,
                    ("sequenced", true) => SequencedPatrolling,
                    ("ordered", false) => OrderedVisit,
                    ("ordered", true) => OrderedPatrolling,
                    ("strict", false) => StrictOrderedVisit,
                    ("strict", true) => StrictOrderedPatrolling,
                    ("fair", false) => FairVisit,
                    _ => FairPatrolling,
                };
                if id == StrictOrderedPatrolling && self.eat("allowing") {
                    self.expect_word("consecutive")?;
                    self.expect_word("visits")?;
                    params = params.with_variant(Variant::ConsecutiveAllowed);
                }
                (id, params)
            }
            "avoid" => {
                self.bump();
                let l = self.name(loc)?;
                let p = PatternParams::location(l);
                if self.eat("before") {
                    (PastAvoidance, p.with_trigger(self.name(any)?))
                } else if self.eat("after") {
                    (FutureAvoidance, p.with_trigger(self.name(any)?))
                } else if self.eat("at") {
                    let id = if self.eat("most") {
                        UpperRestrictedAvoidance
                    } else if self.eat("least") {
                        LowerRestrictedAvoidance
                    } else {
                        return Err(self.expected("`most` or `least`"));
                    };
                    let k = self.number()?;
                    self.expect_word("times")?;
                    (id, p.with_count(k))
                } else if self.eat("exactly") {
                    let k = self.number()?;
                    self.expect_word("times")?;
                    (ExactRestrictedAvoidance, p.with_count(k))
                } else {
                    self.eat("globally");
                    (GlobalAvoidance, p)
                }
            }
            "when" => {
                self.bump();
                let c = self.name(any)?;
                let id = if self.eat("instantly") {
                    InstantaneousReaction
                } else if self.eat("eventually") {
                    DelayedReaction
                } else if self.eat("promptly") {
                    PromptReaction
                } else {
                    return Err(self.expected("`instantly`, `eventually` or `promptly`"));
                };
                self.expect_word("do")?;
                (id, PatternParams::reaction(c, self.name(any)?))
            }
            "do" => {
                self.bump();
                let a = self.name(any)?;
                self.expect_word("exactly")?;
                let id = if self.eat("when") {
                    BoundReaction
                } else if self.eat("after") {
                    BoundDelay
                } else {
                    return Err(self.expected("`when` or `after`"));
                };
                (id, PatternParams::reaction(self.name(any)?, a))
            }
            "stay" => {
                self.bump();
                self.expect_word("in")?;
                let l = self.name(loc)?;
                self.expect_word("until")?;
                (Wait, PatternParams::location(l).with_trigger(self.name(any)?))
            }
            _ => return Err(MissionError::UnknownPhrase { line: start.line, column: start.column, found: word }),
        };
        params.validate(id).map_err(|source| MissionError::Pattern {
            line: start.line,
            column: start.column,
            source,
        })?;
        Ok(Clause { robot: self.robot.clone(), id, params, line: start.line, column: start.column })
    }
}

/// Parses a mission file or a bare mission expression.
pub fn parse_mission(text: &str) -> Result<Mission, MissionError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, decls: None, robot: None };
    let block = |p: &Parser, w: &str| p.peek_is(w) && p.toks.get(p.pos + 1).is_some_and(|t| t.tok == Tok::Colon);
    if block(&p, "declarations") {
        p.pos += 2;
        p.decls = Some(p.declarations()?);
    }
    if block(&p, "mission") {
        p.pos += 2;
    }
    let tree = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.expected("`and`, `or` or end of input"));
    }
    Ok(Mission { declarations: p.decls, tree })
}
