use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{is_identifier, Formula, LogicError};

use Formula::*;

/// Output syntaxes understood by [`emit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Syntax {
    /// The crate's own grammar; accepts LTL and CTL and round-trips through
    /// [`super::parse_formula`].
    Plain,
    /// NuSMV `LTLSPEC` expressions.
    SmvLtl,
    /// NuSMV `CTLSPEC` expressions.
    SmvCtl,
    /// SPIN `ltl` claims.
    SpinLtl,
}

impl fmt::Display for Syntax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Syntax::Plain => "plain",
            Syntax::SmvLtl => "smv-ltl",
            Syntax::SmvCtl => "smv-ctl",
            Syntax::SpinLtl => "spin-ltl",
        })
    }
}

impl FromStr for Syntax {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Syntax::Plain),
            "smv-ltl" => Ok(Syntax::SmvLtl),
            "smv-ctl" => Ok(Syntax::SmvCtl),
            "spin-ltl" => Ok(Syntax::SpinLtl),
            other => Err(LogicError::UnknownSyntax(other.to_string())),
        }
    }
}

/// Serializes a formula fully parenthesized in the requested syntax.
pub fn emit(f: &Formula, syntax: Syntax) -> Result<String, LogicError> {
    match syntax {
        Syntax::Plain => {}
        Syntax::SmvLtl | Syntax::SpinLtl => f.require_ltl()?,
        Syntax::SmvCtl => f.check_ctl()?,
    }
    if f.has_path_quantifier() {
        f.check_ctl()?;
    }
    let mut out = String::new();
    Writer { syntax }.write(f, &mut out)?;
    Ok(out)
}

/// Plain rendering used by `Display`; falls back to a best-effort form for
/// ill-formed input instead of failing.
pub(crate) fn plain(f: &Formula) -> String {
    let mut out = String::new();
    match (Writer { syntax: Syntax::Plain }).write(f, &mut out) {
        Ok(()) => out,
        Err(_) => format!("{f:?}"),
    }
}

struct Writer {
    syntax: Syntax,
}

impl Writer {
    fn lexeme(&self, op: Op) -> Result<&'static str, LogicError> {
        use Syntax::*;
        let s = match (op, self.syntax) {
            (Op::True, SmvLtl | SmvCtl) => "TRUE",
            (Op::True, _) => "true",
            (Op::False, SmvLtl | SmvCtl) => "FALSE",
            (Op::False, _) => "false",
            (Op::Not, _) => "!",
            (Op::And, SpinLtl) => "&&",
            (Op::And, _) => "&",
            (Op::Or, SpinLtl) => "||",
            (Op::Or, _) => "|",
            (Op::Implies, _) => "->",
            (Op::Iff, _) => "<->",
            (Op::Next, _) => "X",
            (Op::Finally, SpinLtl) => "<>",
            (Op::Finally, _) => "F",
            (Op::Globally, SpinLtl) => "[]",
            (Op::Globally, _) => "G",
            (Op::Until, _) => "U",
            (Op::WeakUntil, Plain | SpinLtl) => "W",
            (Op::WeakUntil, _) => return Err(LogicError::Unsupported { op: "W", syntax: self.syntax }),
            (Op::Release, Plain) => "R",
            (Op::Release, SmvLtl | SpinLtl) => "V",
            (Op::Release, SmvCtl) => return Err(LogicError::Unsupported { op: "R", syntax: self.syntax }),
        };
        Ok(s)
    }

    fn write(&self, f: &Formula, out: &mut String) -> Result<(), LogicError> {
        match f {
            True => out.push_str(self.lexeme(Op::True)?),
            False => out.push_str(self.lexeme(Op::False)?),
            Atom(a) => {
                if !is_identifier(a.as_str()) {
                    return Err(LogicError::InvalidAtom(a.to_string()));
                }
                out.push_str(a.as_str());
            }
            Not(a) => {
                out.push_str(self.lexeme(Op::Not)?);
                if matches!(**a, True | False | Atom(_)) {
                    self.write(a, out)?;
                } else {
                    self.paren(a, out)?;
                }
            }
            And(cs) => self.nary(cs, Op::And, out)?,
            Or(cs) => self.nary(cs, Op::Or, out)?,
            Implies(a, b) => self.binary(a, Op::Implies, b, out)?,
            Iff(a, b) => self.binary(a, Op::Iff, b, out)?,
            Next(a) => self.unary(Op::Next, a, out)?,
            Finally(a) => self.unary(Op::Finally, a, out)?,
            Globally(a) => self.unary(Op::Globally, a, out)?,
            Until(a, b) => self.binary(a, Op::Until, b, out)?,
            WeakUntil(a, b) if self.syntax == Syntax::SmvLtl => {
                // NuSMV has no weak until: (a U b) | G a
                let expanded =
                    Formula::or([Formula::until((**a).clone(), (**b).clone()), Formula::globally((**a).clone())]);
                self.write(&expanded, out)?;
            }
            WeakUntil(a, b) => self.binary(a, Op::WeakUntil, b, out)?,
            Release(a, b) => self.binary(a, Op::Release, b, out)?,
            ForAll(body) | Exists(body) => {
                let q = if matches!(f, ForAll(_)) { "A" } else { "E" };
                match &**body {
                    Next(a) => self.quantified_unary(q, "X", a, out)?,
                    Finally(a) => self.quantified_unary(q, "F", a, out)?,
                    Globally(a) => self.quantified_unary(q, "G", a, out)?,
                    Until(a, b) => self.quantified_binary(q, "U", a, b, out)?,
                    WeakUntil(a, b) => {
                        if self.syntax != Syntax::Plain {
                            return Err(LogicError::Unsupported { op: "W", syntax: self.syntax });
                        }
                        self.quantified_binary(q, "W", a, b, out)?
                    }
                    _ => {
                        return Err(LogicError::IllFormedCtl(
                            "path quantifier must be followed by X, F, G, U or W".into(),
                        ))
                    }
                }
            }
        }
        Ok(())
    }

    fn paren(&self, f: &Formula, out: &mut String) -> Result<(), LogicError> {
        out.push('(');
        self.write(f, out)?;
        out.push(')');
        Ok(())
    }

    fn unary(&self, op: Op, a: &Formula, out: &mut String) -> Result<(), LogicError> {
        out.push_str(self.lexeme(op)?);
        out.push(' ');
        self.paren(a, out)
    }

    fn binary(&self, a: &Formula, op: Op, b: &Formula, out: &mut String) -> Result<(), LogicError> {
        self.paren(a, out)?;
        out.push(' ');
        out.push_str(self.lexeme(op)?);
        out.push(' ');
        self.paren(b, out)
    }

    fn nary(&self, cs: &[Formula], op: Op, out: &mut String) -> Result<(), LogicError> {
        let lex = self.lexeme(op)?;
        for (i, c) in cs.iter().enumerate() {
            if i > 0 {
                out.push(' ');
                out.push_str(lex);
                out.push(' ');
            }
            self.paren(c, out)?;
        }
        Ok(())
    }

    fn quantified_unary(&self, q: &str, op: &str, a: &Formula, out: &mut String) -> Result<(), LogicError> {
        if self.syntax == Syntax::SpinLtl || self.syntax == Syntax::SmvLtl {
            return Err(LogicError::NotLtl);
        }
        out.push_str(q);
        out.push_str(op);
        out.push(' ');
        self.paren(a, out)
    }

    fn quantified_binary(
        &self,
        q: &str,
        op: &str,
        a: &Formula,
        b: &Formula,
        out: &mut String,
    ) -> Result<(), LogicError> {
        if self.syntax == Syntax::SpinLtl || self.syntax == Syntax::SmvLtl {
            return Err(LogicError::NotLtl);
        }
        out.push_str(q);
        out.push_str(" [ ");
        self.paren(a, out)?;
        out.push(' ');
        out.push_str(op);
        out.push(' ');
        self.paren(b, out)?;
        out.push_str(" ]");
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
enum Op {
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Finally,
    Globally,
    Until,
    WeakUntil,
    Release,
}
