//! Well-formed formulas over the primitive connectives `¬` and `∨`.
//!
//! Derived connectives are kept as [`Formula::Sugar`] nodes after parsing so
//! that proof scripts can quote axioms in their published shape. Anything
//! that assigns meaning to a formula works on [`Formula::expand`].
//!
//! Surface syntax (ASCII is normative, Unicode is accepted on input):
//!
//! | token        | meaning | Unicode |
//! |--------------|---------|---------|
//! | `p0`, `p1`…  | variable | |
//! | `~`          | `¬` | `¬` |
//! | `v`          | `∨` | `∨` |
//! | `^`          | `∧` | `∧` |
//! | `-i>`        | `→ᵢ`, i = 0..5 | `→₀`…`→₅` |
//! | `=`          | `≡` | `≡` |
//! | `=0=`        | `≡₀` | `≡₀` |
//!
//! Binding from weakest to strongest: implications, equivalences, `v`, `^`,
//! `~`. Two binary connectives of the same strength may not be chained
//! without parentheses.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// Derived binary connectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    Conj,
    Imp0,
    Imp1,
    Imp2,
    Imp3,
    Imp4,
    Imp5,
    EquivQ,
    Equiv0,
}

impl Connective {
    pub const ALL: [Connective; 9] = [
        Connective::Conj,
        Connective::Imp0,
        Connective::Imp1,
        Connective::Imp2,
        Connective::Imp3,
        Connective::Imp4,
        Connective::Imp5,
        Connective::EquivQ,
        Connective::Equiv0,
    ];

    /// Every derived connective is binary.
    pub fn arity(self) -> usize {
        2
    }

    pub fn implication(index: u8) -> Option<Connective> {
        Some(match index {
            0 => Connective::Imp0,
            1 => Connective::Imp1,
            2 => Connective::Imp2,
            3 => Connective::Imp3,
            4 => Connective::Imp4,
            5 => Connective::Imp5,
            _ => return None,
        })
    }

    pub fn implication_index(self) -> Option<u8> {
        match self {
            Connective::Imp0 => Some(0),
            Connective::Imp1 => Some(1),
            Connective::Imp2 => Some(2),
            Connective::Imp3 => Some(3),
            Connective::Imp4 => Some(4),
            Connective::Imp5 => Some(5),
            _ => None,
        }
    }

    pub fn ascii(self) -> &'static str {
        match self {
            Connective::Conj => "^",
            Connective::Imp0 => "-0>",
            Connective::Imp1 => "-1>",
            Connective::Imp2 => "-2>",
            Connective::Imp3 => "-3>",
            Connective::Imp4 => "-4>",
            Connective::Imp5 => "-5>",
            Connective::EquivQ => "=",
            Connective::Equiv0 => "=0=",
        }
    }

    pub fn unicode(self) -> &'static str {
        match self {
            Connective::Conj => "∧",
            Connective::Imp0 => "→₀",
            Connective::Imp1 => "→₁",
            Connective::Imp2 => "→₂",
            Connective::Imp3 => "→₃",
            Connective::Imp4 => "→₄",
            Connective::Imp5 => "→₅",
            Connective::EquivQ => "≡",
            Connective::Equiv0 => "≡₀",
        }
    }

    fn precedence(self) -> Prec {
        match self {
            Connective::Conj => Prec::And,
            Connective::EquivQ | Connective::Equiv0 => Prec::Equiv,
            _ => Prec::Imp,
        }
    }

    /// Primitive-only expansion of `a ∘ b`, given primitive-only operands.
    ///
    /// Each connective has exactly one template, so expansion is confluent.
    /// `∨`-chains in the templates associate to the left.
    fn template(self, a: Formula, b: Formula) -> Formula {
        use Formula as F;
        match self {
            Connective::Conj => and_p(a, b),
            Connective::Imp0 => F::or(F::neg(a), b),
            Connective::Imp1 => F::or(F::neg(a.clone()), and_p(a, b)),
            // a →₂ b = ¬b →₁ ¬a, double negations kept
            Connective::Imp2 => Connective::Imp1.template(F::neg(b), F::neg(a)),
            Connective::Imp3 => F::or(
                F::or(and_p(F::neg(a.clone()), b.clone()), and_p(F::neg(a.clone()), F::neg(b.clone()))),
                and_p(a.clone(), F::or(F::neg(a), b)),
            ),
            // a →₄ b = ¬b →₃ ¬a
            Connective::Imp4 => Connective::Imp3.template(F::neg(b), F::neg(a)),
            Connective::Imp5 => F::or(
                F::or(and_p(a.clone(), b.clone()), and_p(F::neg(a.clone()), b.clone())),
                and_p(F::neg(a), F::neg(b)),
            ),
            Connective::EquivQ => F::or(and_p(a.clone(), b.clone()), and_p(F::neg(a), F::neg(b))),
            Connective::Equiv0 => {
                and_p(Connective::Imp0.template(a.clone(), b.clone()), Connective::Imp0.template(b, a))
            }
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.ascii())
    }
}

fn and_p(a: Formula, b: Formula) -> Formula {
    Formula::neg(Formula::or(Formula::neg(a), Formula::neg(b)))
}

/// A well-formed formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(u32),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Sugar(Connective, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(index: u32) -> Formula {
        Formula::Var(index)
    }

    pub fn neg(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::sugar(Connective::Conj, a, b)
    }

    pub fn sugar(connective: Connective, a: Formula, b: Formula) -> Formula {
        Formula::Sugar(connective, Box::new(a), Box::new(b))
    }

    pub fn imp(index: u8, a: Formula, b: Formula) -> Formula {
        let c = Connective::implication(index).expect("implication index must be 0..=5");
        Formula::sugar(c, a, b)
    }

    pub fn equiv(a: Formula, b: Formula) -> Formula {
        Formula::sugar(Connective::EquivQ, a, b)
    }

    pub fn equiv0(a: Formula, b: Formula) -> Formula {
        Formula::sugar(Connective::Equiv0, a, b)
    }

    /// Rewrites every sugar node into `¬`/`∨`, innermost first.
    pub fn expand(&self) -> Formula {
        match self {
            Formula::Var(i) => Formula::Var(*i),
            Formula::Not(a) => Formula::neg(a.expand()),
            Formula::Or(a, b) => Formula::or(a.expand(), b.expand()),
            Formula::Sugar(c, a, b) => c.template(a.expand(), b.expand()),
        }
    }

    pub fn is_primitive(&self) -> bool {
        match self {
            Formula::Var(_) => true,
            Formula::Not(a) => a.is_primitive(),
            Formula::Or(a, b) => a.is_primitive() && b.is_primitive(),
            Formula::Sugar(..) => false,
        }
    }

    /// Indices of the variables occurring in the formula.
    pub fn variables(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Var(i) => {
                out.insert(*i);
            }
            Formula::Not(a) => a.collect_variables(out),
            Formula::Or(a, b) | Formula::Sugar(_, a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
        }
    }

    /// Nesting depth; variables have depth 0 and every connective node
    /// (sugar included) adds one.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Not(a) => 1 + a.depth(),
            Formula::Or(a, b) | Formula::Sugar(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::Or(a, b) | Formula::Sugar(_, a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Simultaneous substitution of variables.
    pub fn substitute(&self, map: &dyn Fn(u32) -> Option<Formula>) -> Formula {
        match self {
            Formula::Var(i) => map(*i).unwrap_or(Formula::Var(*i)),
            Formula::Not(a) => Formula::neg(a.substitute(map)),
            Formula::Or(a, b) => Formula::or(a.substitute(map), b.substitute(map)),
            Formula::Sugar(c, a, b) => Formula::sugar(*c, a.substitute(map), b.substitute(map)),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write_to(&mut out);
        out
    }

    /// Rendering with every binary node parenthesised.
    pub fn render_full(&self) -> String {
        match self {
            Formula::Var(i) => format!("p{i}"),
            Formula::Not(a) => format!("~{}", a.render_full()),
            Formula::Or(a, b) => format!("({} v {})", a.render_full(), b.render_full()),
            Formula::Sugar(c, a, b) => format!("({} {} {})", a.render_full(), c, b.render_full()),
        }
    }

    fn precedence(&self) -> Prec {
        match self {
            Formula::Var(_) => Prec::Atom,
            Formula::Not(_) => Prec::Unary,
            Formula::Or(..) => Prec::Or,
            Formula::Sugar(c, ..) => c.precedence(),
        }
    }

    fn write_to(&self, out: &mut String) {
        match self {
            Formula::Var(i) => {
                out.push('p');
                out.push_str(&i.to_string());
            }
            Formula::Not(a) => {
                out.push('~');
                a.write_operand(Prec::Unary, false, out);
            }
            Formula::Or(a, b) => write_binary(Prec::Or, "v", a, b, out),
            Formula::Sugar(c, a, b) => write_binary(c.precedence(), c.ascii(), a, b, out),
        }
    }

    /// Binary operands at the same level need parentheses since chains are
    /// rejected by the parser; the operand of `~` only when it is binary.
    fn write_operand(&self, parent: Prec, binary_parent: bool, out: &mut String) {
        let needs = if binary_parent { self.precedence() <= parent } else { self.precedence() < parent };
        if needs {
            out.push('(');
            self.write_to(out);
            out.push(')');
        } else {
            self.write_to(out);
        }
    }
}

fn write_binary(prec: Prec, op: &str, a: &Formula, b: &Formula, out: &mut String) {
    a.write_operand(prec, true, out);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    b.write_operand(prec, true, out);
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Imp,
    Equiv,
    Or,
    And,
    Unary,
    Atom,
}

/// Errors carry the character offset of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty formula")]
    Empty,
    #[error("unknown symbol {symbol:?} at position {pos}")]
    UnknownSymbol { pos: usize, symbol: char },
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("`{connective}` at position {pos} is missing an operand")]
    MissingOperand { pos: usize, connective: String },
    #[error("connectives of equal strength chained at position {pos}; add parentheses")]
    Chained { pos: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Var(u32),
    Not,
    Or,
    Bin(Connective),
    LParen,
    RParen,
}

impl Tok {
    fn level(self) -> Option<Prec> {
        match self {
            Tok::Or => Some(Prec::Or),
            Tok::Bin(c) => Some(c.precedence()),
            _ => None,
        }
    }

    fn describe(self) -> String {
        match self {
            Tok::Var(i) => format!("p{i}"),
            Tok::Not => "~".into(),
            Tok::Or => "v".into(),
            Tok::Bin(c) => c.ascii().into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

fn subscript_digit(c: char) -> Option<u8> {
    let d = (c as u32).checked_sub('₀' as u32)?;
    (d < 10).then_some(d as u8)
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            'p' => {
                i += 1;
                let digits_start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == digits_start {
                    return Err(ParseError::Syntax {
                        pos: start,
                        message: "expected a variable index after `p`".into(),
                    });
                }
                let digits: String = chars[digits_start..i].iter().collect();
                let index = digits.parse::<u32>().map_err(|_| ParseError::Syntax {
                    pos: start,
                    message: format!("variable index {digits} is too large"),
                })?;
                toks.push((start, Tok::Var(index)));
                continue;
            }
            '~' | '¬' => Tok::Not,
            'v' | '∨' => Tok::Or,
            '^' | '∧' => Tok::Bin(Connective::Conj),
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' => {
                let digit = chars.get(i + 1).and_then(|d| d.to_digit(10));
                match (digit, chars.get(i + 2)) {
                    (Some(d), Some('>')) if d <= 5 => {
                        i += 2;
                        Tok::Bin(Connective::implication(d as u8).unwrap())
                    }
                    _ => {
                        return Err(ParseError::Syntax {
                            pos: start,
                            message: "expected an implication `-0>` … `-5>`".into(),
                        })
                    }
                }
            }
            '→' => {
                let digit =
                    chars.get(i + 1).and_then(|&d| subscript_digit(d).or_else(|| d.to_digit(10).map(|x| x as u8)));
                match digit.and_then(Connective::implication) {
                    Some(c) => {
                        i += 1;
                        Tok::Bin(c)
                    }
                    None => {
                        return Err(ParseError::Syntax {
                            pos: start,
                            message: "`→` needs an index 0..5, e.g. `→₁`".into(),
                        })
                    }
                }
            }
            '=' => {
                if chars.get(i + 1) == Some(&'0') && chars.get(i + 2) == Some(&'=') {
                    i += 2;
                    Tok::Bin(Connective::Equiv0)
                } else {
                    Tok::Bin(Connective::EquivQ)
                }
            }
            '≡' => {
                if chars.get(i + 1).and_then(|&d| subscript_digit(d)) == Some(0) {
                    i += 1;
                    Tok::Bin(Connective::Equiv0)
                } else {
                    Tok::Bin(Connective::EquivQ)
                }
            }
            other => return Err(ParseError::UnknownSymbol { pos: start, symbol: other }),
        };
        toks.push((start, tok));
        i += 1;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<(usize, Tok)> {
        self.toks.get(self.pos).copied()
    }

    fn binary(&mut self, level: Prec) -> Result<Formula, ParseError> {
        let lhs = self.operand(level)?;
        let Some((op_pos, tok)) = self.peek() else {
            return Ok(lhs);
        };
        if tok.level() != Some(level) {
            return Ok(lhs);
        }
        self.pos += 1;
        if self.peek().is_none() {
            return Err(ParseError::MissingOperand { pos: op_pos, connective: tok.describe() });
        }
        let rhs = self.operand(level)?;
        if let Some((pos, next)) = self.peek() {
            if next.level() == Some(level) {
                return Err(ParseError::Chained { pos });
            }
        }
        Ok(match tok {
            Tok::Or => Formula::or(lhs, rhs),
            Tok::Bin(c) => Formula::sugar(c, lhs, rhs),
            _ => unreachable!(),
        })
    }

    fn operand(&mut self, level: Prec) -> Result<Formula, ParseError> {
        match level {
            Prec::Imp => self.binary(Prec::Equiv),
            Prec::Equiv => self.binary(Prec::Or),
            Prec::Or => self.binary(Prec::And),
            _ => self.unary(),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some((pos, Tok::Not)) => {
                self.pos += 1;
                if self.peek().is_none() {
                    return Err(ParseError::MissingOperand { pos, connective: "~".into() });
                }
                Ok(Formula::neg(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            None => Err(ParseError::Syntax { pos: self.end, message: "unexpected end of input".into() }),
            Some((_, Tok::Var(i))) => {
                self.pos += 1;
                Ok(Formula::Var(i))
            }
            Some((pos, Tok::LParen)) => {
                self.pos += 1;
                let inner = self.binary(Prec::Imp)?;
                match self.peek() {
                    Some((_, Tok::RParen)) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some((p, t)) => Err(ParseError::Syntax {
                        pos: p,
                        message: format!("expected `)` but found `{}`", t.describe()),
                    }),
                    None => Err(ParseError::Syntax { pos, message: "unclosed `(`".into() }),
                }
            }
            Some((pos, t @ (Tok::Or | Tok::Bin(_)))) => {
                Err(ParseError::MissingOperand { pos, connective: t.describe() })
            }
            Some((pos, t)) => Err(ParseError::Syntax { pos, message: format!("unexpected `{}`", t.describe()) }),
        }
    }
}

/// Parses a formula. Sugar connectives stay as [`Formula::Sugar`] nodes.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser { toks, pos: 0, end: text.chars().count() };
    let f = parser.binary(Prec::Imp)?;
    if let Some((pos, t)) = parser.peek() {
        return Err(ParseError::Syntax {
            pos,
            message: format!("unexpected `{}` after complete formula", t.describe()),
        });
    }
    Ok(f)
}
