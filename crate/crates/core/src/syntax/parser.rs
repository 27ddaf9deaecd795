//! Recursive-descent parser for programs, formulas and sentence lists.
//!
//! Lowercase (or numeric) identifiers are constants and predicates,
//! uppercase (or `_`-prefixed) identifiers are variables. Binding strength
//! from tightest to loosest: `not`, `&`/`,`, `|`, `->` (right-associative),
//! `<->`.

use thiserror::Error;

use super::formula::{Atom, Formula, Sentence, Term};
use super::program::{Program, Rule, Signature, SignatureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: predicate {predicate} used with arity {found}, earlier with arity {expected}")]
    ArityMismatch {
        line: usize,
        column: usize,
        predicate: String,
        expected: usize,
        found: usize,
    },
    #[error("{line}:{column}: equality is reserved and cannot be used as a predicate name")]
    ReservedEquality { line: usize, column: usize },
    #[error("{line}:{column}: formula is not closed (free variables: {variables})")]
    NotClosed {
        line: usize,
        column: usize,
        variables: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lower(String),
    Upper(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    If,
    Amp,
    Bar,
    Arrow,
    DoubleArrow,
    Equals,
    NotEquals,
    Hash,
    Slash,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Lower(s) | Tok::Upper(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::If => "`:-`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DoubleArrow => "`<->`".into(),
            Tok::Equals => "`=`".into(),
            Tok::NotEquals => "`!=`".into(),
            Tok::Hash => "`#`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut push = |tok: Tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned {
                tok,
                line: tl,
                column: tc,
            });
            *i += len;
            *col += len;
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
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '{' => push(Tok::LBrace, 1, &mut i, &mut col),
            '}' => push(Tok::RBrace, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            '&' => push(Tok::Amp, 1, &mut i, &mut col),
            '|' => push(Tok::Bar, 1, &mut i, &mut col),
            '=' => push(Tok::Equals, 1, &mut i, &mut col),
            '#' => push(Tok::Hash, 1, &mut i, &mut col),
            '/' => push(Tok::Slash, 1, &mut i, &mut col),
            ':' if chars.get(i + 1) == Some(&'-') => push(Tok::If, 2, &mut i, &mut col),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Arrow, 2, &mut i, &mut col),
            '!' if chars.get(i + 1) == Some(&'=') => push(Tok::NotEquals, 2, &mut i, &mut col),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                push(Tok::DoubleArrow, 3, &mut i, &mut col)
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                let tok = if c.is_ascii_uppercase() || c == '_' {
                    Tok::Upper(word)
                } else {
                    Tok::Lower(word)
                };
                push(tok, j - start, &mut i, &mut col);
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

const KEYWORDS: [&str; 5] = ["not", "true", "false", "forall", "exists"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    signature: Signature,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            signature: Signature::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            ))
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Lower(s) if s == kw)
    }

    fn record_predicate(
        &mut self,
        name: &str,
        arity: usize,
        at: (usize, usize),
    ) -> Result<(), ParseError> {
        self.signature
            .add_predicate(name, arity)
            .map_err(|e| match e {
                SignatureError::ArityMismatch {
                    predicate,
                    expected,
                    found,
                } => ParseError::ArityMismatch {
                    line: at.0,
                    column: at.1,
                    predicate,
                    expected,
                    found,
                },
                _ => ParseError::ReservedEquality {
                    line: at.0,
                    column: at.1,
                },
            })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Upper(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::Lower(c) if !KEYWORDS.contains(&c.as_str()) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    return self.error("function symbols are not supported");
                }
                self.signature.constants.insert(c.clone());
                Ok(Term::Const(c))
            }
            other => self.error(format!("expected a term, found {}", other.describe())),
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let at = self.here();
        if *self.peek() == Tok::Equals {
            return Err(ParseError::ReservedEquality {
                line: at.0,
                column: at.1,
            });
        }
        let name = match self.peek().clone() {
            Tok::Lower(n) if !KEYWORDS.contains(&n.as_str()) => n,
            other => return self.error(format!("expected an atom, found {}", other.describe())),
        };
        self.bump();
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.bump();
            if *self.peek() != Tok::RParen {
                args.push(self.term()?);
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.term()?);
                }
            }
            self.expect(Tok::RParen)?;
        }
        self.record_predicate(&name, args.len(), at)?;
        Ok(Atom::new(name, args))
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        if *self.peek() == Tok::DoubleArrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while matches!(self.peek(), Tok::Amp | Tok::Comma) {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn quantified(&mut self, universal: bool) -> Result<Formula, ParseError> {
        self.bump();
        let mut vars = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Upper(v) => {
                    self.bump();
                    vars.push(v);
                }
                other => {
                    return self.error(format!(
                        "expected a quantified variable, found {}",
                        other.describe()
                    ))
                }
            }
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::LParen)?;
        let body = self.formula()?;
        self.expect(Tok::RParen)?;
        Ok(if universal {
            Formula::forall_many(vars, body)
        } else {
            Formula::exists_many(vars, body)
        })
    }

    fn comparison(&mut self, lhs: Term) -> Result<Formula, ParseError> {
        match self.bump() {
            Tok::Equals => Ok(Formula::Eq(lhs, self.term()?)),
            Tok::NotEquals => Ok(Formula::neq(lhs, self.term()?)),
            _ => unreachable!("comparison called without an operator"),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Lower(kw) if kw == "not" => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Lower(kw) if kw == "true" => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::Lower(kw) if kw == "false" => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Lower(kw) if kw == "forall" => self.quantified(true),
            Tok::Lower(kw) if kw == "exists" => self.quantified(false),
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Upper(_) => {
                let lhs = self.term()?;
                if matches!(self.peek(), Tok::Equals | Tok::NotEquals) {
                    self.comparison(lhs)
                } else {
                    self.error("expected `=` or `!=` after a variable")
                }
            }
            Tok::Lower(_) if matches!(self.peek_at(1), Tok::Equals | Tok::NotEquals) => {
                let lhs = self.term()?;
                self.comparison(lhs)
            }
            Tok::Equals if *self.peek_at(1) == Tok::LParen => {
                let (line, column) = self.here();
                Err(ParseError::ReservedEquality { line, column })
            }
            _ => Ok(Formula::Atom(self.atom()?)),
        }
    }

    fn optional_body(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Tok::If {
            self.bump();
            self.formula()
        } else {
            Ok(Formula::top())
        }
    }

    fn directive(&mut self, extensional: &mut Vec<(String, usize)>) -> Result<(), ParseError> {
        self.bump();
        if !self.at_keyword("extensional") {
            return self.error("unknown directive (expected `#extensional`)");
        }
        self.bump();
        let at = self.here();
        let name = match self.bump() {
            Tok::Lower(n) if !KEYWORDS.contains(&n.as_str()) => n,
            Tok::Equals => {
                return Err(ParseError::ReservedEquality {
                    line: at.0,
                    column: at.1,
                })
            }
            other => {
                return Err(ParseError::Syntax {
                    line: at.0,
                    column: at.1,
                    message: format!("expected a predicate name, found {}", other.describe()),
                })
            }
        };
        self.expect(Tok::Slash)?;
        let arity = match self.peek().clone() {
            Tok::Lower(n) if n.chars().all(|c| c.is_ascii_digit()) => {
                self.bump();
                n.parse::<usize>().map_err(|_| ParseError::Syntax {
                    line: at.0,
                    column: at.1,
                    message: format!("arity `{n}` out of range"),
                })?
            }
            other => return self.error(format!("expected an arity, found {}", other.describe())),
        };
        self.expect(Tok::Dot)?;
        self.record_predicate(&name, arity, at)?;
        extensional.push((name, arity));
        Ok(())
    }

    fn statement(&mut self, extensional: &mut Vec<(String, usize)>) -> Result<Option<Rule>, ParseError> {
        let rule = match self.peek() {
            Tok::Hash => {
                self.directive(extensional)?;
                return Ok(None);
            }
            Tok::If => {
                self.bump();
                Rule::constraint(self.formula()?)
            }
            Tok::LBrace => {
                self.bump();
                let head = self.atom()?;
                self.expect(Tok::RBrace)?;
                Rule::choice(head, self.optional_body()?)
            }
            _ => {
                let head = self.atom()?;
                Rule::basic(head, self.optional_body()?)
            }
        };
        self.expect(Tok::Dot)?;
        Ok(Some(rule))
    }
}

/// Parses a program. Without `#extensional` directives every predicate is intensional.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut p = Parser::new(text)?;
    let mut rules = Vec::new();
    let mut extensional = Vec::new();
    while *p.peek() != Tok::Eof {
        if let Some(rule) = p.statement(&mut extensional)? {
            rules.push(rule);
        }
    }
    let intensional = p
        .signature
        .predicates
        .keys()
        .filter(|k| !extensional.iter().any(|(e, _)| e == *k))
        .cloned()
        .collect();
    Ok(Program {
        signature: p.signature,
        rules,
        intensional,
    })
}

/// Parses a single formula (no terminating `.`).
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {}", p.peek().describe()));
    }
    Ok(f)
}

/// Parses a list of closed formulas, each terminated by `.`.
pub fn parse_sentences(text: &str) -> Result<Vec<Sentence>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    while *p.peek() != Tok::Eof {
        let (line, column) = p.here();
        let f = p.formula()?;
        p.expect(Tok::Dot)?;
        let free = f.free_variables_ordered();
        match Sentence::new(f) {
            Some(s) => out.push(s),
            None => {
                return Err(ParseError::NotClosed {
                    line,
                    column,
                    variables: free.join(", "),
                })
            }
        }
    }
    Ok(out)
}
