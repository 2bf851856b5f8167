//! Front-end for `.sltl` specification files.
//!
//! ```text
//! env r1, r2;            # environment variables
//! sys g1, g2;
//! env mode : {A, B, C};  # enumerated variable
//! init: !g1;
//! safety: (r1 -> F[0,3] g1) & !(g1 & g2);
//! ```
//!
//! Binary operators from weakest to strongest: `<->`, `->`, `|` (also
//! `||` for the strict-future disjunction), `&`. Prefix operators `!`, `X`,
//! `G[lo,hi]`, `F[lo,hi]` bind tighter than any binary operator.

mod render;

pub use render::{render, render_spec};

use crate::error::{ParseError, ParseErrorKind};
use crate::formula::{Domain, Formula, Literal, Owner, VarDecl, VarTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub vars: VarTable,
    /// Boolean initial condition `α`.
    pub initial: Formula,
    /// Body `ψ` of the invariant `□ψ`.
    pub safety: Formula,
}

impl SpecFile {
    pub fn env_vars(&self) -> Vec<crate::formula::VarId> {
        self.vars.env_vars()
    }

    pub fn sys_vars(&self) -> Vec<crate::formula::VarId> {
        self.vars.sys_vars()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Env,
    Sys,
    Init,
    Safety,
    True,
    False,
    X,
    G,
    F,
    Semi,
    Colon,
    Comma,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Bang,
    Amp,
    Bar,
    DoubleBar,
    Arrow,
    DoubleArrow,
    Equals,
    NotEquals,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Env => "env",
            Tok::Sys => "sys",
            Tok::Init => "init",
            Tok::Safety => "safety",
            Tok::True => "true",
            Tok::False => "false",
            Tok::X => "X",
            Tok::G => "G",
            Tok::F => "F",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Comma => ",",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::Bang => "!",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::DoubleBar => "||",
            Tok::Arrow => "->",
            Tok::DoubleArrow => "<->",
            Tok::Equals => "=",
            Tok::NotEquals => "!=",
            Tok::Ident(_) | Tok::Num(_) | Tok::Eof => "",
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(kind: ParseErrorKind, line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        kind,
        line,
        col,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let peek = |k: usize| chars.get(i + k).copied();
        let (tok, width) = if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            let tok = match word.as_str() {
                "env" => Tok::Env,
                "sys" => Tok::Sys,
                "init" => Tok::Init,
                "safety" => Tok::Safety,
                "true" => Tok::True,
                "false" => Tok::False,
                "X" => Tok::X,
                "G" => Tok::G,
                "F" => Tok::F,
                _ => Tok::Ident(word),
            };
            (tok, j - i)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().collect();
            let n = digits
                .parse::<u64>()
                .ok()
                .filter(|n| *n <= u32::MAX as u64)
                .ok_or_else(|| err(ParseErrorKind::Lexical, tl, tc, format!("number `{digits}` is too large")))?;
            (Tok::Num(n), j - i)
        } else {
            match (c, peek(1), peek(2)) {
                ('<', Some('-'), Some('>')) => (Tok::DoubleArrow, 3),
                ('-', Some('>'), _) => (Tok::Arrow, 2),
                ('|', Some('|'), _) => (Tok::DoubleBar, 2),
                ('!', Some('='), _) => (Tok::NotEquals, 2),
                ('|', ..) => (Tok::Bar, 1),
                ('&', ..) => (Tok::Amp, 1),
                ('!', ..) => (Tok::Bang, 1),
                ('=', ..) => (Tok::Equals, 1),
                (';', ..) => (Tok::Semi, 1),
                (':', ..) => (Tok::Colon, 1),
                (',', ..) => (Tok::Comma, 1),
                ('{', ..) => (Tok::LBrace, 1),
                ('}', ..) => (Tok::RBrace, 1),
                ('(', ..) => (Tok::LParen, 1),
                (')', ..) => (Tok::RParen, 1),
                ('[', ..) => (Tok::LBrack, 1),
                (']', ..) => (Tok::RBrack, 1),
                _ => return Err(err(ParseErrorKind::Lexical, tl, tc, format!("unexpected character `{c}`"))),
            }
        };
        out.push(Token {
            tok,
            line: tl,
            col: tc,
        });
        i += width;
        col += width;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a mut VarTable,
    in_init: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, expected: &str) -> ParseError {
        let t = self.peek();
        err(
            ParseErrorKind::Syntax,
            t.line,
            t.col,
            format!("expected {expected}, found {}", t.tok.describe()),
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.syntax(&format!("`{}`", tok.text())))
        }
    }

    fn ident(&mut self) -> Result<(String, Token), ParseError> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => Ok((s, self.bump())),
            _ => Err(self.syntax("an identifier")),
        }
    }

    fn spec(&mut self) -> Result<(Formula, Formula), ParseError> {
        while matches!(self.peek().tok, Tok::Env | Tok::Sys) {
            self.declaration()?;
        }
        let mut initial = Formula::True;
        if self.peek().tok == Tok::Init {
            self.bump();
            self.expect(Tok::Colon)?;
            self.in_init = true;
            initial = self.formula()?;
            self.in_init = false;
            self.expect(Tok::Semi)?;
        }
        if self.peek().tok != Tok::Safety {
            return Err(self.syntax(if self.pos == 0 {
                "a declaration, `init` or `safety`"
            } else {
                "`safety`"
            }));
        }
        self.bump();
        self.expect(Tok::Colon)?;
        let safety = self.formula()?;
        self.expect(Tok::Semi)?;
        if self.peek().tok != Tok::Eof {
            return Err(self.syntax("end of input"));
        }
        Ok((initial, safety))
    }

    fn declaration(&mut self) -> Result<(), ParseError> {
        let owner = if self.bump().tok == Tok::Env { Owner::Env } else { Owner::Sys };
        let mut names = vec![self.ident()?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            names.push(self.ident()?);
        }
        let mut domain = Domain::Bool;
        if self.peek().tok == Tok::Colon {
            self.bump();
            self.expect(Tok::LBrace)?;
            let mut consts = vec![self.constant_name()?.0];
            while self.peek().tok == Tok::Comma {
                self.bump();
                consts.push(self.constant_name()?.0);
            }
            self.expect(Tok::RBrace)?;
            domain = Domain::Enum(consts);
        }
        self.expect(Tok::Semi)?;
        for (name, tok) in names {
            self.vars
                .declare(VarDecl {
                    name,
                    owner,
                    domain: domain.clone(),
                })
                .map_err(|m| err(ParseErrorKind::Declaration, tok.line, tok.col, m))?;
        }
        Ok(())
    }

    fn constant_name(&mut self) -> Result<(String, Token), ParseError> {
        let t = self.peek().clone();
        let name = match &t.tok {
            Tok::Ident(s) => s.clone(),
            Tok::X => "X".into(),
            Tok::G => "G".into(),
            Tok::F => "F".into(),
            _ => return Err(self.syntax("a constant name")),
        };
        self.bump();
        Ok((name, t))
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        if self.peek().tok == Tok::DoubleArrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek().tok == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let first = self.conjunction()?;
        let mut items = vec![first];
        let mut dotted: Option<bool> = None;
        while matches!(self.peek().tok, Tok::Bar | Tok::DoubleBar) {
            let this = self.peek().tok == Tok::DoubleBar;
            if dotted.is_some_and(|d| d != this) {
                let t = self.peek();
                return Err(err(
                    ParseErrorKind::Syntax,
                    t.line,
                    t.col,
                    "mixing `|` and `||` requires parentheses",
                ));
            }
            dotted = Some(this);
            self.bump();
            items.push(self.conjunction()?);
        }
        Ok(match dotted {
            None => items.pop().unwrap(),
            Some(true) => Formula::dor(items),
            Some(false) => Formula::or(items),
        })
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut items = vec![self.unary()?];
        while self.peek().tok == Tok::Amp {
            self.bump();
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Formula::and(items) })
    }

    fn temporal_allowed(&self, t: &Token) -> Result<(), ParseError> {
        if self.in_init {
            Err(err(
                ParseErrorKind::TemporalInInit,
                t.line,
                t.col,
                format!("`{}` may not appear in `init`", t.tok.text()),
            ))
        } else {
            Ok(())
        }
    }

    fn interval(&mut self) -> Result<(u32, u32), ParseError> {
        self.expect(Tok::LBrack)?;
        let lo_tok = self.peek().clone();
        let lo = self.number()?;
        self.expect(Tok::Comma)?;
        let hi = self.number()?;
        self.expect(Tok::RBrack)?;
        if lo > hi {
            return Err(err(
                ParseErrorKind::EmptyInterval,
                lo_tok.line,
                lo_tok.col,
                format!("interval [{lo},{hi}] has lower bound above upper bound"),
            ));
        }
        Ok((lo, hi))
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        match self.peek().tok {
            Tok::Num(n) => {
                self.bump();
                Ok(n as u32)
            }
            _ => Err(self.syntax("a number")),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::X => {
                self.temporal_allowed(&t)?;
                self.bump();
                Ok(Formula::next(1, self.unary()?))
            }
            Tok::G | Tok::F => {
                self.temporal_allowed(&t)?;
                self.bump();
                let (lo, hi) = self.interval()?;
                let body = self.unary()?;
                Ok(if t.tok == Tok::G {
                    Formula::always(lo, hi, body)
                } else {
                    Formula::eventually(lo, hi, body)
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) => {
                self.bump();
                let v = self.vars.lookup(name).ok_or_else(|| {
                    err(
                        ParseErrorKind::UndeclaredVariable,
                        t.line,
                        t.col,
                        format!("`{name}` is not declared"),
                    )
                })?;
                let op = self.peek().tok.clone();
                if matches!(op, Tok::Equals | Tok::NotEquals) {
                    self.bump();
                    let (cname, ctok) = self.constant_name()?;
                    if let Domain::Bool = self.vars.get(v).domain {
                        return Err(err(
                            ParseErrorKind::Type,
                            t.line,
                            t.col,
                            format!("`{name}` is boolean and cannot be compared to a constant"),
                        ));
                    }
                    let c = self.vars.constant_index(v, &cname).ok_or_else(|| {
                        err(
                            ParseErrorKind::Type,
                            ctok.line,
                            ctok.col,
                            format!("`{cname}` is not a value of `{name}`"),
                        )
                    })?;
                    Ok(Formula::lit(if op == Tok::Equals {
                        Literal::Eq(v, c)
                    } else {
                        Literal::NotEq(v, c)
                    }))
                } else {
                    if let Domain::Enum(_) = self.vars.get(v).domain {
                        return Err(err(
                            ParseErrorKind::Type,
                            t.line,
                            t.col,
                            format!("enumerated variable `{name}` must be compared with `=` or `!=`"),
                        ));
                    }
                    Ok(Formula::pos(v))
                }
            }
            _ => Err(self.syntax("a formula")),
        }
    }
}

/// Parses a complete specification file.
pub fn parse(text: &str) -> Result<SpecFile, ParseError> {
    let mut vars = VarTable::new();
    let toks = lex(text)?;
    let (initial, safety) = {
        let mut p = Parser {
            toks,
            pos: 0,
            vars: &mut vars,
            in_init: false,
        };
        p.spec()?
    };
    Ok(SpecFile {
        vars,
        initial,
        safety,
    })
}

/// Parses a single formula over already declared variables.
pub fn parse_formula(text: &str, vars: &VarTable) -> Result<Formula, ParseError> {
    let mut table = vars.clone();
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        vars: &mut table,
        in_init: false,
    };
    let f = p.formula()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.syntax("end of input"));
    }
    Ok(f)
}
