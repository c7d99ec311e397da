//! The `.bn` network format: one `name = expr` line per component.
//!
//! Operators by decreasing precedence are `!`, `&`, `^`, `|`; binary
//! operators associate to the left. `0` and `1` are constants, `#` starts a
//! comment, and blank lines are ignored. Every variable must be declared as a
//! component somewhere in the file.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::network::{valid_word_mask, BooleanNetwork, DEFAULT_MAX_N, HARD_MAX_N, LOW_HALF};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("undeclared variable {name:?} at line {line}")]
    UndeclaredVariable { name: String, line: usize },
    #[error("component {name:?} declared twice (line {line})")]
    DuplicateComponent { name: String, line: usize },
    #[error("network has no components")]
    EmptyNetwork,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("too many components: {n} (maximum {max})")]
    TooManyComponents { n: usize, max: usize },
}

/// Either stage of loading a network from text.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Compile(#[from] CompileError),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Expr {
    Var(String),
    Const(bool),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Xor(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Or(Box::new(a), Box::new(b))
    }

    pub fn xor(a: Expr, b: Expr) -> Expr {
        Expr::Xor(Box::new(a), Box::new(b))
    }

    /// Pointwise evaluation with a variable lookup.
    pub fn eval<F: Fn(&str) -> bool>(&self, env: &F) -> bool {
        match self {
            Expr::Var(v) => env(v),
            Expr::Const(c) => *c,
            Expr::Not(e) => !e.eval(env),
            Expr::And(a, b) => a.eval(env) && b.eval(env),
            Expr::Or(a, b) => a.eval(env) || b.eval(env),
            Expr::Xor(a, b) => a.eval(env) ^ b.eval(env),
        }
    }

    /// Names of all variables, in first-occurrence order.
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            Expr::Const(_) => {}
            Expr::Not(e) => e.collect_vars(out),
            Expr::And(a, b) | Expr::Or(a, b) | Expr::Xor(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Or(..) => 1,
            Expr::Xor(..) => 2,
            Expr::And(..) => 3,
            Expr::Not(_) => 4,
            Expr::Var(_) | Expr::Const(_) => 5,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Canonical rendering: parentheses appear exactly where reparsing would
/// otherwise build a different tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        let (a, b, op) = match self {
            Expr::Var(v) => return f.write_str(v),
            Expr::Const(c) => return f.write_str(if *c { "1" } else { "0" }),
            Expr::Not(e) => {
                f.write_str("!")?;
                return e.write_child(f, e.precedence() < p);
            }
            Expr::And(a, b) => (a, b, " & "),
            Expr::Or(a, b) => (a, b, " | "),
            Expr::Xor(a, b) => (a, b, " ^ "),
        };
        a.write_child(f, a.precedence() < p)?;
        f.write_str(op)?;
        b.write_child(f, b.precedence() <= p)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub name: String,
    pub expr: Expr,
    pub line: usize,
}

/// A parsed network: components in declaration order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NetworkSource {
    pub components: Vec<Component>,
}

impl NetworkSource {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.components.iter().map(|c| c.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c.name == name)
    }

    /// Text that parses back to the same source (up to line numbers).
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.components {
            out.push_str(&format!("{} = {}\n", c.name, c.expr));
        }
        out
    }

    /// Compiles with the default component cap.
    pub fn compile(&self) -> Result<BooleanNetwork, CompileError> {
        compile(self, DEFAULT_MAX_N)
    }
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Ident(String),
    Const(bool),
    Not,
    And,
    Or,
    Xor,
    LParen,
    RParen,
    Assign,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Const(c) => format!("constant {}", u8::from(*c)),
            Tok::Not => "'!'".into(),
            Tok::And => "'&'".into(),
            Tok::Or => "'|'".into(),
            Tok::Xor => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Assign => "'='".into(),
        }
    }
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

/// Tokens of one line with 1-based columns.
fn lex(line_no: usize, text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {}
            '!' => out.push((Tok::Not, col)),
            '&' => out.push((Tok::And, col)),
            '|' => out.push((Tok::Or, col)),
            '^' => out.push((Tok::Xor, col)),
            '(' => out.push((Tok::LParen, col)),
            ')' => out.push((Tok::RParen, col)),
            '=' => out.push((Tok::Assign, col)),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = k;
                while k + 1 < chars.len() && (chars[k + 1].is_ascii_alphanumeric() || chars[k + 1] == '_') {
                    k += 1;
                }
                out.push((Tok::Ident(chars[start..=k].iter().collect()), col));
            }
            c if c.is_ascii_digit() => {
                let start = k;
                while k + 1 < chars.len() && chars[k + 1].is_ascii_alphanumeric() {
                    k += 1;
                }
                let lit: String = chars[start..=k].iter().collect();
                match lit.as_str() {
                    "0" => out.push((Tok::Const(false), col)),
                    "1" => out.push((Tok::Const(true), col)),
                    _ => return Err(syntax(line_no, col, format!("invalid constant {lit:?}"))),
                }
            }
            _ => return Err(syntax(line_no, col, format!("unexpected character {c:?}"))),
        }
        k += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn error_here(&self, expected: &str) -> ParseError {
        let found = self
            .peek()
            .map_or_else(|| "end of line".to_string(), Tok::describe);
        syntax(self.line, self.col(), format!("expected {expected}, found {found}"))
    }

    fn binary(
        &mut self,
        op: Tok,
        next: fn(&mut Self) -> Result<Expr, ParseError>,
        build: fn(Expr, Expr) -> Expr,
    ) -> Result<Expr, ParseError> {
        let mut lhs = next(self)?;
        while self.peek() == Some(&op) {
            self.pos += 1;
            let rhs = next(self)?;
            lhs = build(lhs, rhs);
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Expr, ParseError> {
        self.binary(Tok::Or, Self::xor, Expr::or)
    }

    fn xor(&mut self) -> Result<Expr, ParseError> {
        self.binary(Tok::Xor, Self::and, Expr::xor)
    }

    fn and(&mut self) -> Result<Expr, ParseError> {
        self.binary(Tok::And, Self::unary, Expr::and)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Expr::not(self.unary()?))
            }
            Some(Tok::Ident(name)) => {
                let e = Expr::Var(name.clone());
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Const(c)) => {
                let e = Expr::Const(*c);
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.or()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error_here("')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error_here("an expression")),
        }
    }
}

/// Parses a single expression (no declaration checks).
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(1, text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        line: 1,
        end_col: text.chars().count() + 1,
    };
    let e = p.or()?;
    if p.pos != toks.len() {
        return Err(p.error_here("end of expression"));
    }
    Ok(e)
}

/// Parses `.bn` text into a source with components in declaration order.
pub fn parse_network(text: &str) -> Result<NetworkSource, ParseError> {
    let mut components: Vec<Component> = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = lex(line, raw)?;
        if toks.is_empty() {
            continue;
        }
        let name = match &toks[0].0 {
            Tok::Ident(name) => name.clone(),
            other => {
                return Err(syntax(
                    line,
                    toks[0].1,
                    format!("expected component name, found {}", other.describe()),
                ))
            }
        };
        match toks.get(1) {
            Some((Tok::Assign, _)) => {}
            Some((t, col)) => {
                return Err(syntax(line, *col, format!("expected '=', found {}", t.describe())))
            }
            None => return Err(syntax(line, raw.chars().count() + 1, "expected '=', found end of line")),
        }
        let mut p = Parser {
            toks: &toks[2..],
            pos: 0,
            line,
            end_col: raw.split('#').next().unwrap_or("").trim_end().chars().count() + 1,
        };
        let expr = p.or()?;
        if p.pos != p.toks.len() {
            return Err(p.error_here("end of line"));
        }
        if seen.insert(name.clone(), line).is_some() {
            return Err(ParseError::DuplicateComponent { name, line });
        }
        components.push(Component { name, expr, line });
    }
    if components.is_empty() {
        return Err(ParseError::EmptyNetwork);
    }
    for c in &components {
        for v in c.expr.variables() {
            if !seen.contains_key(v) {
                return Err(ParseError::UndeclaredVariable {
                    name: v.to_string(),
                    line: c.line,
                });
            }
        }
    }
    Ok(NetworkSource { components })
}

/// Compiles a source into truth tables, refusing more than `max_n` components.
pub fn compile(src: &NetworkSource, max_n: usize) -> Result<BooleanNetwork, CompileError> {
    let n = src.len();
    let max = max_n.min(HARD_MAX_N);
    if n > max {
        return Err(CompileError::TooManyComponents { n, max });
    }
    let index: HashMap<&str, usize> = src
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| (c.name.as_str(), i))
        .collect();
    let words = (1usize << n).div_ceil(64);
    let last_valid = valid_word_mask(n);
    let tables = src
        .components
        .iter()
        .map(|c| {
            let mut t = eval_words(&c.expr, &index, words);
            if let Some(last) = t.last_mut() {
                *last &= last_valid;
            }
            t
        })
        .collect();
    Ok(BooleanNetwork::from_tables(n, tables).expect("consistent table sizes"))
}

/// Parses and compiles with the given component cap.
pub fn load_network(text: &str, max_n: usize) -> Result<BooleanNetwork, LoadError> {
    Ok(compile(&parse_network(text)?, max_n)?)
}

/// Word-parallel evaluation over all `2^n` states.
fn eval_words(e: &Expr, index: &HashMap<&str, usize>, words: usize) -> Vec<u64> {
    match e {
        Expr::Var(v) => projection(index[v.as_str()], words),
        Expr::Const(c) => vec![if *c { u64::MAX } else { 0 }; words],
        Expr::Not(a) => {
            let mut t = eval_words(a, index, words);
            t.iter_mut().for_each(|w| *w = !*w);
            t
        }
        Expr::And(a, b) => combine(a, b, index, words, |x, y| x & y),
        Expr::Or(a, b) => combine(a, b, index, words, |x, y| x | y),
        Expr::Xor(a, b) => combine(a, b, index, words, |x, y| x ^ y),
    }
}

fn combine(
    a: &Expr,
    b: &Expr,
    index: &HashMap<&str, usize>,
    words: usize,
    op: fn(u64, u64) -> u64,
) -> Vec<u64> {
    let mut t = eval_words(a, index, words);
    let u = eval_words(b, index, words);
    for (x, y) in t.iter_mut().zip(u) {
        *x = op(*x, y);
    }
    t
}

/// Table of the projection `x -> x_j`.
fn projection(j: usize, words: usize) -> Vec<u64> {
    if j < 6 {
        vec![!LOW_HALF[j]; words]
    } else {
        let stride = j - 6;
        (0..words)
            .map(|k| if k >> stride & 1 == 1 { u64::MAX } else { 0 })
            .collect()
    }
}
