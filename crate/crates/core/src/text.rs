//! Line-oriented text format for presentations.
//!
//! ```text
//! # anticommutator spin algebra
//! presentation as
//! field Q
//! generators X > Y > Z
//! relation R_X: Y*Z + Z*Y - X
//! relation R_Y: X*Z + Z*X - Y
//! relation R_Z: X*Y + Y*X - Z
//! central all
//! ```
//!
//! Fields are `Q`, `GF(p)` or `Q(param)`. Expressions use `+ - * / ^` and
//! parentheses; multiplication is always explicit, and negative exponents are only
//! allowed on scalars. A `lie name { ... }` block gives structure constants; when a
//! document has no `relation` lines, its first Lie block supplies the enveloping
//! (or, with a `pstructure`, the restricted enveloping) presentation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::centrify::Presentation;
use crate::coeffs::{FieldDescriptor, Scalar};
use crate::freealg::{Alphabet, NcPoly, Word};
use crate::presets::{lie_validate, ruea, uea, LieData};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Duplicate,
    Unknown,
    Field,
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            kind,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

#[derive(Clone, Debug)]
pub struct PresentationDocument {
    pub source: String,
    pub presentation: Presentation,
    pub lie: Vec<LieData>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    /// No whitespace between this token and the previous one.
    glued: bool,
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut glued = false;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            glued = false;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Num(s.parse().expect("digits")),
                line,
                col,
                glued,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line,
                col,
                glued,
            });
        } else if "+-*/^()[]{},;=".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line,
                col,
                glued,
            });
            i += 1;
        } else {
            return Err(ParseError::new(line, col, ParseErrorKind::Syntax, format!("unexpected character `{}`", c)));
        }
        glued = true;
    }
    Ok(out)
}

/// Names that an expression may refer to.
struct Scope<'a> {
    field: &'a FieldDescriptor,
    alphabet: &'a Alphabet,
    /// `2e` means `2*e` (structure constants only).
    juxtapose: bool,
}

struct ExprParser<'a> {
    toks: &'a [Token],
    pos: usize,
    scope: &'a Scope<'a>,
    end: (usize, usize),
}

const MAX_POLY_EXPONENT: u64 = 64;

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    fn err(&self, kind: ParseErrorKind, msg: impl Into<String>) -> ParseError {
        let (l, c) = self.here();
        ParseError::new(l, c, kind, msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Sym(s), .. }) if *s == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<NcPoly<Scalar>, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NcPoly<Scalar>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat('/') {
                let at = self.here();
                let d = self.factor()?;
                let inv = constant_of(&d, self.scope.field)
                    .and_then(|c| c.inv())
                    .ok_or_else(|| {
                        ParseError::new(at.0, at.1, ParseErrorKind::Invalid, "division by zero or by a non-scalar")
                    })?;
                acc = acc.scale(&inv);
            } else if self.scope.juxtapose
                && acc.degree() == Some(0)
                && matches!(self.peek(), Some(Token { tok: Tok::Ident(_), glued: true, .. }))
            {
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<NcPoly<Scalar>, ParseError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        if self.eat('+') {
            return self.factor();
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let at = self.here();
        let n = match self.peek() {
            Some(Token { tok: Tok::Num(n), .. }) => n.clone(),
            _ => return Err(self.err(ParseErrorKind::Syntax, "expected an integer exponent")),
        };
        self.pos += 1;
        let bad = |msg: &str| ParseError::new(at.0, at.1, ParseErrorKind::Invalid, msg);
        if negative {
            let c = constant_of(&base, self.scope.field)
                .ok_or_else(|| bad("negative exponents apply to scalars only"))?;
            let e = n.to_i64().ok_or_else(|| bad("exponent too large"))?;
            let v = c.pow(-e).map_err(|_| bad("zero to a negative power"))?;
            return Ok(scalar_poly(v));
        }
        if let Some(c) = constant_of(&base, self.scope.field) {
            let e = n.to_i64().ok_or_else(|| bad("exponent too large"))?;
            return Ok(scalar_poly(c.pow(e).expect("nonnegative power")));
        }
        let e = n.to_u64().filter(|&e| e <= MAX_POLY_EXPONENT).ok_or_else(|| bad("exponent too large"))?;
        let mut out = NcPoly::constant(self.scope.field.one());
        for _ in 0..e {
            out = out.mul(&base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<NcPoly<Scalar>, ParseError> {
        let Some(t) = self.peek().cloned() else {
            return Err(self.err(ParseErrorKind::Syntax, "unexpected end of expression"));
        };
        match t.tok {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(scalar_poly(self.scope.field.from_bigint(&n)))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                if let Some(i) = self.scope.alphabet.index(&name) {
                    return Ok(NcPoly::monomial(Word::new(vec![i]), self.scope.field.one()));
                }
                if self.scope.field.param() == Some(name.as_str()) {
                    return Ok(scalar_poly(self.scope.field.parameter().expect("parameter")));
                }
                Err(ParseError::new(t.line, t.col, ParseErrorKind::Unknown, format!("unknown identifier `{}`", name)))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err(ParseErrorKind::Syntax, "expected `)`"));
                }
                Ok(e)
            }
            Tok::Sym(c) => Err(ParseError::new(t.line, t.col, ParseErrorKind::Syntax, format!("unexpected `{}`", c))),
        }
    }
}

fn scalar_poly(c: Scalar) -> NcPoly<Scalar> {
    NcPoly::constant(c)
}

fn constant_of(f: &NcPoly<Scalar>, field: &FieldDescriptor) -> Option<Scalar> {
    match f.degree() {
        None => Some(field.zero()),
        Some(0) => f.constant_term().cloned(),
        _ => None,
    }
}

fn parse_expr_tokens(toks: &[Token], scope: &Scope, end: (usize, usize)) -> Result<NcPoly<Scalar>, ParseError> {
    let mut p = ExprParser {
        toks,
        pos: 0,
        scope,
        end,
    };
    let e = p.expr()?;
    if p.pos < toks.len() {
        return Err(p.err(ParseErrorKind::Syntax, "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses one expression over the given generators and field.
pub fn parse_expression(text: &str, alphabet: &Alphabet, field: &FieldDescriptor) -> Result<NcPoly<Scalar>, ParseError> {
    let toks = tokenize(text, 1, 1)?;
    let scope = Scope {
        field,
        alphabet,
        juxtapose: false,
    };
    parse_expr_tokens(&toks, &scope, (1, text.chars().count() + 1))
}

/// Parses a scalar expression (the field parameter may appear, generators may not).
pub fn parse_scalar(text: &str, field: &FieldDescriptor) -> Result<Scalar, ParseError> {
    let empty = Alphabet::new::<&str>(&[]).expect("empty alphabet");
    let f = parse_expression(text, &empty, field)?;
    constant_of(&f, field).ok_or_else(|| ParseError::new(1, 1, ParseErrorKind::Invalid, "expected a scalar"))
}

/// `Q`, `GF(p)` or `Q(param)`.
pub fn parse_field(text: &str) -> Result<FieldDescriptor, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "Q" {
        return Ok(FieldDescriptor::Rationals);
    }
    if let Some(inner) = t.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')) {
        let p: u64 = inner.parse().map_err(|_| format!("bad characteristic `{}`", inner))?;
        return FieldDescriptor::prime(p).map_err(|e| e.to_string());
    }
    if let Some(inner) = t.strip_prefix("Q(").and_then(|s| s.strip_suffix(')')) {
        return FieldDescriptor::rational_functions(inner).map_err(|e| e.to_string());
    }
    Err(format!("unknown field `{}`", text.trim()))
}

/// Splits on `sep` outside parentheses and brackets, keeping column offsets.
fn split_top_level(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

fn char_col(line_text: &str, byte: usize) -> usize {
    line_text[..byte].chars().count() + 1
}

struct DocParser<'s> {
    source: &'s str,
    name: Option<String>,
    field: Option<FieldDescriptor>,
    field_locked: bool,
    alphabet: Option<Alphabet>,
    relations: Vec<(String, NcPoly<Scalar>)>,
    central: Option<(usize, usize, Vec<String>, CentralSpec)>,
    lie: Vec<LieData>,
    diagnostics: Vec<Diagnostic>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum CentralSpec {
    All,
    None,
    List,
}

impl<'s> DocParser<'s> {
    fn field(&mut self) -> FieldDescriptor {
        self.field_locked = true;
        self.field.clone().unwrap_or(FieldDescriptor::Rationals)
    }

    fn run(mut self) -> Result<PresentationDocument, ParseError> {
        let lines: Vec<&str> = self.source.lines().collect();
        let mut i = 0;
        while i < lines.len() {
            let line_no = i + 1;
            let raw = lines[i];
            let text = raw.split('#').next().unwrap_or("");
            i += 1;
            let trimmed = text.trim_start();
            if trimmed.trim().is_empty() {
                continue;
            }
            let indent = text.len() - trimmed.len();
            let (kw, rest) = match trimmed.find(char::is_whitespace) {
                Some(k) => (&trimmed[..k], &trimmed[k..]),
                None => (trimmed, ""),
            };
            let rest_off = indent + kw.len();
            let col = |byte: usize| char_col(text, byte);
            match kw {
                "presentation" => {
                    let name = rest.trim();
                    if name.is_empty() || name.contains(char::is_whitespace) {
                        return Err(ParseError::new(line_no, col(rest_off), ParseErrorKind::Syntax, "expected a presentation name"));
                    }
                    if self.name.is_some() {
                        return Err(ParseError::new(line_no, col(indent), ParseErrorKind::Duplicate, "duplicate `presentation` line"));
                    }
                    self.name = Some(name.to_string());
                }
                "field" => {
                    if self.field.is_some() {
                        return Err(ParseError::new(line_no, col(indent), ParseErrorKind::Duplicate, "duplicate `field` line"));
                    }
                    if self.field_locked {
                        return Err(ParseError::new(
                            line_no,
                            col(indent),
                            ParseErrorKind::Field,
                            "`field` must precede generators, relations and Lie blocks",
                        ));
                    }
                    let f = parse_field(rest)
                        .map_err(|m| ParseError::new(line_no, col(rest_off), ParseErrorKind::Field, m))?;
                    self.field = Some(f);
                }
                "generators" => {
                    if self.alphabet.is_some() {
                        return Err(ParseError::new(line_no, col(indent), ParseErrorKind::Duplicate, "duplicate `generators` line"));
                    }
                    let field = self.field();
                    let mut names = Vec::new();
                    for (off, part) in split_top_level(rest, '>') {
                        let n = part.trim();
                        let c = col(rest_off + off);
                        if n.is_empty() || !n.chars().all(|ch| ch.is_alphanumeric() || ch == '_') {
                            return Err(ParseError::new(line_no, c, ParseErrorKind::Syntax, format!("bad generator name `{}`", n)));
                        }
                        if names.contains(&n.to_string()) {
                            return Err(ParseError::new(line_no, c, ParseErrorKind::Duplicate, format!("duplicate generator `{}`", n)));
                        }
                        if field.param() == Some(n) {
                            return Err(ParseError::new(line_no, c, ParseErrorKind::Field, format!("`{}` is the field parameter", n)));
                        }
                        names.push(n.to_string());
                    }
                    let a = Alphabet::new(&names)
                        .map_err(|e| ParseError::new(line_no, col(rest_off), ParseErrorKind::Syntax, e.to_string()))?;
                    self.alphabet = Some(a);
                }
                "relation" => {
                    let field = self.field();
                    let Some(alphabet) = self.alphabet.clone() else {
                        return Err(ParseError::new(line_no, col(indent), ParseErrorKind::Syntax, "`relation` before `generators`"));
                    };
                    let Some(colon) = rest.find(':') else {
                        return Err(ParseError::new(line_no, col(rest_off), ParseErrorKind::Syntax, "expected `name: expression`"));
                    };
                    let name = rest[..colon].trim();
                    if name.is_empty() || name.contains(char::is_whitespace) {
                        return Err(ParseError::new(line_no, col(rest_off), ParseErrorKind::Syntax, "expected a relation name"));
                    }
                    if self.relations.iter().any(|(n, _)| n == name) {
                        return Err(ParseError::new(line_no, col(rest_off), ParseErrorKind::Duplicate, format!("duplicate relation `{}`", name)));
                    }
                    let expr_off = rest_off + colon + 1;
                    let expr_text = &text[expr_off..];
                    let toks = tokenize(expr_text, line_no, col(expr_off))?;
                    let scope = Scope {
                        field: &field,
                        alphabet: &alphabet,
                        juxtapose: false,
                    };
                    let f = parse_expr_tokens(&toks, &scope, (line_no, col(text.len())))?;
                    if f.is_zero() {
                        return Err(ParseError::new(line_no, col(expr_off), ParseErrorKind::Invalid, format!("relation `{}` is zero", name)));
                    }
                    self.relations.push((name.to_string(), f));
                }
                "central" => {
                    if self.central.is_some() {
                        return Err(ParseError::new(line_no, col(indent), ParseErrorKind::Duplicate, "duplicate `central` line"));
                    }
                    let r = rest.trim();
                    let spec = match r {
                        "all" => CentralSpec::All,
                        "none" | "" => CentralSpec::None,
                        _ => CentralSpec::List,
                    };
                    let names = if spec == CentralSpec::List {
                        split_top_level(rest, ',').into_iter().map(|(_, s)| s.trim().to_string()).collect()
                    } else {
                        Vec::new()
                    };
                    self.central = Some((line_no, col(rest_off), names, spec));
                }
                "lie" => {
                    // gather lines until braces balance
                    let mut toks = tokenize(rest, line_no, col(rest_off))?;
                    let balance = |ts: &[Token]| {
                        ts.iter().fold(0i32, |d, t| match t.tok {
                            Tok::Sym('{') => d + 1,
                            Tok::Sym('}') => d - 1,
                            _ => d,
                        })
                    };
                    let opened = |ts: &[Token]| ts.iter().any(|t| t.tok == Tok::Sym('{'));
                    while !opened(&toks) || balance(&toks) > 0 {
                        if i >= lines.len() {
                            return Err(ParseError::new(line_no, col(indent), ParseErrorKind::Syntax, "unterminated `lie` block"));
                        }
                        let more = lines[i].split('#').next().unwrap_or("");
                        let mut t = tokenize(more, i + 1, 1)?;
                        if let Some(first) = t.first_mut() {
                            first.glued = false;
                        }
                        toks.extend(t);
                        i += 1;
                    }
                    let field = self.field();
                    let d = parse_lie_block(&toks, &field)?;
                    if self.lie.iter().any(|l| l.name == d.name) {
                        return Err(ParseError::new(line_no, col(rest_off), ParseErrorKind::Duplicate, format!("duplicate Lie block `{}`", d.name)));
                    }
                    let report = lie_validate(&d);
                    for f in &report.jacobi {
                        self.diagnostics.push(Diagnostic {
                            line: line_no,
                            col: col(indent),
                            message: format!("Jacobi fails on ({}, {}, {}): {}", f.triple[0], f.triple[1], f.triple[2], f.value),
                        });
                    }
                    for f in &report.restrictedness {
                        self.diagnostics.push(Diagnostic {
                            line: line_no,
                            col: col(indent),
                            message: format!("restrictedness fails on ({}, {}): {} vs {}", f.x, f.y, f.lhs, f.rhs),
                        });
                    }
                    self.lie.push(d);
                }
                other => {
                    return Err(ParseError::new(line_no, col(indent), ParseErrorKind::Syntax, format!("unknown directive `{}`", other)));
                }
            }
        }
        self.finish()
    }

    fn finish(mut self) -> Result<PresentationDocument, ParseError> {
        let end = (self.source.lines().count().max(1), 1);
        let Some(name) = self.name.clone() else {
            return Err(ParseError::new(end.0, end.1, ParseErrorKind::Syntax, "missing `presentation` line"));
        };
        let field = self.field();
        let mut presentation = if self.relations.is_empty() && !self.lie.is_empty() {
            let d = &self.lie[0];
            if let Some(a) = &self.alphabet {
                if a.names() != d.basis() {
                    return Err(ParseError::new(end.0, end.1, ParseErrorKind::Invalid, "`generators` disagree with the Lie basis"));
                }
            }
            let built = if d.pstructure().is_some() { ruea(d) } else { uea(d) };
            let mut p = built.map_err(|e| ParseError::new(end.0, end.1, ParseErrorKind::Invalid, e.to_string()))?;
            p.name = name;
            self.diagnostics.push(Diagnostic {
                line: end.0,
                col: end.1,
                message: format!("relations generated from Lie block `{}`", d.name),
            });
            p
        } else {
            let Some(alphabet) = self.alphabet.clone() else {
                return Err(ParseError::new(end.0, end.1, ParseErrorKind::Syntax, "missing `generators` line"));
            };
            Presentation::new(name, field, alphabet, self.relations.clone(), Vec::new())
                .map_err(|e| ParseError::new(end.0, end.1, ParseErrorKind::Invalid, e.to_string()))?
        };
        if let Some((line, col, names, spec)) = &self.central {
            let names = match spec {
                CentralSpec::All => presentation.relation_names(),
                CentralSpec::None => Vec::new(),
                CentralSpec::List => {
                    for n in names {
                        if presentation.relation(n).is_none() {
                            return Err(ParseError::new(*line, *col, ParseErrorKind::Unknown, format!("unknown relation `{}` in `central`", n)));
                        }
                    }
                    names.clone()
                }
            };
            presentation = presentation.with_central(&names).expect("names checked");
        }
        Ok(PresentationDocument {
            source: self.source.to_string(),
            presentation,
            lie: self.lie,
            diagnostics: self.diagnostics,
        })
    }
}

fn parse_lie_block(toks: &[Token], field: &FieldDescriptor) -> Result<LieData, ParseError> {
    let err = |t: &Token, kind, msg: String| ParseError::new(t.line, t.col, kind, msg);
    let Some(first) = toks.first() else {
        return Err(ParseError::new(0, 0, ParseErrorKind::Syntax, "empty Lie block"));
    };
    let Tok::Ident(name) = &first.tok else {
        return Err(err(first, ParseErrorKind::Syntax, "expected a Lie block name".into()));
    };
    let open = &toks[1.min(toks.len() - 1)];
    if toks.len() < 2 || open.tok != Tok::Sym('{') {
        return Err(err(open, ParseErrorKind::Syntax, "expected `{`".into()));
    }
    let close = toks.len() - 1;
    if toks[close].tok != Tok::Sym('}') {
        return Err(err(&toks[close], ParseErrorKind::Syntax, "trailing input after `}`".into()));
    }
    let body = &toks[2..close];
    let mut data: Option<LieData> = None;
    let mut stmts: Vec<&[Token]> = body.split(|t| t.tok == Tok::Sym(';')).filter(|s| !s.is_empty()).collect();
    // basis must come first so that names resolve
    stmts.sort_by_key(|s| !matches!(&s[0].tok, Tok::Ident(k) if k == "basis"));
    let mut pmap: Option<&[Token]> = None;
    let mut chi: Option<&[Token]> = None;
    for s in stmts {
        let kw = &s[0];
        let Tok::Ident(k) = &kw.tok else {
            return Err(err(kw, ParseErrorKind::Syntax, "expected a statement keyword".into()));
        };
        let args = &s[1..];
        match k.as_str() {
            "basis" => {
                if data.is_some() {
                    return Err(err(kw, ParseErrorKind::Duplicate, "duplicate `basis`".into()));
                }
                let mut names = Vec::new();
                for part in args.split(|t| t.tok == Tok::Sym(',')) {
                    match part {
                        [Token { tok: Tok::Ident(n), .. }] => {
                            if names.contains(n) {
                                return Err(err(&part[0], ParseErrorKind::Duplicate, format!("duplicate basis element `{}`", n)));
                            }
                            if field.param() == Some(n.as_str()) {
                                return Err(err(&part[0], ParseErrorKind::Field, format!("`{}` is the field parameter", n)));
                            }
                            names.push(n.clone());
                        }
                        _ => return Err(err(part.first().unwrap_or(kw), ParseErrorKind::Syntax, "expected a basis name".into())),
                    }
                }
                data = Some(LieData::new(name, field.clone(), &names).map_err(|e| err(kw, ParseErrorKind::Invalid, e.to_string()))?);
            }
            "bracket" => {
                let d = data.as_mut().ok_or_else(|| err(kw, ParseErrorKind::Syntax, "`bracket` needs a `basis`".into()))?;
                let (i, j, rhs) = match args {
                    [Token { tok: Tok::Sym('['), .. }, Token { tok: Tok::Ident(a), .. }, Token { tok: Tok::Sym(','), .. }, Token { tok: Tok::Ident(b), .. }, Token { tok: Tok::Sym(']'), .. }, Token { tok: Tok::Sym('='), .. }, rhs @ ..] => {
                        let i = d.index(a).ok_or_else(|| err(&args[1], ParseErrorKind::Unknown, format!("unknown basis element `{}`", a)))?;
                        let j = d.index(b).ok_or_else(|| err(&args[3], ParseErrorKind::Unknown, format!("unknown basis element `{}`", b)))?;
                        (i, j, rhs)
                    }
                    _ => return Err(err(kw, ParseErrorKind::Syntax, "expected `bracket [x,y] = expr`".into())),
                };
                let v = linear_vector(rhs, d, kw)?;
                d.set_bracket(i, j, v).map_err(|e| err(kw, ParseErrorKind::Invalid, e.to_string()))?;
            }
            "pstructure" => {
                if pmap.replace(args).is_some() {
                    return Err(err(kw, ParseErrorKind::Duplicate, "duplicate `pstructure`".into()));
                }
            }
            "chi" => {
                if chi.replace(args).is_some() {
                    return Err(err(kw, ParseErrorKind::Duplicate, "duplicate `chi`".into()));
                }
            }
            other => return Err(err(kw, ParseErrorKind::Syntax, format!("unknown Lie statement `{}`", other))),
        }
    }
    let mut d = data.ok_or_else(|| err(first, ParseErrorKind::Syntax, "Lie block without `basis`".into()))?;
    if let Some(args) = pmap {
        let p = field.characteristic();
        if p == 0 {
            return Err(err(first, ParseErrorKind::Field, "`pstructure` needs a field GF(p)".into()));
        }
        let mut images: Vec<Option<Vec<Scalar>>> = vec![None; d.dim()];
        for part in args.split(|t| t.tok == Tok::Sym(',')) {
            match part {
                [Token { tok: Tok::Ident(x), .. }, Token { tok: Tok::Sym('='), .. }, rhs @ ..] => {
                    let i = d.index(x).ok_or_else(|| err(&part[0], ParseErrorKind::Unknown, format!("unknown basis element `{}`", x)))?;
                    if images[i].is_some() {
                        return Err(err(&part[0], ParseErrorKind::Duplicate, format!("duplicate p-power of `{}`", x)));
                    }
                    images[i] = Some(linear_vector(rhs, &d, &part[0])?);
                }
                _ => return Err(err(part.first().unwrap_or(first), ParseErrorKind::Syntax, "expected `x = expr`".into())),
            }
        }
        let images: Vec<Vec<Scalar>> = images.into_iter().map(|v| v.unwrap_or_else(|| d.zero_vector())).collect();
        d.set_pstructure(p, images).map_err(|e| err(first, ParseErrorKind::Invalid, e.to_string()))?;
    }
    if let Some(args) = chi {
        let empty = Alphabet::new::<&str>(&[]).expect("empty alphabet");
        let scope = Scope {
            field,
            alphabet: &empty,
            juxtapose: false,
        };
        let mut values = Vec::new();
        for part in args.split(|t| t.tok == Tok::Sym(',')) {
            let at = part.first().unwrap_or(first);
            let f = parse_expr_tokens(part, &scope, (at.line, at.col))?;
            values.push(constant_of(&f, field).ok_or_else(|| err(at, ParseErrorKind::Invalid, "expected a scalar".into()))?);
        }
        d.set_chi(values).map_err(|e| err(first, ParseErrorKind::Invalid, e.to_string()))?;
    }
    Ok(d)
}

fn linear_vector(toks: &[Token], d: &LieData, at: &Token) -> Result<Vec<Scalar>, ParseError> {
    let alphabet = Alphabet::new(d.basis()).expect("validated basis");
    let scope = Scope {
        field: d.field(),
        alphabet: &alphabet,
        juxtapose: true,
    };
    let start = toks.first().unwrap_or(at);
    let f = parse_expr_tokens(toks, &scope, (start.line, start.col))?;
    if f.degree().unwrap_or(1) != 1 || f.constant_term().is_some() {
        return Err(ParseError::new(start.line, start.col, ParseErrorKind::Invalid, "expected a linear combination of basis elements"));
    }
    let mut v = d.zero_vector();
    for (w, c) in f.terms() {
        v[w.letters()[0] as usize] = c.clone();
    }
    Ok(v)
}

pub fn parse_presentation(text: &str) -> Result<PresentationDocument, ParseError> {
    DocParser {
        source: text,
        name: None,
        field: None,
        field_locked: false,
        alphabet: None,
        relations: Vec::new(),
        central: None,
        lie: Vec::new(),
        diagnostics: Vec::new(),
    }
    .run()
}

fn render_vector(d: &LieData, v: &[Scalar]) -> String {
    if v.iter().all(Scalar::is_zero) {
        "0".to_string()
    } else {
        d.render_vector(v)
    }
}

/// Prints a Lie block in the syntax accepted by the parser.
pub fn print_lie(d: &LieData) -> String {
    let mut out = format!("lie {} {{\n    basis {};\n", d.name, d.basis().join(", "));
    for ((i, j), v) in d.brackets() {
        out.push_str(&format!(
            "    bracket [{},{}] = {};\n",
            d.basis()[*i],
            d.basis()[*j],
            render_vector(d, v)
        ));
    }
    if let Some(ps) = d.pstructure() {
        let parts: Vec<String> = d
            .basis()
            .iter()
            .zip(&ps.images)
            .map(|(b, v)| format!("{} = {}", b, render_vector(d, v)))
            .collect();
        out.push_str(&format!("    pstructure {};\n", parts.join(", ")));
    }
    if let Some(chi) = d.chi() {
        let parts: Vec<String> = chi.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("    chi {};\n", parts.join(", ")));
    }
    out.push_str("}\n");
    out
}

/// Prints a presentation (and any Lie blocks) so that parsing gives it back.
pub fn print_presentation(p: &Presentation, lie: &[LieData]) -> String {
    let mut out = String::new();
    out.push_str(&format!("presentation {}\n", p.name));
    out.push_str(&format!("field {}\n", p.field()));
    out.push_str(&format!("generators {}\n", p.alphabet().names().join(" > ")));
    for (name, r) in p.relations() {
        out.push_str(&format!("relation {}: {}\n", name, p.render_relation(r)));
    }
    let central = p.central();
    if central.is_empty() {
        out.push_str("central none\n");
    } else if central.len() == p.relations().len() {
        out.push_str("central all\n");
    } else {
        out.push_str(&format!("central {}\n", central.join(", ")));
    }
    for d in lie {
        out.push_str(&print_lie(d));
    }
    out
}

pub fn print_document(doc: &PresentationDocument) -> String {
    print_presentation(&doc.presentation, &doc.lie)
}

/// Preset files shipped with the library.
pub const BUNDLED_PRESETS: &[(&str, &str)] = &[
    ("as", include_str!("../presets/as.pres")),
    ("aw1", include_str!("../presets/aw1.pres")),
    ("aw2", include_str!("../presets/aw2.pres")),
    ("bi", include_str!("../presets/bi.pres")),
    ("uea-sl2", include_str!("../presets/uea-sl2.pres")),
    ("uea-solvable", include_str!("../presets/uea-solvable.pres")),
    ("uea-abelian", include_str!("../presets/uea-abelian.pres")),
    ("ruea-sl2", include_str!("../presets/ruea-sl2.pres")),
];

pub fn bundled_preset(name: &str) -> Option<&'static str> {
    BUNDLED_PRESETS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::presets::build_named;

    #[test]
    fn spin_file() {
        let doc = parse_presentation(bundled_preset("as").unwrap()).unwrap();
        let p = &doc.presentation;
        assert_eq!(p.alphabet().len(), 3);
        assert_eq!(p.relations().len(), 3);
        assert_eq!(p.central().len(), 3);
    }

    #[test]
    fn bundled_files_match_builders() {
        for (name, text) in BUNDLED_PRESETS {
            let doc = parse_presentation(text).unwrap_or_else(|e| panic!("{}: {}", name, e));
            let built = build_named(name, &HashMap::new(), None).unwrap();
            assert_eq!(doc.presentation.canonical_relations(), built.canonical_relations(), "{}", name);
            assert_eq!(doc.presentation.central(), built.central(), "{}", name);
        }
    }

    #[test]
    fn round_trip() {
        for (name, text) in BUNDLED_PRESETS {
            let doc = parse_presentation(text).unwrap();
            let printed = print_document(&doc);
            let again = parse_presentation(&printed).unwrap_or_else(|e| panic!("{}: {}\n{}", name, e, printed));
            assert_eq!(again.presentation, doc.presentation, "{}", name);
            assert_eq!(again.lie, doc.lie, "{}", name);
            assert_eq!(print_document(&again), printed);
        }
    }

    #[test]
    fn unknown_central_relation() {
        let text = "presentation t\ngenerators X\nrelation R_X: X*X - X\ncentral R_W\n";
        let e = parse_presentation(text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unknown);
        assert!(e.message.contains("R_W"));
        assert_eq!(e.line, 4);
    }

    #[test]
    fn error_positions() {
        let text = "presentation t\ngenerators X > Y\nrelation R: X*Y - W\n";
        let e = parse_presentation(text).unwrap_err();
        assert_eq!((e.line, e.col, e.kind), (3, 19, ParseErrorKind::Unknown));

        let e = parse_presentation("presentation t\ngenerators X\nrelation R: X*(X + 1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);

        let e = parse_presentation("presentation t\ngenerators X\nrelation R: X^-1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Invalid);

        let e = parse_presentation("presentation t\ngenerators X > X\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Duplicate);

        let e = parse_presentation("presentation t\nfield Q(q)\ngenerators q\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Field);

        let e = parse_presentation("presentation t\nfield GF(4)\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Field);

        let e = parse_presentation("presentation t\ngenerators X\nrelation R: X\nrelation R: X*X\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Duplicate);

        // juxtaposition is not multiplication in relations
        let e = parse_presentation("presentation t\ngenerators X\nrelation R: 2X\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
    }

    #[test]
    fn scalar_coefficients() {
        let f = parse_field("Q(q)").unwrap();
        let a = Alphabet::new(&["X", "Y"]).unwrap();
        let e = parse_expression("(q^2 - 1)/(q - 1)*X - q^-2*Y", &a, &f).unwrap();
        assert_eq!(e.render(&a, &[]), "(q + 1)*X - (1/q^2)*Y");
        assert_eq!(parse_scalar("1/2 + 1/3", &FieldDescriptor::Rationals).unwrap().to_string(), "5/6");
        assert!(parse_scalar("1/0", &FieldDescriptor::Rationals).is_err());
        assert!(parse_scalar("1/3", &FieldDescriptor::prime(3).unwrap()).is_err());
    }

    #[test]
    fn comments_and_listed_central() {
        let text = "# header\npresentation t  # trailing\n\ngenerators X > Y\nrelation R_1: X*Y - Y*X\nrelation R_2: X*X\ncentral R_2\n";
        let doc = parse_presentation(text).unwrap();
        assert_eq!(doc.presentation.central(), ["R_2"]);
        let again = parse_presentation(&print_document(&doc)).unwrap();
        assert_eq!(again.presentation, doc.presentation);
    }

    #[test]
    fn bad_lie_block_is_diagnosed() {
        let text = "presentation t\nlie bad { basis x, y, z; bracket [x,y] = z; bracket [y,z] = x; bracket [z,x] = x; }\nrelation R: x\ngenerators x\n";
        // relations before generators is an error; use a valid order
        assert!(parse_presentation(text).is_err());
        let text = "presentation t\ngenerators x > y > z\nrelation R: x\nlie bad { basis x, y, z; bracket [x,y] = z; bracket [y,z] = x; bracket [z,x] = x; }\n";
        let doc = parse_presentation(text).unwrap();
        assert_eq!(doc.diagnostics.len(), 1);
        assert!(doc.diagnostics[0].message.contains("Jacobi"));
    }
}
