//! Recursive-descent parser for presentation files and polynomial
//! expressions. Errors carry line and column.

use std::str::FromStr;

use arcspace::{Polynomial, Presentation, PresentationBuilder, Rat};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub msg: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

fn err<T>(pos: (u32, u32), msg: impl Into<String>) -> PResult<T> {
    Err(ParseError {
        line: pos.0,
        col: pos.1,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Punct(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(s) => format!("'{s}'"),
            Tok::Punct(c) => format!("'{c}'"),
        }
    }
}

struct Tokens {
    toks: Vec<(Tok, (u32, u32))>,
    pos: usize,
    end: (u32, u32),
}

fn lex(text: &str) -> PResult<Tokens> {
    let mut toks = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let here = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), here));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Int(s), here));
            }
            ';' | '=' | '^' | '*' | '+' | '-' | '/' => {
                chars.next();
                col += 1;
                toks.push((Tok::Punct(c), here));
            }
            other => return err(here, format!("unexpected character '{other}'")),
        }
    }
    Ok(Tokens {
        toks,
        pos: 0,
        end: (line, col),
    })
}

impl Tokens {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> (u32, u32) {
        self.toks.get(self.pos).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(Tok, (u32, u32))> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_punct(&mut self, c: char) -> PResult<()> {
        match self.next() {
            Some((Tok::Punct(p), _)) if p == c => Ok(()),
            Some((t, pos)) => err(pos, format!("expected '{c}', found {}", t.describe())),
            None => err(self.end, format!("expected '{c}', found end of input")),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        match self.next() {
            Some((Tok::Ident(s), _)) if s == kw => Ok(()),
            Some((t, pos)) => err(pos, format!("expected '{kw}', found {}", t.describe())),
            None => err(self.end, format!("expected '{kw}', found end of input")),
        }
    }

    fn expect_ident(&mut self) -> PResult<(String, (u32, u32))> {
        match self.next() {
            Some((Tok::Ident(s), pos)) => Ok((s, pos)),
            Some((t, pos)) => err(pos, format!("expected a name, found {}", t.describe())),
            None => err(self.end, "expected a name, found end of input"),
        }
    }

    fn expect_uint<T: FromStr>(&mut self, what: &str) -> PResult<T> {
        match self.next() {
            Some((Tok::Int(s), pos)) => s.parse::<T>().map_err(|_| ParseError {
                line: pos.0,
                col: pos.1,
                msg: format!("{what} out of range"),
            }),
            Some((t, pos)) => err(pos, format!("expected {what}, found {}", t.describe())),
            None => err(self.end, format!("expected {what}, found end of input")),
        }
    }

    /// A possibly negative integer literal.
    fn expect_int<T: FromStr + std::ops::Neg<Output = T>>(&mut self, what: &str) -> PResult<T> {
        let neg = matches!(self.peek(), Some(Tok::Punct('-')));
        if neg {
            self.next();
        }
        let v: T = self.expect_uint(what)?;
        Ok(if neg { -v } else { v })
    }
}

struct TermAst {
    coeff: Rat,
    factors: Vec<(String, u32, (u32, u32))>,
}

struct ExprAst {
    terms: Vec<TermAst>,
}

struct Decl {
    name: String,
    pos: (u32, u32),
    deg: i32,
    iw: Option<i64>,
    dexpr: Option<ExprAst>,
}

fn parse_bigint(s: &str, pos: (u32, u32)) -> PResult<BigInt> {
    BigInt::from_str(s).map_err(|_| ParseError {
        line: pos.0,
        col: pos.1,
        msg: "bad integer".into(),
    })
}

fn parse_coeff(toks: &mut Tokens) -> PResult<Rat> {
    let (num, pos) = match toks.next() {
        Some((Tok::Int(s), pos)) => (s, pos),
        Some((t, pos)) => return err(pos, format!("expected a number, found {}", t.describe())),
        None => return err(toks.end, "expected a number, found end of input"),
    };
    let num = parse_bigint(&num, pos)?;
    if matches!(toks.peek(), Some(Tok::Punct('/'))) {
        toks.next();
        let here = toks.here();
        let den = match toks.next() {
            Some((Tok::Int(s), pos)) => parse_bigint(&s, pos)?,
            Some((t, pos)) => {
                return err(
                    pos,
                    format!("expected a denominator, found {}", t.describe()),
                )
            }
            None => return err(toks.end, "expected a denominator, found end of input"),
        };
        if den == BigInt::from(0) {
            return err(here, "zero denominator");
        }
        Ok(Rat::new(num, den))
    } else {
        Ok(Rat::from_integer(num))
    }
}

fn parse_factor(toks: &mut Tokens) -> PResult<(String, u32, (u32, u32))> {
    let (name, pos) = toks.expect_ident()?;
    let exp = if matches!(toks.peek(), Some(Tok::Punct('^'))) {
        toks.next();
        toks.expect_uint::<u32>("an exponent")?
    } else {
        1
    };
    Ok((name, exp, pos))
}

fn parse_term(toks: &mut Tokens) -> PResult<TermAst> {
    let mut coeff = Rat::from_integer(BigInt::from(1));
    let mut factors = Vec::new();
    match toks.peek() {
        Some(Tok::Int(_)) => {
            coeff = parse_coeff(toks)?;
            while matches!(toks.peek(), Some(Tok::Punct('*'))) {
                toks.next();
                factors.push(parse_factor(toks)?);
            }
        }
        Some(Tok::Ident(_)) => {
            factors.push(parse_factor(toks)?);
            while matches!(toks.peek(), Some(Tok::Punct('*'))) {
                toks.next();
                factors.push(parse_factor(toks)?);
            }
        }
        Some(t) => {
            return err(
                toks.here(),
                format!("expected a term, found {}", t.describe()),
            )
        }
        None => return err(toks.end, "expected a term, found end of input"),
    }
    Ok(TermAst { coeff, factors })
}

fn parse_expr(toks: &mut Tokens) -> PResult<ExprAst> {
    let mut terms = Vec::new();
    let mut sign = match toks.peek() {
        Some(Tok::Punct('-')) => {
            toks.next();
            -1
        }
        Some(Tok::Punct('+')) => {
            toks.next();
            1
        }
        _ => 1,
    };
    loop {
        let mut term = parse_term(toks)?;
        if sign < 0 {
            term.coeff = -term.coeff;
        }
        terms.push(term);
        match toks.peek() {
            Some(Tok::Punct('+')) => {
                toks.next();
                sign = 1;
            }
            Some(Tok::Punct('-')) => {
                toks.next();
                sign = -1;
            }
            _ => break,
        }
    }
    Ok(ExprAst { terms })
}

fn parse_decl(toks: &mut Tokens) -> PResult<Decl> {
    toks.expect_keyword("gen")?;
    let (name, pos) = toks.expect_ident()?;
    toks.expect_keyword("deg")?;
    let deg: i32 = toks.expect_int("a degree")?;
    let mut iw = None;
    if matches!(toks.peek(), Some(Tok::Ident(s)) if s == "iw") {
        toks.next();
        iw = Some(toks.expect_int::<i64>("an internal weight")?);
    }
    let mut dexpr = None;
    if matches!(toks.peek(), Some(Tok::Ident(s)) if s == "d") {
        toks.next();
        toks.expect_punct('=')?;
        dexpr = Some(parse_expr(toks)?);
    }
    toks.expect_punct(';')?;
    Ok(Decl {
        name,
        pos,
        deg,
        iw,
        dexpr,
    })
}

fn resolve_expr(pres: &Presentation, expr: &ExprAst) -> PResult<Polynomial> {
    let mut poly = Polynomial::zero();
    for term in &expr.terms {
        let mut factors = Vec::with_capacity(term.factors.len());
        for (name, exp, pos) in &term.factors {
            let id = pres.find_display(name).ok_or(ParseError {
                line: pos.0,
                col: pos.1,
                msg: format!("unknown generator '{name}'"),
            })?;
            factors.push((id, *exp));
        }
        let t = pres
            .monomial(term.coeff.clone(), &factors)
            .expect("resolved generators are in range");
        poly = &poly + &t;
    }
    Ok(poly)
}

/// Parses a polynomial expression against an existing presentation's
/// generator names; this is how printed witnesses are fed back in.
pub fn parse_polynomial(pres: &Presentation, text: &str) -> PResult<Polynomial> {
    let mut toks = lex(text)?;
    let expr = parse_expr(&mut toks)?;
    if let Some(t) = toks.peek() {
        return err(toks.here(), format!("trailing input: {}", t.describe()));
    }
    resolve_expr(pres, &expr)
}

/// Parses a presentation file. The result always passes the
/// differential-graded checks; violations are reported as errors against
/// the offending declaration.
pub fn parse_presentation(text: &str) -> PResult<Presentation> {
    let mut toks = lex(text)?;
    let mut decls = Vec::new();
    while toks.peek().is_some() {
        decls.push(parse_decl(&mut toks)?);
    }
    for (k, d) in decls.iter().enumerate() {
        if d.deg > 0 {
            return err(
                d.pos,
                format!("generator '{}' has positive degree {}", d.name, d.deg),
            );
        }
        if decls[..k].iter().any(|e| e.name == d.name) {
            return err(d.pos, format!("duplicate generator '{}'", d.name));
        }
    }
    let mut builder = PresentationBuilder::new();
    for d in &decls {
        builder.generator(&d.name, d.deg, d.iw);
    }
    let free: Presentation = builder.free().map_err(|e| ParseError {
        line: 1,
        col: 1,
        msg: e.to_string(),
    })?;
    let mut diffs = Vec::new();
    for d in &decls {
        if let Some(expr) = &d.dexpr {
            let poly = resolve_expr(&free, expr)?;
            let id = free.find_display(&d.name).expect("declared generator");
            diffs.push((id, poly));
        }
    }
    let pres = free.with_differentials(diffs).map_err(|e| ParseError {
        line: 1,
        col: 1,
        msg: e.to_string(),
    })?;
    let report = pres.check();
    if let Some(issue) = report.issues.first() {
        let gen_name = issue_gen(issue);
        let pos = decls
            .iter()
            .find(|d| d.name == gen_name)
            .map(|d| d.pos)
            .unwrap_or((1, 1));
        return err(pos, issue.to_string());
    }
    Ok(pres)
}

fn issue_gen(issue: &arcspace::ValidationIssue) -> &str {
    match issue {
        arcspace::ValidationIssue::DegreeNotRaised { gen, .. } => gen,
        arcspace::ValidationIssue::NotSquareZero { gen, .. } => gen,
        arcspace::ValidationIssue::InternalWeightInhomogeneous { gen, .. } => gen,
    }
}
