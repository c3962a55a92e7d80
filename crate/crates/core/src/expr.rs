//! Text syntax for scalars and elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := integer | 'q' | 's' | 'iota' | 'phi0' | 'phi1' | 'phi2'
//!         | 'chi(' a ',' i ',' j ')' | 'theta(' i ',' j ')'
//!         | 'sum(' a ',' j ',' lo ',' hi (',' '[' e (',' coef)* ']')+ ')'
//!         | '(' expr ')'
//! ```
//!
//! `*` between two elements is the convolution product; between a scalar and
//! an element it is scaling. `sum(a, j, lo, hi, [e, c_d, ..., c_0], ...)` is the
//! strip `sum_{lo <= m <= hi} (c_d m^d + ... + c_0) s^(e m) chi(a, m, j)` with one
//! bracket per term; `lo`/`hi` accept `-inf`/`+inf`.

use std::fmt;

use num_traits::{One, Zero};

use crate::element::{BasisIndex, ExpPolyTerm, HeckeElement, RowKey, Sheet, Strip};
use crate::error::ParseError;
use crate::poly::Poly;
use crate::presets::Preset;
use crate::product::mul;
use crate::Coeff;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
    Inf(bool),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut p = 0;
    while p < chars.len() {
        let c = chars[p];
        if c.is_whitespace() {
            p += 1;
        } else if c.is_ascii_digit() {
            let start = p;
            while p < chars.len() && chars[p].is_ascii_digit() {
                p += 1;
            }
            let s: String = chars[start..p].iter().collect();
            let v = s.parse::<i64>().map_err(|_| ParseError::new(start, "integer too large"))?;
            out.push((start, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = p;
            while p < chars.len() && (chars[p].is_ascii_alphanumeric() || chars[p] == '_') {
                p += 1;
            }
            let s: String = chars[start..p].iter().collect();
            if s == "inf" {
                out.push((start, Tok::Inf(true)));
            } else {
                out.push((start, Tok::Ident(s)));
            }
        } else if "+-*/^(),[]".contains(c) {
            out.push((p, Tok::Sym(c)));
            p += 1;
        } else {
            return Err(ParseError::new(p, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Value {
    Scalar(Coeff),
    Elem(HeckeElement),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, at: 0, end: text.len() })
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos(), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unexpected {t:?}"))),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.at += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    /// An integer or `-inf`/`+inf`/`inf`; `None` is infinite.
    fn bound(&mut self, lower: bool) -> Result<Option<i64>, ParseError> {
        let save = self.at;
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        if let Some(Tok::Inf(_)) = self.peek() {
            self.at += 1;
            if neg != lower {
                return Err(ParseError::new(self.toks[save].0, "infinite bound on the wrong side"));
            }
            return Ok(None);
        }
        self.at = save;
        self.int().map(Some)
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            let at = self.pos();
            if self.eat('+') {
                let rhs = self.term()?;
                acc = combine(acc, rhs, '+', at)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = combine(acc, rhs, '-', at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let at = self.pos();
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = combine(acc, rhs, '*', at)?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                acc = combine(acc, rhs, '/', at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if self.eat('-') {
            return Ok(match self.unary()? {
                Value::Scalar(c) => Value::Scalar(-c),
                Value::Elem(x) => Value::Elem(-&x),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        let at = self.pos();
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.int()?;
        match base {
            Value::Scalar(c) => c.pow(e).map(Value::Scalar).map_err(|err| ParseError::new(at, err.to_string())),
            Value::Elem(x) => {
                if e < 0 {
                    return Err(ParseError::new(at, "negative power of an element"));
                }
                let mut acc = Preset::Iota.element();
                for _ in 0..e {
                    acc = mul(&acc, &x).map_err(|err| ParseError::new(at, err.to_string()))?;
                }
                Ok(Value::Elem(acc))
            }
        }
    }

    fn args(&mut self, n: usize, name: &str) -> Result<Vec<i64>, ParseError> {
        self.expect('(')?;
        let mut v = Vec::new();
        for k in 0..n {
            if k > 0 {
                self.expect(',')?;
            }
            v.push(self.int()?);
        }
        if !self.eat(')') {
            return Err(self.err(format!("{name} takes {n} arguments")));
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let start = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err("unexpected end of input"));
        };
        self.at += 1;
        match tok {
            Tok::Int(v) => Ok(Value::Scalar(Coeff::from(v))),
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Ident(name) => match name.as_str() {
                "q" => Ok(Value::Scalar(Coeff::q())),
                "s" => Ok(Value::Scalar(Coeff::s())),
                "iota" => Ok(Value::Elem(Preset::Iota.element())),
                "phi0" => Ok(Value::Elem(Preset::Phi0.element())),
                "phi1" => Ok(Value::Elem(Preset::Phi1.element())),
                "phi2" => Ok(Value::Elem(Preset::Phi2.element())),
                "chi" => {
                    let v = self.args(3, "chi")?;
                    let idx = BasisIndex::new(v[0], v[1], v[2]).map_err(|e| ParseError::new(start, e.to_string()))?;
                    Ok(Value::Elem(HeckeElement::basis(idx)))
                }
                "theta" => {
                    let v = self.args(2, "theta")?;
                    let p = Preset::theta(v[0], v[1]).map_err(|e| ParseError::new(start, e.msg))?;
                    Ok(Value::Elem(p.element()))
                }
                "sum" => self.strip(start),
                other => Err(ParseError::new(start, format!("unknown name {other:?}"))),
            },
            other => Err(ParseError::new(start, format!("unexpected {other:?}"))),
        }
    }

    fn strip(&mut self, start: usize) -> Result<Value, ParseError> {
        self.expect('(')?;
        let a = self.int()?;
        self.expect(',')?;
        let j = self.int()?;
        self.expect(',')?;
        let lo = self.bound(true)?;
        self.expect(',')?;
        let hi = self.bound(false)?;
        let mut terms = Vec::new();
        while self.eat(',') {
            self.expect('[')?;
            let e = self.int()?;
            let mut coeffs = Vec::new();
            while self.eat(',') {
                let at = self.pos();
                match self.expr()? {
                    Value::Scalar(c) => coeffs.push(c),
                    Value::Elem(_) => return Err(ParseError::new(at, "strip coefficients must be scalars")),
                }
            }
            self.expect(']')?;
            coeffs.reverse();
            terms.push(ExpPolyTerm::new(e, Poly::new(coeffs)));
        }
        self.expect(')')?;
        let sheet = Sheet::from_index(a).map_err(|e| ParseError::new(start, e.to_string()))?;
        let terms: Vec<ExpPolyTerm> = terms.into_iter().filter(|t| !t.poly.is_zero()).collect();
        if terms.is_empty() {
            return Ok(Value::Elem(HeckeElement::zero()));
        }
        let strip = Strip::new(lo, hi, terms).map_err(|e| ParseError::new(start, e.to_string()))?;
        HeckeElement::from_strips([(RowKey::new(sheet, j), strip)])
            .map(Value::Elem)
            .map_err(|e| ParseError::new(start, e.to_string()))
    }
}

fn combine(x: Value, y: Value, op: char, at: usize) -> Result<Value, ParseError> {
    use Value::*;
    let err = |m: &str| ParseError::new(at, m.to_string());
    Ok(match (op, x, y) {
        ('+', Scalar(a), Scalar(b)) => Scalar(&a + &b),
        ('-', Scalar(a), Scalar(b)) => Scalar(&a - &b),
        ('*', Scalar(a), Scalar(b)) => Scalar(&a * &b),
        ('/', Scalar(a), Scalar(b)) => Scalar(a.checked_div(&b).map_err(|e| err(&e.to_string()))?),
        ('+', Elem(a), Elem(b)) => Elem(&a + &b),
        ('-', Elem(a), Elem(b)) => Elem(&a - &b),
        ('+' | '-', Elem(a), Scalar(c)) | ('+', Scalar(c), Elem(a)) if c.is_zero() => Elem(a),
        ('-', Scalar(c), Elem(a)) if c.is_zero() => Elem(-&a),
        ('+' | '-', _, _) => return Err(err("cannot add a scalar and an element")),
        ('*', Scalar(c), Elem(a)) | ('*', Elem(a), Scalar(c)) => Elem(a.scale(&c)),
        ('*', Elem(a), Elem(b)) => Elem(mul(&a, &b).map_err(|e| err(&e.to_string()))?),
        ('/', Elem(a), Scalar(c)) => Elem(a.scale(&c.inv().map_err(|e| err(&e.to_string()))?)),
        ('/', _, Elem(_)) => return Err(err("cannot divide by an element")),
        _ => return Err(err("bad operator")),
    })
}

/// Parses a scalar expression in `s` and `q`.
pub fn parse_scalar(text: &str) -> Result<Coeff, ParseError> {
    let mut p = Parser::new(text)?;
    let v = p.expr()?;
    p.finish()?;
    match v {
        Value::Scalar(c) => Ok(c),
        Value::Elem(_) => Err(ParseError::new(0, "expected a scalar, found an element")),
    }
}

/// Parses an element expression. A scalar `0` is the zero element.
pub fn parse_element(text: &str) -> Result<HeckeElement, ParseError> {
    let mut p = Parser::new(text)?;
    let v = p.expr()?;
    p.finish()?;
    match v {
        Value::Elem(x) => Ok(x),
        Value::Scalar(c) if c.is_zero() => Ok(HeckeElement::zero()),
        Value::Scalar(_) => Err(ParseError::new(0, "expected an element, found a scalar")),
    }
}

/// Output syntax for [`format_element`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Json,
    Latex,
}

pub fn format_element(x: &HeckeElement, mode: Format) -> String {
    match mode {
        Format::Text => to_text(x),
        Format::Json => x.to_json(),
        Format::Latex => to_latex(x),
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_text(self))
    }
}

/// Longest constant run written out point by point in text form.
const EXPAND_LIMIT: i64 = 8;

fn is_token(t: &str) -> bool {
    !t.contains(' ') && !t.contains('/')
}

fn scalar_factor(c: &Coeff) -> String {
    let t = c.to_string();
    if is_token(&t) {
        t
    } else {
        format!("({t})")
    }
}

fn signed_terms(parts: Vec<String>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, p) in parts.into_iter().enumerate() {
        match (k, p.strip_prefix('-')) {
            (0, _) => out.push_str(&p),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(&p);
            }
        }
    }
    out
}

fn to_text(x: &HeckeElement) -> String {
    let mut parts = Vec::new();
    for (key, row) in x.rows() {
        let (a, j) = (key.sheet.index(), key.level);
        for s in row.strips() {
            let run = match (s.lo(), s.hi(), s.as_constant()) {
                (Some(l), Some(h), Some(c)) if h - l < EXPAND_LIMIT => Some((l, h, c)),
                _ => None,
            };
            if let Some((l, h, c)) = run {
                for m in l..=h {
                    parts.push(if c.is_one() {
                        format!("chi({a},{m},{j})")
                    } else if (-c).is_one() {
                        format!("-chi({a},{m},{j})")
                    } else {
                        format!("{}*chi({a},{m},{j})", scalar_factor(c))
                    });
                }
                continue;
            }
            let terms: Vec<String> = s
                .terms()
                .iter()
                .map(|t| {
                    let cs: Vec<String> = t.poly.coeffs().iter().rev().map(|c| c.to_string()).collect();
                    format!("[{}, {}]", t.step, cs.join(", "))
                })
                .collect();
            parts.push(format!("sum({a},{j},{},{},{})", s.lo_text(), s.hi_text(), terms.join(",")));
        }
    }
    signed_terms(parts)
}

fn latex_index_poly(p: &crate::IndexPoly) -> String {
    let mut parts = Vec::new();
    for (d, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let var = match d {
            0 => String::new(),
            1 => "m".into(),
            _ => format!("m^{{{d}}}"),
        };
        let coef = c.to_latex();
        let coef_simple = !coef.contains(' ') || coef.starts_with("\\frac");
        parts.push(match (var.is_empty(), c.is_one(), (-c).is_one()) {
            (true, _, _) => coef,
            (false, true, _) => var,
            (false, _, true) => format!("-{var}"),
            (false, _, _) if coef_simple => format!("{coef} {var}"),
            _ => format!("\\left({coef}\\right) {var}"),
        });
    }
    signed_terms(parts)
}

fn latex_coeff(c: &Coeff) -> String {
    let t = c.to_latex();
    if t.contains(" + ") || t.contains(" - ") {
        format!("\\left({t}\\right)")
    } else {
        t
    }
}

fn to_latex(x: &HeckeElement) -> String {
    let mut parts = Vec::new();
    for (key, row) in x.rows() {
        let (a, j) = (key.sheet.index(), key.level);
        for s in row.strips() {
            if let (Some(l), Some(h), Some(c)) = (s.lo(), s.hi(), s.as_constant()) {
                if h - l < EXPAND_LIMIT {
                    for m in l..=h {
                        let chi = format!("\\chi^{{({a})}}_{{{m},{j}}}");
                        parts.push(if c.is_one() {
                            chi
                        } else if (-c).is_one() {
                            format!("-{chi}")
                        } else {
                            format!("{} {chi}", latex_coeff(c))
                        });
                    }
                    continue;
                }
            }
            let header = match (s.lo(), s.hi()) {
                (None, Some(h)) => format!("\\sum_{{m \\le {h}}}"),
                (Some(l), None) => format!("\\sum_{{m \\ge {l}}}"),
                (Some(l), Some(h)) => format!("\\sum_{{m={l}}}^{{{h}}}"),
                (None, None) => unreachable!("strips have a finite end"),
            };
            let body: Vec<String> = s
                .terms()
                .iter()
                .map(|t| {
                    let p = latex_index_poly(&t.poly);
                    let p = if t.poly.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || p.contains(' ') {
                        format!("\\left({p}\\right)")
                    } else {
                        p
                    };
                    match t.step {
                        0 => p,
                        e if e % 2 == 0 => format!("{p} q^{{{} m}}", e / 2),
                        e => format!("{p} q^{{\\frac{{{e}}}{{2}} m}}"),
                    }
                })
                .collect();
            parts.push(format!("{header} \\left({}\\right) \\chi^{{({a})}}_{{m,{j}}}", body.join(" + ")));
        }
    }
    signed_terms(parts)
}
