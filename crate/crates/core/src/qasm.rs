//! OpenQASM 2.0 subset: one quantum register, gates
//! `h x y z s sdg t tdg rz cx cz`, no measurement or classical control.

use std::fmt::Write as _;

use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, ToPrimitive, Zero};

use crate::circuit::{Circuit, Gate};
use crate::error::QasmError;
use crate::phase::Phase;

/// Largest denominator used when an angle is not an exact rational multiple of pi.
pub const MAX_APPROX_DENOM: i64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub msg: String,
}

pub fn parse_qasm(text: &str) -> Result<Circuit, QasmError> {
    parse_qasm_detailed(text).map(|(c, _)| c)
}

/// Like [`parse_qasm`], also returning warnings for angles that had to be
/// rounded to a nearby rational multiple of pi.
pub fn parse_qasm_detailed(text: &str) -> Result<(Circuit, Vec<ParseWarning>), QasmError> {
    let tokens = tokenize(text)?;
    Parser {
        tokens,
        pos: 0,
        warnings: Vec::new(),
    }
    .program()
}

pub fn emit_qasm(c: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", c.n_qubits());
    for g in c.gates() {
        let _ = writeln!(out, "{g};");
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Real(String),
    Str(String),
    Sym(char),
    Arrow,
    Eq2,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> QasmError {
    QasmError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, QasmError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let adv = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            adv(1, &mut i, &mut col);
        } else if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c == '/' && chars.get(i + 1) == Some(&'*') {
            i += 2;
            col += 2;
            loop {
                if i + 1 >= chars.len() {
                    return Err(syntax(tl, tc, "unterminated block comment"));
                }
                if chars[i] == '*' && chars[i + 1] == '/' {
                    i += 2;
                    col += 2;
                    break;
                }
                if chars[i] == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
                i += 1;
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: tl,
                col: tc,
            });
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            let mut real = false;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                real = true;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    real = true;
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            col += i - start;
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: if real { Tok::Real(s) } else { Tok::Int(s) },
                line: tl,
                col: tc,
            });
        } else if c == '"' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                i += 1;
            }
            if i >= chars.len() || chars[i] != '"' {
                return Err(syntax(tl, tc, "unterminated string"));
            }
            let s: String = chars[start..i].iter().collect();
            i += 1;
            col += s.chars().count() + 2;
            out.push(Token {
                tok: Tok::Str(s),
                line: tl,
                col: tc,
            });
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            adv(2, &mut i, &mut col);
            out.push(Token {
                tok: Tok::Arrow,
                line: tl,
                col: tc,
            });
        } else if c == '=' && chars.get(i + 1) == Some(&'=') {
            adv(2, &mut i, &mut col);
            out.push(Token {
                tok: Tok::Eq2,
                line: tl,
                col: tc,
            });
        } else if "[](){};,+-*/^".contains(c) {
            adv(1, &mut i, &mut col);
            out.push(Token {
                tok: Tok::Sym(c),
                line: tl,
                col: tc,
            });
        } else {
            return Err(syntax(tl, tc, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// An angle expression value `rational + pi_coeff * pi`, or an inexact float
/// (in radians) once something non-rational got involved.
#[derive(Clone, Copy, Debug)]
enum Angle {
    Exact { rational: Rational64, pi: Rational64 },
    Float(f64),
}

impl Angle {
    fn to_f64(self) -> f64 {
        match self {
            Angle::Exact { rational, pi } => {
                rational.to_f64().unwrap_or(f64::NAN) + pi.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI
            }
            Angle::Float(x) => x,
        }
    }

    fn num(r: Rational64) -> Angle {
        Angle::Exact {
            rational: r,
            pi: Rational64::zero(),
        }
    }

    fn add(self, o: Angle, sign: i64) -> Angle {
        match (self, o) {
            (Angle::Exact { rational: a, pi: b }, Angle::Exact { rational: c, pi: d }) => {
                let s = Rational64::from_integer(sign);
                match (a.checked_add(&(c * s)), b.checked_add(&(d * s))) {
                    (Some(rational), Some(pi)) => Angle::Exact { rational, pi },
                    _ => Angle::Float(self.to_f64() + sign as f64 * o.to_f64()),
                }
            }
            _ => Angle::Float(self.to_f64() + sign as f64 * o.to_f64()),
        }
    }

    fn mul(self, o: Angle) -> Angle {
        match (self, o) {
            (Angle::Exact { rational: a, pi: b }, Angle::Exact { rational: c, pi: d })
                if b.is_zero() || d.is_zero() =>
            {
                let (r, p) = if b.is_zero() { (a, (c, d)) } else { (c, (a, b)) };
                match (r.checked_mul(&p.0), r.checked_mul(&p.1)) {
                    (Some(rational), Some(pi)) => Angle::Exact { rational, pi },
                    _ => Angle::Float(self.to_f64() * o.to_f64()),
                }
            }
            _ => Angle::Float(self.to_f64() * o.to_f64()),
        }
    }

    fn div(self, o: Angle) -> Option<Angle> {
        match (self, o) {
            (Angle::Exact { rational: a, pi: b }, Angle::Exact { rational: c, pi: d })
                if d.is_zero() =>
            {
                if c.is_zero() {
                    return None;
                }
                match (a.checked_div(&c), b.checked_div(&c)) {
                    (Some(rational), Some(pi)) => Some(Angle::Exact { rational, pi }),
                    _ => Some(Angle::Float(self.to_f64() / o.to_f64())),
                }
            }
            _ => {
                let d = o.to_f64();
                (d != 0.0).then(|| Angle::Float(self.to_f64() / d))
            }
        }
    }
}

fn decimal_to_rational(s: &str) -> Option<Rational64> {
    if s.contains(['e', 'E']) {
        return None;
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 15 || int.len() > 15 {
        return None;
    }
    let den = 10i64.checked_pow(frac.len() as u32)?;
    let digits = format!("{int}{frac}");
    let num: i64 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    Some(Rational64::new(num, den))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    warnings: Vec<ParseWarning>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        match self.peek().or(self.tokens.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn next(&mut self) -> Result<Token, QasmError> {
        let (l, c) = self.here();
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| syntax(l, c, "unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect_sym(&mut self, s: char) -> Result<(), QasmError> {
        let t = self.next()?;
        if t.tok == Tok::Sym(s) {
            Ok(())
        } else {
            Err(syntax(t.line, t.col, format!("expected `{s}`, found {:?}", t.tok)))
        }
    }

    fn eat_sym(&mut self, s: char) -> bool {
        if self.peek().is_some_and(|t| t.tok == Tok::Sym(s)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), QasmError> {
        let t = self.next()?;
        match t.tok {
            Tok::Ident(s) => Ok((s, t.line, t.col)),
            other => Err(syntax(t.line, t.col, format!("expected identifier, found {other:?}"))),
        }
    }

    fn int(&mut self) -> Result<usize, QasmError> {
        let t = self.next()?;
        match &t.tok {
            Tok::Int(s) => s
                .parse()
                .map_err(|_| syntax(t.line, t.col, format!("integer `{s}` out of range"))),
            other => Err(syntax(t.line, t.col, format!("expected integer, found {other:?}"))),
        }
    }

    fn program(mut self) -> Result<(Circuit, Vec<ParseWarning>), QasmError> {
        let mut reg: Option<(String, usize)> = None;
        let mut gates: Vec<(Gate, usize)> = Vec::new();

        if let Some(Token {
            tok: Tok::Ident(kw), ..
        }) = self.peek()
        {
            if kw == "OPENQASM" {
                self.pos += 1;
                let t = self.next()?;
                match &t.tok {
                    Tok::Real(v) | Tok::Int(v) if v.starts_with('2') => {}
                    other => {
                        return Err(syntax(t.line, t.col, format!("unsupported version {other:?}")))
                    }
                }
                self.expect_sym(';')?;
            }
        }

        while let Some(t) = self.peek().cloned() {
            let (name, line, col) = match t.tok {
                Tok::Ident(s) => {
                    self.pos += 1;
                    (s, t.line, t.col)
                }
                other => return Err(syntax(t.line, t.col, format!("unexpected {other:?}"))),
            };
            match name.as_str() {
                "include" => {
                    let s = self.next()?;
                    if !matches!(s.tok, Tok::Str(_)) {
                        return Err(syntax(s.line, s.col, "expected file name string"));
                    }
                    self.expect_sym(';')?;
                }
                "qreg" => {
                    let (rname, _, _) = self.ident()?;
                    self.expect_sym('[')?;
                    let n = self.int()?;
                    self.expect_sym(']')?;
                    self.expect_sym(';')?;
                    if reg.is_some() {
                        return Err(QasmError::UnsupportedStatement {
                            stmt: "second qreg".into(),
                            line,
                        });
                    }
                    if n == 0 {
                        return Err(syntax(line, col, "register must have at least one qubit"));
                    }
                    reg = Some((rname, n));
                }
                "creg" | "measure" | "reset" | "if" | "barrier" | "gate" | "opaque" => {
                    return Err(QasmError::UnsupportedStatement { stmt: name, line });
                }
                _ => {
                    let g = self.gate(&name, line, reg.as_ref())?;
                    gates.push((g, line));
                }
            }
        }

        let (_, n) = reg.ok_or_else(|| syntax(1, 1, "missing qreg declaration"))?;
        let mut c = Circuit::new(n);
        for (g, line) in gates {
            c.push(g).map_err(|source| QasmError::Circuit { line, source })?;
        }
        Ok((c, self.warnings))
    }

    fn qubit_arg(&mut self, reg: &(String, usize)) -> Result<usize, QasmError> {
        let (name, line, col) = self.ident()?;
        if name != reg.0 {
            return Err(syntax(line, col, format!("unknown register `{name}`")));
        }
        self.expect_sym('[')?;
        let q = self.int()?;
        self.expect_sym(']')?;
        Ok(q)
    }

    fn gate(&mut self, name: &str, line: usize, reg: Option<&(String, usize)>) -> Result<Gate, QasmError> {
        let arity = match name {
            "h" | "x" | "y" | "z" | "s" | "sdg" | "t" | "tdg" | "rz" => 1,
            "cx" | "CX" | "cz" => 2,
            _ => {
                return Err(QasmError::UnsupportedGate {
                    name: name.to_string(),
                    line,
                })
            }
        };
        let angle = if name == "rz" {
            self.expect_sym('(')?;
            let a = self.expr()?;
            self.expect_sym(')')?;
            Some(self.angle_to_phase(a, line))
        } else {
            None
        };
        let reg = reg.ok_or_else(|| syntax(line, 1, "gate before qreg declaration"))?;
        let q0 = self.qubit_arg(reg)?;
        let q1 = if arity == 2 {
            self.expect_sym(',')?;
            Some(self.qubit_arg(reg)?)
        } else {
            None
        };
        self.expect_sym(';')?;
        Ok(match (name, q1) {
            ("h", _) => Gate::H(q0),
            ("x", _) => Gate::X(q0),
            ("y", _) => Gate::Y(q0),
            ("z", _) => Gate::Z(q0),
            ("s", _) => Gate::S(q0),
            ("sdg", _) => Gate::Sdg(q0),
            ("t", _) => Gate::T(q0),
            ("tdg", _) => Gate::Tdg(q0),
            ("rz", _) => Gate::Rz(q0, angle.unwrap_or_default()),
            ("cz", Some(q1)) => Gate::Cz(q0, q1),
            (_, Some(q1)) => Gate::cnot(q0, q1),
            _ => unreachable!(),
        })
    }

    fn angle_to_phase(&mut self, a: Angle, line: usize) -> Phase {
        if let Angle::Exact { rational, pi } = a {
            if rational.is_zero() {
                return Phase::from_rational(pi);
            }
        }
        let x = a.to_f64() / std::f64::consts::PI;
        let p = Phase::approximate(x, MAX_APPROX_DENOM);
        self.warnings.push(ParseWarning {
            line,
            msg: format!("angle {:.12} is not a rational multiple of pi; rounded to {p}", a.to_f64()),
        });
        p
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Angle, QasmError> {
        let mut v = self.term()?;
        loop {
            if self.eat_sym('+') {
                v = v.add(self.term()?, 1);
            } else if self.eat_sym('-') {
                v = v.add(self.term()?, -1);
            } else {
                return Ok(v);
            }
        }
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self) -> Result<Angle, QasmError> {
        let mut v = self.unary()?;
        loop {
            if self.eat_sym('*') {
                v = v.mul(self.unary()?);
            } else if self.peek().is_some_and(|t| t.tok == Tok::Sym('/')) {
                let (l, c) = self.here();
                self.pos += 1;
                v = v.div(self.unary()?).ok_or_else(|| syntax(l, c, "division by zero"))?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<Angle, QasmError> {
        if self.eat_sym('-') {
            return Ok(Angle::num(Rational64::zero()).add(self.unary()?, -1));
        }
        if self.eat_sym('+') {
            return self.unary();
        }
        let t = self.next()?;
        match &t.tok {
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            Tok::Ident(s) if s == "pi" => Ok(Angle::Exact {
                rational: Rational64::zero(),
                pi: Rational64::from_integer(1),
            }),
            Tok::Int(s) | Tok::Real(s) => match decimal_to_rational(s) {
                Some(r) => Ok(Angle::num(r)),
                None => s
                    .parse::<f64>()
                    .map(Angle::Float)
                    .map_err(|_| syntax(t.line, t.col, format!("bad number `{s}`"))),
            },
            other => Err(syntax(t.line, t.col, format!("expected angle expression, found {other:?}"))),
        }
    }
}
