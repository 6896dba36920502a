//! Text expressions for operators.
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := "-" factor | scalar [factor] | atom ("(x)" atom)*
//! atom   := WORD | GATE "(" args ")" | "(" expr ")"
//! scalar := NUMBER ["/" (NUMBER | "sqrt(" NUMBER ")")] | "sqrt(" NUMBER ")" | "pi"
//! ```
//!
//! Words are `[IXZW]+`. Gate names are case-insensitive; slots are 1-based
//! and a trailing register size may be omitted, in which case it defaults to
//! the largest slot used. Gates with a complex phase evaluate to their
//! realification and so carry one extra slot.

use std::f64::consts::PI;

use crate::error::{NqaError, Result};
use crate::gates::{
    bell_transform, lifted_gate, mcz, single_gate, two_gate, LiftedGate, SingleGate, TwoGate,
};
use crate::operator::NqaOperator;
use crate::word::NqaWord;

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Scalar(f64),
    Word(NqaWord),
    Gate { name: String, args: Vec<f64> },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    /// A scalar written directly in front of a factor, as in `2 XX`.
    Scaled(f64, Box<Expr>),
}

/// A syntax tree node with the byte offset where it starts.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
    Tensor,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("number {v}"),
        Tok::Ident(s) => format!("{s:?}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Tensor => "'(x)'".into(),
        Tok::End => "end of input".into(),
    }
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(NqaError::Parse {
        pos,
        msg: msg.into(),
    })
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, i)),
            b'-' => out.push((Tok::Minus, i)),
            b'*' => out.push((Tok::Star, i)),
            b'/' => out.push((Tok::Slash, i)),
            b')' => out.push((Tok::RParen, i)),
            b',' => out.push((Tok::Comma, i)),
            b'(' => {
                if src[i..].starts_with("(x)") {
                    out.push((Tok::Tensor, i));
                    i += 3;
                    continue;
                }
                out.push((Tok::LParen, i));
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                match text.parse::<f64>() {
                    Ok(v) => out.push((Tok::Num(v), start)),
                    Err(_) => return err(start, format!("bad number {text:?}")),
                }
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return err(i, format!("unexpected character {ch:?}"));
            }
        }
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.at + offset).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            err(
                self.pos(),
                format!("expected {}, found {}", describe(&want), describe(self.peek())),
            )
        }
    }

    fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s.eq_ignore_ascii_case(name))
    }

    fn starts_scalar(&self) -> bool {
        matches!(self.peek(), Tok::Num(_))
            || self.is_ident("pi")
            || (self.is_ident("sqrt") && *self.peek_at(1) == Tok::LParen)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn expr(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let mut lhs = if *self.peek() == Tok::Minus {
            self.bump();
            let t = self.term()?;
            Expr {
                kind: ExprKind::Neg(Box::new(t)),
                pos,
            }
        } else {
            self.term()?
        };
        loop {
            let pos = self.pos();
            let kind = match self.peek() {
                Tok::Plus => ExprKind::Add as fn(_, _) -> _,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr {
                kind: kind(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            let pos = self.pos();
            self.bump();
            let rhs = self.factor()?;
            lhs = Expr {
                kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let pos = self.pos();
        if *self.peek() == Tok::Minus {
            self.bump();
            let f = self.factor()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(f)),
                pos,
            });
        }
        if self.starts_scalar() {
            let c = self.scalar()?;
            if self.starts_factor() {
                let f = self.factor()?;
                return Ok(Expr {
                    kind: ExprKind::Scaled(c, Box::new(f)),
                    pos,
                });
            }
            return Ok(Expr {
                kind: ExprKind::Scalar(c),
                pos,
            });
        }
        let mut lhs = self.atom()?;
        while *self.peek() == Tok::Tensor {
            let pos = self.pos();
            self.bump();
            let rhs = self.atom()?;
            lhs = Expr {
                kind: ExprKind::Tensor(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
        Ok(lhs)
    }

    fn number(&mut self) -> Result<f64> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(v)
            }
            t => err(self.pos(), format!("expected a number, found {}", describe(&t))),
        }
    }

    fn sqrt_call(&mut self) -> Result<f64> {
        self.bump();
        self.expect(Tok::LParen)?;
        let pos = self.pos();
        let v = self.number()?;
        if v < 0.0 {
            return err(pos, "square root of a negative number");
        }
        self.expect(Tok::RParen)?;
        Ok(v.sqrt())
    }

    fn scalar(&mut self) -> Result<f64> {
        if self.is_ident("pi") {
            self.bump();
            return Ok(PI);
        }
        if self.is_ident("sqrt") {
            return self.sqrt_call();
        }
        let num = self.number()?;
        if *self.peek() != Tok::Slash {
            return Ok(num);
        }
        self.bump();
        let pos = self.pos();
        let den = if self.is_ident("sqrt") {
            self.sqrt_call()?
        } else {
            self.number()?
        };
        if den == 0.0 {
            return err(pos, "division by zero");
        }
        Ok(num / den)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let args = self.args()?;
                    return Ok(Expr {
                        kind: ExprKind::Gate { name, args },
                        pos,
                    });
                }
                match name.parse::<NqaWord>() {
                    Ok(w) => Ok(Expr {
                        kind: ExprKind::Word(w),
                        pos,
                    }),
                    Err(_) => err(pos, format!("{name:?} is not a word over I, X, Z, W")),
                }
            }
            t => err(pos, format!("expected an operator, found {}", describe(&t))),
        }
    }

    fn args(&mut self) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.arg_sum()?);
            let pos = self.pos();
            match self.bump() {
                Tok::Comma => continue,
                Tok::RParen => return Ok(out),
                t => return err(pos, format!("expected ',' or ')', found {}", describe(&t))),
            }
        }
    }

    fn arg_sum(&mut self) -> Result<f64> {
        let mut acc = self.arg_product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc += self.arg_product()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc -= self.arg_product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn arg_product(&mut self) -> Result<f64> {
        let mut acc = self.arg_atom()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc *= self.arg_atom()?;
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.arg_atom()?;
                    if d == 0.0 {
                        return err(pos, "division by zero");
                    }
                    acc /= d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn arg_atom(&mut self) -> Result<f64> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.arg_atom()?)
            }
            Tok::LParen => {
                self.bump();
                let v = self.arg_sum()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            _ if self.is_ident("pi") => {
                self.bump();
                Ok(PI)
            }
            _ if self.is_ident("sqrt") => self.sqrt_call(),
            _ => self.number(),
        }
    }
}

/// Parse an expression without evaluating it.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return err(p.pos(), format!("unexpected {}", describe(p.peek())));
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Scalar(f64),
    Op(NqaOperator),
}

fn slot_arg(v: f64, pos: usize) -> Result<usize> {
    if v >= 1.0 && v.fract() == 0.0 && v <= 1e6 {
        Ok(v as usize)
    } else {
        err(pos, format!("slot {v} is not a positive integer"))
    }
}

fn arity(name: &str, args: &[f64], allowed: &[usize], pos: usize) -> Result<()> {
    if allowed.contains(&args.len()) {
        Ok(())
    } else {
        let want: Vec<_> = allowed.iter().map(usize::to_string).collect();
        err(
            pos,
            format!("{name} takes {} arguments, got {}", want.join(" or "), args.len()),
        )
    }
}

/// Evaluate a gate call such as `CZ(1,2)`, `Rz(pi/4,1,2)` or `ISWAP()`.
pub fn gate_call(name: &str, args: &[f64], pos: usize) -> Result<NqaOperator> {
    let upper = name.to_ascii_uppercase();
    let single = |g: SingleGate, slots: &[f64]| -> Result<NqaOperator> {
        let k = slot_arg(slots[0], pos)?;
        let m = match slots.get(1) {
            Some(&m) => slot_arg(m, pos)?,
            None => k,
        };
        Ok(single_gate(g, k, m)?.realified())
    };
    let two = |g: TwoGate| -> Result<NqaOperator> {
        arity(&upper, args, &[2, 3], pos)?;
        let p = slot_arg(args[0], pos)?;
        let q = slot_arg(args[1], pos)?;
        let m = match args.get(2) {
            Some(&m) => slot_arg(m, pos)?,
            None => p.max(q),
        };
        two_gate(g, p, q, m)
    };
    let lifted = |g: LiftedGate| lifted_gate(g).expand();
    match upper.as_str() {
        "H" | "X" | "Z" | "W" | "S" | "T" | "P0" | "P1" => {
            arity(&upper, args, &[1, 2], pos)?;
            let g = match upper.as_str() {
                "H" => SingleGate::H,
                "X" => SingleGate::X,
                "Z" => SingleGate::Z,
                "W" => SingleGate::W,
                "S" => SingleGate::S,
                "T" => SingleGate::T,
                "P0" => SingleGate::P0,
                _ => SingleGate::P1,
            };
            single(g, args)
        }
        "RZ" | "RY" | "ROT" | "REF" => {
            arity(&upper, args, &[2, 3], pos)?;
            let a = args[0];
            let g = match upper.as_str() {
                "RZ" => SingleGate::Rz(a),
                "RY" => SingleGate::Ry(a),
                "ROT" => SingleGate::Rot(a),
                _ => SingleGate::Ref(a),
            };
            single(g, &args[1..])
        }
        "CZ" => two(TwoGate::Cz),
        "CNOT" => two(TwoGate::Cnot),
        "SWAP" => two(TwoGate::Swap),
        "PEVEN" => two(TwoGate::ParityEven),
        "PODD" => two(TwoGate::ParityOdd),
        "P00" | "P01" | "P10" | "P11" => {
            let b = upper.as_bytes();
            two(TwoGate::BasisProjector(b[1] == b'1', b[2] == b'1'))
        }
        "MCZ" => {
            if args.is_empty() {
                return Err(NqaError::EmptyControls);
            }
            let controls = args
                .iter()
                .map(|&a| slot_arg(a, pos))
                .collect::<Result<Vec<_>>>()?;
            let m = controls.iter().copied().max().unwrap_or(1);
            mcz(&controls, m)?.expand()
        }
        "BELL" => {
            arity(&upper, args, &[0], pos)?;
            Ok(bell_transform())
        }
        "ISWAP" => {
            arity(&upper, args, &[0], pos)?;
            lifted(LiftedGate::ISwap)
        }
        "SQRTSWAP" => {
            arity(&upper, args, &[0], pos)?;
            lifted(LiftedGate::SqrtSwap)
        }
        "CPHASE" => {
            arity(&upper, args, &[1], pos)?;
            lifted(LiftedGate::CPhase(args[0]))
        }
        "CARTAN" => {
            arity(&upper, args, &[3], pos)?;
            lifted(LiftedGate::Cartan {
                x: args[0],
                y: args[1],
                z: args[2],
            })
        }
        _ => Err(NqaError::UnknownGate(name.to_string())),
    }
}

fn eval(e: &Expr) -> Result<Value> {
    use Value::{Op, Scalar};
    let lift = |a: &Value, m: usize| match a {
        Scalar(c) => NqaOperator::identity(m).scale(*c),
        Op(op) => op.clone(),
    };
    Ok(match &e.kind {
        ExprKind::Scalar(c) => Scalar(*c),
        ExprKind::Word(w) => Op(NqaOperator::from_word(w.clone())),
        ExprKind::Gate { name, args } => Op(gate_call(name, args, e.pos)?),
        ExprKind::Neg(inner) => match eval(inner)? {
            Scalar(c) => Scalar(-c),
            Op(op) => Op(op.scale(-1.0)),
        },
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            let sign = if matches!(e.kind, ExprKind::Add(..)) { 1.0 } else { -1.0 };
            match (eval(a)?, eval(b)?) {
                (Scalar(x), Scalar(y)) => Scalar(x + sign * y),
                (Op(x), y) => {
                    let y = lift(&y, x.m());
                    Op(x.add(&y.scale(sign))?)
                }
                (x @ Scalar(_), Op(y)) => Op(lift(&x, y.m()).add(&y.scale(sign))?),
            }
        }
        ExprKind::Mul(a, b) => match (eval(a)?, eval(b)?) {
            (Scalar(x), Scalar(y)) => Scalar(x * y),
            (Scalar(x), Op(y)) | (Op(y), Scalar(x)) => Op(y.scale(x)),
            (Op(x), Op(y)) => Op(x.mul(&y)?),
        },
        ExprKind::Scaled(c, inner) => match eval(inner)? {
            Scalar(x) => Scalar(c * x),
            Op(op) => Op(op.scale(*c)),
        },
        ExprKind::Tensor(a, b) => match (eval(a)?, eval(b)?) {
            (Op(x), Op(y)) => Op(x.tensor(&y)),
            _ => return err(e.pos, "tensor factors must be operators"),
        },
    })
}

/// Evaluate a parsed expression to a coefficient table.
pub fn evaluate(e: &Expr) -> Result<NqaOperator> {
    match eval(e)? {
        Value::Op(op) => Ok(op),
        Value::Scalar(_) => err(
            e.pos,
            "expression is a plain number; multiply it by a word to fix the slot count",
        ),
    }
}

/// `parse` followed by `evaluate`.
pub fn eval_str(src: &str) -> Result<NqaOperator> {
    evaluate(&parse(src)?)
}
