//! Arithmetic expressions shared by the map, path and set grammars.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::lexer::{Tok, Token};
use crate::error::{ParseError, Pos};
use crate::polyring::{gcd, LaurentPoly, MPoly, Rat};

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Num(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

pub struct Cursor<'a> {
    toks: &'a [Token],
    pub i: usize,
}

pub fn err(pos: Pos, message: impl Into<String>) -> ParseError {
    ParseError {
        pos,
        message: message.into(),
    }
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        Cursor { toks, i: 0 }
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    pub fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    pub fn bump(&mut self) -> &Token {
        let t = &self.toks[self.i];
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    pub fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, t: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(err(
                self.pos(),
                format!("expected {what}, found {}", self.peek().describe()),
            ))
        }
    }

    pub fn expect_eof(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(err(
                self.pos(),
                format!("unexpected {} after the end of input", self.peek().describe()),
            ))
        }
    }

    pub fn expect_uint(&mut self, what: &str) -> Result<usize, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                n.to_usize().ok_or_else(|| err(pos, format!("{what} too large")))
            }
            other => Err(err(
                pos,
                format!("expected {what}, found {}", other.describe()),
            )),
        }
    }

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
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

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            let (kind, explicit): (fn(_, _) -> _, bool) = match self.peek() {
                Tok::Star => (ExprKind::Mul, true),
                Tok::Slash => (ExprKind::Div, true),
                // implicit multiplication: `2t`, `(x)(y)`, `x y`
                Tok::Ident(_) | Tok::LParen | Tok::Num(_) => (ExprKind::Mul, false),
                _ => return Ok(lhs),
            };
            if explicit {
                self.bump();
            }
            let rhs = self.unary()?;
            lhs = Expr {
                kind: kind(Box::new(lhs), Box::new(rhs)),
                pos,
            };
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        if self.eat(&Tok::Minus) {
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                pos,
            });
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let neg = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let epos = self.pos();
        let e = match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                n.to_i64()
                    .filter(|v| *v <= 1 << 20)
                    .ok_or_else(|| err(epos, "exponent too large"))?
            }
            other => {
                return Err(err(
                    epos,
                    format!("expected an integer exponent, found {}", other.describe()),
                ))
            }
        };
        Ok(Expr {
            kind: ExprKind::Pow(Box::new(base), if neg { -e } else { e }),
            pos,
        })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Num(n),
                    pos,
                })
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Var(s),
                    pos,
                })
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            other => Err(err(
                pos,
                format!("expected an expression, found {}", other.describe()),
            )),
        }
    }
}

/// Index (0-based) of an affine variable name, or `None` if it is not one.
pub fn affine_var_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => {
            let rest = name.strip_prefix('x')?;
            if rest.starts_with('0') {
                return None;
            }
            let k: usize = rest.parse().ok()?;
            (k >= 1).then(|| k - 1)
        }
    }
}

impl Expr {
    /// Largest affine variable index used plus one.
    pub fn max_var(&self) -> Result<usize, ParseError> {
        match &self.kind {
            ExprKind::Num(_) => Ok(0),
            ExprKind::Var(s) => affine_var_index(s)
                .map(|i| i + 1)
                .ok_or_else(|| err(self.pos, format!("unknown variable `{s}`; use x, y, z or x1, x2, ..."))),
            ExprKind::Neg(a) | ExprKind::Pow(a, _) => a.max_var(),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
                Ok(a.max_var()?.max(b.max_var()?))
            }
        }
    }
}

/// A quotient of polynomials, kept reduced.
#[derive(Clone, Debug)]
pub struct RatFunc {
    pub num: MPoly,
    pub den: MPoly,
}

impl RatFunc {
    fn poly(p: MPoly) -> Self {
        let n = p.nvars();
        RatFunc {
            num: p,
            den: MPoly::one(n),
        }
    }

    fn reduced(num: MPoly, den: MPoly) -> Self {
        if den.is_constant() {
            let c = den.constant_value().unwrap();
            let n = num.nvars();
            return RatFunc {
                num: num.scale(&c.recip()),
                den: MPoly::one(n),
            };
        }
        let g = gcd(&num, &den);
        if g.is_constant() {
            return RatFunc { num, den };
        }
        RatFunc {
            num: num.div_exact(&g).unwrap(),
            den: den.div_exact(&g).unwrap(),
        }
    }
}

/// Evaluates to a polynomial in `n` variables; division only by nonzero constants.
pub fn eval_poly(e: &Expr, n: usize) -> Result<MPoly, ParseError> {
    let r = eval_ratfunc(e, n)?;
    match r.den.constant_value() {
        Some(c) => Ok(r.num.scale(&c.recip())),
        None => Err(err(
            e.pos,
            "division by a non-constant polynomial is not allowed here",
        )),
    }
}

/// Evaluates to a rational function in `n` variables.
pub fn eval_ratfunc(e: &Expr, n: usize) -> Result<RatFunc, ParseError> {
    Ok(match &e.kind {
        ExprKind::Num(v) => RatFunc::poly(MPoly::constant(n, Rat::from_integer(v.clone()))),
        ExprKind::Var(s) => {
            let i = affine_var_index(s).ok_or_else(|| {
                err(e.pos, format!("unknown variable `{s}`; use x, y, z or x1, x2, ..."))
            })?;
            if i >= n {
                return Err(err(
                    e.pos,
                    format!("variable `{s}` is outside the declared dimension {n}"),
                ));
            }
            RatFunc::poly(MPoly::var(n, i))
        }
        ExprKind::Neg(a) => {
            let a = eval_ratfunc(a, n)?;
            RatFunc {
                num: -&a.num,
                den: a.den,
            }
        }
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            let a = eval_ratfunc(a, n)?;
            let mut b = eval_ratfunc(b, n)?;
            if matches!(e.kind, ExprKind::Sub(..)) {
                b.num = -&b.num;
            }
            if a.den == b.den {
                RatFunc::reduced(&a.num + &b.num, a.den)
            } else {
                RatFunc::reduced(
                    &(&a.num * &b.den) + &(&b.num * &a.den),
                    &a.den * &b.den,
                )
            }
        }
        ExprKind::Mul(a, b) => {
            let a = eval_ratfunc(a, n)?;
            let b = eval_ratfunc(b, n)?;
            RatFunc::reduced(&a.num * &b.num, &a.den * &b.den)
        }
        ExprKind::Div(a, b) => {
            let a = eval_ratfunc(a, n)?;
            let b = eval_ratfunc(b, n)?;
            if b.num.is_zero() {
                return Err(err(e.pos, "division by zero"));
            }
            RatFunc::reduced(&a.num * &b.den, &a.den * &b.num)
        }
        ExprKind::Pow(a, k) => {
            let a = eval_ratfunc(a, n)?;
            if *k >= 0 {
                RatFunc {
                    num: a.num.pow(*k as u32),
                    den: a.den.pow(*k as u32),
                }
            } else {
                if a.num.is_zero() {
                    return Err(err(e.pos, "negative power of zero"));
                }
                RatFunc::reduced(a.den.pow((-k) as u32), a.num.pow((-k) as u32))
            }
        }
    })
}

/// Evaluates to a Laurent polynomial in `t`; divisors must be monomials `c*t^k`.
pub fn eval_laurent(e: &Expr) -> Result<LaurentPoly, ParseError> {
    Ok(match &e.kind {
        ExprKind::Num(v) => LaurentPoly::constant(Rat::from_integer(v.clone())),
        ExprKind::Var(s) if s == "t" => LaurentPoly::monomial(1, Rat::one()),
        ExprKind::Var(s) => {
            return Err(err(e.pos, format!("paths use the single variable `t`, found `{s}`")))
        }
        ExprKind::Neg(a) => -&eval_laurent(a)?,
        ExprKind::Add(a, b) => &eval_laurent(a)? + &eval_laurent(b)?,
        ExprKind::Sub(a, b) => &eval_laurent(a)? - &eval_laurent(b)?,
        ExprKind::Mul(a, b) => &eval_laurent(a)? * &eval_laurent(b)?,
        ExprKind::Div(a, b) => {
            let num = eval_laurent(a)?;
            let den = eval_laurent(b)?;
            let (k, c) = monomial_of(&den).ok_or_else(|| {
                err(
                    b.pos,
                    "denominator not a monomial: paths must be Laurent polynomials in t",
                )
            })?;
            num.shift(-k).scale(&c.recip())
        }
        ExprKind::Pow(a, k) => {
            let base = eval_laurent(a)?;
            if *k >= 0 {
                base.pow(*k as u32)
            } else {
                let (j, c) = monomial_of(&base).ok_or_else(|| {
                    err(
                        e.pos,
                        "negative power of a non-monomial: paths must be Laurent polynomials in t",
                    )
                })?;
                LaurentPoly::monomial(j * k, num_traits::pow(c.recip(), (-k) as usize))
            }
        }
    })
}

fn monomial_of(p: &LaurentPoly) -> Option<(i64, Rat)> {
    let mut it = p.terms();
    let (k, c) = it.next()?;
    if it.next().is_some() || c.is_zero() {
        return None;
    }
    Some((*k, c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::lexer::lex;
    use crate::polyring::rat;

    fn parse_expr(s: &str) -> Expr {
        let toks = lex(s).unwrap();
        let mut c = Cursor::new(&toks);
        let e = c.expr().unwrap();
        c.expect_eof().unwrap();
        e
    }

    #[test]
    fn implicit_multiplication_and_powers() {
        let p = eval_poly(&parse_expr("(x^2)(1+x^2) - 2x y"), 2).unwrap();
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let expect = &(&x.pow(2) + &x.pow(4)) - &(&x * &y).scale(&rat(2));
        assert_eq!(p, expect);
        let q = eval_poly(&parse_expr("-x^2"), 1).unwrap();
        assert_eq!(q, -&MPoly::var(1, 0).pow(2));
    }

    #[test]
    fn laurent_paths() {
        let l = eval_laurent(&parse_expr("t^-3*(1+2t)")).unwrap();
        assert_eq!(l.ord(), Some(-3));
        assert_eq!(l.coeff(-2), rat(2));
        let l = eval_laurent(&parse_expr("2/t")).unwrap();
        assert_eq!(l, LaurentPoly::monomial(-1, rat(2)));
        assert!(eval_laurent(&parse_expr("1/(1+t)")).is_err());
    }

    #[test]
    fn variable_names() {
        assert_eq!(affine_var_index("x"), Some(0));
        assert_eq!(affine_var_index("x4"), Some(3));
        assert_eq!(affine_var_index("x0"), None);
        assert_eq!(affine_var_index("w"), None);
    }
}
