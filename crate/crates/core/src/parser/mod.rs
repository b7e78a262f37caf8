//! Text formats for maps, paths and semialgebraic sets.
//!
//! The grammar is documented in the repository README.

mod expr;
mod json;
mod lexer;

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, ParseError, Pos, Result};
use crate::polyring::print::{affine_names, format_laurent, format_poly};
use crate::polyring::{gcd_reduce, LaurentPoly, MPoly, Rat};
pub use expr::affine_var_index;
use expr::{err, eval_laurent, eval_poly, eval_ratfunc, Cursor, Expr};
pub use json::{map_ast, path_ast, set_ast};
use lexer::{lex, Tok};

/// A regular map `x -> (f1/f0, ..., fm/f0)` from `R^n` to `R^m`.
#[derive(Clone, Debug)]
pub struct RegularMap {
    n: usize,
    f0: MPoly,
    fs: Vec<MPoly>,
    reduced: bool,
}

/// Equal when the stored components agree; whether reduction was run is not compared.
impl PartialEq for RegularMap {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.f0 == other.f0 && self.fs == other.fs
    }
}

impl Eq for RegularMap {}

impl RegularMap {
    /// Builds a map, rescaling so that `f0` is primitive with positive leading coefficient.
    /// Does not reduce; see [`RegularMap::reduce`].
    pub fn new(f0: MPoly, fs: Vec<MPoly>) -> Result<Self> {
        if f0.is_zero() {
            return Err(Error::ZeroPolynomial("denominator f0"));
        }
        let n = f0.nvars();
        for f in &fs {
            if f.nvars() != n {
                return Err(Error::Arity {
                    expected: n,
                    found: f.nvars(),
                });
            }
        }
        let p = f0.primitive();
        let factor = p.leading_coeff().unwrap() / f0.leading_coeff().unwrap();
        Ok(RegularMap {
            n,
            f0: p,
            fs: fs.iter().map(|f| f.scale(&factor)).collect(),
            reduced: false,
        })
    }

    pub fn polynomial(n: usize, fs: Vec<MPoly>) -> Result<Self> {
        RegularMap::new(MPoly::one(n), fs)?.reduce()
    }

    /// Divides out `gcd(f0, f1, ..., fm)`.
    pub fn reduce(self) -> Result<Self> {
        if self.reduced {
            return Ok(self);
        }
        let (_, f0, fs) = gcd_reduce(&self.f0, &self.fs)?;
        let mut out = RegularMap::new(f0, fs)?;
        out.reduced = true;
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.fs.len()
    }

    pub fn f0(&self) -> &MPoly {
        &self.f0
    }

    pub fn fs(&self) -> &[MPoly] {
        &self.fs
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_polynomial(&self) -> bool {
        self.f0.is_constant()
    }

    /// `(f0, f1, ..., fm)` as one list.
    pub fn components(&self) -> Vec<MPoly> {
        std::iter::once(self.f0.clone())
            .chain(self.fs.iter().cloned())
            .collect()
    }

    /// Exact value, or `None` at a pole.
    pub fn eval(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let d = self.f0.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.fs.iter().map(|f| f.eval(x) / &d).collect())
    }

    pub fn eval_f64(&self, x: &[f64]) -> Vec<f64> {
        let d = self.f0.eval_f64(x);
        self.fs.iter().map(|f| f.eval_f64(x) / d).collect()
    }

    /// Degree `d = max deg f_i` over `i = 0..m`.
    pub fn degree(&self) -> u32 {
        self.components()
            .iter()
            .filter_map(|f| f.total_degree().finite())
            .max()
            .unwrap_or(0)
    }

    /// `self ∘ h`, computed as `F_i(h0, h1, ..., hn)` with the homogenized components and
    /// then reduced.
    pub fn compose(&self, h: &RegularMap) -> Result<RegularMap> {
        if h.m() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                found: h.m(),
            });
        }
        let mut it = self.compose_components(&h.components())?.into_iter();
        let g0 = it.next().unwrap();
        RegularMap::new(g0, it.collect())?.reduce()
    }

    /// `F_i = x0^d f_i(x/x0)` for `i = 0..m`, with `d` the degree of the map.
    pub fn homogenized(&self) -> Result<Vec<MPoly>> {
        let d = self.degree();
        self.components().iter().map(|f| f.homogenize(d)).collect()
    }

    /// `F_i(h0, h1, ..., hn)` for `i = 0..m`, without reduction.
    pub fn compose_components(&self, images: &[MPoly]) -> Result<Vec<MPoly>> {
        if images.len() != self.n + 1 {
            return Err(Error::Arity {
                expected: self.n + 1,
                found: images.len(),
            });
        }
        let d = self.degree();
        self.components()
            .iter()
            .map(|f| f.homogenize(d)?.substitute(images))
            .collect()
    }

    /// Canonical text form; parses back to an identical map.
    pub fn to_text(&self) -> String {
        let names = affine_names(self.n);
        let comps: Vec<String> = self.fs.iter().map(|f| format_poly(f, &names)).collect();
        let mut s = format!("map R^{} -> R^{} : ({})", self.n, self.m(), comps.join(", "));
        if !self.f0.is_constant() {
            s.push_str(&format!(" / ({})", format_poly(&self.f0, &names)));
        }
        s
    }
}

impl fmt::Display for RegularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Tuple of Laurent polynomials in `t`, approaching infinity as `t -> 0+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPath {
    components: Vec<LaurentPoly>,
    i0: usize,
}

impl RationalPath {
    pub fn new(components: Vec<LaurentPoly>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::precondition("path length", "a path needs at least one component"));
        }
        let i0 = marked_index(&components);
        Ok(RationalPath { components, i0 })
    }

    pub fn components(&self) -> &[LaurentPoly] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// 0-based index of the component of minimal order (smallest index on ties).
    pub fn i0(&self) -> usize {
        self.i0
    }

    /// Orders of the components; `None` for zero components.
    pub fn orders(&self) -> Vec<Option<i64>> {
        self.components.iter().map(LaurentPoly::ord).collect()
    }

    /// Minimal order over the nonzero components.
    pub fn min_order(&self) -> Option<i64> {
        self.components[self.i0].ord()
    }

    pub fn reparametrize(&self, s: u32) -> RationalPath {
        RationalPath::new(self.components.iter().map(|c| c.reparametrize(s)).collect())
            .expect("nonempty")
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(format_laurent).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for RationalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn marked_index(components: &[LaurentPoly]) -> usize {
    let mut best: Option<(i64, usize)> = None;
    for (i, c) in components.iter().enumerate() {
        if let Some(o) = c.ord() {
            if best.is_none_or(|(b, _)| o < b) {
                best = Some((o, i));
            }
        }
    }
    best.map_or(0, |(_, i)| i)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    fn flipped(self) -> Relation {
        match self {
            Relation::Lt => Relation::Gt,
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
            Relation::Gt => Relation::Lt,
        }
    }

    /// Whether `v REL 0` holds (no tolerance).
    pub fn holds_f64(self, v: f64) -> bool {
        match self {
            Relation::Lt => v < 0.0,
            Relation::Le => v <= 0.0,
            Relation::Eq => v == 0.0,
            Relation::Ge => v >= 0.0,
            Relation::Gt => v > 0.0,
        }
    }

    pub fn holds(self, v: &Rat) -> bool {
        match self {
            Relation::Lt => v.is_negative(),
            Relation::Le => !v.is_positive(),
            Relation::Eq => v.is_zero(),
            Relation::Ge => !v.is_negative(),
            Relation::Gt => v.is_positive(),
        }
    }
}

/// An atom `p REL 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub poly: MPoly,
    pub rel: Relation,
}

impl Atom {
    /// Normal form: primitive polynomial with positive leading coefficient.
    pub fn new(poly: MPoly, rel: Relation) -> Atom {
        if poly.is_zero() {
            return Atom { poly, rel };
        }
        let p = poly.primitive();
        let same_sign = (p.leading_coeff().unwrap() / poly.leading_coeff().unwrap()).is_positive();
        Atom {
            poly: p,
            rel: if same_sign { rel } else { rel.flipped() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Atom(Atom),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn eval(&self, x: &[Rat]) -> bool {
        match self {
            Formula::Atom(a) => a.rel.holds(&a.poly.eval(x)),
            Formula::And(cs) => cs.iter().all(|c| c.eval(x)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval(x)),
        }
    }

    pub fn eval_f64(&self, x: &[f64]) -> bool {
        match self {
            Formula::Atom(a) => a.rel.holds_f64(a.poly.eval_f64(x)),
            Formula::And(cs) => cs.iter().all(|c| c.eval_f64(x)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval_f64(x)),
        }
    }

    /// Disjunctive normal form as a list of conjunctions of atoms.
    pub fn dnf(&self) -> Vec<Vec<Atom>> {
        match self {
            Formula::Atom(a) => vec![vec![a.clone()]],
            Formula::Or(cs) => cs.iter().flat_map(Formula::dnf).collect(),
            Formula::And(cs) => {
                let mut acc: Vec<Vec<Atom>> = vec![Vec::new()];
                for c in cs {
                    let d = c.dnf();
                    acc = acc
                        .iter()
                        .flat_map(|l| {
                            d.iter().map(move |r| {
                                let mut v = l.clone();
                                v.extend(r.iter().cloned());
                                v
                            })
                        })
                        .collect();
                }
                acc
            }
        }
    }

    fn write(&self, names: &[String], top: bool, out: &mut String) {
        match self {
            Formula::Atom(a) => {
                out.push_str(&format_poly(&a.poly, names));
                out.push(' ');
                out.push_str(a.rel.symbol());
                out.push_str(" 0");
            }
            Formula::And(cs) | Formula::Or(cs) => {
                let sep = if matches!(self, Formula::And(_)) {
                    " and "
                } else {
                    " or "
                };
                if !top {
                    out.push('(');
                }
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(sep);
                    }
                    c.write(names, false, out);
                }
                if !top {
                    out.push(')');
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemialgebraicSet {
    pub n: usize,
    pub formula: Formula,
}

impl SemialgebraicSet {
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.formula.eval(x)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("set R^{} : ", self.n);
        self.formula.write(&affine_names(self.n), true, &mut s);
        s
    }
}

impl fmt::Display for SemialgebraicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// ---------------------------------------------------------------------------

/// `map R^n -> R^m :` header, if present.
fn header(c: &mut Cursor, kw: Tok) -> std::result::Result<Option<(usize, Option<usize>)>, ParseError> {
    if !c.eat(&kw) {
        return Ok(None);
    }
    let space = |c: &mut Cursor| -> std::result::Result<usize, ParseError> {
        let pos = c.pos();
        match c.peek().clone() {
            Tok::Ident(s) if s == "R" => {
                c.bump();
            }
            other => return Err(err(pos, format!("expected `R`, found {}", other.describe()))),
        }
        c.expect(&Tok::Caret, "`^`")?;
        c.expect_uint("a dimension")
    };
    let n = space(c)?;
    let m = if kw == Tok::Map {
        c.expect(&Tok::Arrow, "`->`")?;
        Some(space(c)?)
    } else {
        None
    };
    c.expect(&Tok::Colon, "`:`")?;
    Ok(Some((n, m)))
}

fn check_dim(e: &Expr, n: usize, declared: bool) -> std::result::Result<(), ParseError> {
    let k = e.max_var()?;
    if declared && k > n {
        return Err(err(
            e.pos,
            format!("expression uses x{k}, but the domain was declared as R^{n}"),
        ));
    }
    Ok(())
}

fn tuple(c: &mut Cursor) -> std::result::Result<Vec<Expr>, ParseError> {
    c.expect(&Tok::LParen, "`(`")?;
    let mut out = vec![c.expr()?];
    while c.eat(&Tok::Comma) {
        out.push(c.expr()?);
    }
    c.expect(&Tok::RParen, "`)` or `,`")?;
    Ok(out)
}

/// Parses `[map R^n -> R^m :] (e1, ..., em) [/ e0]`. Components may themselves be quotients;
/// they are brought to a common denominator. The result is gcd-reduced.
pub fn parse_map(text: &str) -> Result<RegularMap> {
    let toks = lex(text)?;
    let mut c = Cursor::new(&toks);
    let head = header(&mut c, Tok::Map)?;
    let start = c.pos();
    let comps = tuple(&mut c)?;
    let den = if c.eat(&Tok::Slash) {
        Some(c.expr()?)
    } else {
        None
    };
    c.expect_eof()?;

    let mut n = 1;
    for e in comps.iter().chain(den.iter()) {
        check_dim(e, head.map_or(0, |h| h.0), head.is_some())?;
        n = n.max(e.max_var()?);
    }
    if let Some((hn, hm)) = head {
        n = hn;
        if hn == 0 {
            return Err(err(start, "domain dimension must be positive").into());
        }
        if let Some(hm) = hm {
            if hm != comps.len() {
                return Err(Error::Arity {
                    expected: hm,
                    found: comps.len(),
                });
            }
        }
    }

    let rfs = comps
        .iter()
        .map(|e| eval_ratfunc(e, n))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut f0 = MPoly::one(n);
    for r in &rfs {
        f0 = lcm(&f0, &r.den);
    }
    let mut fs: Vec<MPoly> = rfs
        .iter()
        .map(|r| &r.num * &f0.div_exact(&r.den).expect("lcm is a multiple"))
        .collect();
    if let Some(d) = den {
        let r = eval_ratfunc(&d, n)?;
        if r.num.is_zero() {
            return Err(err(d.pos, "denominator is zero").into());
        }
        // (fs / f0) / (num / den) = (fs * den) / (f0 * num)
        fs = fs.iter().map(|f| f * &r.den).collect();
        f0 = &f0 * &r.num;
    }
    RegularMap::new(f0, fs)?.reduce()
}

fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
    let g = crate::polyring::gcd(a, b);
    (a * b).div_exact(&g).expect("gcd divides").primitive()
}

/// Parses `(L1, ..., Ln)` with Laurent polynomials in `t`.
pub fn parse_path(text: &str) -> Result<RationalPath> {
    let toks = lex(text)?;
    let mut c = Cursor::new(&toks);
    let comps = tuple(&mut c)?;
    c.expect_eof()?;
    let ls = comps
        .iter()
        .map(eval_laurent)
        .collect::<std::result::Result<Vec<_>, _>>()?;
    RationalPath::new(ls)
}

/// Parses `[set R^n :] formula` where formulas combine `expr REL expr` atoms with `and`,
/// `or` and parentheses. Chains such as `0 <= x <= 1` split into a conjunction.
pub fn parse_set(text: &str) -> Result<SemialgebraicSet> {
    let toks = lex(text)?;
    let mut c = Cursor::new(&toks);
    let head = header(&mut c, Tok::Set)?;
    let raw = or_formula(&mut c)?;
    c.expect_eof()?;
    let mut n = 1;
    visit_exprs(&raw, &mut |e| {
        check_dim(e, head.map_or(0, |h| h.0), head.is_some())?;
        n = n.max(e.max_var()?);
        Ok(())
    })?;
    if let Some((hn, _)) = head {
        n = hn;
    }
    let formula = lower(&raw, n)?;
    Ok(SemialgebraicSet { n, formula })
}

enum RawFormula {
    Chain(Vec<Expr>, Vec<(Relation, Pos)>),
    And(Vec<RawFormula>),
    Or(Vec<RawFormula>),
}

fn visit_exprs(
    f: &RawFormula,
    g: &mut dyn FnMut(&Expr) -> std::result::Result<(), ParseError>,
) -> std::result::Result<(), ParseError> {
    match f {
        RawFormula::Chain(es, _) => es.iter().try_for_each(&mut *g),
        RawFormula::And(cs) | RawFormula::Or(cs) => cs.iter().try_for_each(|c| visit_exprs(c, g)),
    }
}

fn relation(t: &Tok) -> Option<Relation> {
    Some(match t {
        Tok::Lt => Relation::Lt,
        Tok::Le => Relation::Le,
        Tok::Eq => Relation::Eq,
        Tok::Ge => Relation::Ge,
        Tok::Gt => Relation::Gt,
        _ => return None,
    })
}

fn or_formula(c: &mut Cursor) -> std::result::Result<RawFormula, ParseError> {
    let mut parts = vec![and_formula(c)?];
    while c.eat(&Tok::Or) {
        parts.push(and_formula(c)?);
    }
    Ok(if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        RawFormula::Or(parts)
    })
}

fn and_formula(c: &mut Cursor) -> std::result::Result<RawFormula, ParseError> {
    let mut parts = vec![primary_formula(c)?];
    while c.eat(&Tok::And) {
        parts.push(primary_formula(c)?);
    }
    Ok(if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        RawFormula::And(parts)
    })
}

fn primary_formula(c: &mut Cursor) -> std::result::Result<RawFormula, ParseError> {
    if *c.peek() == Tok::LParen {
        // Either a parenthesized formula or an arithmetic expression such as `(x+1)^2 >= 0`.
        let save = c.i;
        c.bump();
        if let Ok(inner) = or_formula(c) {
            if c.eat(&Tok::RParen) && !continues_expression(c.peek()) {
                return Ok(inner);
            }
        }
        c.i = save;
    }
    chain(c)
}

fn continues_expression(t: &Tok) -> bool {
    matches!(
        t,
        Tok::Plus
            | Tok::Minus
            | Tok::Star
            | Tok::Slash
            | Tok::Caret
            | Tok::LParen
            | Tok::Ident(_)
            | Tok::Num(_)
            | Tok::Lt
            | Tok::Le
            | Tok::Eq
            | Tok::Ge
            | Tok::Gt
    )
}

fn chain(c: &mut Cursor) -> std::result::Result<RawFormula, ParseError> {
    let mut es = vec![c.expr()?];
    let mut rels = Vec::new();
    while let Some(r) = relation(c.peek()) {
        let pos = c.pos();
        c.bump();
        rels.push((r, pos));
        es.push(c.expr()?);
    }
    if rels.is_empty() {
        return Err(err(
            c.pos(),
            format!(
                "expected a relation (<, <=, =, >=, >), found {}",
                c.peek().describe()
            ),
        ));
    }
    Ok(RawFormula::Chain(es, rels))
}

fn lower(f: &RawFormula, n: usize) -> std::result::Result<Formula, ParseError> {
    Ok(match f {
        RawFormula::Chain(es, rels) => {
            let mut atoms = Vec::new();
            for (i, (rel, _)) in rels.iter().enumerate() {
                let lhs = eval_poly(&es[i], n)?;
                let rhs = eval_poly(&es[i + 1], n)?;
                atoms.push(Formula::Atom(Atom::new(&lhs - &rhs, *rel)));
            }
            if atoms.len() == 1 {
                atoms.pop().unwrap()
            } else {
                Formula::And(atoms)
            }
        }
        RawFormula::And(cs) => {
            let mut out = Vec::new();
            for c in cs {
                // chains are flattened into the surrounding conjunction
                match (c, lower(c, n)?) {
                    (RawFormula::Chain(..), Formula::And(inner)) => out.extend(inner),
                    (_, other) => out.push(other),
                }
            }
            Formula::And(out)
        }
        RawFormula::Or(cs) => Formula::Or(cs.iter().map(|c| lower(c, n)).collect::<std::result::Result<_, _>>()?),
    })
}

/// Seeded random polynomial map `R^n -> R^m`. Each component has total degree drawn from
/// `1..=max_degree` (at least 2 when `max_degree >= 2`) and integer coefficients in `[-3, 3]`.
pub fn random_polynomial_map(seed: u64, n: usize, m: usize, max_degree: u32) -> RegularMap {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let low = if max_degree >= 2 { 2 } else { 1 };
    let fs = (0..m)
        .map(|_| {
            let deg = rng.gen_range(low..=max_degree.max(1));
            let mut terms = Vec::new();
            for exps in monomials_up_to(n, deg) {
                let c: i64 = rng.gen_range(-3..=3);
                if c != 0 {
                    terms.push((exps, crate::polyring::rat(c)));
                }
            }
            let mut p = MPoly::from_terms(n, terms);
            if p.total_degree().finite() != Some(deg) {
                let mut top = vec![0; n];
                top[rng.gen_range(0..n)] = deg;
                p = &p + &MPoly::from_terms(n, [(top, crate::polyring::rat(1))]);
            }
            p
        })
        .collect();
    RegularMap::polynomial(n, fs).expect("nonzero components")
}

fn monomials_up_to(n: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=deg - used).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// Looks for a real zero of the denominator on a small rational grid and along a few
/// lines. Nonvanishing of `f0` on `R^n` is not decided here; this only catches obvious
/// mistakes.
pub fn denominator_warnings(f: &RegularMap) -> Vec<String> {
    if f.f0.is_constant() {
        return Vec::new();
    }
    let n = f.n;
    let vals: Vec<Rat> = [-3i64, -2, -1, 0, 1, 2, 3]
        .iter()
        .flat_map(|&v| [Rat::from_integer(v.into()), crate::polyring::ratio(v, 2)])
        .collect();
    let mut idx = vec![0usize; n];
    let mut sign = 0i32;
    let total = vals.len().pow(n.min(4) as u32);
    for _ in 0..total {
        let pt: Vec<Rat> = (0..n).map(|i| vals[idx.get(i).copied().unwrap_or(0)].clone()).collect();
        let v = f.f0.eval(&pt);
        if v.is_zero() {
            let shown: Vec<String> = pt.iter().map(crate::polyring::rat_to_string).collect();
            return vec![format!(
                "denominator vanishes at ({}); the map is not regular there",
                shown.join(", ")
            )];
        }
        let s = if v.is_positive() { 1 } else { -1 };
        if sign != 0 && s != sign {
            return vec!["denominator changes sign on R^n, so it has a real zero".to_string()];
        }
        sign = s;
        for d in idx.iter_mut().take(n.min(4)) {
            *d += 1;
            if *d < vals.len() {
                break;
            }
            *d = 0;
        }
    }
    Vec::new()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    #[test]
    fn polynomial_map() {
        let f = parse_map("(x, y^2+x^2)").unwrap();
        assert_eq!((f.n(), f.m()), (2, 2));
        assert!(f.f0().is_constant());
        assert_eq!(f.to_text(), "map R^2 -> R^2 : (x, x^2 + y^2)");
    }

    #[test]
    fn common_denominator() {
        let f = parse_map("((x^2)(1+x^2), (y^2)(1+y^2)) / ((1+x^2)(1+y^2))").unwrap();
        assert_eq!(f.f0().total_degree().unwrap(), 4);
        let g = parse_map("(1/(1+x^2), 1+x^2)").unwrap();
        assert_eq!(g.f0().total_degree().unwrap(), 2);
        assert_eq!(g.fs()[1].total_degree().unwrap(), 4);
    }

    #[test]
    fn gcd_is_removed() {
        let f = parse_map("(x*(1+y^2), y*(1+y^2)) / (1+y^2)").unwrap();
        assert!(f.is_polynomial());
        assert!(f.is_reduced());
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse_map("(x^2, y^2) / (1+ )").unwrap_err();
        match e {
            Error::Parse(p) => assert_eq!(p.pos, Pos { line: 1, col: 18 }),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_map("map R^2 -> R^3 : (x, y)"),
            Err(Error::Arity { .. })
        ));
        assert!(parse_map("map R^1 -> R^1 : (y)").is_err());
    }

    #[test]
    fn paths() {
        let p = parse_path("(2/t, 1/t)").unwrap();
        assert_eq!(p.orders(), vec![Some(-1), Some(-1)]);
        assert_eq!(p.i0(), 0);
        let q = parse_path("(1, 1)").unwrap();
        assert_eq!(q.min_order(), Some(0));
        let e = parse_path("(1/(1+t))").unwrap_err();
        assert!(e.to_string().contains("denominator not a monomial"));
        let r = parse_path("(0, t^-2)").unwrap();
        assert_eq!(r.i0(), 1);
    }

    #[test]
    fn sets() {
        let s = parse_set("(0 <= x and x <= 1 and 0 <= y) or (0 <= y and y <= x)").unwrap();
        assert_eq!(s.n, 2);
        assert!(s.contains(&[rat(5), rat(1)]));
        assert!(!s.contains(&[rat(-1), rat(1)]));
        let t = parse_set("x = x").unwrap();
        assert!(t.contains(&[rat(7)]));
        let r = parse_set("x*y = 1 and y >= 1").unwrap();
        assert!(r.contains(&[rat(1), rat(1)]));
        let p = parse_set("(x+1)^2 >= 0").unwrap();
        assert!(matches!(p.formula, Formula::Atom(_)));
        let c = parse_set("0 <= x <= 1").unwrap();
        assert_eq!(c.to_text(), "set R^1 : x >= 0 and x - 1 <= 0");
    }

    #[test]
    fn canonical_round_trips() {
        for src in [
            "map R^2 -> R^2 : (x^2 - 2*x*y + 1/3, y) / (x^2 + 1)",
            "map R^3 -> R^1 : (x*z)",
        ] {
            assert_eq!(parse_map(src).unwrap().to_text(), src);
        }
        for src in ["(2*t + t^-3, 0)", "(-t^-1, 1)"] {
            assert_eq!(parse_path(src).unwrap().to_text(), src);
        }
        for src in [
            "set R^2 : (x >= 0 and x - 1 <= 0) or y > 0",
            "set R^2 : x*y - 1 = 0 and y - 1 >= 0",
        ] {
            assert_eq!(parse_set(src).unwrap().to_text(), src);
        }
    }

    #[test]
    fn denominator_falsifier() {
        let bad = parse_map("(x) / (x^2 - 1)").unwrap();
        assert!(!denominator_warnings(&bad).is_empty());
        let good = parse_map("(x) / (x^2 + 1)").unwrap();
        assert!(denominator_warnings(&good).is_empty());
    }
}
