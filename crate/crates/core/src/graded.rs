//! Free graded-commutative algebras over the polynomial ring.
//!
//! A [`GradedContext`] fixes the base coordinates (degree 0, living in the
//! polynomial coefficients) and a list of graded generators. Generators are
//! kept sorted by `(degree, name)`, names compared so that `q_2 < q_10`.
//! Moving `g` past `h` costs `(-1)^{|g||h|}`; a [`GradedElement`] stores every
//! monomial in sorted order with that sign folded into its coefficient.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{self, parse::parse_expr, Polynomial, Rational, Vars};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// Compare names treating embedded digit runs as numbers.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(&cb) {
        let ord = if *da && *db {
            let ta = sa.trim_start_matches('0');
            let tb = sb.trim_start_matches('0');
            ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb))
        } else {
            sa.cmp(sb)
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

/// Base coordinates plus an ordered list of graded generators.
#[derive(Debug, PartialEq, Eq)]
pub struct GradedContext {
    vars: Vars,
    gens: Vec<Generator>,
}

/// Shared handle; elements over the same context hold clones of one `Arc`.
pub type Ctx = Arc<GradedContext>;

impl GradedContext {
    /// Degree-0 generators are rejected: degree-0 content belongs in `vars`.
    pub fn new(vars: Vars, mut gens: Vec<Generator>) -> Result<Ctx> {
        for g in &gens {
            if g.degree == 0 {
                return Err(Error::DegreeMismatch {
                    expected: 0,
                    found: format!("generator `{}` has degree 0; use a base coordinate", g.name),
                });
            }
            if vars.contains(&g.name) {
                return Err(Error::ContextMismatch(format!(
                    "name `{}` is both a coordinate and a generator",
                    g.name
                )));
            }
        }
        gens.sort_by(|a, b| {
            a.degree
                .cmp(&b.degree)
                .then_with(|| natural_cmp(&a.name, &b.name))
        });
        for w in gens.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::ContextMismatch(format!(
                    "duplicate generator `{}`",
                    w[0].name
                )));
            }
        }
        Ok(Arc::new(GradedContext { vars, gens }))
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        poly::index_of(&self.vars, name)
    }
}

/// Degree report for an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    /// The zero element, homogeneous of every degree.
    Zero,
    Homogeneous(i32),
    Mixed,
}

/// Exponent vector over the generators of a context, in context order.
pub type GenMonomial = Vec<u32>;

#[derive(Clone, Debug)]
pub struct GradedElement {
    ctx: Ctx,
    terms: BTreeMap<GenMonomial, Polynomial>,
}

fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GradedElement {
    pub fn zero(ctx: &Ctx) -> Self {
        GradedElement {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_poly(ctx: &Ctx, p: &Polynomial) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(vec![0; ctx.gens.len()], p.embed(&ctx.vars).expect("coefficient outside context"));
        e
    }

    pub fn from_rational(ctx: &Ctx, c: Rational) -> Self {
        Self::from_poly(ctx, &Polynomial::constant(&ctx.vars, c))
    }

    pub fn from_int(ctx: &Ctx, c: i64) -> Self {
        Self::from_rational(ctx, poly::rat(c))
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn generator(ctx: &Ctx, idx: usize) -> Self {
        let mut m = vec![0; ctx.gens.len()];
        m[idx] = 1;
        let mut e = Self::zero(ctx);
        e.add_term(m, Polynomial::one(&ctx.vars));
        e
    }

    /// Generator or base coordinate by name.
    pub fn named(ctx: &Ctx, name: &str) -> Result<Self> {
        if let Some(i) = ctx.gen_index(name) {
            Ok(Self::generator(ctx, i))
        } else if let Some(i) = ctx.var_index(name) {
            Ok(Self::from_poly(ctx, &Polynomial::var(&ctx.vars, i)))
        } else {
            Err(Error::UnknownVariable {
                name: name.to_string(),
                offset: 0,
            })
        }
    }

    /// `coeff * monomial` for a monomial already in sorted form.
    pub fn monomial(ctx: &Ctx, m: GenMonomial, coeff: Polynomial) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(m, coeff.embed(&ctx.vars).expect("coefficient outside context"));
        e
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GenMonomial, &Polynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of one sorted monomial (zero if absent).
    pub fn coefficient(&self, m: &[u32]) -> Polynomial {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.ctx.vars))
    }

    fn add_term(&mut self, m: GenMonomial, c: Polynomial) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m
            .iter()
            .zip(&self.ctx.gens)
            .all(|(&k, g)| !g.is_odd() || k <= 1));
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn monomial_degree(&self, m: &[u32]) -> i32 {
        m.iter()
            .zip(&self.ctx.gens)
            .map(|(&k, g)| k as i32 * g.degree)
            .sum()
    }

    pub fn degree(&self) -> Degree {
        let mut d = None;
        for m in self.terms.keys() {
            let k = self.monomial_degree(m);
            match d {
                None => d = Some(k),
                Some(prev) if prev != k => return Degree::Mixed,
                _ => {}
            }
        }
        d.map_or(Degree::Zero, Degree::Homogeneous)
    }

    /// Homogeneous component of degree `k`.
    pub fn component(&self, k: i32) -> Self {
        self.filter(|m| self.monomial_degree(m) == k)
    }

    /// Keep terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> Self {
        GradedElement {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Set the listed generators to zero.
    pub fn kill_generators(&self, idxs: &[usize]) -> Self {
        self.filter(|m| idxs.iter().all(|&i| m[i] == 0))
    }

    pub fn map_coefficients(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coefficients(|p| p.scale(c))
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&poly::rat(c))
    }

    pub fn scale_poly(&self, p: &Polynomial) -> Self {
        self.map_coefficients(|c| c * p)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(
                "graded elements live over different generator contexts".into(),
            ))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Graded-commutative product with Koszul signs.
    pub fn gmul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let gens = &self.ctx.gens;
        let mut out = Self::zero(&self.ctx);
        for (a, ca) in &self.terms {
            'pair: for (b, cb) in &other.terms {
                // move each generator of `b` left past the larger ones of `a`
                let mut parity = 0u32;
                let mut m = a.clone();
                for i in 0..gens.len() {
                    if b[i] == 0 {
                        continue;
                    }
                    if gens[i].is_odd() {
                        if a[i] > 0 {
                            continue 'pair;
                        }
                        let later: u32 = (i + 1..gens.len())
                            .filter(|&j| gens[j].is_odd())
                            .map(|j| a[j])
                            .sum();
                        parity += b[i] * later;
                    }
                    m[i] += b[i];
                }
                let c = ca * cb;
                out.add_term(m, if parity % 2 == 1 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Derivative in a base coordinate.
    pub fn partial_var(&self, idx: usize) -> Self {
        self.map_coefficients(|c| c.partial_derivative(idx))
    }

    fn gen_derivative(&self, j: usize, from_left: bool) -> Self {
        let gens = &self.ctx.gens;
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let k = m[j];
            if k == 0 {
                continue;
            }
            let mut sign_odd = false;
            if gens[j].is_odd() {
                let range: Box<dyn Iterator<Item = usize>> = if from_left {
                    Box::new(0..j)
                } else {
                    Box::new(j + 1..gens.len())
                };
                let passed: u32 = range.filter(|&i| gens[i].is_odd()).map(|i| m[i]).sum();
                sign_odd = passed % 2 == 1;
            }
            let mut m2 = m.clone();
            m2[j] -= 1;
            let mut c2 = c.scale_int(k as i64);
            if sign_odd {
                c2 = -c2;
            }
            out.add_term(m2, c2);
        }
        out
    }

    /// Left derivative: strip the generator after moving it to the front.
    pub fn left_derivative(&self, j: usize) -> Self {
        self.gen_derivative(j, true)
    }

    /// Right derivative: strip the generator after moving it to the back.
    pub fn right_derivative(&self, j: usize) -> Self {
        self.gen_derivative(j, false)
    }

    /// Re-express over a context containing all names this element uses.
    pub fn embed(&self, target: &Ctx) -> Result<Self> {
        if same_ctx(&self.ctx, target) {
            return Ok(GradedElement {
                ctx: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            // rebuild the monomial in the target order, product of generators
            let mut acc = Self::from_poly(target, c);
            for (i, &k) in m.iter().enumerate() {
                let g = &self.ctx.gens[i];
                let Some(t) = target.gen_index(&g.name) else {
                    if k == 0 {
                        continue;
                    }
                    return Err(Error::ContextMismatch(format!(
                        "generator `{}` is not available in the target context",
                        g.name
                    )));
                };
                if target.gens[t].degree != g.degree {
                    return Err(Error::ContextMismatch(format!(
                        "generator `{}` changes degree between contexts",
                        g.name
                    )));
                }
                for _ in 0..k {
                    acc = acc.gmul(&Self::generator(target, t))?;
                }
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    /// Printable factors for one monomial, in context order.
    pub fn monomial_factors(&self, m: &[u32]) -> Vec<String> {
        m.iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                let n = &self.ctx.gens[i].name;
                if k == 1 {
                    n.clone()
                } else {
                    format!("{n}^{k}")
                }
            })
            .collect()
    }
}

impl PartialEq for GradedElement {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = &self.ctx.vars;
        let mut flat = Vec::new();
        for (m, c) in &self.terms {
            let gf = self.monomial_factors(m);
            for (pm, k) in c.terms().rev() {
                let mut fs = poly::monomial_factors(vars, pm);
                fs.extend(gf.iter().cloned());
                flat.push((k, fs));
            }
        }
        poly::fmt_sum(f, flat)
    }
}

/// Parse an expression whose names are base coordinates or generators.
pub fn parse_graded(src: &str, ctx: &Ctx) -> Result<GradedElement> {
    parse_expr(src)?.fold(
        &|r| GradedElement::from_rational(ctx, r.clone()),
        &|name, offset| {
            GradedElement::named(ctx, name).map_err(|_| Error::UnknownVariable {
                name: name.to_string(),
                offset,
            })
        },
        &|a, b| &a + &b,
        &|a, b| &a * &b,
        &|a| -a,
    )
}

// Operator forms panic on a context mismatch; use the `try_` methods when the
// contexts are not known to agree.
impl Add for &GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: &GradedElement) -> GradedElement {
        self.try_add(rhs).expect("context mismatch")
    }
}

impl Sub for &GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: &GradedElement) -> GradedElement {
        self.try_sub(rhs).expect("context mismatch")
    }
}

impl Mul for &GradedElement {
    type Output = GradedElement;
    fn mul(self, rhs: &GradedElement) -> GradedElement {
        self.gmul(rhs).expect("context mismatch")
    }
}

impl Neg for &GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        self.map_coefficients(|c| -c)
    }
}

impl Neg for GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for GradedElement {
            type Output = GradedElement;
            fn $f(self, rhs: GradedElement) -> GradedElement {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&GradedElement> for GradedElement {
            type Output = GradedElement;
            fn $f(self, rhs: &GradedElement) -> GradedElement {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Where a coordinate lives in a graded context.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coord {
    Var(usize),
    Gen(usize),
}

impl Coord {
    pub fn lookup(ctx: &Ctx, name: &str) -> Option<Coord> {
        ctx.gen_index(name)
            .map(Coord::Gen)
            .or_else(|| ctx.var_index(name).map(Coord::Var))
    }

    pub fn name<'a>(&self, ctx: &'a Ctx) -> &'a str {
        match *self {
            Coord::Var(i) => &ctx.vars()[i],
            Coord::Gen(j) => &ctx.gens()[j].name,
        }
    }

    pub fn element(&self, ctx: &Ctx) -> GradedElement {
        match *self {
            Coord::Var(i) => GradedElement::from_poly(ctx, &Polynomial::var(ctx.vars(), i)),
            Coord::Gen(j) => GradedElement::generator(ctx, j),
        }
    }

    /// Left derivative in this coordinate.
    pub fn derive(&self, f: &GradedElement) -> GradedElement {
        match *self {
            Coord::Var(i) => f.partial_var(i),
            Coord::Gen(j) => f.left_derivative(j),
        }
    }
}

/// A derivation given by its values on coordinates: `X = Σ X(c) ∂⃗/∂c`.
#[derive(Clone, Debug)]
pub struct VectorField {
    ctx: Ctx,
    images: Vec<(Coord, GradedElement)>,
}

impl VectorField {
    pub fn zero(ctx: &Ctx) -> Self {
        VectorField {
            ctx: ctx.clone(),
            images: Vec::new(),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    /// Set the value on one coordinate.
    pub fn set(&mut self, c: Coord, value: GradedElement) {
        self.images.retain(|(k, _)| *k != c);
        if !value.is_zero() {
            self.images.push((c, value));
        }
    }

    pub fn image(&self, c: Coord) -> GradedElement {
        self.images
            .iter()
            .find(|(k, _)| *k == c)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| GradedElement::zero(&self.ctx))
    }

    pub fn apply(&self, f: &GradedElement) -> Result<GradedElement> {
        let f = f.embed(&self.ctx)?;
        let mut out = GradedElement::zero(&self.ctx);
        for (c, v) in &self.images {
            let d = c.derive(&f);
            if !d.is_zero() {
                out = out.try_add(&v.gmul(&d)?)?;
            }
        }
        Ok(out)
    }

    /// `X(X(c))` for every coordinate `c` of the context, nonzero ones only.
    pub fn square_on_coordinates(&self) -> Result<Vec<(String, GradedElement)>> {
        let mut coords: Vec<Coord> = (0..self.ctx.vars().len()).map(Coord::Var).collect();
        coords.extend((0..self.ctx.gens().len()).map(Coord::Gen));
        let mut out = Vec::new();
        for c in coords {
            let v = self.apply(&self.image(c))?;
            if !v.is_zero() {
                out.push((c.name(&self.ctx).to_string(), v));
            }
        }
        Ok(out)
    }
}

/// `count` names `prefix_1, …` avoiding `taken`; underscores are appended to
/// the prefix until nothing collides.
pub fn fresh_names(prefix: &str, count: usize, taken: &[String]) -> Vec<String> {
    let mut p = prefix.to_string();
    loop {
        let names: Vec<String> = (1..=count).map(|i| format!("{p}_{i}")).collect();
        if names.iter().all(|n| !taken.contains(n)) {
            return names;
        }
        p.push('_');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars;

    fn ctx() -> Ctx {
        GradedContext::new(
            vars(["x1", "x2"]),
            vec![
                Generator::new("q1", 1),
                Generator::new("q2", 1),
                Generator::new("eta1", 2),
                Generator::new("eta2", 2),
            ],
        )
        .unwrap()
    }

    fn g(src: &str) -> GradedElement {
        parse_graded(src, &ctx()).unwrap()
    }

    #[test]
    fn odd_generators_anticommute() {
        assert_eq!(g("q2*q1"), -g("q1*q2"));
        assert!(g("q1*q1").is_zero());
        assert!((g("eta1*eta2") - g("eta2*eta1")).is_zero());
        assert_eq!(g("eta1*eta1").to_string(), "eta1^2");
    }

    #[test]
    fn degrees() {
        assert_eq!(g("x1*q1*q2").degree(), Degree::Homogeneous(2));
        assert_eq!(g("x1 + q1").degree(), Degree::Mixed);
        assert_eq!(g("0").degree(), Degree::Zero);
        assert_eq!(g("q1*eta2").degree(), Degree::Homogeneous(3));
    }

    #[test]
    fn natural_name_order() {
        assert_eq!(natural_cmp("q_2", "q_10"), Ordering::Less);
        assert_eq!(natural_cmp("q10", "q9"), Ordering::Greater);
        assert_eq!(natural_cmp("a", "b"), Ordering::Less);
        let c = GradedContext::new(
            vars(["x"]),
            vec![Generator::new("q_10", 1), Generator::new("q_2", 1), Generator::new("h", -1)],
        )
        .unwrap();
        let names: Vec<_> = c.gens().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["h", "q_2", "q_10"]);
    }

    #[test]
    fn rejects_degree_zero_and_duplicates() {
        assert!(GradedContext::new(vars(["x"]), vec![Generator::new("z", 0)]).is_err());
        assert!(GradedContext::new(vars(["x"]), vec![Generator::new("x", 1)]).is_err());
        assert!(GradedContext::new(
            vars(["x"]),
            vec![Generator::new("q", 1), Generator::new("q", 1)]
        )
        .is_err());
    }

    #[test]
    fn left_and_right_derivatives() {
        // q1*q2: moving q2 to the front costs a sign, to the back does not
        let e = g("q1*q2");
        assert_eq!(e.left_derivative(1), -g("q1"));
        assert_eq!(e.right_derivative(1), g("q1"));
        assert_eq!(e.left_derivative(0), g("q2"));
        assert_eq!(e.right_derivative(0), -g("q2"));
        assert_eq!(g("x1*eta1^3").left_derivative(2), g("3*x1*eta1^2"));
    }

    #[test]
    fn print_parse_roundtrip() {
        let e = g("(x1 + 2)*q2*q1 - 3/2*x2^2*eta1 + q1*eta2");
        assert_eq!(parse_graded(&e.to_string(), &ctx()).unwrap(), e);
    }

    #[test]
    fn vector_field_is_a_derivation() {
        let c = ctx();
        let mut x = VectorField::zero(&c);
        x.set(Coord::Gen(c.gen_index("q1").unwrap()), g("x1*eta1"));
        x.set(Coord::Var(0), g("q2"));
        // X(x1 q1) = q2 q1 + x1 * x1 eta1
        assert_eq!(x.apply(&g("x1*q1")).unwrap(), g("q2*q1 + x1^2*eta1"));
        assert_eq!(fresh_names("q", 2, &["q_1".to_string()]), ["q__1", "q__2"]);
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let other = GradedContext::new(vars(["x1"]), vec![Generator::new("q1", 1)]).unwrap();
        let a = g("q1");
        let b = parse_graded("q1", &other).unwrap();
        assert!(matches!(a.gmul(&b), Err(Error::ContextMismatch(_))));
        assert_eq!(b.embed(&ctx()).unwrap(), a);
    }
}
