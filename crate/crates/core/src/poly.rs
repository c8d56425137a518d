//! Exact multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] carries its own ordered variable list. Binary operations on
//! polynomials over different lists embed both operands into the union list
//! (matching variables by name), so mixing coordinate systems never relies on
//! position.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic. A polynomial never stores a zero coefficient, so the
//! zero test is `terms.is_empty()`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use parse::parse_poly;

pub mod parse;

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shared, ordered list of variable names.
pub type Vars = Arc<[String]>;

/// Build a [`Vars`] list from anything yielding names.
pub fn vars<I, S>(names: I) -> Vars
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    names.into_iter().map(Into::into).collect::<Vec<_>>().into()
}

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`; panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense exponent vector, one entry per variable of the owning polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with rational coefficients in a named, ordered set of variables.
#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(vars: &Vars) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, rat(c))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_int(vars, 1)
    }

    /// The coordinate function of variable `idx`.
    pub fn var(vars: &Vars, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial(e), Rational::one());
        p
    }

    /// Coordinate function looked up by name.
    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        let idx = index_of(vars, name).ok_or_else(|| Error::UnknownVariable {
            name: name.to_string(),
            offset: 0,
        })?;
        Ok(Self::var(vars, idx))
    }

    /// Build from `(exponents, coefficient)` pairs; zero coefficients are dropped
    /// and repeated monomials are summed.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in one variable.
    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Re-express over `target`, which must contain every variable this
    /// polynomial actually uses.
    pub fn embed(&self, target: &Vars) -> Result<Self> {
        if Arc::ptr_eq(&self.vars, target) || self.vars[..] == target[..] {
            return Ok(Polynomial {
                vars: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| index_of(target, v)).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] += k,
                    None => {
                        return Err(Error::ContextMismatch(format!(
                            "variable `{}` is not available in the target context",
                            self.vars[i]
                        )))
                    }
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    fn aligned<'a>(
        &'a self,
        other: &'a Polynomial,
    ) -> (std::borrow::Cow<'a, Polynomial>, std::borrow::Cow<'a, Polynomial>) {
        use std::borrow::Cow;
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars[..] == other.vars[..] {
            return (Cow::Borrowed(self), Cow::Borrowed(other));
        }
        let union = union_vars(&self.vars, &other.vars);
        // embedding into a superset cannot fail
        (
            Cow::Owned(self.embed(&union).unwrap()),
            Cow::Owned(other.embed(&union).unwrap()),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&rat(c))
    }

    pub fn partial_derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let k = m.0[idx];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[idx] -= 1;
            out.add_term(Monomial(e), c * rat(k as i64));
        }
        out
    }

    /// Derivative with respect to a named variable; zero if the name is absent.
    pub fn derivative_by_name(&self, name: &str) -> Self {
        match index_of(&self.vars, name) {
            Some(i) => self.partial_derivative(i),
            None => Self::zero(&self.vars),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Set the listed variables to zero.
    pub fn substitute_zero(&self, idxs: &[usize]) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| idxs.iter().all(|&i| m.0[i] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluate at a rational point (one value per variable).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&m.0) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

pub(crate) fn index_of(vars: &[String], name: &str) -> Option<usize> {
    vars.iter().position(|v| v == name)
}

/// `a` followed by the names of `b` not already in `a`.
pub fn union_vars(a: &Vars, b: &Vars) -> Vars {
    let mut out: Vec<String> = a.to_vec();
    for v in b.iter() {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out.into()
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for Polynomial {}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (a, b) = self.aligned(rhs);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let (a, b) = self.aligned(rhs);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let (a, b) = self.aligned(rhs);
        let mut out = Polynomial::zero(&a.vars);
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        if Arc::ptr_eq(&self.vars, &rhs.vars) || self.vars[..] == rhs.vars[..] {
            for (m, c) in &rhs.terms {
                self.add_term(m.clone(), c.clone());
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        if Arc::ptr_eq(&self.vars, &rhs.vars) || self.vars[..] == rhs.vars[..] {
            for (m, c) in &rhs.terms {
                self.add_term(m.clone(), -c);
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Print a rational the way the expression grammar reads it back.
pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Joins `(coefficient, factor-list)` terms as `a*b - 3/2*c + 1`.
pub(crate) fn fmt_sum<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Rational, Vec<String>)>,
{
    let mut first = true;
    for (c, factors) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        if factors.is_empty() {
            write!(f, "{}", fmt_rational(&abs))?;
        } else if abs.is_one() {
            write!(f, "{}", factors.join("*"))?;
        } else {
            write!(f, "{}*{}", fmt_rational(&abs), factors.join("*"))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) fn monomial_factors(vars: &[String], m: &Monomial) -> Vec<String> {
    m.0.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                vars[i].clone()
            } else {
                format!("{}^{}", vars[i], k)
            }
        })
        .collect()
}

impl fmt::Display for Polynomial {
    /// Terms in descending graded-lex order, in the input grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(
            f,
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| (c, monomial_factors(&self.vars, m))),
        )
    }
}

/// Coefficient as `f64`, for diagnostics only.
pub fn approx(c: &Rational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v3() -> Vars {
        vars(["x1", "x2", "x3"])
    }

    #[test]
    fn power_rule() {
        let v = v3();
        let p = parse_poly("x1^2", &v).unwrap();
        assert_eq!(p.partial_derivative(0), parse_poly("2*x1", &v).unwrap());
    }

    #[test]
    fn zero_annihilates() {
        let v = v3();
        let p = parse_poly("x1*x2 + 3", &v).unwrap();
        assert!((&p * &Polynomial::zero(&v)).is_zero());
    }

    #[test]
    fn union_embedding_matches_by_name() {
        let a = parse_poly("x + y", &vars(["x", "y"])).unwrap();
        let b = parse_poly("y*z", &vars(["z", "y"])).unwrap();
        let s = &a * &b;
        assert_eq!(&s.vars()[..], &["x", "y", "z"]);
        let w = vars(["x", "y", "z"]);
        assert_eq!(s, parse_poly("x*y*z + y^2*z", &w).unwrap());
    }

    #[test]
    fn embed_rejects_missing_variable() {
        let a = parse_poly("x*y", &vars(["x", "y"])).unwrap();
        assert!(a.embed(&vars(["x"])).is_err());
        // a constant embeds anywhere
        let c = Polynomial::from_int(&vars(["x", "y"]), 5);
        assert_eq!(c.embed(&vars(["q"])).unwrap().as_constant(), Some(rat(5)));
    }

    #[test]
    fn display_is_grlex_descending() {
        let v = v3();
        let p = parse_poly("1 + x3 - 3/2*x1*x2 + x1^2", &v).unwrap();
        assert_eq!(p.to_string(), "x1^2 - 3/2*x1*x2 + x3 + 1");
        assert_eq!(Polynomial::zero(&v).to_string(), "0");
        assert_eq!(parse_poly("-x2", &v).unwrap().to_string(), "-x2");
    }

    #[test]
    fn substitute_and_eval() {
        let v = v3();
        let p = parse_poly("x1*x2 + x3^2 + 2", &v).unwrap();
        assert_eq!(p.substitute_zero(&[0]), parse_poly("x3^2 + 2", &v).unwrap());
        assert_eq!(p.eval(&[rat(1), rat(2), ratio(1, 2)]), ratio(17, 4));
    }
}
