//! Totally antisymmetric coefficient arrays.
//!
//! One [`Alt`] type backs E-forms (indices run over a frame of the bundle),
//! base forms (indices over coordinates) and multivector fields. Components
//! are stored only for strictly increasing index tuples; `α(e_{a1},…,e_{ak})`
//! for an increasing tuple is the stored value, and the form is
//! `Σ_{a1<…<ak} α_{a1…ak} e^{a1}∧…∧e^{ak}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Vars};

/// Sort an index tuple; `None` if an index repeats, else the sorted tuple and
/// whether the permutation was odd.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, odd))
    }
}

/// All strictly increasing `k`-tuples from `0..dim`.
pub fn increasing_tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= dim {
        rec(0, dim, k, &mut Vec::new(), &mut out);
    }
    out
}

fn fmt_tuple(idx: &[usize]) -> String {
    idx.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Alt {
    vars: Vars,
    dim: usize,
    arity: usize,
    comps: BTreeMap<Vec<usize>, Polynomial>,
}

/// Sections of `∧ᵏE*`.
pub type EForm = Alt;
/// Differential forms on the base.
pub type BaseForm = Alt;
/// Multivector fields on the base.
pub type MultiVector = Alt;

impl Alt {
    pub fn zero(vars: &Vars, dim: usize, arity: usize) -> Self {
        Alt {
            vars: vars.clone(),
            dim,
            arity,
            comps: BTreeMap::new(),
        }
    }

    /// Arity-0 element.
    pub fn scalar(dim: usize, f: &Polynomial) -> Self {
        let mut a = Self::zero(f.vars(), dim, 0);
        a.add_to(&[], f.clone());
        a
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Nonzero components on increasing tuples.
    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.comps.iter()
    }

    fn check_idx(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: idx.len(),
            });
        }
        if let Some(&i) = idx.iter().find(|&&i| i >= self.dim) {
            return Err(Error::OutOfRange(format!(
                "index {} exceeds dimension {}",
                i + 1,
                self.dim
            )));
        }
        Ok(())
    }

    /// Value on an arbitrary (not necessarily sorted) index tuple.
    pub fn get(&self, idx: &[usize]) -> Polynomial {
        match sort_with_sign(idx) {
            None => Polynomial::zero(&self.vars),
            Some((s, odd)) => match self.comps.get(&s) {
                None => Polynomial::zero(&self.vars),
                Some(c) if odd => -c,
                Some(c) => c.clone(),
            },
        }
    }

    /// Add `value` to the component at `idx` (antisymmetry applied).
    pub fn add_to(&mut self, idx: &[usize], value: Polynomial) {
        if value.is_zero() {
            return;
        }
        let Some((s, odd)) = sort_with_sign(idx) else {
            return;
        };
        let v = if odd { -value } else { value };
        let slot = self
            .comps
            .entry(s.clone())
            .or_insert_with(|| Polynomial::zero(&v.vars().clone()));
        *slot += &v;
        if slot.is_zero() {
            self.comps.remove(&s);
        }
    }

    /// Set one component; a repeated index must carry a zero value.
    pub fn set(&mut self, idx: &[usize], value: Polynomial) -> Result<()> {
        self.check_idx(idx)?;
        let Some((s, odd)) = sort_with_sign(idx) else {
            if value.is_zero() {
                return Ok(());
            }
            return Err(Error::Precondition(format!(
                "component [{}] has a repeated index but a nonzero value",
                fmt_tuple(idx)
            )));
        };
        let value = value.embed(&self.vars)?;
        let v = if odd { -value } else { value };
        if v.is_zero() {
            self.comps.remove(&s);
        } else {
            self.comps.insert(s, v);
        }
        Ok(())
    }

    fn same_shape(&self, o: &Alt) -> Result<()> {
        if self.arity != o.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: o.arity,
            });
        }
        if self.dim != o.dim {
            return Err(Error::RankMismatch {
                expected: self.dim,
                found: o.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Alt) -> Result<Alt> {
        self.same_shape(o)?;
        let mut out = self.clone();
        for (k, v) in &o.comps {
            out.add_to(k, v.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Alt) -> Result<Alt> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> Alt {
        self.map(|c| -c)
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Alt {
        let mut out = Self::zero(&self.vars, self.dim, self.arity);
        for (k, v) in &self.comps {
            out.add_to(k, f(v));
        }
        out
    }

    pub fn scale_poly(&self, p: &Polynomial) -> Alt {
        self.map(|c| c * p)
    }

    pub fn scale_int(&self, k: i64) -> Alt {
        self.map(|c| c.scale_int(k))
    }

    pub fn wedge(&self, o: &Alt) -> Result<Alt> {
        if self.dim != o.dim {
            return Err(Error::RankMismatch {
                expected: self.dim,
                found: o.dim,
            });
        }
        let mut out = Self::zero(&self.vars, self.dim, self.arity + o.arity);
        for (a, ca) in &self.comps {
            for (b, cb) in &o.comps {
                let idx: Vec<usize> = a.iter().chain(b).copied().collect();
                out.add_to(&idx, ca * cb);
            }
        }
        Ok(out)
    }

    /// Insert a vector (given by components) into the first slot.
    pub fn contract(&self, v: &[Polynomial]) -> Result<Alt> {
        if self.arity == 0 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: 0,
            });
        }
        if v.len() != self.dim {
            return Err(Error::RankMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut out = Self::zero(&self.vars, self.dim, self.arity - 1);
        for (idx, c) in &self.comps {
            // idx[p] moved to the front costs (-1)^p
            for (p, &i) in idx.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(p);
                let t = &v[i] * c;
                out.add_to(&rest, if p % 2 == 1 { -t } else { t });
            }
        }
        Ok(out)
    }

    /// Evaluate on a full list of vectors.
    pub fn eval(&self, vs: &[Vec<Polynomial>]) -> Result<Polynomial> {
        let mut cur = self.clone();
        for v in vs {
            cur = cur.contract(v)?;
        }
        if cur.arity != 0 {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: vs.len(),
            });
        }
        Ok(cur.get(&[]))
    }

    /// Nonzero components printed as `[i j] = value` with 1-based indices.
    pub fn residual_lines(&self, label: &str) -> Vec<String> {
        self.comps
            .iter()
            .map(|(k, v)| format!("{label}[{}] = {v}", fmt_tuple(k)))
            .collect()
    }
}

impl fmt::Display for Alt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(k, v)| format!("[{}]: {v}", fmt_tuple(k)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Exterior derivative of a base form (`dim` equals the number of coordinates).
pub fn de_rham_d(alpha: &BaseForm) -> BaseForm {
    let mut out = Alt::zero(&alpha.vars, alpha.dim, alpha.arity + 1);
    for (idx, c) in &alpha.comps {
        for i in 0..alpha.dim {
            let d = c.partial_derivative(i);
            if d.is_zero() {
                continue;
            }
            let mut k = vec![i];
            k.extend(idx);
            out.add_to(&k, d);
        }
    }
    out
}

/// `X(f)` for a vector field given by components.
pub fn apply_vector(x: &[Polynomial], f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(f.vars());
    for (i, xi) in x.iter().enumerate() {
        if !xi.is_zero() {
            out += &(xi * &f.partial_derivative(i));
        }
    }
    out
}

/// Lie bracket of vector fields.
pub fn vector_bracket(x: &[Polynomial], y: &[Polynomial]) -> Vec<Polynomial> {
    x.iter()
        .zip(y)
        .map(|(xi, yi)| &apply_vector(x, yi) - &apply_vector(y, xi))
        .collect()
}

/// Lie derivative of a base form: `ι_X d + d ι_X`.
pub fn lie_derivative(x: &[Polynomial], alpha: &BaseForm) -> Result<BaseForm> {
    let a = de_rham_d(alpha).contract(x)?;
    if alpha.arity == 0 {
        return Ok(a);
    }
    a.try_add(&de_rham_d(&alpha.contract(x)?))
}

/// Element of `Ωᵏ(M, ∧ᵐE*)`: antisymmetric separately in `k` base slots and
/// `m` bundle slots. Keys are `(base tuple, bundle tuple)`, both increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedForm {
    vars: Vars,
    base_dim: usize,
    rank: usize,
    base_arity: usize,
    e_arity: usize,
    comps: BTreeMap<(Vec<usize>, Vec<usize>), Polynomial>,
}

impl MixedForm {
    pub fn zero(vars: &Vars, rank: usize, base_arity: usize, e_arity: usize) -> Self {
        MixedForm {
            vars: vars.clone(),
            base_dim: vars.len(),
            rank,
            base_arity,
            e_arity,
            comps: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn base_arity(&self) -> usize {
        self.base_arity
    }

    pub fn e_arity(&self) -> usize {
        self.e_arity
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&(Vec<usize>, Vec<usize>), &Polynomial)> {
        self.comps.iter()
    }

    pub fn get(&self, base: &[usize], e: &[usize]) -> Polynomial {
        let zero = || Polynomial::zero(&self.vars);
        let (Some((b, ob)), Some((a, oa))) = (sort_with_sign(base), sort_with_sign(e)) else {
            return zero();
        };
        match self.comps.get(&(b, a)) {
            None => zero(),
            Some(c) if ob != oa => -c,
            Some(c) => c.clone(),
        }
    }

    pub fn add_to(&mut self, base: &[usize], e: &[usize], value: Polynomial) {
        if value.is_zero() {
            return;
        }
        let (Some((b, ob)), Some((a, oa))) = (sort_with_sign(base), sort_with_sign(e)) else {
            return;
        };
        let v = if ob != oa { -value } else { value };
        let key = (b, a);
        let slot = self
            .comps
            .entry(key.clone())
            .or_insert_with(|| Polynomial::zero(v.vars()));
        *slot += &v;
        if slot.is_zero() {
            self.comps.remove(&key);
        }
    }

    pub fn set(&mut self, base: &[usize], e: &[usize], value: Polynomial) -> Result<()> {
        if base.len() != self.base_arity || e.len() != self.e_arity {
            return Err(Error::ArityMismatch {
                expected: self.base_arity + self.e_arity,
                found: base.len() + e.len(),
            });
        }
        if base.iter().any(|&i| i >= self.base_dim) || e.iter().any(|&a| a >= self.rank) {
            return Err(Error::OutOfRange(format!(
                "component [{} ; {}]",
                fmt_tuple(e),
                fmt_tuple(base)
            )));
        }
        let value = value.embed(&self.vars)?;
        if sort_with_sign(base).is_none() || sort_with_sign(e).is_none() {
            if value.is_zero() {
                return Ok(());
            }
            return Err(Error::Precondition(format!(
                "component [{} ; {}] has a repeated index but a nonzero value",
                fmt_tuple(e),
                fmt_tuple(base)
            )));
        }
        let current = self.get(base, e);
        self.add_to(base, e, &value - &current);
        Ok(())
    }

    pub fn try_add(&self, o: &MixedForm) -> Result<MixedForm> {
        if (self.base_arity, self.e_arity) != (o.base_arity, o.e_arity) {
            return Err(Error::ArityMismatch {
                expected: self.base_arity + self.e_arity,
                found: o.base_arity + o.e_arity,
            });
        }
        if self.rank != o.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: o.rank,
            });
        }
        let mut out = self.clone();
        for ((b, a), v) in &o.comps {
            out.add_to(b, a, v.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> MixedForm {
        let mut out = Self::zero(&self.vars, self.rank, self.base_arity, self.e_arity);
        for ((b, a), v) in &self.comps {
            out.add_to(b, a, -v);
        }
        out
    }

    /// Regard a base form as having no bundle slots.
    pub fn from_base(alpha: &BaseForm, rank: usize) -> Self {
        let mut out = Self::zero(&alpha.vars, rank, alpha.arity, 0);
        for (k, v) in &alpha.comps {
            out.add_to(k, &[], v.clone());
        }
        out
    }

    /// Regard an E-form as a 0-form with values in `∧ᵐE*`.
    pub fn from_eform(alpha: &EForm) -> Self {
        let mut out = Self::zero(&alpha.vars, alpha.dim, 0, alpha.arity);
        for (k, v) in &alpha.comps {
            out.add_to(&[], k, v.clone());
        }
        out
    }

    /// The bundle part of a form with no base slots.
    pub fn to_eform(&self) -> Result<EForm> {
        if self.base_arity != 0 {
            return Err(Error::ArityMismatch {
                expected: 0,
                found: self.base_arity,
            });
        }
        let mut out = Alt::zero(&self.vars, self.rank, self.e_arity);
        for ((_, a), v) in &self.comps {
            out.add_to(a, v.clone());
        }
        Ok(out)
    }

    pub fn residual_lines(&self, label: &str) -> Vec<String> {
        self.comps
            .iter()
            .map(|((b, a), v)| format!("{label}[{} ; {}] = {v}", fmt_tuple(a), fmt_tuple(b)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, vars};

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &vars(["x", "y", "z"])).unwrap()
    }

    #[test]
    fn antisymmetric_access() {
        let v = vars(["x", "y", "z"]);
        let mut a = Alt::zero(&v, 3, 2);
        a.set(&[1, 0], p("x")).unwrap();
        assert_eq!(a.get(&[0, 1]), p("-x"));
        assert!(a.get(&[1, 1]).is_zero());
        assert!(a.set(&[2, 2], p("1")).is_err());
        assert!(a.set(&[0, 3], p("1")).is_err());
    }

    #[test]
    fn frame_contraction() {
        let v = vars(["x", "y", "z"]);
        let mut a = Alt::zero(&v, 2, 2);
        a.set(&[0, 1], p("1")).unwrap();
        let e1 = vec![p("1"), p("0")];
        let mut e2 = Alt::zero(&v, 2, 1);
        e2.set(&[1], p("1")).unwrap();
        assert_eq!(a.contract(&e1).unwrap(), e2);
        let u = vec![p("x"), p("y^2")];
        assert!(a.contract(&u).unwrap().contract(&u).unwrap().is_zero());
    }

    #[test]
    fn exterior_derivative() {
        let v = vars(["x", "y"]);
        // d(-x dy) = -dx∧dy
        let mut a = Alt::zero(&v, 2, 1);
        a.set(&[1], parse_poly("-x", &v).unwrap()).unwrap();
        let mut want = Alt::zero(&v, 2, 2);
        want.set(&[0, 1], parse_poly("-1", &v).unwrap()).unwrap();
        assert_eq!(de_rham_d(&a), want);
        assert!(de_rham_d(&de_rham_d(&a)).is_zero());
    }

    #[test]
    fn wedge_and_eval() {
        let v = vars(["x", "y", "z"]);
        let mut dx = Alt::zero(&v, 3, 1);
        dx.set(&[0], p("1")).unwrap();
        let mut dy = Alt::zero(&v, 3, 1);
        dy.set(&[1], p("1")).unwrap();
        let w = dx.wedge(&dy).unwrap();
        assert_eq!(w.get(&[0, 1]), p("1"));
        let val = w
            .eval(&[vec![p("0"), p("1"), p("0")], vec![p("1"), p("0"), p("0")]])
            .unwrap();
        assert_eq!(val, p("-1"));
    }

    #[test]
    fn mixed_components() {
        let v = vars(["x", "y", "z"]);
        let mut m = MixedForm::zero(&v, 2, 1, 2);
        m.set(&[2], &[1, 0], p("y")).unwrap();
        assert_eq!(m.get(&[2], &[0, 1]), p("-y"));
        assert!(m.try_add(&m.neg()).unwrap().is_zero());
    }

    #[test]
    fn tuples() {
        assert_eq!(increasing_tuples(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(increasing_tuples(2, 3).len(), 0);
        assert_eq!(increasing_tuples(2, 0), vec![Vec::<usize>::new()]);
    }
}
