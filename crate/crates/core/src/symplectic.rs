//! Canonical graded symplectic phase spaces.
//!
//! A [`PhaseSpace`] is a list of conjugate pairs `(c, m)` with
//! `|c| + |m| = n`. Degree-0 members are base coordinates of the context,
//! everything else is a graded generator. The bracket is
//!
//! ```text
//! {f, g} = Σ  (f ∂⃖c)(∂⃗m g) + s_mc (f ∂⃖m)(∂⃗c g),    s_mc = -(-1)^{(|c|-n)(|m|-n)}
//! ```
//!
//! so that `{c, m} = 1` and `{m, c} = s_mc`. It has degree `-n`, is graded
//! antisymmetric with respect to the shifted degree `|f| - n`, and satisfies
//! `{f, gh} = {f,g}h + (-1)^{(|f|-n)|g|} g{f,h}`.

use crate::error::{Error, Result};
use crate::graded::{Ctx, Degree, GradedContext, GradedElement, Generator};
use crate::poly::{Rational, Vars};

pub use crate::graded::Coord as Slot;

#[derive(Clone, Debug)]
pub struct ConjugatePair {
    pub coordinate: String,
    pub momentum: String,
    pub coordinate_degree: i32,
    pub momentum_degree: i32,
    coord_slot: Slot,
    mom_slot: Slot,
}

impl ConjugatePair {
    /// `{m, c}`; `{c, m}` is always `+1`.
    pub fn reversed_sign(&self, n: i32) -> i64 {
        let e = (self.coordinate_degree - n) * (self.momentum_degree - n);
        if e.rem_euclid(2) == 0 {
            -1
        } else {
            1
        }
    }
}

#[derive(Clone, Debug)]
pub struct PhaseSpace {
    ctx: Ctx,
    n: i32,
    pairs: Vec<ConjugatePair>,
}

/// One conjugate pair as `(coordinate, degree, momentum, degree)`.
pub type PairSpec<'a> = (&'a str, i32, &'a str, i32);

impl PhaseSpace {
    /// Build the context and pair table. `params` are extra degree-0 names that
    /// belong to no pair (they behave as constants under the bracket).
    pub fn new(n: i32, pairs: &[PairSpec<'_>], params: &[&str]) -> Result<Self> {
        let mut vars: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        let mut gens = Vec::new();
        for &(c, dc, m, dm) in pairs {
            if dc + dm != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: format!("pair ({c}, {m}) has total degree {}", dc + dm),
                });
            }
            for (name, d) in [(c, dc), (m, dm)] {
                if vars.iter().any(|v| v == name) || gens.iter().any(|g: &Generator| g.name == name) {
                    return Err(Error::ContextMismatch(format!(
                        "`{name}` appears in more than one pair"
                    )));
                }
                if d == 0 {
                    vars.push(name.to_string());
                } else {
                    gens.push(Generator::new(name, d));
                }
            }
        }
        let vars: Vars = vars.into();
        let ctx = GradedContext::new(vars, gens)?;
        let slot = |name: &str| match ctx.gen_index(name) {
            Some(i) => Slot::Gen(i),
            None => Slot::Var(ctx.var_index(name).unwrap()),
        };
        let pairs = pairs
            .iter()
            .map(|&(c, dc, m, dm)| ConjugatePair {
                coordinate: c.to_string(),
                momentum: m.to_string(),
                coordinate_degree: dc,
                momentum_degree: dm,
                coord_slot: slot(c),
                mom_slot: slot(m),
            })
            .collect();
        Ok(PhaseSpace { ctx, n, pairs })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    pub fn pairs(&self) -> &[ConjugatePair] {
        &self.pairs
    }

    pub fn element(&self, name: &str) -> Result<GradedElement> {
        GradedElement::named(&self.ctx, name)
    }

    fn left(&self, f: &GradedElement, s: Slot) -> GradedElement {
        match s {
            Slot::Var(i) => f.partial_var(i),
            Slot::Gen(j) => f.left_derivative(j),
        }
    }

    fn right(&self, f: &GradedElement, s: Slot) -> GradedElement {
        match s {
            Slot::Var(i) => f.partial_var(i),
            Slot::Gen(j) => f.right_derivative(j),
        }
    }

    pub fn poisson_bracket(&self, f: &GradedElement, g: &GradedElement) -> Result<GradedElement> {
        let f = f.embed(&self.ctx)?;
        let g = g.embed(&self.ctx)?;
        let mut out = GradedElement::zero(&self.ctx);
        for p in &self.pairs {
            let a = self.right(&f, p.coord_slot);
            if !a.is_zero() {
                out = &out + &(&a * &self.left(&g, p.mom_slot));
            }
            let b = self.right(&f, p.mom_slot);
            if !b.is_zero() {
                let t = &b * &self.left(&g, p.coord_slot);
                out = &out + &t.scale_int(p.reversed_sign(self.n));
            }
        }
        Ok(out)
    }

    fn momentum_slots(&self) -> impl Iterator<Item = Slot> + '_ {
        self.pairs.iter().map(|p| p.mom_slot)
    }

    /// Largest total power of momenta in any term.
    pub fn momentum_multiplicity(&self, f: &GradedElement) -> u32 {
        f.terms()
            .flat_map(|(m, c)| {
                let gen_part: u32 = self
                    .momentum_slots()
                    .filter_map(|s| match s {
                        Slot::Gen(j) => Some(m[j]),
                        Slot::Var(_) => None,
                    })
                    .sum();
                let var_idx: Vec<usize> = self
                    .momentum_slots()
                    .filter_map(|s| match s {
                        Slot::Var(i) => Some(i),
                        Slot::Gen(_) => None,
                    })
                    .collect();
                c.terms()
                    .map(move |(pm, _)| {
                        gen_part + var_idx.iter().map(|&i| pm.exponents()[i]).sum::<u32>()
                    })
                    .collect::<Vec<_>>()
            })
            .max()
            .unwrap_or(0)
    }

    pub fn is_momentum_free(&self, f: &GradedElement) -> bool {
        self.momentum_multiplicity(f) == 0
    }

    /// Set every momentum to zero.
    pub fn project_to_base(&self, f: &GradedElement) -> Result<GradedElement> {
        let f = f.embed(&self.ctx)?;
        let mut gens = Vec::new();
        let mut vars = Vec::new();
        for s in self.momentum_slots() {
            match s {
                Slot::Gen(j) => gens.push(j),
                Slot::Var(i) => vars.push(i),
            }
        }
        Ok(f.kill_generators(&gens)
            .map_coefficients(|c| c.substitute_zero(&vars)))
    }

    /// `α + {α,φ} + ½{{α,φ},φ} + …`, stopping at the first zero bracket.
    pub fn twist(&self, phi: &GradedElement, alpha: &GradedElement) -> Result<GradedElement> {
        let phi = phi.embed(&self.ctx)?;
        match phi.degree() {
            Degree::Zero => return alpha.embed(&self.ctx),
            Degree::Homogeneous(d) if d == self.n => {}
            Degree::Homogeneous(d) => {
                return Err(Error::DegreeMismatch {
                    expected: self.n,
                    found: d.to_string(),
                })
            }
            Degree::Mixed => {
                return Err(Error::DegreeMismatch {
                    expected: self.n,
                    found: "mixed".into(),
                })
            }
        }
        let bound = 1 + self.momentum_multiplicity(alpha);
        if !self.is_momentum_free(&phi) {
            return Err(Error::TwistDiverged { bound: bound as usize });
        }
        let mut term = alpha.embed(&self.ctx)?;
        let mut acc = term.clone();
        let mut k = 1u32;
        loop {
            term = self
                .poisson_bracket(&term, &phi)?
                .scale(&Rational::new(1.into(), k.into()));
            if term.is_zero() {
                return Ok(acc);
            }
            if k >= bound {
                return Err(Error::TwistDiverged { bound: bound as usize });
            }
            acc = &acc + &term;
            k += 1;
        }
    }

    /// Projection of `{{f, θ}, g}`.
    pub fn derived_bracket(
        &self,
        f: &GradedElement,
        g: &GradedElement,
        theta: &GradedElement,
    ) -> Result<GradedElement> {
        let inner = self.poisson_bracket(f, theta)?;
        self.project_to_base(&self.poisson_bracket(&inner, g)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::parse_graded;

    // T*[n-1]E[1] over a rank-1 bundle on a 1-dimensional base, n = 3
    fn space() -> PhaseSpace {
        PhaseSpace::new(2, &[("x", 0, "z", 2), ("q", 1, "y", 1)], &[]).unwrap()
    }

    fn e(ps: &PhaseSpace, s: &str) -> GradedElement {
        parse_graded(s, ps.ctx()).unwrap()
    }

    #[test]
    fn table_entries() {
        let ps = space();
        let b = |a: &str, c: &str| ps.poisson_bracket(&e(&ps, a), &e(&ps, c)).unwrap();
        assert_eq!(b("x", "z"), e(&ps, "1"));
        assert_eq!(b("z", "x"), e(&ps, "-1"));
        assert_eq!(b("q", "y"), e(&ps, "1"));
        // {y, q} = -(-1)^{n-2} with n = 3
        assert_eq!(b("y", "q"), e(&ps, "1"));
        assert!(b("x", "7").is_zero());
    }

    #[test]
    fn pair_degrees_must_sum() {
        assert!(PhaseSpace::new(2, &[("x", 0, "z", 1)], &[]).is_err());
    }

    #[test]
    fn twist_of_constant_and_by_zero() {
        let ps = PhaseSpace::new(2, &[("x", 0, "p", 2), ("a", 2, "b", 0)], &[]).unwrap();
        let phi = e(&ps, "x^2*a");
        let c = e(&ps, "5");
        assert_eq!(ps.twist(&phi, &c).unwrap(), c);
        let f = e(&ps, "p*b + x");
        assert_eq!(ps.twist(&GradedElement::zero(ps.ctx()), &f).unwrap(), f);
        // {p, x^2 a} = -2 x a and {b, x^2 a} = -x^2, so b twists to b - x^2
        assert_eq!(ps.twist(&phi, &e(&ps, "b")).unwrap(), e(&ps, "b - x^2"));
    }

    #[test]
    fn twist_rejects_wrong_degree_and_momenta() {
        let ps = space();
        let f = e(&ps, "z");
        assert!(matches!(
            ps.twist(&e(&ps, "q"), &f),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            ps.twist(&e(&ps, "z"), &f),
            Err(Error::TwistDiverged { .. })
        ));
    }

    #[test]
    fn projection() {
        let ps = space();
        assert!(ps.project_to_base(&e(&ps, "z*q*y")).unwrap().is_zero());
        let f = e(&ps, "x^2*q");
        assert_eq!(ps.project_to_base(&f).unwrap(), f);
    }
}
