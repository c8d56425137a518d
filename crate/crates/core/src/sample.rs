//! Seeded random inputs for the randomized identity checks.
//!
//! Every draw goes through one ChaCha stream so a seed fixes the whole run.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forms::{increasing_tuples, Alt};
use crate::graded::{Ctx, GradedElement};
use crate::poly::{ratio, Polynomial, Vars};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn coefficient(&mut self) -> crate::poly::Rational {
        let mut n = self.rng.gen_range(1..=4i64);
        if self.rng.gen_bool(0.5) {
            n = -n;
        }
        let d = if self.rng.gen_bool(0.2) { 2 } else { 1 };
        ratio(n, d)
    }

    /// Up to four terms of total degree at most `max_deg`.
    pub fn poly(&mut self, vars: &Vars, max_deg: u32) -> Polynomial {
        let nterms = self.rng.gen_range(0..=4);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let deg = self.rng.gen_range(0..=max_deg);
            let mut e = vec![0u32; vars.len()];
            if !vars.is_empty() {
                for _ in 0..deg {
                    e[self.rng.gen_range(0..vars.len())] += 1;
                }
            }
            terms.push((e, self.coefficient()));
        }
        Polynomial::from_terms(vars, terms)
    }

    /// A polynomial that is not identically zero.
    pub fn nonzero_poly(&mut self, vars: &Vars, max_deg: u32) -> Polynomial {
        loop {
            let p = self.poly(vars, max_deg);
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn section(&mut self, vars: &Vars, rank: usize, max_deg: u32) -> Vec<Polynomial> {
        (0..rank).map(|_| self.poly(vars, max_deg)).collect()
    }

    pub fn alt(&mut self, vars: &Vars, dim: usize, arity: usize, max_deg: u32) -> Alt {
        let mut a = Alt::zero(vars, dim, arity);
        for t in increasing_tuples(dim, arity) {
            if self.rng.gen_bool(0.7) {
                a.add_to(&t, self.poly(vars, max_deg));
            }
        }
        a
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty")
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Homogeneous element of the given degree built from generator
    /// monomials with at most `max_factors` factors.
    pub fn graded(&mut self, ctx: &Ctx, degree: i32, max_factors: u32, max_deg: u32) -> GradedElement {
        let monos = monomials_of_degree(ctx, degree, max_factors);
        let mut out = GradedElement::zero(ctx);
        if monos.is_empty() {
            return out;
        }
        let nterms = self.rng.gen_range(1..=3);
        for _ in 0..nterms {
            let m = monos.choose(&mut self.rng).unwrap().clone();
            let c = self.nonzero_poly(ctx.vars(), max_deg);
            out = &out + &GradedElement::monomial(ctx, m, c);
        }
        out
    }
}

/// Sorted generator monomials of exact degree `degree` with at most
/// `max_factors` factors (odd generators at most once).
pub fn monomials_of_degree(ctx: &Ctx, degree: i32, max_factors: u32) -> Vec<Vec<u32>> {
    fn rec(
        ctx: &Ctx,
        i: usize,
        left: u32,
        deg: i32,
        target: i32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let gens = ctx.gens();
        if i == gens.len() {
            if deg == target {
                out.push(cur.clone());
            }
            return;
        }
        let cap = if gens[i].is_odd() { left.min(1) } else { left };
        for k in 0..=cap {
            cur[i] = k;
            rec(ctx, i + 1, left - k, deg + k as i32 * gens[i].degree, target, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; ctx.gens().len()];
    rec(ctx, 0, max_factors, 0, degree, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{GradedContext, Generator};
    use crate::poly::vars;

    #[test]
    fn deterministic() {
        let v = vars(["x", "y"]);
        let a: Vec<String> = {
            let mut s = Sampler::new(7);
            (0..5).map(|_| s.poly(&v, 3).to_string()).collect()
        };
        let b: Vec<String> = {
            let mut s = Sampler::new(7);
            (0..5).map(|_| s.poly(&v, 3).to_string()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn homogeneous_samples() {
        let ctx = GradedContext::new(
            vars(["x"]),
            vec![Generator::new("q", 1), Generator::new("e", 2), Generator::new("y", -1)],
        )
        .unwrap();
        let mut s = Sampler::new(1);
        for d in -1..=3 {
            let g = s.graded(&ctx, d, 3, 2);
            assert!(matches!(
                g.degree(),
                crate::graded::Degree::Homogeneous(k) if k == d
            ));
        }
    }
}
