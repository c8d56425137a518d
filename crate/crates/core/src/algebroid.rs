//! Lie algebroid data in a global frame, its differential, and the Poisson and
//! Schouten constructions on the cotangent bundle.
//!
//! Frame conventions: `ρ(e_a) = ρ^i_a ∂_i` and `[e_a, e_b] = C^c_{ab} e_c`.
//! On sections,
//!
//! ```text
//! [u, v]^c = u^a v^b C^c_{ab} + ρ(u)(v^c) - ρ(v)(u^c)
//! ```

use crate::error::{Error, Result};
use crate::forms::{self, increasing_tuples, Alt, BaseForm, EForm, MultiVector};
use crate::graded::{fresh_names, Coord, Ctx, GradedContext, GradedElement, Generator, VectorField};
use crate::poly::{ratio, Polynomial, Vars};
use crate::report::Verdict;
use crate::symplectic::PhaseSpace;

/// Components of a section in the frame `e_a`.
pub type ESection = Vec<Polynomial>;

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebroid {
    vars: Vars,
    rank: usize,
    /// `anchor[a][i] = ρ^i_a`
    anchor: Vec<Vec<Polynomial>>,
    /// `structure[c][a][b] = C^c_{ab}`
    structure: Vec<Vec<Vec<Polynomial>>>,
}

impl LieAlgebroid {
    /// Validates shapes and exact antisymmetry `C^c_{ab} = -C^c_{ba}`.
    pub fn new(
        vars: &Vars,
        anchor: Vec<Vec<Polynomial>>,
        structure: Vec<Vec<Vec<Polynomial>>>,
    ) -> Result<Self> {
        let rank = anchor.len();
        let dim = vars.len();
        for row in &anchor {
            if row.len() != dim {
                return Err(Error::ArityMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
        }
        if structure.len() != rank
            || structure
                .iter()
                .any(|m| m.len() != rank || m.iter().any(|r| r.len() != rank))
        {
            return Err(Error::RankMismatch {
                expected: rank,
                found: structure.len(),
            });
        }
        let embed = |p: Polynomial| p.embed(vars);
        let anchor = anchor
            .into_iter()
            .map(|r| r.into_iter().map(embed).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let structure = structure
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .map(|r| r.into_iter().map(embed).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        for (c, m) in structure.iter().enumerate() {
            for a in 0..rank {
                for b in a..rank {
                    if !(&m[a][b] + &m[b][a]).is_zero() {
                        return Err(Error::Precondition(format!(
                            "structure functions not antisymmetric: C^{}_{{{} {}}} = {} but C^{}_{{{} {}}} = {}",
                            c + 1, a + 1, b + 1, m[a][b], c + 1, b + 1, a + 1, m[b][a]
                        )));
                    }
                }
            }
        }
        Ok(LieAlgebroid {
            vars: vars.clone(),
            rank,
            anchor,
            structure,
        })
    }

    /// `TM` with the coordinate frame: identity anchor, zero brackets.
    pub fn tangent(vars: &Vars) -> Self {
        let m = vars.len();
        let anchor = (0..m)
            .map(|a| {
                (0..m)
                    .map(|i| Polynomial::from_int(vars, (a == i) as i64))
                    .collect()
            })
            .collect();
        LieAlgebroid {
            vars: vars.clone(),
            rank: m,
            anchor,
            structure: vec![vec![vec![Polynomial::zero(vars); m]; m]; m],
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    /// `ρ(e_a)` as a vector field.
    pub fn anchor_of(&self, a: usize) -> &[Polynomial] {
        &self.anchor[a]
    }

    /// `C^c_{ab}`.
    pub fn structure(&self, c: usize, a: usize, b: usize) -> &Polynomial {
        &self.structure[c][a][b]
    }

    pub fn zero_section(&self) -> ESection {
        vec![Polynomial::zero(&self.vars); self.rank]
    }

    pub fn frame(&self, a: usize) -> ESection {
        let mut s = self.zero_section();
        s[a] = Polynomial::one(&self.vars);
        s
    }

    fn check_section(&self, u: &[Polynomial]) -> Result<()> {
        if u.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: u.len(),
            });
        }
        Ok(())
    }

    fn check_form(&self, alpha: &EForm) -> Result<()> {
        if alpha.dim() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: alpha.dim(),
            });
        }
        Ok(())
    }

    /// `ρ(u)` as a vector field on the base.
    pub fn anchor_apply(&self, u: &[Polynomial]) -> Result<Vec<Polynomial>> {
        self.check_section(u)?;
        let mut out = vec![Polynomial::zero(&self.vars); self.dim()];
        for (a, ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o += &(ua * &self.anchor[a][i]);
            }
        }
        Ok(out)
    }

    pub fn bracket_on_sections(&self, u: &[Polynomial], v: &[Polynomial]) -> Result<ESection> {
        let ru = self.anchor_apply(u)?;
        let rv = self.anchor_apply(v)?;
        let mut out = self.zero_section();
        for (c, o) in out.iter_mut().enumerate() {
            for a in 0..self.rank {
                if u[a].is_zero() {
                    continue;
                }
                for b in 0..self.rank {
                    if !v[b].is_zero() && !self.structure[c][a][b].is_zero() {
                        *o += &(&(&u[a] * &v[b]) * &self.structure[c][a][b]);
                    }
                }
            }
            *o += &forms::apply_vector(&ru, &v[c]);
            *o -= &forms::apply_vector(&rv, &u[c]);
        }
        Ok(out)
    }

    /// The Lie algebroid differential on `Γ(∧ᵏE*)`.
    pub fn e_differential(&self, alpha: &EForm) -> Result<EForm> {
        self.check_form(alpha)?;
        let k = alpha.arity();
        let mut out = Alt::zero(&self.vars, self.rank, k + 1);
        for tuple in increasing_tuples(self.rank, k + 1) {
            let mut val = Polynomial::zero(&self.vars);
            for i in 0..=k {
                let mut rest = tuple.clone();
                let a = rest.remove(i);
                let t = forms::apply_vector(&self.anchor[a], &alpha.get(&rest));
                if i % 2 == 0 {
                    val += &t;
                } else {
                    val -= &t;
                }
            }
            for i in 0..=k {
                for j in i + 1..=k {
                    let rest: Vec<usize> = tuple
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != i && p != j)
                        .map(|(_, &x)| x)
                        .collect();
                    for c in 0..self.rank {
                        let s = &self.structure[c][tuple[i]][tuple[j]];
                        if s.is_zero() {
                            continue;
                        }
                        let mut idx = vec![c];
                        idx.extend(&rest);
                        let t = s * &alpha.get(&idx);
                        if (i + j) % 2 == 0 {
                            val += &t;
                        } else {
                            val -= &t;
                        }
                    }
                }
            }
            out.add_to(&tuple, val);
        }
        Ok(out)
    }

    pub fn interior_product(&self, u: &[Polynomial], alpha: &EForm) -> Result<EForm> {
        self.check_section(u)?;
        self.check_form(alpha)?;
        alpha.contract(u)
    }

    /// `ι_u ᴱd + ᴱd ι_u`.
    pub fn e_lie_derivative(&self, u: &[Polynomial], alpha: &EForm) -> Result<EForm> {
        let a = self.interior_product(u, &self.e_differential(alpha)?)?;
        if alpha.arity() == 0 {
            return Ok(a);
        }
        a.try_add(&self.e_differential(&self.interior_product(u, alpha)?)?)
    }

    /// Graded context of `E[1]`: base coordinates plus degree-1 fiber
    /// generators, one per frame element.
    pub fn shifted_context(&self) -> (Ctx, Vec<String>) {
        let names = fresh_names("q", self.rank, &self.vars);
        let gens = names.iter().map(|n| Generator::new(n.clone(), 1)).collect();
        let ctx = GradedContext::new(self.vars.clone(), gens).expect("fresh names");
        (ctx, names)
    }

    /// `Σ_{a1<…<ak} α_{a1…ak} q^{a1}⋯q^{ak}` over a context holding `q_names`.
    pub fn form_to_function(alpha: &EForm, ctx: &Ctx, q_names: &[String]) -> Result<GradedElement> {
        let mut out = GradedElement::zero(ctx);
        for (idx, c) in alpha.components() {
            let mut t = GradedElement::from_poly(ctx, c);
            for &a in idx {
                t = t.gmul(&GradedElement::named(ctx, &q_names[a])?)?;
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// `Q(x^i) = ρ^i_a q^a`, `Q(q^a) = -Σ_{b<c} C^a_{bc} q^b q^c`.
    pub fn homological_field(&self) -> (VectorField, Vec<String>) {
        let (ctx, q) = self.shifted_context();
        let qa: Vec<GradedElement> = q
            .iter()
            .map(|n| GradedElement::named(&ctx, n).unwrap())
            .collect();
        let mut field = VectorField::zero(&ctx);
        for i in 0..self.dim() {
            let mut img = GradedElement::zero(&ctx);
            for (a, qa) in qa.iter().enumerate() {
                img = &img + &qa.scale_poly(&self.anchor[a][i]);
            }
            field.set(Coord::Var(i), img);
        }
        for (a, name) in q.iter().enumerate() {
            let mut img = GradedElement::zero(&ctx);
            for b in 0..self.rank {
                for c in b + 1..self.rank {
                    let s = &self.structure[a][b][c];
                    if !s.is_zero() {
                        img = &img - &(&qa[b] * &qa[c]).scale_poly(s);
                    }
                }
            }
            field.set(Coord::lookup(&ctx, name).unwrap(), img);
        }
        (field, q)
    }

    /// Lie algebroid axioms via `Q² = 0` on `E[1]`, with the frame-wise
    /// Jacobi and anchor-morphism identities as an independent sub-check.
    pub fn check_lie_algebroid(&self) -> Verdict {
        let (q, _) = self.homological_field();
        let residuals = match q.square_on_coordinates() {
            Ok(v) => v.into_iter().map(|(c, e)| format!("Q²({c}) = {e}")).collect(),
            Err(e) => vec![e.to_string()],
        };
        let primary = Verdict::from_residuals("homological", residuals);
        let oracle = self.check_frame_identities();
        if primary.passed != oracle.passed {
            // never expected; surfaced rather than hidden
            let mut v = Verdict::failed(
                "algebroid",
                "homological and frame-wise checks disagree",
            );
            v.subchecks = vec![primary, oracle];
            return v;
        }
        Verdict::from_residuals("algebroid", vec![]).with_subchecks(vec![primary, oracle])
    }

    /// Jacobi on frame triples and `[ρe_a, ρe_b] = ρ[e_a, e_b]` on frame pairs.
    pub fn check_frame_identities(&self) -> Verdict {
        let mut res = Vec::new();
        let e: Vec<ESection> = (0..self.rank).map(|a| self.frame(a)).collect();
        let br = |u: &[Polynomial], v: &[Polynomial]| self.bracket_on_sections(u, v).unwrap();
        for a in 0..self.rank {
            for b in a + 1..self.rank {
                let lhs = forms::vector_bracket(&self.anchor[a], &self.anchor[b]);
                let rhs = self.anchor_apply(&br(&e[a], &e[b])).unwrap();
                for (i, (l, r)) in lhs.iter().zip(&rhs).enumerate() {
                    let d = l - r;
                    if !d.is_zero() {
                        res.push(format!("anchor[{} {}]^{} = {d}", a + 1, b + 1, i + 1));
                    }
                }
                for c in b + 1..self.rank {
                    let t1 = br(&br(&e[a], &e[b]), &e[c]);
                    let t2 = br(&br(&e[b], &e[c]), &e[a]);
                    let t3 = br(&br(&e[c], &e[a]), &e[b]);
                    for d in 0..self.rank {
                        let s = &(&t1[d] + &t2[d]) + &t3[d];
                        if !s.is_zero() {
                            res.push(format!(
                                "jacobi[{} {} {}]^{} = {s}",
                                a + 1,
                                b + 1,
                                c + 1,
                                d + 1
                            ));
                        }
                    }
                }
            }
        }
        Verdict::from_residuals("frame-identities", res)
    }
}

/// `π♯(dx^a) = π^{aj} ∂_j`.
pub fn pi_sharp(pi: &MultiVector, a: usize) -> Vec<Polynomial> {
    (0..pi.dim()).map(|j| pi.get(&[a, j])).collect()
}

fn check_bivector(pi: &MultiVector) -> Result<()> {
    if pi.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: pi.arity(),
        });
    }
    Ok(())
}

/// Sign in front of `H(ρα, ρβ, ·)` in the twisted bracket of frame 1-forms.
const TWIST_TERM_SIGN: i64 = 1;

/// `T*M` with anchor `-π♯`; see [`twisted_poisson_algebroid`].
pub fn poisson_algebroid(pi: &MultiVector) -> Result<LieAlgebroid> {
    let h = Alt::zero(pi.vars(), pi.dim(), 3);
    twisted_poisson_algebroid(pi, &h)
}

/// `T*M` in the frame `dx^i` with anchor `ρ = -π♯` and bracket
///
/// ```text
/// [α, β] = L_{ρα}β - L_{ρβ}α - d(β(ρα)) + H(ρα, ρβ, ·)
/// ```
///
/// i.e. the Koszul bracket of the bivector `-π` that induces the anchor, with
/// the 3-form correction. Structure functions are read off on frame forms.
pub fn twisted_poisson_algebroid(pi: &MultiVector, h: &BaseForm) -> Result<LieAlgebroid> {
    check_bivector(pi)?;
    if h.arity() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: h.arity(),
        });
    }
    let vars = pi.vars().clone();
    let m = pi.dim();
    let rho: Vec<Vec<Polynomial>> = (0..m)
        .map(|a| pi_sharp(pi, a).iter().map(|p| -p).collect())
        .collect();
    let dx = |i: usize| {
        let mut f = Alt::zero(&vars, m, 1);
        f.add_to(&[i], Polynomial::one(&vars));
        f
    };
    let mut structure = vec![vec![vec![Polynomial::zero(&vars); m]; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (dx(i), dx(j));
            let mut k = forms::lie_derivative(&rho[i], &b)?
                .try_sub(&forms::lie_derivative(&rho[j], &a)?)?;
            let pairing = b.contract(&rho[i])?;
            k = k.try_sub(&forms::de_rham_d(&pairing))?;
            let tw = h.contract(&rho[i])?.contract(&rho[j])?;
            k = k.try_add(&tw.scale_int(TWIST_TERM_SIGN))?;
            for (c, row) in structure.iter_mut().enumerate() {
                let v = k.get(&[c]);
                row[j][i] = -&v;
                row[i][j] = v;
            }
        }
    }
    LieAlgebroid::new(&vars, rho, structure)
}

/// Multivectors as functions on `T*[1]M`: `∂_i ↦ θ_i`.
struct ShiftedCotangent {
    ps: PhaseSpace,
    theta: Vec<String>,
}

impl ShiftedCotangent {
    fn new(vars: &Vars) -> Self {
        let theta = fresh_names("th", vars.len(), vars);
        let pairs: Vec<(&str, i32, &str, i32)> = vars
            .iter()
            .zip(&theta)
            .map(|(x, t)| (x.as_str(), 0, t.as_str(), 1))
            .collect();
        let ps = PhaseSpace::new(1, &pairs, &[]).expect("fresh names");
        ShiftedCotangent { ps, theta }
    }

    fn encode(&self, p: &MultiVector) -> GradedElement {
        let ctx = self.ps.ctx();
        let mut out = GradedElement::zero(ctx);
        for (idx, c) in p.components() {
            let mut t = GradedElement::from_poly(ctx, c);
            for &i in idx {
                t = &t * &GradedElement::named(ctx, &self.theta[i]).unwrap();
            }
            out = &out + &t;
        }
        out
    }

    fn decode(&self, f: &GradedElement, arity: usize) -> MultiVector {
        let ctx = self.ps.ctx();
        let mut out = Alt::zero(ctx.vars(), self.theta.len(), arity);
        let pos: Vec<usize> = self.theta.iter().map(|t| ctx.gen_index(t).unwrap()).collect();
        for (m, c) in f.terms() {
            let idx: Vec<usize> = (0..self.theta.len()).filter(|&i| m[pos[i]] == 1).collect();
            // generators are ordered like the coordinates, so the monomial is
            // already θ_{i1}⋯θ_{ik} with i1 < … < ik
            out.add_to(&idx, c.clone());
        }
        out
    }
}

/// Schouten bracket, computed as `-{P, Q}` on `T*[1]M`.
pub fn schouten_bracket(p: &MultiVector, q: &MultiVector) -> MultiVector {
    let vars = p.vars().clone();
    let sc = ShiftedCotangent::new(&vars);
    let q = Alt::clone(q);
    let b = sc
        .ps
        .poisson_bracket(&sc.encode(p), &sc.encode(&q))
        .expect("same context");
    let arity = (p.arity() + q.arity()).saturating_sub(1);
    sc.decode(&-b, arity)
}

/// `H(π♯dx^a, π♯dx^b, π♯dx^c)` as a trivector.
pub fn pushforward_three(pi: &MultiVector, h: &BaseForm) -> Result<MultiVector> {
    check_bivector(pi)?;
    let m = pi.dim();
    let sharp: Vec<Vec<Polynomial>> = (0..m).map(|a| pi_sharp(pi, a)).collect();
    let mut out = Alt::zero(pi.vars(), m, 3);
    for t in increasing_tuples(m, 3) {
        let v = h.eval(&[sharp[t[0]].clone(), sharp[t[1]].clone(), sharp[t[2]].clone()])?;
        out.add_to(&t, v);
    }
    Ok(out)
}

/// `½[π, π]_S = ⟨⊗³π, H⟩` and `dH = 0`.
pub fn check_twisted_poisson(pi: &MultiVector, h: &BaseForm) -> Result<Verdict> {
    let half = schouten_bracket(pi, pi).map(|c| c.scale(&ratio(1, 2)));
    let rhs = pushforward_three(pi, h)?;
    let diff = half.try_sub(&rhs)?;
    let bracket = Verdict::from_residuals("schouten-identity", diff.residual_lines("residual"));
    let closed = Verdict::from_residuals("h-closed", forms::de_rham_d(h).residual_lines("dH"));
    Ok(Verdict::from_residuals("twisted-poisson", vec![]).with_subchecks(vec![bracket, closed]))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::poly::{parse_poly, vars};

    fn r3() -> Vars {
        vars(["x", "y", "z"])
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &r3()).unwrap()
    }

    pub(crate) fn so3() -> LieAlgebroid {
        let v = r3();
        // ρ(e_a) = -ε_{aij} x^i ∂_j, [e_a, e_b] = ε_{abc} e_c
        let anchor = vec![
            vec![p("0"), p("z"), p("-y")],
            vec![p("-z"), p("0"), p("x")],
            vec![p("y"), p("-x"), p("0")],
        ];
        let mut c = vec![vec![vec![p("0"); 3]; 3]; 3];
        for (a, b, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[k][a][b] = p("1");
            c[k][b][a] = p("-1");
        }
        LieAlgebroid::new(&v, anchor, c).unwrap()
    }

    #[test]
    fn so3_action_passes() {
        let v = so3().check_lie_algebroid();
        assert!(v.passed, "{}", v.render(0));
    }

    #[test]
    fn tangent_passes() {
        assert!(LieAlgebroid::tangent(&vars(["x", "y"])).check_lie_algebroid().passed);
    }

    #[test]
    fn mutated_structure_fails_both_ways() {
        let good = so3();
        let mut c = good.structure.clone();
        c[2][0][1] = p("-1");
        c[2][1][0] = p("1");
        let bad = LieAlgebroid::new(&r3(), good.anchor.clone(), c).unwrap();
        let v = bad.check_lie_algebroid();
        assert!(!v.passed);
        assert!(!v.subchecks[0].passed && !v.subchecks[1].passed);
    }

    #[test]
    fn rejects_non_antisymmetric_structure() {
        let good = so3();
        let mut c = good.structure.clone();
        c[2][1][0] = p("1");
        assert!(LieAlgebroid::new(&r3(), good.anchor.clone(), c).is_err());
    }

    #[test]
    fn liouville_differential() {
        let v = vars(["x", "y"]);
        let t = LieAlgebroid::tangent(&v);
        let mut j = Alt::zero(&v, 2, 1);
        j.set(&[1], parse_poly("-x", &v).unwrap()).unwrap();
        let dj = t.e_differential(&j).unwrap();
        assert_eq!(dj.get(&[0, 1]), parse_poly("-1", &v).unwrap());
    }

    #[test]
    fn chevalley_eilenberg_on_so3() {
        // point base: dα(e_a, e_b) = -α([e_a, e_b]) = -ε_{abc} α_c
        let v = vars(Vec::<String>::new());
        let g = so3();
        let c = g
            .structure
            .iter()
            .map(|m| {
                m.iter()
                    .map(|r| r.iter().map(|x| Polynomial::constant(&v, x.as_constant().unwrap())).collect())
                    .collect()
            })
            .collect();
        let alg = LieAlgebroid::new(&v, vec![vec![]; 3], c).unwrap();
        let mut a = Alt::zero(&v, 3, 1);
        for (i, k) in [(0, 5), (1, 7), (2, 11)] {
            a.set(&[i], Polynomial::from_int(&v, k)).unwrap();
        }
        let d = alg.e_differential(&a).unwrap();
        assert_eq!(d.get(&[0, 1]), Polynomial::from_int(&v, -11));
        assert_eq!(d.get(&[1, 2]), Polynomial::from_int(&v, -5));
        assert_eq!(d.get(&[0, 2]), Polynomial::from_int(&v, 7));
        assert!(alg.e_differential(&d).unwrap().is_zero());
    }

    #[test]
    fn schouten_basics() {
        let v = vars(["x1", "x2"]);
        let q = |s: &str| parse_poly(s, &v).unwrap();
        let mut pi = Alt::zero(&v, 2, 2);
        pi.set(&[0, 1], q("1")).unwrap();
        assert!(schouten_bracket(&pi, &pi).is_zero());
        pi.set(&[0, 1], q("x1")).unwrap();
        assert!(schouten_bracket(&pi, &pi).is_zero());
        // [X, f] = X(f)
        let mut x = Alt::zero(&v, 2, 1);
        x.set(&[0], q("x2")).unwrap();
        x.set(&[1], q("x1^2")).unwrap();
        let f = Alt::scalar(2, &q("x1*x2"));
        let xf = schouten_bracket(&x, &f);
        assert_eq!(xf.get(&[]), q("x2^2 + x1^3"));
    }

    #[test]
    fn constant_poisson_plane() {
        let v = vars(["x1", "x2"]);
        let mut pi = Alt::zero(&v, 2, 2);
        pi.set(&[0, 1], Polynomial::one(&v)).unwrap();
        let alg = poisson_algebroid(&pi).unwrap();
        assert!(alg.check_lie_algebroid().passed);
        assert_eq!(alg.anchor_of(0)[1], Polynomial::from_int(&v, -1));
    }

    #[test]
    fn twisted_poisson_r3_both_sides_vanish() {
        let mut pi = Alt::zero(&r3(), 3, 2);
        pi.set(&[0, 1], p("1")).unwrap();
        let mut h = Alt::zero(&r3(), 3, 3);
        h.set(&[0, 1, 2], p("z")).unwrap();
        assert!(schouten_bracket(&pi, &pi).is_zero());
        assert!(pushforward_three(&pi, &h).unwrap().is_zero());
        let v = check_twisted_poisson(&pi, &h).unwrap();
        assert!(v.passed, "{}", v.render(0));
        assert!(twisted_poisson_algebroid(&pi, &h).unwrap().check_lie_algebroid().passed);
    }

    #[test]
    fn interior_product_frame() {
        let g = so3();
        let mut w = Alt::zero(&r3(), 3, 2);
        w.set(&[0, 1], p("1")).unwrap();
        let got = g.interior_product(&g.frame(0), &w).unwrap();
        assert_eq!(got.get(&[1]), p("1"));
        assert_eq!(got.components().count(), 1);
    }
}
