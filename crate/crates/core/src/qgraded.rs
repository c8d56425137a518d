//! Graded-geometric formulations of compatibility: the homological field
//! on `T*[n-1]E[1]` and the twisted QP structure on `T*[n]T*[n-1]E[1]`.
//!
//! Coordinates on `T*[n-1]E[1]` are `(x^i, q^a, z_i, y_a)` of degrees
//! `(0, 1, n-1, n-2)`; the second cotangent adds `(ξ_i, p_a, ζ^i, η^a)` of
//! degrees `(n, n-1, 1, 2)`. All generator names are fresh with respect to
//! the base coordinates.

use crate::algebroid::LieAlgebroid;
use crate::compat::{iota_rho_k, PreNPlectic};
use crate::error::{Error, Result};
use crate::forms::{de_rham_d, increasing_tuples, EForm};
use crate::graded::{fresh_names, Coord, GradedElement, VectorField};
use crate::poly::{ratio, Polynomial};
use crate::report::Verdict;
use crate::symplectic::PhaseSpace;

pub type GradedVectorField = VectorField;

/// Sign in front of `{J̲, -}` in the homological field: `(-1)^n`.
pub fn j_sign(n: usize) -> i64 {
    parity(n)
}

/// Sign in front of the `ι^n_ρ H` correction on the `z` components. Pinned
/// so that nilpotency matches compatibility for every `n`.
pub const H_SIGN: i64 = 1;

/// Sign in front of `H̃` in the twisted QP function, pinned the same way.
pub const H_TILDE_SIGN: i64 = 1;

fn parity(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `T*[n-1]E[1]` for a given algebroid, with coordinate names.
#[derive(Clone, Debug)]
pub struct LiePhaseSpace {
    pub space: PhaseSpace,
    pub n: usize,
    pub x: Vec<String>,
    pub q: Vec<String>,
    pub z: Vec<String>,
    pub y: Vec<String>,
}

fn names(alg: &LieAlgebroid, prefixes: &[(&str, usize)]) -> Vec<Vec<String>> {
    let mut taken: Vec<String> = alg.vars().to_vec();
    let mut out = Vec::new();
    for &(p, k) in prefixes {
        let ns = fresh_names(p, k, &taken);
        taken.extend(ns.iter().cloned());
        out.push(ns);
    }
    out
}

impl LiePhaseSpace {
    pub fn new(alg: &LieAlgebroid, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("n must be at least 1".into()));
        }
        let ni = n as i32;
        let x: Vec<String> = alg.vars().to_vec();
        let mut ns = names(alg, &[("q", alg.rank()), ("z", alg.dim()), ("y", alg.rank())]).into_iter();
        let (q, z, y) = (ns.next().unwrap(), ns.next().unwrap(), ns.next().unwrap());
        let mut pairs = Vec::new();
        for (xi, zi) in x.iter().zip(&z) {
            pairs.push((xi.as_str(), 0, zi.as_str(), ni - 1));
        }
        for (qa, ya) in q.iter().zip(&y) {
            pairs.push((qa.as_str(), 1, ya.as_str(), ni - 2));
        }
        let space = PhaseSpace::new(ni - 1, &pairs, &[])?;
        Ok(LiePhaseSpace { space, n, x, q, z, y })
    }

    fn el(&self, name: &str) -> GradedElement {
        self.space.element(name).expect("own coordinate")
    }

    fn coef(&self, p: &Polynomial) -> GradedElement {
        GradedElement::from_poly(self.space.ctx(), p)
    }

    /// `(-1)^{n-1} ρ^i_a z_i q^a + (-1)^{n-1}/2 C^a_{bc} q^b q^c y_a`.
    pub fn theta_lie(&self, alg: &LieAlgebroid) -> GradedElement {
        self.lie_function(alg).scale_int(parity(self.n - 1))
    }

    /// `ρ^i_a z_i q^a + ½ C^a_{bc} q^b q^c y_a`, the unsigned Hamiltonian.
    pub fn lie_function(&self, alg: &LieAlgebroid) -> GradedElement {
        let mut out = GradedElement::zero(self.space.ctx());
        for a in 0..alg.rank() {
            for i in 0..alg.dim() {
                let r = &alg.anchor_of(a)[i];
                if !r.is_zero() {
                    out = &out + &(&(&self.coef(r) * &self.el(&self.z[i])) * &self.el(&self.q[a]));
                }
            }
            for b in 0..alg.rank() {
                for c in b + 1..alg.rank() {
                    let s = alg.structure(a, b, c);
                    if !s.is_zero() {
                        let t = &(&self.el(&self.q[b]) * &self.el(&self.q[c])) * &self.el(&self.y[a]);
                        out = &out + &(&self.coef(s) * &t);
                    }
                }
            }
        }
        out
    }

    /// `φ_Lie = ρ^i_a q^a z_i + ½ C^a_{bc} q^b q^c y_a`, the twisting function.
    pub fn phi_lie(&self, alg: &LieAlgebroid) -> GradedElement {
        let mut out = GradedElement::zero(self.space.ctx());
        for a in 0..alg.rank() {
            for i in 0..alg.dim() {
                let r = &alg.anchor_of(a)[i];
                if !r.is_zero() {
                    out = &out + &(&(&self.coef(r) * &self.el(&self.q[a])) * &self.el(&self.z[i]));
                }
            }
            for b in 0..alg.rank() {
                for c in b + 1..alg.rank() {
                    let s = alg.structure(a, b, c);
                    if !s.is_zero() {
                        let t = &(&self.el(&self.q[b]) * &self.el(&self.q[c])) * &self.el(&self.y[a]);
                        out = &out + &(&self.coef(s) * &t);
                    }
                }
            }
        }
        out
    }

    /// `J̲ = Σ_{a1<…<an} J_{a1…an} q^{a1}⋯q^{an}`.
    pub fn underline(&self, j: &EForm) -> Result<GradedElement> {
        LieAlgebroid::form_to_function(j, self.space.ctx(), &self.q)
    }

    /// `h_i = Σ_A (ι^n_ρ H)(∂_i)(e_A) q^A`, the coefficient of `∂/∂z_i`.
    fn h_components(&self, h: &PreNPlectic, alg: &LieAlgebroid) -> Result<Vec<GradedElement>> {
        let m = iota_rho_k(h.form(), self.n, alg)?;
        let mut out = vec![GradedElement::zero(self.space.ctx()); alg.dim()];
        for ((base, e), c) in m.components() {
            let mut t = self.coef(c);
            for &a in e {
                t = &t * &self.el(&self.q[a]);
            }
            out[base[0]] = &out[base[0]] + &t;
        }
        Ok(out)
    }

    /// `X(c) = s·{f, c}` on every coordinate.
    fn hamiltonian_field(&self, f: &GradedElement, s: i64) -> Result<VectorField> {
        let ctx = self.space.ctx();
        let mut field = VectorField::zero(ctx);
        for name in self.x.iter().chain(&self.q).chain(&self.z).chain(&self.y) {
            let c = Coord::lookup(ctx, name).expect("own coordinate");
            field.set(c, self.space.poisson_bracket(f, &self.el(name))?.scale_int(s));
        }
        Ok(field)
    }

    /// `Q_Lie = -{Θ_Lie, -}`.
    pub fn q_lie(&self, alg: &LieAlgebroid) -> Result<VectorField> {
        self.hamiltonian_field(&self.theta_lie(alg), -1)
    }
}

fn add_fields(a: &VectorField, b: &VectorField, coords: &[Coord]) -> VectorField {
    let mut out = VectorField::zero(a.ctx());
    for &c in coords {
        out.set(c, &a.image(c) + &b.image(c));
    }
    out
}

fn check_arity(j: &EForm, h: &PreNPlectic, alg: &LieAlgebroid) -> Result<usize> {
    if j.arity() != h.n() {
        return Err(Error::ArityMismatch {
            expected: h.n(),
            found: j.arity(),
        });
    }
    if j.dim() != alg.rank() || h.form().dim() != alg.dim() {
        return Err(Error::RankMismatch {
            expected: alg.rank(),
            found: j.dim(),
        });
    }
    Ok(h.n())
}

fn q_comp_with(
    alg: &LieAlgebroid,
    j: &EForm,
    h: &PreNPlectic,
    signs: (i64, i64),
) -> Result<(LiePhaseSpace, VectorField)> {
    let n = check_arity(j, h, alg)?;
    let lps = LiePhaseSpace::new(alg, n)?;
    let ctx = lps.space.ctx().clone();
    let coords: Vec<Coord> = lps
        .x
        .iter()
        .chain(&lps.q)
        .chain(&lps.z)
        .chain(&lps.y)
        .map(|s| Coord::lookup(&ctx, s).unwrap())
        .collect();
    let lie = lps.q_lie(alg)?;
    let jf = lps.hamiltonian_field(&lps.underline(j)?, signs.0)?;
    let mut field = add_fields(&lie, &jf, &coords);
    for (i, hi) in lps.h_components(h, alg)?.into_iter().enumerate() {
        let c = Coord::lookup(&ctx, &lps.z[i]).unwrap();
        field.set(c, &field.image(c) + &hi.scale_int(signs.1));
    }
    Ok((lps, field))
}

/// `Q_comp = -{Θ_Lie, -} ± {J̲, -} ± ι^n_ρH(q)·∂/∂z`.
pub fn build_q_comp(alg: &LieAlgebroid, j: &EForm, h: &PreNPlectic) -> Result<(LiePhaseSpace, VectorField)> {
    q_comp_with(alg, j, h, (j_sign(h.n()), H_SIGN))
}

fn square_lines(field: &VectorField) -> Result<Vec<String>> {
    Ok(field
        .square_on_coordinates()?
        .into_iter()
        .map(|(c, v)| format!("Q²({c}) = {v}"))
        .collect())
}

fn q_verdict(alg: &LieAlgebroid, j: &EForm, h: &PreNPlectic, signs: (i64, i64)) -> Result<Verdict> {
    let (_, field) = q_comp_with(alg, j, h, signs)?;
    Ok(Verdict::from_residuals("q-nilpotent", vec![]).with_subchecks(vec![
        alg.check_lie_algebroid(),
        h.closedness(),
        Verdict::from_residuals("q-squared", square_lines(&field)?),
    ]))
}

/// `Q_comp² = 0`, evaluated on every coordinate.
pub fn check_q_comp_nilpotent(alg: &LieAlgebroid, j: &EForm, h: &PreNPlectic) -> Result<Verdict> {
    q_verdict(alg, j, h, (j_sign(h.n()), H_SIGN))
}

/// `T*[n]T*[n-1]E[1]` with the twisting data.
#[derive(Clone, Debug)]
pub struct TwistedSpace {
    pub space: PhaseSpace,
    pub lie: LiePhaseSpace,
    pub xi: Vec<String>,
    pub p: Vec<String>,
    pub zeta: Vec<String>,
    pub eta: Vec<String>,
}

impl TwistedSpace {
    pub fn new(alg: &LieAlgebroid, n: usize) -> Result<Self> {
        let lie = LiePhaseSpace::new(alg, n)?;
        let mut taken: Vec<String> = lie.space.ctx().vars().to_vec();
        taken.extend(lie.space.ctx().gens().iter().map(|g| g.name.clone()));
        let mut fresh = |p: &str, k: usize| {
            let ns = fresh_names(p, k, &taken);
            taken.extend(ns.iter().cloned());
            ns
        };
        let xi = fresh("xi", alg.dim());
        let p = fresh("p", alg.rank());
        let zeta = fresh("zeta", alg.dim());
        let eta = fresh("eta", alg.rank());
        let ni = n as i32;
        let mut pairs = Vec::new();
        for i in 0..alg.dim() {
            pairs.push((lie.x[i].as_str(), 0, xi[i].as_str(), ni));
        }
        for a in 0..alg.rank() {
            pairs.push((lie.q[a].as_str(), 1, p[a].as_str(), ni - 1));
        }
        for i in 0..alg.dim() {
            pairs.push((lie.z[i].as_str(), ni - 1, zeta[i].as_str(), 1));
        }
        for a in 0..alg.rank() {
            pairs.push((lie.y[a].as_str(), ni - 2, eta[a].as_str(), 2));
        }
        let space = PhaseSpace::new(ni, &pairs, &[])?;
        Ok(TwistedSpace {
            space,
            lie,
            xi,
            p,
            zeta,
            eta,
        })
    }

    fn el(&self, name: &str) -> GradedElement {
        self.space.element(name).expect("own coordinate")
    }

    /// `ξ_i ζ^i + p_a η^a`.
    pub fn canonical(&self) -> GradedElement {
        let mut out = GradedElement::zero(self.space.ctx());
        for (a, b) in self.xi.iter().zip(&self.zeta).chain(self.p.iter().zip(&self.eta)) {
            out = &out + &(&self.el(a) * &self.el(b));
        }
        out
    }

    /// `H̃ = Σ_{i1<…<ik} H_{i1…ik} ζ^{i1}⋯ζ^{ik}`.
    pub fn h_tilde(&self, h: &PreNPlectic) -> GradedElement {
        let ctx = self.space.ctx();
        let mut out = GradedElement::zero(ctx);
        for idx in increasing_tuples(h.form().dim(), h.form().arity()) {
            let c = h.form().get(&idx);
            if c.is_zero() {
                continue;
            }
            let mut t = GradedElement::from_poly(ctx, &c);
            for &i in &idx {
                t = &t * &self.el(&self.zeta[i]);
            }
            out = &out + &t;
        }
        out
    }

    /// `ξζ + pη + sign·H̃`.
    pub fn theta_tilde(&self, h: &PreNPlectic, sign: i64) -> GradedElement {
        &self.canonical() + &self.h_tilde(h).scale_int(sign)
    }

    /// `φ_Lie - J̲`, embedded in the doubled space.
    pub fn phi(&self, alg: &LieAlgebroid, j: &EForm) -> Result<(GradedElement, GradedElement)> {
        let ctx = self.space.ctx();
        let lie = self.lie.phi_lie(alg).embed(ctx)?;
        let jl = self.lie.underline(j)?.embed(ctx)?;
        Ok((lie, jl))
    }
}

/// Outcome of the twisted QP computation, with the two obstructions split.
#[derive(Clone, Debug)]
pub struct TwistedQp {
    /// `pr e^{ad φ} Θ̃`
    pub projected: GradedElement,
    /// `pr ½{{Θ̃, φ_Lie}, φ_Lie}`
    pub algebroid_obstruction: GradedElement,
    /// the remainder, built from `J` and `H`
    pub compatibility_obstruction: GradedElement,
    /// `{Θ̃, Θ̃}`
    pub master: GradedElement,
}

fn twisted_qp_with(alg: &LieAlgebroid, j: &EForm, h: &PreNPlectic, sign: i64) -> Result<TwistedQp> {
    let n = check_arity(j, h, alg)?;
    let ts = TwistedSpace::new(alg, n)?;
    let theta = ts.theta_tilde(h, sign);
    let (lie, jl) = ts.phi(alg, j)?;
    let phi = &lie - &jl;
    let projected = ts.space.project_to_base(&ts.space.twist(&phi, &theta)?)?;
    let inner = ts.space.poisson_bracket(&ts.canonical(), &lie)?;
    let alg_obs = ts
        .space
        .project_to_base(&ts.space.poisson_bracket(&inner, &lie)?)?
        .scale(&ratio(1, 2));
    let compat_obs = &projected - &alg_obs;
    let master = ts.space.poisson_bracket(&theta, &theta)?;
    Ok(TwistedQp {
        projected,
        algebroid_obstruction: alg_obs,
        compatibility_obstruction: compat_obs,
        master,
    })
}

/// Full twisted QP computation with the pinned sign of `H̃`.
pub fn twisted_qp(alg: &LieAlgebroid, j: &EForm, h: &PreNPlectic) -> Result<TwistedQp> {
    twisted_qp_with(alg, j, h, H_TILDE_SIGN)
}

fn element_lines(label: &str, f: &GradedElement) -> Vec<String> {
    if f.is_zero() {
        vec![]
    } else {
        vec![format!("{label} = {f}")]
    }
}

fn qp_verdict(t: &TwistedQp, h: &PreNPlectic) -> Verdict {
    let closed = Verdict::from_residuals("h-closed", de_rham_d(h.form()).residual_lines("dH"));
    Verdict::from_residuals("twisted-qp", vec![]).with_subchecks(vec![
        closed,
        Verdict::from_residuals("algebroid-obstruction", element_lines("pr ½{{Θ,φ_Lie},φ_Lie}", &t.algebroid_obstruction)),
        Verdict::from_residuals("compatibility-obstruction", element_lines("remainder", &t.compatibility_obstruction)),
    ])
}

/// `pr e^{ad φ} Θ̃ = 0` together with `dH = 0`; failures name the obstruction.
pub fn check_twisted_qp(alg: &LieAlgebroid, j: &EForm, h: &PreNPlectic) -> Result<Verdict> {
    Ok(qp_verdict(&twisted_qp(alg, j, h)?, h))
}
