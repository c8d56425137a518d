//! Pre-n-plectic forms and compatible E-n-forms.
//!
//! The pullback along the anchor fills the first `k` slots in order:
//!
//! ```text
//! (ι^k ω)(v_{k+1},…,v_{n+1})(e_1,…,e_k) = ω(ρe_1, …, ρe_k, v_{k+1}, …, v_{n+1})
//! ```
//!
//! With this ordering `ι^{n+1}` is a chain map, `ᴱd(ι^n λ) = ι^{n+1} dλ`, and a
//! compatible `J` satisfies `ᴱdJ = -ι^{n+1}ω`.

use crate::algebroid::LieAlgebroid;
use crate::error::{Error, Result};
use crate::forms::{increasing_tuples, Alt, BaseForm, EForm, MixedForm};
use crate::report::Verdict;

pub use crate::forms::de_rham_d;

/// A closed `(n+1)`-form.
#[derive(Clone, Debug, PartialEq)]
pub struct PreNPlectic {
    form: BaseForm,
    n: usize,
}

impl PreNPlectic {
    /// Rejects forms that are not exactly closed or have arity below 2.
    pub fn new(form: BaseForm) -> Result<Self> {
        let w = Self::unchecked(form)?;
        let d = de_rham_d(&w.form);
        if !d.is_zero() {
            return Err(Error::Precondition(format!(
                "form is not closed: {}",
                d.residual_lines("d").join(", ")
            )));
        }
        Ok(w)
    }

    /// Skip the closedness test; checks that consume this report it as a
    /// failed sub-check instead.
    pub fn unchecked(form: BaseForm) -> Result<Self> {
        if form.arity() < 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: form.arity(),
            });
        }
        let n = form.arity() - 1;
        Ok(PreNPlectic { form, n })
    }

    pub fn form(&self) -> &BaseForm {
        &self.form
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn closedness(&self) -> Verdict {
        Verdict::from_residuals("omega-closed", de_rham_d(&self.form).residual_lines("dω"))
    }
}

fn check_base(omega: &BaseForm, alg: &LieAlgebroid) -> Result<()> {
    if omega.dim() != alg.dim() {
        return Err(Error::ArityMismatch {
            expected: alg.dim(),
            found: omega.dim(),
        });
    }
    Ok(())
}

/// `ι^k ω ∈ Ω^{p-k}(M, ∧ᵏE*)` for a `p`-form `ω`, `1 ≤ k ≤ p`.
pub fn iota_rho_k(omega: &BaseForm, k: usize, alg: &LieAlgebroid) -> Result<MixedForm> {
    check_base(omega, alg)?;
    let p = omega.arity();
    if k == 0 || k > p {
        return Err(Error::OutOfRange(format!(
            "pullback order {k} outside 1..={p}"
        )));
    }
    let mut out = MixedForm::zero(alg.vars(), alg.rank(), p - k, k);
    for a in increasing_tuples(alg.rank(), k) {
        let mut cur = omega.clone();
        for &b in &a {
            cur = cur.contract(alg.anchor_of(b))?;
        }
        for (i, v) in cur.components() {
            out.add_to(i, &a, v.clone());
        }
    }
    Ok(out)
}

/// Full pullback `ι^p ω` of a `p`-form, as an E-form.
pub fn pullback(omega: &BaseForm, alg: &LieAlgebroid) -> Result<EForm> {
    iota_rho_k(omega, omega.arity(), alg)?.to_eform()
}

/// `ᴱdJ + ι^{n+1}ω`; zero exactly when `J` is compatible.
pub fn compatibility_residual(j: &EForm, omega: &PreNPlectic, alg: &LieAlgebroid) -> Result<EForm> {
    if j.arity() != omega.n() {
        return Err(Error::ArityMismatch {
            expected: omega.n(),
            found: j.arity(),
        });
    }
    alg.e_differential(j)?.try_add(&pullback(omega.form(), alg)?)
}

/// Compatibility of `J` with `ω`, including the algebroid axioms and the
/// closedness of `ω` as sub-checks.
pub fn check_compatible(j: &EForm, omega: &PreNPlectic, alg: &LieAlgebroid) -> Result<Verdict> {
    let r = compatibility_residual(j, omega, alg)?;
    let eq = Verdict::from_residuals("compatibility-equation", r.residual_lines("ᴱdJ+ιω"));
    Ok(Verdict::from_residuals("compatible", vec![]).with_subchecks(vec![
        alg.check_lie_algebroid(),
        omega.closedness(),
        eq,
    ]))
}

/// `ᴱd(ι^{n+1}ω) = 0`. Accepts non-closed forms.
pub fn check_consistency(omega: &BaseForm, alg: &LieAlgebroid) -> Result<Verdict> {
    let d = alg.e_differential(&pullback(omega, alg)?)?;
    Ok(Verdict::from_residuals("consistency", d.residual_lines("ᴱd(ιω)")))
}

/// `(J - ι^n λ, dλ)`: the new form is compatible with `ω + dλ` whenever `J`
/// is compatible with `ω`.
pub fn gauge_transform(j: &EForm, lambda: &BaseForm, alg: &LieAlgebroid) -> Result<(EForm, BaseForm)> {
    if lambda.arity() != j.arity() {
        return Err(Error::ArityMismatch {
            expected: j.arity(),
            found: lambda.arity(),
        });
    }
    let shifted = j.try_sub(&pullback(lambda, alg)?)?;
    Ok((shifted, de_rham_d(lambda)))
}

/// `J + ᴱdK`.
pub fn exact_shift(j: &EForm, k: &EForm, alg: &LieAlgebroid) -> Result<EForm> {
    if k.arity() + 1 != j.arity() {
        return Err(Error::ArityMismatch {
            expected: j.arity().saturating_sub(1),
            found: k.arity(),
        });
    }
    j.try_add(&alg.e_differential(k)?)
}

/// `ω + dλ` as a new pre-n-plectic form (closedness is preserved).
pub fn shift_form(omega: &PreNPlectic, d_lambda: &BaseForm) -> Result<PreNPlectic> {
    PreNPlectic::unchecked(omega.form().try_add(d_lambda)?)
}

/// Zero E-form of arity `k`.
pub fn zero_eform(alg: &LieAlgebroid, k: usize) -> EForm {
    Alt::zero(alg.vars(), alg.rank(), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, vars, Polynomial};

    #[test]
    fn liouville_is_compatible() {
        let v = vars(["x", "y"]);
        let alg = LieAlgebroid::tangent(&v);
        let mut w = Alt::zero(&v, 2, 2);
        w.set(&[0, 1], Polynomial::one(&v)).unwrap();
        let w = PreNPlectic::new(w).unwrap();
        let mut j = Alt::zero(&v, 2, 1);
        j.set(&[1], parse_poly("-x", &v).unwrap()).unwrap();
        let verdict = check_compatible(&j, &w, &alg).unwrap();
        assert!(verdict.passed, "{}", verdict.render(0));
        j.set(&[0], parse_poly("y", &v).unwrap()).unwrap();
        assert!(!check_compatible(&j, &w, &alg).unwrap().passed);
    }

    #[test]
    fn rotation_pullback() {
        // ρ(e) = x∂y - y∂x, ω = dx∧dy: (ι¹ω)(e) = -x dx - y dy
        let v = vars(["x", "y"]);
        let p = |s: &str| parse_poly(s, &v).unwrap();
        let alg = LieAlgebroid::new(&v, vec![vec![p("-y"), p("x")]], vec![vec![vec![p("0")]]]).unwrap();
        let mut w = Alt::zero(&v, 2, 2);
        w.set(&[0, 1], p("1")).unwrap();
        let m = iota_rho_k(&w, 1, &alg).unwrap();
        assert_eq!(m.get(&[0], &[0]), p("-x"));
        assert_eq!(m.get(&[1], &[0]), p("-y"));
        assert!(iota_rho_k(&w, 3, &alg).is_err());
        assert!(iota_rho_k(&w, 0, &alg).is_err());
    }

    #[test]
    fn non_closed_forms() {
        let v = vars(["x1", "x2", "x3"]);
        let mut w = Alt::zero(&v, 3, 2);
        w.set(&[1, 2], parse_poly("x1", &v).unwrap()).unwrap();
        assert!(PreNPlectic::new(w.clone()).is_err());
        let alg = LieAlgebroid::tangent(&v);
        assert!(!check_consistency(&w, &alg).unwrap().passed);
    }
}
