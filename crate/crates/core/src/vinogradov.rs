//! The Dorfman-type bracket on `E ⊕ ∧^{n-1}E*` and graphs of E-n-forms.
//!
//! ```text
//! ⟨u+α, v+β⟩ = ι_uβ + ι_vα
//! ⟦u+α, v+β⟧ = [u,v] + ᴱL_uβ - ι_v ᴱdα + Φ(u, v, ·),   Φ = ι^{n+1}ω
//! ```
//!
//! `ι_u` fills the first free slot, so `ι_v ι_u X = X(u, v, …)`. With this
//! placement of `Φ`, the bracket of graph sections `u + ι_uJ` differs from the
//! graph of `[u,v]` by exactly `(ᴱdJ + Φ)(u, v, …)`.

use crate::algebroid::{ESection, LieAlgebroid};
use crate::compat::{pullback, PreNPlectic};
use crate::error::{Error, Result};
use crate::forms::{increasing_tuples, Alt, EForm};
use crate::poly::Polynomial;
use crate::report::Verdict;
use crate::sample::Sampler;

#[derive(Clone, Debug, PartialEq)]
pub struct VinSection {
    pub vec: ESection,
    pub form: EForm,
}

impl VinSection {
    pub fn new(vec: ESection, form: EForm) -> Self {
        VinSection { vec, form }
    }

    pub fn zero(alg: &LieAlgebroid, n: usize) -> Self {
        VinSection {
            vec: alg.zero_section(),
            form: Alt::zero(alg.vars(), alg.rank(), n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vec.iter().all(Polynomial::is_zero) && self.form.is_zero()
    }

    pub fn try_add(&self, o: &VinSection) -> Result<VinSection> {
        Ok(VinSection {
            vec: self.vec.iter().zip(&o.vec).map(|(a, b)| a + b).collect(),
            form: self.form.try_add(&o.form)?,
        })
    }

    pub fn try_sub(&self, o: &VinSection) -> Result<VinSection> {
        Ok(VinSection {
            vec: self.vec.iter().zip(&o.vec).map(|(a, b)| a - b).collect(),
            form: self.form.try_sub(&o.form)?,
        })
    }

    pub fn describe(&self) -> String {
        let v: Vec<String> = self.vec.iter().map(|p| p.to_string()).collect();
        format!("({}) + {}", v.join(", "), self.form)
    }

    fn residual_lines(&self, label: &str) -> Vec<String> {
        let mut out: Vec<String> = self
            .vec
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(a, p)| format!("{label}.vec[{}] = {p}", a + 1))
            .collect();
        out.extend(self.form.residual_lines(&format!("{label}.form")));
        out
    }
}

/// Bracket data: the algebroid, `n`, and `Φ = ι^{n+1}ω`.
pub struct Vinogradov<'a> {
    alg: &'a LieAlgebroid,
    n: usize,
    phi: EForm,
}

impl<'a> Vinogradov<'a> {
    pub fn new(alg: &'a LieAlgebroid, omega: &PreNPlectic) -> Result<Self> {
        let n = omega.n();
        Ok(Vinogradov {
            alg,
            n,
            phi: pullback(omega.form(), alg)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, s: &VinSection) -> Result<()> {
        if s.form.arity() + 1 != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n - 1,
                found: s.form.arity(),
            });
        }
        if s.vec.len() != self.alg.rank() {
            return Err(Error::RankMismatch {
                expected: self.alg.rank(),
                found: s.vec.len(),
            });
        }
        Ok(())
    }

    /// `ι_uβ + ι_vα`, an `(n-2)`-form.
    pub fn inner(&self, s1: &VinSection, s2: &VinSection) -> Result<EForm> {
        if self.n < 2 {
            return Err(Error::Precondition(
                "the pairing needs n ≥ 2 (its values are (n-2)-forms)".into(),
            ));
        }
        self.check(s1)?;
        self.check(s2)?;
        let a = self.alg.interior_product(&s1.vec, &s2.form)?;
        a.try_add(&self.alg.interior_product(&s2.vec, &s1.form)?)
    }

    pub fn dorfman(&self, s1: &VinSection, s2: &VinSection) -> Result<VinSection> {
        self.check(s1)?;
        self.check(s2)?;
        let (u, alpha) = (&s1.vec, &s1.form);
        let (v, beta) = (&s2.vec, &s2.form);
        let vec = self.alg.bracket_on_sections(u, v)?;
        let mut form = self.alg.e_lie_derivative(u, beta)?;
        form = form.try_sub(&self.alg.interior_product(v, &self.alg.e_differential(alpha)?)?)?;
        form = form.try_add(&self.phi.contract(u)?.contract(v)?)?;
        Ok(VinSection { vec, form })
    }

    /// `⟦a,⟦b,c⟧⟧ - ⟦⟦a,b⟧,c⟧ - ⟦b,⟦a,c⟧⟧`.
    pub fn leibniz_defect(&self, a: &VinSection, b: &VinSection, c: &VinSection) -> Result<VinSection> {
        let lhs = self.dorfman(a, &self.dorfman(b, c)?)?;
        let r1 = self.dorfman(&self.dorfman(a, b)?, c)?;
        let r2 = self.dorfman(b, &self.dorfman(a, c)?)?;
        lhs.try_sub(&r1)?.try_sub(&r2)
    }

    /// The cyclic sum `⟦⟦a,b⟧,c⟧ + ⟦⟦b,c⟧,a⟧ + ⟦⟦c,a⟧,b⟧`.
    pub fn cyclic_sum(&self, a: &VinSection, b: &VinSection, c: &VinSection) -> Result<VinSection> {
        let t1 = self.dorfman(&self.dorfman(a, b)?, c)?;
        let t2 = self.dorfman(&self.dorfman(b, c)?, a)?;
        let t3 = self.dorfman(&self.dorfman(c, a)?, b)?;
        t1.try_add(&t2)?.try_add(&t3)
    }

    /// `e_a + 0` for every frame element, then `0 + e^A` for every frame
    /// `(n-1)`-form.
    pub fn frame_sections(&self) -> Vec<VinSection> {
        let mut out = Vec::new();
        for a in 0..self.alg.rank() {
            let mut s = VinSection::zero(self.alg, self.n);
            s.vec = self.alg.frame(a);
            out.push(s);
        }
        for t in increasing_tuples(self.alg.rank(), self.n - 1) {
            let mut s = VinSection::zero(self.alg, self.n);
            s.form.add_to(&t, Polynomial::one(self.alg.vars()));
            out.push(s);
        }
        out
    }

    pub fn random_section(&self, rng: &mut Sampler, max_deg: u32) -> VinSection {
        let vars = self.alg.vars();
        VinSection {
            vec: rng.section(vars, self.alg.rank(), max_deg),
            form: rng.alt(vars, self.alg.rank(), self.n - 1, max_deg),
        }
    }

    /// `u + ι_uJ`.
    pub fn graph(&self, j: &EForm, u: &[Polynomial]) -> Result<VinSection> {
        Ok(VinSection {
            vec: u.to_vec(),
            form: self.alg.interior_product(u, j)?,
        })
    }
}

/// Leibniz identity on all frame triples and `samples` random triples.
/// The literal cyclic-sum form is evaluated on frame triples and reported
/// as a note; it does not hold for non-skew brackets in general.
pub fn check_leibniz(
    omega: &PreNPlectic,
    alg: &LieAlgebroid,
    samples: usize,
    rng: &mut Sampler,
) -> Result<Verdict> {
    let vin = Vinogradov::new(alg, omega)?;
    let frame = vin.frame_sections();
    let mut res = Vec::new();
    let mut cyclic_nonzero = 0usize;
    let mut triples = 0usize;
    'frame: for (ia, a) in frame.iter().enumerate() {
        for (ib, b) in frame.iter().enumerate() {
            for (ic, c) in frame.iter().enumerate() {
                triples += 1;
                let d = vin.leibniz_defect(a, b, c)?;
                if !d.is_zero() {
                    res.push(format!("frame triple ({} {} {}): {}", ia + 1, ib + 1, ic + 1, d.residual_lines("defect").join("; ")));
                    if res.len() >= 8 {
                        break 'frame;
                    }
                }
                if !vin.cyclic_sum(a, b, c)?.is_zero() {
                    cyclic_nonzero += 1;
                }
            }
        }
    }
    for k in 0..samples {
        if res.len() >= 8 {
            break;
        }
        let a = vin.random_section(rng, 2);
        let b = vin.random_section(rng, 2);
        let c = vin.random_section(rng, 2);
        let d = vin.leibniz_defect(&a, &b, &c)?;
        if !d.is_zero() {
            res.push(format!(
                "random triple #{k} [{} | {} | {}]: {}",
                a.describe(),
                b.describe(),
                c.describe(),
                d.residual_lines("defect").join("; ")
            ));
        }
    }
    let mut v = Verdict::from_residuals("leibniz-identity", res);
    v = v.with_note(format!(
        "cyclic-sum form nonzero on {cyclic_nonzero} of {triples} frame triples"
    ));
    Ok(Verdict::from_residuals("leibniz", vec![])
        .with_subchecks(vec![alg.check_lie_algebroid(), omega.closedness(), v]))
}

/// Isotropy and involutivity of the graph of `J`, on all frame pairs and
/// `samples` random pairs.
pub fn check_higher_dirac(
    j: &EForm,
    omega: &PreNPlectic,
    alg: &LieAlgebroid,
    samples: usize,
    rng: &mut Sampler,
) -> Result<Verdict> {
    let vin = Vinogradov::new(alg, omega)?;
    if j.arity() != vin.n() {
        return Err(Error::ArityMismatch {
            expected: vin.n(),
            found: j.arity(),
        });
    }
    let mut secs: Vec<(String, ESection)> =
        (0..alg.rank()).map(|a| (format!("e{}", a + 1), alg.frame(a))).collect();
    let nframe = secs.len();
    for k in 0..samples {
        secs.push((format!("random#{k}"), rng.section(alg.vars(), alg.rank(), 2)));
    }
    let mut iso = Vec::new();
    let mut inv = Vec::new();
    for (i, (na, u)) in secs.iter().enumerate() {
        let su = vin.graph(j, u)?;
        // frame × frame exhaustively, random sections paired with their successor
        let partners: Vec<usize> = if i < nframe {
            (0..nframe).collect()
        } else {
            vec![nframe + (i - nframe + 1) % samples]
        };
        for p in partners {
            let (nb, v) = &secs[p];
            let sv = vin.graph(j, v)?;
            if vin.n() >= 2 {
                let ip = vin.inner(&su, &sv)?;
                if !ip.is_zero() {
                    iso.extend(ip.residual_lines(&format!("⟨{na},{nb}⟩")));
                }
            }
            let target = vin.graph(j, &alg.bracket_on_sections(u, v)?)?;
            let d = vin.dorfman(&su, &sv)?.try_sub(&target)?;
            if !d.is_zero() && inv.len() < 12 {
                inv.extend(d.residual_lines(&format!("⟦{na},{nb}⟧")));
            }
        }
    }
    Ok(Verdict::from_residuals("dirac", vec![]).with_subchecks(vec![
        alg.check_lie_algebroid(),
        omega.closedness(),
        Verdict::from_residuals("isotropic", iso),
        Verdict::from_residuals("involutive", inv),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, vars};

    fn plane() -> (LieAlgebroid, PreNPlectic) {
        let v = vars(["x", "y"]);
        let alg = LieAlgebroid::tangent(&v);
        let mut w = Alt::zero(&v, 2, 2);
        w.set(&[0, 1], Polynomial::one(&v)).unwrap();
        (alg, PreNPlectic::new(w).unwrap())
    }

    #[test]
    fn zero_twist_reduces_to_algebroid_bracket() {
        let v = vars(["x", "y"]);
        let alg = LieAlgebroid::tangent(&v);
        let w = PreNPlectic::new(Alt::zero(&v, 2, 3)).unwrap();
        let vin = Vinogradov::new(&alg, &w).unwrap();
        let p = |s: &str| parse_poly(s, &v).unwrap();
        let u = VinSection::new(vec![p("x*y"), p("1")], Alt::zero(&v, 2, 1));
        let w2 = VinSection::new(vec![p("y"), p("x^2")], Alt::zero(&v, 2, 1));
        let b = vin.dorfman(&u, &w2).unwrap();
        assert_eq!(b.vec, alg.bracket_on_sections(&u.vec, &w2.vec).unwrap());
        assert!(b.form.is_zero());
    }

    #[test]
    fn liouville_graph_is_dirac_and_perturbation_is_not() {
        let (alg, w) = plane();
        let v = alg.vars().clone();
        let mut j = Alt::zero(&v, 2, 1);
        j.set(&[1], parse_poly("-x", &v).unwrap()).unwrap();
        let mut rng = Sampler::new(3);
        assert!(check_higher_dirac(&j, &w, &alg, 5, &mut rng).unwrap().passed);
        j.set(&[0], parse_poly("y", &v).unwrap()).unwrap();
        assert!(!check_higher_dirac(&j, &w, &alg, 5, &mut rng).unwrap().passed);
    }

    #[test]
    fn inner_needs_n_at_least_two() {
        let (alg, w) = plane();
        let vin = Vinogradov::new(&alg, &w).unwrap();
        let s = VinSection::zero(&alg, 1);
        assert!(vin.inner(&s, &s).is_err());
    }

    #[test]
    fn leibniz_on_plane() {
        let (alg, w) = plane();
        let mut rng = Sampler::new(11);
        let v = check_leibniz(&w, &alg, 10, &mut rng).unwrap();
        assert!(v.passed, "{}", v.render(0));
    }
}
