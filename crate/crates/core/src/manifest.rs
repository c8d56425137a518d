//! JSON fixture manifests.
//!
//! Indices in manifests are 1-based and written as space-separated strings
//! (`"1 2"`); values are polynomials in the declared base coordinates.
//! Antisymmetric data may list any ordering of an index tuple, and listing
//! two orderings with inconsistent values is an error.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::algebroid::{poisson_algebroid, twisted_poisson_algebroid, LieAlgebroid};
use crate::compat::PreNPlectic;
use crate::error::{Error, Result};
use crate::forms::{Alt, MixedForm};
use crate::moment::Connection;
use crate::poly::{parse_poly, vars, Polynomial, Vars};

pub type Components = BTreeMap<String, String>;

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AlgebroidSpec {
    Explicit {
        /// `anchor[a][i] = ρ^i_a`
        anchor: Vec<Vec<String>>,
        /// `"c a b" → C^c_{ab}`
        #[serde(default)]
        structure: Components,
    },
    Tangent,
    Poisson {
        pi: Components,
    },
    TwistedPoisson {
        pi: Components,
        #[serde(rename = "H")]
        h: Components,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub name: String,
    pub base: Vec<String>,
    #[serde(default)]
    pub rank: Option<usize>,
    pub n: usize,
    pub algebroid: AlgebroidSpec,
    #[serde(default)]
    pub omega: Option<Components>,
    #[serde(default, rename = "J")]
    pub j: Option<Components>,
    #[serde(default)]
    pub mu: Option<Components>,
    /// `"b i a" → Γ^b_{ia}`
    #[serde(default)]
    pub connection: Option<Components>,
    /// `homotopy[k]`: `"E-indices | base-indices" → value` for `μ_k`.
    #[serde(default)]
    pub homotopy: Option<Vec<Components>>,
    #[serde(default)]
    pub checks: Vec<String>,
}

/// A manifest with every expression parsed and validated.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub n: usize,
    pub vars: Vars,
    pub algebroid: LieAlgebroid,
    pub omega: Option<PreNPlectic>,
    pub j: Option<Alt>,
    pub mu: Option<Alt>,
    pub connection: Option<Connection>,
    pub homotopy: Option<Vec<MixedForm>>,
    pub checks: Vec<String>,
}

fn ctx_err(field: &str, key: &str, e: Error) -> Error {
    Error::Manifest(format!("{field}[{key}]: {e}"))
}

fn parse_indices(field: &str, key: &str, bound: usize) -> Result<Vec<usize>> {
    key.split_whitespace()
        .map(|t| {
            let i: usize = t
                .parse()
                .map_err(|_| Error::Manifest(format!("{field}[{key}]: `{t}` is not an index")))?;
            if i == 0 || i > bound {
                return Err(Error::Manifest(format!(
                    "{field}[{key}]: index {i} outside 1..={bound}"
                )));
            }
            Ok(i - 1)
        })
        .collect()
}

fn value(field: &str, key: &str, src: &str, v: &Vars) -> Result<Polynomial> {
    parse_poly(src, v).map_err(|e| ctx_err(field, key, e))
}

/// Fill an alternating tensor, rejecting inconsistent duplicate orderings.
fn alt_from(field: &str, comps: &Components, v: &Vars, dim: usize, arity: usize) -> Result<Alt> {
    let mut out = Alt::zero(v, dim, arity);
    let mut seen = Alt::zero(v, dim, arity);
    for (key, src) in comps {
        let idx = parse_indices(field, key, dim)?;
        if idx.len() != arity {
            return Err(Error::Manifest(format!(
                "{field}[{key}]: expected {arity} indices, found {}",
                idx.len()
            )));
        }
        let p = value(field, key, src, v)?;
        let mut probe = Alt::zero(v, dim, arity);
        probe.set(&idx, p.clone()).map_err(|e| ctx_err(field, key, e))?;
        let sorted = probe
            .components()
            .next()
            .map(|(k, _)| k.clone());
        if let Some(s) = sorted {
            if seen.get(&s) != Polynomial::zero(v) && out.get(&s) != probe.get(&s) {
                return Err(Error::Manifest(format!(
                    "{field}[{key}]: conflicts with another ordering of the same indices"
                )));
            }
            seen.set(&s, Polynomial::one(v)).expect("sorted");
        }
        out.set(&idx, p).map_err(|e| ctx_err(field, key, e))?;
    }
    Ok(out)
}

fn structure_from(comps: &Components, v: &Vars, rank: usize) -> Result<Vec<Vec<Vec<Polynomial>>>> {
    let mut per_c: Vec<Components> = vec![Components::new(); rank];
    for (key, src) in comps {
        let idx = parse_indices("structure", key, rank)?;
        if idx.len() != 3 {
            return Err(Error::Manifest(format!(
                "structure[{key}]: expected `c a b`"
            )));
        }
        per_c[idx[0]].insert(format!("{} {}", idx[1] + 1, idx[2] + 1), src.clone());
    }
    let mut out = vec![vec![vec![Polynomial::zero(v); rank]; rank]; rank];
    for (c, m) in per_c.iter().enumerate() {
        let a = alt_from("structure", m, v, rank, 2)?;
        for i in 0..rank {
            for j in 0..rank {
                out[c][i][j] = a.get(&[i, j]);
            }
        }
    }
    Ok(out)
}

fn mixed_from(field: &str, comps: &Components, v: &Vars, dim: usize, rank: usize, k: usize, m: usize) -> Result<MixedForm> {
    let mut out = MixedForm::zero(v, rank, k, m);
    for (key, src) in comps {
        let (e, b) = key
            .split_once('|')
            .ok_or_else(|| Error::Manifest(format!("{field}[{key}]: expected `E-indices | base-indices`")))?;
        let e = parse_indices(field, e, rank)?;
        let b = parse_indices(field, b, dim)?;
        if e.len() != m || b.len() != k {
            return Err(Error::Manifest(format!(
                "{field}[{key}]: expected {m} E-indices and {k} base indices"
            )));
        }
        out.set(&b, &e, value(field, key, src, v)?)
            .map_err(|er| ctx_err(field, key, er))?;
    }
    Ok(out)
}

impl Manifest {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Manifest(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)?;
        Self::from_json(&src).map_err(|e| Error::Manifest(format!("{}: {e}", path.display())))
    }

    pub fn build(&self) -> Result<Fixture> {
        if self.n == 0 {
            return Err(Error::Manifest("n must be at least 1".into()));
        }
        let v = vars(self.base.iter().map(|s| s.as_str()));
        let dim = v.len();
        let algebroid = match &self.algebroid {
            AlgebroidSpec::Tangent => LieAlgebroid::tangent(&v),
            AlgebroidSpec::Explicit { anchor, structure } => {
                let rank = anchor.len();
                let rows = anchor
                    .iter()
                    .enumerate()
                    .map(|(a, row)| {
                        if row.len() != dim {
                            return Err(Error::Manifest(format!(
                                "anchor row {} has {} entries, expected {dim}",
                                a + 1,
                                row.len()
                            )));
                        }
                        row.iter()
                            .enumerate()
                            .map(|(i, s)| value("anchor", &format!("{} {}", a + 1, i + 1), s, &v))
                            .collect()
                    })
                    .collect::<Result<Vec<Vec<_>>>>()?;
                LieAlgebroid::new(&v, rows, structure_from(structure, &v, rank)?)?
            }
            AlgebroidSpec::Poisson { pi } => poisson_algebroid(&alt_from("pi", pi, &v, dim, 2)?)?,
            AlgebroidSpec::TwistedPoisson { pi, h } => twisted_poisson_algebroid(
                &alt_from("pi", pi, &v, dim, 2)?,
                &alt_from("H", h, &v, dim, 3)?,
            )?,
        };
        let rank = algebroid.rank();
        if let Some(r) = self.rank {
            if r != rank {
                return Err(Error::Manifest(format!(
                    "declared rank {r} but the algebroid has rank {rank}"
                )));
            }
        }
        let n = self.n;
        let omega = self
            .omega
            .as_ref()
            .map(|c| PreNPlectic::unchecked(alt_from("omega", c, &v, dim, n + 1)?))
            .transpose()?;
        let j = self.j.as_ref().map(|c| alt_from("J", c, &v, rank, n)).transpose()?;
        let mu = self.mu.as_ref().map(|c| alt_from("mu", c, &v, rank, 1)).transpose()?;
        let connection = self
            .connection
            .as_ref()
            .map(|c| {
                let mut g = vec![vec![vec![Polynomial::zero(&v); rank]; dim]; rank];
                for (key, src) in c {
                    let b = key.split_whitespace().collect::<Vec<_>>();
                    if b.len() != 3 {
                        return Err(Error::Manifest(format!("connection[{key}]: expected `b i a`")));
                    }
                    let bi = parse_indices("connection", b[0], rank)?[0];
                    let ii = parse_indices("connection", b[1], dim)?[0];
                    let ai = parse_indices("connection", b[2], rank)?[0];
                    g[bi][ii][ai] = value("connection", key, src, &v)?;
                }
                Connection::new(&v, rank, g)
            })
            .transpose()?;
        let homotopy = self
            .homotopy
            .as_ref()
            .map(|levels| {
                if levels.len() != n {
                    return Err(Error::Manifest(format!(
                        "homotopy needs {n} components, found {}",
                        levels.len()
                    )));
                }
                levels
                    .iter()
                    .enumerate()
                    .map(|(k, c)| mixed_from(&format!("homotopy[{k}]"), c, &v, dim, rank, k, n - k))
                    .collect()
            })
            .transpose()?;
        Ok(Fixture {
            name: self.name.clone(),
            n,
            vars: v,
            algebroid,
            omega,
            j,
            mu,
            connection,
            homotopy,
            checks: self.checks.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SO2: &str = r#"{
        "name": "so2", "base": ["x", "y"], "n": 1,
        "algebroid": {"kind": "explicit", "anchor": [["-y", "x"]], "structure": {}},
        "omega": {"1 2": "1"},
        "mu": {"1": "1/2*x^2 + 1/2*y^2"}
    }"#;

    #[test]
    fn loads_and_converts_indices() {
        let f = Manifest::from_json(SO2).unwrap().build().unwrap();
        assert_eq!(f.algebroid.rank(), 1);
        assert_eq!(f.omega.unwrap().form().get(&[0, 1]).to_string(), "1");
    }

    #[test]
    fn rejects_conflicting_orderings() {
        let bad = SO2.replace(r#"{"1 2": "1"}"#, r#"{"1 2": "1", "2 1": "1"}"#);
        assert!(Manifest::from_json(&bad).unwrap().build().is_err());
        let ok = SO2.replace(r#"{"1 2": "1"}"#, r#"{"1 2": "1", "2 1": "-1"}"#);
        assert!(Manifest::from_json(&ok).unwrap().build().is_ok());
    }

    #[test]
    fn reports_parse_location() {
        let bad = SO2.replace(r#""1 2": "1""#, r#""1 2": "2x""#);
        let e = Manifest::from_json(&bad).unwrap().build().unwrap_err().to_string();
        assert!(e.contains("omega[1 2]"), "{e}");
        assert!(e.contains("byte"), "{e}");
        let e = Manifest::from_json(&SO2.replace("\"1 2\"", "\"1 3\"")).unwrap().build().unwrap_err();
        assert!(e.to_string().contains("outside"));
    }
}
