//! Batch verification of fixture manifests and report assembly.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::compat::{check_compatible, check_consistency};
use crate::error::{Error, Result};
use crate::manifest::{Fixture, Manifest};
use crate::moment::{check_homotopy_momentum_section, check_momentum_map, check_momentum_section, Connection};
use crate::qgraded::{check_q_comp_nilpotent, check_twisted_qp};
use crate::report::Verdict;
use crate::sample::Sampler;
use crate::vinogradov::{check_higher_dirac, check_leibniz};

pub const CHECKS: [&str; 10] = [
    "algebroid",
    "compatible",
    "consistency",
    "dirac",
    "leibniz",
    "momentum-map",
    "momentum-section",
    "homotopy-section",
    "q-nilpotent",
    "twisted-qp",
];

/// Random samples per randomized check, on top of the frame elements.
pub const SAMPLES: usize = 8;

pub const DEFAULT_SEED: u64 = 7;

const CONVENTIONS: &str = include_str!("../../../docs/conventions.md");

/// SHA-256 of the conventions document this binary was built with.
pub fn conventions_fingerprint() -> String {
    hex::encode(Sha256::digest(CONVENTIONS.as_bytes()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub fixture: String,
    pub n: usize,
    pub check: String,
    pub verdict: Outcome,
    /// Failing residual lines, collected from the whole verdict tree.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residuals: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Verdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub conventions: String,
    pub seed: u64,
    pub results: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|e| e.verdict != Outcome::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("conventions {}\nseed {}\n", self.conventions, self.seed);
        for e in &self.results {
            let tag = match e.verdict {
                Outcome::Pass => "pass",
                Outcome::Fail => "FAIL",
                Outcome::Skipped => "skipped",
            };
            s.push_str(&format!("{} (n={}) {}: {tag}\n", e.fixture, e.n, e.check));
            if let Some(r) = &e.reason {
                s.push_str(&format!("  {r}\n"));
            }
            if e.verdict == Outcome::Fail {
                if let Some(d) = &e.detail {
                    s.push_str(&d.render(1));
                }
            }
        }
        if let Some(ms) = self.elapsed_ms {
            s.push_str(&format!("elapsed {ms} ms\n"));
        }
        s
    }
}

fn collect_residuals(v: &Verdict, out: &mut Vec<String>) {
    if v.passed {
        return;
    }
    for r in &v.residuals {
        out.push(format!("{}: {r}", v.check));
    }
    for s in &v.subchecks {
        collect_residuals(s, out);
    }
}

/// Run one named check. Missing fixture data is a `Precondition` error,
/// reported as a skip.
pub fn run_check(fx: &Fixture, check: &str, seed: u64) -> Result<Verdict> {
    let alg = &fx.algebroid;
    let mut rng = Sampler::new(seed);
    let omega = || {
        fx.omega
            .as_ref()
            .ok_or_else(|| Error::Precondition("fixture has no omega".into()))
    };
    let j = || fx.j.as_ref().ok_or_else(|| Error::Precondition("fixture has no J".into()));
    let mu = || fx.mu.as_ref().ok_or_else(|| Error::Precondition("fixture has no mu".into()));
    let conn = || {
        fx.connection
            .clone()
            .unwrap_or_else(|| Connection::trivial(&fx.vars, alg.rank()))
    };
    let v = match check {
        "algebroid" => alg.check_lie_algebroid(),
        "compatible" => check_compatible(j()?, omega()?, alg)?,
        "consistency" => {
            let w = omega()?;
            check_consistency(w.form(), alg)?.with_subchecks(vec![w.closedness()])
        }
        "dirac" => check_higher_dirac(j()?, omega()?, alg, SAMPLES, &mut rng)?,
        "leibniz" => check_leibniz(omega()?, alg, SAMPLES, &mut rng)?,
        "momentum-map" => check_momentum_map(mu()?, alg, omega()?)?,
        "momentum-section" => check_momentum_section(mu()?, &conn(), omega()?, alg)?,
        "homotopy-section" => match &fx.homotopy {
            Some(h) => check_homotopy_momentum_section(h, &conn(), omega()?, alg)?,
            None => return Err(Error::Precondition("fixture has no homotopy components".into())),
        },
        "q-nilpotent" => check_q_comp_nilpotent(alg, j()?, omega()?)?,
        "twisted-qp" => check_twisted_qp(alg, j()?, omega()?)?,
        other => return Err(Error::UnknownCheck(other.to_string())),
    };
    Ok(v)
}

fn entry(fx: &Fixture, check: &str, seed: u64) -> Entry {
    let base = Entry {
        fixture: fx.name.clone(),
        n: fx.n,
        check: check.to_string(),
        verdict: Outcome::Skipped,
        residuals: vec![],
        reason: None,
        detail: None,
    };
    match run_check(fx, check, seed) {
        Ok(v) => {
            let mut residuals = Vec::new();
            collect_residuals(&v, &mut residuals);
            Entry {
                verdict: if v.passed { Outcome::Pass } else { Outcome::Fail },
                residuals,
                detail: Some(v),
                ..base
            }
        }
        Err(e) => Entry {
            reason: Some(e.to_string()),
            ..base
        },
    }
}

/// Expand `all` and validate names. Empty requests fall back to the
/// manifest's own list, then to `all`.
pub fn expand_checks(requested: &[String], fx: &Fixture) -> Result<Vec<String>> {
    let list: Vec<String> = if !requested.is_empty() {
        requested.to_vec()
    } else if !fx.checks.is_empty() {
        fx.checks.clone()
    } else {
        vec!["all".into()]
    };
    let mut out: Vec<String> = Vec::new();
    for c in list {
        let names: Vec<String> = if c == "all" {
            CHECKS.iter().map(|s| s.to_string()).collect()
        } else if CHECKS.contains(&c.as_str()) {
            vec![c]
        } else {
            return Err(Error::UnknownCheck(c));
        };
        for n in names {
            if !out.contains(&n) {
                out.push(n);
            }
        }
    }
    Ok(out)
}

/// The manifest itself, or every `*.json` in a directory, sorted by name.
pub fn manifest_paths(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_dir() {
        let mut v: Vec<PathBuf> = std::fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        v.sort();
        if v.is_empty() {
            return Err(Error::Manifest(format!("no *.json manifests in {}", path.display())));
        }
        Ok(v)
    } else {
        Ok(vec![path.to_path_buf()])
    }
}

/// Load everything first so that parse errors abort before any check runs.
pub fn run_verify(path: &Path, checks: &[String], seed: u64, stable: bool) -> Result<Report> {
    let start = Instant::now();
    let mut fixtures = Vec::new();
    for p in manifest_paths(path)? {
        let fx = Manifest::load(&p)?
            .build()
            .map_err(|e| Error::Manifest(format!("{}: {e}", p.display())))?;
        let list = expand_checks(checks, &fx)?;
        fixtures.push((fx, list));
    }
    let mut results = Vec::new();
    for (fx, list) in &fixtures {
        for c in list {
            results.push(entry(fx, c, seed));
        }
    }
    Ok(Report {
        conventions: conventions_fingerprint(),
        seed,
        results,
        elapsed_ms: (!stable).then(|| start.elapsed().as_millis() as u64),
    })
}
