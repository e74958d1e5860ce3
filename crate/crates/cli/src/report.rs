//! Verification reports: claims run in parallel, assembled in a fixed order.

use std::fmt::Write as _;

use doily_core::claims::{run_claim, select, Claim, Options, Suite};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    pub criterion: u8,
    pub statement: String,
    pub status: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub version: &'static str,
    pub timestamp: String,
    pub seed: u64,
    pub pass: bool,
    pub first_failure: Option<String>,
    pub claims: Vec<ClaimRecord>,
    #[serde(skip)]
    elapsed_ms: Vec<u128>,
}

pub fn run_suite(name: &str, suites: &[Suite], opts: &Options) -> VerificationReport {
    let ids = select(suites);
    let mut claims: Vec<Claim> = ids
        .par_iter()
        .map(|id| run_claim(id, opts).expect("selected ids are known"))
        .collect();
    claims.sort_by(|a, b| (a.criterion, &a.id).cmp(&(b.criterion, &b.id)));
    VerificationReport {
        suite: name.to_string(),
        version: env!("CARGO_PKG_VERSION"),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        seed: opts.seed,
        pass: claims.iter().all(|c| c.pass),
        first_failure: claims.iter().find(|c| !c.pass).map(|c| c.id.clone()),
        elapsed_ms: claims.iter().map(|c| c.elapsed_ms).collect(),
        claims: claims
            .into_iter()
            .map(|c| ClaimRecord {
                status: if c.pass { "pass" } else { "fail" },
                id: c.id,
                criterion: c.criterion,
                statement: c.statement,
                detail: c.detail,
            })
            .collect(),
    }
}

impl VerificationReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "doily {} verify {} (seed {})", self.version, self.suite, self.seed).unwrap();
        let width = self.claims.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for (c, ms) in self.claims.iter().zip(&self.elapsed_ms) {
            writeln!(
                w,
                "{:<4} {:>2}  {:<width$}  {:>6} ms  {}",
                c.status.to_uppercase(),
                c.criterion,
                c.id,
                ms,
                c.statement
            )
            .unwrap();
            writeln!(w, "{:>13}{}", "", c.detail).unwrap();
        }
        let passed = self.claims.iter().filter(|c| c.status == "pass").count();
        writeln!(w, "{passed}/{} claims pass", self.claims.len()).unwrap();
        if let Some(f) = &self.first_failure {
            writeln!(w, "first failing claim: {f}").unwrap();
        }
        out
    }
}
