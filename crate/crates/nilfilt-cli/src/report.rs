//! Machine-readable (JSON) and human-readable report emitters.
//!
//! The JSON layout is a stable contract (see `schema/report.schema.json`):
//! {command, ring:{field, vars, order}, m, chains:{bf, x, y}, ranks:{B, A, M},
//!  checks:[{name, pass, detail}], fingerprint:{label, m, rankA, rankM},
//!  pass, elapsed_ms}.

use std::sync::Arc;

use nilfilt::filtration::{Check, FiltrationReport};
use nilfilt::{Field, Ideal, MonomialOrder, Ring};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct RingInfo {
    pub field: String,
    pub vars: Vec<String>,
    pub order: String,
}

impl RingInfo {
    pub fn from_ring(ring: &Arc<Ring>) -> RingInfo {
        RingInfo {
            field: match ring.field() {
                Field::Rationals => "QQ".to_string(),
                Field::Prime(p) => format!("GF({p})"),
            },
            vars: ring.vars().to_vec(),
            order: match ring.order() {
                MonomialOrder::Lex => "lex".to_string(),
                MonomialOrder::DegRevLex => "degrevlex".to_string(),
                other => other.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainsJson {
    pub bf: Vec<Vec<String>>,
    pub x: Vec<Vec<String>>,
    pub y: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RanksJson {
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "M")]
    pub m: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FingerprintJson {
    pub label: String,
    pub m: u32,
    #[serde(rename = "rankA")]
    pub rank_a: Vec<usize>,
    #[serde(rename = "rankM")]
    pub rank_m: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub ring: RingInfo,
    pub m: u32,
    pub chains: ChainsJson,
    pub ranks: RanksJson,
    pub checks: Vec<CheckJson>,
    pub fingerprint: FingerprintJson,
    pub pass: bool,
    pub elapsed_ms: u64,
}

fn chain_strings(chain: &[Ideal]) -> Vec<Vec<String>> {
    chain.iter().map(|i| i.canonical_gens()).collect()
}

fn check_json(c: &Check) -> CheckJson {
    CheckJson {
        name: c.name.clone(),
        pass: c.pass,
        detail: if c.informational {
            format!("{} [informational]", c.detail)
        } else {
            c.detail.clone()
        },
    }
}

impl Report {
    pub fn from_filtration(
        command: String,
        ring: &Arc<Ring>,
        fr: &FiltrationReport,
        extra_checks: &[Check],
        elapsed_ms: u64,
    ) -> Report {
        let mut checks: Vec<CheckJson> = extra_checks.iter().map(check_json).collect();
        checks.extend(fr.checks.iter().map(check_json));
        let pass = fr.all_pass() && extra_checks.iter().all(|c| c.pass || c.informational);
        Report {
            command,
            ring: RingInfo::from_ring(ring),
            m: fr.m,
            chains: ChainsJson {
                bf: chain_strings(&fr.bf),
                x: chain_strings(&fr.xs),
                y: chain_strings(&fr.ys),
            },
            ranks: RanksJson {
                b: fr.rank_b.clone(),
                a: fr.rank_a.clone(),
                m: fr.rank_m.clone(),
            },
            checks,
            fingerprint: FingerprintJson {
                label: fr.label.clone(),
                m: fr.fingerprint.m,
                rank_a: fr.fingerprint.rank_a.clone(),
                rank_m: fr.fingerprint.rank_m.clone(),
            },
            pass,
            elapsed_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("== {} ==\n", self.command));
        out.push_str(&format!(
            "ring: {}[{}] {}\n",
            self.ring.field,
            self.ring.vars.join(","),
            self.ring.order
        ));
        out.push_str(&format!("m = {}\n", self.m));
        out.push_str("chains (level: I^l+J | J:I^(m+1-l) | J:(J:I^l)):\n");
        for l in 0..self.chains.bf.len() {
            out.push_str(&format!(
                "  {l}: ({}) | ({}) | ({})\n",
                self.chains.bf[l].join(", "),
                self.chains.x[l].join(", "),
                self.chains.y[l].join(", ")
            ));
        }
        out.push_str(&format!(
            "ranks: B={:?} A={:?} M={:?}\n",
            self.ranks.b, self.ranks.a, self.ranks.m
        ));
        out.push_str("checks:\n");
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            out.push_str(&format!("  [{mark}] {:<28} {}\n", c.name, c.detail));
        }
        out.push_str(&format!(
            "fingerprint: {} (m={} rankA={:?} rankM={:?})\n",
            self.fingerprint.label,
            self.fingerprint.m,
            self.fingerprint.rank_a,
            self.fingerprint.rank_m
        ));
        let total = self.checks.len();
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!(
            "result: {} ({passed}/{total} checks)\n",
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// A sweep is a list of per-case reports with one aggregated verdict.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub command: String,
    pub cases: Vec<Report>,
    pub pass: bool,
    pub elapsed_ms: u64,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("== {} ==\n", self.command));
        for case in &self.cases {
            let failed: Vec<&CheckJson> = case.checks.iter().filter(|c| !c.pass).collect();
            out.push_str(&format!(
                "  {:<28} {} ({} checks{})\n",
                case.command,
                if case.pass { "PASS" } else { "FAIL" },
                case.checks.len(),
                if failed.is_empty() {
                    String::new()
                } else {
                    format!(
                        ", failing: {}",
                        failed
                            .iter()
                            .map(|c| c.name.as_str())
                            .collect::<Vec<_>>()
                            .join(" ")
                    )
                }
            ));
        }
        out.push_str(&format!(
            "result: {} ({} cases, {} ms)\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.cases.len(),
            self.elapsed_ms
        ));
        out
    }
}
