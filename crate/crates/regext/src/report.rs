//! Report documents: one `BoundReport` per verified claim, aggregated into a
//! JSON document with a stable field order and no floating point. Large
//! right-hand sides are decimal strings.

use serde::Serialize;
use std::collections::BTreeMap;

/// Outcome of one checked claim. `pass` always means `lhs <= rhs` (or
/// `lhs = rhs` when `context.exact = "true"`); for lower-bound claims the
/// bound is placed on the left. `vacuous` marks checks that hold because the
/// module in question vanishes or a precondition voids the claim.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub claim_id: String,
    pub instance_id: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub vacuous: bool,
    pub context: BTreeMap<String, String>,
}

impl BoundReport {
    pub fn failed(&self) -> bool {
        !self.pass
    }
}

/// The fixed catalog of claim identifiers a report may carry.
pub const CLAIM_IDS: &[&str] = &[
    "Lemma2.1.1",
    "Lemma2.1.2",
    "Lemma2.1.3",
    "Lemma2.1.4",
    "Thm2.3.1",
    "Thm2.3.2",
    "Thm2.3.3",
    "Thm2.3.4",
    "Lemma2.4",
    "Rem3.1.i",
    "Rem3.1.ii",
    "Rem3.1.iii",
    "Rem3.1.iv",
    "Rem3.1.v",
    "Rem3.1.mu",
    "Prop3.3",
    "Cor3.4",
    "Thm3.5.1",
    "Thm3.5.2a",
    "Thm3.5.2b",
    "Thm3.5.2c",
    "EGS",
    "Lemma4.1.i",
    "Lemma4.1.ii",
    "Thm4.2",
    "Cor4.3",
    "Lemma4.4.i",
    "Lemma4.4.ii",
    "Thm4.5.i",
    "Thm4.5.ii",
    "Thm4.6",
    "Def5.1.a",
    "Def5.1.b",
    "Thm5.2",
    "Lemma5.3",
    "Lemma5.4.i",
    "Lemma5.4.ii",
    "Thm5.5",
    "Cor5.6",
    "DGV-reg",
];

/// Per-instance invariant summary carried alongside the claim reports.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceInvariants {
    pub reg: String,
    pub indeg: String,
    pub pd: usize,
    pub depth: String,
    pub dim: usize,
    pub mu: u64,
    pub gen: String,
    pub degree: String,
    pub hdeg: String,
    pub h0_length: u64,
    /// `i -> {j -> beta_{i,j}}` with string keys for JSON stability.
    pub betti: BTreeMap<String, BTreeMap<String, u64>>,
    /// Hilbert coefficients `e_0..e_{d-1}`.
    pub hilbert_coeffs: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub id: String,
    pub invariants: InstanceInvariants,
    pub reports: Vec<BoundReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigSnapshot {
    pub prime: u32,
    pub window: Option<(i64, i64)>,
    pub jobs: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub config: ConfigSnapshot,
    pub instances: Vec<InstanceReport>,
    pub total_checks: usize,
    pub failed_checks: usize,
    pub vacuous_checks: usize,
}

impl ReportDocument {
    pub fn new(seed: u64, config: ConfigSnapshot, instances: Vec<InstanceReport>) -> Self {
        let mut total = 0;
        let mut failed = 0;
        let mut vacuous = 0;
        for inst in &instances {
            for r in &inst.reports {
                total += 1;
                if !r.pass {
                    failed += 1;
                }
                if r.vacuous {
                    vacuous += 1;
                }
            }
        }
        ReportDocument {
            tool: "regext".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            config,
            instances,
            total_checks: total,
            failed_checks: failed,
            vacuous_checks: vacuous,
        }
    }

    pub fn any_failure(&self) -> bool {
        self.failed_checks > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Flat CSV of all bound reports; context is flattened to `k=v` pairs
    /// joined by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("claim_id,instance_id,lhs,rhs,pass,vacuous,context\n");
        for inst in &self.instances {
            for r in &inst.reports {
                let ctx = r
                    .context
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";");
                out.push_str(&format!(
                    "{},{},{},{},{},{},\"{}\"\n",
                    r.claim_id,
                    r.instance_id,
                    csv_escape(&r.lhs),
                    csv_escape(&r.rhs),
                    r.pass,
                    r.vacuous,
                    ctx
                ));
            }
        }
        out
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_counts_and_serialization() {
        let rep = BoundReport {
            claim_id: "Lemma2.4".into(),
            instance_id: "inst".into(),
            lhs: "1".into(),
            rhs: "12".into(),
            pass: true,
            vacuous: false,
            context: BTreeMap::new(),
        };
        let inv = InstanceInvariants {
            reg: "1".into(),
            indeg: "0".into(),
            pd: 2,
            depth: "0".into(),
            dim: 1,
            mu: 1,
            gen: "0".into(),
            degree: "1".into(),
            hdeg: "2".into(),
            h0_length: 1,
            betti: BTreeMap::new(),
            hilbert_coeffs: vec!["1".into()],
        };
        let doc = ReportDocument::new(
            7,
            ConfigSnapshot {
                prime: 32003,
                window: None,
                jobs: 1,
            },
            vec![InstanceReport {
                id: "inst".into(),
                invariants: inv,
                reports: vec![rep],
            }],
        );
        assert_eq!(doc.total_checks, 1);
        assert_eq!(doc.failed_checks, 0);
        let json = doc.to_json();
        assert!(json.contains("\"claim_id\": \"Lemma2.4\""));
        // identical inputs produce identical bytes
        assert_eq!(json, doc.to_json());
        assert!(doc.to_csv().starts_with("claim_id,"));
    }

    #[test]
    fn claim_catalog_contents() {
        assert!(CLAIM_IDS.contains(&"DGV-reg"));
        assert!(CLAIM_IDS.contains(&"Thm4.5.ii"));
        assert_eq!(CLAIM_IDS.len(), 40);
    }
}
