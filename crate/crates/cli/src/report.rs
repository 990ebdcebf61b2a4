//! Run manifests and JSON reports.

use std::time::{SystemTime, UNIX_EPOCH};

use ifnls_core::{Deviation, SpaceSpec, Status, ToleranceConfig, Verdict};
use serde::{Deserialize, Serialize};

/// Version of the report schema.
pub const ARTIFACT_VERSION: &str = concat!("ifnls-report/1 (", env!("CARGO_PKG_VERSION"), ")");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space_spec: Option<SpaceSpec>,
    pub config: ToleranceConfig,
    pub seed: u64,
    pub timestamp: String,
    pub artifact_version: String,
}

impl RunManifest {
    pub fn new(command: String, space_spec: Option<SpaceSpec>, config: ToleranceConfig, seed: u64) -> Self {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        RunManifest {
            command,
            space_spec,
            config,
            seed,
            timestamp: secs.to_string(),
            artifact_version: ARTIFACT_VERSION.to_owned(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationNote {
    pub id: Deviation,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub manifest: RunManifest,
    pub verdicts: Vec<Verdict>,
    pub summary: Summary,
    pub deviations: Vec<DeviationNote>,
}

impl Report {
    pub fn new(manifest: RunManifest, verdicts: Vec<Verdict>) -> Self {
        let mut summary = Summary::default();
        for v in &verdicts {
            match v.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Inconclusive => summary.inconclusive += 1,
            }
        }
        let mut ids: Vec<Deviation> = verdicts.iter().flat_map(|v| v.deviations.iter().copied()).collect();
        ids.sort();
        ids.dedup();
        let deviations = ids
            .into_iter()
            .map(|id| DeviationNote { id, description: id.describe().to_owned() })
            .collect();
        Report { manifest, verdicts, summary, deviations }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// The JSON report with the manifest timestamp removed.
    pub fn body_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("reports contain only finite numbers");
        if let Some(m) = value.get_mut("manifest").and_then(|m| m.as_object_mut()) {
            m.remove("timestamp");
        }
        serde_json::to_string_pretty(&value).expect("value re-serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&v.to_string());
        }
        if !self.deviations.is_empty() {
            out.push_str("deviations:\n");
            for d in &self.deviations {
                out.push_str(&format!("  - {}\n", d.description));
            }
        }
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} inconclusive\n",
            self.summary.pass, self.summary.fail, self.summary.inconclusive
        ));
        out
    }
}

/// Strips the timestamp from a serialized report so two runs can be compared.
pub fn body_of(report_json: &str) -> Result<String, serde_json::Error> {
    Ok(Report::from_json(report_json)?.body_json())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ifnls_core::{Check, Witness};

    fn sample() -> Report {
        let mut v = Verdict::new("x");
        v.push(Check::fail("c", Witness::new().scalar("t", 0.1 + 0.2)));
        v.deviation(Deviation::SampledClosure);
        let mut w = Verdict::new("y");
        w.push(Check::pass("d"));
        w.deviation(Deviation::NonMembershipBelowOne);
        w.deviation(Deviation::SampledClosure);
        Report::new(RunManifest::new("test".into(), None, ToleranceConfig::default(), 3), vec![v, w])
    }

    #[test]
    fn summary_and_deviation_order() {
        let r = sample();
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, inconclusive: 0 });
        let ids: Vec<_> = r.deviations.iter().map(|d| d.id).collect();
        assert_eq!(ids, vec![Deviation::NonMembershipBelowOne, Deviation::SampledClosure]);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let r = sample();
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.verdicts[0].checks[0].witness.as_ref().unwrap().get("t"), Some(0.1 + 0.2));
    }

    #[test]
    fn body_omits_timestamp() {
        let mut a = sample();
        let mut b = sample();
        a.manifest.timestamp = "1".into();
        b.manifest.timestamp = "2".into();
        assert_eq!(a.body_json(), b.body_json());
        assert!(!a.body_json().contains("timestamp"));
        assert_eq!(body_of(&a.to_json()).unwrap(), a.body_json());
    }
}
