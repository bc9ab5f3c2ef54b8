//! Executable checks of the barrier relations on concrete instances.
//!
//! Every checker returns a [`VerifyReport`]. A failing report carries a
//! counterexample built only from public `barrier` and `deform` values so it
//! can be re-checked independently. Checkers first confirm that the X and Z
//! checks commute; a corrupted product fails there with the offending pair.

mod checks;
mod instances;

pub use checks::{
    check_css, check_css_restriction, check_deformation, check_lemma1, check_lemma2, check_lemma3,
    check_lemma4, check_main_equality, check_proposition1, check_theorem1, lemma4_family,
    random_walk_path,
};
pub use instances::{builtin_instances, restriction_instances, Instance};

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::barrier::{DEFAULT_PAULI_CAP, DEFAULT_SECTOR_CAP};
use crate::error::Result;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub claim: String,
    pub instance: String,
    pub status: Status,
    pub measured: BTreeMap<String, Value>,
    pub witness: Value,
    pub counterexample: Value,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerifyReport {
    pub(crate) fn new(claim: &str, instance: &str) -> Self {
        Self {
            claim: claim.to_string(),
            instance: instance.to_string(),
            status: Status::Pass,
            measured: BTreeMap::new(),
            witness: Value::Null,
            counterexample: Value::Null,
            seed: None,
            elapsed_ms: None,
        }
    }

    pub(crate) fn measure(&mut self, key: &str, value: impl Serialize) {
        self.measured.insert(
            key.to_string(),
            serde_json::to_value(value).expect("plain data"),
        );
    }

    pub(crate) fn fail(&mut self, counterexample: Value) {
        if self.status == Status::Pass {
            self.status = Status::Fail;
            self.counterexample = counterexample;
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// State caps used by the suite.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    pub sector: u64,
    pub pauli: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            sector: DEFAULT_SECTOR_CAP,
            pauli: DEFAULT_PAULI_CAP,
        }
    }
}

/// Number of `(L, s)` samples per instance in the suite.
pub const THEOREM1_SAMPLES: usize = 100;
/// Number of random paths per instance in the deformation check.
pub const DEFORMATION_SAMPLES: usize = 100;

fn timed(timing: bool, f: impl FnOnce() -> Result<VerifyReport>) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut r = f()?;
    if timing {
        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(r)
}

/// Runs every checker on the built-in instances.
pub fn run_suite(seed: u64, caps: Caps, timing: bool) -> Result<Vec<VerifyReport>> {
    let mut out = Vec::new();
    for inst in builtin_instances() {
        let code = inst.build();
        let name = inst.name.as_str();
        out.push(timed(timing, || Ok(check_css(&code, name)))?);
        out.push(timed(timing, || {
            check_main_equality(&inst.h1, &inst.h2, name, caps.sector)
        })?);
        out.push(timed(timing, || check_lemma1(&code, name, caps.sector))?);
        out.push(timed(timing, || {
            check_theorem1(&code, name, THEOREM1_SAMPLES, seed, caps.sector)
        })?);
        out.push(timed(timing, || check_lemma2(&code, name, caps.sector))?);
        out.push(timed(timing, || check_lemma3(&code, name, caps.sector))?);
        out.push(timed(timing, || {
            check_proposition1(&code, name, caps.sector)
        })?);
        out.push(timed(timing, || {
            check_deformation(&code, name, DEFORMATION_SAMPLES, seed, caps.sector)
        })?);
    }
    out.push(timed(timing, || Ok(check_lemma4(&lemma4_family())))?);
    for inst in restriction_instances() {
        let code = inst.build();
        out.push(timed(timing, || {
            check_css_restriction(&code, &inst.name, caps.pauli)
        })?);
    }
    Ok(out)
}

/// `{claims, passes, fails}`.
pub fn summary(reports: &[VerifyReport]) -> Value {
    let passes = reports.iter().filter(|r| r.passed()).count();
    json!({
        "claims": reports.len(),
        "passes": passes,
        "fails": reports.len() - passes,
    })
}

/// One report per line followed by the summary line.
pub fn to_json_lines(reports: &[VerifyReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&r.to_json_line());
        s.push('\n');
    }
    s.push_str(&summary(reports).to_string());
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{open_repetition, ring_repetition};
    use crate::hgp::HgpCode;

    #[test]
    fn fail_keeps_first_counterexample() {
        let mut r = VerifyReport::new("x", "i");
        assert!(r.passed());
        r.fail(json!(1));
        r.fail(json!(2));
        assert!(!r.passed());
        assert_eq!(r.counterexample, json!(1));
    }

    #[test]
    fn json_lines_end_with_summary() {
        let mut bad = VerifyReport::new("b", "i");
        bad.fail(json!({}));
        let reports = vec![VerifyReport::new("a", "i"), bad];
        let text = to_json_lines(&reports);
        let last = text.lines().last().unwrap();
        assert_eq!(last, r#"{"claims":2,"fails":1,"passes":1}"#);
        assert!(!text.contains("elapsed_ms"));
    }

    #[test]
    fn css_report_on_toric() {
        let code = HgpCode::build(&ring_repetition(3), &ring_repetition(3));
        let r = check_css(&code, "toric");
        assert!(r.passed());
        assert_eq!(r.measured["qubits"], 18);
    }

    #[test]
    fn main_equality_on_surface() {
        let r =
            check_main_equality(&open_repetition(3), &open_repetition(3), "s", 1 << 20).unwrap();
        assert!(r.passed());
        assert_eq!(r.measured["quantum_barrier"], 1);
        assert_eq!(r.measured["parent_barriers"], json!([1, 1, "inf", "inf"]));
    }

    #[test]
    fn main_equality_needs_logicals() {
        let h = crate::ClassicalCode::from_matrix(crate::BitMatrix::identity(2)).unwrap();
        assert_eq!(
            check_main_equality(&h, &h, "i", 1 << 20),
            Err(crate::Error::NoLogicals)
        );
    }
}
