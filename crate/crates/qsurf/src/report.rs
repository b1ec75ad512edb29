//! Machine- and human-readable verification reports.
//!
//! A report is a flat list of checks under one configuration.  The JSON
//! form is stable: for a fixed configuration and seed the emitted bytes
//! are identical from run to run, so reports can be diffed or archived.

use serde::Serialize;

use crate::error::Result;
use crate::surfaces::SphereC;

/// Parameters a verification run is pinned to.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    /// Deformation parameter, strictly between 0 and 1.
    pub q: f64,
    /// Sphere family parameter.
    #[serde(serialize_with = "serialize_c")]
    pub c: SphereC,
    /// Truncation dimension per ladder.
    pub dim: usize,
    /// Tolerance for floating-point residual checks.
    pub tol: f64,
    /// Seed for the sampled checks.
    pub seed: u64,
    /// Suite identifier.
    pub suite: String,
}

fn serialize_c<S: serde::Serializer>(c: &SphereC, s: S) -> std::result::Result<S::Ok, S::Error> {
    match c {
        SphereC::Finite(v) => s.serialize_f64(*v),
        SphereC::Infinity => s.serialize_str("inf"),
    }
}

impl SuiteConfig {
    fn describe(&self) -> String {
        format!(
            "q={}, c={}, dim={}, tol={:e}, seed={}",
            self.q, self.c, self.dim, self.tol, self.seed
        )
    }
}

/// One verified statement.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    /// Stable dotted identifier, unique within a suite.
    pub id: String,
    /// What the check certifies, in words.
    pub anchor: String,
    /// `"residual"`, `"exact"`, or `"integer"`.
    pub kind: &'static str,
    /// Observed value: a number, boolean, or string.
    pub value: serde_json::Value,
    /// Bound the value is compared against, when the kind has one.
    pub threshold: Option<f64>,
    pub pass: bool,
}

impl Check {
    /// A numeric residual that must stay at or below `threshold`.
    pub fn residual(id: impl Into<String>, anchor: impl Into<String>, value: f64, threshold: f64) -> Self {
        let pass = value.is_finite() && value <= threshold;
        let json_value = if value.is_finite() {
            serde_json::Value::from(value)
        } else {
            serde_json::Value::from(format!("{value}"))
        };
        Check {
            id: id.into(),
            anchor: anchor.into(),
            kind: "residual",
            value: json_value,
            threshold: Some(threshold),
            pass,
        }
    }

    /// A statement that must hold exactly.
    pub fn exact(id: impl Into<String>, anchor: impl Into<String>, ok: bool) -> Self {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            kind: "exact",
            value: serde_json::Value::from(ok),
            threshold: None,
            pass: ok,
        }
    }

    /// An integer invariant with a known expected value.
    pub fn integer(id: impl Into<String>, anchor: impl Into<String>, value: i64, expected: i64) -> Self {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            kind: "integer",
            value: serde_json::Value::from(value),
            threshold: Some(expected as f64),
            pass: value == expected,
        }
    }

    fn detail(&self) -> String {
        match self.kind {
            "residual" => match (self.value.as_f64(), self.threshold) {
                (Some(v), Some(t)) => format!("  [{v:.3e} <= {t:.1e}]"),
                _ => format!("  [{} <= {:?}]", self.value, self.threshold),
            },
            "integer" => format!(
                "  [{} == {}]",
                self.value,
                self.threshold.map_or(0, |t| t as i64)
            ),
            _ => String::new(),
        }
    }
}

/// A full verification run.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    /// Tool version the report was produced by.
    pub version: &'static str,
    pub config: SuiteConfig,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(config: SuiteConfig, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        VerificationReport {
            version: env!("CARGO_PKG_VERSION"),
            config,
            checks,
            pass,
        }
    }

    /// Stable pretty-printed JSON, terminated by a newline.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| crate::Error::InvalidConfig(format!("report serialization: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    /// Aligned one-line-per-check text rendering.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "qsurf {} — suite `{}` ({})\n",
            self.version,
            self.config.suite,
            self.config.describe()
        );
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "  {status}  {:width$}  {}{}\n",
                c.id,
                c.anchor,
                c.detail(),
                width = width
            ));
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!(
            "result: {} ({passed}/{} checks)\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.checks.len()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_config(c: SphereC) -> SuiteConfig {
        SuiteConfig {
            q: 0.5,
            c,
            dim: 64,
            tol: 1e-10,
            seed: 42,
            suite: "relations".into(),
        }
    }

    #[test]
    fn check_constructors_set_pass_correctly() {
        assert!(Check::residual("a", "x", 1e-12, 1e-10).pass);
        assert!(!Check::residual("a", "x", 1e-9, 1e-10).pass);
        assert!(!Check::residual("a", "x", f64::NAN, 1e-10).pass);
        assert!(Check::exact("b", "y", true).pass);
        assert!(!Check::exact("b", "y", false).pass);
        assert!(Check::integer("c", "z", 2, 2).pass);
        assert!(!Check::integer("c", "z", 3, 2).pass);
    }

    #[test]
    fn json_shape_and_infinity_rendering() {
        let report = VerificationReport::new(
            sample_config(SphereC::Infinity),
            vec![Check::residual("relations.demo", "demo residual", 5e-12, 1e-10)],
        );
        let json = report.to_json().unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["config"]["c"], "inf");
        assert_eq!(parsed["config"]["q"], 0.5);
        assert_eq!(parsed["config"]["seed"], 42);
        assert_eq!(parsed["checks"][0]["kind"], "residual");
        assert_eq!(parsed["checks"][0]["pass"], true);
        assert_eq!(parsed["pass"], true);
        assert_eq!(parsed["version"], env!("CARGO_PKG_VERSION"));

        let report = VerificationReport::new(sample_config(SphereC::Finite(0.5)), vec![]);
        let parsed: serde_json::Value =
            serde_json::from_str(&report.to_json().unwrap()).unwrap();
        assert_eq!(parsed["config"]["c"], 0.5);
    }

    #[test]
    fn rendering_is_deterministic() {
        let build = || {
            VerificationReport::new(
                sample_config(SphereC::Finite(1.0)),
                vec![
                    Check::residual("one", "first", 3.0e-13, 1e-12),
                    Check::exact("two", "second", true),
                    Check::integer("three", "third", 2, 2),
                ],
            )
        };
        let (a, b) = (build(), build());
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn text_marks_failures_and_counts() {
        let report = VerificationReport::new(
            sample_config(SphereC::Infinity),
            vec![
                Check::residual("good", "fine", 0.0, 1e-10),
                Check::residual("bad", "broken", 1.0, 1e-10),
            ],
        );
        assert!(!report.pass);
        let text = report.to_text();
        assert!(text.contains("PASS  good"));
        assert!(text.contains("FAIL  bad "));
        assert!(text.contains("result: FAIL (1/2 checks)"));
    }
}
