//! Check results and their JSON / CSV serialization.
//!
//! Numbers are written with 17 significant digits. Wall times are the only
//! non-deterministic field and can be left out of JSON output.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Reported for information only (e.g. a non-commensurate kick).
    Flagged,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flagged => "flagged",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// `value <= tolerance`
    AtMost,
    /// `value > tolerance`
    Above,
    /// `lower <= value <= tolerance`
    Between(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub tolerance: Option<(Bound, f64)>,
}

impl Metric {
    pub fn info(name: impl Into<String>, value: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance: None,
        }
    }

    pub fn at_most(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance: Some((Bound::AtMost, tol)),
        }
    }

    pub fn above(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance: Some((Bound::Above, threshold)),
        }
    }

    pub fn between(name: impl Into<String>, value: f64, lower: f64, upper: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance: Some((Bound::Between(lower), upper)),
        }
    }

    /// `None` when the metric carries no tolerance.
    pub fn passes(&self) -> Option<bool> {
        self.tolerance.map(|(b, tol)| match b {
            Bound::AtMost => self.value <= tol,
            Bound::Above => self.value > tol,
            Bound::Between(lo) => lo <= self.value && self.value <= tol,
        })
    }

    fn tolerance_text(&self) -> String {
        match self.tolerance {
            None => String::new(),
            Some((Bound::AtMost, t)) => sci(t),
            Some((Bound::Above, t)) => format!(">{}", sci(t)),
            Some((Bound::Between(lo), t)) => format!("[{};{}]", sci(lo), sci(t)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// The formula this check exercises.
    pub anchor: String,
    pub metrics: Vec<Metric>,
    pub wall_time_s: f64,
}

impl CheckResult {
    /// Status from the metrics: fail if any bounded metric misses its bound.
    pub fn judged(
        name: impl Into<String>,
        anchor: impl Into<String>,
        metrics: Vec<Metric>,
    ) -> Self {
        let status = if metrics.iter().all(|m| m.passes() != Some(false)) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            name: name.into(),
            status,
            anchor: anchor.into(),
            metrics,
            wall_time_s: 0.0,
        }
    }

    pub fn flagged(
        name: impl Into<String>,
        anchor: impl Into<String>,
        metrics: Vec<Metric>,
    ) -> Self {
        Self {
            name: name.into(),
            status: Status::Flagged,
            anchor: anchor.into(),
            metrics,
            wall_time_s: 0.0,
        }
    }

    pub fn timed(mut self, seconds: f64) -> Self {
        self.wall_time_s = seconds;
        self
    }

    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics
            .iter()
            .find(|m| m.name == name)
            .map(|m| m.value)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub name: String,
    pub checks: Vec<CheckResult>,
    pub metadata: BTreeMap<String, serde_json::Value>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        let mut metadata = BTreeMap::new();
        metadata.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        Self {
            name: name.into(),
            checks: Vec::new(),
            metadata,
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.metadata.insert(key.to_string(), v);
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        for (k, v) in other.metadata {
            self.metadata.entry(k).or_insert(v);
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self, include_timing: bool) -> String {
        let view = JsonReport {
            report: self,
            timing: include_timing,
        };
        let mut s = serde_json::to_string_pretty(&view).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["check_name", "status", "metric", "value", "tolerance"])
            .expect("in-memory write");
        for c in &self.checks {
            for m in &c.metrics {
                w.write_record([
                    c.name.as_str(),
                    c.status.as_str(),
                    m.name.as_str(),
                    &sci(m.value),
                    &m.tolerance_text(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

/// 17 significant digits, scientific notation.
pub fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

/// A float as a JSON number with 17 significant digits (strings for non-finite values).
pub(crate) struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            serde_json::Number::from_str(&sci(self.0))
                .map_err(serde::ser::Error::custom)?
                .serialize(s)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

struct JsonReport<'a> {
    report: &'a Report,
    timing: bool,
}

struct JsonCheck<'a> {
    check: &'a CheckResult,
    timing: bool,
}

struct JsonMetric<'a>(&'a Metric);

impl Serialize for JsonReport<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = self.report;
        let mut st = s.serialize_struct("Report", 4)?;
        st.serialize_field("name", &r.name)?;
        st.serialize_field("all_pass", &r.all_pass())?;
        let checks: Vec<_> = r
            .checks
            .iter()
            .map(|c| JsonCheck {
                check: c,
                timing: self.timing,
            })
            .collect();
        st.serialize_field("checks", &checks)?;
        st.serialize_field("metadata", &r.metadata)?;
        st.end()
    }
}

impl Serialize for JsonCheck<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let c = self.check;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("name", &c.name)?;
        m.serialize_entry("status", &c.status)?;
        m.serialize_entry("anchor", &c.anchor)?;
        let metrics: Vec<_> = c.metrics.iter().map(JsonMetric).collect();
        m.serialize_entry("metrics", &metrics)?;
        if self.timing {
            m.serialize_entry("wall_time_s", &Num(c.wall_time_s))?;
        }
        m.end()
    }
}

impl Serialize for JsonMetric<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mt = self.0;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("name", &mt.name)?;
        m.serialize_entry("value", &Num(mt.value))?;
        if let Some((bound, tol)) = mt.tolerance {
            match bound {
                Bound::AtMost => m.serialize_entry("bound", "at_most")?,
                Bound::Above => m.serialize_entry("bound", "above")?,
                Bound::Between(lo) => {
                    m.serialize_entry("bound", "between")?;
                    m.serialize_entry("lower", &Num(lo))?;
                }
            }
            m.serialize_entry("tolerance", &Num(tol))?;
            m.serialize_entry("pass", &mt.passes())?;
        }
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo");
        r.push(
            CheckResult::judged(
                "c1",
                "p·x = β − α + P·X",
                vec![
                    Metric::at_most("residual", 1.0 / 3.0, 0.5),
                    Metric::info("n", 4.0),
                ],
            )
            .timed(0.25),
        );
        r.push(CheckResult::judged(
            "c2",
            "x",
            vec![Metric::above("gap", 0.5, 1e-2)],
        ));
        r
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(sci(1.0 / 3.0), "3.3333333333333331e-1");
        let s = sample().to_json(false);
        assert!(s.contains("3.3333333333333331e-1"));
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        let v = back["checks"][0]["metrics"][0]["value"].as_f64().unwrap();
        assert_eq!(v, 1.0 / 3.0);
    }

    #[test]
    fn timing_is_optional() {
        let r = sample();
        assert!(r.to_json(true).contains("wall_time_s"));
        assert!(!r.to_json(false).contains("wall_time_s"));
    }

    #[test]
    fn statuses() {
        let r = sample();
        assert!(r.all_pass());
        let bad = CheckResult::judged("b", "x", vec![Metric::at_most("e", 2.0, 1.0)]);
        assert_eq!(bad.status, Status::Fail);
        let low = CheckResult::judged("b", "x", vec![Metric::above("e", 0.0, 1e-2)]);
        assert_eq!(low.status, Status::Fail);
    }

    #[test]
    fn csv_columns() {
        let csv = sample().to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "check_name,status,metric,value,tolerance"
        );
        assert_eq!(
            lines.next().unwrap(),
            "c1,pass,residual,3.3333333333333331e-1,5.0000000000000000e-1"
        );
        assert_eq!(lines.next().unwrap(), "c1,pass,n,4.0000000000000000e0,");
        assert_eq!(
            lines.next().unwrap(),
            "c2,pass,gap,5.0000000000000000e-1,>1.0000000000000000e-2"
        );
    }
}
