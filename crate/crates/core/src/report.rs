//! JSON run reports shared by the command-line tools.
//!
//! Field order in the serialized form follows struct declaration order, so
//! reports are byte-stable for a fixed seed apart from `stats.wall_ms`.

use serde::{Deserialize, Serialize};

use crate::approx::RunStats;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub graph: GraphSummary,
    pub parameters: ReportParameters,
    pub result: ReportResult,
    pub used_fallback: bool,
    /// Exact baseline computed in the same invocation, if requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_value: Option<usize>,
    /// `result / exact`; present iff `exact_value` is.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_factor: Option<f64>,
    pub stats: ReportStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    /// Input path or generator string, verbatim.
    pub source: String,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
}

impl GraphSummary {
    pub fn new(source: impl Into<String>, g: &Graph) -> Self {
        GraphSummary {
            source: source.into(),
            n: g.node_count(),
            m: g.edge_count(),
            max_degree: g.max_degree(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Approx,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportParameters {
    pub mode: Mode,
    pub epsilon: f64,
    pub c: f64,
    pub seed: u64,
    pub lower_start: bool,
    pub leaps: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportResult {
    Degeneracy { value: f64 },
    Labels(LabelSummary),
}

impl ReportResult {
    /// The headline number: the degeneracy estimate, or the largest label.
    pub fn value(&self) -> f64 {
        match self {
            ReportResult::Degeneracy { value } => *value,
            ReportResult::Labels(s) => s.max,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelSummary {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub count: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub rounded: bool,
    /// Fraction of nodes whose label lies in the approximation interval
    /// around the exact core number, when an exact baseline was computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub within_bound: Option<f64>,
}

impl LabelSummary {
    pub fn from_labels(labels: &[f64], path: Option<String>, rounded: bool) -> Self {
        let count = labels.len();
        let (min, max, sum) = labels.iter().fold(
            (f64::INFINITY, f64::NEG_INFINITY, 0.0),
            |(lo, hi, s), &x| (lo.min(x), hi.max(x), s + x),
        );
        if count == 0 {
            return LabelSummary {
                path,
                count,
                min: 0.0,
                max: 0.0,
                mean: 0.0,
                rounded,
                within_bound: None,
            };
        }
        LabelSummary {
            path,
            count,
            min,
            max,
            mean: sum / count as f64,
            rounded,
            within_bound: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportStats {
    pub trials: u64,
    pub samples_drawn: u64,
    pub peels: u64,
    pub wall_ms: f64,
}

impl From<&RunStats> for ReportStats {
    fn from(s: &RunStats) -> Self {
        ReportStats {
            trials: s.trials,
            samples_drawn: s.samples_drawn,
            peels: s.nodes_peeled,
            wall_ms: s.wall_time.as_secs_f64() * 1e3,
        }
    }
}

/// `approx / exact`. Values below 1 are underestimates. Both zero counts as
/// a perfect match; a nonzero estimate of a zero degeneracy has no factor.
pub fn error_factor(approx: f64, exact: usize) -> Option<f64> {
    match (approx, exact) {
        (0.0, 0) => Some(1.0),
        (_, 0) => None,
        (a, e) => Some(a / e as f64),
    }
}

impl RunReport {
    /// Fills `exact_value` and the derived error factor.
    pub fn with_exact(mut self, exact: usize) -> Self {
        self.exact_value = Some(exact);
        self.error_factor = error_factor(self.result.value(), exact);
        if self.error_factor.is_none() {
            self.exact_value = None;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        RunReport {
            command: "degeneracy".into(),
            graph: GraphSummary {
                source: "clique-union:100,80,50".into(),
                n: 4100,
                m: 162_950,
                max_degree: 99,
            },
            parameters: ReportParameters {
                mode: Mode::Approx,
                epsilon: 0.5,
                c: 0.5,
                seed: 7,
                lower_start: false,
                leaps: true,
            },
            result: ReportResult::Degeneracy { value: 86.25 },
            used_fallback: false,
            exact_value: None,
            error_factor: None,
            stats: ReportStats {
                trials: 3,
                samples_drawn: 1234,
                peels: 55,
                wall_ms: 1.5,
            },
        }
    }

    #[test]
    fn json_round_trip_and_key_order() {
        let report = sample().with_exact(99);
        let text = serde_json::to_string(&report).unwrap();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        let keys = [
            "\"command\"",
            "\"graph\"",
            "\"parameters\"",
            "\"result\"",
            "\"used_fallback\"",
            "\"exact_value\"",
            "\"error_factor\"",
            "\"stats\"",
        ];
        let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
    }

    #[test]
    fn error_factor_absent_without_exact() {
        let text = serde_json::to_string(&sample()).unwrap();
        assert!(!text.contains("error_factor"));
        assert!(!text.contains("exact_value"));
    }

    #[test]
    fn error_factor_convention() {
        assert_eq!(error_factor(86.25, 99), Some(86.25 / 99.0));
        assert_eq!(error_factor(0.0, 0), Some(1.0));
        assert_eq!(error_factor(3.0, 0), None);
        assert_eq!(sample().with_exact(0).error_factor, None);
    }

    #[test]
    fn label_summary() {
        let s = LabelSummary::from_labels(&[1.0, 4.0, 4.0, 3.0], None, false);
        assert_eq!((s.count, s.min, s.max, s.mean), (4, 1.0, 4.0, 3.0));
        let empty = LabelSummary::from_labels(&[], None, true);
        assert_eq!((empty.min, empty.max), (0.0, 0.0));
    }
}
