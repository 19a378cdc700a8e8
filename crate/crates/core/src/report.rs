//! Verification reports and their JSON shape.
//!
//! Coefficients are serialized as decimal strings since they routinely
//! exceed 64 bits.

use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::series::Comparison;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub expo_num: usize,
    pub denom: u32,
    #[serde(with = "decimal")]
    pub lhs_coeff: BigInt,
    #[serde(with = "decimal")]
    pub rhs_coeff: BigInt,
    /// Which member of an indexed family failed, e.g. `n=(2,3)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
}

impl Mismatch {
    pub fn from_comparison(cmp: Comparison, denom: u32, instance: Option<String>) -> Option<Self> {
        match cmp {
            Comparison::Match => None,
            Comparison::FirstMismatch {
                expo_num,
                lhs_coeff,
                rhs_coeff,
            } => Some(Mismatch {
                expo_num,
                denom,
                lhs_coeff,
                rhs_coeff,
                instance,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub id: String,
    /// Number of lattice coefficients compared.
    pub order: usize,
    pub denom: u32,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_ms: u64,
    pub term_count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotation: Option<String>,
}

impl VerifyReport {
    pub fn new(id: &str, order: usize, denom: u32) -> Self {
        VerifyReport {
            id: id.to_string(),
            order,
            denom,
            status: Status::Error,
            first_mismatch: None,
            error: None,
            wall_ms: 0,
            term_count: 0,
            annotation: None,
        }
    }

    /// A report for work that failed before it could start.
    pub fn failed(id: &str, order: usize, denom: u32, message: String, start: Instant) -> Self {
        let mut report = Self::new(id, order, denom);
        report.error = Some(message);
        report.wall_ms = start.elapsed().as_millis() as u64;
        report
    }

    pub fn is_match(&self) -> bool {
        self.status == Status::Match
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let head = format!("{:<14} order {:>4} (D={})", self.id, self.order, self.denom);
        let tail = format!("{} ms, {} terms", self.wall_ms, self.term_count);
        match (&self.status, &self.first_mismatch, &self.error) {
            (Status::Match, _, _) => format!("{head}  match     {tail}"),
            (Status::Mismatch, Some(m), _) => {
                let at = m
                    .instance
                    .as_ref()
                    .map(|i| format!(" [{i}]"))
                    .unwrap_or_default();
                format!(
                    "{head}  MISMATCH  at q^({}/{}){at}: lhs {} rhs {}  {tail}",
                    m.expo_num, m.denom, m.lhs_coeff, m.rhs_coeff
                )
            }
            (_, _, Some(e)) => format!("{head}  ERROR     {e}"),
            _ => format!("{head}  {:?}", self.status),
        }
    }
}

/// Wrapper document emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSet {
    pub schema: u32,
    pub reports: Vec<VerifyReport>,
}

impl ReportSet {
    pub fn new(reports: Vec<VerifyReport>) -> Self {
        ReportSet {
            schema: SCHEMA_VERSION,
            reports,
        }
    }
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_status() -> impl Strategy<Value = Status> {
        prop_oneof![
            Just(Status::Match),
            Just(Status::Mismatch),
            Just(Status::Error)
        ]
    }

    proptest! {
        #[test]
        fn json_round_trip(
            status in arb_status(),
            expo in 0usize..10_000,
            digits in "-?[1-9][0-9]{0,60}",
            other in any::<i64>(),
            wall in any::<u64>(),
            terms in any::<u64>(),
            instance in proptest::option::of("n=\\([0-9],[0-9]\\)"),
        ) {
            let mut report = VerifyReport::new("eq-4.8", 30, 1);
            report.status = status;
            report.wall_ms = wall;
            report.term_count = terms;
            match status {
                Status::Mismatch => {
                    report.first_mismatch = Some(Mismatch {
                        expo_num: expo,
                        denom: 2,
                        lhs_coeff: digits.parse().unwrap(),
                        rhs_coeff: BigInt::from(other),
                        instance,
                    });
                }
                Status::Error => report.error = Some("boom".into()),
                Status::Match => {}
            }
            let set = ReportSet::new(vec![report]);
            let text = serde_json::to_string(&set).unwrap();
            let back: ReportSet = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, set);
        }
    }

    #[test]
    fn coefficients_are_strings() {
        let mut report = VerifyReport::new("x", 5, 1);
        report.status = Status::Mismatch;
        report.first_mismatch = Some(Mismatch {
            expo_num: 3,
            denom: 1,
            lhs_coeff: "123456789012345678901234567890".parse().unwrap(),
            rhs_coeff: BigInt::from(-4),
            instance: None,
        });
        let value: serde_json::Value = serde_json::to_value(&report).unwrap();
        assert_eq!(
            value["first_mismatch"]["lhs_coeff"],
            "123456789012345678901234567890"
        );
        assert_eq!(value["first_mismatch"]["rhs_coeff"], "-4");
        assert_eq!(value["status"], "mismatch");
        assert!(value.get("error").is_none());
    }
}
