//! Canonical-dimension upper bounds from multiplicity-free products.
//!
//! If `[D_1]^{n_1} ... [D_r]^{n_r}` is multiplicity-free, the canonical 0-dimension of the split
//! simply connected group is at most `dim(G/B) - (n_1 + ... + n_r)`. The report carries that
//! bound; it never claims the bound is attained.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootsys::{CartanType, RootSystem};
use crate::search::SearchOutcome;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CandimError {
    #[error("multiplicity-free degree {degree} exceeds dim(G/B) = {dim_flag}")]
    InvalidDegree { degree: usize, dim_flag: usize },
    #[error("bound {bound} for {label} is below the known exact value {value}")]
    BelowKnownValue {
        label: String,
        bound: usize,
        value: usize,
    },
}

/// `dim_flag - n`, the bound attached to a multiplicity-free monomial of total degree `n`.
pub fn candim_upper_bound(dim_flag: usize, degree: usize) -> Result<usize, CandimError> {
    dim_flag
        .checked_sub(degree)
        .ok_or(CandimError::InvalidDegree { degree, dim_flag })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceKind {
    /// The canonical dimension is known exactly.
    Exact,
    /// A published upper bound obtained from multiplicity-free products.
    #[serde(rename = "paper_bound")]
    PublishedBound,
    /// Results exist elsewhere but no number is tabulated here.
    ExternalNoValue,
    /// Nothing is recorded (unlabeled Cartan data).
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reference {
    pub kind: ReferenceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    pub note: String,
}

pub fn reference_table(label: Option<CartanType>) -> Reference {
    let entry = |kind, value, note: &str| Reference {
        kind,
        value,
        note: note.to_string(),
    };
    match label {
        Some(CartanType::A(_)) => entry(ReferenceKind::Exact, Some(0), "type A: canonical dimension is zero"),
        Some(CartanType::C(_)) => entry(ReferenceKind::Exact, Some(0), "type C: canonical dimension is zero"),
        Some(CartanType::G2) => entry(ReferenceKind::Exact, Some(3), "G2: canonical dimension is 3"),
        Some(CartanType::B(_)) | Some(CartanType::D(_)) => entry(
            ReferenceKind::ExternalNoValue,
            None,
            "types B and D: results exist elsewhere; no value tabulated here",
        ),
        Some(CartanType::F4) => entry(
            ReferenceKind::ExternalNoValue,
            None,
            "F4: no nontrivial upper bound is known",
        ),
        Some(CartanType::E6) => entry(ReferenceKind::PublishedBound, Some(17), "E6: upper bound 17"),
        Some(CartanType::E7) => entry(ReferenceKind::PublishedBound, Some(37), "E7: upper bound 37"),
        Some(CartanType::E8) => entry(ReferenceKind::PublishedBound, Some(86), "E8: upper bound 86"),
        None => entry(ReferenceKind::None, None, "no reference value for custom Cartan data"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub degrees: Vec<u32>,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub seconds: f64,
    pub peak_bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub label: String,
    pub rank: usize,
    pub dim_flag: usize,
    pub max_mf_degree: usize,
    pub bound: usize,
    pub exhaustive: bool,
    pub witness: WitnessReport,
    pub reference: Reference,
    pub interpretation: String,
    pub stats: RunStats,
    pub version: String,
}

const INTERPRETATION: &str = "upper bound for the canonical 0-dimension of the split simply \
connected group (for split reductive groups this agrees with the canonical dimension); \
not claimed to be exact";

impl BoundReport {
    pub fn new(rs: &RootSystem, outcome: &SearchOutcome, stats: RunStats) -> Result<Self, CandimError> {
        let dim_flag = rs.dim_flag();
        let bound = candim_upper_bound(dim_flag, outcome.max_degree)?;
        Ok(BoundReport {
            label: rs.datum().name(),
            rank: rs.rank(),
            dim_flag,
            max_mf_degree: outcome.max_degree,
            bound,
            exhaustive: outcome.exhaustive,
            witness: WitnessReport {
                degrees: outcome.witness.degrees.0.clone(),
                word: outcome.witness.word(rs),
            },
            reference: reference_table(rs.datum().label()),
            interpretation: INTERPRETATION.to_string(),
            stats,
            version: env!("CARGO_PKG_VERSION").to_string(),
        })
    }

    /// An upper bound can never undercut a known exact value.
    pub fn check_known_value(&self) -> Result<(), CandimError> {
        match (self.reference.kind, self.reference.value) {
            (ReferenceKind::Exact, Some(v)) if self.bound < v => Err(CandimError::BelowKnownValue {
                label: self.label.clone(),
                bound: self.bound,
                value: v,
            }),
            _ => Ok(()),
        }
    }

    /// For exhaustive runs on a type with a published bound: whether the bounds coincide.
    pub fn reproduces_reference(&self) -> Option<bool> {
        match (self.reference.kind, self.reference.value) {
            (ReferenceKind::PublishedBound, Some(b)) if self.exhaustive => Some(self.bound == b),
            _ => None,
        }
    }

    /// JSON with the stats block removed, for run-to-run comparisons.
    pub fn canonical_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = value.as_object_mut() {
            obj.remove("stats");
        }
        serde_json::to_string_pretty(&value).expect("report serializes")
    }
}

/// Peak resident set size of this process, when the platform reports it.
pub fn peak_rss_bytes() -> u64 {
    std::fs::read_to_string("/proc/self/status")
        .ok()
        .and_then(|s| {
            s.lines()
                .find(|l| l.starts_with("VmHWM:"))
                .and_then(|l| l.split_whitespace().nth(1))
                .and_then(|kb| kb.parse::<u64>().ok())
        })
        .map_or(0, |kb| kb * 1024)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::MultiDegree;
    use crate::search::Witness;
    use crate::weyl::WeylElement;

    #[test]
    fn upper_bound_arithmetic() {
        assert_eq!(candim_upper_bound(36, 19), Ok(17));
        assert_eq!(candim_upper_bound(3, 3), Ok(0));
        assert_eq!(candim_upper_bound(120, 0), Ok(120));
        assert_eq!(
            candim_upper_bound(6, 7),
            Err(CandimError::InvalidDegree { degree: 7, dim_flag: 6 })
        );
    }

    #[test]
    fn reference_entries() {
        let a5 = reference_table(Some(CartanType::A(5)));
        assert_eq!((a5.kind, a5.value), (ReferenceKind::Exact, Some(0)));
        let g2 = reference_table(Some(CartanType::G2));
        assert_eq!((g2.kind, g2.value), (ReferenceKind::Exact, Some(3)));
        let f4 = reference_table(Some(CartanType::F4));
        assert_eq!((f4.kind, f4.value), (ReferenceKind::ExternalNoValue, None));
        for (t, b) in [(CartanType::E6, 17), (CartanType::E7, 37), (CartanType::E8, 86)] {
            let r = reference_table(Some(t));
            assert_eq!((r.kind, r.value), (ReferenceKind::PublishedBound, Some(b)));
        }
    }

    fn report(t: CartanType, degrees: Vec<u32>) -> BoundReport {
        let rs = RootSystem::from_type(t).unwrap();
        let deg = MultiDegree(degrees);
        let outcome = SearchOutcome {
            max_degree: deg.total(),
            witness: Witness {
                total: deg.total(),
                degrees: deg,
                element: WeylElement::longest_element(&rs),
            },
            exhaustive: true,
            products_computed: 0,
            solutions: None,
        };
        BoundReport::new(&rs, &outcome, RunStats { seconds: 0.5, peak_bytes: 1 }).unwrap()
    }

    #[test]
    fn known_value_check() {
        let ok = report(CartanType::G2, vec![2, 1]);
        assert_eq!(ok.bound, 3);
        assert!(ok.check_known_value().is_ok());
        let bad = report(CartanType::G2, vec![3, 1]);
        assert!(matches!(bad.check_known_value(), Err(CandimError::BelowKnownValue { .. })));
        assert_eq!(ok.reproduces_reference(), None);
    }

    #[test]
    fn json_round_trip() {
        let r = report(CartanType::A(2), vec![2, 1]);
        let text = serde_json::to_string(&r).unwrap();
        let back: BoundReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.witness.word, "1 2 1");
        assert!(!r.canonical_json().contains("stats"));
    }
}
