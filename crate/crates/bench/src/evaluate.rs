//! Recall and precision of one skyline against a baseline skyline.
//!
//! Recall: fraction of baseline points matched exactly on (detour, reward).
//! Precision: fraction of result points not dominated by any baseline point.
//! When the baseline comes from a heuristic rather than the exact solver,
//! both numbers are optimistic upper bounds.

use irts_core::num::approx_eq;
use irts_core::skyline::{dominates, SkylinePoint};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    /// Absent when the result set is empty.
    pub precision: Option<f64>,
    /// Absent when the baseline set is empty.
    pub recall: Option<f64>,
}

pub fn evaluate(result: &[SkylinePoint], baseline: &[SkylinePoint]) -> Evaluation {
    let recall = if baseline.is_empty() {
        None
    } else {
        let hit = baseline
            .iter()
            .filter(|b| {
                result
                    .iter()
                    .any(|r| approx_eq(r.detour, b.detour) && approx_eq(r.reward, b.reward))
            })
            .count();
        Some(hit as f64 / baseline.len() as f64)
    };
    let precision = if result.is_empty() {
        None
    } else {
        let good = result
            .iter()
            .filter(|r| {
                !baseline
                    .iter()
                    .any(|b| dominates((b.detour, b.reward), (r.detour, r.reward)))
            })
            .count();
        Some(good as f64 / result.len() as f64)
    };
    Evaluation { precision, recall }
}
