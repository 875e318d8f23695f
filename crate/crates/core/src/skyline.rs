//! Dominance over (detour, reward) pairs and ordered skyline maintenance.

use serde::Serialize;
use thiserror::Error;

use crate::network::VertexId;
use crate::num::{approx_eq, approx_ge, approx_gt, approx_le, approx_lt};

/// True iff `a` dominates `b`: no worse in both criteria (detour minimized,
/// reward maximized) and strictly better in at least one.
pub fn dominates(a: (f64, f64), b: (f64, f64)) -> bool {
    (approx_lt(a.0, b.0) && approx_ge(a.1, b.1)) || (approx_le(a.0, b.0) && approx_gt(a.1, b.1))
}

/// One skyline result: a full network path with its cost summary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkylinePoint {
    pub detour: f64,
    pub travel: f64,
    pub reward: f64,
    pub path: Vec<VertexId>,
}

impl SkylinePoint {
    /// Full validity check against a query: starts at the source, ends at the
    /// destination, visits at least one task, stays within budget, and the
    /// stored costs agree with a from-scratch recomputation. The stored
    /// reward may undercount the recomputed one when a solver's realized legs
    /// pass through tasks it did not schedule.
    pub fn validate(
        &self,
        net: &crate::network::RoadNetwork,
        query: &crate::query::Query,
    ) -> Result<(), String> {
        if self.path.first() != Some(&query.source()) {
            return Err(format!("path does not start at source: {:?}", self.path));
        }
        if self.path.last() != Some(&query.dest()) {
            return Err(format!("path does not end at destination: {:?}", self.path));
        }
        if !self.path.iter().any(|&v| query.is_task(v)) {
            return Err(format!("path visits no task: {:?}", self.path));
        }
        if !approx_le(self.travel, query.budget()) {
            return Err(format!(
                "travel {} exceeds budget {}",
                self.travel,
                query.budget()
            ));
        }
        let fresh =
            crate::path::recompute_costs(net, query, &self.path).map_err(|e| e.to_string())?;
        if !approx_eq(fresh.travel, self.travel) {
            return Err(format!(
                "stored travel {} != recomputed {}",
                self.travel, fresh.travel
            ));
        }
        if !approx_eq(fresh.detour, self.detour) {
            return Err(format!(
                "stored detour {} != recomputed {}",
                self.detour, fresh.detour
            ));
        }
        if !approx_le(self.reward, fresh.reward) || self.reward <= 0.0 {
            return Err(format!(
                "stored reward {} inconsistent with recomputed {}",
                self.reward, fresh.reward
            ));
        }
        Ok(())
    }

    /// Plain-text record: `detour travel reward vertex_ids...`.
    pub fn to_plain_line(&self) -> String {
        let mut line = format!("{:?} {:?} {:?}", self.detour, self.travel, self.reward);
        for v in &self.path {
            line.push_str(&format!(" {v}"));
        }
        line
    }
}

#[derive(Debug, Error)]
pub enum SkylineParseError {
    #[error("line {line}: malformed skyline record `{text}`")]
    Malformed { line: usize, text: String },
}

/// Parses skyline records in the plain-text format, skipping `#` comments
/// and blank lines.
pub fn parse_plain(text: &str) -> Result<Vec<SkylinePoint>, SkylineParseError> {
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let data = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = data.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let malformed = || SkylineParseError::Malformed {
            line: idx + 1,
            text: raw.trim().to_string(),
        };
        if fields.len() < 3 {
            return Err(malformed());
        }
        let detour: f64 = fields[0].parse().map_err(|_| malformed())?;
        let travel: f64 = fields[1].parse().map_err(|_| malformed())?;
        let reward: f64 = fields[2].parse().map_err(|_| malformed())?;
        let path = fields[3..]
            .iter()
            .map(|f| f.parse().map_err(|_| malformed()))
            .collect::<Result<Vec<VertexId>, _>>()?;
        points.push(SkylinePoint {
            detour,
            travel,
            reward,
            path,
        });
    }
    Ok(points)
}

/// Mutually non-dominated results ordered by strictly increasing detour
/// (and therefore strictly increasing reward).
///
/// Candidates must arrive in non-decreasing detour order — the searches
/// guarantee this through their dequeue order — so acceptance only needs a
/// comparison against the last accepted point.
#[derive(Clone, Debug)]
pub struct SkylineSet {
    budget: f64,
    points: Vec<SkylinePoint>,
}

impl SkylineSet {
    pub fn with_budget(budget: f64) -> Self {
        SkylineSet {
            budget,
            points: Vec::new(),
        }
    }

    /// Offers a candidate; returns whether it was accepted. An accepted
    /// candidate with the same detour as the last point replaces it.
    ///
    /// Panics if candidates arrive out of detour order or over budget —
    /// either indicates a broken caller, not bad input.
    pub fn insert(&mut self, cand: SkylinePoint) -> bool {
        assert!(
            approx_le(cand.travel, self.budget),
            "skyline candidate travel {} exceeds budget {}",
            cand.travel,
            self.budget
        );
        if let Some(last) = self.points.last() {
            assert!(
                approx_ge(cand.detour, last.detour),
                "skyline candidates must arrive in non-decreasing detour order ({} after {})",
                cand.detour,
                last.detour
            );
            if !approx_gt(cand.reward, last.reward) {
                return false;
            }
            if approx_eq(cand.detour, last.detour) {
                self.points.pop();
            }
        }
        self.points.push(cand);
        true
    }

    pub fn points(&self) -> &[SkylinePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(detour, reward)` pairs in skyline order.
    pub fn pairs(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|p| (p.detour, p.reward)).collect()
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }
}
