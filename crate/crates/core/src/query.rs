//! A solver query: the preferred path, the active task set with its rewards,
//! and the travel budget.
//!
//! The task set is carried on the query rather than read off the network so
//! that one loaded network can serve many scenarios with different task
//! subsets and reward draws.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::network::{PreferredPath, RoadNetwork, VertexId};

#[derive(Debug, Error)]
pub enum QueryError {
    #[error("task vertex {0} is not in the network")]
    UnknownTask(VertexId),
    #[error("task {0} has non-positive reward {1}")]
    NonPositiveReward(VertexId, f64),
    #[error("budget must be finite and non-negative, got {0}")]
    InvalidBudget(f64),
}

#[derive(Clone, Debug)]
pub struct Query {
    pref: PreferredPath,
    tasks: BTreeMap<VertexId, f64>,
    budget: f64,
}

impl Query {
    pub fn new(
        net: &RoadNetwork,
        pref: PreferredPath,
        tasks: BTreeMap<VertexId, f64>,
        budget: f64,
    ) -> Result<Self, QueryError> {
        if !budget.is_finite() || budget < 0.0 {
            return Err(QueryError::InvalidBudget(budget));
        }
        for (&t, &r) in &tasks {
            if !net.contains(t) {
                return Err(QueryError::UnknownTask(t));
            }
            if !r.is_finite() || r <= 0.0 {
                return Err(QueryError::NonPositiveReward(t, r));
            }
        }
        Ok(Query {
            pref,
            tasks,
            budget,
        })
    }

    pub fn source(&self) -> VertexId {
        self.pref.source()
    }

    pub fn dest(&self) -> VertexId {
        self.pref.dest()
    }

    pub fn pref(&self) -> &PreferredPath {
        &self.pref
    }

    pub fn tasks(&self) -> &BTreeMap<VertexId, f64> {
        &self.tasks
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    pub fn is_task(&self, v: VertexId) -> bool {
        self.tasks.contains_key(&v)
    }

    /// Reward of `v` under this query; zero for non-tasks.
    pub fn reward(&self, v: VertexId) -> f64 {
        self.tasks.get(&v).copied().unwrap_or(0.0)
    }
}
