//! Synthetic road networks: 4-connected grids with jittered edge costs,
//! planar coordinates, and a sprinkling of candidate task vertices.

use irts_core::network::{EdgeRecord, RoadNetwork, VertexRecord};

use crate::rng::Rng;

/// Edge costs are `cell × uniform[0.8, 1.2)`. Coordinates are spaced at
/// `0.8 × cell` — the smallest possible edge cost — so every edge cost is at
/// least the Euclidean endpoint distance and the straight-line budget bound
/// stays valid on any vertex pair.
#[derive(Clone, Copy, Debug)]
pub struct GridConfig {
    pub rows: usize,
    pub cols: usize,
    pub cell: f64,
    /// Fraction of vertices marked as candidate tasks (reward 1; scenarios
    /// draw the actual rewards).
    pub task_fraction: f64,
    pub seed: u64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            rows: 20,
            cols: 20,
            cell: 50.0,
            task_fraction: 0.0,
            seed: 0,
        }
    }
}

pub fn grid_network(cfg: &GridConfig) -> RoadNetwork {
    assert!(cfg.rows >= 1 && cfg.cols >= 1 && cfg.cell > 0.0);
    let mut rng = Rng::new(cfg.seed);
    let spacing = 0.8 * cfg.cell;

    let mut vertices = Vec::with_capacity(cfg.rows * cfg.cols);
    for r in 0..cfg.rows {
        for c in 0..cfg.cols {
            let reward = if cfg.task_fraction > 0.0 && rng.next_f64() < cfg.task_fraction {
                1.0
            } else {
                0.0
            };
            vertices.push(VertexRecord {
                id: r * cfg.cols + c,
                coord: Some((c as f64 * spacing, r as f64 * spacing)),
                reward,
            });
        }
    }

    let mut edges = Vec::new();
    for r in 0..cfg.rows {
        for c in 0..cfg.cols {
            let id = r * cfg.cols + c;
            if c + 1 < cfg.cols {
                edges.push(EdgeRecord {
                    u: id,
                    v: id + 1,
                    cost: cfg.cell * rng.uniform(0.8, 1.2),
                });
            }
            if r + 1 < cfg.rows {
                edges.push(EdgeRecord {
                    u: id,
                    v: id + cfg.cols,
                    cost: cfg.cell * rng.uniform(0.8, 1.2),
                });
            }
        }
    }

    RoadNetwork::from_records(vertices, edges).expect("grid construction is always valid")
}
