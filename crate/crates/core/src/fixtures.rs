//! The eight-vertex worked example used across tests and docs: a three-edge
//! preferred path with three rewarded tasks around it.
//!
//! Layout (costs on edges, rewards in brackets):
//!
//! ```text
//!   t1[3]          t2[4] --5-- v4 --5-- t3[5]
//!     \              |                   |
//!      3             2                   2
//!       \            |                   |
//!        s --5----- v1 ----5---- v2 --5-- d
//!              (preferred path s, v1, v2, d)
//! ```

use std::collections::BTreeMap;

use crate::network::{PreferredPath, RoadNetwork, VertexId};
use crate::query::Query;

pub struct Fixture {
    pub net: RoadNetwork,
    pub s: VertexId,
    pub v1: VertexId,
    pub v2: VertexId,
    pub d: VertexId,
    pub t1: VertexId,
    pub t2: VertexId,
    pub t3: VertexId,
    pub v4: VertexId,
}

impl Fixture {
    /// Preferred path `⟨s, v1, v2, d⟩`, total cost 15.
    pub fn pref(&self) -> PreferredPath {
        PreferredPath::new(&self.net, vec![self.s, self.v1, self.v2, self.d]).unwrap()
    }

    /// Query over all three tasks with the given budget.
    pub fn query(&self, budget: f64) -> Query {
        let tasks: BTreeMap<VertexId, f64> =
            [(self.t1, 3.0), (self.t2, 4.0), (self.t3, 5.0)].into();
        Query::new(&self.net, self.pref(), tasks, budget).unwrap()
    }
}

const NETWORK: &str = "\
0 - - 0
1 - - 0
2 - - 0
3 - - 0
4 - - 3
5 - - 4
6 - - 5
7 - - 0
0 1 5
1 2 5
2 3 5
0 4 3
1 5 2
3 6 2
5 7 5
7 6 5
";

const NETWORK_WITH_COORDS: &str = "\
0 0 0 0
1 5 0 0
2 10 0 0
3 15 0 0
4 0 -3 3
5 5 -2 4
6 15 -2 5
7 10 -2 0
0 1 5
1 2 5
2 3 5
0 4 3
1 5 2
3 6 2
5 7 5
7 6 5
";

fn build(text: &str) -> Fixture {
    Fixture {
        net: RoadNetwork::parse(text).unwrap(),
        s: 0,
        v1: 1,
        v2: 2,
        d: 3,
        t1: 4,
        t2: 5,
        t3: 6,
        v4: 7,
    }
}

/// The example network without coordinates.
pub fn eight_vertex() -> Fixture {
    build(NETWORK)
}

/// The same network with planar coordinates (every edge cost equals the
/// Euclidean endpoint distance), so the budget lower bound is active.
pub fn eight_vertex_with_coords() -> Fixture {
    build(NETWORK_WITH_COORDS)
}

/// The example network plus a branch vertex `v3` between `t1` and `v1`
/// (costs 4 and 4), giving two equal-travel routes from `s` to `t2` that
/// visit `t1` first — the ordered-task-sequence pruning scenario.
pub fn nine_vertex_with_branch() -> (Fixture, VertexId) {
    let text = format!("{NETWORK}8 - - 0\n4 8 4\n8 1 4\n");
    let fx = build(&text);
    (fx, 8)
}

/// Plain-text form of the example network, for CLI-level tests.
pub fn eight_vertex_file() -> &'static str {
    NETWORK
}
