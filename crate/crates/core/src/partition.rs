//! Splitting `[2, n]` into per-node segments.
//!
//! Two node-count formulas live here. [`node_count_literal`] evaluates
//! `⌊n/k⌋ + ((n mod k) & 1)` exactly as written, which leaves integers
//! uncovered when the remainder is even and nonzero. [`plan_partition`]
//! uses `⌈(n−1)/k⌉` so the plans always tile `[2, n]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sieve::SieveRange;

/// How a node's cores are assigned to its segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SieveMode {
    /// One core sieves the whole segment in one direction.
    SingleCore,
    /// Two cores sieve from the head and tail simultaneously.
    DualBidirectional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodePlan {
    pub node_id: usize,
    pub segment_range: SieveRange,
    pub mode: SieveMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterPlan {
    pub n: u64,
    pub k: u64,
    pub plans: Vec<NodePlan>,
    pub cores_required: u64,
    pub deques_required: u64,
}

impl ClusterPlan {
    pub fn node_count(&self) -> usize {
        self.plans.len()
    }
}

/// Node count as the literal formula `⌊n/k⌋ + ((n mod k) & 1)`.
pub fn node_count_literal(n: u64, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::domain("segment scale k must be at least 1"));
    }
    Ok(n / k + ((n % k) & 1))
}

/// Cores and deques for `node_count` dual-core nodes: both `2·N`.
pub fn core_deque_count(node_count: u64) -> (u64, u64) {
    (2 * node_count, 2 * node_count)
}

/// Mode for a segment of length `len` when the nominal scale is `k`:
/// single core iff `len <= k/2`, compared exactly as `2·len <= k`.
pub fn mode_for(len: u64, k: u64) -> SieveMode {
    if len.saturating_mul(2) <= k {
        SieveMode::SingleCore
    } else {
        SieveMode::DualBidirectional
    }
}

/// Tiles `[2, n]` with segments of length `k`; the last may be shorter.
pub fn plan_partition(n: u64, k: u64) -> Result<ClusterPlan> {
    if n < 2 {
        return Err(Error::domain(format!("n must be at least 2, got {n}")));
    }
    if k < 2 {
        return Err(Error::domain(format!("k must be at least 2, got {k}")));
    }
    let total = n - 1;
    let nodes = total.div_ceil(k);
    let plans = (0..nodes)
        .map(|i| {
            let lo = 2 + i * k;
            let hi = lo.saturating_add(k - 1).min(n);
            let range = SieveRange::new(lo, hi).expect("tile inside [2, n]");
            NodePlan {
                node_id: i as usize,
                segment_range: range,
                mode: mode_for(range.len(), k),
            }
        })
        .collect();
    let (cores_required, deques_required) = core_deque_count(nodes);
    Ok(ClusterPlan {
        n,
        k,
        plans,
        cores_required,
        deques_required,
    })
}
