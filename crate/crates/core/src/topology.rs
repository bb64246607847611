//! Closed-form cost and connectivity figures for three interconnects.
//!
//! Crossbar bisection width is reported as `p`, read from the crossbar's
//! ability to connect every pair of devices at once; it is an
//! interpretation, not a quoted formula. For the omega network both the
//! number of 2×2 crossbar units, `(1/2)·p·log2 p`, and the total switch
//! count, `2·p·log2 p`, are reported.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyKind {
    Hypercube,
    Crossbar,
    Omega,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub kind: TopologyKind,
    pub p: u64,
    pub dimension: Option<u32>,
    pub bisection_width: u64,
    pub switch_count: u64,
    pub wires_per_switch: Option<u64>,
    /// 2×2 crossbar units (omega only).
    pub crossbar_units: Option<u64>,
}

/// `d`-dimensional hypercube: `p = 2^d`, bisection `p/2`, `1 + d` wires
/// per switch, one switch per node.
pub fn hypercube_metrics(d: u32) -> Result<TopologyReport> {
    if d == 0 {
        return Err(Error::domain("hypercube dimension must be at least 1"));
    }
    if d > 62 {
        return Err(Error::domain(format!("hypercube dimension {d} overflows")));
    }
    let p = 1u64 << d;
    Ok(TopologyReport {
        kind: TopologyKind::Hypercube,
        p,
        dimension: Some(d),
        bisection_width: p / 2,
        switch_count: p,
        wires_per_switch: Some(1 + u64::from(d)),
        crossbar_units: None,
    })
}

pub fn omega_metrics(p: u64) -> Result<TopologyReport> {
    if p < 2 || !p.is_power_of_two() {
        return Err(Error::domain(format!("omega network needs a power of two >= 2, got {p}")));
    }
    let log = u64::from(p.trailing_zeros());
    let switch_count = (2 * p)
        .checked_mul(log)
        .ok_or_else(|| Error::domain(format!("omega switch count overflows for p = {p}")))?;
    Ok(TopologyReport {
        kind: TopologyKind::Omega,
        p,
        dimension: None,
        // stage-to-stage cut of a shuffle-exchange network
        bisection_width: p / 2,
        switch_count,
        wires_per_switch: None,
        crossbar_units: Some(p / 2 * log),
    })
}

pub fn crossbar_metrics(p: u64) -> Result<TopologyReport> {
    if p == 0 {
        return Err(Error::domain("crossbar needs at least one device"));
    }
    let switch_count = p
        .checked_mul(p)
        .ok_or_else(|| Error::domain(format!("crossbar switch count overflows for p = {p}")))?;
    Ok(TopologyReport {
        kind: TopologyKind::Crossbar,
        p,
        dimension: None,
        bisection_width: p,
        switch_count,
        wires_per_switch: None,
        crossbar_units: None,
    })
}
