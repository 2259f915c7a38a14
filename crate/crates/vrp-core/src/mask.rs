//! Per-step feasibility masking.
//!
//! A node is allowed when every constraint active in the variant admits it.
//! The rules reserve whatever the vehicle needs to finish legally (return
//! distance, return time), which together with the depot reset guarantees at
//! least one action is always available.

use crate::instance::Instance;
use crate::state::DecodeState;
use crate::EPS;

/// Why a node is masked, or `Ok` when it is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaskReason {
    Ok,
    Visited,
    Capacity,
    TimeWindow,
    ReturnWindow,
    Duration,
    DepotRepeat,
}

/// Boolean mask over all nodes plus the reason each node was excluded.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityMask {
    pub allowed: Vec<bool>,
    pub reason: Vec<MaskReason>,
}

impl FeasibilityMask {
    pub fn allowed_nodes(&self) -> Vec<usize> {
        (0..self.allowed.len()).filter(|&i| self.allowed[i]).collect()
    }

    pub fn count_allowed(&self) -> usize {
        self.allowed.iter().filter(|&&a| a).count()
    }
}

/// Compute the mask for the current state.
pub fn feasibility_mask(instance: &Instance, state: &DecodeState) -> FeasibilityMask {
    let n = instance.num_nodes();
    let mut allowed = vec![false; n];
    let mut reason = vec![MaskReason::Ok; n];

    // Depot: only to close a non-empty route.
    if state.route_empty() || state.done() {
        reason[0] = MaskReason::DepotRepeat;
    } else {
        allowed[0] = true;
    }

    for j in 1..n {
        reason[j] = customer_reason(instance, state, j);
        allowed[j] = reason[j] == MaskReason::Ok;
    }

    FeasibilityMask { allowed, reason }
}

fn customer_reason(instance: &Instance, state: &DecodeState, j: usize) -> MaskReason {
    if state.visited[j] {
        return MaskReason::Visited;
    }
    let v = instance.variant;
    let cap = instance.capacity;

    let d = instance.demand[j] as f64;
    let fits = if d > 0.0 {
        state.delivered + d <= cap + EPS
    } else {
        state.collected + (-d) <= cap + EPS
    };
    if !fits {
        return MaskReason::Capacity;
    }

    let travel = instance.distance(state.last, j);

    if v.time_window {
        let (earliest, latest) = instance.tw[j];
        let arrive = state.current_time + travel / instance.speed;
        if arrive.max(earliest) > latest + EPS {
            return MaskReason::TimeWindow;
        }
        if !v.open {
            let depart = arrive.max(earliest) + instance.service_time[j];
            if depart + instance.travel_time(j, 0) > instance.depot_close() + EPS {
                return MaskReason::ReturnWindow;
            }
        }
    }

    if v.duration_limit {
        let reserve = if v.open { 0.0 } else { instance.distance(j, 0) };
        if travel + reserve > state.remaining_duration + EPS {
            return MaskReason::Duration;
        }
    }

    MaskReason::Ok
}
