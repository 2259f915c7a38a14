//! The decoding state machine: one state per partial solution, advanced one
//! node at a time.

use crate::instance::Instance;
use crate::mask::feasibility_mask;
use crate::CoreError;

/// Partial-solution state during autoregressive construction.
///
/// `remaining_load` is capacity minus the total absolute demand served on the
/// current route; it is a policy feature, while feasibility decisions use the
/// per-direction accumulators `delivered` and `collected`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeState {
    pub visited: Vec<bool>,
    /// Node the vehicle is currently at (0 = depot).
    pub last: usize,
    /// Remaining vehicle load on the current route.
    pub remaining_load: f64,
    /// Current time along the current route.
    pub current_time: f64,
    /// Remaining route travel budget (duration limit minus distance so far).
    pub remaining_duration: f64,
    /// 1.0 for open variants, 0.0 otherwise.
    pub open_flag: f64,
    /// Linehaul demand served on the current route.
    pub delivered: f64,
    /// Absolute backhaul demand served on the current route.
    pub collected: f64,
    /// Customers left to visit.
    pub unvisited_count: usize,
}

impl DecodeState {
    pub fn done(&self) -> bool {
        self.unvisited_count == 0
    }

    /// Unvisited customer indices in ascending order.
    pub fn unvisited(&self) -> Vec<usize> {
        (1..self.visited.len()).filter(|&i| !self.visited[i]).collect()
    }

    /// True at the start of a route, before any customer was served.
    pub fn route_empty(&self) -> bool {
        self.last == 0
    }
}

/// Fresh state: vehicle at the depot with full load and budget.
pub fn initial_state(instance: &Instance) -> DecodeState {
    DecodeState {
        visited: vec![false; instance.num_nodes()],
        last: 0,
        remaining_load: instance.capacity,
        current_time: 0.0,
        remaining_duration: instance.duration_limit,
        open_flag: if instance.variant.open { 1.0 } else { 0.0 },
        delivered: 0.0,
        collected: 0.0,
        unvisited_count: instance.num_customers(),
    }
}

/// Advance the state by one action.
///
/// The depot action ends the current route and resets every route-level
/// field; a customer action serves that customer under wait-until-earliest
/// time semantics. Actions the feasibility mask forbids are contract
/// violations and rejected with an error.
pub fn transition(
    instance: &Instance,
    state: &DecodeState,
    action: usize,
) -> Result<DecodeState, CoreError> {
    if action >= instance.num_nodes() {
        return Err(CoreError::IndexOutOfRange(action));
    }
    let mask = feasibility_mask(instance, state);
    if !mask.allowed[action] {
        return Err(CoreError::MaskedAction {
            action,
            reason: format!("{:?}", mask.reason[action]),
        });
    }
    let mut next = state.clone();
    if action == 0 {
        next.last = 0;
        next.remaining_load = instance.capacity;
        next.current_time = 0.0;
        next.remaining_duration = instance.duration_limit;
        next.delivered = 0.0;
        next.collected = 0.0;
        return Ok(next);
    }

    let travel = instance.distance(state.last, action);
    let arrive = state.current_time + travel / instance.speed;
    let (earliest, _) = instance.tw[action];
    next.current_time = arrive.max(earliest) + instance.service_time[action];
    next.remaining_duration -= travel;

    let d = instance.demand[action] as f64;
    if d > 0.0 {
        next.delivered += d;
    } else {
        next.collected += -d;
    }
    next.remaining_load -= d.abs();

    next.visited[action] = true;
    next.unvisited_count -= 1;
    next.last = action;
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{build_instance, DEFAULT_CAPACITY, DEFAULT_DURATION_LIMIT};
    use crate::variant::VariantSpec;

    #[test]
    fn initial_state_defaults() {
        let inst = build_instance(
            VariantSpec::VRPL,
            vec![(0.0, 0.0), (0.1, 0.1), (0.2, 0.2)],
            vec![0, 3, 4],
        );
        let s = initial_state(&inst);
        assert_eq!(s.remaining_load, DEFAULT_CAPACITY);
        assert_eq!(s.remaining_duration, DEFAULT_DURATION_LIMIT);
        assert_eq!(s.current_time, 0.0);
        assert!(s.visited.iter().all(|&v| !v));
        assert!(!s.done());
    }

    #[test]
    fn linehaul_reduces_load() {
        let inst = build_instance(
            VariantSpec::CVRP,
            vec![(0.0, 0.0), (0.1, 0.0), (0.2, 0.0)],
            vec![0, 7, 2],
        );
        let s = initial_state(&inst);
        let s = transition(&inst, &s, 1).unwrap();
        assert_eq!(s.remaining_load, 43.0);
        assert_eq!(s.delivered, 7.0);
        assert_eq!(s.last, 1);
    }

    #[test]
    fn wait_until_earliest_then_serve() {
        let mut inst = build_instance(
            VariantSpec::VRPTW,
            vec![(0.0, 0.0), (0.9, 0.0), (0.1, 0.0)],
            vec![0, 3, 3],
        );
        inst.tw[1] = (1.2, 2.0);
        let s = initial_state(&inst);
        let s = transition(&inst, &s, 1).unwrap();
        // Arrive at 0.9, wait until 1.2, serve 0.2.
        assert!((s.current_time - 1.4).abs() < 1e-12);
    }

    #[test]
    fn depot_resets_route_fields() {
        let inst = build_instance(
            VariantSpec::VRPL,
            vec![(0.0, 0.0), (0.1, 0.0), (0.2, 0.0)],
            vec![0, 7, 2],
        );
        let s = initial_state(&inst);
        let s = transition(&inst, &s, 1).unwrap();
        let s = transition(&inst, &s, 0).unwrap();
        assert_eq!(s.remaining_load, 50.0);
        assert_eq!(s.current_time, 0.0);
        assert_eq!(s.remaining_duration, 3.0);
        assert_eq!(s.delivered, 0.0);
        assert!(s.visited[1]);
    }

    #[test]
    fn masked_action_is_a_contract_violation() {
        let inst = build_instance(
            VariantSpec::CVRP,
            vec![(0.0, 0.0), (0.1, 0.0), (0.2, 0.0)],
            vec![0, 7, 2],
        );
        let s = initial_state(&inst);
        // Depot is masked while the route is empty.
        assert!(matches!(
            transition(&inst, &s, 0),
            Err(CoreError::MaskedAction { .. })
        ));
        let s = transition(&inst, &s, 1).unwrap();
        // Revisiting is masked.
        assert!(transition(&inst, &s, 1).is_err());
    }
}
