//! Static node features and dynamic per-step features.
//!
//! One weight set serves all 16 variants, so fields belonging to inactive
//! constraints are zeroed rather than omitted.

use numkit::{Real, Tensor};
use vrp_core::{DecodeState, Instance};

/// Width of the per-node static feature vector:
/// (x, y, demand / capacity, service time, window start, window end).
pub const NODE_FEATURES: usize = 6;

/// Width of the dynamic feature vector:
/// (remaining load / capacity, current time, remaining duration, open flag).
pub const DYNAMIC_FEATURES: usize = 4;

/// Static features, one row per node, depot first.
pub fn node_features(instance: &Instance) -> Tensor {
    let n = instance.num_nodes();
    let tw_active = instance.variant.time_window;
    let mut data = Vec::with_capacity(n * NODE_FEATURES);
    for i in 0..n {
        let (x, y) = instance.coords[i];
        data.push(x as Real);
        data.push(y as Real);
        data.push((instance.demand[i] as f64 / instance.capacity) as Real);
        if tw_active {
            data.push(instance.service_time[i] as Real);
            data.push(instance.tw[i].0 as Real);
            data.push(instance.tw[i].1 as Real);
        } else {
            data.extend_from_slice(&[0.0, 0.0, 0.0]);
        }
    }
    Tensor::from_vec(n, NODE_FEATURES, data)
}

/// Dynamic features for one state, as a single row.
pub fn dynamic_features(instance: &Instance, state: &DecodeState) -> Tensor {
    let v = instance.variant;
    Tensor::row(&[
        (state.remaining_load / instance.capacity) as Real,
        if v.time_window { state.current_time as Real } else { 0.0 },
        if v.duration_limit { state.remaining_duration as Real } else { 0.0 },
        state.open_flag as Real,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use vrp_core::{build_instance, initial_state, VariantSpec};

    #[test]
    fn inactive_fields_are_zero() {
        let inst = build_instance(
            VariantSpec::CVRP,
            vec![(0.1, 0.2), (0.3, 0.4)],
            vec![0, 5],
        );
        let f = node_features(&inst);
        assert_eq!(f.shape(), (2, NODE_FEATURES));
        // Depot row: zero demand and service time.
        assert_eq!(f.get(0, 2), 0.0);
        assert_eq!(f.get(0, 3), 0.0);
        // Customer: demand normalized by capacity; window fields zeroed.
        assert!((f.get(1, 2) - 0.1) < 1e-12);
        assert_eq!(f.get(1, 4), 0.0);
        assert_eq!(f.get(1, 5), 0.0);

        let d = dynamic_features(&inst, &initial_state(&inst));
        assert_eq!(d.data(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn active_fields_flow_through() {
        let inst = build_instance(
            VariantSpec::new(true, false, true, true),
            vec![(0.1, 0.2), (0.3, 0.4)],
            vec![0, 5],
        );
        let f = node_features(&inst);
        assert_eq!(f.get(1, 3), 0.2 as Real);
        assert_eq!(f.get(0, 5), 3.0);
        let d = dynamic_features(&inst, &initial_state(&inst));
        assert_eq!(d.data(), &[1.0, 0.0, 3.0, 1.0]);
    }
}
