//! Problem instances: node coordinates, demands, service times, time windows
//! and the vehicle parameters shared by all routes.

use crate::variant::VariantSpec;
use crate::CoreError;

/// Default vehicle capacity for generated instances.
pub const DEFAULT_CAPACITY: f64 = 50.0;
/// Default per-route travel distance cap.
pub const DEFAULT_DURATION_LIMIT: f64 = 3.0;
/// Default depot time window for time-window variants.
pub const DEPOT_TW: (f64, f64) = (0.0, 3.0);
/// Default customer service time for time-window variants.
pub const DEFAULT_SERVICE_TIME: f64 = 0.2;

/// A single routing instance. Node 0 is the depot.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    /// (x, y) per node, depot first.
    pub coords: Vec<(f64, f64)>,
    /// Signed demand per node; depot 0, linehauls positive, backhauls negative.
    pub demand: Vec<i32>,
    /// Service time per node; depot 0.
    pub service_time: Vec<f64>,
    /// (earliest, latest) per node; `(0, +inf)` when time windows are inactive.
    pub tw: Vec<(f64, f64)>,
    pub capacity: f64,
    pub duration_limit: f64,
    pub speed: f64,
    pub variant: VariantSpec,
}

impl Instance {
    /// Number of customers (nodes excluding the depot).
    pub fn num_customers(&self) -> usize {
        self.coords.len() - 1
    }

    /// Total node count including the depot.
    pub fn num_nodes(&self) -> usize {
        self.coords.len()
    }

    /// Euclidean distance between two nodes.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let (xi, yi) = self.coords[i];
        let (xj, yj) = self.coords[j];
        ((xi - xj).powi(2) + (yi - yj).powi(2)).sqrt()
    }

    /// Travel time between two nodes (distance over speed).
    pub fn travel_time(&self, i: usize, j: usize) -> f64 {
        self.distance(i, j) / self.speed
    }

    /// Latest time by which closed routes must be back at the depot.
    pub fn depot_close(&self) -> f64 {
        self.tw[0].1
    }

    /// Structural sanity of the instance itself.
    pub fn validate(&self) -> Result<(), CoreError> {
        let n = self.coords.len();
        if n < 2 {
            return Err(CoreError::InvalidInstance("need a depot and at least one customer".into()));
        }
        if self.demand.len() != n || self.service_time.len() != n || self.tw.len() != n {
            return Err(CoreError::InvalidInstance("field lengths disagree".into()));
        }
        if self.capacity <= 0.0 || self.speed <= 0.0 {
            return Err(CoreError::InvalidInstance("capacity and speed must be positive".into()));
        }
        if self.demand[0] != 0 {
            return Err(CoreError::InvalidInstance("depot demand must be 0".into()));
        }
        for (i, &d) in self.demand.iter().enumerate().skip(1) {
            if d == 0 {
                return Err(CoreError::InvalidInstance(format!("customer {i} has zero demand")));
            }
            if !self.variant.backhaul && d < 0 {
                return Err(CoreError::InvalidInstance(format!(
                    "customer {i} has negative demand in a non-backhaul variant"
                )));
            }
            if (d.abs() as f64) >= self.capacity {
                return Err(CoreError::InvalidInstance(format!(
                    "customer {i} demand {d} exceeds capacity {}",
                    self.capacity
                )));
            }
        }
        if self.variant.time_window {
            for (i, &(e, l)) in self.tw.iter().enumerate() {
                if e > l {
                    return Err(CoreError::InvalidInstance(format!(
                        "node {i} window starts after it ends"
                    )));
                }
                if i > 0 && l > self.depot_close() + 1e-9 {
                    return Err(CoreError::InvalidInstance(format!(
                        "customer {i} window closes after the depot does"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Helper for handmade instances in tests and docs: builds an instance from
/// coordinates and demands, with default vehicle parameters.
pub fn build_instance(
    variant: VariantSpec,
    coords: Vec<(f64, f64)>,
    demand: Vec<i32>,
) -> Instance {
    let n = coords.len();
    let tw_inactive = (0.0, f64::INFINITY);
    let inst = Instance {
        coords,
        demand,
        service_time: vec![0.0; n],
        tw: if variant.time_window {
            let mut tw = vec![DEPOT_TW; n];
            tw[0] = DEPOT_TW;
            tw
        } else {
            vec![tw_inactive; n]
        },
        capacity: DEFAULT_CAPACITY,
        duration_limit: DEFAULT_DURATION_LIMIT,
        speed: 1.0,
        variant,
    };
    if variant.time_window {
        let mut inst = inst;
        for node in inst.service_time.iter_mut().skip(1) {
            *node = DEFAULT_SERVICE_TIME;
        }
        inst
    } else {
        inst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_node(variant: VariantSpec) -> Instance {
        build_instance(variant, vec![(0.0, 0.0), (0.3, 0.4)], vec![0, 5])
    }

    #[test]
    fn distance_345_triangle() {
        let inst = two_node(VariantSpec::CVRP);
        assert!((inst.distance(0, 1) - 0.5).abs() < 1e-12);
        assert_eq!(inst.distance(1, 1), 0.0);
    }

    #[test]
    fn distance_direct_formula() {
        let inst = build_instance(
            VariantSpec::CVRP,
            vec![(0.0, 0.0), (0.2, 0.7), (0.7, 0.2)],
            vec![0, 1, 1],
        );
        // sqrt(0.5^2 + 0.5^2)
        assert!((inst.distance(1, 2) - 0.7071068).abs() < 1e-6);
        assert!((inst.distance(1, 2) - inst.distance(2, 1)).abs() < 1e-15);
    }

    #[test]
    fn validation_rejects_bad_demands() {
        let mut inst = two_node(VariantSpec::CVRP);
        inst.demand[1] = -3;
        assert!(inst.validate().is_err());
        inst.demand[1] = 60;
        assert!(inst.validate().is_err());
        inst.demand[1] = 5;
        assert!(inst.validate().is_ok());
    }
}
