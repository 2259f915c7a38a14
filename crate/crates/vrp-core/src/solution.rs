//! Solutions as ordered routes, the giant-tour text form, and the objective.

use crate::instance::Instance;
use crate::CoreError;

/// A solution: customers partitioned into ordered routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// Each route is a non-empty customer sequence (depot implied at ends).
    pub routes: Vec<Vec<usize>>,
}

impl Solution {
    pub fn new(routes: Vec<Vec<usize>>) -> Self {
        Solution { routes }
    }

    pub fn num_customers(&self) -> usize {
        self.routes.iter().map(|r| r.len()).sum()
    }

    /// Canonical giant-tour text form: space-separated node indices that
    /// begin and end with the depot, e.g. `0 3 1 0 2 0`. The trailing depot
    /// is always written, including for open variants.
    pub fn to_giant_tour(&self) -> String {
        let mut out = String::from("0");
        for route in &self.routes {
            for &c in route {
                out.push(' ');
                out.push_str(&c.to_string());
            }
            out.push_str(" 0");
        }
        out
    }

    /// Parse the giant-tour text form.
    pub fn from_giant_tour(text: &str) -> Result<Solution, CoreError> {
        let nodes: Vec<usize> = text
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| CoreError::GiantTour(format!("bad token {t:?}"))))
            .collect::<Result<_, _>>()?;
        if nodes.first() != Some(&0) || nodes.last() != Some(&0) {
            return Err(CoreError::GiantTour("tour must start and end at the depot".into()));
        }
        let mut routes = Vec::new();
        let mut current = Vec::new();
        for &node in &nodes[1..] {
            if node == 0 {
                if current.is_empty() {
                    return Err(CoreError::GiantTour("empty route".into()));
                }
                routes.push(std::mem::take(&mut current));
            } else {
                current.push(node);
            }
        }
        Ok(Solution::new(routes))
    }
}

/// Total travel distance of a solution. Each route contributes
/// depot -> c1 -> ... -> ck, and ck -> depot only for closed variants.
///
/// Returns an error when the solution is not a partition of the customers.
pub fn evaluate(instance: &Instance, solution: &Solution) -> Result<f64, CoreError> {
    check_partition(instance, solution)?;
    Ok(evaluate_unchecked(instance, solution))
}

/// Objective without the partition check, for inner loops that already
/// guarantee structure.
///
/// Route costs are summed in sorted order, so the objective is bit-identical
/// under any permutation of the routes.
pub fn evaluate_unchecked(instance: &Instance, solution: &Solution) -> f64 {
    let mut costs: Vec<f64> = solution.routes.iter().map(|r| route_cost(instance, r)).collect();
    costs.sort_by(f64::total_cmp);
    costs.iter().sum()
}

/// Distance of a single route under the instance's open/closed convention.
///
/// Legs are summed in sorted order; with symmetric distances this makes the
/// cost of a closed route bit-identical under reversal of the route.
pub fn route_cost(instance: &Instance, route: &[usize]) -> f64 {
    if route.is_empty() {
        return 0.0;
    }
    let mut legs = Vec::with_capacity(route.len() + 1);
    legs.push(instance.distance(0, route[0]));
    for pair in route.windows(2) {
        legs.push(instance.distance(pair[0], pair[1]));
    }
    if !instance.variant.open {
        legs.push(instance.distance(route[route.len() - 1], 0));
    }
    legs.sort_by(f64::total_cmp);
    legs.iter().sum()
}

/// Every customer appears in exactly one route exactly once; no depot inside
/// routes; no empty routes; all indices in range.
pub fn check_partition(instance: &Instance, solution: &Solution) -> Result<(), CoreError> {
    let n = instance.num_customers();
    let mut seen = vec![false; n + 1];
    for route in &solution.routes {
        if route.is_empty() {
            return Err(CoreError::Structure("empty route".into()));
        }
        for &c in route {
            if c == 0 {
                return Err(CoreError::Structure("depot inside a route".into()));
            }
            if c > n {
                return Err(CoreError::Structure(format!("node {c} out of range")));
            }
            if seen[c] {
                return Err(CoreError::Structure(format!("customer {c} visited twice")));
            }
            seen[c] = true;
        }
    }
    if let Some(missing) = (1..=n).find(|&c| !seen[c]) {
        return Err(CoreError::Structure(format!("customer {missing} not visited")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::build_instance;
    use crate::variant::VariantSpec;

    fn one_customer(variant: VariantSpec) -> Instance {
        build_instance(variant, vec![(0.0, 0.0), (0.5, 0.5)], vec![0, 5])
    }

    #[test]
    fn out_and_back_objective() {
        let inst = one_customer(VariantSpec::CVRP);
        let sol = Solution::new(vec![vec![1]]);
        assert!((evaluate(&inst, &sol).unwrap() - 1.4142136).abs() < 1e-6);
    }

    #[test]
    fn open_variant_drops_return_leg() {
        let inst = one_customer(VariantSpec::OVRP);
        let sol = Solution::new(vec![vec![1]]);
        assert!((evaluate(&inst, &sol).unwrap() - 0.7071068).abs() < 1e-6);
    }

    #[test]
    fn giant_tour_roundtrip() {
        let sol = Solution::new(vec![vec![3, 1], vec![2]]);
        assert_eq!(sol.to_giant_tour(), "0 3 1 0 2 0");
        assert_eq!(Solution::from_giant_tour("0 3 1 0 2 0").unwrap(), sol);
        assert!(Solution::from_giant_tour("3 1 0").is_err());
        assert!(Solution::from_giant_tour("0 1 0 0").is_err());
    }

    #[test]
    fn partition_violations() {
        let inst = build_instance(
            VariantSpec::CVRP,
            vec![(0.0, 0.0), (0.1, 0.1), (0.2, 0.2)],
            vec![0, 1, 1],
        );
        assert!(evaluate(&inst, &Solution::new(vec![vec![1]])).is_err());
        assert!(evaluate(&inst, &Solution::new(vec![vec![1, 1, 2]])).is_err());
        assert!(evaluate(&inst, &Solution::new(vec![vec![1, 2]])).is_ok());
    }
}
