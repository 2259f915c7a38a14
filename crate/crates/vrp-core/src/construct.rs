//! Autoregressive solution construction driven by a step policy.

use rand::Rng;

use crate::instance::Instance;
use crate::mask::{feasibility_mask, FeasibilityMask};
use crate::solution::Solution;
use crate::state::{initial_state, transition, DecodeState};
use crate::CoreError;

/// Anything that maps a decoding state to a probability vector over nodes.
///
/// The returned vector has one entry per node (depot included) and must be
/// exactly zero on masked nodes; [`construct`] rejects policies that put
/// mass on a masked node.
pub trait StepPolicy {
    fn step_probs(&self, instance: &Instance, state: &DecodeState) -> Vec<f64>;
}

impl<F> StepPolicy for F
where
    F: Fn(&Instance, &DecodeState) -> Vec<f64>,
{
    fn step_probs(&self, instance: &Instance, state: &DecodeState) -> Vec<f64> {
        self(instance, state)
    }
}

/// Uniform distribution over the currently allowed nodes.
pub struct UniformPolicy;

impl StepPolicy for UniformPolicy {
    fn step_probs(&self, instance: &Instance, state: &DecodeState) -> Vec<f64> {
        let mask = feasibility_mask(instance, state);
        let k = mask.count_allowed() as f64;
        mask.allowed.iter().map(|&a| if a { 1.0 / k } else { 0.0 }).collect()
    }
}

/// How the next action is chosen from the step distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeMode {
    /// Argmax; ties break toward the lowest node index.
    Greedy,
    /// Categorical sample.
    Sample,
}

/// One decoding step as recorded in a construction trace.
#[derive(Debug, Clone)]
pub struct StepRecord {
    /// Probability per node after masking.
    pub probs: Vec<f64>,
    /// Mask that produced the distribution.
    pub mask: FeasibilityMask,
    /// Node chosen at this step.
    pub action: usize,
}

/// Build a full solution by repeatedly querying the policy.
///
/// The final depot return is implicit: construction stops once every
/// customer is visited, and open routes never pay a return leg in the
/// objective anyway.
pub fn construct<P: StepPolicy, R: Rng>(
    instance: &Instance,
    policy: &P,
    mode: DecodeMode,
    rng: &mut R,
) -> Result<(Solution, Vec<StepRecord>), CoreError> {
    let mut state = initial_state(instance);
    let mut trace = Vec::new();
    let mut actions = Vec::new();

    while !state.done() {
        let mask = feasibility_mask(instance, &state);
        let probs = policy.step_probs(instance, &state);
        if probs.len() != instance.num_nodes() {
            return Err(CoreError::PolicyContract(format!(
                "policy returned {} probabilities for {} nodes",
                probs.len(),
                instance.num_nodes()
            )));
        }
        for (j, &p) in probs.iter().enumerate() {
            if !mask.allowed[j] && p > 0.0 {
                return Err(CoreError::PolicyContract(format!(
                    "policy put probability {p} on masked node {j}"
                )));
            }
        }
        let action = choose(&probs, mode, rng)?;
        trace.push(StepRecord { probs, mask, action });
        actions.push(action);
        state = transition(instance, &state, action)?;
    }

    Ok((solution_from_actions(&actions), trace))
}

/// Pick an action from a masked probability vector.
pub fn choose<R: Rng>(probs: &[f64], mode: DecodeMode, rng: &mut R) -> Result<usize, CoreError> {
    match mode {
        DecodeMode::Greedy => {
            let mut best = None;
            let mut best_p = f64::NEG_INFINITY;
            for (j, &p) in probs.iter().enumerate() {
                if p > best_p {
                    best_p = p;
                    best = Some(j);
                }
            }
            best.filter(|_| best_p > 0.0)
                .ok_or_else(|| CoreError::PolicyContract("no positive probability".into()))
        }
        DecodeMode::Sample => {
            let total: f64 = probs.iter().sum();
            if total <= 0.0 {
                return Err(CoreError::PolicyContract("no positive probability".into()));
            }
            let mut u = rng.gen::<f64>() * total;
            let mut last_positive = 0;
            for (j, &p) in probs.iter().enumerate() {
                if p > 0.0 {
                    last_positive = j;
                    u -= p;
                    if u <= 0.0 {
                        return Ok(j);
                    }
                }
            }
            Ok(last_positive)
        }
    }
}

/// Turn an action sequence into routes. Depot actions split routes; a
/// trailing open route is closed implicitly.
pub fn solution_from_actions(actions: &[usize]) -> Solution {
    let mut routes = Vec::new();
    let mut current = Vec::new();
    for &a in actions {
        if a == 0 {
            if !current.is_empty() {
                routes.push(std::mem::take(&mut current));
            }
        } else {
            current.push(a);
        }
    }
    if !current.is_empty() {
        routes.push(current);
    }
    Solution::new(routes)
}

/// Replay a solution as an action sequence, checking every action against
/// the mask. Confirms that `verify` and the mask agree on feasibility.
pub fn replay(instance: &Instance, solution: &Solution) -> Result<(), CoreError> {
    let mut state = initial_state(instance);
    let mut first = true;
    for route in &solution.routes {
        if !first {
            state = transition(instance, &state, 0)?;
        }
        first = false;
        for &c in route {
            state = transition(instance, &state, c)?;
        }
    }
    Ok(())
}
