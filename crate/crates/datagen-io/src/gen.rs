//! Seeded instance generation.
//!
//! Generation is a pure function of `(variant, n, seed)`. Randomness comes
//! from ChaCha8, a counter-based generator with explicit stream splitting:
//! datasets give instance `i` the substream `i` of the dataset seed, so any
//! instance can be regenerated independently and the layout is identical
//! across platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vrp_core::{
    Instance, VariantSpec, DEFAULT_CAPACITY, DEFAULT_DURATION_LIMIT, DEFAULT_SERVICE_TIME,
    DEPOT_TW,
};

use crate::DataError;

/// Farthest depot distance at which a closed-window round trip still fits
/// the horizon: (3 - 0.2) / 2.
const TW_REACH: f64 = (DEPOT_TW.1 - DEFAULT_SERVICE_TIME) / 2.0;

/// RNG for one instance of a dataset: substream `index` of `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Generate one instance deterministically from `(variant, n, seed)`.
pub fn generate_instance(variant: VariantSpec, n: usize, seed: u64) -> Result<Instance, DataError> {
    if n == 0 {
        return Err(DataError::EmptyInstance);
    }
    let mut rng = instance_rng(seed, 0);
    Ok(generate_with_rng(variant, n, &mut rng))
}

/// Generation body, fed by an already-positioned RNG stream.
pub fn generate_with_rng(variant: VariantSpec, n: usize, rng: &mut ChaCha8Rng) -> Instance {
    let mut coords: Vec<(f64, f64)> = (0..=n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect();
    if variant.time_window {
        // Resample customers the horizon physically cannot reach round-trip;
        // without this the sampler below has no feasible window to hand out.
        for i in 1..=n {
            while dist(coords[0], coords[i]) > TW_REACH {
                coords[i] = (rng.gen::<f64>(), rng.gen::<f64>());
            }
        }
    }

    let mut demand = vec![0i32; n + 1];
    for d in demand.iter_mut().skip(1) {
        *d = rng.gen_range(1..=9);
    }
    if variant.backhaul {
        let k = ((0.2 * n as f64).round() as usize).min(n);
        let mut order: Vec<usize> = (1..=n).collect();
        order.shuffle(rng);
        for &i in order.iter().take(k) {
            demand[i] = -rng.gen_range(1..=9);
        }
    }

    let mut service_time = vec![0.0; n + 1];
    let mut tw = vec![(0.0, f64::INFINITY); n + 1];
    if variant.time_window {
        tw[0] = DEPOT_TW;
        for i in 1..=n {
            service_time[i] = DEFAULT_SERVICE_TIME;
            tw[i] = sample_window(dist(coords[0], coords[i]), rng);
        }
    }

    let inst = Instance {
        coords,
        demand,
        service_time,
        tw,
        capacity: DEFAULT_CAPACITY,
        duration_limit: DEFAULT_DURATION_LIMIT,
        speed: 1.0,
        variant,
    };
    debug_assert!(inst.validate().is_ok());
    inst
}

/// Window sampler. With `a` the depot travel time, the window satisfies
/// `start >= a` and `end + service + a <= horizon`, so serving the customer
/// alone on a route is always possible, closed or open.
fn sample_window(a: f64, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let horizon = DEPOT_TW.1;
    let service = DEFAULT_SERVICE_TIME;
    let width = rng.gen_range(0.15..0.75);
    let hi = (horizon - service - a - width).max(a);
    let start = if hi > a { rng.gen_range(a..hi) } else { a };
    let end = (start + width).min(horizon - service - a).max(start);
    (start, end)
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}
