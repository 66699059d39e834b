#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tetherpath::cli::gen::{gen_instance, GenConfig};
use tetherpath::model::{build_corridor, Corridor, Instance};
use tetherpath::Q;

const ALPHAS: [(i64, i64); 4] = [(1, 1), (2, 1), (1, 2), (3, 2)];

/// A generated instance with seed-dependent alpha, budget and durations.
pub fn random_instance(seed: u64, max_n: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.random_range(1..=max_n);
    let (an, ad) = ALPHAS[rng.random_range(0..ALPHAS.len())];
    let alpha = Q::new(an, ad);
    // Budgets between a quarter and three times the typical swing.
    let budget = Q::new(rng.random_range(1..=12), 4) * &alpha;
    let hi = rng.random_range(1..=6);
    let config = GenConfig {
        duration_range: (Q::ONE, Q::int(hi)),
        ..GenConfig::new(n, alpha, budget, seed)
    };
    gen_instance(&config).expect("valid config")
}

pub fn random_corridor(seed: u64, max_n: usize) -> (Instance, Corridor) {
    let inst = random_instance(seed, max_n);
    let c = build_corridor(&inst).expect("generated instances are valid");
    (inst, c)
}

/// `k / 1000` of the way from `lo` to `hi`, `k` uniform in `0..1000`.
pub fn sample_between(rng: &mut ChaCha8Rng, lo: &Q, hi: &Q) -> Q {
    let k = rng.random_range(0..1000);
    lo + (hi - lo) * Q::new(k, 1000)
}
