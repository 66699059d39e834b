//! Wall-clock scaling of the solvers on generated instances.

use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gen::{gen_instance, GenConfig};
use crate::minlink::build_min_link_path;
use crate::minslope::{min_slope_bruteforce, min_slope_linear, SlopeSolution};
use crate::model::{build_corridor, Corridor};
use crate::num::Q;

/// Brute force is only timed up to this size.
pub const BRUTEFORCE_MAX: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub size: usize,
    pub method: &'static str,
    pub median_ns: u128,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Instances on which both methods ran and returned different slopes.
    pub disagreements: usize,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,method,median_ns\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.size, r.method, r.median_ns));
        }
        out
    }

    pub fn median(&self, size: usize, method: &str) -> Option<u128> {
        self.rows
            .iter()
            .find(|r| r.size == size && r.method == method)
            .map(|r| r.median_ns)
    }
}

/// Instance seeds for one size: a ChaCha stream keyed by `(seed, size)`.
pub fn instance_seeds(seed: u64, size: usize, repeats: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(size as u64);
    (0..repeats).map(|_| rng.next_u64()).collect()
}

pub fn bench_instance(size: usize, seed: u64) -> Corridor {
    let config = GenConfig::new(size, Q::ONE, Q::int(2), seed);
    let instance = gen_instance(&config).expect("bench config is valid");
    build_corridor(&instance).expect("generated instances are valid")
}

/// Min-slope, plus path construction when `with_path`.
fn timed(corridor: &Corridor, solver: fn(&Corridor) -> SlopeSolution, with_path: bool) -> (u128, Q) {
    let start = Instant::now();
    let solution = solver(corridor);
    let path = with_path.then(|| build_min_link_path(corridor, &solution));
    let ns = start.elapsed().as_nanos();
    assert!(path.is_none_or(|p| p.is_ok()), "solver produced no path");
    (ns, solution.beta_star)
}

fn median(mut xs: Vec<u128>) -> u128 {
    xs.sort_unstable();
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2
    }
}

/// Per size, times the linear min-slope plus path construction and, up to
/// `BRUTEFORCE_MAX`, the quadratic min-slope alone. Corridor construction
/// is not timed. With `repeats == 0` the report has no rows.
pub fn run_bench(sizes: &[usize], repeats: usize, seed: u64) -> BenchReport {
    let mut report = BenchReport::default();
    if repeats == 0 {
        return report;
    }
    for &size in sizes {
        let brute = size <= BRUTEFORCE_MAX;
        let mut linear_ns = Vec::with_capacity(repeats);
        let mut brute_ns = Vec::with_capacity(repeats);
        for s in instance_seeds(seed, size, repeats) {
            let corridor = bench_instance(size, s);
            let (ns, beta) = timed(&corridor, min_slope_linear, true);
            linear_ns.push(ns);
            if brute {
                let (ns, other) = timed(&corridor, min_slope_bruteforce, false);
                brute_ns.push(ns);
                if other != beta {
                    report.disagreements += 1;
                }
            }
        }
        report.rows.push(BenchRow {
            size,
            method: "linear",
            median_ns: median(linear_ns),
        });
        if brute {
            report.rows.push(BenchRow {
                size,
                method: "bruteforce",
                median_ns: median(brute_ns),
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_repeats_is_empty() {
        let r = run_bench(&[10, 100], 0, 1);
        assert!(r.rows.is_empty());
        assert_eq!(r.to_csv(), "size,method,median_ns\n");
    }

    #[test]
    fn rows_and_agreement() {
        let r = run_bench(&[50, 6000], 3, 9);
        let keys: Vec<(usize, &str)> = r.rows.iter().map(|r| (r.size, r.method)).collect();
        assert_eq!(keys, vec![(50, "linear"), (50, "bruteforce"), (6000, "linear")]);
        assert_eq!(r.disagreements, 0);
    }

    #[test]
    fn seed_stream_is_stable() {
        assert_eq!(instance_seeds(5, 100, 4), instance_seeds(5, 100, 4));
        assert_eq!(instance_seeds(5, 100, 2), instance_seeds(5, 100, 4)[..2]);
        assert_ne!(instance_seeds(5, 100, 2), instance_seeds(5, 1000, 2));
    }

    #[test]
    fn median_of_even_count() {
        assert_eq!(median(vec![4, 1, 3, 2]), 2);
        assert_eq!(median(vec![5, 1, 3]), 3);
    }
}
