mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tetherpath::cli::solve::{run_solve, SolutionRecord};
use tetherpath::minslope::Method;
use tetherpath::model::{parse_instance, serialize_instance};
use tetherpath::oracle::{check_distance, check_feasible, min_link_oracle};
use tetherpath::predicates::feasible_slope;
use tetherpath::{build_min_link_path, min_slope_linear, steepen_path, Q};

use common::{random_corridor, sample_between};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn beta_star_is_mirror_invariant(seed in any::<u64>()) {
        let (_, c) = random_corridor(seed, 60);
        let forward = min_slope_linear(&c).beta_star;
        let backward = min_slope_linear(&c.mirrored()).beta_star;
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn feasibility_flips_once(seed in any::<u64>(), k in 0i64..1000) {
        let (inst, c) = random_corridor(seed, 60);
        let beta = min_slope_linear(&c).beta_star;
        let probe = Q::new(k, 1000) * &inst.alpha;
        prop_assert_eq!(feasible_slope(&c, &probe).unwrap(), probe >= beta);
    }

    #[test]
    fn both_feasibility_checks_agree(seed in any::<u64>(), lift in -4i64..=4) {
        let (inst, c) = random_corridor(seed, 40);
        let path = build_min_link_path(&c, &min_slope_linear(&c)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let steep = sample_between(&mut rng, path.beta(), &inst.alpha);
        let candidates = [
            path.shifted(&Q::new(lift, 4)),
            steepen_path(&c, &path, &steep).unwrap_or_else(|_| path.clone()),
        ];
        for p in &candidates {
            prop_assert_eq!(check_feasible(&c, p).unwrap(), check_distance(&inst, p).unwrap());
        }
    }

    #[test]
    fn oracle_bounds_steepened_paths(seed in any::<u64>(), k in 0i64..1000) {
        let (inst, c) = random_corridor(seed, 30);
        let path = build_min_link_path(&c, &min_slope_linear(&c)).unwrap();
        let beta = path.beta() + (&inst.alpha - path.beta()) * Q::new(k, 1000);
        let steep = steepen_path(&c, &path, &beta).unwrap();
        prop_assert!(check_feasible(&c, &steep).unwrap());
        prop_assert!(min_link_oracle(&c, &beta).unwrap() <= steep.links());
    }

    #[test]
    fn records_round_trip(seed in any::<u64>()) {
        let (inst, _) = common::random_corridor(seed, 50);
        let text = serialize_instance(&inst);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
        let rec = run_solve(&text, Method::Linear).unwrap();
        let back: SolutionRecord = serde_json::from_str(&rec.to_json()).unwrap();
        prop_assert_eq!(back.beta_path().unwrap(), rec.beta_path().unwrap());
        prop_assert_eq!(back, rec);
    }
}
