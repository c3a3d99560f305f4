mod common;

use proptest::prelude::*;
use wlcs::approx::{eptas, ptas_core};
use wlcs::dp_core::{dfs_opt, pareto_opt_with_bound, BruteForce, DFS_SIZE_CAP};
use wlcs::sample::{random_instance, rng, InstanceShape};
use wlcs::{brute_force_opt, pareto_opt, Rational};

fn tiny() -> InstanceShape {
    InstanceShape {
        max_len: 4,
        max_alphabet: 3,
        max_den: 16,
        certain_pct: 40,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn solvers_match_full_enumeration(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), &tiny());
        let want = common::enumerate_opt(&inst);
        let (p, pw) = pareto_opt(&inst).unwrap();
        let (b, bw) = brute_force_opt(&inst, None).unwrap();
        let (d, dw) = dfs_opt(&inst, DFS_SIZE_CAP).unwrap();
        prop_assert_eq!((p, b, d), (want, want, want));
        for w in [pw, bw, dw] {
            prop_assert_eq!(w.len(), want);
            prop_assert!(inst.verify_witness(&w).unwrap().feasible);
        }
    }

    #[test]
    fn brute_force_returns_first_string_in_order(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), &tiny());
        let (opt, w) = brute_force_opt(&inst, None).unwrap();
        let k = inst.alphabet().len();
        let first = common::strings(k, opt)
            .into_iter()
            .find(|s| common::brute_feasible(&inst, s))
            .unwrap();
        prop_assert_eq!(w.s, first);
    }

    #[test]
    fn ptas_within_one(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), &InstanceShape::default());
        let (opt, _) = pareto_opt(&inst).unwrap();
        let (d, w) = ptas_core(&inst).unwrap();
        prop_assert!(d + 1 >= opt && d <= opt, "d = {}, opt = {}", d, opt);
        prop_assert_eq!(w.len(), d);
        prop_assert!(inst.verify_witness(&w).unwrap().feasible);
    }

    #[test]
    fn eptas_bound(seed in any::<u64>(), inv in 1u64..6) {
        let inst = random_instance(&mut rng(seed), &InstanceShape::default());
        let (opt, _) = pareto_opt(&inst).unwrap();
        let res = eptas(&inst, &Rational::ratio(1, inv)).unwrap();
        // length >= (1 - 1/inv) * opt, in integers.
        prop_assert!(res.length as u64 * inv >= (inv - 1) * opt as u64);
        if res.exact {
            prop_assert_eq!(res.length, opt);
        }
        prop_assert!(inst.verify_witness(&res.witness).unwrap().feasible);
    }
}

#[test]
fn thread_count_does_not_change_brute_force() {
    let shape = InstanceShape::default();
    let mut r = rng(99);
    let corpus: Vec<_> = (0..40).map(|_| random_instance(&mut r, &shape)).collect();
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let four = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    for inst in &corpus {
        let a = one.install(|| BruteForce::default().run(inst).unwrap());
        let b = four.install(|| BruteForce::default().run(inst).unwrap());
        assert_eq!(a, b);
    }
}

#[test]
fn work_bounds_surface_as_errors() {
    let inst = random_instance(&mut rng(5), &InstanceShape::default());
    let capped = BruteForce {
        len_cap: None,
        work_bound: 0,
    };
    if inst.max_len() > 0 {
        assert!(matches!(
            capped.run(&inst),
            Err(wlcs::Error::ResourceCap { .. })
        ));
        assert!(pareto_opt_with_bound(&inst, 0).is_err());
    }
}
