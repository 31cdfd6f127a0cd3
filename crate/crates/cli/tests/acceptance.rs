//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use omniscience::rational::ratio;
use omniscience::testing::example_instance;
use omniscience::{
    coord_sat_cap, dilworth_bruteforce, mda, min_sum_rate_bruteforce, ordering_for_weights,
    solve_non_asymptotic, EntropyOracle, Instance, LinearOrdering, PacketInstance, Partition,
    Rational, Subset, Variant,
};
use omniscience_cli::bench::{self, BenchConfig};
use omniscience_cli::gen::{generate, GenConfig};
use omniscience_cli::solve::{self, SolveOptions};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn partition(groups: &[&[usize]]) -> Partition {
    Partition::from_users(5, groups).unwrap()
}

fn rates(values: &[(i128, i128)]) -> Vec<Rational> {
    values.iter().map(|&(p, q)| ratio(p, q)).collect()
}

fn random_instance(
    rng: &mut ChaCha8Rng,
    users: std::ops::RangeInclusive<usize>,
    packets: std::ops::RangeInclusive<usize>,
) -> PacketInstance {
    let cfg = GenConfig {
        users: rng.gen_range(users),
        packets: rng.gen_range(packets),
        seed: rng.gen(),
    };
    generate(cfg).unwrap()
}

fn random_ordering(rng: &mut ChaCha8Rng, n: usize) -> LinearOrdering {
    let mut phi: Vec<usize> = (0..n).collect();
    phi.shuffle(rng);
    LinearOrdering::new(phi).unwrap()
}

fn example_regression() -> Outcome {
    let start = Instant::now();
    let o = example_instance();
    let phi = LinearOrdering::from_users(&[4, 3, 2, 5, 1]).unwrap();
    let sol = mda(&o, &phi).map_err(|e| e.to_string())?;
    ensure(sol.min_sum_rate == ratio(11, 2), || {
        format!("R_ACO = {}", sol.min_sum_rate)
    })?;
    ensure(
        sol.fundamental_partition == partition(&[&[1, 3, 4], &[2], &[5]]),
        || format!("partition {}", sol.fundamental_partition),
    )?;
    ensure(
        sol.rates.rates() == rates(&[(0, 1), (1, 2), (2, 1), (5, 2), (1, 2)]),
        || format!("rates {}", sol.rates),
    )?;
    ensure(sol.alpha_trace == vec![ratio(19, 4), ratio(11, 2)], || {
        format!("trace {:?}", sol.alpha_trace)
    })?;
    let integral = solve_non_asymptotic(&o, &phi).map_err(|e| e.to_string())?;
    ensure(integral.min_sum_rate == 6, || {
        format!("R_NCO = {}", integral.min_sum_rate)
    })?;
    ensure(
        integral.rates.rates() == rates(&[(0, 1), (1, 1), (2, 1), (3, 1), (0, 1)]),
        || format!("integral rates {}", integral.rates),
    )?;
    ensure(integral.minimizer == Partition::whole(5), || {
        format!("integral minimizer {}", integral.minimizer)
    })?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("R_ACO = 11/2, R_NCO = 6 in {:?}", start.elapsed()))
}

fn example_step_trace() -> Outcome {
    let o = example_instance();
    let phi = LinearOrdering::from_users(&[4, 3, 2, 5, 1]).unwrap();
    let run = coord_sat_cap(&o, ratio(19, 4), &phi, Variant::Fused).map_err(|e| e.to_string())?;
    let capacities: Vec<Rational> = run.steps[1..].iter().map(|s| s.capacity).collect();
    let expected = vec![
        ratio(21, 4),
        Rational::from(3),
        Rational::from(3),
        ratio(13, 4),
    ];
    ensure(capacities == expected, || {
        format!("capacities {capacities:?}")
    })?;
    ensure(
        run.rates.rates() == rates(&[(0, 1), (-1, 4), (2, 1), (7, 4), (-1, 4)]),
        || format!("rates {}", run.rates),
    )?;
    let trace: Vec<String> = run
        .steps
        .iter()
        .map(|s| {
            let mut blocks = s.blocks.clone();
            blocks.sort_by_key(|b| b.first());
            format!(
                "{{{}}}",
                blocks
                    .iter()
                    .map(Subset::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    let expected = [
        "{{4}}",
        "{{3,4}}",
        "{{2},{3,4}}",
        "{{2},{3,4},{5}}",
        "{{1,3,4},{2},{5}}",
    ];
    ensure(trace == expected, || format!("P* updates {trace:?}"))?;
    Ok(format!(
        "capacities 21/4, 3, 3, 13/4; P* {}",
        trace.join(" -> ")
    ))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checks = 0;
    for k in 0..200 {
        let o = random_instance(&mut rng, 3..=8, 3..=12);
        let phi = random_ordering(&mut rng, o.len());
        let (r_aco, fundamental) = min_sum_rate_bruteforce(&o).map_err(|e| e.to_string())?;
        let sol = mda(&o, &phi).map_err(|e| e.to_string())?;
        ensure(
            sol.min_sum_rate == r_aco && sol.fundamental_partition == fundamental,
            || {
                format!(
                    "instance {k}: mda ({}, {}) vs ({r_aco}, {fundamental})",
                    sol.min_sum_rate, sol.fundamental_partition
                )
            },
        )?;
        let mut alphas = sol.alpha_trace.clone();
        alphas.extend([r_aco - ratio(1, 2), r_aco + ratio(1, 3)]);
        for alpha in alphas {
            let fused =
                coord_sat_cap(&o, alpha, &phi, Variant::Fused).map_err(|e| e.to_string())?;
            let unfused =
                coord_sat_cap(&o, alpha, &phi, Variant::Unfused).map_err(|e| e.to_string())?;
            let truth = dilworth_bruteforce(&o, alpha).map_err(|e| e.to_string())?;
            ensure(fused.minimizer == truth.minimizer, || {
                format!(
                    "instance {k}, α = {alpha}: P* {} vs Dilworth {}",
                    fused.minimizer, truth.minimizer
                )
            })?;
            ensure(
                fused.rates == unfused.rates && fused.minimizer == unfused.minimizer,
                || format!("instance {k}, α = {alpha}: fused and unfused differ"),
            )?;
            checks += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!(
        "200 instances, {checks} saturation runs, {:?}",
        start.elapsed()
    ))
}

fn feasibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    let mut instances: Vec<Instance> = vec![Instance::Packets(example_instance())];
    instances.extend((0..100).map(|_| Instance::Packets(random_instance(&mut rng, 2..=8, 1..=12))));
    for (k, instance) in instances.iter().enumerate() {
        let n = instance.len();
        let weights: Vec<Rational> = (0..n)
            .map(|_| ratio(rng.gen_range(0..20), rng.gen_range(1..5)))
            .collect();
        let variants = [
            SolveOptions {
                ordering: Some(random_ordering(&mut rng, n)),
                ..Default::default()
            },
            SolveOptions {
                non_asymptotic: true,
                ordering: Some(random_ordering(&mut rng, n)),
                ..Default::default()
            },
            SolveOptions {
                weights: Some(weights.clone()),
                variant: Variant::Unfused,
                ..Default::default()
            },
            SolveOptions {
                weights: Some(weights),
                non_asymptotic: true,
                ..Default::default()
            },
        ];
        for opts in &variants {
            let report = solve::solve(instance, opts).map_err(|e| format!("instance {k}: {e}"))?;
            solve::validate_report(instance, &report).map_err(|e| format!("instance {k}: {e}"))?;
            if opts.non_asymptotic {
                ensure(report.rates.iter().all(Rational::is_integer), || {
                    format!("instance {k}: non-integral rates")
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} rate vectors validated"))
}

fn bench_trend() -> Outcome {
    let start = Instant::now();
    let report = bench::run(&BenchConfig::default()).map_err(|e| e.to_string())?;
    ensure(report.warnings.is_empty(), || {
        format!("skipped rows: {:?}", report.warnings)
    })?;
    ensure(report.rows.len() == 8 * 20, || {
        format!("{} rows", report.rows.len())
    })?;
    for r in &report.rows {
        ensure(
            r.fused.summed_ground_size <= r.unfused.summed_ground_size,
            || {
                format!(
                    "n = {}, repetition {}: fused {} > unfused {}",
                    r.n, r.repetition, r.fused.summed_ground_size, r.unfused.summed_ground_size
                )
            },
        )?;
    }
    let mut means = Vec::new();
    for s in &report.summaries {
        if s.n >= 8 {
            ensure(s.fused_summed_size < s.unfused_summed_size, || {
                format!(
                    "n = {}: mean fused {} vs unfused {}",
                    s.n, s.fused_summed_size, s.unfused_summed_size
                )
            })?;
        }
        means.push(format!(
            "n={}: {:.1}/{:.1}",
            s.n,
            s.fused_summed_size.to_f64(),
            s.unfused_summed_size.to_f64()
        ));
    }
    within(start.elapsed(), Duration::from_secs(600))?;
    Ok(format!(
        "mean fused/unfused size {}; {:?}",
        means.join(", "),
        start.elapsed()
    ))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    permutations(n - 1)
        .into_iter()
        .flat_map(|p| {
            (0..=p.len()).map(move |pos| {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                q
            })
        })
        .collect()
}

fn weighted_optimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..50 {
        let o = random_instance(&mut rng, 3..=5, 1..=8);
        let n = o.len();
        let weights: Vec<Rational> = (0..n)
            .map(|_| ratio(rng.gen_range(0..30), rng.gen_range(1..8)))
            .collect();
        let chosen = ordering_for_weights(&weights).map_err(|e| e.to_string())?;
        let r_aco = mda(&o, &chosen).map_err(|e| e.to_string())?.min_sum_rate;
        for alpha in [r_aco, r_aco.ceil()] {
            let cost = |phi: &LinearOrdering| -> Result<Rational, String> {
                let run =
                    coord_sat_cap(&o, alpha, phi, Variant::Fused).map_err(|e| e.to_string())?;
                run.rates.weighted_sum(&weights).map_err(|e| e.to_string())
            };
            let mut best: Option<Rational> = None;
            for phi in permutations(n) {
                let c = cost(&LinearOrdering::new(phi).unwrap())?;
                best = Some(best.map_or(c, |b| b.min(c)));
            }
            let ours = cost(&chosen)?;
            ensure(Some(ours) == best, || {
                format!(
                    "instance {k}, α = {alpha}: w·r = {ours}, best over orderings {}",
                    best.unwrap()
                )
            })?;
        }
    }
    Ok("50 instances at R_ACO and R_NCO".into())
}

fn below_optimum() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..100 {
        let o = random_instance(&mut rng, 2..=8, 1..=12);
        let phi = random_ordering(&mut rng, o.len());
        let r_aco = mda(&o, &phi).map_err(|e| e.to_string())?.min_sum_rate;
        let alpha = r_aco - ratio(1, 2);
        for variant in [Variant::Fused, Variant::Unfused] {
            let run = coord_sat_cap(&o, alpha, &phi, variant).map_err(|e| e.to_string())?;
            ensure(run.rates.total() < alpha, || {
                format!("instance {k}: r(V) = {} at α = {alpha}", run.rates.total())
            })?;
        }
    }
    Ok("100 instances, r(V) < α for both variants".into())
}

fn main() {
    let criteria: [Check; 7] = [
        ("example regression", example_regression),
        ("example step trace", example_step_trace),
        ("brute-force equivalence", oracle_equivalence),
        ("rate feasibility", feasibility),
        ("fused vs unfused SFM size", bench_trend),
        ("weighted optimality", weighted_optimality),
        ("below-optimum estimate", below_optimum),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} ({why})", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
