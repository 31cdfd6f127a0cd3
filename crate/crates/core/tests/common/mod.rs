#![allow(dead_code)]

use omniscience::{PacketInstance, RateVector, Rational, Subset};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn random_instance(n: usize, m: usize, seed: u64) -> PacketInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PacketInstance::random(n, m, &mut rng).unwrap()
}

/// Every subset of `within` that contains `forced`, in increasing mask order.
pub fn family(within: Subset, forced: usize) -> Vec<Subset> {
    let free = within.without(forced);
    let members: Vec<usize> = free.iter().collect();
    (0..1u64 << members.len())
        .map(|m| {
            Subset::from_mask(m)
                .iter()
                .fold(Subset::singleton(forced), |acc, k| acc.with(members[k]))
        })
        .collect()
}

/// Rates before each coordinate update, rebuilt from the recorded capacities.
pub fn rates_before_each_step(
    n: usize,
    alpha: Rational,
    total: Rational,
    steps: &[omniscience::solver::SaturationStep],
) -> Vec<RateVector> {
    let mut rates = RateVector::uniform(n, alpha - total);
    let mut out = Vec::with_capacity(steps.len() + 1);
    for step in steps {
        out.push(rates.clone());
        rates.add_to(step.user, step.capacity);
    }
    out.push(rates);
    out
}
