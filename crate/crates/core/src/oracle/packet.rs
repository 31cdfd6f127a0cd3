use std::collections::HashMap;

use dashmap::DashMap;
use rand::Rng;

use super::EntropyOracle;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subset::{GroundSet, Subset};

/// Packet-model instance: user `i` holds the packet set `Z_i` and `H(X) = |∪_{i∈X} Z_i|`.
///
/// Evaluations are memoized per subset in a concurrent map owned by the instance.
#[derive(Clone, Debug)]
pub struct PacketInstance {
    ground: GroundSet,
    packets: Vec<String>,
    // holdings[i] is a bitset over `packets`, WORD bits per word
    holdings: Vec<Vec<u64>>,
    cache: DashMap<u64, u32>,
}

const WORD: usize = 64;

impl PacketInstance {
    /// Builds an instance from each user's packet identifiers.
    ///
    /// The packet universe is the union of all holdings, in order of first
    /// appearance, so every packet is held by someone and `H(V)` is its size.
    /// Repeated identifiers within one user are ignored.
    pub fn new<S: AsRef<str>>(users: &[Vec<S>]) -> Result<Self> {
        let ground = GroundSet::new(users.len())?;
        Self::build(ground, users)
    }

    pub fn with_labels<S: AsRef<str>>(users: &[Vec<S>], labels: Vec<String>) -> Result<Self> {
        if labels.len() != users.len() {
            return Err(Error::DimensionMismatch {
                expected: users.len(),
                found: labels.len(),
            });
        }
        Self::build(GroundSet::with_labels(labels)?, users)
    }

    fn build<S: AsRef<str>>(ground: GroundSet, users: &[Vec<S>]) -> Result<Self> {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut packets = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::with_capacity(users.len());
        for held in users {
            let mut ids = Vec::with_capacity(held.len());
            for id in held {
                let id = id.as_ref();
                let j = *index.entry(id.to_string()).or_insert_with(|| {
                    packets.push(id.to_string());
                    packets.len() - 1
                });
                ids.push(j);
            }
            members.push(ids);
        }
        let words = packets.len().div_ceil(WORD).max(1);
        let holdings = members
            .into_iter()
            .map(|ids| {
                let mut bits = vec![0u64; words];
                for j in ids {
                    bits[j / WORD] |= 1u64 << (j % WORD);
                }
                bits
            })
            .collect();
        Ok(PacketInstance {
            ground,
            packets,
            holdings,
            cache: DashMap::new(),
        })
    }

    /// Random instance with `n` users and `m` packets.
    ///
    /// Each packet goes to each user independently with probability 1/2; a
    /// packet that lands with nobody is redrawn, so `H(V) = m` exactly.
    pub fn random<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Self> {
        if m == 0 {
            return Err(Error::Instance("at least one packet is required".into()));
        }
        GroundSet::new(n)?;
        let mut users: Vec<Vec<String>> = vec![Vec::new(); n];
        for j in 0..m {
            let holders = loop {
                let holders: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
                if holders.iter().any(|&h| h) {
                    break holders;
                }
            };
            for (user, _) in holders.iter().enumerate().filter(|(_, &h)| h) {
                users[user].push(format!("p{}", j + 1));
            }
        }
        PacketInstance::new(&users)
    }

    pub fn packet_count(&self) -> usize {
        self.packets.len()
    }

    pub fn packets(&self) -> &[String] {
        &self.packets
    }

    /// Packet identifiers held by user `i`, in universe order.
    pub fn holdings(&self, i: usize) -> Vec<&str> {
        let bits = &self.holdings[i];
        (0..self.packets.len())
            .filter(|&j| bits[j / WORD] & (1u64 << (j % WORD)) != 0)
            .map(|j| self.packets[j].as_str())
            .collect()
    }

    fn count(&self, x: Subset) -> u32 {
        let words = self.holdings.first().map_or(0, Vec::len);
        (0..words)
            .map(|w| {
                x.iter()
                    .fold(0u64, |acc, i| acc | self.holdings[i][w])
                    .count_ones()
            })
            .sum()
    }
}

impl EntropyOracle for PacketInstance {
    fn ground_set(&self) -> &GroundSet {
        &self.ground
    }

    fn entropy(&self, x: Subset) -> Rational {
        assert!(self.ground.contains(x), "subset {x} outside the ground set");
        if x.is_empty() {
            return Rational::ZERO;
        }
        if let Some(hit) = self.cache.get(&x.mask()) {
            return Rational::from(*hit);
        }
        let value = self.count(x);
        self.cache.insert(x.mask(), value);
        Rational::from(value)
    }

    fn is_integral(&self) -> bool {
        true
    }
}
