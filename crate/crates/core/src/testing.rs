//! Small reference instances used across tests, docs and benchmarks.

use crate::oracle::PacketInstance;

/// The five-user, eight-packet cooperative data exchange instance
/// (`R_ACO = 11/2`, `R_NCO = 6`).
pub fn example_instance() -> PacketInstance {
    PacketInstance::new(&[
        vec!["a", "c", "e", "f"],
        vec!["a", "d", "h"],
        vec!["b", "c", "e", "f", "g", "h"],
        vec!["a", "c", "f", "g", "h"],
        vec!["b", "d", "f"],
    ])
    .expect("valid instance")
}

/// Two users holding one distinct packet each.
pub fn disjoint_pair() -> PacketInstance {
    PacketInstance::new(&[vec!["a"], vec!["b"]]).expect("valid instance")
}

/// Two users holding the same single packet.
pub fn identical_pair() -> PacketInstance {
    PacketInstance::new(&[vec!["a"], vec!["a"]]).expect("valid instance")
}
