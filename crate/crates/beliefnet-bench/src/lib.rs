//! Shared setup for the criterion benches; not a public API.

use beliefnet::{BeliefProfile, EvolutionFunction, FunctionFamily, Network};

pub fn majority(net: &Network) -> FunctionFamily {
    FunctionFamily::homogeneous(net, EvolutionFunction::Majority)
}

/// Alternating bits, the least symmetric profile that needs no RNG.
pub fn alternating(net: &Network) -> BeliefProfile {
    net.profile_from_mask(0x5555_5555_5555_5555 & ((1u64 << net.agent_count()) - 1))
}
