/// Agent-count caps for the exhaustive tools.
///
/// Everything in [`crate::axioms`] and [`crate::analysis`] enumerates
/// profile space, ordered pairs, or permutations, so each family of sweeps
/// carries its own cap and returns [`crate::Error::Infeasible`] beyond it.
/// These are knobs, not constants: raise them deliberately when you have
/// the time budget. Values above 63 are treated as 63 (sweeps index
/// profiles by `u64` masks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Profile-space sweeps, `2^n` work (bounded, neutral, local,
    /// non-slavish checks; subset equivalence).
    pub exhaustive_agents: usize,
    /// Ordered-pair sweeps, `3^n` work (monotonicity check).
    pub monotonic_agents: usize,
    /// Permutation sweeps, `n!` work (isomorphism and congruence).
    pub isomorphism_agents: usize,
    /// Transition graphs, `2^n` nodes held in memory.
    pub graph_agents: usize,
    /// Fixed-point scans, `2^n` work with early exit per profile.
    pub equilibria_agents: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exhaustive_agents: 12,
            monotonic_agents: 10,
            isomorphism_agents: 8,
            graph_agents: 12,
            equilibria_agents: 20,
        }
    }
}

impl Limits {
    pub fn gate(what: &'static str, n: usize, cap: usize) -> crate::Result<()> {
        let cap = cap.min(63);
        if n > cap {
            Err(crate::Error::Infeasible {
                what,
                n,
                limit: cap,
            })
        } else {
            Ok(())
        }
    }
}
