//! Belief dynamics on directed social networks.
//!
//! Agents hold yes/no beliefs and revise them by looking at the agents
//! they are tied to (always including themselves). This crate models
//! that revision process end to end:
//!
//! * [`Network`] and [`BeliefProfile`]: who listens to whom, who
//!   believes what.
//! * [`EvolutionFunction`] and [`FunctionFamily`]: per-agent update
//!   rules, majority rule first among them.
//! * [`axioms`]: exhaustive checks of six structural properties
//!   (bounded, neutral, congruent, local, monotonic, non-slavish),
//!   each returning a replayable counterexample when it fails.
//! * [`dynamics`]: synchronous, scheduled, and seeded random runs that
//!   produce verifiable [`Trace`]s.
//! * [`analysis`]: the full transition graph over all `2^n` profiles,
//!   its strongly connected condensation, equilibrium enumeration, and
//!   a constructive schedule reaching an equilibrium in at most `2n`
//!   group steps.
//!
//! Everything exhaustive is gated by [`Limits`] so a stray call cannot
//! try to enumerate `2^100` profiles.
//!
//! ```
//! use beliefnet::{EvolutionFunction, FunctionFamily, Limits, Network, Outcome};
//!
//! let text = "agents: ana,bo,cy
//! edge: ana bo
//! edge: bo ana
//! edge: bo cy
//! edge: cy bo
//! ";
//! let net = Network::parse(text).unwrap().network;
//! let fam = FunctionFamily::homogeneous(&net, EvolutionFunction::Majority);
//!
//! // bo alone believes, and gives it up against two doubters.
//! let start = net.profile_from_bitstring("010").unwrap();
//! let trace = beliefnet::run_synchronous(&net, &fam, &start, 100).unwrap();
//! assert!(matches!(trace.outcome, Outcome::Converged { at_step: 1, .. }));
//! assert_eq!(trace.final_profile().to_bitstring(), "000");
//!
//! // Majority rule is bounded, neutral, congruent, local, and monotonic
//! // here, but ana and cy each follow a two-member neighborhood, so the
//! // non-slavishness check finds them dominated.
//! let reports = beliefnet::check_all(&net, &fam, &Limits::default()).unwrap();
//! assert!(reports.iter().take(5).all(|r| r.holds));
//! assert!(!reports[5].holds);
//! ```

#![forbid(unsafe_code)]

mod bits;
mod error;
mod limits;

pub mod analysis;
pub mod axioms;
pub mod dynamics;
pub mod evolution;
pub mod fixtures;
pub mod isomorphism;
pub mod network;
pub mod profile;

pub use analysis::{
    build_transition_graph, condense, construct_converging_sequence, enumerate_equilibria,
    leaves_are_equilibria, reachable_equilibria, Condensation, ConvergingSequence, PhaseOrder,
    TransitionGraph,
};
pub use axioms::{
    check_all, check_axiom, check_congruent_cross, replay_congruent_cross, Axiom, AxiomReport,
    Witness,
};
pub use dynamics::{
    default_max_steps, equilibrium_subset_equivalence, is_equilibrium, run_random, run_scheduled,
    run_synchronous, verify_trace, Outcome, RandomActivation, Schedule, Trace, TraceStep,
};
pub use error::{Error, Result};
pub use evolution::{
    apply_all, apply_group, majority_rule, EvolutionFamily, EvolutionFunction, FunctionFamily,
};
pub use isomorphism::{automorphisms, find_isomorphisms, AgentMap};
pub use limits::Limits;
pub use network::{AgentGroup, AgentId, NeighborhoodTally, Network, ParsedNetwork};
pub use profile::BeliefProfile;
