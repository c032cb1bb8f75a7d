//! One module per subcommand. Each returns the finished stdout text and
//! an exit status; usage and input problems come back as `Err(String)`
//! and exit with status 2.

pub mod analyze;
pub mod sequence;
pub mod simulate;
pub mod sweep;
pub mod verify;

use beliefnet::{
    run_random, run_scheduled, run_synchronous, BeliefProfile, FunctionFamily, Network,
    RandomActivation, Schedule, Trace,
};

pub struct CmdResult {
    pub stdout: String,
    pub exit: i32,
}

impl CmdResult {
    pub fn ok(stdout: String) -> Self {
        CmdResult { stdout, exit: 0 }
    }
}

/// Fully resolved run settings, shared by simulate and by every sweep
/// cell so the two paths cannot drift apart.
#[derive(Clone)]
pub enum ModeConfig {
    Sync {
        max_steps: usize,
    },
    Scheduled {
        schedule: Schedule,
    },
    Random {
        activation: RandomActivation,
        seed: u64,
        max_steps: usize,
    },
}

pub fn execute(
    net: &Network,
    fam: &FunctionFamily,
    initial: &BeliefProfile,
    cfg: &ModeConfig,
) -> beliefnet::Result<Trace> {
    match cfg {
        ModeConfig::Sync { max_steps } => run_synchronous(net, fam, initial, *max_steps),
        ModeConfig::Scheduled { schedule } => run_scheduled(net, fam, initial, schedule),
        ModeConfig::Random {
            activation,
            seed,
            max_steps,
        } => run_random(net, fam, initial, activation, *seed, *max_steps),
    }
}

/// Rejects a flag that has no effect under the chosen mode or axis, so
/// headers only ever record settings that were used.
pub fn reject_unused(present: bool, flag: &str, context: &str) -> Result<(), String> {
    if present {
        Err(format!("{flag} does not apply to {context}"))
    } else {
        Ok(())
    }
}

/// Header lines for the resolved activation: one `prob` line when every
/// agent shares the probability, one line per agent otherwise.
pub fn describe_activation(
    header: &mut crate::header::Header,
    net: &Network,
    act: &RandomActivation,
) {
    let first = act.prob(0);
    if (0..net.agent_count()).all(|i| act.prob(i) == first) {
        header.push("prob", first);
    } else {
        for (i, a) in net.agents().iter().enumerate() {
            header.push("prob", format!("{a}={}", act.prob(i)));
        }
    }
}

/// Convergence with probability one needs every group to be a possible
/// activation; a probability of exactly 0 or 1 breaks that, so say so.
pub fn warn_degenerate_activation(net: &Network, act: &RandomActivation) {
    if act.all_groups_possible() {
        return;
    }
    let pinned: Vec<String> = net
        .agents()
        .iter()
        .enumerate()
        .filter(|&(i, _)| act.prob(i) == 0.0 || act.prob(i) == 1.0)
        .map(|(i, a)| format!("{a}={}", act.prob(i)))
        .collect();
    eprintln!(
        "warning: activation probability 0 or 1 for {}; not every group can \
         come up, so reaching an equilibrium is no longer guaranteed",
        pinned.join(", ")
    );
}
