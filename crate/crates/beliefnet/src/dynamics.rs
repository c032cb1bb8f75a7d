//! Running belief evolution over time: synchronous steps, explicit group
//! schedules, and seeded random activation. Runs produce a [`Trace`] that
//! records every intermediate profile and how the run ended, and
//! [`verify_trace`] replays a trace independently to confirm it.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::evolution::{check_compat, next_bits, EvolutionFamily};
use crate::limits::Limits;
use crate::network::{AgentGroup, Network, Roster};
use crate::profile::BeliefProfile;

/// Explicit activation plan: group k updates at step k. Groups may be
/// empty and may overlap between steps.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    groups: Vec<AgentGroup>,
}

impl Schedule {
    pub fn new(groups: Vec<AgentGroup>) -> Self {
        Schedule { groups }
    }

    pub fn groups(&self) -> &[AgentGroup] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// One group per line as comma-separated agent ids. A blank line is a
    /// step in which nobody updates; `#` starts a comment line.
    pub fn parse(net: &Network, text: &str) -> Result<Schedule> {
        let mut groups = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim_start().starts_with('#') {
                continue;
            }
            groups.push(
                net.group_from_str(line)
                    .map_err(|e| Error::parse(idx + 1, e.to_string()))?,
            );
        }
        Ok(Schedule::new(groups))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for g in &self.groups {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

/// Independent per-agent activation probabilities for random runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomActivation {
    roster: Arc<Roster>,
    probs: Vec<f64>,
}

impl RandomActivation {
    pub fn uniform(net: &Network, p: f64) -> Result<Self> {
        check_prob(p)?;
        Ok(RandomActivation {
            roster: net.roster().clone(),
            probs: vec![p; net.agent_count()],
        })
    }

    /// Builds from explicit `(agent, probability)` pairs covering every
    /// agent exactly once.
    pub fn from_pairs<I, S>(net: &Network, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: AsRef<str>,
    {
        let mut probs = vec![None; net.agent_count()];
        for (id, p) in pairs {
            let idx = net.require_index(id.as_ref())?;
            check_prob(p)?;
            if probs[idx].replace(p).is_some() {
                return Err(Error::Config(format!(
                    "activation probability for '{}' given twice",
                    id.as_ref()
                )));
            }
        }
        let probs = probs
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                p.ok_or_else(|| {
                    Error::Config(format!("no activation probability for '{}'", net.agent(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RandomActivation {
            roster: net.roster().clone(),
            probs,
        })
    }

    /// One `agent: probability` line per agent; `#` starts a comment.
    pub fn parse(net: &Network, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (id, prob) = trimmed
                .split_once(':')
                .ok_or_else(|| Error::parse(idx + 1, "expected 'agent: probability'"))?;
            let p: f64 = prob
                .trim()
                .parse()
                .map_err(|e| Error::parse(idx + 1, format!("bad probability: {e}")))?;
            pairs.push((id.trim().to_string(), p));
        }
        Self::from_pairs(net, pairs)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (id, p) in self.roster.ids().iter().zip(&self.probs) {
            out.push_str(&format!("{id}: {p}\n"));
        }
        out
    }

    pub fn prob(&self, idx: usize) -> f64 {
        self.probs[idx]
    }

    /// True when every group of agents has positive probability of being
    /// the one activated, the hypothesis under which random runs reach an
    /// equilibrium with probability one whenever one is reachable.
    pub fn all_groups_possible(&self) -> bool {
        self.probs.iter().all(|&p| p > 0.0 && p < 1.0)
    }

    fn check_roster(&self, net: &Network) -> Result<()> {
        if crate::network::same_roster(&self.roster, net.roster()) {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }
}

fn check_prob(p: f64) -> Result<()> {
    if p.is_finite() && (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "activation probability {p} is outside [0, 1]"
        )))
    }
}

/// One executed step: the group that updated and the profile it produced.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub group: AgentGroup,
    pub profile: BeliefProfile,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// An equilibrium was reached after `at_step` steps.
    Converged {
        at_step: usize,
        equilibrium: BeliefProfile,
    },
    /// A synchronous run revisited an earlier profile: the profile at
    /// index `preperiod` recurs every `period` steps.
    Cycled { preperiod: usize, period: usize },
    /// The step budget (or the end of the schedule) was exhausted first.
    StepLimitReached,
}

/// Full record of a run. Profile `k` of the run is `initial` for `k = 0`
/// and `steps[k - 1].profile` afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub initial: BeliefProfile,
    pub steps: Vec<TraceStep>,
    pub outcome: Outcome,
}

impl Trace {
    pub fn profile_at(&self, k: usize) -> &BeliefProfile {
        if k == 0 {
            &self.initial
        } else {
            &self.steps[k - 1].profile
        }
    }

    pub fn final_profile(&self) -> &BeliefProfile {
        self.profile_at(self.steps.len())
    }
}

/// True when no agent would change its belief, equivalently when every
/// group update leaves the profile alone.
pub fn is_equilibrium<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    p: &BeliefProfile,
) -> Result<bool> {
    check_compat(net, fam)?;
    p.check_roster(net.roster())?;
    Ok(next_bits(net, fam, p) == *p.bits())
}

/// Confirms, for one profile, that being fixed under the full update and
/// being fixed under every group update coincide. The group side really
/// runs all `2^n` group updates, so it is capped like the other
/// exhaustive sweeps.
pub fn equilibrium_subset_equivalence<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    p: &BeliefProfile,
    limits: &Limits,
) -> Result<bool> {
    check_compat(net, fam)?;
    p.check_roster(net.roster())?;
    let n = net.agent_count();
    Limits::gate("group sweep", n, limits.exhaustive_agents)?;
    let fixed_by_all = is_equilibrium(net, fam, p)?;
    let mut fixed_by_groups = true;
    for mask in 0..1u64 << n {
        let group = net.group_from_bits(Bits::from_mask(mask, n));
        if crate::evolution::apply_group(net, fam, p, &group)? != *p {
            fixed_by_groups = false;
            break;
        }
    }
    Ok(fixed_by_all == fixed_by_groups)
}

/// Step budget scaled to the profile space, clamped to a million.
pub fn default_max_steps(net: &Network) -> usize {
    let n = net.agent_count();
    let grown = if n >= 20 {
        1_000_000
    } else {
        4usize << n
    };
    grown.clamp(1000, 1_000_000)
}

/// Everyone updates at once each step. Detects equilibria and, because
/// the dynamics are deterministic, exact cycles: a revisited profile ends
/// the run with its first index and the recurrence length.
pub fn run_synchronous<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    initial: &BeliefProfile,
    max_steps: usize,
) -> Result<Trace> {
    check_compat(net, fam)?;
    initial.check_roster(net.roster())?;
    let everyone = net.full_group();
    let mut visited: HashMap<Bits, usize> = HashMap::new();
    visited.insert(initial.bits().clone(), 0);
    let mut current = initial.clone();
    let mut steps = Vec::new();
    let outcome = loop {
        let image = next_bits(net, fam, &current);
        if image == *current.bits() {
            break Outcome::Converged {
                at_step: steps.len(),
                equilibrium: current.clone(),
            };
        }
        if steps.len() == max_steps {
            break Outcome::StepLimitReached;
        }
        current = current.with_bits(image);
        steps.push(TraceStep {
            group: everyone.clone(),
            profile: current.clone(),
        });
        if let Some(&first) = visited.get(current.bits()) {
            break Outcome::Cycled {
                preperiod: first,
                period: steps.len() - first,
            };
        }
        visited.insert(current.bits().clone(), steps.len());
    };
    Ok(Trace {
        initial: initial.clone(),
        steps,
        outcome,
    })
}

/// Updates the scheduled groups in order. The run stops at the first
/// prefix whose profile is an equilibrium; being fixed there, no later
/// group could change anything. A schedule that ends anywhere else
/// exhausts as [`Outcome::StepLimitReached`].
pub fn run_scheduled<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    initial: &BeliefProfile,
    schedule: &Schedule,
) -> Result<Trace> {
    check_compat(net, fam)?;
    initial.check_roster(net.roster())?;
    for g in schedule.groups() {
        g.check_roster(net.roster())?;
    }
    let mut current = initial.clone();
    let mut steps = Vec::new();
    let mut outcome = None;
    for group in schedule.groups() {
        if is_equilibrium(net, fam, &current)? {
            outcome = Some(Outcome::Converged {
                at_step: steps.len(),
                equilibrium: current.clone(),
            });
            break;
        }
        let image = next_bits(net, fam, &current);
        current = current.with_bits(current.bits().blend(&image, group.bits()));
        steps.push(TraceStep {
            group: group.clone(),
            profile: current.clone(),
        });
    }
    let outcome = match outcome {
        Some(o) => o,
        None if is_equilibrium(net, fam, &current)? => Outcome::Converged {
            at_step: steps.len(),
            equilibrium: current,
        },
        None => Outcome::StepLimitReached,
    };
    Ok(Trace {
        initial: initial.clone(),
        steps,
        outcome,
    })
}

/// Each step draws one activation group by tossing every agent's coin in
/// roster order, then applies it. Groups may come up empty; that still
/// consumes a step. Runs with the same seed replay identically.
pub fn run_random<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    initial: &BeliefProfile,
    activation: &RandomActivation,
    seed: u64,
    max_steps: usize,
) -> Result<Trace> {
    check_compat(net, fam)?;
    initial.check_roster(net.roster())?;
    activation.check_roster(net)?;
    let n = net.agent_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = initial.clone();
    let mut steps = Vec::new();
    let outcome = loop {
        let image = next_bits(net, fam, &current);
        if image == *current.bits() {
            break Outcome::Converged {
                at_step: steps.len(),
                equilibrium: current.clone(),
            };
        }
        if steps.len() == max_steps {
            break Outcome::StepLimitReached;
        }
        let drawn = Bits::from_fn(n, |a| rng.random::<f64>() < activation.prob(a));
        let group = net.group_from_bits(drawn);
        current = current.with_bits(current.bits().blend(&image, group.bits()));
        steps.push(TraceStep {
            group,
            profile: current.clone(),
        });
    };
    Ok(Trace {
        initial: initial.clone(),
        steps,
        outcome,
    })
}

/// Replays a trace from its initial profile and checks every recorded
/// step and the declared outcome. All three runners produce traces that
/// pass; a tampered profile, group, or outcome is reported with the step
/// it breaks at.
pub fn verify_trace<F: EvolutionFamily>(net: &Network, fam: &F, trace: &Trace) -> Result<()> {
    check_compat(net, fam)?;
    trace.initial.check_roster(net.roster())?;
    let defect = |step: usize, reason: &str| Error::TraceDefect {
        step,
        reason: reason.to_string(),
    };
    let mut current = trace.initial.clone();
    for (i, step) in trace.steps.iter().enumerate() {
        step.group
            .check_roster(net.roster())
            .map_err(|_| defect(i + 1, "group names agents outside the network"))?;
        let image = next_bits(net, fam, &current);
        let expected = current.with_bits(current.bits().blend(&image, step.group.bits()));
        if expected != step.profile {
            return Err(defect(i + 1, "profile does not follow from the group update"));
        }
        current = expected;
    }
    let len = trace.steps.len();
    // No runner steps past an equilibrium, so one may appear only where
    // convergence is declared.
    let equilibrium_at = match &trace.outcome {
        Outcome::Converged { at_step, .. } => Some(*at_step),
        _ => None,
    };
    for k in 0..=len {
        let is_eq = is_equilibrium(net, fam, trace.profile_at(k))?;
        match equilibrium_at {
            Some(at) if k == at => {
                if !is_eq {
                    return Err(defect(k, "declared equilibrium is not one"));
                }
            }
            _ => {
                if is_eq {
                    return Err(defect(k, "run continues past an equilibrium"));
                }
            }
        }
    }
    match &trace.outcome {
        Outcome::Converged {
            at_step,
            equilibrium,
        } => {
            if *at_step != len {
                return Err(defect(len, "convergence is not at the end of the trace"));
            }
            if equilibrium != trace.final_profile() {
                return Err(defect(len, "declared equilibrium differs from the final profile"));
            }
        }
        Outcome::Cycled { preperiod, period } => {
            if *period == 0 || preperiod + period != len {
                return Err(defect(len, "cycle bounds do not match the trace length"));
            }
            let last = trace.final_profile();
            let first_occurrence = (0..len).find(|&k| trace.profile_at(k) == last);
            if first_occurrence != Some(*preperiod) {
                return Err(defect(
                    len,
                    "preperiod is not the first occurrence of the revisited profile",
                ));
            }
        }
        Outcome::StepLimitReached => {}
    }
    Ok(())
}
