//! Belief update rules and the one-step update operators.
//!
//! The majority rule follows the out-neighborhood convention: agent `a`
//! polls everyone it has a tie *to*, itself included via the mandatory
//! self-loop, adopts the strict majority belief, and keeps its own belief
//! on a tie. The other built-ins exist mostly as foils for the axiom
//! checks: `stubborn` never moves, `flipper` always negates, and
//! `threshold:k` flips only under pressure from at least `k` opposing
//! out-neighbors (itself excluded).

use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::network::{AgentGroup, AgentId, Network, Roster};
use crate::profile::BeliefProfile;

/// Anything that proposes a next belief per agent. Implemented by
/// [`FunctionFamily`] and, in tests, by ad-hoc fixtures.
pub trait EvolutionFamily {
    /// Next belief of the agent at canonical index `agent` under profile
    /// `p`. Implementations may read the whole profile; the `local` axiom
    /// check is what detects overreach.
    fn next_belief(&self, net: &Network, p: &BeliefProfile, agent: usize) -> bool;

    /// Whether this family was built for `net`'s agents. Families that
    /// carry no per-agent state are compatible with every network.
    fn compatible_with(&self, _net: &Network) -> bool {
        true
    }
}

/// The built-in update rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolutionFunction {
    Majority,
    Stubborn,
    Flipper,
    /// Flip when at least `k` out-neighbors other than the agent itself
    /// hold the opposite belief; `k >= 1`.
    Threshold(u32),
}

impl EvolutionFunction {
    /// Parses a CLI/config selector: `majority`, `stubborn`, `flipper`,
    /// or `threshold:<k>`.
    pub fn parse_selector(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "majority" => Ok(EvolutionFunction::Majority),
            "stubborn" => Ok(EvolutionFunction::Stubborn),
            "flipper" => Ok(EvolutionFunction::Flipper),
            _ => {
                if let Some(k) = s.strip_prefix("threshold:") {
                    let k: u32 = k.trim().parse().map_err(|_| {
                        Error::Config(format!("threshold selector needs an integer, got '{k}'"))
                    })?;
                    if k == 0 {
                        return Err(Error::Config(
                            "threshold:k needs k >= 1; threshold:0 would flip unconditionally"
                                .into(),
                        ));
                    }
                    Ok(EvolutionFunction::Threshold(k))
                } else {
                    Err(Error::Config(format!(
                        "unknown function kind '{s}' (expected majority, stubborn, flipper, or \
                         threshold:<k>)"
                    )))
                }
            }
        }
    }

    pub fn selector(&self) -> String {
        match self {
            EvolutionFunction::Majority => "majority".into(),
            EvolutionFunction::Stubborn => "stubborn".into(),
            EvolutionFunction::Flipper => "flipper".into(),
            EvolutionFunction::Threshold(k) => format!("threshold:{k}"),
        }
    }

    fn next(&self, net: &Network, p: &BeliefProfile, idx: usize) -> bool {
        match self {
            EvolutionFunction::Majority => {
                let t = net.tally_idx(p, idx);
                match t.pos.cmp(&t.neg) {
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Equal => p.bit(idx),
                }
            }
            EvolutionFunction::Stubborn => p.bit(idx),
            EvolutionFunction::Flipper => !p.bit(idx),
            EvolutionFunction::Threshold(k) => {
                let others = net.out_row_excl(idx);
                let believers = others.and_count(p.bits());
                let opposing = if p.bit(idx) {
                    others.count_ones() - believers
                } else {
                    believers
                };
                if opposing >= *k as usize {
                    !p.bit(idx)
                } else {
                    p.bit(idx)
                }
            }
        }
    }
}

impl std::fmt::Display for EvolutionFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.selector())
    }
}

/// One update rule per agent of a fixed network.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionFamily {
    roster: Arc<Roster>,
    per_agent: Vec<EvolutionFunction>,
}

impl FunctionFamily {
    /// The same rule for every agent.
    pub fn homogeneous(net: &Network, f: EvolutionFunction) -> FunctionFamily {
        FunctionFamily {
            roster: net.roster().clone(),
            per_agent: vec![f; net.agent_count()],
        }
    }

    /// Builds a family from `(agent, rule)` pairs. The pairs must cover
    /// every agent of the network exactly once.
    pub fn from_assignments<'a, I>(net: &Network, pairs: I) -> Result<FunctionFamily>
    where
        I: IntoIterator<Item = (&'a str, EvolutionFunction)>,
    {
        let n = net.agent_count();
        let mut per_agent = vec![None; n];
        for (id, f) in pairs {
            let idx = net.require_index(id)?;
            if per_agent[idx].is_some() {
                return Err(Error::Config(format!("agent '{id}' assigned twice")));
            }
            per_agent[idx] = Some(f);
        }
        let per_agent = per_agent
            .into_iter()
            .enumerate()
            .map(|(i, f)| {
                f.ok_or_else(|| {
                    Error::Config(format!("no function assigned to agent '{}'", net.agent(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FunctionFamily {
            roster: net.roster().clone(),
            per_agent,
        })
    }

    /// Reads an assignment file: one `agent: selector` record per line,
    /// blank lines and `#` comments skipped, every agent covered exactly
    /// once. Agent ids may themselves contain colons, so the split happens
    /// at the last colon of each record.
    pub fn parse_assignments(net: &Network, text: &str) -> Result<FunctionFamily> {
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            // First colon only: selectors like threshold:3 keep theirs.
            let Some((id, sel)) = line.split_once(':') else {
                return Err(Error::parse(lineno, "expected '<agent>: <selector>'"));
            };
            let (id, sel) = (id.trim(), sel.trim());
            let f = EvolutionFunction::parse_selector(sel)
                .map_err(|e| Error::parse(lineno, e.to_string()))?;
            pairs.push((id.to_string(), f, lineno));
        }
        FunctionFamily::from_assignments(net, pairs.iter().map(|(id, f, _)| (id.as_str(), *f)))
    }

    /// Canonical one-per-line assignment text covering every agent.
    pub fn render_assignments(&self) -> String {
        let mut s = String::new();
        for (i, f) in self.per_agent.iter().enumerate() {
            s.push_str(&format!("{}: {}\n", self.roster.id(i), f.selector()));
        }
        s
    }

    pub fn function_of(&self, a: &AgentId) -> Result<EvolutionFunction> {
        self.roster
            .index_of(a.as_str())
            .map(|i| self.per_agent[i])
            .ok_or_else(|| Error::UnknownAgent(a.to_string()))
    }

    /// The one rule shared by all agents, when the family is homogeneous.
    pub fn as_homogeneous(&self) -> Option<EvolutionFunction> {
        let first = *self.per_agent.first()?;
        self.per_agent
            .iter()
            .all(|f| *f == first)
            .then_some(first)
    }
}

impl EvolutionFamily for FunctionFamily {
    fn next_belief(&self, net: &Network, p: &BeliefProfile, agent: usize) -> bool {
        self.per_agent[agent].next(net, p, agent)
    }

    fn compatible_with(&self, net: &Network) -> bool {
        crate::network::same_roster(&self.roster, net.roster())
    }
}

impl<F: Fn(&Network, &BeliefProfile, usize) -> bool> EvolutionFamily for F {
    fn next_belief(&self, net: &Network, p: &BeliefProfile, agent: usize) -> bool {
        self(net, p, agent)
    }
}

/// The majority rule at a single agent: strict majority of the
/// out-neighborhood (self included), own belief on a tie.
pub fn majority_rule(net: &Network, p: &BeliefProfile, a: &AgentId) -> Result<bool> {
    p.check_roster(net.roster())?;
    let idx = net.require_index(a.as_str())?;
    Ok(EvolutionFunction::Majority.next(net, p, idx))
}

pub(crate) fn check_compat<F: EvolutionFamily>(net: &Network, fam: &F) -> Result<()> {
    if !fam.compatible_with(net) {
        return Err(Error::DomainMismatch);
    }
    Ok(())
}

/// Image of the full, simultaneous update. No validation; callers go
/// through [`apply_all`].
pub(crate) fn next_bits<F: EvolutionFamily>(net: &Network, fam: &F, p: &BeliefProfile) -> Bits {
    Bits::from_fn(net.agent_count(), |i| fam.next_belief(net, p, i))
}

/// Updates every agent simultaneously.
pub fn apply_all<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    p: &BeliefProfile,
) -> Result<BeliefProfile> {
    check_compat(net, fam)?;
    p.check_roster(net.roster())?;
    Ok(p.with_bits(next_bits(net, fam, p)))
}

/// Updates exactly the agents in `group`; everyone else keeps their
/// belief. All updated agents read the same pre-update profile, so this is
/// not the same as updating them one at a time.
pub fn apply_group<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    p: &BeliefProfile,
    group: &AgentGroup,
) -> Result<BeliefProfile> {
    check_compat(net, fam)?;
    p.check_roster(net.roster())?;
    group.check_roster(net.roster())?;
    let mut bits = p.bits().clone();
    for i in group.bits().iter_ones() {
        bits.set(i, fam.next_belief(net, p, i));
    }
    Ok(p.with_bits(bits))
}
