//! Exhaustive checks for the six structural properties an update family
//! can have: bounded, neutral, congruent, local, monotonic, non-slavish.
//!
//! Every check either proves the property over the whole profile space or
//! returns the first counterexample in a fixed enumeration order, packaged
//! so it can be re-evaluated later ([`AxiomReport::replay`]). Costs are
//! exponential by nature, so each check is gated by [`Limits`].
//!
//! The sweeps all run off one precomputed table mapping every profile
//! (as a bit mask) to its full-update image, which keeps the per-network
//! cost at `2^n * n` rule evaluations plus cheap table scans.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::evolution::{check_compat, EvolutionFamily};
use crate::isomorphism::{automorphisms, find_isomorphisms, AgentMap};
use crate::limits::Limits;
use crate::network::{AgentId, Network};
use crate::profile::BeliefProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Bounded,
    Neutral,
    Congruent,
    Local,
    Monotonic,
    NonSlavish,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Bounded,
        Axiom::Neutral,
        Axiom::Congruent,
        Axiom::Local,
        Axiom::Monotonic,
        Axiom::NonSlavish,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Bounded => "bounded",
            Axiom::Neutral => "neutral",
            Axiom::Congruent => "congruent",
            Axiom::Local => "local",
            Axiom::Monotonic => "monotonic",
            Axiom::NonSlavish => "non_slavish",
        }
    }

    pub fn parse(s: &str) -> Result<Axiom> {
        match s.trim() {
            "bounded" => Ok(Axiom::Bounded),
            "neutral" => Ok(Axiom::Neutral),
            "congruent" => Ok(Axiom::Congruent),
            "local" => Ok(Axiom::Local),
            "monotonic" => Ok(Axiom::Monotonic),
            "non_slavish" | "non-slavish" => Ok(Axiom::NonSlavish),
            other => Err(Error::Config(format!(
                "unknown axiom '{other}' (expected bounded, neutral, congruent, local, \
                 monotonic, or non_slavish)"
            ))),
        }
    }
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Counterexample data. Which fields are filled depends on the axiom:
/// one profile for bounded/neutral, two for local/monotonic/congruent
/// (for congruent the second lives on the partner side of the mapping),
/// none for non-slavish, whose violation is the universal statement
/// "`partner`'s belief always comes back out of `agent`".
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub agent: AgentId,
    pub partner: Option<AgentId>,
    pub profiles: Vec<BeliefProfile>,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "agent={}", self.agent)?;
        if let Some(p) = &self.partner {
            write!(f, " partner={p}")?;
        }
        if !self.profiles.is_empty() {
            write!(
                f,
                " profiles={}",
                self.profiles
                    .iter()
                    .map(BeliefProfile::to_bitstring)
                    .collect::<Vec<_>>()
                    .join(",")
            )?;
        }
        Ok(())
    }
}

/// Verdict of one axiom check. A failed report always carries a witness.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    fn pass(axiom: Axiom) -> Self {
        AxiomReport {
            axiom,
            holds: true,
            witness: None,
        }
    }

    fn fail(axiom: Axiom, witness: Witness) -> Self {
        AxiomReport {
            axiom,
            holds: false,
            witness: Some(witness),
        }
    }

    /// Re-evaluates the stored witness against `fam` on `net`.
    ///
    /// Returns `Some(true)` when the recorded violation reproduces,
    /// `Some(false)` when it does not (stale witness), and `None` when
    /// there is nothing to replay: a passing report, or witness data that
    /// does not fit `net` (wrong agents, cross-network congruence).
    pub fn replay<F: EvolutionFamily>(&self, net: &Network, fam: &F) -> Option<bool> {
        let w = self.witness.as_ref()?;
        if !fam.compatible_with(net) {
            return None;
        }
        let agent = net.index_of(w.agent.as_str())?;
        for p in &w.profiles {
            if p.check_roster(net.roster()).is_err() {
                return None;
            }
        }
        let n = net.agent_count();
        match self.axiom {
            Axiom::Bounded => {
                let p = w.profiles.first()?;
                let f = fam.next_belief(net, p, agent);
                let lo = p.ones() == n;
                let hi = p.ones() > 0;
                Some((lo && !f) || (!hi && f))
            }
            Axiom::Neutral => {
                let p = w.profiles.first()?;
                Some(fam.next_belief(net, p, agent) == fam.next_belief(net, &p.flip(), agent))
            }
            Axiom::Congruent => {
                let partner = net.index_of(w.partner.as_ref()?.as_str())?;
                let (p, q) = (w.profiles.first()?, w.profiles.get(1)?);
                Some(fam.next_belief(net, p, agent) != fam.next_belief(net, q, partner))
            }
            Axiom::Local => {
                let (p, q) = (w.profiles.first()?, w.profiles.get(1)?);
                let nb = net.out_row(agent);
                let agree = nb.iter_ones().all(|i| p.bit(i) == q.bit(i));
                Some(agree && fam.next_belief(net, p, agent) != fam.next_belief(net, q, agent))
            }
            Axiom::Monotonic => {
                let (p, q) = (w.profiles.first()?, w.profiles.get(1)?);
                let ordered = p.leq(q).ok()?;
                Some(ordered && fam.next_belief(net, p, agent) && !fam.next_belief(net, q, agent))
            }
            Axiom::NonSlavish => {
                if n > 63 {
                    return None;
                }
                let partner = net.index_of(w.partner.as_ref()?.as_str())?;
                let dominated = (0..1u64 << n).all(|m| {
                    let p = net.profile_from_mask(m);
                    fam.next_belief(net, &p, agent) == (m >> partner & 1 == 1)
                });
                Some(dominated)
            }
        }
    }
}

/// Full-update image of every profile, indexed by profile mask.
fn image_table<F: EvolutionFamily>(net: &Network, fam: &F) -> Vec<u64> {
    let n = net.agent_count();
    (0..1u64 << n)
        .map(|m| {
            let p = net.profile_from_mask(m);
            (0..n).fold(0u64, |acc, a| {
                acc | (u64::from(fam.next_belief(net, &p, a)) << a)
            })
        })
        .collect()
}

/// Bounded: the updated belief stays between the least and greatest belief
/// present anywhere in the profile. Taken literally over 0/1 beliefs that
/// only bites on the two consensus profiles, and it is checked literally.
pub fn check_bounded<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    limits: &Limits,
) -> Result<AxiomReport> {
    check_compat(net, fam)?;
    let n = net.agent_count();
    Limits::gate("bounded check", n, limits.exhaustive_agents)?;
    let image = image_table(net, fam);
    let full = ones_mask(n);
    for m in 0..1u64 << n {
        let lo = m == full;
        let hi = m != 0;
        for a in 0..n {
            let f = image[m as usize] >> a & 1 == 1;
            if (lo && !f) || (!hi && f) {
                return Ok(AxiomReport::fail(
                    Axiom::Bounded,
                    Witness {
                        agent: net.agent(a).clone(),
                        partner: None,
                        profiles: vec![net.profile_from_mask(m)],
                    },
                ));
            }
        }
    }
    Ok(AxiomReport::pass(Axiom::Bounded))
}

/// Neutral: negating every belief in the input negates every updated
/// belief.
pub fn check_neutral<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    limits: &Limits,
) -> Result<AxiomReport> {
    check_compat(net, fam)?;
    let n = net.agent_count();
    Limits::gate("neutrality check", n, limits.exhaustive_agents)?;
    let image = image_table(net, fam);
    let full = ones_mask(n);
    for m in 0..1u64 << n {
        let flipped = !m & full;
        // Violations are the positions where f(flip p) == f(p).
        let same = !(image[m as usize] ^ image[flipped as usize]) & full;
        if same != 0 {
            let a = same.trailing_zeros() as usize;
            return Ok(AxiomReport::fail(
                Axiom::Neutral,
                Witness {
                    agent: net.agent(a).clone(),
                    partner: None,
                    profiles: vec![net.profile_from_mask(m)],
                },
            ));
        }
    }
    Ok(AxiomReport::pass(Axiom::Neutral))
}

/// Congruent: corresponding agents of symmetric positions react the same
/// way to correspondingly relabeled profiles. Checked over every
/// automorphism of the network, so it is also gated by the isomorphism
/// cap.
pub fn check_congruent<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    limits: &Limits,
) -> Result<AxiomReport> {
    check_compat(net, fam)?;
    let n = net.agent_count();
    Limits::gate("congruence check", n, limits.exhaustive_agents)?;
    let auts = automorphisms(net, limits)?;
    let image = image_table(net, fam);
    for pi in &auts {
        if pi.is_identity() {
            continue; // cannot violate anything
        }
        for m in 0..1u64 << n {
            let pm = permute_mask(m, pi, n);
            for a in 0..n {
                let fa = image[m as usize] >> a & 1 == 1;
                let fb = image[pm as usize] >> pi.index_image(a) & 1 == 1;
                if fa != fb {
                    return Ok(AxiomReport::fail(
                        Axiom::Congruent,
                        Witness {
                            agent: net.agent(a).clone(),
                            partner: Some(net.agent(pi.index_image(a)).clone()),
                            profiles: vec![net.profile_from_mask(m), net.profile_from_mask(pm)],
                        },
                    ));
                }
            }
        }
    }
    Ok(AxiomReport::pass(Axiom::Congruent))
}

/// Congruence across two networks: for every isomorphism between them,
/// corresponding agents must react identically to correspondingly
/// relabeled profiles. Holds vacuously when the networks are not
/// isomorphic. Witnesses carry one profile per network; replay them with
/// [`replay_congruent_cross`].
pub fn check_congruent_cross<F, G>(
    net_a: &Network,
    fam_a: &F,
    net_b: &Network,
    fam_b: &G,
    limits: &Limits,
) -> Result<AxiomReport>
where
    F: EvolutionFamily,
    G: EvolutionFamily,
{
    check_compat(net_a, fam_a)?;
    check_compat(net_b, fam_b)?;
    let n = net_a.agent_count();
    Limits::gate("congruence check", n, limits.exhaustive_agents)?;
    let isos = find_isomorphisms(net_a, net_b, limits)?;
    for pi in &isos {
        for m in 0..1u64 << n {
            let p = net_a.profile_from_mask(m);
            let q = p.permuted(pi)?;
            for a in 0..n {
                let fa = fam_a.next_belief(net_a, &p, a);
                let fb = fam_b.next_belief(net_b, &q, pi.index_image(a));
                if fa != fb {
                    return Ok(AxiomReport::fail(
                        Axiom::Congruent,
                        Witness {
                            agent: net_a.agent(a).clone(),
                            partner: Some(net_b.agent(pi.index_image(a)).clone()),
                            profiles: vec![p, q],
                        },
                    ));
                }
            }
        }
    }
    Ok(AxiomReport::pass(Axiom::Congruent))
}

/// Re-evaluates a witness produced by [`check_congruent_cross`].
pub fn replay_congruent_cross<F, G>(
    report: &AxiomReport,
    net_a: &Network,
    fam_a: &F,
    net_b: &Network,
    fam_b: &G,
) -> Option<bool>
where
    F: EvolutionFamily,
    G: EvolutionFamily,
{
    if report.axiom != Axiom::Congruent {
        return None;
    }
    let w = report.witness.as_ref()?;
    let a = net_a.index_of(w.agent.as_str())?;
    let b = net_b.index_of(w.partner.as_ref()?.as_str())?;
    let (p, q) = (w.profiles.first()?, w.profiles.get(1)?);
    p.check_roster(net_a.roster()).ok()?;
    q.check_roster(net_b.roster()).ok()?;
    Some(fam_a.next_belief(net_a, p, a) != fam_b.next_belief(net_b, q, b))
}

/// Local: an agent's update depends only on its out-neighborhood
/// (itself included). Checked by grouping profiles by their restriction
/// to that neighborhood; any group with two different outputs is a
/// violation.
pub fn check_local<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    limits: &Limits,
) -> Result<AxiomReport> {
    check_compat(net, fam)?;
    let n = net.agent_count();
    Limits::gate("locality check", n, limits.exhaustive_agents)?;
    let image = image_table(net, fam);
    for a in 0..n {
        let nb = net
            .out_row(a)
            .as_mask()
            .expect("gated sweeps fit one mask word");
        let mut seen: HashMap<u64, (u64, bool)> = HashMap::new();
        for m in 0..1u64 << n {
            let f = image[m as usize] >> a & 1 == 1;
            match seen.entry(m & nb) {
                std::collections::hash_map::Entry::Occupied(e) => {
                    let (m0, f0) = *e.get();
                    if f0 != f {
                        return Ok(AxiomReport::fail(
                            Axiom::Local,
                            Witness {
                                agent: net.agent(a).clone(),
                                partner: None,
                                profiles: vec![
                                    net.profile_from_mask(m0),
                                    net.profile_from_mask(m),
                                ],
                            },
                        ));
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert((m, f));
                }
            }
        }
    }
    Ok(AxiomReport::pass(Axiom::Local))
}

/// Monotonic: raising beliefs anywhere in the input never lowers an
/// updated belief. Every comparable pair is enumerated by three
/// independent choices per agent (low 0/0, split 0/1, high 1/1), `3^n`
/// pairs in all, hence the separate cap.
pub fn check_monotonic<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    limits: &Limits,
) -> Result<AxiomReport> {
    check_compat(net, fam)?;
    let n = net.agent_count();
    // 3^n must also fit the loop counter.
    Limits::gate("monotonicity check", n, limits.monotonic_agents.min(40))?;
    let image = image_table(net, fam);
    let full = ones_mask(n);
    let mut digits = vec![0u8; n];
    let (mut lo, mut hi) = (0u64, 0u64);
    loop {
        let drop = image[lo as usize] & !image[hi as usize] & full;
        if drop != 0 {
            let a = drop.trailing_zeros() as usize;
            return Ok(AxiomReport::fail(
                Axiom::Monotonic,
                Witness {
                    agent: net.agent(a).clone(),
                    partner: None,
                    profiles: vec![net.profile_from_mask(lo), net.profile_from_mask(hi)],
                },
            ));
        }
        // Advance the base-3 counter; digit k encodes (lo bit, hi bit).
        let mut k = 0;
        loop {
            if k == n {
                return Ok(AxiomReport::pass(Axiom::Monotonic));
            }
            digits[k] += 1;
            match digits[k] {
                1 => {
                    hi |= 1 << k;
                    break;
                }
                2 => {
                    lo |= 1 << k;
                    break;
                }
                _ => {
                    digits[k] = 0;
                    lo &= !(1 << k);
                    hi &= !(1 << k);
                    k += 1;
                }
            }
        }
    }
}

/// Non-slavish: no single agent's belief is echoed verbatim on every
/// profile. The violation witness names the dominating agent; note the
/// dominator may be the agent itself.
pub fn check_non_slavish<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    limits: &Limits,
) -> Result<AxiomReport> {
    check_compat(net, fam)?;
    let n = net.agent_count();
    Limits::gate("non-slavishness check", n, limits.exhaustive_agents)?;
    let image = image_table(net, fam);
    for a in 0..n {
        for b in 0..n {
            let dominated =
                (0..1u64 << n).all(|m| (image[m as usize] >> a & 1) == (m >> b & 1));
            if dominated {
                return Ok(AxiomReport::fail(
                    Axiom::NonSlavish,
                    Witness {
                        agent: net.agent(a).clone(),
                        partner: Some(net.agent(b).clone()),
                        profiles: Vec::new(),
                    },
                ));
            }
        }
    }
    Ok(AxiomReport::pass(Axiom::NonSlavish))
}

pub fn check_axiom<F: EvolutionFamily>(
    axiom: Axiom,
    net: &Network,
    fam: &F,
    limits: &Limits,
) -> Result<AxiomReport> {
    match axiom {
        Axiom::Bounded => check_bounded(net, fam, limits),
        Axiom::Neutral => check_neutral(net, fam, limits),
        Axiom::Congruent => check_congruent(net, fam, limits),
        Axiom::Local => check_local(net, fam, limits),
        Axiom::Monotonic => check_monotonic(net, fam, limits),
        Axiom::NonSlavish => check_non_slavish(net, fam, limits),
    }
}

/// All six checks in canonical order.
pub fn check_all<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    limits: &Limits,
) -> Result<Vec<AxiomReport>> {
    Axiom::ALL
        .iter()
        .map(|&ax| check_axiom(ax, net, fam, limits))
        .collect()
}

fn ones_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Image of `m` under the agent bijection: bit `pi(i)` of the result is
/// bit `i` of `m`.
fn permute_mask(m: u64, pi: &AgentMap, n: usize) -> u64 {
    (0..n).fold(0u64, |acc, i| acc | ((m >> i & 1) << pi.index_image(i)))
}
