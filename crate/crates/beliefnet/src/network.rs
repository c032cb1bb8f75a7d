//! Agents, directed networks, and agent groups.
//!
//! A network is a finite set of named agents plus a set of directed ties.
//! Every agent carries a tie to itself; loaders insert missing self-loops
//! rather than reject the input, and report that as a warning. Agent order
//! everywhere (bitstrings, tables, rendered files) is lexicographic by id.

use std::fmt;
use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::profile::BeliefProfile;

/// Name of one agent: a non-empty token without whitespace, commas,
/// colons, or hashes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(String);

impl AgentId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::InvalidAgentId {
                id,
                reason: "must not be empty",
            });
        }
        if id.chars().any(char::is_whitespace) {
            return Err(Error::InvalidAgentId {
                id,
                reason: "must not contain whitespace",
            });
        }
        if id.contains(',') {
            return Err(Error::InvalidAgentId {
                id,
                reason: "must not contain commas",
            });
        }
        // Colons delimit keys in assignment, probability, and schedule
        // files; hashes start comments.
        if id.contains(':') || id.contains('#') {
            return Err(Error::InvalidAgentId {
                id,
                reason: "must not contain ':' or '#'",
            });
        }
        Ok(AgentId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for AgentId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        AgentId::new(s)
    }
}

impl PartialEq<&str> for AgentId {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

/// Sorted, deduplicated agent list shared by everything built on one
/// network. Sharing one allocation makes domain checks a pointer compare
/// in the common case.
#[derive(Debug, PartialEq, Eq)]
pub(crate) struct Roster {
    ids: Vec<AgentId>,
}

impl Roster {
    fn new(mut ids: Vec<AgentId>) -> Result<Arc<Roster>> {
        if ids.is_empty() {
            return Err(Error::Config("a network needs at least one agent".into()));
        }
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Config(format!("duplicate agent id '{}'", w[0])));
            }
        }
        Ok(Arc::new(Roster { ids }))
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[AgentId] {
        &self.ids
    }

    pub fn id(&self, idx: usize) -> &AgentId {
        &self.ids[idx]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|a| a.as_str().cmp(id)).ok()
    }
}

pub(crate) fn same_roster(a: &Arc<Roster>, b: &Arc<Roster>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Out-neighborhood sizes split by current belief.
///
/// `pos` counts the out-neighbors (the agent itself included) that hold
/// belief 1, `neg` those that hold 0; the two always sum to the agent's
/// out-degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeighborhoodTally {
    pub pos: usize,
    pub neg: usize,
}

/// Immutable directed network with mandatory self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    roster: Arc<Roster>,
    out: Vec<Bits>,      // row a = out-neighborhood of a, self included
    out_excl: Vec<Bits>, // row a without the self bit
}

/// A parsed network plus anything the loader fixed up along the way.
#[derive(Debug)]
pub struct ParsedNetwork {
    pub network: Network,
    pub warnings: Vec<String>,
}

impl Network {
    /// Builds a network from agent ids and directed ties. Missing
    /// self-loops are inserted silently; [`Network::parse`] is the entry
    /// point that reports them.
    pub fn new<I, T>(agents: I, ties: T) -> Result<Network>
    where
        I: IntoIterator<Item = AgentId>,
        T: IntoIterator<Item = (AgentId, AgentId)>,
    {
        let roster = Roster::new(agents.into_iter().collect())?;
        let n = roster.len();
        let mut out = vec![Bits::zeros(n); n];
        for (from, to) in ties {
            let f = roster
                .index_of(from.as_str())
                .ok_or_else(|| Error::UnknownAgent(from.to_string()))?;
            let t = roster
                .index_of(to.as_str())
                .ok_or_else(|| Error::UnknownAgent(to.to_string()))?;
            out[f].set(t, true);
        }
        for (i, row) in out.iter_mut().enumerate() {
            row.set(i, true);
        }
        Ok(Network::from_rows(roster, out))
    }

    pub(crate) fn from_rows(roster: Arc<Roster>, out: Vec<Bits>) -> Network {
        let out_excl = out
            .iter()
            .enumerate()
            .map(|(i, row)| row.without(i))
            .collect();
        Network {
            roster,
            out,
            out_excl,
        }
    }

    /// Reads the line-oriented network format:
    ///
    /// ```text
    /// # comment
    /// agents: a,b,c
    /// edge: a b
    /// ```
    ///
    /// The first record declares the agents; every following record is a
    /// directed tie. Blank lines and `#` comments are skipped. Agents
    /// without an explicit self-loop get one, with a warning.
    pub fn parse(text: &str) -> Result<ParsedNetwork> {
        let mut agents: Option<(Vec<AgentId>, usize)> = None;
        let mut edges: Vec<(String, String, usize)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("agents:") {
                if agents.is_some() {
                    return Err(Error::parse(lineno, "agents are already declared"));
                }
                let mut ids = Vec::new();
                for tok in rest.split(',') {
                    let tok = tok.trim();
                    let id = AgentId::new(tok)
                        .map_err(|e| Error::parse(lineno, e.to_string()))?;
                    ids.push(id);
                }
                agents = Some((ids, lineno));
            } else if let Some(rest) = line.strip_prefix("edge:") {
                if agents.is_none() {
                    return Err(Error::parse(
                        lineno,
                        "expected 'agents: <id>,<id>,...' before any edge",
                    ));
                }
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(Error::parse(lineno, "expected 'edge: <from> <to>'"));
                }
                edges.push((toks[0].to_string(), toks[1].to_string(), lineno));
            } else {
                return Err(Error::parse(
                    lineno,
                    "expected 'agents: ...', 'edge: <from> <to>', a comment, or a blank line",
                ));
            }
        }
        let (ids, agents_line) = agents.ok_or_else(|| {
            Error::parse(1, "missing 'agents: <id>,<id>,...' record")
        })?;
        let roster = Roster::new(ids).map_err(|e| Error::parse(agents_line, e.to_string()))?;
        let n = roster.len();
        let mut out = vec![Bits::zeros(n); n];
        for (from, to, lineno) in &edges {
            let f = roster.index_of(from).ok_or_else(|| {
                Error::parse(*lineno, format!("unknown agent '{from}' in edge"))
            })?;
            let t = roster.index_of(to).ok_or_else(|| {
                Error::parse(*lineno, format!("unknown agent '{to}' in edge"))
            })?;
            out[f].set(t, true);
        }
        let mut missing = Vec::new();
        for (i, row) in out.iter_mut().enumerate() {
            if !row.get(i) {
                row.set(i, true);
                missing.push(roster.id(i).to_string());
            }
        }
        let mut warnings = Vec::new();
        if !missing.is_empty() {
            warnings.push(format!(
                "inserted missing self-loops for: {}",
                missing.join(", ")
            ));
        }
        Ok(ParsedNetwork {
            network: Network::from_rows(roster, out),
            warnings,
        })
    }

    /// Canonical text form: sorted agents, then ties sorted by endpoint
    /// pair. Parsing the result reproduces the network exactly.
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str("agents: ");
        s.push_str(
            &self
                .roster
                .ids()
                .iter()
                .map(AgentId::as_str)
                .collect::<Vec<_>>()
                .join(","),
        );
        s.push('\n');
        for i in 0..self.agent_count() {
            for j in self.out[i].iter_ones() {
                s.push_str(&format!("edge: {} {}\n", self.roster.id(i), self.roster.id(j)));
            }
        }
        s
    }

    pub fn agent_count(&self) -> usize {
        self.roster.len()
    }

    /// Agents in canonical (lexicographic) order.
    pub fn agents(&self) -> &[AgentId] {
        self.roster.ids()
    }

    pub fn agent(&self, idx: usize) -> &AgentId {
        self.roster.id(idx)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.roster.index_of(id)
    }

    pub(crate) fn require_index(&self, id: &str) -> Result<usize> {
        self.roster
            .index_of(id)
            .ok_or_else(|| Error::UnknownAgent(id.to_string()))
    }

    pub fn has_tie(&self, from: &AgentId, to: &AgentId) -> Result<bool> {
        let f = self.require_index(from.as_str())?;
        let t = self.require_index(to.as_str())?;
        Ok(self.out[f].get(t))
    }

    pub(crate) fn has_tie_idx(&self, from: usize, to: usize) -> bool {
        self.out[from].get(to)
    }

    pub fn out_degree(&self, a: &AgentId) -> Result<usize> {
        Ok(self.out_degree_idx(self.require_index(a.as_str())?))
    }

    pub(crate) fn out_degree_idx(&self, idx: usize) -> usize {
        self.out[idx].count_ones()
    }

    /// Out-neighbors of `a` (including `a`), in canonical order.
    pub fn out_neighbors(&self, a: &AgentId) -> Result<Vec<&AgentId>> {
        let idx = self.require_index(a.as_str())?;
        Ok(self.out[idx].iter_ones().map(|j| self.roster.id(j)).collect())
    }

    pub(crate) fn out_row(&self, idx: usize) -> &Bits {
        &self.out[idx]
    }

    pub(crate) fn out_row_excl(&self, idx: usize) -> &Bits {
        &self.out_excl[idx]
    }

    pub(crate) fn roster(&self) -> &Arc<Roster> {
        &self.roster
    }

    /// Split of `a`'s out-neighborhood by belief under `p`.
    pub fn tally(&self, p: &BeliefProfile, a: &AgentId) -> Result<NeighborhoodTally> {
        p.check_roster(&self.roster)?;
        let idx = self.require_index(a.as_str())?;
        Ok(self.tally_idx(p, idx))
    }

    pub(crate) fn tally_idx(&self, p: &BeliefProfile, idx: usize) -> NeighborhoodTally {
        let pos = self.out[idx].and_count(p.bits());
        NeighborhoodTally {
            pos,
            neg: self.out[idx].count_ones() - pos,
        }
    }

    // ---- profile construction -------------------------------------------

    pub fn profile_all(&self, belief: bool) -> BeliefProfile {
        let bits = if belief {
            Bits::ones(self.agent_count())
        } else {
            Bits::zeros(self.agent_count())
        };
        BeliefProfile::from_parts(self.roster.clone(), bits)
    }

    /// Parses a bitstring in canonical agent order: character k is the
    /// belief of the k-th agent. Must cover every agent exactly once.
    pub fn profile_from_bitstring(&self, s: &str) -> Result<BeliefProfile> {
        let s = s.trim();
        if s.chars().count() != self.agent_count() {
            return Err(Error::Config(format!(
                "profile bitstring '{s}' has length {}, expected {} (one bit per agent in \
                 lexicographic order)",
                s.chars().count(),
                self.agent_count()
            )));
        }
        let mut bits = Bits::zeros(self.agent_count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits.set(i, true),
                other => {
                    return Err(Error::Config(format!(
                        "profile bitstring may only contain 0 and 1, found {other:?}"
                    )))
                }
            }
        }
        Ok(BeliefProfile::from_parts(self.roster.clone(), bits))
    }

    pub fn profile_from_fn(&self, mut f: impl FnMut(&AgentId) -> bool) -> BeliefProfile {
        let bits = Bits::from_fn(self.agent_count(), |i| f(self.roster.id(i)));
        BeliefProfile::from_parts(self.roster.clone(), bits)
    }

    /// Builds a profile from `(agent, belief)` pairs covering every agent
    /// exactly once.
    pub fn profile_from_pairs<'a, I>(&self, pairs: I) -> Result<BeliefProfile>
    where
        I: IntoIterator<Item = (&'a str, bool)>,
    {
        let n = self.agent_count();
        let mut bits = Bits::zeros(n);
        let mut seen = vec![false; n];
        for (id, belief) in pairs {
            let idx = self.require_index(id)?;
            if seen[idx] {
                return Err(Error::Config(format!("agent '{id}' assigned twice")));
            }
            seen[idx] = true;
            bits.set(idx, belief);
        }
        if let Some(idx) = seen.iter().position(|s| !s) {
            return Err(Error::Config(format!(
                "no belief assigned to agent '{}'",
                self.roster.id(idx)
            )));
        }
        Ok(BeliefProfile::from_parts(self.roster.clone(), bits))
    }

    /// Profile whose bit for the k-th agent is bit k of `mask`. Handy for
    /// exhaustive sweeps; limited to 64 agents.
    pub fn profile_from_mask(&self, mask: u64) -> BeliefProfile {
        assert!(self.agent_count() <= 64, "mask profiles need <= 64 agents");
        BeliefProfile::from_parts(
            self.roster.clone(),
            Bits::from_mask(mask, self.agent_count()),
        )
    }

    /// All `2^n` profiles in ascending mask order. Exponential; callers
    /// gate on the configured limits.
    pub fn all_profiles(&self) -> impl Iterator<Item = BeliefProfile> + '_ {
        assert!(self.agent_count() <= 64, "profile sweeps need <= 64 agents");
        (0..1u64 << self.agent_count()).map(|m| self.profile_from_mask(m))
    }

    // ---- group construction ---------------------------------------------

    pub fn group_from_ids<I, S>(&self, ids: I) -> Result<AgentGroup>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = Bits::zeros(self.agent_count());
        for id in ids {
            bits.set(self.require_index(id.as_ref())?, true);
        }
        Ok(AgentGroup::from_parts(self.roster.clone(), bits))
    }

    /// Parses a comma-separated agent list; the empty string is the empty
    /// group.
    pub fn group_from_str(&self, s: &str) -> Result<AgentGroup> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(self.empty_group());
        }
        self.group_from_ids(s.split(',').map(str::trim))
    }

    pub fn empty_group(&self) -> AgentGroup {
        AgentGroup::from_parts(self.roster.clone(), Bits::zeros(self.agent_count()))
    }

    pub fn full_group(&self) -> AgentGroup {
        AgentGroup::from_parts(self.roster.clone(), Bits::ones(self.agent_count()))
    }

    pub(crate) fn group_from_bits(&self, bits: Bits) -> AgentGroup {
        debug_assert_eq!(bits.len(), self.agent_count());
        AgentGroup::from_parts(self.roster.clone(), bits)
    }
}

/// A subset of one network's agents, used for group updates and schedules.
#[derive(Debug, Clone)]
pub struct AgentGroup {
    roster: Arc<Roster>,
    bits: Bits,
}

impl AgentGroup {
    pub(crate) fn from_parts(roster: Arc<Roster>, bits: Bits) -> Self {
        AgentGroup { roster, bits }
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn contains(&self, a: &AgentId) -> bool {
        self.roster
            .index_of(a.as_str())
            .is_some_and(|i| self.bits.get(i))
    }

    /// Members in canonical order.
    pub fn ids(&self) -> impl Iterator<Item = &AgentId> + '_ {
        self.bits.iter_ones().map(|i| self.roster.id(i))
    }

    pub(crate) fn bits(&self) -> &Bits {
        &self.bits
    }

    pub(crate) fn check_roster(&self, other: &Arc<Roster>) -> Result<()> {
        if same_roster(&self.roster, other) {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }
}

impl fmt::Display for AgentGroup {
    /// Comma-joined member ids; the empty group renders as the empty
    /// string, matching the schedule file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for id in self.ids() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            f.write_str(id.as_str())?;
        }
        Ok(())
    }
}

impl PartialEq for AgentGroup {
    fn eq(&self, other: &Self) -> bool {
        same_roster(&self.roster, &other.roster) && self.bits == other.bits
    }
}

impl Eq for AgentGroup {}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> Network {
        let pn = Network::parse(
            "agents: a1,a2,b1,b2\n\
             edge: a1 b1\nedge: a1 b2\nedge: a2 b1\nedge: a2 b2\n\
             edge: b1 a1\nedge: b1 a2\nedge: b2 a1\nedge: b2 a2\n",
        )
        .unwrap();
        pn.network
    }

    #[test]
    fn agent_id_rejects_bad_tokens() {
        assert!(AgentId::new("").is_err());
        assert!(AgentId::new("a b").is_err());
        assert!(AgentId::new("a\tb").is_err());
        assert!(AgentId::new("a,b").is_err());
        assert!(AgentId::new("a:b").is_err());
        assert!(AgentId::new("#a").is_err());
        assert!(AgentId::new("alice").is_ok());
    }

    #[test]
    fn parse_inserts_self_loops_with_warning() {
        let pn = Network::parse("agents: b,a\nedge: a b\n").unwrap();
        assert_eq!(pn.warnings.len(), 1);
        assert!(pn.warnings[0].contains("a, b"), "warning: {}", pn.warnings[0]);
        let net = pn.network;
        let a = AgentId::new("a").unwrap();
        let b = AgentId::new("b").unwrap();
        assert!(net.has_tie(&a, &a).unwrap());
        assert!(net.has_tie(&b, &b).unwrap());
        assert!(net.has_tie(&a, &b).unwrap());
        assert!(!net.has_tie(&b, &a).unwrap());
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let pn = Network::parse("agents: c,a,b\n").unwrap();
        let names: Vec<&str> = pn.network.agents().iter().map(AgentId::as_str).collect();
        assert_eq!(names, ["a", "b", "c"]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Network::parse("agents: a,b\nedge: a zz\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = Network::parse("edge: a b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = Network::parse("agents: a,a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = Network::parse("agents: a\nwhatever\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn render_parse_round_trip_is_exact() {
        let net = k22();
        let text = net.render();
        let again = Network::parse(&text).unwrap();
        assert!(again.warnings.is_empty(), "canonical form has self-loops");
        assert_eq!(again.network, net);
        assert_eq!(again.network.render(), text);
    }

    #[test]
    fn tally_splits_out_degree() {
        let net = k22();
        let p = net.profile_from_bitstring("1100").unwrap();
        let a1 = AgentId::new("a1").unwrap();
        let t = net.tally(&p, &a1).unwrap();
        // a1 sees itself (1) and b1, b2 (0, 0).
        assert_eq!(t, NeighborhoodTally { pos: 1, neg: 2 });
        assert_eq!(t.pos + t.neg, net.out_degree(&a1).unwrap());
    }

    #[test]
    fn profile_bitstring_round_trip() {
        let net = k22();
        for s in ["0000", "1010", "1111"] {
            assert_eq!(net.profile_from_bitstring(s).unwrap().to_bitstring(), s);
        }
        assert!(net.profile_from_bitstring("101").is_err());
        assert!(net.profile_from_bitstring("10102").is_err());
    }

    #[test]
    fn groups_render_and_parse() {
        let net = k22();
        let g = net.group_from_str("b1, a1").unwrap();
        assert_eq!(g.to_string(), "a1,b1");
        assert_eq!(g.len(), 2);
        assert!(net.group_from_str("").unwrap().is_empty());
        assert!(net.group_from_str("nobody").is_err());
    }

    #[test]
    fn empty_network_is_rejected() {
        assert!(Network::parse("agents:\n").is_err());
    }
}
