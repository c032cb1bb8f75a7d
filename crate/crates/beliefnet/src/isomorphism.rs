//! Network isomorphisms by brute force over agent permutations.
//!
//! Search cost is n! times an n^2 tie comparison, so the entry points are
//! gated by [`Limits::isomorphism_agents`]. For the sizes this crate's
//! exhaustive tools target that is plenty; anything larger deserves a real
//! canonical-labeling algorithm, which is out of scope here.

use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::network::{same_roster, AgentId, Network, Roster};

/// A tie-preserving bijection from one network's agents onto another's
/// (possibly the same network).
#[derive(Debug, Clone, PartialEq)]
pub struct AgentMap {
    from: Arc<Roster>,
    to: Arc<Roster>,
    map: Vec<usize>, // map[i] = index of the image of source agent i
}

impl AgentMap {
    fn new(from: Arc<Roster>, to: Arc<Roster>, map: Vec<usize>) -> Self {
        debug_assert_eq!(from.len(), map.len());
        AgentMap { from, to, map }
    }

    pub fn image_of(&self, a: &AgentId) -> Result<&AgentId> {
        let i = self
            .from
            .index_of(a.as_str())
            .ok_or_else(|| Error::UnknownAgent(a.to_string()))?;
        Ok(self.to.id(self.map[i]))
    }

    /// `(source, image)` pairs in canonical source order.
    pub fn pairs(&self) -> impl Iterator<Item = (&AgentId, &AgentId)> + '_ {
        self.map
            .iter()
            .enumerate()
            .map(|(i, &j)| (self.from.id(i), self.to.id(j)))
    }

    pub fn is_identity(&self) -> bool {
        same_roster(&self.from, &self.to) && self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> AgentMap {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        AgentMap::new(self.to.clone(), self.from.clone(), inv)
    }

    /// `self` followed by `then`; requires `then` to start where `self`
    /// lands.
    pub fn compose(&self, then: &AgentMap) -> Result<AgentMap> {
        if !same_roster(&self.to, &then.from) {
            return Err(Error::DomainMismatch);
        }
        let map = self.map.iter().map(|&j| then.map[j]).collect();
        Ok(AgentMap::new(self.from.clone(), then.to.clone(), map))
    }

    pub(crate) fn index_image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub(crate) fn target_roster(&self) -> &Arc<Roster> {
        &self.to
    }

    pub(crate) fn check_source(&self, roster: &Arc<Roster>) -> Result<()> {
        if same_roster(&self.from, roster) {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }
}

impl std::fmt::Display for AgentMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (a, b) in self.pairs() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{a}->{b}")?;
        }
        Ok(())
    }
}

/// Every tie-preserving bijection from `a`'s agents onto `b`'s, in
/// lexicographic order of the underlying index permutation. Empty when the
/// agent counts differ or no bijection preserves ties in both directions.
pub fn find_isomorphisms(a: &Network, b: &Network, limits: &Limits) -> Result<Vec<AgentMap>> {
    if a.agent_count() != b.agent_count() {
        return Ok(Vec::new());
    }
    let n = a.agent_count();
    Limits::gate("isomorphism search", n, limits.isomorphism_agents)?;
    let mut found = Vec::new();
    for perm in (0..n).permutations(n) {
        let preserves = (0..n)
            .all(|u| (0..n).all(|v| a.has_tie_idx(u, v) == b.has_tie_idx(perm[u], perm[v])));
        if preserves {
            found.push(AgentMap::new(a.roster().clone(), b.roster().clone(), perm));
        }
    }
    Ok(found)
}

/// The automorphism group of `net`, identity first.
pub fn automorphisms(net: &Network, limits: &Limits) -> Result<Vec<AgentMap>> {
    find_isomorphisms(net, net, limits)
}
