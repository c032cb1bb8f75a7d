//! Belief profiles: a 0/1 belief for every agent of one network.
//!
//! Profiles render as bitstrings in canonical agent order, so the k-th
//! character is the belief of the k-th agent lexicographically. Two
//! profiles only compare (equality, pointwise order) when they cover the
//! same agent set; anything else is a domain error.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::isomorphism::AgentMap;
use crate::network::{same_roster, AgentId, Roster};

#[derive(Clone)]
pub struct BeliefProfile {
    roster: Arc<Roster>,
    bits: Bits,
}

impl BeliefProfile {
    pub(crate) fn from_parts(roster: Arc<Roster>, bits: Bits) -> Self {
        debug_assert_eq!(roster.len(), bits.len());
        BeliefProfile { roster, bits }
    }

    pub fn agent_count(&self) -> usize {
        self.bits.len()
    }

    pub fn get(&self, a: &AgentId) -> Result<bool> {
        self.roster
            .index_of(a.as_str())
            .map(|i| self.bits.get(i))
            .ok_or_else(|| Error::UnknownAgent(a.to_string()))
    }

    pub fn bit(&self, idx: usize) -> bool {
        self.bits.get(idx)
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

    /// `(agent, belief)` pairs in canonical order.
    pub fn beliefs(&self) -> impl Iterator<Item = (&AgentId, bool)> + '_ {
        (0..self.bits.len()).map(|i| (self.roster.id(i), self.bits.get(i)))
    }

    /// Number of agents currently holding belief 1.
    pub fn ones(&self) -> usize {
        self.bits.count_ones()
    }

    /// The profile with every belief negated. An involution.
    pub fn flip(&self) -> BeliefProfile {
        BeliefProfile {
            roster: self.roster.clone(),
            bits: self.bits.complement(),
        }
    }

    /// Pointwise order: `self(a) <= other(a)` for every agent. Errors when
    /// the two profiles cover different agent sets.
    pub fn leq(&self, other: &BeliefProfile) -> Result<bool> {
        if !same_roster(&self.roster, &other.roster) {
            return Err(Error::DomainMismatch);
        }
        Ok(self.bits.le(&other.bits))
    }

    /// True when every agent holds the same belief. Equivalent to being
    /// the all-zeros or all-ones profile.
    pub fn is_consensus(&self) -> bool {
        let ones = self.bits.count_ones();
        ones == 0 || ones == self.bits.len()
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.bits.len())
            .map(|i| if self.bits.get(i) { '1' } else { '0' })
            .collect()
    }

    /// Pushes the profile through an agent bijection: the image profile
    /// assigns to `map(a)` whatever `self` assigns to `a`. Errors when the
    /// map's source does not match this profile's agents.
    pub fn permuted(&self, map: &AgentMap) -> Result<BeliefProfile> {
        map.check_source(&self.roster)?;
        let mut bits = Bits::zeros(self.bits.len());
        for i in 0..self.bits.len() {
            if self.bits.get(i) {
                bits.set(map.index_image(i), true);
            }
        }
        Ok(BeliefProfile {
            roster: map.target_roster().clone(),
            bits,
        })
    }

    pub(crate) fn with_bits(&self, bits: Bits) -> BeliefProfile {
        debug_assert_eq!(bits.len(), self.bits.len());
        BeliefProfile {
            roster: self.roster.clone(),
            bits,
        }
    }

    pub fn as_mask(&self) -> Option<u64> {
        self.bits.as_mask()
    }
}

impl fmt::Display for BeliefProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl fmt::Debug for BeliefProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BeliefProfile({})", self.to_bitstring())
    }
}

impl PartialEq for BeliefProfile {
    fn eq(&self, other: &Self) -> bool {
        same_roster(&self.roster, &other.roster) && self.bits == other.bits
    }
}

impl Eq for BeliefProfile {}

impl Hash for BeliefProfile {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Equal profiles have equal bits; the roster check lives in Eq.
        self.bits.hash(state);
    }
}
