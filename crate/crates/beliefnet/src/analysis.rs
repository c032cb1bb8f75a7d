//! Global structure of the update dynamics: the graph of all one-step
//! group transitions between profiles, its strongly connected
//! condensation, equilibrium enumeration, and the constructive schedule
//! that drives any profile to a stable one in at most `2n` group steps.

use std::collections::{BTreeSet, VecDeque};

use crate::bits::Bits;
use crate::dynamics::Schedule;
use crate::error::Result;
use crate::evolution::{check_compat, next_bits, EvolutionFamily};
use crate::limits::Limits;
use crate::network::Network;
use crate::profile::BeliefProfile;

/// All one-step transitions of a family over a network. Nodes are the
/// `2^n` profiles, encoded as masks with agent `i` at bit `i`. `P` steps
/// to `Q` exactly when some group update sends `P` to `Q`, which happens
/// exactly when `Q` differs from `P` by a subset of the agents whose
/// update would flip them. Successors are enumerated from the stored
/// image table rather than materialized; a node with `d` flippable
/// agents has `2^d` successors, itself included via the empty group.
#[derive(Debug, Clone)]
pub struct TransitionGraph {
    net: Network,
    image: Vec<u64>,
}

pub fn build_transition_graph<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    limits: &Limits,
) -> Result<TransitionGraph> {
    check_compat(net, fam)?;
    let n = net.agent_count();
    Limits::gate("transition graph", n, limits.graph_agents)?;
    let image = (0..1u64 << n)
        .map(|m| {
            let p = net.profile_from_mask(m);
            next_bits(net, fam, &p)
                .as_mask()
                .expect("gated graphs fit one mask word")
        })
        .collect();
    Ok(TransitionGraph {
        net: net.clone(),
        image,
    })
}

impl TransitionGraph {
    pub fn network(&self) -> &Network {
        &self.net
    }

    pub fn agent_count(&self) -> usize {
        self.net.agent_count()
    }

    pub fn node_count(&self) -> u64 {
        self.image.len() as u64
    }

    /// Profile reached when everyone updates at once.
    pub fn image_of(&self, m: u64) -> u64 {
        self.image[m as usize]
    }

    /// Agents whose update would flip them, as a mask.
    pub fn divergence(&self, m: u64) -> u64 {
        m ^ self.image[m as usize]
    }

    pub fn is_equilibrium_node(&self, m: u64) -> bool {
        self.image[m as usize] == m
    }

    pub fn out_degree(&self, m: u64) -> u64 {
        1u64 << self.divergence(m).count_ones()
    }

    /// Successor nodes of `m`, each with the agent set flipped to reach
    /// it. Starts with the empty flip (the node itself), then walks the
    /// subsets of the divergence in ascending mask order.
    pub fn successors(&self, m: u64) -> Successors {
        Successors {
            base: m,
            d: self.divergence(m),
            s: 0,
            done: false,
        }
    }

    pub fn profile_of(&self, m: u64) -> BeliefProfile {
        self.net.profile_from_mask(m)
    }

    fn group_label(&self, flipped: u64) -> String {
        let group = self
            .net
            .group_from_bits(Bits::from_mask(flipped, self.agent_count()));
        format!("{{{group}}}")
    }

    /// DOT rendering with one node per profile (equilibria doubled) and
    /// one edge per transition, labeled by the flipped agent set. Nodes
    /// are emitted in bitstring order, edges in subset order, so the
    /// output is byte-stable.
    pub fn render_dot(&self) -> String {
        let mut nodes: Vec<(String, u64)> = (0..self.node_count())
            .map(|m| (self.profile_of(m).to_bitstring(), m))
            .collect();
        nodes.sort();
        let mut out = String::from("digraph transitions {\n");
        for (name, m) in &nodes {
            if self.is_equilibrium_node(*m) {
                out.push_str(&format!("  \"{name}\" [shape=doublecircle];\n"));
            } else {
                out.push_str(&format!("  \"{name}\";\n"));
            }
        }
        for (name, m) in &nodes {
            for (to, flipped) in self.successors(*m) {
                out.push_str(&format!(
                    "  \"{name}\" -> \"{}\" [label=\"{}\"];\n",
                    self.profile_of(to).to_bitstring(),
                    self.group_label(flipped)
                ));
            }
        }
        out.push_str("}\n");
        out
    }

    /// DOT rendering of a condensation of this graph: one node per
    /// component labeled with its member profiles, leaves doubled.
    pub fn render_condensation_dot(&self, c: &Condensation) -> String {
        let mut out = String::from("digraph condensation {\n");
        for (i, members) in c.components.iter().enumerate() {
            let mut names: Vec<String> = members
                .iter()
                .map(|&m| self.profile_of(m).to_bitstring())
                .collect();
            names.sort();
            let label = names.join(",");
            if c.is_leaf(i) {
                out.push_str(&format!("  \"c{i}\" [label=\"{label}\" shape=doublecircle];\n"));
            } else {
                out.push_str(&format!("  \"c{i}\" [label=\"{label}\"];\n"));
            }
        }
        for (from, to) in &c.edges {
            out.push_str(&format!("  \"c{from}\" -> \"c{to}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Iterator over `(successor, flipped agents)` pairs.
pub struct Successors {
    base: u64,
    d: u64,
    s: u64,
    done: bool,
}

impl Iterator for Successors {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        if self.done {
            return None;
        }
        let item = (self.base ^ self.s, self.s);
        if self.s == self.d {
            self.done = true;
        } else {
            // Next subset of d in ascending order.
            self.s = self.s.wrapping_sub(self.d) & self.d;
        }
        Some(item)
    }
}

/// Strongly connected components of a transition graph, collapsed to a
/// DAG. Components are numbered by their smallest member mask; a leaf is
/// a component with no edge out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    /// Member masks per component, each sorted ascending.
    pub components: Vec<Vec<u64>>,
    /// Component index of every node mask.
    pub comp_of: Vec<usize>,
    /// Distinct cross-component edges, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Indices of components with no outgoing edge, sorted.
    pub leaves: Vec<usize>,
}

impl Condensation {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_leaf(&self, comp: usize) -> bool {
        self.leaves.binary_search(&comp).is_ok()
    }
}

pub fn condense(g: &TransitionGraph) -> Condensation {
    let nn = g.image.len();
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; nn];
    let mut lowlink = vec![0usize; nn];
    let mut on_stack = vec![false; nn];
    let mut stack: Vec<u64> = Vec::new();
    let mut next_index = 0usize;
    let mut raw_components: Vec<Vec<u64>> = Vec::new();

    // Tarjan with an explicit frame stack; recursion would be as deep as
    // the longest transition chain, which can approach the node count.
    struct Frame {
        v: u64,
        d: u64,
        s: u64,
        exhausted: bool,
    }
    let mut frames: Vec<Frame> = Vec::new();

    for root in 0..nn as u64 {
        if index[root as usize] != UNVISITED {
            continue;
        }
        index[root as usize] = next_index;
        lowlink[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        frames.push(Frame {
            v: root,
            d: g.divergence(root),
            s: 0,
            exhausted: false,
        });
        while let Some(f) = frames.last_mut() {
            if f.exhausted {
                let v = f.v;
                frames.pop();
                if lowlink[v as usize] == index[v as usize] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("component root is on the stack");
                        on_stack[w as usize] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    raw_components.push(comp);
                }
                if let Some(parent) = frames.last() {
                    let p = parent.v as usize;
                    lowlink[p] = lowlink[p].min(lowlink[v as usize]);
                }
                continue;
            }
            let w = f.v ^ f.s;
            if f.s == f.d {
                f.exhausted = true;
            } else {
                f.s = f.s.wrapping_sub(f.d) & f.d;
            }
            let v = f.v;
            if index[w as usize] == UNVISITED {
                index[w as usize] = next_index;
                lowlink[w as usize] = next_index;
                next_index += 1;
                stack.push(w);
                on_stack[w as usize] = true;
                frames.push(Frame {
                    v: w,
                    d: g.divergence(w),
                    s: 0,
                    exhausted: false,
                });
            } else if on_stack[w as usize] {
                lowlink[v as usize] = lowlink[v as usize].min(index[w as usize]);
            }
        }
    }

    for comp in &mut raw_components {
        comp.sort_unstable();
    }
    raw_components.sort_unstable_by_key(|comp| comp[0]);
    let mut comp_of = vec![0usize; nn];
    for (i, comp) in raw_components.iter().enumerate() {
        for &m in comp {
            comp_of[m as usize] = i;
        }
    }
    let mut edge_set = BTreeSet::new();
    for m in 0..nn as u64 {
        for (to, _) in g.successors(m) {
            let (a, b) = (comp_of[m as usize], comp_of[to as usize]);
            if a != b {
                edge_set.insert((a, b));
            }
        }
    }
    let edges: Vec<(usize, usize)> = edge_set.into_iter().collect();
    let has_out: BTreeSet<usize> = edges.iter().map(|&(a, _)| a).collect();
    let leaves = (0..raw_components.len())
        .filter(|c| !has_out.contains(c))
        .collect();
    Condensation {
        components: raw_components,
        comp_of,
        edges,
        leaves,
    }
}

/// Whether the condensation's leaves are exactly the equilibria: every
/// leaf a single stable profile, every stable profile a leaf. Families
/// whose runs can get stuck circling (the flipper being the plain case)
/// fail this with a multi-node leaf.
pub fn leaves_are_equilibria(g: &TransitionGraph, c: &Condensation) -> bool {
    let mut leaf_nodes = BTreeSet::new();
    for &leaf in &c.leaves {
        if c.components[leaf].len() != 1 {
            return false;
        }
        leaf_nodes.insert(c.components[leaf][0]);
    }
    let eq_nodes: BTreeSet<u64> = (0..g.node_count())
        .filter(|&m| g.is_equilibrium_node(m))
        .collect();
    leaf_nodes == eq_nodes
}

/// All profiles no agent wants to leave, in bitstring order.
pub fn enumerate_equilibria<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    limits: &Limits,
) -> Result<Vec<BeliefProfile>> {
    check_compat(net, fam)?;
    let n = net.agent_count();
    Limits::gate("equilibrium enumeration", n, limits.equilibria_agents)?;
    let mut found = Vec::new();
    for m in 0..1u64 << n {
        let p = net.profile_from_mask(m);
        if (0..n).all(|a| fam.next_belief(net, &p, a) == p.bit(a)) {
            found.push(p);
        }
    }
    found.sort_by_key(BeliefProfile::to_bitstring);
    Ok(found)
}

/// Equilibria reachable from `from` by some sequence of group updates,
/// in bitstring order.
pub fn reachable_equilibria(
    g: &TransitionGraph,
    from: &BeliefProfile,
) -> Result<Vec<BeliefProfile>> {
    from.check_roster(g.net.roster())?;
    let start = from
        .as_mask()
        .expect("graph networks fit one mask word");
    let mut seen = vec![false; g.image.len()];
    seen[start as usize] = true;
    let mut queue = VecDeque::from([start]);
    let mut found = Vec::new();
    while let Some(m) = queue.pop_front() {
        if g.is_equilibrium_node(m) {
            found.push(g.profile_of(m));
            continue; // an equilibrium has no successors but itself
        }
        for (to, _) in g.successors(m) {
            if !seen[to as usize] {
                seen[to as usize] = true;
                queue.push_back(to);
            }
        }
    }
    found.sort_by_key(BeliefProfile::to_bitstring);
    Ok(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseOrder {
    IncreasingFirst,
    DecreasingFirst,
}

/// Result of the two-phase schedule construction. The schedule has at
/// most `2n` groups: a phase where agents only gain the belief, then one
/// where they only lose it (or the mirror order). `phase_boundary` is
/// the number of groups in the first phase.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergingSequence {
    pub schedule: Schedule,
    pub final_profile: BeliefProfile,
    pub reached_equilibrium: bool,
    pub phase_boundary: usize,
}

/// Builds the two-phase schedule from `initial`. Each phase repeatedly
/// activates every agent that wants to move in the phase's direction;
/// the count of believers moves strictly monotonically, so each phase
/// ends within `n` rounds regardless of the family. Reaching an
/// equilibrium is guaranteed for monotonic bounded families and reported
/// rather than assumed: check `reached_equilibrium`.
pub fn construct_converging_sequence<F: EvolutionFamily>(
    net: &Network,
    fam: &F,
    initial: &BeliefProfile,
    order: PhaseOrder,
) -> Result<ConvergingSequence> {
    check_compat(net, fam)?;
    initial.check_roster(net.roster())?;
    let mut current = initial.clone();
    let mut groups = Vec::new();
    let phases = match order {
        PhaseOrder::IncreasingFirst => [true, false],
        PhaseOrder::DecreasingFirst => [false, true],
    };
    let n = net.agent_count();
    let mut phase_boundary = 0;
    for (k, &rising) in phases.iter().enumerate() {
        loop {
            let image = next_bits(net, fam, &current);
            // Everyone who wants to move in the phase's direction.
            let group_bits = Bits::from_fn(n, |a| {
                let (cur, nxt) = (current.bits().get(a), image.get(a));
                if rising {
                    !cur && nxt
                } else {
                    cur && !nxt
                }
            });
            if group_bits.is_zero() {
                break;
            }
            current = current.with_bits(current.bits().blend(&image, &group_bits));
            groups.push(net.group_from_bits(group_bits));
        }
        if k == 0 {
            phase_boundary = groups.len();
        }
    }
    let reached_equilibrium = next_bits(net, fam, &current) == *current.bits();
    Ok(ConvergingSequence {
        schedule: Schedule::new(groups),
        final_profile: current,
        reached_equilibrium,
        phase_boundary,
    })
}
