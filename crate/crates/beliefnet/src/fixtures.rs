//! Ready-made networks for tests, examples, and benchmarks.
//!
//! All ties here are bidirectional and every agent has its self-loop.
//! `all_networks(n)` enumerates the full space of directed n-agent
//! networks (self-loops forced, every other ordered pair free), which is
//! what the exhaustive suites sweep.

use crate::bits::Bits;
use crate::network::{AgentId, Network};

fn letters(n: usize) -> Vec<AgentId> {
    assert!(
        (1..=26).contains(&n),
        "letter-named fixtures support 1..=26 agents"
    );
    (0..n)
        .map(|i| AgentId::new(((b'a' + i as u8) as char).to_string()).unwrap())
        .collect()
}

fn undirected(agents: Vec<AgentId>, pairs: &[(usize, usize)]) -> Network {
    let ties: Vec<(AgentId, AgentId)> = pairs
        .iter()
        .flat_map(|&(i, j)| {
            [
                (agents[i].clone(), agents[j].clone()),
                (agents[j].clone(), agents[i].clone()),
            ]
        })
        .collect();
    Network::new(agents, ties).unwrap()
}

/// Agents `a..` in a line, neighbors tied both ways.
pub fn path(n: usize) -> Network {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    undirected(letters(n), &pairs)
}

/// Agents `a..` in a ring. `cycle(2)` collapses to the mutual pair.
pub fn cycle(n: usize) -> Network {
    assert!(n >= 2, "a cycle needs at least 2 agents");
    let mut pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    if n > 2 {
        pairs.push((n - 1, 0));
    }
    undirected(letters(n), &pairs)
}

/// Center `c` tied both ways to `leaves` agents `l1..`.
pub fn star(leaves: usize) -> Network {
    assert!(
        (1..=9).contains(&leaves),
        "star fixture supports 1..=9 leaves"
    );
    let mut agents = vec![AgentId::new("c").unwrap()];
    agents.extend((1..=leaves).map(|i| AgentId::new(format!("l{i}")).unwrap()));
    let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    undirected(agents, &pairs)
}

/// Every pair of distinct agents tied both ways.
pub fn complete(n: usize) -> Network {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    undirected(letters(n), &pairs)
}

/// Sides `a1..ap` and `b1..bq`, every cross pair tied both ways and no
/// ties within a side. `complete_bipartite(2, 2)` is the standard
/// oscillation example.
pub fn complete_bipartite(p: usize, q: usize) -> Network {
    assert!(
        (1..=9).contains(&p) && (1..=9).contains(&q),
        "bipartite fixture supports 1..=9 agents per side"
    );
    let mut agents: Vec<AgentId> = (1..=p)
        .map(|i| AgentId::new(format!("a{i}")).unwrap())
        .collect();
    agents.extend((1..=q).map(|i| AgentId::new(format!("b{i}")).unwrap()));
    let mut pairs = Vec::new();
    for i in 0..p {
        for j in 0..q {
            pairs.push((i, p + j));
        }
    }
    undirected(agents, &pairs)
}

/// The network on `n` letter-named agents selected by `mask`: self-loops
/// are mandatory and bit `k` of the mask switches the `k`-th of the
/// `n*(n-1)` remaining ordered pairs, enumerated row-major. Every
/// directed network on `n` agents arises from exactly one mask.
pub fn network_from_mask(n: usize, mask: u64) -> Network {
    assert!((1..=8).contains(&n), "free-pair masks cover 1..=8 agents");
    let free_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    assert!(
        free_pairs.len() == 64 || mask < 1u64 << free_pairs.len(),
        "mask selects a nonexistent pair"
    );
    let roster = Network::new(letters(n), []).unwrap().roster().clone();
    let mut rows = vec![Bits::zeros(n); n];
    for (i, row) in rows.iter_mut().enumerate() {
        row.set(i, true);
    }
    for (k, &(i, j)) in free_pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            rows[i].set(j, true);
        }
    }
    Network::from_rows(roster, rows)
}

/// Every directed network on `n` letter-named agents, in ascending mask
/// order; `2^(n*(n-1))` elements.
pub fn all_networks(n: usize) -> impl Iterator<Item = Network> {
    assert!(
        (1..=5).contains(&n),
        "enumerating all networks is exponential; 1..=5 agents supported"
    );
    (0..1u64 << (n * (n - 1))).map(move |mask| network_from_mask(n, mask))
}
