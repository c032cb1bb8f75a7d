use beliefnet::{
    build_transition_graph, condense, construct_converging_sequence, enumerate_equilibria,
    leaves_are_equilibria, reachable_equilibria, PhaseOrder, TransitionGraph,
};

use crate::args::{AnalyzeArgs, LimitArgs};
use crate::commands::CmdResult;
use crate::header::Header;
use crate::io;

pub fn run(args: &AnalyzeArgs) -> Result<CmdResult, String> {
    let wants_graph = args.transition_graph.is_some()
        || args.condensation.is_some()
        || args.reachable_from.is_some();
    if !args.equilibria && !wants_graph && args.construct_sequence.is_none() {
        return Err("nothing to do: pass at least one of --equilibria, --transition-graph, \
                    --condensation, --reachable-from, --construct-sequence"
            .into());
    }

    let net = io::load_network(&args.network)?;
    let fam = io::load_family(&net, &args.family)?;
    let limits = args.limits.resolve();

    let mut header = Header::new("analyze");
    header.push("network", args.network.display());
    header.push("agents", net.agent_count());
    io::describe_family(&mut header, &net, &fam);
    header.push("limits", LimitArgs::describe(&limits));
    let mut out = header.render();
    let mut exit = 0;

    if args.equilibria {
        let eqs = enumerate_equilibria(&net, &fam, &limits).map_err(|e| e.to_string())?;
        out.push_str(&format!("equilibria-count: {}\n", eqs.len()));
        for e in &eqs {
            out.push_str(&format!(
                "equilibrium: {} consensus={}\n",
                e.to_bitstring(),
                io::consensus_flag(e)
            ));
        }
    }

    let graph: Option<TransitionGraph> = if wants_graph {
        Some(build_transition_graph(&net, &fam, &limits).map_err(|e| e.to_string())?)
    } else {
        None
    };
    if let Some(g) = &graph {
        let edges: u64 = (0..g.node_count()).map(|m| g.out_degree(m)).sum();
        out.push_str(&format!("nodes: {}\nedges: {edges}\n", g.node_count()));
    }
    if let Some(path) = &args.transition_graph {
        let g = graph.as_ref().expect("graph built for this flag");
        io::write_file(path, &g.render_dot())?;
        out.push_str(&format!("transition-graph: {}\n", path.display()));
    }
    if args.condensation.is_some() || args.reachable_from.is_some() {
        let g = graph.as_ref().expect("graph built for this flag");
        if let Some(path) = &args.condensation {
            let c = condense(g);
            io::write_file(path, &g.render_condensation_dot(&c))?;
            out.push_str(&format!("condensation: {}\n", path.display()));
            out.push_str(&format!("components: {}\n", c.component_count()));
            out.push_str(&format!("leaves: {}\n", c.leaves.len()));
            out.push_str(&format!(
                "leaves-are-equilibria: {}\n",
                if leaves_are_equilibria(g, &c) {
                    "yes"
                } else {
                    "no"
                }
            ));
        }
        if let Some(bits) = &args.reachable_from {
            let from =
                io::parse_bitstring(&net, bits).map_err(|e| format!("--reachable-from: {e}"))?;
            let reached = reachable_equilibria(g, &from).map_err(|e| e.to_string())?;
            out.push_str(&format!("reachable-from: {}\n", from.to_bitstring()));
            out.push_str(&format!("reachable-count: {}\n", reached.len()));
            for e in &reached {
                out.push_str(&format!(
                    "reachable: {} consensus={}\n",
                    e.to_bitstring(),
                    io::consensus_flag(e)
                ));
            }
        }
    }

    if let Some(bits) = &args.construct_sequence {
        let start =
            io::parse_bitstring(&net, bits).map_err(|e| format!("--construct-sequence: {e}"))?;
        let order = if args.decreasing_first {
            PhaseOrder::DecreasingFirst
        } else {
            PhaseOrder::IncreasingFirst
        };
        let seq =
            construct_converging_sequence(&net, &fam, &start, order).map_err(|e| e.to_string())?;
        out.push_str(&format!("sequence-start: {}\n", start.to_bitstring()));
        out.push_str(&format!(
            "sequence-order: {}\n",
            match order {
                PhaseOrder::IncreasingFirst => "increasing-first",
                PhaseOrder::DecreasingFirst => "decreasing-first",
            }
        ));
        out.push_str(&format!("sequence-groups: {}\n", seq.schedule.len()));
        out.push_str(&format!("phase-boundary: {}\n", seq.phase_boundary));
        for g in seq.schedule.groups() {
            out.push_str(&format!("sequence-group: {g}\n"));
        }
        out.push_str(&format!(
            "sequence-final: {}\n",
            seq.final_profile.to_bitstring()
        ));
        out.push_str(&format!(
            "sequence-consensus: {}\n",
            io::consensus_flag(&seq.final_profile)
        ));
        out.push_str(&format!(
            "reached-equilibrium: {}\n",
            if seq.reached_equilibrium { "yes" } else { "no" }
        ));
        if !seq.reached_equilibrium {
            exit = 1;
        }
    }

    Ok(CmdResult { stdout: out, exit })
}
