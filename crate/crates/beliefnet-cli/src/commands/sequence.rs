use beliefnet::{construct_converging_sequence, PhaseOrder};

use crate::args::SequenceArgs;
use crate::commands::CmdResult;
use crate::header::Header;
use crate::io;

pub fn run(args: &SequenceArgs) -> Result<CmdResult, String> {
    let net = io::load_network(&args.network)?;
    let fam = io::load_family(&net, &args.family)?;
    let initial = io::load_initial(&net, &args.initial, &args.initial_file)?;
    let order = if args.decreasing_first {
        PhaseOrder::DecreasingFirst
    } else {
        PhaseOrder::IncreasingFirst
    };

    let mut header = Header::new("construct-sequence");
    header.push("network", args.network.display());
    header.push("agents", net.agent_count());
    io::describe_family(&mut header, &net, &fam);
    header.push("initial", initial.to_bitstring());
    header.push(
        "order",
        match order {
            PhaseOrder::IncreasingFirst => "increasing-first",
            PhaseOrder::DecreasingFirst => "decreasing-first",
        },
    );

    let seq = construct_converging_sequence(&net, &fam, &initial, order)
        .map_err(|e| e.to_string())?;

    if let Some(path) = &args.schedule_out {
        // The schedule file replays under simulate --mode scheduled; the
        // header rides along as comments.
        io::write_file(path, &(header.render() + &seq.schedule.render()))?;
    }

    let mut out = header.render();
    out.push_str(&format!("groups: {}\n", seq.schedule.len()));
    out.push_str(&format!("phase-boundary: {}\n", seq.phase_boundary));
    for g in seq.schedule.groups() {
        out.push_str(&format!("group: {g}\n"));
    }
    out.push_str(&format!("final: {}\n", seq.final_profile.to_bitstring()));
    out.push_str(&format!(
        "consensus: {}\n",
        io::consensus_flag(&seq.final_profile)
    ));
    out.push_str(&format!(
        "reached-equilibrium: {}\n",
        if seq.reached_equilibrium { "yes" } else { "no" }
    ));
    if let Some(path) = &args.schedule_out {
        out.push_str(&format!("schedule-out: {}\n", path.display()));
    }
    Ok(CmdResult {
        stdout: out,
        exit: i32::from(!seq.reached_equilibrium),
    })
}
