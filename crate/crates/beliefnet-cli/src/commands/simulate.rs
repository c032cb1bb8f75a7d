use beliefnet::{default_max_steps, Network, Outcome, RandomActivation, Trace};

use crate::args::{Mode, SimulateArgs};
use crate::commands::{
    describe_activation, execute, reject_unused, warn_degenerate_activation, CmdResult, ModeConfig,
};
use crate::header::Header;
use crate::io;
use crate::trace_io;

/// Resolves the mode-specific flags into a runnable config, rejecting
/// any flag the chosen mode ignores. `header` receives the resolved
/// values, defaults included.
pub fn resolve_mode(
    net: &Network,
    header: &mut Header,
    args: &SimulateArgs,
) -> Result<ModeConfig, String> {
    let SimulateArgs {
        mode,
        schedule,
        prob,
        probs,
        seed,
        max_steps,
        ..
    } = args;
    let mode = *mode;
    header.push("mode", mode.name());
    let ctx = format!("--mode {}", mode.name());
    match mode {
        Mode::Sync => {
            reject_unused(schedule.is_some(), "--schedule", &ctx)?;
            reject_unused(prob.is_some(), "--prob", &ctx)?;
            reject_unused(probs.is_some(), "--probs", &ctx)?;
            reject_unused(seed.is_some(), "--seed", &ctx)?;
            let max_steps = max_steps.unwrap_or_else(|| default_max_steps(net));
            header.push("max-steps", max_steps);
            Ok(ModeConfig::Sync { max_steps })
        }
        Mode::Scheduled => {
            reject_unused(prob.is_some(), "--prob", &ctx)?;
            reject_unused(probs.is_some(), "--probs", &ctx)?;
            reject_unused(seed.is_some(), "--seed", &ctx)?;
            reject_unused(max_steps.is_some(), "--max-steps", &ctx)?;
            let path = schedule
                .as_ref()
                .ok_or("--mode scheduled requires --schedule")?;
            let schedule = io::load_schedule(net, path)?;
            header.push("schedule", path.display());
            header.push("rounds", schedule.len());
            Ok(ModeConfig::Scheduled { schedule })
        }
        Mode::Random => {
            reject_unused(schedule.is_some(), "--schedule", &ctx)?;
            let activation = match probs {
                Some(path) => {
                    header.push("probs", path.display());
                    io::load_probs(net, path)?
                }
                None => RandomActivation::uniform(net, prob.unwrap_or(0.5))
                    .map_err(|e| format!("--prob: {e}"))?,
            };
            describe_activation(header, net, &activation);
            warn_degenerate_activation(net, &activation);
            let seed = seed.unwrap_or(0);
            header.push("seed", seed);
            let max_steps = max_steps.unwrap_or_else(|| default_max_steps(net));
            header.push("max-steps", max_steps);
            Ok(ModeConfig::Random {
                activation,
                seed,
                max_steps,
            })
        }
    }
}

/// Summary lines shared by simulate's stdout and each sweep cell's
/// per-run view of a finished trace.
pub fn summarize(trace: &Trace) -> String {
    let mut out = String::new();
    match &trace.outcome {
        Outcome::Converged { at_step, .. } => {
            out.push_str("outcome: converged\n");
            out.push_str(&format!("steps: {at_step}\n"));
        }
        Outcome::Cycled { preperiod, period } => {
            out.push_str("outcome: cycled\n");
            out.push_str(&format!("steps: {}\n", trace.steps.len()));
            out.push_str(&format!("preperiod: {preperiod}\n"));
            out.push_str(&format!("period: {period}\n"));
        }
        Outcome::StepLimitReached => {
            out.push_str("outcome: step-limit\n");
            out.push_str(&format!("steps: {}\n", trace.steps.len()));
        }
    }
    let fin = trace.final_profile();
    out.push_str(&format!("final: {}\n", fin.to_bitstring()));
    out.push_str(&format!("consensus: {}\n", io::consensus_flag(fin)));
    out
}

pub fn run(args: &SimulateArgs) -> Result<CmdResult, String> {
    let net = io::load_network(&args.network)?;
    let fam = io::load_family(&net, &args.family)?;
    let initial = io::load_initial(&net, &args.initial, &args.initial_file)?;

    let mut header = Header::new("simulate");
    header.push("network", args.network.display());
    header.push("agents", net.agent_count());
    io::describe_family(&mut header, &net, &fam);
    header.push("initial", initial.to_bitstring());
    let cfg = resolve_mode(&net, &mut header, args)?;
    if let Some(path) = &args.trace {
        header.push("trace", path.display());
    }

    let trace = execute(&net, &fam, &initial, &cfg).map_err(|e| e.to_string())?;
    if let Some(path) = &args.trace {
        io::write_file(path, &trace_io::render(&header, &trace))?;
    }
    let out = header.render() + &summarize(&trace);
    Ok(CmdResult::ok(out))
}
