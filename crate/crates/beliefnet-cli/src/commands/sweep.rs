//! Batch runs over one varying axis. Cells are prepared in a fixed
//! order, run in parallel (`RAYON_NUM_THREADS` caps the workers), and
//! reported in preparation order, so a sweep's output is deterministic
//! for everything except wall time. A broken cell becomes a row with its
//! error message; the sweep itself still succeeds.

use std::path::{Path, PathBuf};

use beliefnet::{
    default_max_steps, BeliefProfile, FunctionFamily, Limits, Network, Outcome, RandomActivation,
    Schedule, Trace,
};
use rayon::prelude::*;

use crate::args::{Axis, LimitArgs, Mode, SweepArgs};
use crate::commands::{
    describe_activation, execute, reject_unused, warn_degenerate_activation, CmdResult, ModeConfig,
};
use crate::header::Header;
use crate::io;

const COLUMNS: &str = "cell\toutcome\tsteps\tfinal\tconsensus\terror";
const MAX_SEED_CELLS: u64 = 1_000_000;

fn parse_seed_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("--seeds: expected an inclusive range A..B, got '{s}'"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("--seeds: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("--seeds: {e}"))?;
    if a > b {
        return Err(format!("--seeds: range {a}..{b} runs backwards"));
    }
    if b - a >= MAX_SEED_CELLS {
        return Err(format!("--seeds: range spans more than {MAX_SEED_CELLS} cells"));
    }
    Ok((a, b))
}

fn trace_row(label: &str, trace: &Trace) -> (String, bool) {
    let (outcome, steps) = match &trace.outcome {
        Outcome::Converged { at_step, .. } => ("converged", *at_step),
        Outcome::Cycled { .. } => ("cycled", trace.steps.len()),
        Outcome::StepLimitReached => ("step-limit", trace.steps.len()),
    };
    let fin = trace.final_profile();
    let row = format!(
        "{label}\t{outcome}\t{steps}\t{}\t{}\t-",
        fin.to_bitstring(),
        io::consensus_flag(fin)
    );
    (row, matches!(trace.outcome, Outcome::Converged { .. }))
}

fn error_row(label: &str, msg: &str) -> (String, bool) {
    let msg = msg.replace(['\t', '\n'], " ");
    (format!("{label}\t-\t-\t-\t-\t{msg}"), false)
}

/// Activation settings from `--prob`/`--probs` against one network.
fn resolve_activation(
    net: &Network,
    prob: &Option<f64>,
    probs_text: &Option<(PathBuf, String)>,
) -> Result<RandomActivation, String> {
    let act = match probs_text {
        Some((path, text)) => {
            RandomActivation::parse(net, text).map_err(|e| io::describe(path, &e))?
        }
        None => RandomActivation::uniform(net, prob.unwrap_or(0.5))
            .map_err(|e| format!("--prob: {e}"))?,
    };
    warn_degenerate_activation(net, &act);
    Ok(act)
}

/// Flag checks that do not need a network: every mode rejects the flags
/// it would silently ignore.
fn check_mode_flags(args: &SweepArgs) -> Result<(), String> {
    let ctx = format!("--mode {}", args.mode.name());
    match args.mode {
        Mode::Sync => {
            reject_unused(args.schedule.is_some(), "--schedule", &ctx)?;
            reject_unused(args.prob.is_some(), "--prob", &ctx)?;
            reject_unused(args.probs.is_some(), "--probs", &ctx)?;
            reject_unused(args.seed.is_some(), "--seed", &ctx)?;
        }
        Mode::Scheduled => {
            if args.schedule.is_none() {
                return Err("--mode scheduled requires --schedule".into());
            }
            reject_unused(args.prob.is_some(), "--prob", &ctx)?;
            reject_unused(args.probs.is_some(), "--probs", &ctx)?;
            reject_unused(args.seed.is_some(), "--seed", &ctx)?;
            reject_unused(args.max_steps.is_some(), "--max-steps", &ctx)?;
        }
        Mode::Random => {
            reject_unused(args.schedule.is_some(), "--schedule", &ctx)?;
        }
    }
    Ok(())
}

/// Mode settings against one network, for the axes that share a single
/// network across cells. The seed is pushed per axis, not here.
fn resolve_mode_for(
    net: &Network,
    args: &SweepArgs,
    seed: u64,
    schedule_text: &Option<(PathBuf, String)>,
    probs_text: &Option<(PathBuf, String)>,
) -> Result<ModeConfig, String> {
    match args.mode {
        Mode::Sync => Ok(ModeConfig::Sync {
            max_steps: args.max_steps.unwrap_or_else(|| default_max_steps(net)),
        }),
        Mode::Scheduled => {
            let (path, text) = schedule_text.as_ref().expect("checked by mode flags");
            Ok(ModeConfig::Scheduled {
                schedule: Schedule::parse(net, text).map_err(|e| io::describe(path, &e))?,
            })
        }
        Mode::Random => Ok(ModeConfig::Random {
            activation: resolve_activation(net, &args.prob, probs_text)?,
            seed,
            max_steps: args.max_steps.unwrap_or_else(|| default_max_steps(net)),
        }),
    }
}

fn describe_mode(header: &mut Header, net: &Network, cfg: &ModeConfig) {
    match cfg {
        ModeConfig::Sync { max_steps } => header.push("max-steps", max_steps),
        ModeConfig::Scheduled { schedule } => header.push("rounds", schedule.len()),
        ModeConfig::Random {
            activation,
            seed,
            max_steps,
        } => {
            describe_activation(header, net, activation);
            header.push("seed", seed);
            header.push("max-steps", max_steps);
        }
    }
}

/// `*.net` files of a directory, sorted by file name.
fn net_files(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| format!("{}: {e}", dir.display()))?.path();
        if path.extension().is_some_and(|x| x == "net") && path.is_file() {
            files.push(path);
        }
    }
    files.sort_by_key(|p| p.file_name().map(|n| n.to_owned()));
    Ok(files)
}

fn read_flag_file(path: &Option<PathBuf>) -> Result<Option<(PathBuf, String)>, String> {
    match path {
        Some(p) => Ok(Some((p.clone(), io::read_to_string(p)?))),
        None => Ok(None),
    }
}

pub fn run(args: &SweepArgs) -> Result<CmdResult, String> {
    check_mode_flags(args)?;
    if args.axis != Axis::Seeds && args.seeds.is_some() {
        return Err("--seeds only applies to --axis seeds".into());
    }
    let limits = args.limits.resolve();

    let mut header = Header::new("sweep");
    header.push("axis", args.axis.name());
    let schedule_text = read_flag_file(&args.schedule)?;
    let probs_text = read_flag_file(&args.probs)?;
    if let Some((p, _)) = &schedule_text {
        header.push("schedule", p.display());
    }
    if let Some((p, _)) = &probs_text {
        header.push("probs", p.display());
    }

    let rows: Vec<(String, bool)> = match args.axis {
        Axis::Seeds => seeds_axis(args, &mut header, &schedule_text, &probs_text)?,
        Axis::Profiles => profiles_axis(args, &limits, &mut header, &schedule_text, &probs_text)?,
        Axis::Networks => networks_axis(args, &mut header, &schedule_text, &probs_text)?,
    };
    header.push("limits", LimitArgs::describe(&limits));
    header.push("cells", rows.len());

    let converged = rows.iter().filter(|(_, c)| *c).count();
    let mut table = header.render();
    table.push_str(COLUMNS);
    table.push('\n');
    for (row, _) in &rows {
        table.push_str(row);
        table.push('\n');
    }
    table.push_str(&format!("# converged: {converged}/{}\n", rows.len()));

    let stdout = match &args.output {
        Some(path) => {
            io::write_file(path, &table)?;
            header.render()
                + &format!("output: {}\nconverged: {converged}/{}\n", path.display(), rows.len())
        }
        None => table,
    };
    Ok(CmdResult::ok(stdout))
}

/// The single network shared by the seeds and profiles axes.
fn shared_network(args: &SweepArgs, header: &mut Header) -> Result<Network, String> {
    if args.networks_dir.is_some() {
        return Err(format!(
            "--axis {} uses --network, not --networks-dir",
            args.axis.name()
        ));
    }
    let path = args
        .network
        .as_ref()
        .ok_or_else(|| format!("--axis {} requires --network", args.axis.name()))?;
    header.push("network", path.display());
    let net = io::load_network(path)?;
    header.push("agents", net.agent_count());
    Ok(net)
}

fn seeds_axis(
    args: &SweepArgs,
    header: &mut Header,
    schedule_text: &Option<(PathBuf, String)>,
    probs_text: &Option<(PathBuf, String)>,
) -> Result<Vec<(String, bool)>, String> {
    if args.mode != Mode::Random {
        return Err("--axis seeds varies the random stream, so it needs --mode random".into());
    }
    if args.seed.is_some() {
        return Err("--seed does not apply to the seeds axis; every cell gets its own".into());
    }
    let range = args
        .seeds
        .as_ref()
        .ok_or("--axis seeds requires --seeds A..B")?;
    let (lo, hi) = parse_seed_range(range)?;

    let net = shared_network(args, header)?;
    let fam = io::load_family(&net, &args.family)?;
    io::describe_family(header, &net, &fam);
    let initial = io::load_initial(&net, &args.initial, &args.initial_file)?;
    header.push("initial", initial.to_bitstring());
    header.push("mode", args.mode.name());

    let activation = resolve_activation(&net, &args.prob, probs_text)?;
    describe_activation(header, &net, &activation);
    let max_steps = args.max_steps.unwrap_or_else(|| default_max_steps(&net));
    header.push("max-steps", max_steps);
    header.push("seeds", format!("{lo}..{hi}"));
    debug_assert!(schedule_text.is_none(), "rejected by mode flags");

    Ok((lo..=hi)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&seed| {
            let cfg = ModeConfig::Random {
                activation: activation.clone(),
                seed,
                max_steps,
            };
            match execute(&net, &fam, &initial, &cfg) {
                Ok(trace) => trace_row(&seed.to_string(), &trace),
                Err(e) => error_row(&seed.to_string(), &e.to_string()),
            }
        })
        .collect())
}

fn profiles_axis(
    args: &SweepArgs,
    limits: &Limits,
    header: &mut Header,
    schedule_text: &Option<(PathBuf, String)>,
    probs_text: &Option<(PathBuf, String)>,
) -> Result<Vec<(String, bool)>, String> {
    if args.initial.is_some() || args.initial_file.is_some() {
        return Err("the profiles axis supplies every starting profile itself; \
                    drop --initial/--initial-file"
            .into());
    }
    let net = shared_network(args, header)?;
    let fam = io::load_family(&net, &args.family)?;
    io::describe_family(header, &net, &fam);
    header.push("mode", args.mode.name());
    let n = net.agent_count();
    Limits::gate("profile sweep", n, limits.exhaustive_agents).map_err(|e| e.to_string())?;

    let cfg = resolve_mode_for(&net, args, args.seed.unwrap_or(0), schedule_text, probs_text)?;
    describe_mode(header, &net, &cfg);

    // Cells run in bitstring order, matching the equilibrium listings.
    let mut masks: Vec<u64> = (0..1u64 << n).collect();
    masks.sort_by_key(|&m| net.profile_from_mask(m).to_bitstring());
    Ok(masks
        .par_iter()
        .map(|&mask| {
            let initial = net.profile_from_mask(mask);
            let label = initial.to_bitstring();
            match execute(&net, &fam, &initial, &cfg) {
                Ok(trace) => trace_row(&label, &trace),
                Err(e) => error_row(&label, &e.to_string()),
            }
        })
        .collect())
}

type NetCell = (
    String,
    Result<(Network, FunctionFamily, BeliefProfile, ModeConfig), String>,
);

fn networks_axis(
    args: &SweepArgs,
    header: &mut Header,
    schedule_text: &Option<(PathBuf, String)>,
    probs_text: &Option<(PathBuf, String)>,
) -> Result<Vec<(String, bool)>, String> {
    if args.network.is_some() {
        return Err("--axis networks uses --networks-dir, not --network".into());
    }
    let dir = args
        .networks_dir
        .as_ref()
        .ok_or("--axis networks requires --networks-dir")?;
    header.push("networks-dir", dir.display());

    // The bitstring is reparsed against every network; length mismatches
    // surface as per-cell errors, not as a failed sweep.
    let initial_bits = match (&args.initial, &args.initial_file) {
        (Some(bits), None) => bits.trim().to_string(),
        (None, Some(path)) => {
            let text = io::read_to_string(path)?;
            text.lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .ok_or_else(|| format!("{}: no bitstring found", path.display()))?
                .to_string()
        }
        (None, None) => return Err("one of --initial or --initial-file is required".into()),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    header.push("initial", &initial_bits);
    header.push("mode", args.mode.name());
    match args.mode {
        Mode::Sync | Mode::Random => {
            if let Some(ms) = args.max_steps {
                header.push("max-steps", ms);
            } else {
                header.push("max-steps", "default");
            }
        }
        Mode::Scheduled => {}
    }
    if args.mode == Mode::Random {
        if probs_text.is_none() {
            header.push("prob", args.prob.unwrap_or(0.5));
        }
        header.push("seed", args.seed.unwrap_or(0));
    }
    if let Some(f) = &args.family.function_file {
        header.push("function-file", f.display());
    } else {
        header.push("function", &args.family.function);
    }

    let files = net_files(dir)?;
    let cells: Vec<NetCell> = files
        .iter()
        .map(|path| {
            let label = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            let prepared = io::load_network(path).and_then(|net| {
                let fam = io::load_family(&net, &args.family)?;
                let initial = io::parse_bitstring(&net, &initial_bits)
                    .map_err(|e| format!("--initial: {e}"))?;
                let cfg = resolve_mode_for(
                    &net,
                    args,
                    args.seed.unwrap_or(0),
                    schedule_text,
                    probs_text,
                )?;
                Ok((net, fam, initial, cfg))
            });
            (label, prepared)
        })
        .collect();

    Ok(cells
        .par_iter()
        .map(|(label, prepared)| match prepared {
            Ok((net, fam, initial, cfg)) => match execute(net, fam, initial, cfg) {
                Ok(trace) => trace_row(label, &trace),
                Err(e) => error_row(label, &e.to_string()),
            },
            Err(e) => error_row(label, e),
        })
        .collect())
}
