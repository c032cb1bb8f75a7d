//! File loading and error formatting. All failures become strings of the
//! shape `path: message` or `path:line: message` and exit with status 2.

use std::path::Path;

use beliefnet::{BeliefProfile, Error, FunctionFamily, Network, RandomActivation, Schedule};

use crate::args::FamilyArgs;

pub fn describe(path: &Path, err: &Error) -> String {
    match err {
        Error::Parse { line, msg } => format!("{}:{line}: {msg}", path.display()),
        other => format!("{}: {other}", path.display()),
    }
}

pub fn read_to_string(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

/// Loads and parses a network; self-loop insertions are warned to stderr.
pub fn load_network(path: &Path) -> Result<Network, String> {
    let text = read_to_string(path)?;
    let parsed = Network::parse(&text).map_err(|e| describe(path, &e))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.network)
}

pub fn load_family(net: &Network, args: &FamilyArgs) -> Result<FunctionFamily, String> {
    match &args.function_file {
        Some(path) => {
            let text = read_to_string(path)?;
            FunctionFamily::parse_assignments(net, &text).map_err(|e| describe(path, &e))
        }
        None => {
            let f = beliefnet::EvolutionFunction::parse_selector(&args.function)
                .map_err(|e| format!("--function: {e}"))?;
            Ok(FunctionFamily::homogeneous(net, f))
        }
    }
}

/// Writes the family into header lines: one `function` line when every
/// agent runs the same rule, per-agent `assign` lines otherwise.
pub fn describe_family(header: &mut crate::header::Header, net: &Network, fam: &FunctionFamily) {
    match fam.as_homogeneous() {
        Some(f) => header.push("function", f.selector()),
        None => {
            for a in net.agents() {
                let f = fam.function_of(a).expect("family covers the roster");
                header.push("assign", format!("{a} {}", f.selector()));
            }
        }
    }
}

pub fn parse_bitstring(net: &Network, s: &str) -> Result<BeliefProfile, String> {
    net.profile_from_bitstring(s.trim()).map_err(|e| e.to_string())
}

/// Resolves `--initial BITS` / `--initial-file FILE`, requiring exactly
/// one. A profile file holds the bitstring on its first non-comment line.
pub fn load_initial(
    net: &Network,
    initial: &Option<String>,
    initial_file: &Option<std::path::PathBuf>,
) -> Result<BeliefProfile, String> {
    match (initial, initial_file) {
        (Some(bits), None) => parse_bitstring(net, bits).map_err(|e| format!("--initial: {e}")),
        (None, Some(path)) => {
            let text = read_to_string(path)?;
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .ok_or_else(|| format!("{}: no bitstring found", path.display()))?;
            parse_bitstring(net, line).map_err(|e| describe_str(path, &e))
        }
        (None, None) => Err("one of --initial or --initial-file is required".into()),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    }
}

fn describe_str(path: &Path, msg: &str) -> String {
    format!("{}: {msg}", path.display())
}

pub fn load_schedule(net: &Network, path: &Path) -> Result<Schedule, String> {
    let text = read_to_string(path)?;
    Schedule::parse(net, &text).map_err(|e| describe(path, &e))
}

pub fn load_probs(net: &Network, path: &Path) -> Result<RandomActivation, String> {
    let text = read_to_string(path)?;
    RandomActivation::parse(net, &text).map_err(|e| describe(path, &e))
}

pub fn consensus_flag(p: &BeliefProfile) -> &'static str {
    if p.is_consensus() {
        "yes"
    } else {
        "no"
    }
}
