//! Trace files: a config header, one tab-separated record per step, and
//! a trailing outcome line. The format round-trips exactly, so a trace
//! can be re-read and replayed against the network it came from.
//!
//! ```text
//! # command: simulate
//! # initial: 1100
//! ...
//! step<TAB>group<TAB>profile
//! 1<TAB>b1<TAB>1110
//! 2<TAB>b2<TAB>1111
//! # outcome: converged at-step=2 equilibrium=1111
//! ```

use beliefnet::{Network, Outcome, Trace, TraceStep};

use crate::header::Header;

const COLUMNS: &str = "step\tgroup\tprofile";

pub fn render_outcome(outcome: &Outcome) -> String {
    match outcome {
        Outcome::Converged {
            at_step,
            equilibrium,
        } => format!("converged at-step={at_step} equilibrium={equilibrium}"),
        Outcome::Cycled { preperiod, period } => {
            format!("cycled preperiod={preperiod} period={period}")
        }
        Outcome::StepLimitReached => "step-limit".into(),
    }
}

pub fn parse_outcome(net: &Network, s: &str) -> Result<Outcome, String> {
    let mut words = s.split_whitespace();
    let kind = words.next().unwrap_or("");
    let mut fields = Vec::new();
    for w in words {
        let (k, v) = w
            .split_once('=')
            .ok_or_else(|| format!("malformed outcome field '{w}'"))?;
        fields.push((k, v));
    }
    let lookup = |key: &str| {
        fields
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| format!("outcome '{kind}' is missing {key}"))
    };
    match kind {
        "converged" => Ok(Outcome::Converged {
            at_step: lookup("at-step")?
                .parse()
                .map_err(|e| format!("bad at-step: {e}"))?,
            equilibrium: net
                .profile_from_bitstring(lookup("equilibrium")?)
                .map_err(|e| e.to_string())?,
        }),
        "cycled" => Ok(Outcome::Cycled {
            preperiod: lookup("preperiod")?
                .parse()
                .map_err(|e| format!("bad preperiod: {e}"))?,
            period: lookup("period")?
                .parse()
                .map_err(|e| format!("bad period: {e}"))?,
        }),
        "step-limit" => Ok(Outcome::StepLimitReached),
        other => Err(format!("unknown outcome '{other}'")),
    }
}

/// Renders a trace under the given config header. The header must
/// already carry the `initial` profile; records start at step 1.
pub fn render(header: &Header, trace: &Trace) -> String {
    debug_assert_eq!(
        header.get("initial"),
        Some(trace.initial.to_bitstring().as_str()),
        "header and trace disagree on the initial profile"
    );
    let mut out = header.render();
    out.push_str(COLUMNS);
    out.push('\n');
    for (i, step) in trace.steps.iter().enumerate() {
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            i + 1,
            step.group,
            step.profile.to_bitstring()
        ));
    }
    out.push_str(&format!("# outcome: {}\n", render_outcome(&trace.outcome)));
    out
}

/// Reads a trace back against its network. Step indices must run 1, 2,
/// ... without gaps, and the initial profile and outcome must be present.
pub fn parse(net: &Network, text: &str) -> Result<Trace, String> {
    let header = Header::parse(text);
    let initial = net
        .profile_from_bitstring(
            header
                .get("initial")
                .ok_or("trace has no '# initial:' line")?,
        )
        .map_err(|e| format!("initial profile: {e}"))?;
    let outcome = parse_outcome(
        net,
        header.get("outcome").ok_or("trace has no '# outcome:' line")?,
    )?;
    let mut steps = Vec::new();
    let mut saw_columns = false;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if line == COLUMNS {
            if saw_columns {
                return Err(format!("line {lineno}: duplicate column header"));
            }
            saw_columns = true;
            continue;
        }
        if !saw_columns {
            return Err(format!("line {lineno}: record before the column header"));
        }
        let mut cols = line.split('\t');
        let (step, group, profile) = match (cols.next(), cols.next(), cols.next(), cols.next()) {
            (Some(s), Some(g), Some(p), None) => (s, g, p),
            _ => return Err(format!("line {lineno}: expected 3 tab-separated fields")),
        };
        let step: usize = step
            .parse()
            .map_err(|e| format!("line {lineno}: bad step index: {e}"))?;
        if step != steps.len() + 1 {
            return Err(format!(
                "line {lineno}: step {step} out of order, expected {}",
                steps.len() + 1
            ));
        }
        let group = net
            .group_from_str(group)
            .map_err(|e| format!("line {lineno}: {e}"))?;
        let profile = net
            .profile_from_bitstring(profile)
            .map_err(|e| format!("line {lineno}: {e}"))?;
        steps.push(TraceStep { group, profile });
    }
    if !saw_columns {
        return Err("trace has no column header line".into());
    }
    Ok(Trace {
        initial,
        steps,
        outcome,
    })
}
