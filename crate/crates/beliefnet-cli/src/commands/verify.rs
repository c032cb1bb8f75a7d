use beliefnet::{check_axiom, Axiom};

use crate::args::{LimitArgs, VerifyArgs};
use crate::commands::CmdResult;
use crate::header::Header;
use crate::io;

fn parse_axioms(s: &str) -> Result<Vec<Axiom>, String> {
    if s.trim() == "all" {
        return Ok(Axiom::ALL.to_vec());
    }
    s.split(',')
        .map(|w| Axiom::parse(w.trim()).map_err(|e| format!("--axioms: {e}")))
        .collect()
}

pub fn run(args: &VerifyArgs) -> Result<CmdResult, String> {
    let net = io::load_network(&args.network)?;
    let fam = io::load_family(&net, &args.family)?;
    let limits = args.limits.resolve();
    let axioms = parse_axioms(&args.axioms)?;

    let mut header = Header::new("verify");
    header.push("network", args.network.display());
    header.push("agents", net.agent_count());
    io::describe_family(&mut header, &net, &fam);
    header.push(
        "axioms",
        axioms
            .iter()
            .map(|a| a.name())
            .collect::<Vec<_>>()
            .join(","),
    );
    header.push("limits", LimitArgs::describe(&limits));

    let mut out = header.render();
    out.push_str("axiom\tverdict\twitness\n");
    let mut failures = 0;
    for ax in axioms {
        let report = check_axiom(ax, &net, &fam, &limits).map_err(|e| e.to_string())?;
        let witness = match &report.witness {
            Some(w) => w.to_string(),
            None => "-".into(),
        };
        let verdict = if report.holds { "holds" } else { "fails" };
        out.push_str(&format!("{}\t{verdict}\t{witness}\n", report.axiom));
        failures += usize::from(!report.holds);
    }
    out.push_str(&format!(
        "# result: {}\n",
        if failures == 0 { "pass" } else { "fail" }
    ));
    Ok(CmdResult {
        stdout: out,
        exit: i32::from(failures > 0),
    })
}
