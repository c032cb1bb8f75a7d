//! Behavior of the installed binary: exit statuses, error wording, file
//! outputs, and the replayability promises the headers make.

use std::path::{Path, PathBuf};
use std::process::Command;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn beliefnet(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_beliefnet"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
    }
}

/// Workspace with a K2,2 network (sides a1,a2 and b1,b2) and a 3-agent
/// path, both with explicit self-loops.
fn workspace() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let k22 = "agents: a1,a2,b1,b2\n\
               edge: a1 a1\nedge: a2 a2\nedge: b1 b1\nedge: b2 b2\n\
               edge: a1 b1\nedge: b1 a1\nedge: a1 b2\nedge: b2 a1\n\
               edge: a2 b1\nedge: b1 a2\nedge: a2 b2\nedge: b2 a2\n";
    std::fs::write(dir.path().join("k22.net"), k22).unwrap();
    let path3 = "agents: a,b,c\n\
                 edge: a a\nedge: b b\nedge: c c\n\
                 edge: a b\nedge: b a\nedge: b c\nedge: c b\n";
    std::fs::write(dir.path().join("path3.net"), path3).unwrap();
    let root = dir.path().to_path_buf();
    (dir, root)
}

#[test]
fn help_and_version_exit_zero() {
    let (_d, root) = workspace();
    let help = beliefnet(&root, &["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("simulate"));
    assert!(help.stdout.contains("construct-sequence"));
    let version = beliefnet(&root, &["--version"]);
    assert_eq!(version.code, 0);
    assert!(version.stdout.contains("beliefnet"));
    let bogus = beliefnet(&root, &["simulate", "--no-such-flag"]);
    assert_eq!(bogus.code, 2);
}

#[test]
fn verify_splits_exit_status_by_verdict() {
    let (_d, root) = workspace();
    let pass = beliefnet(&root, &["verify", "--network", "k22.net"]);
    assert_eq!(pass.code, 0, "stderr: {}", pass.stderr);
    assert!(pass.stdout.contains("# result: pass"));
    assert!(pass.stdout.contains("non_slavish\tholds\t-"));

    // Path endpoints poll only two agents, so majority degenerates to a
    // copy of their own bit.
    let fail = beliefnet(&root, &["verify", "--network", "path3.net"]);
    assert_eq!(fail.code, 1);
    assert!(fail.stdout.contains("non_slavish\tfails\tagent="));
    assert!(fail.stdout.contains("# result: fail"));

    let subset = beliefnet(
        &root,
        &["verify", "--network", "path3.net", "--axioms", "bounded,monotonic"],
    );
    assert_eq!(subset.code, 0);
    assert!(!subset.stdout.contains("non_slavish"));

    let bogus = beliefnet(&root, &["verify", "--network", "path3.net", "--axioms", "shiny"]);
    assert_eq!(bogus.code, 2);
    assert!(bogus.stderr.contains("shiny"));
}

#[test]
fn verify_rejects_oversized_jobs_as_usage_errors() {
    let (_d, root) = workspace();
    let r = beliefnet(
        &root,
        &["verify", "--network", "k22.net", "--limit-exhaustive", "3"],
    );
    assert_eq!(r.code, 2);
    assert!(
        r.stderr.contains("capped at 3 agents") && r.stderr.contains("has 4"),
        "stderr: {}",
        r.stderr
    );
}

#[test]
fn missing_and_malformed_inputs_name_the_file_and_line() {
    let (_d, root) = workspace();
    let missing = beliefnet(&root, &["simulate", "--network", "nope.net", "--initial", "1", "--mode", "sync"]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.contains("nope.net"));

    std::fs::write(root.join("broken.net"), "agents: a,b\nedge a b\n").unwrap();
    let broken = beliefnet(&root, &["verify", "--network", "broken.net"]);
    assert_eq!(broken.code, 2);
    assert!(
        broken.stderr.contains("broken.net:2:"),
        "stderr: {}",
        broken.stderr
    );
}

#[test]
fn simulate_reports_cycles_and_respects_mode_flags() {
    let (_d, root) = workspace();
    let cycled = beliefnet(
        &root,
        &["simulate", "--network", "k22.net", "--initial", "1100", "--mode", "sync"],
    );
    assert_eq!(cycled.code, 0);
    assert!(cycled.stdout.contains("outcome: cycled"));
    assert!(cycled.stdout.contains("preperiod: 0"));
    assert!(cycled.stdout.contains("period: 2"));
    assert!(cycled.stdout.contains("consensus: no"));

    let seeded_sync = beliefnet(
        &root,
        &["simulate", "--network", "k22.net", "--initial", "1100", "--mode", "sync", "--seed", "1"],
    );
    assert_eq!(seeded_sync.code, 2);
    assert!(seeded_sync.stderr.contains("--seed"));

    let no_schedule = beliefnet(
        &root,
        &["simulate", "--network", "k22.net", "--initial", "1100", "--mode", "scheduled"],
    );
    assert_eq!(no_schedule.code, 2);
    assert!(no_schedule.stderr.contains("--schedule"));

    let both_initials = beliefnet(
        &root,
        &[
            "simulate", "--network", "k22.net", "--initial", "1100", "--initial-file", "x",
            "--mode", "sync",
        ],
    );
    assert_eq!(both_initials.code, 2);

    let neither_initial = beliefnet(
        &root,
        &["simulate", "--network", "k22.net", "--mode", "sync"],
    );
    assert_eq!(neither_initial.code, 2);
    assert!(neither_initial.stderr.contains("--initial"));
}

#[test]
fn simulate_reads_initial_profiles_from_files() {
    let (_d, root) = workspace();
    std::fs::write(root.join("start.bits"), "# k22 start\n1100\n").unwrap();
    let r = beliefnet(
        &root,
        &[
            "simulate", "--network", "k22.net", "--initial-file", "start.bits",
            "--mode", "random", "--seed", "7",
        ],
    );
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert!(r.stdout.contains("# initial: 1100"));
    assert!(r.stdout.contains("outcome: converged"));
}

#[test]
fn traces_written_by_simulate_replay_through_scheduled_mode() {
    let (_d, root) = workspace();
    let r = beliefnet(
        &root,
        &[
            "simulate", "--network", "k22.net", "--initial", "1100", "--mode", "random",
            "--seed", "3", "--trace", "run.trace",
        ],
    );
    assert_eq!(r.code, 0);
    let trace = std::fs::read_to_string(root.join("run.trace")).unwrap();
    assert!(trace.contains("# seed: 3"));
    assert!(trace.contains("step\tgroup\tprofile"));
    assert!(trace.contains("# outcome:"));

    // The recorded groups form a schedule that lands on the same final
    // profile.
    let final_line = r
        .stdout
        .lines()
        .find(|l| l.starts_with("final: "))
        .unwrap()
        .to_string();
    let groups: Vec<&str> = trace
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("step\t"))
        .map(|l| l.split('\t').nth(1).unwrap())
        .collect();
    let schedule_text = groups.join("\n") + "\n";
    std::fs::write(root.join("replay.sched"), schedule_text).unwrap();
    let replay = beliefnet(
        &root,
        &[
            "simulate", "--network", "k22.net", "--initial", "1100", "--mode", "scheduled",
            "--schedule", "replay.sched",
        ],
    );
    assert_eq!(replay.code, 0);
    assert!(replay.stdout.contains(&final_line), "stdout: {}", replay.stdout);
}

#[test]
fn analyze_exports_dot_and_lists_equilibria() {
    let (_d, root) = workspace();
    let nothing = beliefnet(&root, &["analyze", "--network", "k22.net"]);
    assert_eq!(nothing.code, 2);
    assert!(nothing.stderr.contains("nothing to do"));

    let r = beliefnet(
        &root,
        &[
            "analyze", "--network", "k22.net", "--equilibria", "--transition-graph", "tg.dot",
            "--condensation", "cond.dot", "--reachable-from", "1100",
        ],
    );
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert!(r.stdout.contains("equilibria-count: 6"));
    assert!(r.stdout.contains("equilibrium: 0000 consensus=yes"));
    assert!(r.stdout.contains("equilibrium: 0101 consensus=no"));
    assert!(r.stdout.contains("leaves-are-equilibria: yes"));
    assert!(r.stdout.contains("reachable-count: 6"));

    let tg = std::fs::read_to_string(root.join("tg.dot")).unwrap();
    assert!(tg.starts_with("digraph transitions {"));
    assert!(tg.contains("\"0000\" [shape=doublecircle];"));
    assert!(tg.contains("label="));
    let cond = std::fs::read_to_string(root.join("cond.dot")).unwrap();
    assert!(cond.starts_with("digraph condensation {"));

    let bad_bits = beliefnet(
        &root,
        &["analyze", "--network", "k22.net", "--reachable-from", "11"],
    );
    assert_eq!(bad_bits.code, 2);
    assert!(bad_bits.stderr.contains("--reachable-from"));
}

#[test]
fn constructed_schedules_replay_and_flipper_reports_failure() {
    let (_d, root) = workspace();
    let r = beliefnet(
        &root,
        &[
            "construct-sequence", "--network", "k22.net", "--initial", "1100",
            "--schedule-out", "conv.sched",
        ],
    );
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("reached-equilibrium: yes"));
    let final_line = r
        .stdout
        .lines()
        .find(|l| l.starts_with("final: "))
        .unwrap()
        .to_string();

    let replay = beliefnet(
        &root,
        &[
            "simulate", "--network", "k22.net", "--initial", "1100", "--mode", "scheduled",
            "--schedule", "conv.sched",
        ],
    );
    assert_eq!(replay.code, 0, "stderr: {}", replay.stderr);
    assert!(replay.stdout.contains("outcome: converged"));
    assert!(replay.stdout.contains(&final_line));

    // Flipper never settles, and the command says so in its exit status.
    let flip = beliefnet(
        &root,
        &[
            "construct-sequence", "--network", "k22.net", "--initial", "1100",
            "--function", "flipper",
        ],
    );
    assert_eq!(flip.code, 1);
    assert!(flip.stdout.contains("reached-equilibrium: no"));
}

#[test]
fn analyze_construct_sequence_flag_matches_the_command() {
    let (_d, root) = workspace();
    let r = beliefnet(
        &root,
        &["analyze", "--network", "k22.net", "--construct-sequence", "1100"],
    );
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("sequence-final: 1111"));
    assert!(r.stdout.contains("reached-equilibrium: yes"));

    let deco = beliefnet(
        &root,
        &[
            "analyze", "--network", "k22.net", "--construct-sequence", "1100",
            "--decreasing-first",
        ],
    );
    assert_eq!(deco.code, 0);
    assert!(deco.stdout.contains("sequence-final: 0000"));

    // The order flag is tied to the construction.
    let dangling = beliefnet(
        &root,
        &["analyze", "--network", "k22.net", "--equilibria", "--decreasing-first"],
    );
    assert_eq!(dangling.code, 2);
}

#[test]
fn per_agent_function_files_show_up_in_headers() {
    let (_d, root) = workspace();
    std::fs::write(root.join("roles.fam"), "a: stubborn\nb: majority\nc: threshold:2\n").unwrap();
    let r = beliefnet(
        &root,
        &[
            "verify", "--network", "path3.net", "--function-file", "roles.fam",
            "--axioms", "bounded",
        ],
    );
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert!(r.stdout.contains("# assign: a stubborn"));
    assert!(r.stdout.contains("# assign: c threshold:2"));

    let incomplete = beliefnet(
        &root,
        &["verify", "--network", "k22.net", "--function-file", "roles.fam"],
    );
    assert_eq!(incomplete.code, 2);
}

#[test]
fn sweep_validates_axis_flag_combinations() {
    let (_d, root) = workspace();
    let sync_seeds = beliefnet(
        &root,
        &[
            "sweep", "--axis", "seeds", "--network", "k22.net", "--initial", "1100",
            "--mode", "sync", "--seeds", "0..3",
        ],
    );
    assert_eq!(sync_seeds.code, 2);
    assert!(sync_seeds.stderr.contains("--mode random"));

    let profile_initial = beliefnet(
        &root,
        &[
            "sweep", "--axis", "profiles", "--network", "k22.net", "--initial", "1100",
            "--mode", "sync",
        ],
    );
    assert_eq!(profile_initial.code, 2);

    let backwards = beliefnet(
        &root,
        &[
            "sweep", "--axis", "seeds", "--network", "k22.net", "--initial", "1100",
            "--mode", "random", "--seeds", "9..2",
        ],
    );
    assert_eq!(backwards.code, 2);
    assert!(backwards.stderr.contains("backwards"));

    let stray_seeds = beliefnet(
        &root,
        &[
            "sweep", "--axis", "profiles", "--network", "k22.net", "--mode", "sync",
            "--seeds", "0..3",
        ],
    );
    assert_eq!(stray_seeds.code, 2);
}

#[test]
fn sweeps_run_cells_in_order_and_keep_going_past_errors() {
    let (_d, root) = workspace();
    let seeds = beliefnet(
        &root,
        &[
            "sweep", "--axis", "seeds", "--network", "k22.net", "--initial", "1100",
            "--mode", "random", "--seeds", "0..9",
        ],
    );
    assert_eq!(seeds.code, 0);
    let cells: Vec<&str> = seeds
        .stdout
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("cell\t"))
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    assert_eq!(cells, ["0", "1", "2", "3", "4", "5", "6", "7", "8", "9"]);
    assert!(seeds.stdout.contains("# converged: 10/10"));

    let profiles = beliefnet(
        &root,
        &["sweep", "--axis", "profiles", "--network", "path3.net", "--mode", "sync"],
    );
    assert_eq!(profiles.code, 0);
    assert!(profiles.stdout.contains("# cells: 8"));
    assert!(profiles.stdout.contains("# converged: 8/8"));
    let first_cell = profiles
        .stdout
        .lines()
        .find(|l| !l.starts_with('#') && !l.starts_with("cell\t"))
        .unwrap();
    assert!(first_cell.starts_with("000\t"), "row: {first_cell}");

    // A directory with one bad file still sweeps the good ones.
    let nets = root.join("nets");
    std::fs::create_dir(&nets).unwrap();
    std::fs::copy(root.join("k22.net"), nets.join("k22.net")).unwrap();
    std::fs::write(nets.join("bad.net"), "garbage\n").unwrap();
    std::fs::write(nets.join("ignored.txt"), "not a network\n").unwrap();
    let dirs = beliefnet(
        &root,
        &[
            "sweep", "--axis", "networks", "--networks-dir", "nets", "--initial", "1100",
            "--mode", "sync",
        ],
    );
    assert_eq!(dirs.code, 0, "stderr: {}", dirs.stderr);
    assert!(dirs.stdout.contains("# cells: 2"));
    let bad_row = dirs
        .stdout
        .lines()
        .find(|l| l.starts_with("bad.net\t"))
        .unwrap();
    assert!(bad_row.contains("bad.net:1:"), "row: {bad_row}");
    assert!(dirs.stdout.contains("k22.net\tcycled"));
    assert!(dirs.stdout.contains("# converged: 0/2"));
}

#[test]
fn sweep_output_file_holds_the_full_table() {
    let (_d, root) = workspace();
    let r = beliefnet(
        &root,
        &[
            "sweep", "--axis", "seeds", "--network", "k22.net", "--initial", "1100",
            "--mode", "random", "--seeds", "0..4", "--output", "table.tsv",
        ],
    );
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("output: table.tsv"));
    assert!(r.stdout.contains("converged: 5/5"));
    assert!(!r.stdout.contains("cell\t"), "table should live in the file");
    let table = std::fs::read_to_string(root.join("table.tsv")).unwrap();
    assert!(table.contains("cell\toutcome\tsteps\tfinal\tconsensus\terror"));
    assert!(table.contains("# converged: 5/5"));
}

#[test]
fn degenerate_activation_probabilities_warn_on_stderr() {
    let (_d, root) = workspace();
    std::fs::write(
        root.join("pinned.probs"),
        "a1: 1.0\na2: 0.5\nb1: 0.5\nb2: 0\n",
    )
    .unwrap();
    let r = beliefnet(
        &root,
        &[
            "simulate", "--network", "k22.net", "--initial", "1100", "--mode", "random",
            "--probs", "pinned.probs", "--seed", "1",
        ],
    );
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert!(
        r.stderr.contains("a1=1") && r.stderr.contains("b2=0"),
        "stderr: {}",
        r.stderr
    );
    assert!(r.stdout.contains("# prob: a1=1"));

    // In-range probabilities stay quiet.
    let quiet = beliefnet(
        &root,
        &["simulate", "--network", "k22.net", "--initial", "1100", "--mode", "random"],
    );
    assert_eq!(quiet.stderr, "");
}

#[test]
fn headers_rerun_to_the_same_output() {
    let (_d, root) = workspace();
    let args = [
        "simulate", "--network", "k22.net", "--initial", "0110", "--mode", "random",
        "--seed", "11", "--max-steps", "500",
    ];
    let a = beliefnet(&root, &args);
    let b = beliefnet(&root, &args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    // The header names every resolved setting, including the defaults.
    for key in ["# command:", "# network:", "# function:", "# initial:", "# mode:", "# prob:", "# seed:", "# max-steps:"] {
        assert!(a.stdout.contains(key), "missing {key} in: {}", a.stdout);
    }
}
