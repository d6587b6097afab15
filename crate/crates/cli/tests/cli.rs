use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathdensity"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bounds_report_for_half_density() {
    let o = run(&["bounds", "--n", "100", "--e", "2475"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("c             0.495"));
    assert!(text.contains("dominant      clique"));
}

#[test]
fn bounds_sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = run(&["bounds", "--sweep", "--points", "11", "--csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "c,lower,upper_star,upper_clique,dominant");
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[11], "1,1,1,1,tie");
}

#[test]
fn verify_ak_passes() {
    let o = run(&["verify-ak", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS 16/16 edge counts"));
}

#[test]
fn validation_errors_exit_one() {
    assert_eq!(run(&["count", "--input", "missing.txt"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["bounds", "--n", "4", "--e", "7"]).status.code(), Some(1));
    assert_eq!(run(&["search", "--n", "9", "--e", "3"]).status.code(), Some(1));
    assert_eq!(run(&["search", "--n", "5", "--e", "3", "--stat", "p3"]).status.code(), Some(1));
    assert_eq!(run(&["verify-ak", "--n", "8"]).status.code(), Some(1));
    assert_eq!(run(&["optimize", "--c", "1.5"]).status.code(), Some(1));
    assert_eq!(run_stdin(&["count", "--input", "-"], "3 1\n0 0\n").status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn construct_then_count_through_stdin() {
    let o = run(&["construct", "--kind", "quasi-clique", "--n", "5", "--e", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let edges = stdout(&o);
    assert!(edges.starts_with("5 10\n"));
    let c = run_stdin(&["count", "--input", "-", "--k", "3", "--csv"], &edges);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(stdout(&c), "n,e,c,p2,p4,walks4,hom_density_p4,kstar_3\n5,10,0.8,30,60,1280,0.4096,20\n");
}

#[test]
fn count_reads_graph6() {
    let o = run_stdin(&["count", "--input", "-", "--csv"], "Dhc\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "5,5,0.4,5,5,80,0.0256");
}

#[test]
fn construct_kinds() {
    let o = run(&["construct", "--kind", "quasi-star", "--n", "5", "--e", "3"]);
    assert_eq!(stdout(&o), "5 3\n1 4\n2 4\n3 4\n");
    let o = run(&["construct", "--kind", "near-regular", "--n", "6", "--e", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("6 9\n"));
}

#[test]
fn search_outputs() {
    let o = run(&["search", "--n", "5", "--e", "4", "--stat", "p4", "--csv", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("max: 1"));
    assert!(text.contains("n,e,max,min,quasi_star,quasi_clique,near_regular,verdict,num_max_classes\n5,4,1,0,0,0,"));
}

#[test]
fn p4_table_is_deterministic_across_thread_counts() {
    let a = run(&["p4-table", "--n-max", "6"]);
    let b = run(&["--threads", "1", "p4-table", "--n-max", "6"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("n,e,max,min,quasi_star,quasi_clique,near_regular,verdict,num_max_classes\n"));
    assert!(text.contains("\n5,10,60,60,60,60,60,both_attain,1\n"));
}

#[test]
fn optimize_trace_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let out = dir.path().join("best.txt");
    let args = [
        "optimize", "--c", "0.3", "--blocks", "4", "--restarts", "3", "--seed", "5",
        "--trace", trace.to_str().unwrap(), "--output", out.to_str().unwrap(),
    ];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0));
    let t = fs::read_to_string(&trace).unwrap();
    assert!(t.starts_with("iter,move_kind,s_value,t_value,mass\n0,init,"));
    let again = run(&args);
    assert_eq!(o.stdout, again.stdout);
    assert_eq!(t, fs::read_to_string(&trace).unwrap());
    let best = fs::read_to_string(&out).unwrap();
    assert!(stdout(&o).ends_with(&best));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# small run\nn_max = 3\nrestarts = 0\nsamples = 5\nrandom_graphs = 5\npoints = 3\n").unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "p4-table"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last().unwrap().split(',').next(), Some("3"));
    let o = run(&["--config", cfg.to_str().unwrap(), "p4-table", "--n-max", "4"]);
    assert_eq!(stdout(&o).lines().last().unwrap().split(',').next(), Some("4"));
    let o = run(&["--config", cfg.to_str().unwrap(), "bounds", "--sweep"]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = run(&["--config", cfg.to_str().unwrap(), "verify-all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    fs::write(&cfg, "n_max 3\n").unwrap();
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "p4-table"]).status.code(), Some(1));
}

#[test]
fn verify_all_negative_control_exits_two() {
    let o = run(&["verify-all", "--n-max", "3", "--tolerance", "0", "--restarts", "0", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL"));
}
