use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn capdp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capdp")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("capdp-cli-test-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_prints_a_report() {
    let f = scratch("ks.txt", "# three items\n3 5\n2 3\n2 3\n3 4\n");
    let o = capdp(&["check", "knapsack", "td", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("value=7"), "{out}");
    assert!(out.contains("agreement=true"), "{out}");
}

#[test]
fn exit_codes() {
    let missing = capdp(&["solve", "knapsack", "td", "/nonexistent/capdp.txt"]);
    assert_eq!(missing.status.code(), Some(2));

    let bad = scratch("bad.txt", "2 5\n1 x\n");
    let o = capdp(&["solve", "knapsack", "td", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 3"), "error names the position");

    let ok = scratch("ok.txt", "1 1\n1 1\n");
    assert_eq!(capdp(&["solve", "knapsack", "greedy", ok.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(capdp(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(capdp(&["bench", "no-such-suite"]).status.code(), Some(1));

    // Edge-listed Monge graph whose at-most profile (2, 2, 3) is not concave.
    let monge = scratch("m.txt", "4 4 0 3\n0 1 1\n1 2 1\n2 3 1\n0 3 2\n");
    let o = capdp(&["solve", "monge", "best-path", monge.to_str().unwrap(), "--k", "2"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn generated_instances_round_trip() {
    let cases: [(&[&str], &str, &str); 5] = [
        (&["gen", "knapsack", "--n", "20", "--capacity", "100"], "knapsack", "value-domain"),
        (&["gen", "unbounded", "--n", "10", "--capacity", "5000", "--family", "small-m"], "unbounded", "doubling"),
        (&["gen", "dag", "--n", "15"], "dag", "lagrangian"),
        (&["gen", "monge", "--shape", "perturbed", "--n", "12"], "monge", "all-k"),
        (&["gen", "sequence", "--n", "200", "--k", "7", "--delta", "4"], "sequence", "separated"),
    ];
    for (i, (gen, kind, algo)) in cases.into_iter().enumerate() {
        let path = scratch(&format!("gen{i}.txt"), "");
        let mut args = gen.to_vec();
        args.extend(["--seed", "5", "--out", path.to_str().unwrap()]);
        assert_eq!(capdp(&args).status.code(), Some(0), "{gen:?}");
        let o = capdp(&["check", kind, algo, path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{kind} {algo}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("agreement=true"));
    }
}

#[test]
fn bench_writes_csv() {
    let o = capdp(&["bench", "conv-linearity", "--quick"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(capdp_cli::bench::CSV_HEADER));
    assert!(lines.count() > 0);
}
