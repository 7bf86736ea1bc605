use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_farey-bary"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn delta_fixed_depth_golden() {
    let o = run(&["delta", "--point", "3/5,1/5", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"value\":\"5/9,1/9\",\"depth_used\":2,\"exact\":true}\n");
}

#[test]
fn inverse_fixed_depth_golden() {
    let o = run(&["inverse", "--point", "14/27,1/27", "--depth", "3"]);
    assert_eq!(stdout(&o), "{\"value\":\"4/7,1/7\",\"depth_used\":3,\"exact\":true}\n");
}

#[test]
fn periodic_rational_golden() {
    let o = run(&["periodic-rational", "--period", "1(II)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"point\":\"5/6,1/2\",\"spec\":\"[1(II)]^inf\"}\n");
}

#[test]
fn expand_reports_vertex_hit() {
    let o = run(&["expand", "--point", "2/3,1/3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["termination"]["kind"], "vertex_hit");
    assert_eq!(v["termination"]["depth"], 1);
}

#[test]
fn periodic_cubic_reports_polynomials() {
    let o = run(&["periodic-cubic", "--period", "1(II)"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["char_poly"], "x^3 - x^2 - x - 1");
    assert_eq!(v["alpha"]["min_poly"], "4*x^3 - 4*x^2 + 2*x - 1");
    assert_eq!(v["beta"]["min_poly"], "4*x^3 + 4*x^2 - 1");
    assert_eq!(v["field_dimension"], 3);
}

#[test]
fn delta_with_tolerance_round_trips() {
    let o = run(&["delta", "--point", "1/3,1/7", "--tol", "1/1000000"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let img = v["value"].as_str().unwrap().to_string();
    let o = run(&["inverse", "--point", &img, "--tol", "1/1000000"]);
    let w: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(w["value"], "1/3,1/7");
}

#[test]
fn ratio_lines() {
    let o = run(&["ratio", "--sequence", "1(II),1(II),1(II)"]);
    let lines: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[2].contains("\"ratio\":\"5/3\""));
}

#[test]
fn lemma_tuples() {
    let o = run(&["lemma", "1,2,3,5", "4,4,4,3/2"]);
    let out = stdout(&o);
    assert_eq!(out.matches("\"holds\":true").count(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["delta", "--point", "1/2,3/4", "--tol", "1/10"]).status.code(), Some(2));
    assert_eq!(run(&["delta", "--point", "0.5,0.1", "--tol", "1/10"]).status.code(), Some(2));
    assert_eq!(run(&["expand", "--point", "1/2"]).status.code(), Some(2));
    assert_eq!(run(&["ratio", "--sequence", "2(IV)"]).status.code(), Some(2));
    let o = run(&["periodic-cubic", "--period", "1(I)"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8(o.stderr).unwrap().contains("\"error\""));
}

#[test]
fn mc_is_reproducible_and_reads_config() {
    let a = run(&["mc", "--samples", "50", "--depth", "20", "--seed", "7"]);
    let b = run(&["mc", "--samples", "50", "--depth", "20", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("mc.conf");
    std::fs::write(&cfg, "samples=50\ndepth=20\nseed=7\n").unwrap();
    let c = run(&["mc", "--config", cfg.to_str().unwrap()]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.svg");
    let p2 = dir.path().join("b.svg");
    for p in [&p1, &p2] {
        let o = run(&["render", "--kind", "farey", "--depth", "3", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let a = std::fs::read(&p1).unwrap();
    assert_eq!(a, std::fs::read(&p2).unwrap());
    assert_eq!(String::from_utf8(a).unwrap().matches("<polygon").count(), 27);
}

#[test]
fn render_depth_limit_from_environment() {
    let o = run(&["render", "--kind", "bary", "--depth", "8"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin()
        .args(["render", "--kind", "bary", "--depth", "2"])
        .env("FAREY_BARY_MAX_RENDER_DEPTH", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["render", "--kind", "bary", "--depth", "0"]);
    assert_eq!(stdout(&o).matches("<polygon").count(), 1);
}
