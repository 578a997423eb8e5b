use std::path::PathBuf;
use std::process::{Command, Output};

fn filtcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_filtcat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn op_on_default_instance() {
    let o = filtcat(&["op", "--kind", "im", "f"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "im(f): dims 2,3,4,5,5\n");
    let o = filtcat(&["op", "--kind", "coim", "--name", "f"]);
    assert_eq!(stdout(&o), "coim(f): dims 1,2,3,4,5\n");
}

#[test]
fn demo_prints_table_and_verdict() {
    let o = filtcat(&["demo", "coim-vs-im"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("coker f (pointwise)    1   1   1   1   0"));
    assert!(out.trim_end().ends_with("f is mono+epi but not strict"));
}

#[test]
fn verify_main1() {
    let o = filtcat(&["verify", "--suite", "main1", "--trials", "200", "--seed", "42"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "200/200 passed\n");
}

#[test]
fn unknown_command_exits_nonzero() {
    let o = filtcat(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown command"));
}

#[test]
fn json_output_is_deterministic() {
    let a = filtcat(&["strict", "f", "--json"]);
    let b = filtcat(&["strict", "f", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("\"strict\": false"));
}

#[test]
fn chained_commands_through_files() {
    let step1 = scratch("cone.json");
    let o = filtcat(&["cone", "f", "--out", step1.to_str().unwrap()]);
    assert!(o.status.success());
    let step2 = scratch("lkappa.json");
    let o = filtcat(&["lkappa", "cone(f)", "--in", step1.to_str().unwrap(), "--out", step2.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("augmentation is a quasi-isomorphism: true"));
    let o = filtcat(&["cohomology", "cone(f)", "0", "--in", step2.to_str().unwrap()]);
    assert_eq!(stdout(&o), "H^0(cone(f)): dims 1,1,1,1,0\n");
}

#[test]
fn generated_instances_load() {
    let path = scratch("gen.json");
    for kind in ["functor", "filtered", "morphism", "complex", "module"] {
        let o = filtcat(&["generate", "--kind", kind, "--seed", "11", "--out", path.to_str().unwrap()]);
        assert!(o.status.success(), "{kind}");
        let o = filtcat(&["check", "--in", path.to_str().unwrap()]);
        assert!(o.status.success(), "{kind}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = filtcat(&["ring-check", "--in", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "A: valid\nM: valid\n");
}
