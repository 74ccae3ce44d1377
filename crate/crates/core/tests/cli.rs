use coalauct::cli::run_command;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_command(args)
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("coalauct-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn e1_goldens() {
    let e1 = fixture("E1.inst");
    assert_eq!(run(&["fcfc", &e1]), (0, "members=[1,2] salaries=[2,2] cost=4\n".into(), String::new()));
    assert_eq!(run(&["rsne-find", &e1]).0, 1);
    assert_eq!(run(&["rsne-find", &e1]).1, "none\n");
    assert_eq!(run(&["vstar", &e1]), (0, "4\n".into(), String::new()));
    assert_eq!(run(&["sne-find", &e1]).1, "profile=[2,2,2]\n");
    assert_eq!(run(&["winner", &e1, "--profile", "3,2,2"]).1, "members=[2,3] salaries=[2,2] cost=4\n");
    assert_eq!(
        run(&["auction-run", &e1]).1,
        "round 1 asking=5 standing members=[1,2] salaries=[2,2] cost=4\nwinner members=[1,2] salaries=[2,2] cost=4\n"
    );
}

#[test]
fn ffc_flags() {
    let e1 = fixture("E1.inst");
    assert_eq!(run(&["ffc", &e1, "--budget", "3"]), (1, "none\n".into(), String::new()));
    assert_eq!(run(&["ffc", &e1, "--exclude", "1", "--pin", "2=3"]).1, "members=[2,3] salaries=[3,2] cost=5\n");
}

#[test]
fn verdicts_map_to_exit_codes() {
    let e1 = fixture("E1.inst");
    assert_eq!(run(&["strong-check", &e1, "--coalition", "raised"]), (1, "false\n".into(), String::new()));
    assert_eq!(run(&["weak-check", &e1, "--coalition", "raised"]), (0, "true\n".into(), String::new()));
    assert_eq!(run(&["rsne-check", &fixture("E3.inst"), "--coalition", "bc"]).0, 0);
    let inline = "members=[1,2] salaries=[2,2] cost=4";
    assert_eq!(run(&["auction-check", &e1, "--coalition", inline]).1, "true\n");
    assert_eq!(run(&["sne-check", &e1, "--profile", "3,2,2"]).0, 1);
}

#[test]
fn errors_exit_two() {
    let e1 = fixture("E1.inst");
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["fcfc", "/nonexistent/file.inst"]).0, 2);
    let (code, out, err) = run(&["rsne-check", &e1, "--coalition", "nope"]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains("nope"));
    assert_eq!(run(&["rsne-check", &e1, "--coalition", "members=[1,9] salaries=[2,2] cost=4"]).0, 2);
    assert_eq!(run(&["winner", &e1, "--profile", "1,2,2"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn parse_errors_carry_location() {
    let zero = scratch("zero.inst", "format 1\nmodel project\nbudget 5\nagent 1 0\noracle predicate\nfeasible 1\n");
    let (code, _, err) = run(&["fcfc", &zero]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4"), "{err}");
    let unknown = scratch("unknown.inst", "format 1\nmodel project\nbudget 5\ncolour blue\n");
    let (code, _, err) = run(&["fcfc", &unknown]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4, column 1"), "{err}");
}

#[test]
fn json_input_matches_line_input() {
    let json = r#"{"format":1,"model":"project","budget":5,
        "agents":[{"id":1,"min_salary":2},{"id":2,"min_salary":2},{"id":3,"min_salary":2}],
        "oracle":{"kind":"predicate","feasible":[{"members":[1,2]},{"members":[1,3]},{"members":[2,3]}]}}"#;
    let path = scratch("e1.json", json);
    assert_eq!(run(&["fcfc", &path]).1, run(&["fcfc", &fixture("E1.inst")]).1);
    let bad = scratch("bad.json", r#"{"format":1,"model":"project","budget":5,"agents":[],"colour":1}"#);
    assert_eq!(run(&["fcfc", &bad]).0, 2);
}

#[test]
fn generated_instances_solve() {
    let (code, text, _) = run(&["gen", "--kind", "partition", "--numbers", "1,2,3"]);
    assert_eq!(code, 0);
    let yes = scratch("part.inst", &text);
    let (code, out, _) = run(&["sched-solve", &yes]);
    assert_eq!(code, 0);
    assert!(out.ends_with("cost=2\n"), "{out}");
    for method in ["ip", "exhaustive", "dp"] {
        assert_eq!(run(&["sched-solve", &yes, "--method", method]).0, 0, "{method}");
    }
    let (_, text, _) = run(&["gen", "--kind", "partition", "--numbers", "1,1,4"]);
    let no = scratch("part-no.inst", &text);
    assert_eq!(run(&["sched-solve", &no]), (1, "none\n".into(), String::new()));

    let (_, text, _) = run(&["gen", "--kind", "x3c", "--elements", "6", "--sets", "0 1 2;3 4 5;1 2 3"]);
    let (code, out, _) = run(&["sched-solve", &scratch("x3c.inst", &text)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("members=[1,2] "), "{out}");
}

#[test]
fn graph_and_corpus() {
    let (code, out, _) = run(&["graph", &fixture("E1.inst"), "--cap", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("vertices=9 edges=48 sinks=0\n"));
    let (code, out, _) = run(&["verify-corpus", "--seed", "7", "--count", "50"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("failures=0\n"), "{out}");
    assert_eq!(out, run(&["verify-corpus", "--seed", "7", "--count", "50"]).1);
}

#[test]
fn rational_fixture_finds_equal_split() {
    let text = std::fs::read_to_string(fixture("E1.inst")).unwrap().replace("numeric int", "numeric rat");
    let path = scratch("e1-rat.inst", &text);
    assert_eq!(run(&["sne-find", &path]).1, "profile=[2,2,2]\n");
    let (code, out, _) = run(&["weak-find", &path]);
    assert_eq!(code, 0);
    assert!(out.ends_with("cost=5\n"), "{out}");
}
