use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn missions() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../missions")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_missionspec")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn compile_sc1_to_ltl() {
    let sc1 = missions().join("sc1.mission");
    let o = run(&["compile", sc1.to_str().unwrap(), "--logic", "ltl"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("(G (F ((l1) & (F ((l2) & (F ((l3) & (F (l4)))))))))"), "{text}");
    assert!(text.contains("(G ((l1) -> (X ((!l1) U (l4)))))"));
    assert!(text.trim_end().ends_with("(G ((human) -> (grasp)))"));
}

#[test]
fn compile_to_each_format() {
    let sc5 = missions().join("sc5.mission");
    let sc5 = sc5.to_str().unwrap();
    let smv = stdout(&run(&["compile", sc5, "--logic", "ctl", "--format", "smv-ctl"]));
    assert!(smv.contains("AF (area1)") && smv.contains("AG ((fire) -> (notify))"), "{smv}");
    let spin = stdout(&run(&["compile", sc5, "--format", "spin-ltl"]));
    assert!(spin.contains("[]"), "{spin}");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sc5.ltl");
    assert_eq!(code(&run(&["compile", sc5, "--out", out.to_str().unwrap()])), 0);
    assert!(fs::read_to_string(out).unwrap().contains("F (area3)"));
}

#[test]
fn eval_trace_verdicts_and_exit_codes() {
    let sat = run(&["eval-trace", "--formula", "G !l1", "--trace", "stem:; loop: l2"]);
    assert_eq!((code(&sat), stdout(&sat).trim()), (0, "SAT"));
    let unsat = run(&["eval-trace", "--formula", "G !l1", "--trace", "stem: l1; loop: l2"]);
    assert_eq!((code(&unsat), stdout(&unsat).trim()), (1, "UNSAT"));
    let forced = run(&["eval-trace", "--formula", "G !l1", "--trace", "stem: l1; loop: l2", "--exit-zero"]);
    assert_eq!(code(&forced), 0);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.lasso");
    fs::write(&file, "stem: l1, {l2, a}\nloop: l3\n").unwrap();
    let o = run(&["eval-trace", "--formula", "F (l2 & a)", "--trace-file", file.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "SAT");
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["gen-world"])), 2, "seed is required");
    assert_eq!(code(&run(&["eval-trace", "--formula", "G (", "--trace", "stem:; loop: l1"])), 2);
    assert_eq!(code(&run(&["plan", "--formula", "F l1"])), 2, "formula without a world");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mission");
    fs::write(&bad, "visit l1 and\n  dance with l2\n").unwrap();
    let o = run(&["compile", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:3"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn worlds_are_reproducible_and_reloadable() {
    let a = run(&["gen-world", "--seed", "5", "--variant", "directed"]);
    let b = run(&["gen-world", "--seed", "5", "--variant", "directed"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let world = dir.path().join("w.txt");
    fs::write(&world, &a.stdout).unwrap();
    let w = world.to_str().unwrap();
    let by_file = run(&["plan", "--world", w, "--formula", "F l7", "--json"]);
    let by_seed = run(&["plan", "--seed", "5", "--variant", "directed", "--formula", "F l7", "--json"]);
    assert_eq!(by_file.stdout, by_seed.stdout);
    let plan: serde_json::Value = serde_json::from_slice(&by_file.stdout).unwrap();
    let first = plan["stem"].get(0).unwrap_or(&plan["loop"][0]);
    assert_eq!(first["state"], "l0");
}

#[test]
fn checks_report_verdicts() {
    let holds = run(&["check-ltl", "--seed", "2", "--formula", "G (l0 | !l0)"]);
    assert_eq!((code(&holds), stdout(&holds).trim()), (0, "holds"));
    let fails = run(&["check-ltl", "--seed", "2", "--formula", "G !l3"]);
    assert_eq!(code(&fails), 1);
    assert!(stdout(&fails).contains("counterexample"));
    let ctl = run(&["check-ctl", "--seed", "2", "--formula", "EF l3", "--exit-zero"]);
    assert_eq!((code(&ctl), stdout(&ctl).trim()), (0, "holds"));
    let none = run(&["plan", "--seed", "2", "--formula", "G l3"]);
    assert_eq!((code(&none), stdout(&none).trim()), (1, "no plan"));
}

#[test]
fn emit_smv_for_a_mission_in_a_world() {
    let dir = tempfile::tempdir().unwrap();
    let mission = dir.path().join("m.mission");
    fs::write(&mission, "visit l1, l2 and avoid l3 globally\n").unwrap();
    let out = dir.path().join("m.smv");
    let m = mission.to_str().unwrap();
    let o = run(&["emit-smv", m, "--seed", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("MODULE main\n"));
    assert!(text.contains("LTLSPEC (F (l1)) & (F (l2)) & (G (!l3))"), "{text}");
    assert!(text.contains("CTLSPEC (AF (l1)) & (AF (l2)) & (AG (!l3))"));
    let again = stdout(&run(&["emit-smv", m, "--seed", "3"]));
    assert_eq!(again, text);
    // without a world the mission gets its free-running arena
    let arena = stdout(&run(&["emit-smv", missions().join("sc1.mission").to_str().unwrap(), "--logic", "ltl"]));
    assert!(arena.contains("human := s in"));
}

#[test]
fn exp5_reports_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("exp5.json");
    let o = run(&["exp", "--mode", "exp5", "--seed", "7", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let records = report["records"].as_array().unwrap();
    assert_eq!(records.len(), 120);
    assert!(records.iter().all(|r| r["ctl_verdict"] == r["verdict"]));
    for row in report["summary"].as_array().unwrap() {
        assert_eq!(row["agree"], 12);
    }
    assert!(records.iter().all(|r| r.get("elapsed_ms").is_none()));
}

#[test]
fn exp_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let args = |p: &Path| {
        vec!["exp", "--mode", "exp4", "--seed", "11", "--reduced", "--out", p.to_str().unwrap()]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>()
    };
    let oa = Command::new(env!("CARGO_BIN_EXE_missionspec")).args(args(&a)).output().unwrap();
    let ob = Command::new(env!("CARGO_BIN_EXE_missionspec")).args(args(&b)).output().unwrap();
    assert_eq!(oa.stdout, ob.stdout);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let report: serde_json::Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    let records = report["records"].as_array().unwrap();
    assert!(records.iter().filter(|r| r["verdict"] == true).all(|r| r["plan_valid"] == true));
}

#[test]
fn match_a_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.txt");
    fs::write(&corpus, "# comment\nF l1 & F l2\nG (p -> q)\nl1 & !l2\nG (\n").unwrap();
    let c = corpus.to_str().unwrap();
    let text = stdout(&run(&["match", c]));
    assert!(text.contains("Visit[l1,l2]"), "{text}");
    assert!(text.contains("parse-error"));
    let json: serde_json::Value = serde_json::from_slice(&run(&["match", c, "--json"]).stdout).unwrap();
    assert_eq!(json["entries"].as_array().unwrap().len(), 4);
    assert_eq!(json["histogram"]["InstReact"], 1);
    assert_eq!(json["histogram"]["init"], 1);
}

#[test]
fn catalog_lists_all_patterns() {
    let json: serde_json::Value = serde_json::from_slice(&run(&["catalog", "--json"]).stdout).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 22);
    let text = stdout(&run(&["catalog"]));
    assert!(text.contains("Strict Ordered Patrolling"));
    assert!(text.contains("Inaction is desired till a stimulus occurs."));
}
