use std::path::PathBuf;
use std::process::{Command, Output};

use cotangent_core::beck::BeckContext;
use cotangent_core::io;
use cotangent_core::monoid::MonoidContext;
use cotangent_core::ring::{FPAlgebra, RingContext};
use cotangent_core::set::{FinSet, SetContext};
use serde_json::{json, Value};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotangent-lab"))
        .args(args)
        .env_remove("COTANGENT_GUARD_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn parsed(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

#[test]
fn omega_of_a_two_point_set() {
    let o = run(&["omega", "--context", "set", &data("X.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("fiber a: Z, fiber b: Z\n"));
}

#[test]
fn omega_of_truncated_nat() {
    let o = run(&["omega", "--context", "monoid", &data("nat.json"), "--bound", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let fibers: String = (1..=8).map(|n| format!(", fiber {n}: Z")).collect();
    assert!(text.starts_with(&format!("fiber 0: 0{fibers}\n")), "{text}");
    assert!(text.contains("oriented unit multiples: 0 1 2 3 4 5 6 7 8\n"));
    assert!(text.contains("positive transitions identity: true\n"));
}

#[test]
fn bound_flag_overrides_the_descriptor() {
    let o = run(&["omega", "--context", "monoid", &data("nat.json"), "--bound", "3"]);
    assert!(stdout(&o).starts_with("fiber 0: 0, fiber 1: Z, fiber 2: Z, fiber 3: Z\n"));
    let o = run(&["omega", "--context", "monoid", "--bound", "2"]);
    assert!(stdout(&o).starts_with("fiber 0: 0, fiber 1: Z, fiber 2: Z\n"));
}

#[test]
fn omega_of_the_cusp() {
    let o = run(&["omega", "--context", "ring", &data("cusp.alg")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "gens dx,dy; rel -3x^2*dx + 2y*dy\nunit: d(x) = dx, d(y) = dy\n");
}

#[test]
fn relative_omega_of_the_cusp_over_the_line() {
    let o = run(&["omega", "--context", "ring", &data("cusp.hom")]);
    assert_eq!(stdout(&o), "gens dy; rel 2y*dy\nunit: d(x) = 0, d(y) = dy\n");
}

#[test]
fn set_omega_json_round_trips() {
    for (file, kind) in [("X.json", "omega"), ("f.json", "omega_rel")] {
        let v = parsed(&run(&["--format", "json", "omega", "--context", "set", &data(file)]));
        assert_eq!(v["kind"], kind);
        let m = io::set_module_from_json(&v["module"]).unwrap();
        assert_eq!(io::set_module_to_json(&m), v["module"]);
    }
    let v = parsed(&run(&["--format", "json", "omega", "--context", "set", &data("X.json")]));
    let x = FinSet::new(["a", "b"]).unwrap();
    assert_eq!(io::set_module_from_json(&v["module"]).unwrap(), SetContext.omega(&x).unwrap().omega);
}

#[test]
fn monoid_omega_json_round_trips() {
    let z2 = data("z2.json");
    let hom = data("z2_to_trivial.json");
    for extra in [vec!["--bound", "4"], vec![z2.as_str()], vec![hom.as_str()]] {
        let mut args = vec!["--format", "json", "omega", "--context", "monoid"];
        args.extend(extra);
        let v = parsed(&run(&args));
        let m = io::monoid_module_from_json(&v["module"]).unwrap();
        assert_eq!(io::monoid_module_to_json(&m), v["module"]);
    }
    let v = parsed(&run(&["--format", "json", "omega", "--context", "monoid", "--bound", "4"]));
    let direct = MonoidContext.omega_nat_truncated(4).unwrap();
    assert_eq!(v["nat"]["unit_multiples"], json!([0, 1, 2, 3, 4]));
    assert_eq!(v["nat"]["matches_expected"], direct.matches_expected());
}

#[test]
fn ring_omega_json_round_trips() {
    for file in ["cusp.alg", "line.alg", "cusp.hom", "loc.hom", "dual.hom"] {
        let v = parsed(&run(&["--format", "json", "omega", "--context", "ring", &data(file)]));
        let m = io::fpmodule_from_json(&v["module"]).unwrap();
        assert_eq!(io::fpmodule_to_json(&m), v["module"]);
    }
    let v = parsed(&run(&["--format", "json", "omega", "--context", "ring", &data("cusp.alg")]));
    let a = FPAlgebra::parse(&std::fs::read_to_string(data("cusp.alg")).unwrap()).unwrap();
    assert_eq!(io::fpmodule_from_json(&v["module"]).unwrap(), RingContext.omega(&a).unwrap().omega);
}

#[test]
fn first_sequence_holds_in_every_context() {
    for (ctx, file) in [
        ("set", "f.json"),
        ("set", "inclusion.json"),
        ("monoid", "z2_to_trivial.json"),
        ("monoid", "trivial_to_z2.json"),
        ("ring", "dual.hom"),
        ("ring", "cusp.hom"),
        ("ring", "loc.hom"),
    ] {
        let o = run(&["check", "first-sequence", "--context", ctx, &data(file)]);
        assert_eq!(o.status.code(), Some(0), "{ctx} {file}");
        assert_eq!(stdout(&o), "EXACT\n");
    }
}

#[test]
fn localization_is_an_epi_with_iso() {
    let o = run(&["check", "epi", "--context", "ring", &data("loc.hom")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "EPI (iso)\n");
}

#[test]
fn epi_check_on_a_surjection() {
    let o = run(&["check", "epi", "--context", "monoid", &data("z2_to_trivial.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("EPI"));
    let v = parsed(&run(&["--format", "json", "check", "epi", "--context", "set", &data("f.json")]));
    assert_eq!(v["holds"], true);
    assert_eq!(v["verdict"]["epi"], true);
}

#[test]
fn epi_precondition_is_not_a_theorem_failure() {
    for (ctx, file) in [("set", "inclusion.json"), ("monoid", "trivial_to_z2.json"), ("ring", "cusp.hom")] {
        let o = run(&["check", "epi", "--context", ctx, &data(file)]);
        assert_eq!(o.status.code(), Some(2), "{ctx} {file}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("precondition failed"));
    }
}

#[test]
fn base_change_checks() {
    let o = run(&["check", "base-change", "--context", "set", &data("X.json"), &data("point.json")]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "ISO\n".into()));
    let o = run(&["check", "base-change", "--context", "ring", &data("dual_t.alg"), &data("cusp.alg")]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "ISO\n".into()));
    let o = run(&["check", "base-change", "--context", "ring", &data("line.alg"), &data("cusp.alg")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ens_checks() {
    let o = run(&["check", "ens", "--context", "set", "--exhaustive", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "OK: 499 maps verified (sets of size at most 4)\n");
    let o = run(&["check", "ens", &data("inclusion.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("CONSISTENT\n"));
    assert_eq!(run(&["check", "ens", "--exhaustive", "7"]).status.code(), Some(2));
    assert_eq!(run(&["check", "ens", "--context", "ring", "--exhaustive", "2"]).status.code(), Some(2));
}

#[test]
fn nat_omega_check() {
    let o = run(&["check", "nat-omega"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("OK: fiber 0 is 0, fibers 1..8 are Z"));
    let v = parsed(&run(&["--format", "json", "check", "nat-omega", "--bound", "5"]));
    assert_eq!(v["verdict"]["stable"], true);
    assert_eq!(v["verdict"]["unit_multiples"], json!([0, 1, 2, 3, 4, 5]));
}

#[test]
fn usage_and_parse_errors_exit_with_two() {
    let (bad_alg, missing, cusp, x, f) =
        (data("bad.alg"), data("missing.json"), data("cusp.alg"), data("X.json"), data("f.json"));
    let cases: [&[&str]; 8] = [
        &["omega", "--context", "ring", &bad_alg],
        &["omega", "--context", "set", &missing],
        &["omega", "--context", "set", &cusp],
        &["omega", "--context", "set", "--bound", "3", &x],
        &["check", "epi", &f],
        &["check", "first-sequence", "--context", "set", &x],
        &["check", "frobenius"],
        &["suite", "--only", "nonsense"],
    ];
    for args in cases {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn parse_errors_carry_positions() {
    let o = run(&["omega", "--context", "ring", &data("bad.alg")]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column 11"));
    let v = parsed(&run(&["--format", "json", "omega", "--context", "ring", &data("bad.alg")]));
    assert!(v["error"].as_str().unwrap().contains("line 3"));
}

#[test]
fn suite_filters_and_is_seeded() {
    let a = parsed(&run(&["--format", "json", "suite", "--only", "7", "--seed", "7"]));
    let b = parsed(&run(&["--format", "json", "suite", "--only", "7", "--seed", "7"]));
    assert_eq!(a["passed"], true);
    assert_eq!(a["seed"], 7);
    let ids: Vec<&Value> = a["criteria"].as_array().unwrap().iter().map(|c| &c["id"]).collect();
    assert_eq!(ids, [&Value::from(7)]);
    assert_eq!(a["criteria"][0]["summary"], b["criteria"][0]["summary"]);
    let o = run(&["suite", "--only", "nat-omega"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("criterion 2 nat-omega"));
}
