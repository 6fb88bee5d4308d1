use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use mqindex::{run_args, Outcome};

const TREFOIL_PD: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
const TREFOIL_GAUSS: &str = "U1-O2-U3-O1-U2-O3-";

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(rel: &str) -> String {
    fixtures().join(rel).display().to_string()
}

fn run(args: &[&str]) -> Outcome {
    run_args(std::iter::once("mqindex").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).expect("valid json")
}

#[test]
fn trefoil_invariants() {
    let out = ok(&["invariants", "--text", TREFOIL_PD]);
    assert!(out.contains("1 - t + t^2"));
    assert!(out.lines().any(|l| l == "m = a = 1"));
    let v = json(&["invariants", "--text", TREFOIL_PD]);
    assert_eq!(v["determinant"], "3");
    assert_eq!(v["nakanishi_lower"], 1);
    assert_eq!(v["mq_interval"]["lower"], 1);
    assert_eq!(v["mq_interval"]["upper"], 1);
}

#[test]
fn all_input_formats_agree_on_the_trefoil() {
    let pd = json(&["invariants", "--text", TREFOIL_PD]);
    for (text, format) in [(TREFOIL_GAUSS, "gauss"), ("s1^-1 s1^-1 s1^-1", "braid")] {
        let v = json(&["invariants", "--text", text, "--format", format]);
        assert_eq!(
            v["alexander_polynomial"], pd["alexander_polynomial"],
            "{format}"
        );
        assert_eq!(v["nakanishi_lower"], 1, "{format}");
    }
    let v = json(&[
        "invariants",
        "--input",
        &fixture("presentations/trefoil.json"),
    ]);
    assert_eq!(v["alexander_polynomial"], pd["alexander_polynomial"]);
}

#[test]
fn montesinos_example_reports_m_equals_a() {
    let out = ok(&["invariants", "--input", &fixture("montesinos/12a_504.mont")]);
    assert!(out.lines().any(|l| l == "m = a = 1"), "{out}");
    assert!(out.contains("rational unknotting: position 2: 10/3 -> 0/1"));
}

#[test]
fn closing_remark_knot() {
    let out = ok(&["invariants", "--input", &fixture("knots/10_63.pd")]);
    assert!(out.lines().any(|l| l == "m = a = 2"), "{out}");
}

#[test]
fn unknot_report_is_trivial() {
    for args in [
        vec!["invariants", "--text", "", "--format", "gauss"],
        vec!["invariants", "--text", "X[1,1,2,2]"],
    ] {
        let v = json(&args);
        assert_eq!(v["alexander_polynomial"], "1");
        assert_eq!(v["nakanishi_lower"], 0);
        assert_eq!(v["chain"]["conclusions"][0], "m = a = 0");
    }
}

#[test]
fn structured_output_is_byte_identical() {
    for args in [
        vec!["--json", "invariants", "--input", "MONT"],
        vec!["--json", "selftest"],
        vec!["--json", "moves", "list"],
    ] {
        let path = fixture("montesinos/12n_278.mont");
        let args: Vec<&str> = args
            .iter()
            .map(|a| if *a == "MONT" { path.as_str() } else { a })
            .collect();
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.code, 0);
        assert_eq!(a, b);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["invariants", "--text", "X[1,2,3"]).code, 2);
    assert_eq!(run(&["invariants"]).code, 2);
    assert_eq!(run(&["no-such-command"]).code, 2);
    assert_eq!(run(&["--budget-kb", "0", "selftest"]).code, 2);
    assert_eq!(
        run(&["moves", "apply", "--text", TREFOIL_GAUSS, "--move", "cc@9"]).code,
        2
    );
    assert_eq!(
        run(&["moves", "apply", "--text", "", "--move", "cc@1"]).code,
        2
    );
    assert_eq!(
        run(&[
            "moves",
            "apply",
            "--text",
            TREFOIL_GAUSS,
            "--move",
            "sharp@1"
        ])
        .code,
        2
    );
    assert_eq!(
        run(&["invariants", "--text", "s1 s1", "--format", "braid"]).code,
        2
    );

    let trefoil = fixture("presentations/trefoil.json");
    let out = run(&[
        "group",
        "transfer",
        "--input",
        &trefoil,
        "--target",
        &fixture("presentations/hopf.json"),
        "--witness",
        &fixture("presentations/trefoil_witness.json"),
    ]);
    assert_eq!(out.code, 4);
    assert!(out.stderr.contains("H_1"), "{}", out.stderr);

    let out = run(&[
        "invariants",
        "--text",
        r#"{"generators":["x"],"relators":["x x"]}"#,
        "--format",
        "presentation",
    ]);
    assert_eq!(out.code, 4);

    let out = run(&[
        "moves",
        "apply",
        "--input",
        &fixture("montesinos/12a_504.mont"),
        "--move",
        "rational@2=1/2",
    ]);
    assert_eq!(out.code, 4);
}

#[test]
fn errors_are_structured_in_json_mode() {
    let out = run(&["--json", "invariants", "--text", "X[1,2,3"]);
    assert_eq!(out.code, 2);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "input");
}

#[test]
fn group_commands() {
    let trefoil = fixture("presentations/trefoil.json");
    assert_eq!(
        ok(&["group", "abelianize", "--input", &trefoil]).trim(),
        "H_1 = Z"
    );
    assert!(
        ok(&["group", "nullhom", "--input", &trefoil, "--word", "x y^-1"])
            .contains(": null-homologous")
    );
    assert!(
        ok(&["group", "nullhom", "--input", &trefoil, "--word", "x"])
            .contains("not null-homologous")
    );

    let v = json(&["group", "rank-bound", "--input", &trefoil]);
    assert_eq!(v["witness"]["words"].as_array().unwrap().len(), 1);

    let v = json(&[
        "group",
        "distance",
        "--input",
        &trefoil,
        "--target",
        &fixture("presentations/unknot_rank2.json"),
    ]);
    assert_eq!(v["lower"], 1);

    let out = ok(&[
        "group", "replace", "--input", &trefoil, "--index", "1", "--word", "x y^-1",
    ]);
    assert!(out.contains("new relator null-homologous in the old group: true"));
    assert!(out.contains("old relator null-homologous in the new group: true"));
}

#[test]
fn emitted_witness_files_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let trefoil = fixture("presentations/trefoil.json");
    let rank = dir.path().join("rank.json").display().to_string();
    let moved = dir.path().join("moved.json").display().to_string();
    let replaced = dir.path().join("replaced.json").display().to_string();

    ok(&[
        "group",
        "rank-bound",
        "--input",
        &trefoil,
        "--output",
        &rank,
    ]);
    assert_eq!(
        ok(&["group", "verify", "--witness", &rank]).trim(),
        "verified"
    );

    ok(&[
        "group", "replace", "--input", &trefoil, "--index", "1", "--word", "x y^-1", "--output",
        &replaced,
    ]);
    ok(&[
        "group",
        "transfer",
        "--input",
        &trefoil,
        "--target",
        &replaced,
        "--witness",
        &rank,
        "--output",
        &moved,
    ]);
    assert_eq!(
        ok(&["group", "verify", "--witness", &moved]).trim(),
        "verified"
    );
    for strategy in ["necessary", "search"] {
        let out = run(&[
            "group",
            "verify",
            "--witness",
            &moved,
            "--strategy",
            strategy,
        ]);
        assert_eq!(out.code, 0, "{strategy}: {}", out.stderr);
    }
}

#[test]
fn refuted_witness_is_a_hypothesis_violation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(
        &path,
        r#"{"presentation":{"generators":["x","y"],"relators":["x y x y^-1 x^-1 y^-1"]},"words":[],"provenance":"user","status":"unverified"}"#,
    )
    .unwrap();
    let out = run(&["group", "verify", "--witness", &path.display().to_string()]);
    assert_eq!(out.code, 4, "{}", out.stdout);
}

#[test]
fn moves() {
    let v = json(&["moves", "list"]);
    let costs: Vec<(String, u64)> = v["moves"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| {
            (
                m["name"].as_str().unwrap().to_string(),
                m["relator_cost"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        costs,
        [
            ("crossing-change".to_string(), 1),
            ("virtualization".to_string(), 1),
            ("sharp".to_string(), 3),
            ("rational-replacement".to_string(), 1)
        ]
    );

    let out = ok(&["moves", "apply", "--text", TREFOIL_GAUSS, "--move", "cc@1"]);
    assert!(
        out.contains("replaced relators: 1; null-homologous both ways: true"),
        "{out}"
    );
    assert!(out.contains("recognized: unknot"), "{out}");

    let out = ok(&["moves", "apply", "--text", TREFOIL_PD, "--move", "virt@2"]);
    assert!(
        out.contains("replaced relators: 1; null-homologous both ways: true"),
        "{out}"
    );

    let out = ok(&[
        "moves",
        "apply",
        "--input",
        &fixture("montesinos/12a_642.mont"),
        "--move",
        "rational@1=0/1",
    ]);
    assert!(out.contains("(unknot)"), "{out}");
}

#[test]
fn search() {
    let out = ok(&["search", "--text", TREFOIL_GAUSS]);
    assert!(out.contains("1 crossing changes, replayed"), "{out}");
    assert!(out.contains("1 <= m(K) <= a(K) <= 1"), "{out}");
    assert!(ok(&["search", "--text", TREFOIL_GAUSS, "--cc", "0"]).starts_with("None"));
    let out = ok(&[
        "search",
        "--text",
        "O1-O2-U1-U2-",
        "--virt",
        "2",
        "--cc",
        "0",
    ]);
    assert!(out.contains("replayed"), "{out}");
}

#[test]
fn selftest_passes_on_bundled_fixtures() {
    let out = ok(&["selftest"]);
    assert!(out.contains("0 failed, 0 inconclusive"), "{out}");
}

#[test]
fn selftest_on_a_copied_fixture_directory() {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&fixtures(), dir.path());
    let d = dir.path().display().to_string();
    assert!(ok(&["selftest", "--fixtures", &d]).contains("0 failed"));

    let pd = dir.path().join("knots/4_1.pd");
    let text = std::fs::read_to_string(&pd)
        .unwrap()
        .replace("# determinant: 5", "# determinant: 7");
    std::fs::write(&pd, text).unwrap();
    let out = run(&["selftest", "--fixtures", &d]);
    assert_eq!(out.code, 3);
    assert!(
        out.stdout.contains("FAIL         knot 4_1"),
        "{}",
        out.stdout
    );
}

#[test]
fn starved_selftest_is_inconclusive() {
    let out = run(&[
        "--budget-tietze",
        "1",
        "--budget-kb",
        "1",
        "--search-depth",
        "1",
        "--search-width",
        "1",
        "selftest",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("INCONCLUSIVE"), "{}", out.stdout);
    assert!(out.stdout.contains(" 0 failed"), "{}", out.stdout);
}

fn copy_dir(from: &Path, to: &Path) {
    for entry in std::fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            std::fs::create_dir_all(&target).unwrap();
            copy_dir(&entry.path(), &target);
        } else {
            std::fs::copy(entry.path(), target).unwrap();
        }
    }
}

#[test]
fn binary_reads_stdin_and_sets_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mqindex");
    let mut child = Command::new(bin)
        .args(["invariants", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(TREFOIL_PD.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("m = a = 1"));

    let status = Command::new(bin)
        .args(["invariants", "--text", "X[1"])
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(2));
}
