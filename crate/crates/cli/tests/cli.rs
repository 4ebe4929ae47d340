use std::fs;
use std::path::{Path, PathBuf};

use bopfield_cli::{run, EXIT_INVALID, EXIT_OK, EXIT_PRECONDITION};
use bopfield_core::basefield::FunctionField;
use bopfield_core::io::{self, AlgebraFile, Bundle, OperatorFile, PointFile, VarietyFile};
use bopfield_core::operator::BOperator;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    fs::read_to_string(fixtures().join("golden").join(name)).unwrap()
}

fn ok(args: &[&str]) -> String {
    let mut full = vec!["bopfield"];
    full.extend_from_slice(args);
    let out = run(full);
    assert_eq!(out.code, EXIT_OK, "{args:?} failed: {}", out.stderr);
    out.stdout
}

#[test]
fn classify_non_companionable() {
    let out = ok(&["classify", &fixture("b_f2x3.json")]);
    assert_eq!(out, golden("classify_b_f2x3.json"));
    assert!(out.contains("\"companionable\": false"));
    assert!(out.contains("\"clause\": \"none\""));
}

#[test]
fn equalizer_example_is_byte_exact() {
    assert_eq!(ok(&["equalizer", &fixture("exe.json")]), golden("equalizer_exe.json"));
    assert_eq!(
        ok(&["equalizer", &fixture("exe.json"), "--format", "text"]),
        golden("equalizer_exe.txt")
    );
}

#[test]
fn counterexample_fiber_is_empty() {
    let out = ok(&["fiber", &fixture("counterexample.json")]);
    assert_eq!(out, golden("fiber_counterexample.json"));
    assert!(out.contains("\"fiber\": \"empty\""));
    assert_eq!(
        ok(&["fiber", &fixture("counterexample_control.json")]),
        golden("fiber_counterexample_control.json")
    );
}

#[test]
fn remaining_goldens() {
    for (verb, input, gold) in [
        ("kernel-check", "kernel_positive.json", "kernel_positive.json"),
        ("prolong", "prolong_f3.json", "prolong_f3.json"),
        ("lidi-check", "lidi_f3y.json", "lidi_f3y.json"),
        ("constants-check", "constants_f3y.json", "constants_f3y.json"),
        ("census", "census_node_f2.json", "census_node_f2.json"),
    ] {
        assert_eq!(ok(&[verb, &fixture(input)]), golden(gold), "{verb} {input}");
    }
}

#[test]
fn flags_override_bundle_entries() {
    let alg = fixture("algebras/f2_split2.json");
    let out = ok(&["classify", &fixture("exe.json"), "--algebra", &alg]);
    assert!(out.contains("\"clause\": \"separable_product\""));
    let out = ok(&["classify", "--algebra", &fixture("algebras/f3x2.json"), "--format", "text"]);
    assert!(out.contains("clause: local\n"));
}

#[test]
fn output_is_deterministic() {
    for verb in ["prolong", "equalizer", "kernel-check"] {
        let a = ok(&[verb, &fixture("kernel_positive.json")]);
        let b = ok(&[verb, &fixture("kernel_positive.json")]);
        assert_eq!(a, b);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let stdout = ok(&["fiber", &fixture("counterexample.json"), "--out", path.to_str().unwrap()]);
    assert!(stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), golden("fiber_counterexample.json"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\n  \"algebra\": [1,\n}").unwrap();
    let out = run(["bopfield", "classify", broken.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);

    let expr = dir.path().join("expr.json");
    fs::write(
        &expr,
        format!(
            r#"{{"operator": {{"algebra": "{}", "vars": ["y"], "images": {{"y": ["y", "1 +* y"]}}}}, "elements": ["y"]}}"#,
            fixture("algebras/f3x2.json")
        ),
    )
    .unwrap();
    let out = run(["bopfield", "constants-check", expr.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("column"), "{}", out.stderr);

    // W not flagged prime: precondition, not malformed input
    let np = dir.path().join("np.json");
    fs::write(
        &np,
        format!(
            r#"{{"operator": {{"algebra": "{}", "vars": [], "images": {{}}}},
                "variety": {{"vars": ["x"], "generators": [], "prime": true}},
                "subvariety": {{"vars": ["x_0", "x_1"], "generators": ["x_1 - x_0"], "prime": false}}}}"#,
            fixture("algebras/f3x2.json")
        ),
    )
    .unwrap();
    let out = run(["bopfield", "kernel-check", np.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_PRECONDITION, "{}", out.stderr);

    let out = run(["bopfield", "classify"]);
    assert_eq!(out.code, EXIT_INVALID);
    let out = run(["bopfield", "frobnicate"]);
    assert_eq!(out.code, EXIT_INVALID);
    let out = run(["bopfield", "--help"]);
    assert_eq!(out.code, EXIT_OK);
}

fn json_files(dir: &Path, out: &mut Vec<PathBuf>) {
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            if path.file_name().unwrap() != "golden" {
                json_files(&path, out);
            }
        } else if path.extension().is_some_and(|e| e == "json") {
            out.push(path);
        }
    }
}

fn round_trip_algebra(file: &AlgebraFile) {
    let printed = match &file.pi {
        Some(_) => AlgebraFile::from_finite(&file.to_finite_algebra().unwrap()),
        None => AlgebraFile::from_comm(&file.to_comm_algebra().unwrap()),
    };
    let text = serde_json::to_string(&printed).unwrap();
    let reparsed: AlgebraFile = serde_json::from_str(&text).unwrap();
    assert_eq!(reparsed, printed);
    assert_eq!(reparsed.to_comm_algebra().unwrap(), file.to_comm_algebra().unwrap());
}

#[test]
fn every_fixture_round_trips() {
    let mut files = Vec::new();
    json_files(&fixtures(), &mut files);
    files.sort();
    assert!(files.len() >= 20);
    for path in files {
        let value = io::read_json(&path).unwrap();
        if value.get("mul").is_some() {
            round_trip_algebra(&serde_json::from_value(value).unwrap());
            continue;
        }
        let dir = path.parent().unwrap();
        let bundle = Bundle::read(&path).unwrap();
        let text = serde_json::to_string(&bundle).unwrap();
        assert_eq!(serde_json::from_str::<Bundle>(&text).unwrap(), bundle);
        let k = match &bundle.operator {
            Some(v) => {
                let op = io::load_operator(v, dir).unwrap();
                let printed = OperatorFile::from_spec(&op);
                let again = printed.to_spec(dir).unwrap();
                assert_eq!(again, op, "{}", path.display());
                assert_eq!(OperatorFile::from_spec(&again), printed);
                op.field().clone()
            }
            None => {
                let b = io::load_algebra(bundle.algebra.as_ref().unwrap(), dir).unwrap();
                FunctionField::new(b.field().clone(), Vec::new())
            }
        };
        for v in [&bundle.variety, &bundle.subvariety].into_iter().flatten() {
            let var = io::load_variety(v, dir, &k).unwrap();
            let printed = VarietyFile::from_variety(&var);
            let again = printed.to_variety(&k).unwrap();
            assert_eq!(VarietyFile::from_variety(&again), printed);
            assert_eq!(again.gens(), var.gens());
        }
        if let Some(p) = &bundle.point {
            let (l, b) = io::load_point(p, dir, &k).unwrap();
            let printed = PointFile::from_point(&l, &b);
            let (l2, b2) = printed.to_point(&k).unwrap();
            assert_eq!(PointFile::from_point(&l2, &b2), printed);
        }
    }
}
