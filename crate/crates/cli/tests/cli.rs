use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn gridmp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridmp"))
        .args(args)
        .env_remove("GRIDMP_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn family_file(lines: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(lines.as_bytes()).unwrap();
    f
}

#[test]
fn mp_enumerate_on_3x3() {
    let out = gridmp(&["mp", "--dims", "3,3", "--enumerate"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], "gridmp/1");
    assert_eq!(v["dims"], serde_json::json!(["3,3"]));
    assert_eq!(v["budget"]["source"], "default");
    let r = &v["results"][0];
    assert_eq!(r["mp"], 3);
    assert_eq!(r["predicted_mp"], 3);
    assert_eq!(r["prediction_match"], true);
    assert_eq!(r["optimal_sets"].as_array().unwrap().len(), 4);
    assert_eq!(
        r["optimal_sets"][0]["edges"],
        serde_json::json!(["0,0|1,0", "1,0|2,0", "1,0|1,1"])
    );
    assert!(v.get("runtime_ms").is_none());
}

#[test]
fn mp_classify_on_6x3() {
    let out = gridmp(&["mp", "--dims", "6,3", "--classify"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["results"][0];
    assert_eq!(r["class_counts"]["trivial"], 4);
    assert_eq!(r["class_counts"]["special_two_grid"], 3);
    assert_eq!(r["class_counts"]["other"], 0);
    let special: Vec<&Value> = r["optimal_sets"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["classification"]["kind"] == "special_two_grid")
        .collect();
    assert!(special
        .iter()
        .any(|s| s["edges"] == serde_json::json!(["2,0|3,0", "2,2|3,2"])));
}

#[test]
fn invalid_dims_is_usage_error() {
    let out = gridmp(&["mp", "--dims", "0,3"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert_eq!(code(&gridmp(&["mp", "--dims", "3,x"])), 2);
    assert_eq!(code(&gridmp(&["mp"])), 2);
}

#[test]
fn construct_even_sum_apm() {
    let out = gridmp(&[
        "construct",
        "apm-evensum",
        "--dims",
        "3,3",
        "--uncover",
        "1,1",
    ]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["results"][0];
    assert_eq!(r["size"], 4);
    assert_eq!(r["uncovered"], serde_json::json!(["1,1"]));
    assert_eq!(r["self_check"], true);
}

#[test]
fn construct_canonical_pm() {
    let out = gridmp(&["construct", "pm", "--dims", "4,3", "--position", "0"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["results"][0];
    assert_eq!(r["size"], 6);
    assert_eq!(r["uncovered"], serde_json::json!([]));
    assert_eq!(r["edges"][0], "0,0|1,0");
    assert_eq!(
        code(&gridmp(&[
            "construct",
            "pm",
            "--dims",
            "4,3",
            "--position",
            "1"
        ])),
        2
    );
    assert_eq!(code(&gridmp(&["construct", "pm", "--dims", "3,3"])), 2);
}

#[test]
fn construct_precondition_names_the_condition() {
    let out = gridmp(&[
        "construct",
        "apm-alleven",
        "--dims",
        "3,3",
        "--uncover",
        "1,0",
    ]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("all-even"), "{err}");
    assert_eq!(
        code(&gridmp(&["construct", "apm-alleven", "--dims", "3,3"])),
        2
    );
}

#[test]
fn construct_avoiding_edge_and_vertex_deleted() {
    let out = gridmp(&[
        "construct",
        "apm-avoid",
        "--dims",
        "3,3",
        "--edge",
        "1,0|0,0",
    ]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["results"][0];
    assert_eq!(r["self_check"], true);
    assert!(!r["edges"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e == "0,0|1,0"));

    let out = gridmp(&[
        "construct",
        "pm-minus-vertex",
        "--dims",
        "3,3,3",
        "--uncover",
        "2,0,2",
        "--fault",
        "0,0,0|1,0,0",
        "1,1,1|1,1,2",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = &json(&out)["results"][0];
    assert_eq!(r["size"], 13);
    assert_eq!(r["uncovered"], serde_json::json!(["2,0,2"]));
    assert_eq!(r["self_check"], true);

    // |F| = n is one too many.
    let out = gridmp(&[
        "construct",
        "pm-minus-vertex",
        "--dims",
        "3,3",
        "--uncover",
        "0,0",
        "--fault",
        "1,1|1,2",
        "2,1|2,2",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_hypercube() {
    let out = gridmp(&["verify", "--dims", "2,2,2,2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let r = &v["results"][0];
    assert_eq!(r["mp"], 4);
    assert_eq!(r["super_matched"], true);
    assert_eq!(r["optimal_sets"].as_array().unwrap().len(), 16);
    assert_eq!(v["summary"]["matched"], 1);
}

#[test]
fn verify_large_grid_hits_budget() {
    let out = gridmp(&["verify", "--dims", "9,9,9"]);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    assert_eq!(v["summary"]["skipped"][0]["dims"], "9,9,9");
    assert_eq!(v["summary"]["total"], 1);
}

#[test]
fn budget_flag_and_env() {
    let out = gridmp(&["mp", "--dims", "4,4", "--budget", "10"]);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    assert_eq!(v["budget"]["source"], "flag");
    assert!(v["error"].as_str().unwrap().contains("budget"));

    let out = Command::new(env!("CARGO_BIN_EXE_gridmp"))
        .args(["mp", "--dims", "3,3"])
        .env("GRIDMP_BUDGET", "5000")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["budget"]["subset_tests_per_level"], 5000);
    assert_eq!(json(&out)["budget"]["source"], "env");

    let out = Command::new(env!("CARGO_BIN_EXE_gridmp"))
        .args(["mp", "--dims", "3,3"])
        .env("GRIDMP_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_family_file() {
    let f = family_file("# small grids\n2,2\n\n3,3   # odd\n6,3\n3,4\n5\n");
    let path = f.path().to_str().unwrap();
    let out = gridmp(&["verify", "--family", path, "--jobs", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(
        v["dims"],
        serde_json::json!(["2,2", "3,3", "6,3", "3,4", "5"])
    );
    assert_eq!(v["summary"]["total"], 5);
    assert_eq!(v["summary"]["matched"], 5);
    assert_eq!(v["summary"]["mismatched"], 0);

    let bad = family_file("2,2\n2,1\n");
    let out = gridmp(&["verify", "--family", bad.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let mixed = family_file("3,3\n9,9,9\n");
    let out = gridmp(&["verify", "--family", mixed.path().to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["summary"]["matched"], 1);
}

#[test]
fn desk_family_all_match() {
    let mut lines = String::new();
    for dims in gridmp::preclusion::desk_family(3, 36) {
        let s: Vec<String> = dims.iter().map(|k| k.to_string()).collect();
        lines.push_str(&s.join(","));
        lines.push('\n');
    }
    let f = family_file(&lines);
    let out = gridmp(&[
        "verify",
        "--family",
        f.path().to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let last = text.lines().last().unwrap();
    assert_eq!(last, "total 154 matched 154 mismatched 0 skipped 0");
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "--dims", "4,3", "--format", "json"];
    let a = gridmp(&args);
    let b = gridmp(&args);
    assert_eq!(a.stdout, b.stdout);

    let serial = json(&gridmp(&["verify", "--dims", "4,3", "--jobs", "1"]));
    let parallel = json(&gridmp(&["verify", "--dims", "4,3", "--jobs", "4"]));
    assert_eq!(serial["results"], parallel["results"]);

    let timed = json(&gridmp(&["mp", "--dims", "3,3", "--timing"]));
    assert!(timed["runtime_ms"].is_u64());
}

#[test]
fn csv_has_one_row_per_optimal_set() {
    let out = gridmp(&["mp", "--dims", "3,3", "--enumerate", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[0], "dims");
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(&rows[0][0], "3,3");
    assert_eq!(&rows[0][6], "0,0|1,0 1,0|2,0 1,0|1,1");
}

#[test]
fn text_format_and_nice_cycles() {
    let out = gridmp(&["mp", "--dims", "2,2,2", "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "2,2,2  mp=3 predicted=3 match\n"
    );

    let out = gridmp(&["nice-cycles", "--count", "200", "--seed", "11"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["results"][0];
    assert_eq!(r["instances"], 200);
    assert_eq!(r["passed"], true);
    assert_eq!(r["seed"], 11);
}
