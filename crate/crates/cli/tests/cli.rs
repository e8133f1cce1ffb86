use std::fs;
use std::path::Path;
use std::process::{Command, Stdio};

use serde_json::{json, Value};
use tempfile::TempDir;

const INTRO: &str = r#"{
  "schema": "tropsing/1",
  "polynomial": [
    {"point": [1, 2], "coefficient": "1"},
    {"point": [2, 0], "coefficient": "-t"},
    {"point": [1, 1], "coefficient": "-2 - t^3"},
    {"point": [1, 0], "coefficient": "1 + 2*t + t^3"},
    {"point": [0, 1], "coefficient": "t^3"},
    {"point": [0, 0], "coefficient": "-t - t^3"}
  ]
}"#;

const SQUARE8: &str = r#"{"points": [[0,0],[1,0],[0,1],[1,1],[2,1],[0,2],[1,2],[2,2]]}"#;

struct Outcome {
    code: i32,
    json: Value,
    stderr: String,
}

/// Runs the driver in process with `input` on stdin.
fn run(args: &[&str], input: &str) -> Outcome {
    let mut argv = vec!["tropsing"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = tropsing_cli::run(argv, &mut input.as_bytes(), &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    Outcome {
        code,
        json: serde_json::from_str(&text).unwrap_or(Value::Null),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn classify_intro_from_file() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "intro.json", INTRO);
    let o = run(&["classify", "--in", &input], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.json["schema"], "tropsing/1");
    assert_eq!(o.json["kind"], "TypeB1");
    assert_eq!(o.json["l1"], "1");
    assert_eq!(o.json["l2"], "1");
}

#[test]
fn subdivide_unit_triangle_from_stdin() {
    let o = run(
        &["subdivide"],
        r#"{"points": [[0,0],[1,0],[0,1]], "heights": ["0","0","0"]}"#,
    );
    assert_eq!(o.code, 0);
    assert_eq!(o.json["cells"].as_array().unwrap().len(), 1);
    assert_eq!(o.json["cone"]["codimension"], 0);
}

#[test]
fn zero_denominator_is_a_parse_error() {
    let o = run(
        &["curve"],
        r#"{"points": [[0,0],[1,0],[0,1]], "heights": ["1/0","0","0"]}"#,
    );
    assert_eq!(o.code, 2);
    assert_eq!(o.json["schema"], "tropsing/1");
    assert_eq!(o.json["error"]["kind"], "parse");
    assert!(o.json["error"]["message"].as_str().unwrap().contains("1/0"));
}

#[test]
fn wrong_height_count_is_a_domain_error() {
    let o = run(&["subdivide"], r#"{"points": [[0,0],[1,0],[0,1]], "heights": ["0"]}"#);
    assert_eq!(o.code, 1);
    assert_eq!(o.json["error"]["kind"], "subdivision");
}

#[test]
fn missing_input_file() {
    let o = run(&["curve", "--in", "/nonexistent/job.json"], "");
    assert_eq!(o.code, 2);
    assert_eq!(o.json["error"]["kind"], "io");
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["flags", "--pivots", "1,2"], SQUARE8);
    assert_eq!(o.code, 2);
    assert_eq!(o.json["error"]["kind"], "usage");
    let o = run(&["frobnicate"], "{}");
    assert_eq!(o.code, 2);
}

#[test]
fn plot_writes_svg_file() {
    let dir = TempDir::new().unwrap();
    let svg = dir.path().join("intro.svg");
    let svg_arg = svg.display().to_string();
    let o = run(&["plot", "--svg", &svg_arg], INTRO);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.json["svg_file"], json!(svg_arg));
    let picture = fs::read_to_string(&svg).unwrap();
    assert!(picture.contains(">2</text>"));
    assert!(picture.contains(r#"class="singular""#));

    // without --svg the picture is inlined and identical
    let inline = run(&["plot"], INTRO);
    assert_eq!(inline.json["svg"].as_str().unwrap(), picture);
}

#[test]
fn out_flag_writes_the_result() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("curve.json");
    let o = run(&["curve", "--out", &out.display().to_string()], INTRO);
    assert_eq!(o.code, 0);
    assert_eq!(o.json, Value::Null);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["balanced"], true);
}

#[test]
fn flags_then_lift() {
    let o = run(&["flags", "--pivots", "0,1,2"], SQUARE8);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.json["pivots"], json!([0, 1, 2]));
    let flag = o.json["flags"][0]["flats"].clone();

    let mut job: Value = serde_json::from_str(SQUARE8).unwrap();
    job["flag"] = flag;
    let job = job.to_string();
    let first = run(&["lift", "--seed", "3"], &job);
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert_eq!(first.json["singular_at_one_one"], true);
    assert_eq!(first.json["in_weight_class"], true);
    let again = run(&["lift", "--seed", "3"], &job);
    assert_eq!(first.json, again.json);
}

#[test]
fn limit_flag_guards_enumeration() {
    let o = run(&["flags", "--limit", "4"], SQUARE8);
    assert_eq!(o.code, 1);
    assert_eq!(o.json["error"]["kind"], "matroid");
}

fn binary(args: &[&str], input: &str, limit: Option<&str>) -> (i32, Value) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tropsing"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .env_remove("TROPSING_LIMIT");
    if let Some(l) = limit {
        cmd.env("TROPSING_LIMIT", l);
    }
    let mut child = cmd.spawn().unwrap();
    {
        use std::io::Write;
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    }
    let out = child.wait_with_output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json)
}

#[test]
fn environment_limit_sits_below_job_and_flag() {
    let (code, json) = binary(&["flags"], SQUARE8, Some("4"));
    assert_eq!(code, 1);
    assert_eq!(json["error"]["kind"], "matroid");

    let mut job: Value = serde_json::from_str(SQUARE8).unwrap();
    job["options"] = json!({"limit": 16});
    assert_eq!(binary(&["flags"], &job.to_string(), Some("4")).0, 0);
    assert_eq!(binary(&["flags", "--limit", "16"], SQUARE8, Some("4")).0, 0);

    let (code, json) = binary(&["flags"], SQUARE8, Some("many"));
    assert_eq!(code, 2);
    assert_eq!(json["error"]["kind"], "usage");
}

#[test]
fn binary_help_succeeds() {
    let out = Command::new(env!("CARGO_BIN_EXE_tropsing"))
        .arg("--help")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for cmd in ["subdivide", "curve", "flags", "classify", "discriminant", "lift", "plot"] {
        assert!(text.contains(cmd), "{cmd} missing from help");
    }
    assert!(Path::new(env!("CARGO_BIN_EXE_tropsing")).exists());
}
