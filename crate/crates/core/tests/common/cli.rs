//! The command-line fixture suite: every subcommand and every error class,
//! with the exit code and output each must produce.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use jsonschema::{Draft, JSONSchema};
use serde_json::Value;

pub const BIN: &str = env!("CARGO_BIN_EXE_tpkit");

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schema {
    Report,
    Gadget,
}

pub fn compile(schema: Schema) -> JSONSchema {
    let file = match schema {
        Schema::Report => "report.schema.json",
        Schema::Gadget => "gadget.schema.json",
    };
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(file);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::options().with_draft(Draft::Draft7).compile(&doc).unwrap()
}

/// Schema errors for `doc`, one string per violation.
pub fn violations(schema: &JSONSchema, doc: &Value) -> Vec<String> {
    match schema.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    }
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)], cwd: &Path) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args)
        .current_dir(cwd)
        .env_remove("TPKIT_THREADS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("spawn tpkit");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    let out = child.wait_with_output().unwrap();
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub struct Case {
    pub name: &'static str,
    /// `{fx}` expands to the fixture directory, `{tmp}` to a scratch dir.
    pub args: Vec<&'static str>,
    pub stdin: Option<&'static str>,
    pub env: Vec<(&'static str, &'static str)>,
    pub code: i32,
    /// Substrings that must appear on standard output.
    pub stdout_has: Vec<&'static str>,
    /// Validate standard output as a report, or `{tmp}/sidecar.json` as a
    /// gadget document.
    pub schema: Option<Schema>,
}

fn case(name: &'static str, args: &[&'static str], code: i32) -> Case {
    Case {
        name,
        args: args.to_vec(),
        stdin: None,
        env: Vec::new(),
        code,
        stdout_has: Vec::new(),
        schema: None,
    }
}

impl Case {
    fn stdin(mut self, text: &'static str) -> Self {
        self.stdin = Some(text);
        self
    }

    fn env(mut self, k: &'static str, v: &'static str) -> Self {
        self.env.push((k, v));
        self
    }

    fn has(mut self, s: &'static str) -> Self {
        self.stdout_has.push(s);
        self
    }

    fn schema(mut self, s: Schema) -> Self {
        self.schema = Some(s);
        self
    }
}

pub fn suite() -> Vec<Case> {
    use Schema::*;
    vec![
        // check: passing and failing verdicts
        case("check_counterexample_dodgson", &["check", "--input", "{fx}/counterexample.txt", "--method", "dodgson"], 1)
            .has("witness: rows {1} cols {2} order 1 minor 0"),
        case("check_counterexample_dodgson_json", &["check", "--input", "{fx}/counterexample.txt", "--method", "dodgson", "--output", "json"], 1)
            .has("\"value\": \"0\"")
            .schema(Report),
        case("check_counterexample_tn_brute", &["check", "--input", "{fx}/counterexample.txt", "--property", "tn", "--method", "brute", "--output", "json"], 1)
            .has("\"value\": \"-1\"")
            .schema(Report),
        case("check_single_entry", &["check", "--input", "{fx}/one.txt", "--property", "tp"], 0).has("pass: tp holds (dodgson)"),
        case("check_ssr_signature", &["check", "--input", "{fx}/ssr_plus_minus.txt", "--property", "ssr", "--signature", "+,-", "--output", "json"], 0)
            .schema(Report),
        case("check_wsr_wrong_signature", &["check", "--input", "{fx}/ssr_plus_minus.txt", "--property", "wsr", "--signature", "+,+", "--output", "json"], 1)
            .schema(Report),
        case("check_stdin", &["check", "--input", "-", "--output", "json"], 0)
            .stdin("1 1 1\n1 2 3\n1 3 6\n")
            .has("\"method\": \"dodgson\"")
            .schema(Report),
        case("check_pascal_brute", &["check", "--input", "{fx}/pascal4.txt", "--method", "brute", "--output", "json"], 0).schema(Report),
        case("check_partial_auto", &["check", "--input", "{fx}/partial_tp.txt", "--output", "json"], 0)
            .has("\"method\": \"recursive\"")
            .schema(Report),
        case("check_partial_biclique", &["check", "--input", "{fx}/partial_tp.txt", "--method", "biclique", "--output", "json"], 0).schema(Report),
        case("check_partial_brute", &["check", "--input", "{fx}/partial_tp.txt", "--method", "brute"], 0),
        case("check_partial_fail_recursive", &["check", "--input", "{fx}/partial_fail.txt", "--method", "recursive", "--output", "json"], 1)
            .has("\"value\": \"-3\"")
            .schema(Report),
        case("check_partial_fail_biclique", &["check", "--input", "{fx}/partial_fail.txt", "--method", "biclique", "--output", "json"], 1).schema(Report),
        case("check_partial_tn_weak", &["check", "--input", "{fx}/partial_fail.txt", "--property", "tn"], 1),
        case("check_threads", &["check", "--input", "{fx}/partial_tp.txt", "--method", "biclique", "--output", "json"], 0)
            .env("TPKIT_THREADS", "2")
            .schema(Report),
        // check: usage errors
        case("check_ssr_without_signature", &["check", "--input", "{fx}/ssr_plus_minus.txt", "--property", "ssr"], 2),
        case("check_tp_with_signature", &["check", "--input", "{fx}/one.txt", "--signature", "+"], 2),
        case("check_short_signature", &["check", "--input", "{fx}/ssr_plus_minus.txt", "--property", "ssr", "--signature", "+"], 2),
        case("check_bad_signature_token", &["check", "--input", "{fx}/ssr_plus_minus.txt", "--property", "ssr", "--signature", "+,x"], 2),
        case("check_dodgson_on_partial", &["check", "--input", "{fx}/partial_tp.txt", "--method", "dodgson"], 2),
        case("check_dodgson_on_tn", &["check", "--input", "{fx}/pascal4.txt", "--property", "tn", "--method", "dodgson"], 2),
        case("check_missing_file", &["check", "--input", "{fx}/does_not_exist.txt"], 2),
        case("check_ragged_matrix", &["check", "--input", "{fx}/ragged.txt"], 2),
        case("check_bad_token", &["check", "--input", "{fx}/bad_token.txt"], 2),
        case("check_empty_stdin", &["check", "--input", "-"], 2).stdin(""),
        case("check_unknown_property", &["check", "--input", "{fx}/one.txt", "--property", "xp"], 2),
        case("check_unknown_method", &["check", "--input", "{fx}/one.txt", "--method", "guess"], 2),
        case("check_unknown_output", &["check", "--input", "{fx}/one.txt", "--output", "xml"], 2),
        case("check_missing_input_flag", &["check"], 2),
        case("check_bad_threads", &["check", "--input", "{fx}/one.txt"], 2).env("TPKIT_THREADS", "0"),
        case("unknown_subcommand", &["frobnicate"], 2),
        case("no_subcommand", &[], 2),
        // generate
        case("generate_tp", &["generate", "--rows", "3", "--cols", "4"], 0),
        case("generate_signature", &["generate", "--rows", "3", "--cols", "3", "--signature", "+,-,+"], 0),
        case("generate_weak", &["generate", "--rows", "2", "--cols", "2", "--signature", "-,-", "--weak"], 0),
        case("generate_zero_rows", &["generate", "--rows", "0", "--cols", "2"], 2),
        case("generate_short_signature", &["generate", "--rows", "3", "--cols", "3", "--signature", "+,-"], 2),
        case("generate_missing_cols", &["generate", "--rows", "3"], 2),
        // gadget
        case("gadget_k22", &["gadget", "--graph", "{fx}/k22.txt", "--k", "2", "--sidecar", "{tmp}/sidecar.json"], 0).schema(Gadget),
        case("gadget_path_weak", &["gadget", "--graph", "{fx}/path.txt", "--k", "2", "--weak", "--sidecar", "{tmp}/sidecar.json"], 0)
            .has("?")
            .schema(Gadget),
        case("gadget_cycle", &["gadget", "--graph", "{fx}/cycle6.txt", "--k", "2", "--sidecar", "{tmp}/sidecar.json"], 0).schema(Gadget),
        case("gadget_base", &["gadget", "--graph", "{fx}/k22.txt", "--k", "2", "--base", "{fx}/base_2x2.txt", "--sidecar", "{tmp}/sidecar.json"], 0)
            .has("1 2")
            .schema(Gadget),
        case("gadget_stdin", &["gadget", "--graph", "-", "--k", "1", "--sidecar", "{tmp}/sidecar.json"], 0)
            .stdin("1 2\n1 2\n")
            .schema(Gadget),
        case("gadget_base_wrong_shape", &["gadget", "--graph", "{fx}/k22.txt", "--k", "2", "--base", "{fx}/base_wrong_shape.txt", "--sidecar", "{tmp}/sidecar.json"], 2),
        case("gadget_base_not_regular", &["gadget", "--graph", "{fx}/k22.txt", "--k", "2", "--base", "{fx}/base_not_regular.txt", "--sidecar", "{tmp}/sidecar.json"], 2),
        case("gadget_k_too_large", &["gadget", "--graph", "{fx}/k22.txt", "--k", "3", "--sidecar", "{tmp}/sidecar.json"], 2),
        case("gadget_k_zero", &["gadget", "--graph", "{fx}/k22.txt", "--k", "0", "--sidecar", "{tmp}/sidecar.json"], 2),
        case("gadget_edge_out_of_range", &["gadget", "--graph", "{fx}/bad_edge.txt", "--k", "1", "--sidecar", "{tmp}/sidecar.json"], 2),
        case("gadget_bad_graph_line", &["gadget", "--graph", "{fx}/bad_graph_line.txt", "--k", "1", "--sidecar", "{tmp}/sidecar.json"], 2),
        case("gadget_sidecar_unwritable", &["gadget", "--graph", "{fx}/k22.txt", "--k", "1", "--sidecar", "{tmp}/no/such/dir/s.json"], 2),
        // bicliques
        case("bicliques_list", &["bicliques", "--graph", "{fx}/k22.txt"], 0).has("{1,2} {1,2}"),
        case("bicliques_balanced_found", &["bicliques", "--graph", "{fx}/k22.txt", "--balanced", "2"], 0).has("true"),
        case("bicliques_balanced_missing", &["bicliques", "--graph", "{fx}/path.txt", "--balanced", "2"], 1).has("false"),
        case("bicliques_bad_graph", &["bicliques", "--graph", "{fx}/bad_edge.txt"], 2),
        // bench
        case("bench_dodgson", &["bench", "--sizes", "3..4", "--holes", "0", "--methods", "dodgson", "--no-timing"], 0)
            .has("m,n,x,method,trial,wall_time_ms,minors_evaluated,subproblems")
            .has("4,4,0,dodgson,0,,30,0"),
        case("bench_holes", &["bench", "--sizes", "3x4", "--holes", "0..2", "--trials", "2", "--seed", "9", "--methods", "recursive,biclique,brute"], 0)
            .has("3,4,2,recursive,1,"),
        case("bench_threads", &["bench", "--sizes", "3", "--holes", "1", "--methods", "biclique", "--no-timing"], 0).env("TPKIT_THREADS", "2"),
        case("bench_bad_sizes", &["bench", "--sizes", "4..2"], 2),
        case("bench_bad_holes", &["bench", "--sizes", "3", "--holes", "many"], 2),
        case("bench_too_many_holes", &["bench", "--sizes", "2", "--holes", "5", "--methods", "recursive"], 2),
        case("bench_unknown_method", &["bench", "--methods", "dodgson,guess"], 2),
    ]
}

fn expand(arg: &str, tmp: &Path) -> String {
    arg.replace("{fx}", &fixtures().display().to_string())
        .replace("{tmp}", &tmp.display().to_string())
}

/// Runs one case and returns every way it deviated from expectations.
pub fn run_case(c: &Case) -> Vec<String> {
    let tmp = tempfile::tempdir().unwrap();
    let args: Vec<String> = c.args.iter().map(|a| expand(a, tmp.path())).collect();
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = run(&argv, c.stdin, &c.env, tmp.path());
    let mut problems = Vec::new();
    if out.code != c.code {
        problems.push(format!("exit {} (wanted {}); stderr: {}", out.code, c.code, out.stderr.trim()));
    }
    if c.code == 2 && out.stderr.trim().is_empty() {
        problems.push("usage error without a diagnostic".into());
    }
    if c.code == 0 && !out.stderr.is_empty() {
        problems.push(format!("unexpected stderr: {}", out.stderr.trim()));
    }
    for s in &c.stdout_has {
        if !out.stdout.contains(s) {
            problems.push(format!("stdout lacks {s:?}"));
        }
    }
    match c.schema {
        Some(Schema::Report) => problems.extend(check_report(&out.stdout, c.code == 0)),
        Some(Schema::Gadget) => {
            let path: PathBuf = tmp.path().join("sidecar.json");
            match std::fs::read_to_string(&path) {
                Ok(text) => problems.extend(check_document(&text, Schema::Gadget)),
                Err(e) => problems.push(format!("no sidecar: {e}")),
            }
        }
        None => {}
    }
    problems
}

fn check_document(text: &str, schema: Schema) -> Vec<String> {
    match serde_json::from_str::<Value>(text) {
        Ok(doc) => violations(&compile(schema), &doc),
        Err(e) => vec![format!("invalid JSON: {e}")],
    }
}

/// Schema validity plus the invariants a schema cannot state: a witness
/// exactly when the verdict is fail, and a value that parses back.
fn check_report(text: &str, passed: bool) -> Vec<String> {
    let mut problems = check_document(text, Schema::Report);
    let Ok(doc) = serde_json::from_str::<Value>(text) else {
        return problems;
    };
    let verdict = doc["verdict"].as_str().unwrap_or("");
    if (verdict == "pass") != passed {
        problems.push(format!("verdict {verdict} disagrees with exit code"));
    }
    match (&doc["witness"], passed) {
        (Value::Null, true) => {}
        (Value::Null, false) => problems.push("fail without witness".into()),
        (w, true) => problems.push(format!("pass with witness {w}")),
        (w, false) => {
            let value = w["value"].as_str().unwrap_or("");
            match tpkit::matrix::parse_rational(value) {
                Ok(v) if v.to_string() == value => {}
                _ => problems.push(format!("witness value {value:?} does not round-trip")),
            }
        }
    }
    problems
}
