use std::io::Write;
use std::process::{Command, Stdio};

use cli_io::grammar::{D2Line, FiltrationOneLine, MasseyLine, ProductLine};
use cli_io::prompt;
use cli_io::timing::{parse_log, HEADER};

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn adams(args: &[&str], stdin: &str) -> Out {
    adams_env(args, stdin, &[])
}

fn adams_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Out {
    let mut child = Command::new(env!("CARGO_BIN_EXE_adams"))
        .args(args)
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    Out {
        code: o.status.code().unwrap(),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn range(n: &'static str, s: &'static str) -> Vec<&'static str> {
    vec!["--module", "S_2", "--save-dir", "", "--max-n", n, "--max-s", s]
}

#[test]
fn interactive_session_prompts_verbatim() {
    let o = adams(&["secondary"], "S_2\n\n20\n8\n");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stderr, format!("{} {} {} {} ", prompt::MODULE, prompt::SAVE_DIR, prompt::MAX_N, prompt::MAX_S));
    assert!(o.stdout.contains("d_2 x_(15, 1, 0) = [1]\n"));

    let o = adams(&["product"], "S_2\n\n22\n6\ng\n20\n4\n[1]\n");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let expected = [
        prompt::MODULE,
        prompt::SAVE_DIR,
        prompt::MAX_N,
        prompt::MAX_S,
        prompt::PRODUCT_NAME,
        "n of Ext class g:",
        "s of Ext class g:",
        prompt::INPUT_CLASS,
    ];
    assert_eq!(o.stderr, expected.map(|p| format!("{p} ")).concat());
    assert!(o.stdout.lines().all(|l| l.starts_with("[g] ")));

    let o = adams(&["massey"], "S_2\n\n12\n7\n7\n1\nh_3\n[1]\n\n0\n4\nh_0^4\n[1]\n\n");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let prompts = [
        prompt::MODULE,
        prompt::SAVE_DIR,
        prompt::MAX_N,
        prompt::MAX_S,
        "n of a:",
        "s of a:",
        "Name of Ext part of a:",
        "Input Ext class h_3:",
        "Name of τ part of a:",
        "n of b:",
        "s of b:",
        "Name of Ext part of b:",
        "Input Ext class h_0^4:",
        "Name of τ part of b:",
    ];
    let banner = prompt::MASSEY_BANNER.map(|l| format!("{l}\n")).concat();
    assert_eq!(o.stderr, banner + &prompts.map(|p| format!("{p} ")).concat());
    assert!(o.stdout.contains("<x_(1, 1, 0), [h_0^4], [h_3]> = ±([1])\n"), "{}", o.stdout);
}

#[test]
fn flags_replace_prompts_and_defaults_apply() {
    let mut args = range("20", "8");
    args.push("secondary");
    let o = adams(&args, "");
    assert_eq!((o.code, o.stderr.as_str()), (0, ""));
    let o = adams(&["filtration_one"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stderr.contains(prompt::MAX_S));
    assert!(o.stdout.contains("h_0 · x_(0, 0, 0) = [1]\n"));
    assert!(o.stdout.lines().all(|l| l.parse::<FiltrationOneLine>().unwrap().x.n <= 30));
}

#[test]
fn d2_file() {
    let mut args = range("20", "8");
    args.push("secondary");
    let o = adams(&args, "");
    let lines: Vec<D2Line> = o.stdout.lines().map(|l| l.parse().unwrap()).collect();
    let keys: Vec<_> = lines.iter().map(|l| (l.source.n, l.source.s, l.source.i)).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(lines.iter().map(|l| l.to_string() + "\n").collect::<String>(), o.stdout);
    let mut args = range("5", "5");
    args.push("secondary");
    let o = adams(&args, "");
    assert_eq!((o.code, o.stdout.as_str()), (0, ""));
}

#[test]
fn product_and_massey_files_parse() {
    let mut args = range("20", "8");
    args.extend(["product", "--name", "h_1", "--n", "1", "--s", "1", "--class", "x_(1, 1, 0)"]);
    let o = adams(&args, "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<ProductLine> = o.stdout.lines().map(|l| l.parse().unwrap()).collect();
    assert!(lines.iter().any(|l| l.x.n == 1 && l.x.s == 1));
    assert!(lines.iter().all(|l| l.name == "h_1" && !l.value.is_zero()));

    let mut args = range("12", "7");
    args.extend(["massey", "--a-n", "0", "--a-s", "1", "--a-name", "h_0", "--a-class", "[1]", "--a-tau-name", ""]);
    args.extend(["--b-n", "1", "--b-s", "1", "--b-name", "h_1", "--b-class", "[1]", "--b-tau-name", ""]);
    let o = adams(&args, "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<MasseyLine> = o.stdout.lines().map(|l| l.parse().unwrap()).collect();
    assert!(lines.iter().any(|l| (l.c.n, l.c.s) == (0, 1) && l.value.e.is_some()), "<h_0, h_1, h_0> = h_1^2");
}

#[test]
fn filtration_one_file() {
    let mut args = range("10", "5");
    args.push("filtration_one");
    let o = adams(&args, "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("h_0 · x_(0, 1, 0) = [1]\n"));
    assert!(o.stdout.contains("h_1 · x_(1, 1, 0) = [1]\n"));
    assert!(!o.stdout.contains("h_1 · x_(3, 1, 0) ="));
    for l in o.stdout.lines() {
        let f: FiltrationOneLine = l.parse().unwrap();
        assert!(f.j <= 3 && !f.product.is_zero());
    }
}

#[test]
fn module_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("S_2_moore.module");
    std::fs::write(&path, "p 2\ngens 0 1\nSq(1) g0 = g1\n").unwrap();
    let p = path.to_str().unwrap();
    let o = adams(&["--module", p, "--save-dir", "", "--max-n", "6", "--max-s", "4", "filtration_one"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    // The Bockstein kills h_0 on the bottom cell.
    assert!(!o.stdout.contains("h_0 · x_(0, 0, 0)"));
    assert!(o.stdout.contains("h_1 · x_(0, 0, 0) = [1]\n"));
    let o = adams(&["--module", p, "--save-dir", "", "--max-n", "6", "--max-s", "4", "secondary"], "");
    assert_eq!(o.code, 1);

    std::fs::write(&path, "p 2\ngens 0 -2\n").unwrap();
    let o = adams(&["--module", p, "--save-dir", "", "--max-n", "6", "--max-s", "4", "filtration_one"], "");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("line 2") && o.stderr.contains("negative degree"), "{}", o.stderr);
    let o = adams(&["--module", "nowhere", "--save-dir", "", "--max-n", "6", "--max-s", "4", "filtration_one"], "");
    assert_eq!(o.code, 1);
}

#[test]
fn exit_codes() {
    assert_eq!(adams(&["--bogus"], "").code, 1);
    assert_eq!(adams(&["--help"], "").code, 0);
    assert_eq!(adams(&["secondary"], "S_2\n\nseven\n").code, 1);
    assert_eq!(adams(&["secondary"], "S_2\n\n-3\n").code, 1);

    let mut args = range("20", "8");
    args.extend(["product", "--name", "h_1", "--n", "1", "--s", "1", "--class", "[]"]);
    let o = adams(&args, "");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("empty class vector"));

    let mut args = range("20", "8");
    args.extend(["product", "--name", "h_4", "--n", "15", "--s", "1", "--class", "[1]"]);
    let o = adams(&args, "");
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("does not survive"), "{}", o.stderr);

    let mut args = range("12", "6");
    args.extend(["massey", "--a-n", "1", "--a-s", "1", "--a-name", "h_1", "--a-class", "[1]", "--a-tau-name", ""]);
    args.extend(["--b-n", "1", "--b-s", "1", "--b-name", "h_1", "--b-class", "[1]", "--b-tau-name", ""]);
    let o = adams(&args, "");
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("is not null"), "{}", o.stderr);

    let mut args = range("10", "4");
    args.extend(["--output", "/nonexistent/dir/d2", "secondary"]);
    assert_eq!(adams(&args, "").code, 2);
}

#[test]
fn output_file_and_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d2");
    let mut args = range("20", "8");
    args.extend(["--output", out.to_str().unwrap(), "secondary"]);
    let serial = adams_env(&args, "", &[("ADAMS_THREADS", "1")]);
    assert_eq!((serial.code, serial.stdout.as_str()), (0, ""));
    let first = std::fs::read(&out).unwrap();
    let parallel = adams_env(&args, "", &[("ADAMS_THREADS", "4")]);
    assert_eq!(parallel.code, 0);
    assert_eq!(std::fs::read(&out).unwrap(), first);
    assert_eq!(adams_env(&args, "", &[("ADAMS_THREADS", "many")]).code, 1);
}

#[test]
fn timing_log_has_one_line_per_generator() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("timing");
    let mut args = range("16", "6");
    args.extend(["--timing", log.to_str().unwrap(), "secondary"]);
    assert_eq!(adams(&args, "").code, 0);
    let text = std::fs::read_to_string(&log).unwrap();
    assert!(text.starts_with(HEADER));
    let records = parse_log(&text).unwrap();
    let mut r = resolution::Resolution::new(steenrod_milnor::ModulePresentation::sphere());
    r.extend(16, 6).unwrap();
    let gens: usize = (2..=6).map(|s| r.all_gens(s).len()).sum();
    assert_eq!(records.len(), gens);
    assert_eq!(text.lines().count(), gens + 1);

    let mut args = range("6", "1");
    args.extend(["--timing", log.to_str().unwrap(), "secondary"]);
    assert_eq!(adams(&args, "").code, 0);
    assert_eq!(std::fs::read_to_string(&log).unwrap(), format!("{HEADER}\n"));
}

#[test]
fn interrupted_run_resumes_to_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let save = dir.path().join("S_2_milnor");
    let save = save.to_str().unwrap();
    let args = |extra: &[&'static str]| {
        let mut a = vec!["--module", "S_2", "--save-dir", save, "--max-n", "24", "--max-s", "9"];
        a.extend_from_slice(extra);
        a
    };
    let stopped = adams(&args(&["--stop-after-stem", "13", "secondary"]), "");
    assert_eq!(stopped.code, 2);
    assert!(stopped.stderr.contains("stopped after stem 13"));
    assert!(std::path::Path::new(save).join("S_2_n24_s9.adsec").exists());
    let resumed = adams(&args(&["secondary"]), "");
    assert_eq!(resumed.code, 0);
    let mut fresh = range("24", "9");
    fresh.push("secondary");
    let direct = adams(&fresh, "");
    assert_eq!(resumed.stdout, direct.stdout);
    assert!(!direct.stdout.is_empty());
}
