use std::process::{Command, Output};

fn gwpskit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwpskit"))
        .args(args)
        .env_remove("GWPSKIT_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_tsv_small_bound() {
    let out = gwpskit(&["classify", "--bound", "3", "--format", "tsv", "--check"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0].split('\t').count(), 7);
    assert_eq!(lines[1], "1\t(1,1,1,3)\t72\t3\t6\t6\t2");
}

#[test]
fn classify_row_nine() {
    let out = gwpskit(&["classify", "--format", "tsv"]);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "9\t(2,3,3,4)\t24\t12\t12\t2\t4"));
}

#[test]
fn veronese_command() {
    let out = gwpskit(&["veronese", "1,1,4,6", "2"]);
    assert_eq!(stdout(&out).trim(), "(1,1,1,2,3); relations: [2]");
    let out = gwpskit(&["veronese", "(1,2,2,5)", "2", "--cutoff", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn latex_output() {
    let out = gwpskit(&["betti", "--bound", "3", "--format", "latex"]);
    let text = stdout(&out);
    assert!(text.starts_with("\\begin{tabular}"));
    assert!(text.contains("(1, 1, 1, 3) & 2 & 6 & 37 & 595 & 13056 \\\\"));
}

#[test]
fn alpha_skips_heavy_rows_and_uses_the_env_cache() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_gwpskit"))
            .args(["alpha", "--bound", "4", "--format", "tsv", "--check", "--threads", "2"])
            .env("GWPSKIT_CACHE", dir.path())
            .output()
            .unwrap()
    };
    let cold = run();
    assert!(cold.status.success());
    let text = stdout(&cold);
    assert!(text.contains("(2,3,3,4)\t4\t2\t6\t5\t5"));
    assert!(text.contains("(1,1,1,3)\t2\t6\tskipped: over budget"));
    assert!(String::from_utf8_lossy(&cold.stderr).contains("use --all"));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 3);
    let warm = run();
    assert_eq!(cold.stdout, warm.stdout);
}

#[test]
fn bad_flags_exit_with_an_error() {
    assert_eq!(gwpskit(&["classify", "--prime", "15"]).status.code(), Some(2));
    assert_eq!(gwpskit(&["classify", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(gwpskit(&["classify", "--threads", "0"]).status.code(), Some(2));
}
