// End-to-end checks of the binary: output shapes, exit codes, flag
// precedence, and determinism across thread counts.

use std::process::{Command, Output};

fn bwtruns(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bwtruns"))
        .args(args)
        .env_remove("BWTRUNS_CAP")
        .output()
        .unwrap()
}

fn bwtruns_with_env(args: &[&str], cap: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bwtruns"))
        .args(args)
        .env("BWTRUNS_CAP", cap)
        .output()
        .unwrap()
}

fn stdout_of(args: &[&str]) -> String {
    let out = bwtruns(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn bwt_prints_the_full_record() {
    let out = stdout_of(&["bwt", "abaabb"]);
    let expected = "word: abaabb\nbwt: bbaaba\nrle: b^2 a^2 b a\nbw-array: 3 1 4 2 6 5\nr: 4\nr(rev): 4\nrho: 1\n";
    assert_eq!(out, expected);
}

#[test]
fn bwt_json_round_trips() {
    let out = stdout_of(&["bwt", "abaab", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["word"], "abaab");
    assert_eq!(v["bwt"], "bbaaa");
    assert_eq!(v["bw_array"], serde_json::json!([3, 1, 4, 2, 5]));
    assert_eq!(v["r"], 2);
    assert_eq!(v["r_rev"], 2);
    assert_eq!(v["rho_num"], 1);
    assert_eq!(v["rho_den"], 1);
}

#[test]
fn rho_prints_decimal_and_exact_fraction() {
    assert_eq!(stdout_of(&["rho", "aaababb"]), "1.5 (3/2)\n");
    assert_eq!(stdout_of(&["rho", "abaabb"]), "1\n");
}

#[test]
fn invert_returns_the_least_preimage_and_rejects_non_images() {
    assert_eq!(stdout_of(&["invert", "bbaaa"]), "aabab\n");
    let out = bwtruns(&["invert", "ab"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not the transform of any word"));
}

#[test]
fn matrix_lists_sorted_rotations() {
    let out = stdout_of(&["matrix", "abaab"]);
    let expected = "\
1  3  aabab  b
2  1  abaab  b
3  4  ababa  a
4  2  baaba  a
5  5  babaa  a
";
    assert_eq!(out, expected);

    let blocked = bwtruns(&["matrix", "abaab", "--limit", "4"]);
    assert_eq!(blocked.status.code(), Some(2));
}

#[test]
fn gen_produces_the_family_words() {
    assert_eq!(stdout_of(&["gen", "fib", "5"]), "abaababa\n");
    assert_eq!(stdout_of(&["gen", "fibplus", "2"]), "abaabb\n");
    assert_eq!(stdout_of(&["gen", "fibplus", "2", "--odd"]), "abaababaa\n");
    assert_eq!(stdout_of(&["gen", "std", "1,1,1"]), "abaab\n");
    assert_eq!(stdout_of(&["gen", "stdplus", "1,2,1,1"]), "ababaabababaa\n");

    let bad = bwtruns(&["gen", "stdplus", "0,2,1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn table_rho_csv_has_stable_columns() {
    let out = stdout_of(&[
        "table", "rho", "--from", "7", "--to", "10", "--format", "csv",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "n,rho_decimal,rho_exact,witness,words_scanned,seconds"
    );
    assert_eq!(lines.len(), 5);
    let row: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(row[0], "7");
    assert_eq!(row[1], "1.5");
    assert_eq!(row[2], "3/2");
    assert_eq!(row[3], "aaababb");
    assert!(row[4].parse::<u64>().unwrap() > 0);
    assert_eq!(lines[4].split(',').nth(1), Some("2"));
}

#[test]
fn table_stdplus_csv_quotes_directives_and_handles_empty_lengths() {
    let out = stdout_of(&[
        "table", "stdplus", "--from", "7", "--to", "13", "--format", "csv",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "n,rho_decimal,rho_exact,directive,word,words_scanned,seconds"
    );
    // no standard plus-word has exactly 7 letters
    assert!(lines[1].starts_with("7,,,,,0,"));
    let n13 = lines.last().unwrap();
    assert!(
        n13.starts_with("13,1.5,3/2,\"1,2,1,1\",ababaabababaa,"),
        "{n13}"
    );
}

#[test]
fn csv_is_rejected_outside_the_table_commands() {
    let out = bwtruns(&["bwt", "abaab", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("table commands"));
}

#[test]
fn cap_flag_beats_environment_beats_default() {
    // default cap 30 admits n = 12
    assert!(bwtruns(&["table", "rho", "--from", "12", "--to", "12"])
        .status
        .success());
    // environment blocks it
    let blocked = bwtruns_with_env(&["table", "rho", "--from", "12", "--to", "12"], "10");
    assert_eq!(blocked.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&blocked.stderr).contains("search cap 10"));
    // the flag wins over the environment
    let unblocked = bwtruns_with_env(
        &["table", "rho", "--from", "12", "--to", "12", "--cap", "12"],
        "10",
    );
    assert!(unblocked.status.success());
    // --force wins over the cap
    let forced = bwtruns_with_env(
        &["table", "rho", "--from", "12", "--to", "12", "--force"],
        "10",
    );
    assert!(forced.status.success());
    // invalid environment values are usage errors
    let invalid = bwtruns_with_env(&["rho", "ab"], "banana");
    assert_eq!(invalid.status.code(), Some(2));
}

#[test]
fn long_sweeps_print_a_runtime_estimate() {
    // cap blocks the run, but the note is printed before the sweep starts
    let out = bwtruns(&["table", "rho", "--from", "27", "--to", "27", "--cap", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("expect roughly"), "{stderr}");
}

#[test]
fn thread_count_changes_nothing_but_seconds() {
    let strip_seconds = |s: String| -> Vec<String> {
        s.lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect()
    };
    let one = strip_seconds(stdout_of(&[
        "table", "rho", "--from", "17", "--to", "18", "--jobs", "1", "--format", "csv",
    ]));
    let three = strip_seconds(stdout_of(&[
        "table", "rho", "--from", "17", "--to", "18", "--jobs", "3", "--format", "csv",
    ]));
    assert_eq!(one, three);
}

#[test]
fn verify_fibplus_matches_and_exits_zero() {
    let out = stdout_of(&["verify", "fibplus", "--kmax", "3"]);
    assert!(out.contains("fibonacci-plus k=2 even: ok"));
    assert!(out.trim_end().ends_with("4/4 closed forms match"));
}

#[test]
fn verify_stdplus_is_seeded_and_deterministic() {
    let a = stdout_of(&["verify", "stdplus", "--trials", "5"]);
    let b = stdout_of(&["verify", "stdplus", "--trials", "5", "--seed", "42"]);
    assert_eq!(a, b);
    assert!(a.starts_with("seed: 42\n"));
    assert!(a.trim_end().ends_with("5/5 closed forms match"));
    let c = stdout_of(&["verify", "stdplus", "--trials", "5", "--seed", "7"]);
    assert!(c.starts_with("seed: 7\n"));
    assert_ne!(a, c);
}

#[test]
fn catastrophe_reports_the_run_count_jump() {
    let out = stdout_of(&["catastrophe", "--k", "2"]);
    let expected = "k: 2\nbase: baaba\nr(base): 2\nextended: bbaaba\nr(extended): 4\nratio: 2\n";
    assert_eq!(out, expected);
    assert_eq!(bwtruns(&["catastrophe", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(bwtruns(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bwtruns(&["bwt", "abcab"]).status.code(), Some(2));
    assert_eq!(
        bwtruns(&["table", "rho", "--from", "9", "--to", "8"])
            .status
            .code(),
        Some(2)
    );
}
