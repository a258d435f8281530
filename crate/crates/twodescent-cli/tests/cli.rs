//! End-to-end tests of the `twodescent` binary: argument handling, exit
//! codes, output schemas, and determinism across runs and worker counts.

use std::process::{Command, Output};

use twodescent_cli::output::CSV_HEADER;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twodescent"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout should be UTF-8")
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("terminated by signal")
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(exit_code(&["analyze", "9"]), 1);
    assert_eq!(exit_code(&["analyze", "2"]), 1);
    assert_eq!(exit_code(&["analyze", "3", "3"]), 1);
    assert_eq!(exit_code(&["analyze", "3", "5", "--exponents", "3"]), 1);
    assert_eq!(exit_code(&["analyze", "3", "--exponents", "2"]), 1);
    assert_eq!(exit_code(&["analyze"]), 1);
    assert_eq!(exit_code(&["sieve", "--n-max", "1"]), 1);
    assert_eq!(
        exit_code(&["sieve", "--prime-bound", "20", "--n-max", "0"]),
        1
    );
    assert_eq!(exit_code(&["bogus"]), 1);
    assert_eq!(
        exit_code(&["sieve", "--prime-bound", "20", "--n-max", "1", "--bogus"]),
        1
    );
    assert_eq!(exit_code(&[]), 1);
}

#[test]
fn usage_errors_name_the_offending_value() {
    let out = run(&["analyze", "9"]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains('9'), "stderr was: {stderr}");
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(exit_code(&["--help"]), 0);
    assert_eq!(exit_code(&["--version"]), 0);
    assert_eq!(exit_code(&["analyze", "--help"]), 0);
    assert_eq!(exit_code(&["sieve", "--help"]), 0);
    assert_eq!(exit_code(&["crosscheck", "--help"]), 0);
    assert_eq!(exit_code(&["verify-tables", "--help"]), 0);
}

#[test]
fn crosscheck_rejects_depths_beyond_the_oracle_bound() {
    assert_eq!(
        exit_code(&["crosscheck", "--prime-bound", "100", "--n-max", "17"]),
        1
    );
}

#[test]
fn csv_header_is_exactly_the_documented_schema() {
    let text = stdout_of(&["sieve", "--prime-bound", "8", "--n-max", "1"]);
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
    assert_eq!(
        CSV_HEADER,
        "D,n,primes,rank_X,rank_Y,size_S_minus,size_Sprime_minus,size_S_plus,\
         size_Sprime_plus,t_minus,t_plus,dimsum_minus,dimsum_plus,rank0,\
         rank1_conditional,notes"
    );
}

#[test]
fn analyze_csv_reports_known_values_for_two_primes() {
    let text = stdout_of(&["analyze", "17", "3", "--format", "csv"]);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER);
    assert_eq!(
        lines.next().unwrap(),
        "51,2,3;17,2,2,2,4,2,2,1,0,1,0,true,true,conditional-BSD"
    );
    assert_eq!(lines.next(), None);
}

#[test]
fn analyze_accepts_primes_in_any_order() {
    let a = stdout_of(&["analyze", "17", "3", "--format", "csv"]);
    let b = stdout_of(&["analyze", "3", "17", "--format", "csv"]);
    assert_eq!(a, b);
}

#[test]
fn analyze_json_reports_known_sizes_and_members() {
    let text = stdout_of(&["analyze", "17", "--format", "json"]);
    let record: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(record["D"], 17);
    assert_eq!(record["size_S_minus"], 4);
    assert_eq!(record["size_Sprime_minus"], 8);
    assert_eq!(record["size_S_plus"], 4);
    assert_eq!(record["size_Sprime_plus"], 4);
    assert_eq!(record["t_minus"], 1);
    assert_eq!(record["t_plus"], 0);
    assert!(record.get("members").is_none());

    let text = stdout_of(&["analyze", "3", "17", "--emit-members", "--format", "json"]);
    let record: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(record["size_S_minus"], 2);
    assert_eq!(record["size_Sprime_minus"], 4);
    assert_eq!(record["members"]["S_minus"], serde_json::json!([1, 102]));
    assert_eq!(
        record["members"]["Sprime_minus"],
        serde_json::json!([1, 51, -2, -102])
    );
    assert_eq!(record["members"]["S_plus"], serde_json::json!([1, -102]));
    assert_eq!(
        record["members"]["Sprime_plus"],
        serde_json::json!([1, 102])
    );
}

#[test]
fn cube_exponents_change_only_the_d_field() {
    let flat = stdout_of(&["analyze", "3", "--format", "csv"]);
    let cubed = stdout_of(&["analyze", "3", "--exponents", "3", "--format", "csv"]);
    let flat_row = flat.lines().nth(1).unwrap();
    let cubed_row = cubed.lines().nth(1).unwrap();
    let (flat_d, flat_rest) = flat_row.split_once(',').unwrap();
    let (cubed_d, cubed_rest) = cubed_row.split_once(',').unwrap();
    assert_eq!(flat_d, "3");
    assert_eq!(cubed_d, "27");
    assert_eq!(flat_rest, cubed_rest);
}

#[test]
fn sieve_csv_is_byte_identical_across_runs_and_worker_counts() {
    let args = ["sieve", "--prime-bound", "40", "--n-max", "2"];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);
    let parallel = stdout_of(&[
        "sieve",
        "--prime-bound",
        "40",
        "--n-max",
        "2",
        "--parallel",
        "4",
    ]);
    assert_eq!(first, parallel);
    // 11 odd primes below 40 alone or in pairs: 11 + 55 records after the header
    assert_eq!(first.lines().count(), 1 + 11 + 55);
}

#[test]
fn sieve_emits_records_in_ascending_d_order() {
    let text = stdout_of(&["sieve", "--prime-bound", "20", "--n-max", "2"]);
    let ds: Vec<u64> = text
        .lines()
        .skip(1)
        .map(|line| line.split(',').next().unwrap().parse().unwrap())
        .collect();
    let mut sorted = ds.clone();
    sorted.sort_unstable();
    assert_eq!(ds, sorted);
    assert!(ds.contains(&15));
}

#[test]
fn flagged_only_is_a_verbatim_subset() {
    let full = stdout_of(&["sieve", "--prime-bound", "30", "--n-max", "2"]);
    let flagged = stdout_of(&[
        "sieve",
        "--prime-bound",
        "30",
        "--n-max",
        "2",
        "--flagged-only",
    ]);
    let full_rows: Vec<&str> = full.lines().skip(1).collect();
    let flagged_rows: Vec<&str> = flagged.lines().skip(1).collect();
    assert!(flagged_rows.len() < full_rows.len());
    for row in &flagged_rows {
        assert!(
            full_rows.contains(row),
            "flagged row missing from full run: {row}"
        );
        let fields: Vec<&str> = row.split(',').collect();
        assert!(
            fields[13] == "true" || fields[14] == "true",
            "unflagged row slipped through: {row}"
        );
    }
    for row in &full_rows {
        let fields: Vec<&str> = row.split(',').collect();
        let is_flagged = fields[13] == "true" || fields[14] == "true";
        assert_eq!(flagged_rows.contains(row), is_flagged, "row: {row}");
    }
    // D = 17 has both ranks zero, so it must be dropped by the filter.
    assert!(flagged_rows.iter().all(|row| !row.starts_with("17,")));
}

#[test]
fn out_flag_writes_exactly_the_stdout_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("records.csv");
    let from_stdout = stdout_of(&["sieve", "--prime-bound", "20", "--n-max", "2"]);
    let out = run(&[
        "sieve",
        "--prime-bound",
        "20",
        "--n-max",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let from_file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(from_file, from_stdout);
}

#[test]
fn unwritable_out_path_is_a_usage_error() {
    assert_eq!(
        exit_code(&[
            "analyze",
            "3",
            "--out",
            "/nonexistent-directory/records.csv"
        ]),
        1
    );
}

#[test]
fn crosscheck_reports_agreement_on_a_small_range() {
    let out = run(&["crosscheck", "--prime-bound", "12", "--n-max", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("agree"), "{text}");
    assert!(text.contains("14"), "{text}");
}

#[test]
fn verify_tables_passes_at_the_default_bound() {
    let out = run(&["verify-tables"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("all 64 rows pass"), "{text}");
    assert_eq!(text.lines().filter(|l| l.contains(": pass")).count(), 64);
}

#[test]
fn verify_tables_flags_unrealized_rows_with_exit_three() {
    let out = run(&["verify-tables", "--max-prime", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("inconclusive"), "{text}");
}
