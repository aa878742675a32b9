//! Runs the `mailminer` binary against the fixture corpus.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn corpus() -> String {
    fixtures().join("corpus").display().to_string()
}

fn path(p: &Path) -> String {
    p.display().to_string()
}

fn run_with_log(args: &[&str], log: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mailminer"))
        .args(args)
        .env("MAILMINER_LOG", log)
        .output()
        .unwrap()
}

fn run(args: &[&str]) -> Output {
    run_with_log(args, "quiet")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Converts the fixture corpus into `dir/emails.csv`.
fn fixture_csv(dir: &Path) -> String {
    let csv = path(&dir.join("emails.csv"));
    stdout(&run(&["convert", &corpus(), "--out", &csv]));
    csv
}

#[test]
fn convert_writes_seven_rows() {
    let text = stdout(&run(&["convert", &corpus()]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "Date,MessageId,CC,From,Subject,HTML");
    assert_eq!(lines.len(), 8);
}

#[test]
fn convert_selected_attributes() {
    let text = stdout(&run(&["convert", &corpus(), "--attrs", "From,HTML"]));
    assert_eq!(text.lines().next(), Some("From,HTML"));
    assert_eq!(text.lines().nth(1), Some("spammer@x.test,yes"));
}

#[test]
fn convert_arff_declares_attributes() {
    let text = stdout(&run(&["convert", &corpus(), "--format", "arff"]));
    assert!(text.starts_with("@relation emails\n"));
    assert!(text.contains("@attribute HTML {yes,no}\n"));
    assert_eq!(
        text.lines().filter(|l| l.starts_with("@attribute")).count(),
        6
    );
}

#[test]
fn dupes_on_three_attributes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    let text = stdout(&run(&["dupes", &csv, "--attrs", "From,Subject,HTML"]));
    assert!(text.contains("different: 4, identical: 3"), "{text}");
}

#[test]
fn dupes_csv_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    let text = stdout(&run(&[
        "dupes",
        &csv,
        "--attrs",
        "From,Subject,HTML",
        "--report",
        "csv",
    ]));
    assert_eq!(
        text,
        "attributes,different,identical\n\"From,Subject,HTML\",4,3\n"
    );
}

#[test]
fn cluster_fixed_k() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    let text = stdout(&run(&["cluster", &csv, "--k", "2", "--seed", "42"]));
    assert!(text.contains("Iterations: 2\n"), "{text}");
    assert!(text.contains("6 ( 86%)"), "{text}");
    assert!(text.contains("1 ( 14%)"), "{text}");
}

#[test]
fn cluster_auto_k() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    let text = stdout(&run(&["cluster", &csv, "--auto-k", "--kmax", "3"]));
    assert!(text.starts_with("Clustered instances (k=2)\n"), "{text}");
}

#[test]
fn auto_k_needs_kmax() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    assert_eq!(run(&["cluster", &csv, "--auto-k"]).status.code(), Some(1));
    assert_eq!(
        run(&["cluster", &csv, "--auto-k", "--kmax", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["cluster", &csv]).status.code(), Some(1));
}

#[test]
fn cluster_svg_report_is_xml() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    let svg = path(&dir.path().join("c.svg"));
    stdout(&run(&[
        "cluster", &csv, "--k", "2", "--report", "svg", "--out", &svg,
    ]));
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(
        doc.descendants().filter(|n| n.has_tag_name("rect")).count(),
        2
    );
}

#[test]
fn unknown_report_format_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    assert_eq!(
        run(&["dupes", &csv, "--report", "pdf"]).status.code(),
        Some(1)
    );
}

#[test]
fn top_senders_ranks_bulk_mailer_first() {
    let text = stdout(&run(&["top-senders", &corpus(), "-n", "1"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("spammer@x.test 6 "), "{text}");
}

#[test]
fn zero_k_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    assert_eq!(run(&["cluster", &csv, "--k", "0"]).status.code(), Some(1));
}

#[test]
fn too_many_clusters_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    assert_eq!(run(&["cluster", &csv, "--k", "8"]).status.code(), Some(2));
}

#[test]
fn unknown_attribute_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.csv");
    let out = run(&[
        "convert",
        &corpus(),
        "--attrs",
        "Bogus",
        "--out",
        &path(&target),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!target.exists());

    let csv = fixture_csv(dir.path());
    assert_eq!(
        run(&["dupes", &csv, "--attrs", "Bogus"]).status.code(),
        Some(1)
    );
}

#[test]
fn missing_inputs_are_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let nope = path(&dir.path().join("nope"));
    assert_eq!(run(&["convert", &nope]).status.code(), Some(3));
    assert_eq!(run(&["top-senders", &nope]).status.code(), Some(3));
    assert_eq!(run(&["dupes", &nope]).status.code(), Some(3));
}

#[test]
fn ragged_csv_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bad.csv");
    std::fs::write(&csv, "a,b\n1,2\n3\n").unwrap();
    assert_eq!(run(&["dupes", &path(&csv)]).status.code(), Some(2));
}

#[test]
fn empty_directory_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&run(&["convert", &path(dir.path())]));
    assert_eq!(text, "Date,MessageId,CC,From,Subject,HTML\n");
}

#[test]
fn malformed_file_is_skipped_and_reported() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(
        fixtures().join("misc/truncated.eml"),
        dir.path().join("a.eml"),
    )
    .unwrap();
    std::fs::copy(
        fixtures().join("misc/multipart.eml"),
        dir.path().join("b.eml"),
    )
    .unwrap();
    let out = run_with_log(&["convert", &path(dir.path())], "info");
    assert_eq!(stdout(&out).lines().count(), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("a.eml"), "{err}");
    assert!(err.contains("skipped: 1"), "{err}");

    let quiet = run(&["convert", &path(dir.path())]);
    assert!(quiet.stderr.is_empty());
}

#[test]
fn full_sample_keeps_all_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    let text = stdout(&run(&["filter", &csv, "--sample", "1.0"]));
    assert_eq!(text, std::fs::read_to_string(&csv).unwrap());
}

#[test]
fn bad_fraction_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    assert_eq!(
        run(&["filter", &csv, "--sample", "1.5"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["filter", &csv]).status.code(), Some(1));
}

#[test]
fn remove_then_dupes_matches_projection() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    let narrow = path(&dir.path().join("narrow.csv"));
    stdout(&run(&[
        "filter",
        &csv,
        "--remove",
        "Date,MessageId,CC",
        "--out",
        &narrow,
    ]));
    let text = stdout(&run(&["dupes", &narrow]));
    assert!(text.contains("different: 4, identical: 3"), "{text}");
}

#[test]
fn discretized_dates_become_bins() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    let text = stdout(&run(&["filter", &csv, "--discretize", "Date:3"]));
    assert!(text.lines().skip(1).all(|l| l.starts_with('b')), "{text}");
    assert_eq!(
        run(&["filter", &csv, "--discretize", "Subject:3"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn shuffle_is_seeded_permutation() {
    let dir = tempfile::tempdir().unwrap();
    let csv = fixture_csv(dir.path());
    let shuffled = |seed: &str| stdout(&run(&["filter", &csv, "--shuffle", "--seed", seed]));
    assert_eq!(shuffled("7"), shuffled("7"));
    let mut a: Vec<String> = shuffled("7").lines().map(String::from).collect();
    let mut b: Vec<String> = std::fs::read_to_string(&csv)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn help_and_unknown_subcommand() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}
