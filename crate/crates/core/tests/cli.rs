use std::fs;
use std::process::{Command, Output};

use complete_intersections::corpus::EMBEDDED;
use complete_intersections::InvariantProfile;

fn citop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_citop"))
        .args(args)
        .output()
        .expect("run citop")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, name: &str) -> Option<&'a str> {
    text.lines().find_map(|l| {
        let mut parts = l.split_whitespace();
        (parts.next() == Some(name)).then(|| parts.next()).flatten()
    })
}

#[test]
fn compute_reports_profile() {
    let out = citop(&["compute", "--dim", "2", "--degrees", "6,5,3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "d"), Some("90"));
    assert_eq!(field(&text, "c1"), Some("-8"));
    assert_eq!(field(&text, "d_p1"), Some("-5760"));
    assert_eq!(field(&text, "e"), Some("5760"));

    let text = stdout(&citop(&[
        "compute",
        "--dim",
        "3",
        "--degrees",
        "88,28,19,14,6,6",
    ]));
    assert_eq!(field(&text, "p1"), Some("-9147"));
    assert_eq!(field(&text, "e"), Some("-35445749391360"));
}

#[test]
fn compute_strips_linear_factors() {
    let text = stdout(&citop(&["compute", "--dim", "4", "--degrees", "1,1"]));
    assert_eq!(field(&text, "r"), Some("0"));
    assert_eq!(field(&text, "e"), Some("5"));
}

#[test]
fn classify_pair_headline() {
    let out = citop(&[
        "classify-pair",
        "--dim",
        "3",
        "70,16,16,14,7,6",
        "56,49,8,6,5,4,4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let headline = text.lines().next().unwrap();
    assert!(
        headline.contains("diffeomorphic; c_1 differs (-119/-121)"),
        "{headline}"
    );
    assert!(text.contains("criteria: jupp-wall"));
}

#[test]
fn classify_pair_across_codimensions() {
    let text = stdout(&citop(&[
        "classify-pair",
        "--dim",
        "5",
        "52,50,30,27,23,18,6,5,4",
        "54,46,36,25,20,15,13,3,2,2",
    ]));
    assert!(
        text.starts_with(
            "X_5(52,50,30,27,23,18,6,5,4) vs X_5(54,46,36,25,20,15,13,3,2,2): diffeomorphic"
        ),
        "{text}"
    );
    assert!(text.contains("r      9 != 10"));
}

#[test]
fn search_finds_surface_pair() {
    let out = citop(&[
        "search",
        "--dim",
        "2",
        "--max-degree",
        "6",
        "--max-codim",
        "6",
        "--distinct-c1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("(6,5,3)") && text.contains("(5,2,2,2,2,2)"),
        "{text}"
    );
    assert!(text.ends_with("1 group(s) found\n"));
}

#[test]
fn search_without_matches() {
    let out = citop(&[
        "search",
        "--dim",
        "5",
        "--max-degree",
        "8",
        "--max-codim",
        "4",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("no pairs found\n"));
}

#[test]
fn search_output_independent_of_workers() {
    let run = |w: &str| {
        stdout(&citop(&[
            "--format",
            "machine",
            "search",
            "--dim",
            "3",
            "--max-degree",
            "9",
            "--max-codim",
            "5",
            "--workers",
            w,
        ]))
    };
    let one = run("1");
    assert_eq!(run("2"), one);
    assert_eq!(run("8"), one);
}

#[test]
fn conflicting_filters_are_rejected() {
    let out = citop(&[
        "search",
        "--dim",
        "2",
        "--max-degree",
        "6",
        "--max-codim",
        "6",
        "--distinct-c1",
        "--equal-c1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_cap_exits_with_resource_code() {
    let out = citop(&[
        "search",
        "--dim",
        "2",
        "--max-degree",
        "6",
        "--max-codim",
        "6",
        "--max-table-size",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["compute", "--dim", "2", "--degrees", "0,3"][..],
        &["compute", "--dim", "2", "--degrees", "6,x"],
        &["classify-pair", "--dim", "9", "6,5,3", "5,2,2,2,2,2"],
        &["factor", "1000003"],
    ] {
        assert_eq!(citop(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_pair_reports_mismatch() {
    let out = citop(&["verify-pair", "--dim", "2", "6,5,3", "6,5,2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = citop(&["verify-pair", "--dim", "2", "6,5,3", "5,2,2,2,2,2"]);
    assert!(out.status.success());
}

#[test]
fn factor_output() {
    let text = stdout(&citop(&["factor", "52,44,36,25,20,12,8"]));
    assert!(
        text.starts_with("d = 3953664000 = 2^13*3^3*5^3*11*13\n"),
        "{text}"
    );
    assert!(text.contains("nu_2(d) = 13"));
    let text = stdout(&citop(&["factor", "1"]));
    assert!(text.starts_with("d = 1 = 1\n"));
}

#[test]
fn embedded_corpus_verifies() {
    let out = citop(&["verify-tables"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

fn write_corpus(edit: impl Fn(&str, &str) -> String) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in EMBEDDED {
        fs::write(dir.path().join(name), edit(name, text)).unwrap();
    }
    dir
}

#[test]
fn perturbed_corpus_fails_verification() {
    let dir = write_corpus(|name, text| {
        if name == "dim2_homeo_not_diffeo.toml" {
            text.replacen("e = \"5760\"", "e = \"5761\"", 1)
        } else {
            text.to_string()
        }
    });
    let out = citop(&["verify-tables", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(
        text.lines()
            .any(|l| l.starts_with("FAIL") && l.contains("e expected 5761")),
        "{text}"
    );
}

#[test]
fn malformed_corpus_is_invalid_input() {
    let dir = write_corpus(|name, text| {
        if name == "homeo4.toml" {
            text.replacen("claim = \"homeomorphic\"", "claim = \"isotopic\"", 1)
        } else {
            text.to_string()
        }
    });
    let out = citop(&["verify-tables", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn machine_output_round_trips() {
    let out = citop(&[
        "--format",
        "machine",
        "compute",
        "--dim",
        "5",
        "--degrees",
        "54,48,30,30,13,11,11,4",
    ]);
    let text = stdout(&out);
    let profile: InvariantProfile = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&profile).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn machine_output_is_json_for_every_subcommand() {
    for args in [
        &[
            "classify-pair",
            "--dim",
            "4",
            "66,63,29,23,6,4",
            "69,58,36,14,11,3",
        ][..],
        &["factor", "6,5,3"],
        &[
            "search",
            "--dim",
            "2",
            "--max-degree",
            "6",
            "--max-codim",
            "6",
        ],
        &["verify-tables"],
    ] {
        let mut full = vec!["--format", "machine"];
        full.extend_from_slice(args);
        let text = stdout(&citop(&full));
        serde_json::from_str::<serde_json::Value>(&text)
            .unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}
