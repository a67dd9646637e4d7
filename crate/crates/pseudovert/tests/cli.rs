//! End-to-end checks of the command-line interface: exit codes, output
//! shapes, and the spec'd file formats.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pseudovert"))
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn hamcut_on_point_file() {
    let out = bin()
        .args(["hamcut", "--input", &data("points12.txt"), "--seed", "3"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    let cut = lines.next().unwrap();
    assert!(cut.starts_with("cut "), "{cut}");
    assert_eq!(cut.split_whitespace().count(), 3);
    let queries = lines.next().unwrap();
    assert!(queries.starts_with("queries "), "{queries}");
}

#[test]
fn hamcut_on_wiring_with_colors() {
    let out = bin()
        .args([
            "hamcut",
            "--wiring",
            &data("non_pappus.wiring"),
            "--colors",
            &data("colors9.txt"),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("cut "));
}

#[test]
fn hamcut_rejects_collinear_input() {
    let out = bin()
        .args(["hamcut", "--input", &data("collinear.txt")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("collinear triple (0, 1, 2)"), "{stderr}");
}

#[test]
fn tiny_instance_cut() {
    let dir = std::env::temp_dir().join("pseudovert-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("two.txt");
    std::fs::write(&file, "2\n0 0 r\n1 1 b\n").unwrap();
    let out = bin()
        .args(["hamcut", "--input", file.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("cut 0 1\n"), "{stdout}");
}

#[test]
fn select_rank_matches_reference() {
    // tri3 fixture: rank 3 along the vertical through the a-c crossing is b.
    let out = bin()
        .args([
            "select-rank",
            "--input",
            &data("tri3.txt"),
            "--p",
            "0",
            "--q",
            "2",
            "--k",
            "3",
            "--check",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1");
}

#[test]
fn select_rank_rejects_bad_rank() {
    for k in ["0", "4"] {
        let out = bin()
            .args([
                "select-rank",
                "--input",
                &data("tri3.txt"),
                "--p",
                "0",
                "--q",
                "2",
                "--k",
                k,
            ])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(1), "k={k}");
    }
}

#[test]
fn select_rank_singleton_subset() {
    let out = bin()
        .args([
            "select-rank",
            "--input",
            &data("tri3.txt"),
            "--p",
            "0",
            "--q",
            "2",
            "--k",
            "1",
            "--subset",
            "1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1");
}

#[test]
fn verify_cut_exit_codes() {
    let ok = bin()
        .args(["verify-cut", "--input", &data("points12.txt"), "--red", "0", "--blue", "1"])
        .output()
        .unwrap();
    // (0,1) may or may not be a cut; just check the code matches the output.
    let stdout = String::from_utf8(ok.stdout).unwrap();
    if stdout.trim() == "ok" {
        assert!(ok.status.success());
    } else {
        assert_eq!(ok.status.code(), Some(2));
    }
}

#[test]
fn bench_emits_expected_rows() {
    let out = bin()
        .args([
            "bench",
            "--min-n",
            "16",
            "--max-n",
            "32",
            "--trials",
            "2",
            "--algorithm",
            "select-rank",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "n,algorithm,seed,queries,wall_ms,setup_queries");
    assert_eq!(lines.len(), 5, "header + 4 data rows");
    // Deterministic under the default seed, wall time aside.
    let again = bin()
        .args([
            "bench",
            "--min-n",
            "16",
            "--max-n",
            "32",
            "--trials",
            "2",
            "--algorithm",
            "select-rank",
        ])
        .output()
        .unwrap();
    let strip_wall = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| {
                let cols: Vec<&str> = l.split(',').collect();
                cols.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != 4)
                    .map(|(_, c)| *c)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    };
    assert_eq!(
        strip_wall(&stdout),
        strip_wall(&String::from_utf8(again.stdout).unwrap())
    );
}

#[test]
fn render_svg_to_stdout() {
    let out = bin()
        .args([
            "render",
            "--wiring",
            &data("non_pappus.wiring"),
            "--highlight",
            "0,3",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("stroke-dasharray"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn env_seed_is_honored() {
    let with_env = bin()
        .args(["hamcut", "--input", &data("points12.txt")])
        .env("PSEUDOVERT_SEED", "9")
        .output()
        .unwrap();
    let with_flag = bin()
        .args(["hamcut", "--input", &data("points12.txt"), "--seed", "9"])
        .output()
        .unwrap();
    assert_eq!(with_env.stdout, with_flag.stdout);
}
