use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(rel)
}

fn crosscap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crosscap"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn build_seed(dir: &Path) {
    let dir = dir.to_str().unwrap();
    let seed = data("seed/knots.csv");
    stdout(&crosscap(&[
        "ingest",
        "--input",
        seed.to_str().unwrap(),
        "--out",
        dir,
    ]));
    for step in ["build-ddt", "build-dsplice", "build-dcc"] {
        stdout(&crosscap(&[
            step, "--max-n", "7", "--out", dir, "--jobs", "2",
        ]));
    }
}

#[test]
fn code_conversions() {
    assert_eq!(stdout(&crosscap(&["dt", "1,2,3,1,2,3"])), "4,6,2\n");
    assert_eq!(
        stdout(&crosscap(&["dt", "4,6,2", "--format", "dt"])),
        "1,2,3,1,2,3\n"
    );
    assert_eq!(
        stdout(&crosscap(&["canon", "[2, 3, 1, 2, 3, 1]"])),
        "1,2,3,1,2,3\n"
    );
    let orbit = stdout(&crosscap(&["orbit", "4,10,12,14,2,8,6", "--format", "dt"]));
    assert_eq!(orbit, "4,10,12,14,2,8,6\n4,10,14,12,2,6,8\n");
}

#[test]
fn diagram_inspection() {
    let faces = stdout(&crosscap(&["faces", "1,2,3,1,2,3"]));
    assert!(faces.contains("signs: [1, 1, 1]"));
    let oracle = stdout(&crosscap(&["oracle", "1,2,3,4,2,1,4,3"]));
    assert!(oracle.contains("crosscap 2"));
    assert!(oracle.contains("seifert circles 3"));
    let flypes = stdout(&crosscap(&["flypes", "1,2,3,1,4,5,6,3,2,4,7,6,5,7"]));
    assert!(flypes.contains("4,8,12,14,2,6,10"));
}

#[test]
fn pipeline_and_queries() {
    let dir = tempfile::tempdir().unwrap();
    build_seed(dir.path());
    let out = dir.path().to_str().unwrap();
    for level in [
        "dg_07.json",
        "ddt_07.json",
        "dsplice_07.json",
        "dcc_07.json",
    ] {
        assert!(dir.path().join(level).exists(), "{level}");
    }
    assert_eq!(
        stdout(&crosscap(&["cc", "7_4", "3_1", "--out", out])),
        "7_4,3\n3_1,1\n"
    );
    assert_eq!(
        stdout(&crosscap(&[
            "cc",
            "--code",
            "1,2,3,1,2,3,4,5,6,4,5,6",
            "--out",
            out
        ])),
        "2\n"
    );
    let splice = stdout(&crosscap(&[
        "splice",
        "1,2,3,1,4,5,6,3,2,4,7,6,5,7",
        "--out",
        out,
    ]));
    assert!(splice.contains("4: [1,2,3,1,2,3,4,5,6,4,5,6] 3_1 # 3_1"));
    let seqs = stdout(&crosscap(&["min-sequences", "1,2,3,1,2,3", "--out", out]));
    assert_eq!(seqs, "1\n2\n3\n");
    let oracle = stdout(&crosscap(&[
        "verify", "--oracle", "--max-n", "7", "--out", out,
    ]));
    assert!(oracle.ends_with("checked 14 mismatches 0\n"));
}

#[test]
fn verify_exit_status_follows_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    build_seed(dir.path());
    let out = dir.path().to_str().unwrap();
    let good = dir.path().join("good.csv");
    std::fs::write(&good, "# expected\n3_1,1\n7_4,3\n").unwrap();
    let report = stdout(&crosscap(&[
        "verify",
        "--input",
        good.to_str().unwrap(),
        "--out",
        out,
    ]));
    assert_eq!(report, "checked 2 mismatches 0\n");

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "3_1,2\n8_1,2\n").unwrap();
    let result = crosscap(&["verify", "--input", bad.to_str().unwrap(), "--out", out]);
    assert!(!result.status.success());
    assert_eq!(
        String::from_utf8(result.stdout).unwrap(),
        "MISMATCH 3_1 expected 2 computed 1\nMISSING 8_1 expected 2\nchecked 2 mismatches 2\n"
    );
}

#[test]
fn ingest_rejects_bad_rows() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("rows.csv");
    std::fs::write(&input, "x_1,1,2,1,2\n").unwrap();
    let out = crosscap(&[
        "ingest",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "gauss",
        "--out",
        dir.path().join("tables").to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no planar realization"));
}
