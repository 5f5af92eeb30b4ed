//! End-to-end tests of the command-line interface, driving the real binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn goppa_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_goppa"))
}

fn run(args: &[&str]) -> Output {
    goppa_bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("goppa-cli-{}-{name}", std::process::id()));
    p
}

#[test]
fn keygen_is_deterministic_and_prints_parameters() {
    let out_a = tmp_path("keygen-a.code");
    let out_b = tmp_path("keygen-b.code");
    let a = run(&[
        "keygen",
        "--m",
        "4",
        "--r",
        "1",
        "--n",
        "15",
        "--seed",
        "7",
        "--out",
        out_a.to_str().unwrap(),
    ]);
    assert!(a.status.success(), "{a:?}");
    let header = stdout_of(&a);
    assert!(header.contains("n=15"), "{header}");
    assert!(header.contains("r=1"));
    assert!(header.contains("t=1"));
    let k: usize = header
        .split_whitespace()
        .find_map(|p| p.strip_prefix("k=").and_then(|v| v.parse().ok()))
        .unwrap();
    assert!(k >= 7, "dimension bound: k = {k}");

    let b = run(&[
        "keygen",
        "--m",
        "4",
        "--r",
        "1",
        "--n",
        "15",
        "--seed",
        "7",
        "--out",
        out_b.to_str().unwrap(),
    ]);
    assert!(b.status.success());
    assert_eq!(
        std::fs::read(&out_a).unwrap(),
        std::fs::read(&out_b).unwrap(),
        "same seed, same file"
    );
    std::fs::remove_file(&out_b).ok();

    // File round-trip through the library is byte-identical.
    let text = std::fs::read_to_string(&out_a).unwrap();
    let code = goppa::GoppaCode::from_file_string(&text).unwrap();
    assert_eq!(code.to_file_string(), text);
    std::fs::remove_file(&out_a).ok();
}

#[test]
fn keygen_rejects_oversized_support() {
    let out = tmp_path("keygen-reject.code");
    let res = run(&[
        "keygen",
        "--m",
        "4",
        "--r",
        "1",
        "--n",
        "16",
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(2), "{res:?}");
    assert!(!out.exists());
}

#[test]
fn encode_corrupt_decode_roundtrip() {
    let code_file = tmp_path("roundtrip.code");
    let gen = run(&[
        "keygen",
        "--m",
        "5",
        "--r",
        "2",
        "--n",
        "31",
        "--seed",
        "3",
        "--out",
        code_file.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let k: usize = stdout_of(&gen)
        .split_whitespace()
        .find_map(|p| p.strip_prefix("k=").and_then(|v| v.parse().ok()))
        .unwrap();

    let message: String = (0..k).map(|i| if i % 3 == 0 { '1' } else { '0' }).collect();
    let enc = run(&[
        "encode",
        "--code",
        code_file.to_str().unwrap(),
        "--message",
        &message,
    ]);
    assert!(enc.status.success(), "{enc:?}");
    let codeword = stdout_of(&enc).trim().to_string();
    assert_eq!(codeword.len(), 31);

    // Zero corruption decodes back to the same message.
    let dec = run(&[
        "decode",
        "--code",
        code_file.to_str().unwrap(),
        "--received",
        &codeword,
    ]);
    assert!(dec.status.success());
    let out = stdout_of(&dec);
    assert!(out.contains(&format!("message= {message}")), "{out}");
    assert!(out.contains(&format!("codeword= {codeword}")));

    // Weight-t corruption still decodes, and reports the flipped positions.
    let cor = run(&[
        "corrupt", "--word", &codeword, "--weight", "2", "--seed", "9",
    ]);
    assert!(cor.status.success());
    let corrupted = stdout_of(&cor).trim().to_string();
    let flipped: usize = codeword
        .chars()
        .zip(corrupted.chars())
        .filter(|(a, b)| a != b)
        .count();
    assert_eq!(flipped, 2);

    let dec = run(&[
        "decode",
        "--code",
        code_file.to_str().unwrap(),
        "--received",
        &corrupted,
        "--mode",
        "both",
        "--profile",
        "fixed",
        "--count-ops",
    ]);
    assert!(dec.status.success(), "{dec:?}");
    let out = stdout_of(&dec);
    assert!(out.contains(&format!("message= {message}")), "{out}");
    assert!(out.contains("ops= field_mults="), "{out}");
    let error_line = out.lines().find(|l| l.starts_with("error= ")).unwrap();
    assert_eq!(error_line.matches('1').count(), 2);

    std::fs::remove_file(&code_file).ok();
}

#[test]
fn decode_failure_and_validation_exit_codes() {
    let code_file = tmp_path("exitcodes.code");
    let gen = run(&[
        "keygen",
        "--m",
        "4",
        "--r",
        "1",
        "--n",
        "15",
        "--seed",
        "5",
        "--out",
        code_file.to_str().unwrap(),
    ]);
    assert!(gen.status.success());

    // Wrong received length: validation error, exit 2.
    let dec = run(&[
        "decode",
        "--code",
        code_file.to_str().unwrap(),
        "--received",
        "0101",
    ]);
    assert_eq!(dec.status.code(), Some(2));

    // Beyond-capacity corruption: either a decode failure (exit 3) or a
    // successful decode onto some nearby codeword (exit 0).
    let zero = "0".repeat(15);
    let cor = run(&["corrupt", "--word", &zero, "--weight", "2", "--seed", "11"]);
    let corrupted = stdout_of(&cor).trim().to_string();
    let dec = run(&[
        "decode",
        "--code",
        code_file.to_str().unwrap(),
        "--received",
        &corrupted,
    ]);
    assert!(matches!(dec.status.code(), Some(0) | Some(3)), "{dec:?}");

    // Malformed code file: parse error, exit 1.
    let bad = tmp_path("garbage.code");
    std::fs::write(&bad, "not a code file\n").unwrap();
    let dec = run(&[
        "decode",
        "--code",
        bad.to_str().unwrap(),
        "--received",
        &zero,
    ]);
    assert_eq!(dec.status.code(), Some(1));
    std::fs::remove_file(&bad).ok();

    // Unknown flag: usage error, exit 1.
    let usage = run(&["decode", "--nonsense"]);
    assert_eq!(usage.status.code(), Some(1));

    std::fs::remove_file(&code_file).ok();
}

#[test]
fn bench_reports_constant_fixed_column() {
    let code_file = tmp_path("bench.code");
    let csv_file = tmp_path("bench.csv");
    let gen = run(&[
        "keygen",
        "--m",
        "5",
        "--r",
        "2",
        "--n",
        "31",
        "--seed",
        "13",
        "--out",
        code_file.to_str().unwrap(),
    ]);
    assert!(gen.status.success());

    let bench = run(&[
        "bench",
        "--code",
        code_file.to_str().unwrap(),
        "--weights",
        "0..2",
        "--trials",
        "20",
        "--seed",
        "17",
        "--out",
        csv_file.to_str().unwrap(),
    ]);
    assert!(bench.status.success(), "{bench:?}");
    let csv = std::fs::read_to_string(&csv_file).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "weight,trials,newton_fixed,newton_adaptive,patt_min,patt_med,patt_max,failures"
    );
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    // newton_fixed is identical on every row; weight-0 row has no failures.
    assert!(rows.windows(2).all(|w| w[0][2] == w[1][2]), "{csv}");
    assert_eq!(rows[0][7], "0", "{csv}");
    assert_eq!(rows[0][0], "0");
    assert_eq!(rows[1][1], "20");

    // Determinism: the same seed writes the same CSV.
    let csv_file2 = tmp_path("bench2.csv");
    let again = run(&[
        "bench",
        "--code",
        code_file.to_str().unwrap(),
        "--weights",
        "0..2",
        "--trials",
        "20",
        "--seed",
        "17",
        "--out",
        csv_file2.to_str().unwrap(),
    ]);
    assert!(again.status.success());
    assert_eq!(csv, std::fs::read_to_string(&csv_file2).unwrap());

    std::fs::remove_file(&code_file).ok();
    std::fs::remove_file(&csv_file).ok();
    std::fs::remove_file(&csv_file2).ok();
}
