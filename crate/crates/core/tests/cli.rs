use std::path::PathBuf;
use std::process::{Command, Output};

fn gcplus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcplus")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("gcplus-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn simulate_is_byte_identical() {
    let args = ["simulate", "--code", "rep3", "--p", "0.01,0.02", "--trials", "300", "--seed", "9"];
    let a = gcplus(&args);
    let b = gcplus(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.contains("failures") && header.contains("miscorrections"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn zero_trials_gives_header_only() {
    let out = gcplus(&["simulate", "--trials", "0"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn theory_zero_rate_row() {
    let out = gcplus(&["theory", "--code", "sld20", "--p", "0"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    let vals: Vec<f64> = row.rsplit(',').take(4).map(|v| v.parse().unwrap()).collect();
    assert_eq!(vals, vec![0.0; 4], "{row}");
}

#[test]
fn config_file_and_manifest() {
    let d = scratch("config");
    let conf = d.join("run.conf");
    std::fs::write(&conf, "# sweep\ncode = rep5\ntrials = 50\n").unwrap();
    let manifest = d.join("manifest.txt");
    let out = gcplus(&[
        "simulate",
        "--config",
        conf.to_str().unwrap(),
        "--trials",
        "20",
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("rep5,"));
    let m = std::fs::read_to_string(&manifest).unwrap();
    assert!(m.contains("trials=20"), "{m}");
    std::fs::remove_dir_all(&d).unwrap();
}

#[test]
fn store_and_retrieve_a_file() {
    let d = scratch("store");
    let blob = d.join("in.bin");
    let oligos = d.join("oligos.txt");
    let reads = d.join("reads.txt");
    let back = d.join("out.bin");
    let bytes: Vec<u8> = (0..420u32).map(|i| (i * 131 % 251) as u8).collect();
    std::fs::write(&blob, &bytes).unwrap();
    let p = |x: &PathBuf| x.to_str().unwrap().to_string();
    let enc = gcplus(&["encode", "--input", &p(&blob), "--output", &p(&oligos), "--outer-rate", "0.8"]);
    assert!(enc.status.success(), "{}", String::from_utf8_lossy(&enc.stderr));
    let first = std::fs::read_to_string(&oligos).unwrap();
    assert!(first.lines().all(|l| l.split('\t').nth(1).unwrap().chars().all(|c| "ACGT".contains(c))));
    let ch = gcplus(&["channel", "--input", &p(&oligos), "--output", &p(&reads), "--p", "0.01"]);
    assert!(ch.status.success());
    let fragments = (bytes.len() * 8).div_ceil(168).to_string();
    let n = first.lines().count().to_string();
    let dec = gcplus(&[
        "decode", "--input", &p(&reads), "--output", &p(&back), "--fragments", &fragments, "--outer-len", &n,
    ]);
    assert!(dec.status.success(), "{}", String::from_utf8_lossy(&dec.stderr));
    assert_eq!(&std::fs::read(&back).unwrap()[..bytes.len()], &bytes[..]);
    std::fs::remove_dir_all(&d).unwrap();
}

#[test]
fn bad_arguments_fail() {
    assert!(!gcplus(&["simulate", "--code", "nope", "--trials", "1"]).status.success());
    assert!(!gcplus(&["simulate", "--p", "x"]).status.success());
    assert!(!gcplus(&["frobnicate"]).status.success());
}
