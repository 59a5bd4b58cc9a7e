use std::process::{Command, Output};

fn nsphere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsphere"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sample_prints_unit_vectors() {
    let o = nsphere(&["sample", "--method", "sorted-basic", "--n", "4", "--count", "1", "--rng", "lcg48", "--seed", "7"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    let x: Vec<f64> = lines[0].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(x.len(), 4);
    assert!((x.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn printed_coordinates_round_trip() {
    let o = nsphere(&["sample", "--method", "muller", "--n", "5", "--count", "20", "--seed", "3"]);
    for line in stdout(&o).lines() {
        for field in line.split(',') {
            let v: f64 = field.parse().unwrap();
            assert_eq!(format!("{v:.16e}"), field);
        }
    }
}

#[test]
fn sample_is_byte_deterministic() {
    for method in ["sorted-bucket", "sorted-insitu", "ball-proj", "muller"] {
        let args = ["sample", "--method", method, "--n", "6", "--count", "50", "--rng", "mt64x", "--seed", "11"];
        let a = nsphere(&args);
        let b = nsphere(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{method}");
    }
    let c = nsphere(&["sample", "--method", "muller", "--n", "6", "--count", "50", "--rng", "mt64x", "--seed", "12"]);
    let d = nsphere(&["sample", "--method", "muller", "--n", "6", "--count", "50", "--rng", "mt64x", "--seed", "11"]);
    assert_ne!(c.stdout, d.stdout);
}

#[test]
fn jsonl_rows_are_arrays() {
    let o = nsphere(&["sample", "--method", "ball-sorted", "--n", "2", "--count", "3", "--format", "jsonl"]);
    assert!(o.status.success());
    for line in stdout(&o).lines() {
        assert!(line.starts_with('[') && line.ends_with(']'));
        let inner = &line[1..line.len() - 1];
        let q: f64 = inner.split(',').map(|v| v.parse::<f64>().unwrap().powi(2)).sum();
        assert!(q < 1.0);
    }
}

#[test]
fn sample_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.csv");
    let o = nsphere(&["sample", "--method", "polar3", "--n", "3", "--count", "4", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 4);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| nsphere(args).status.code();
    assert_eq!(code(&["sample", "--method", "marsaglia4", "--n", "5"]), Some(3));
    assert_eq!(code(&["sample", "--method", "reject-cube", "--n", "13"]), Some(3));
    assert_eq!(code(&["sample", "--method", "nope", "--n", "5"]), Some(2));
    assert_eq!(code(&["sample", "--method", "muller"]), Some(2));
    assert_eq!(code(&["sample", "--method", "muller", "--n", "3", "--bogus"]), Some(2));
    assert_eq!(code(&["verify", "--suite", "all", "--samples", "10"]), Some(2));
    assert_eq!(code(&["verify", "--alpha", "1.5"]), Some(2));
    assert_eq!(code(&["schedule", "--max-n", "1"]), Some(2));
    assert_eq!(code(&["bench", "--max-n", "1"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&[]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn unwritable_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let p = path.to_str().unwrap();
    let code = |args: &[&str]| nsphere(args).status.code();
    assert_eq!(code(&["sample", "--method", "muller", "--n", "3", "--out", p]), Some(4));
    assert_eq!(code(&["bench", "--max-n", "2", "--vectors", "10", "--out", p]), Some(4));
    assert_eq!(code(&["verify", "--suite", "consumption", "--samples", "1000", "--out", p]), Some(4));
}

#[test]
fn schedule_output() {
    assert_eq!(stdout(&nsphere(&["schedule", "--max-n", "10"])), "2\n3\n4\n5\n8\n9\n");
    assert_eq!(stdout(&nsphere(&["schedule", "--max-n", "2"])), "2\n");
}

fn count_words(text: &str, word: &str) -> usize {
    text.split(|c: char| !(c.is_ascii_alphanumeric() || c == '-'))
        .filter(|w| *w == word)
        .count()
}

#[test]
fn help_lists_every_tag_once() {
    let methods = [
        "muller", "polar3", "marsaglia3", "marsaglia4", "sibuya", "sorted-basic", "sorted-bucket",
        "sorted-insitu", "ball-sorted", "ball-proj", "reject-cube",
    ];
    let rngs = ["mt32", "mt64", "lcg48", "mt64x"];
    for cmd in ["sample", "bench"] {
        let help = stdout(&nsphere(&[cmd, "--help"]));
        for tag in methods.iter().chain(&rngs) {
            assert_eq!(count_words(&help, tag), 1, "`{tag}` in `{cmd} --help`:\n{help}");
        }
    }
}

#[test]
fn verify_writes_csv_and_passes() {
    let o = nsphere(&["verify", "--suite", "consumption", "--samples", "20000", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("test,method,rng,n,samples,statistic,p_value,pass"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().any(|r| r.starts_with("z:draws/component,sorted-basic,mt64,10,")));
    assert!(rows.iter().all(|r| r.split(',').count() == 8));
    let again = nsphere(&["verify", "--suite", "consumption", "--samples", "20000", "--seed", "4"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn verify_lemmas_rows() {
    let o = nsphere(&["verify", "--suite", "lemmas", "--samples", "5000"]);
    let text = stdout(&o);
    assert!(text.contains("ks1:max-of-2,"));
    assert!(text.contains("ks1:eta1,"));
}

#[test]
fn bench_csv_and_stable_draw_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bench.csv");
    let p = path.to_str().unwrap();
    let args = ["bench", "--methods", "sorted-basic,muller", "--rngs", "lcg48", "--max-n", "5", "--vectors", "500", "--reps", "1", "--seed", "2", "--out", p];
    let read = || {
        let o = nsphere(&args);
        assert!(o.status.success());
        assert!(!o.stderr.is_empty());
        let text = std::fs::read_to_string(&path).unwrap();
        text.lines()
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                // drop the timing column
                format!("{},{},{},{},{}", f[0], f[1], f[2], f[3], f[5])
            })
            .collect::<Vec<_>>()
    };
    let first = read();
    assert_eq!(first[0], "method,rng,n,vectors,rng_draws_per_component");
    assert_eq!(first.len(), 1 + 2 * 4);
    assert!(first.contains(&"muller,lcg48,4,500,1".to_string()));
    assert_eq!(first, read());
}

#[test]
fn bench_single_dimension_grid() {
    let o = nsphere(&["bench", "--max-n", "2", "--vectors", "100", "--reps", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    // four default methods, four generators, n = 2 only
    assert_eq!(text.lines().count(), 1 + 16);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(2) == Some("2")));
}
