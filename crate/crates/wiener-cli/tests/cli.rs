use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn wiener(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wiener"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = wiener(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("wiener-cli");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Numeric cells of every data row (header dropped).
fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.trim().parse().unwrap()).collect())
        .collect()
}

#[test]
fn eval_examples() {
    let r = rows(&stdout(&[
        "eval", "--kind", "Psi", "--gamma", "0", "--k", "1", "--theta", "0",
    ]));
    assert!((r[0][2] - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-14);
    let r = rows(&stdout(&[
        "eval", "--kind", "rho", "--s", "1", "--n", "0", "--x", "0",
    ]));
    assert!((r[0][2] - (2.0 / PI).sqrt()).abs() < 1e-14);
    let r = rows(&stdout(&[
        "eval", "--kind", "phi", "--s", "1", "--k", "0", "--x", "0",
    ]));
    assert!(r[0][2].abs() < 1e-15);
    assert!((r[0][3] - 1.0 / PI.sqrt()).abs() < 1e-14);
}

#[test]
fn eval_ranges_and_storage_order() {
    let r = rows(&stdout(&[
        "eval", "--kind", "phi", "--s", "2", "--k-max", "2", "--range", "-1:1:3",
    ]));
    assert_eq!(r.len(), 15);
    let idx: Vec<i64> = r[..5].iter().map(|row| row[1] as i64).collect();
    assert_eq!(idx, vec![0, 1, -1, 2, -2]);
    assert_eq!(r[14][0], 1.0);
}

#[test]
fn quad_examples() {
    let r = rows(&stdout(&["quad", "--gamma", "0", "--N", "4"]));
    let nodes: Vec<f64> = r.iter().map(|row| row[1]).collect();
    let expected = [-0.75 * PI, -0.25 * PI, 0.25 * PI, 0.75 * PI];
    for (a, b) in nodes.iter().zip(expected) {
        assert!((a - b).abs() < 1e-14);
    }
    assert!(r.iter().all(|row| (row[2] - PI / 2.0).abs() < 1e-14));
    let total: f64 = rows(&stdout(&["quad", "--gamma", "1", "--N", "6"]))
        .iter()
        .map(|row| row[2])
        .sum();
    assert!((total - 2.0 * PI).abs() < 1e-12);
}

#[test]
fn weighted_x_rule_integrates_phi_products() {
    let rule = rows(&stdout(&[
        "quad",
        "--s",
        "2",
        "--N",
        "8",
        "--chart",
        "x",
        "--weighted",
    ]));
    let mut gram = [[0.0f64; 2]; 2];
    for row in &rule {
        let x = row[1].to_string();
        let v = rows(&stdout(&[
            "eval", "--kind", "phi", "--s", "2", "--k-max", "1", "--x", &x,
        ]));
        for a in 0..2 {
            for b in 0..2 {
                gram[a][b] += row[2] * (v[a][2] * v[b][2] + v[a][3] * v[b][3]);
            }
        }
    }
    assert!((gram[0][0] - 1.0).abs() < 1e-12 && (gram[1][1] - 1.0).abs() < 1e-12);
    assert!(gram[0][1].abs() < 1e-12);
}

#[test]
fn analyze_after_synthesize_is_identity() {
    let coeffs = scratch("roundtrip_coeffs.csv");
    let samples = scratch("roundtrip_samples.csv");
    let nodes = scratch("roundtrip_nodes.csv");
    let back = scratch("roundtrip_back.csv");
    fs::write(
        &coeffs,
        "# {\"kind\":\"psi\",\"params\":[1.5],\"count\":2,\"storage_order\":\"0,1,-1,2,-2,...\"}\n\
         index,re,im\n0,0.5,0\n1,-0.25,0.125\n-1,0,1\n2,0.3,0\n-2,0,-0.7\n",
    )
    .unwrap();
    fs::write(
        &nodes,
        stdout(&[
            "transform",
            "nodes",
            "--kind",
            "psi",
            "--gamma",
            "1.5",
            "--extent",
            "2",
        ]),
    )
    .unwrap();
    let c = coeffs.to_str().unwrap();
    let s = samples.to_str().unwrap();
    stdout(&[
        "transform",
        "synthesize",
        "--coeffs",
        c,
        "--points",
        nodes.to_str().unwrap(),
        "--out",
        s,
    ]);
    let b = back.to_str().unwrap();
    stdout(&[
        "transform",
        "analyze",
        "--kind",
        "psi",
        "--gamma",
        "1.5",
        "--extent",
        "2",
        "--samples",
        s,
        "--out",
        b,
    ]);
    let orig = rows(&fs::read_to_string(&coeffs).unwrap());
    let got = rows(&fs::read_to_string(&back).unwrap());
    for (o, g) in orig.iter().zip(&got) {
        assert_eq!(o[0], g[0]);
        assert!((o[1] - g[1]).abs() < 1e-10 && (o[2] - g[2]).abs() < 1e-10);
    }
}

#[test]
fn connect_round_trip_and_identity() {
    let input = scratch("connect_in.csv");
    fs::write(
        &input,
        "# {\"kind\":\"Psi\",\"params\":[0.5],\"count\":2,\"storage_order\":\"0,1,-1,2,-2,...\"}\n\
         index,re,im\n0,1,0\n1,0.5,-0.5\n-1,0.2,0\n2,0,0.1\n-2,-0.3,0\n",
    )
    .unwrap();
    let up = scratch("connect_up.csv");
    let i = input.to_str().unwrap();
    let u = up.to_str().unwrap();
    stdout(&[
        "connect", "psi-psi", "--input", i, "--shift", "2", "--out", u,
    ]);
    let back = stdout(&[
        "connect",
        "psi-psi",
        "--input",
        u,
        "--shift",
        "2",
        "--direction",
        "backward",
    ]);
    let orig = rows(&fs::read_to_string(&input).unwrap());
    for (o, g) in orig.iter().zip(rows(&back)) {
        assert!((o[1] - g[1]).abs() < 1e-12 && (o[2] - g[2]).abs() < 1e-12);
    }
    let same = stdout(&["connect", "psi-psi", "--input", i, "--shift", "0"]);
    assert_eq!(rows(&same), orig);
    let out = wiener(&["connect", "psi-psi", "--input", i, "--shift", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stiffness_commands() {
    let r: f64 = stdout(&["stiffness", "--s", "1", "--N", "11", "--radius"])
        .trim()
        .parse()
        .unwrap();
    assert!((r - 7.99).abs() <= 0.01);
    let export = stdout(&["stiffness", "--s", "2.5", "--N", "21", "--export"]);
    let mut counts = std::collections::HashMap::new();
    for row in rows(&export) {
        *counts.entry(row[0] as i64).or_insert(0) += 1;
    }
    assert!(counts.values().all(|&c| c <= 6));

    let unit = scratch("unit_phi.csv");
    fs::write(
        &unit,
        "# {\"kind\":\"phi\",\"params\":[2.5],\"count\":1,\"storage_order\":\"0,1,-1,2,-2,...\"}\n\
         index,re,im\n0,0,0\n1,1,0\n-1,0,0\n",
    )
    .unwrap();
    let d = rows(&stdout(&[
        "stiffness",
        "--s",
        "2.5",
        "--apply",
        unit.to_str().unwrap(),
    ]));
    let triplets = rows(&export);
    for row in d {
        let k = row[0] as i64;
        let expected = triplets
            .iter()
            .find(|t| t[0] as i64 == k && t[1] as i64 == 1)
            .map_or(0.0, |t| t[2]);
        assert!(row[1].abs() < 1e-15);
        assert!((row[2] - expected).abs() < 1e-13, "k={k}");
    }
}

#[test]
fn table_lists_all_cells_with_both_index_sets() {
    let out = stdout(&["table-eig"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 26);
    let cell = |s: &str, n: &str| -> Vec<String> {
        lines
            .iter()
            .map(|l| l.split_whitespace().map(str::to_string).collect::<Vec<_>>())
            .find(|f| f[0] == s && f[1] == n)
            .unwrap()
    };
    let c = cell("0.6", "11");
    assert!((c[3].parse::<f64>().unwrap() - 7.31).abs() <= 0.02);
    let c = cell("pi^2", "250");
    assert!((c[5].parse::<f64>().unwrap() - 255.63).abs() <= 0.02);
    let c = cell("15.5", "501");
    assert!((c[3].parse::<f64>().unwrap() - 512.99).abs() <= 0.02);
}

#[test]
fn errors_and_exit_codes() {
    assert_eq!(
        wiener(&["eval", "--kind", "phi", "--s", "0.3", "--k", "0", "--x", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        wiener(&["eval", "--kind", "phi", "--s", "1", "--n", "0", "--x", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        wiener(&["eval", "--kind", "nope", "--s", "1", "--k", "0", "--x", "0"])
            .status
            .code(),
        Some(2)
    );
    let bad_tol = Command::new(env!("CARGO_BIN_EXE_wiener"))
        .args(["stiffness", "--s", "1", "--N", "5", "--radius"])
        .env("WIENER_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(bad_tol.status.code(), Some(2));
    let stderr = String::from_utf8(bad_tol.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1);
}

#[test]
fn pi_squared_token_and_determinism() {
    let a = stdout(&["stiffness", "--s", "pi^2", "--N", "11", "--radius"]);
    let b = stdout(&["stiffness", "--s", "pi^2", "--N", "11", "--radius"]);
    assert_eq!(a, b);
    let r: f64 = a.trim().parse().unwrap();
    assert!((r - 21.72).abs() <= 0.02);
}
