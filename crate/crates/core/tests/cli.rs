use std::process::Command;

use serde_json::{json, Value};
use wallforge::cli::{run, EXIT_DOMAIN, EXIT_IO, EXIT_OK, EXIT_USAGE};

const RANK2: &str = "2,-1,-1/2,-1/6";

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("wallforge").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn call_json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

fn binary(args: &[&str], threads: &str) -> (i32, Vec<u8>) {
    let o = Command::new(env!("CARGO_BIN_EXE_wallforge"))
        .args(args)
        .env("WALLFORGE_THREADS", threads)
        .output()
        .unwrap();
    (o.status.code().unwrap(), o.stdout)
}

#[test]
fn twist_example() {
    let v = call_json(&["twist", "--v", RANK2, "--beta", "-2"]);
    assert_eq!(v, json!({"c": ["2", "3", "3/2", "-1/2"]}));
}

#[test]
fn slopes_example() {
    let v = call_json(&[
        "slopes", "--v", RANK2, "--beta", "-2", "--t", "1", "--s", "1/3",
    ]);
    assert_eq!(
        v,
        json!({"nu_rational": "1/6", "lambda": "-4", "rho": "1/2"})
    );
}

#[test]
fn twist_accepts_sixths_in_ch3() {
    let v = call_json(&["twist", "--v", "1,0,0,1/3"]);
    assert_eq!(v["c"], json!(["1", "0", "0", "1/3"]));
}

#[test]
fn lattice_violation_exits_3() {
    let (code, _, err) = call(&["twist", "--v", "1,0,1/3,0"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("error"));
}

#[test]
fn malformed_rational_exits_2_naming_flag() {
    let (code, _, err) = call(&["twist", "--v", "1,x,0,0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--v"), "{err}");
    let (code, _, err) = call(&["polystab", "--b", "1/0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--b"), "{err}");
}

#[test]
fn charge_reports_q_form() {
    let v = call_json(&[
        "charge", "--v", RANK2, "--beta", "-2", "--t", "1", "--s", "1/3", "--K", "1",
    ]);
    // Q = K t Delta + 4 (ch_2^beta)^2 - 6 ch_1^beta ch_3^beta with ch^beta = (2, 3, 3/2, -1/2).
    assert_eq!(v["q_form"], json!("21"));
    assert_eq!(v["k_in_supported_range"], json!(true));
}

#[test]
fn scenarios() {
    let v = call_json(&["scenario", "honest"]);
    assert_eq!(v["computed"]["ch_B"], json!(["2", "-1", "-1/2", "5/6"]));
    assert!(v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|x| x["status"] != "fail"));

    let v = call_json(&["scenario", "collapsing"]);
    assert_eq!(v["computed"]["v_1_2.delta"], json!("0"));
    assert_eq!(v["computed"]["v_2_3.delta"], json!("0"));

    let v = call_json(&["scenario", "fake"]);
    assert_eq!(v["computed"]["epsilon_bound"], json!("13/12"));
    assert_eq!(v["computed"]["point"], json!({"beta": "-2", "t": "3/2"}));
    let bound = v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["claim"] == "epsilon bound >= 5/6")
        .unwrap();
    assert_eq!(bound["status"], "pass");

    let (code, _, _) = call(&["scenario", "nonexistent"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn polystab_examples() {
    assert_eq!(call_json(&["polystab", "--b", "-1/2"])["type"], "PT");
    assert_eq!(call_json(&["polystab", "--b", "0"])["type"], "LargeVolume");
    let grid = call_json(&["polystab", "--grid", "-2:2:1/4"]);
    let grid = grid.as_array().unwrap();
    assert_eq!(grid.len(), 17);
    for e in grid {
        let ty = e["type"].as_str().unwrap();
        let holding: Vec<_> = e["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c[1] == true)
            .map(|c| c[0].as_str().unwrap())
            .collect();
        assert_eq!(holding, vec![ty], "b = {}", e["b"]);
    }
}

#[test]
fn walls_json_has_largest_wall() {
    let v = call_json(&["walls", "--v", RANK2]);
    let walls = v["enumeration"]["walls"].as_array().unwrap();
    assert!(!walls.is_empty());
    assert_eq!(walls[0]["center_beta"], "-3/2");
    assert_eq!(walls[0]["radius_sq"], "1/4");
    assert_eq!(v["last_wall"]["beta"]["interval"], json!(["-3/2", "-3/2"]));
    assert_eq!(v["last_wall"]["t"], json!({"p": "1/4", "q": "0", "d": "0"}));
}

#[test]
fn walls_svg_matches_golden_file() {
    let (code, out, _) = call(&[
        "walls", "--v", RANK2, "--s", "1/3", "--t-min", "1/16", "--format", "svg",
    ]);
    assert_eq!(code, EXIT_OK);
    let golden = include_str!("fixtures/walls_rank2.svg");
    assert_eq!(out, golden);
}

#[test]
fn walls_svg_structure() {
    let (_, out, _) = call(&["walls", "--v", RANK2, "--format", "svg"]);
    let json = call_json(&["walls", "--v", RANK2]);
    let n_walls = json["enumeration"]["walls"].as_array().unwrap().len();
    assert_eq!(out.matches("<path").count(), 2 + n_walls);
    assert_eq!(out.matches("<circle").count(), 1);
    assert!(out.contains(r#"id="theta""#) && out.contains(r#"stroke="blue""#));
    assert!(out.contains(r#"id="wall_0000""#) && out.contains(r#"stroke="red""#));
}

#[test]
fn walls_structure_sheaf_class() {
    let (code, csv, _) = call(&["walls", "--v", "1,0,0,0", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    // Theta is t = beta^2, i.e. alpha = |beta|.
    for line in csv.lines().skip(1).filter(|l| l.starts_with("theta,")) {
        let f: Vec<&str> = line.split(',').collect();
        let (b, a): (f64, f64) = (f[2].parse().unwrap(), f[3].parse().unwrap());
        assert!((a - b.abs()).abs() < 1e-6, "{line}");
    }
    // Gamma contains the vertical line beta = 0.
    assert!(csv
        .lines()
        .any(|l| l.starts_with("gamma,") && l.ends_with(",vertical") && l.contains(",0.000000,")));
    let (_, svg, _) = call(&["walls", "--v", "1,0,0,0", "--format", "svg"]);
    assert_eq!(svg.matches("<path").count(), 2);
    assert_eq!(svg.matches("<circle").count(), 0);
}

#[test]
fn walls_csv_sorted() {
    let (_, csv, _) = call(&["walls", "--v", RANK2, "--format", "csv"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("curve_id,kind,beta,alpha,branch"));
    let keys: Vec<(String, f64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[2].parse().unwrap())
        })
        .collect();
    assert!(keys
        .windows(2)
        .all(|w| w[0].0 < w[1].0 || (w[0].0 == w[1].0 && w[0].1 <= w[1].1)));
}

#[test]
fn walls_write_to_file_and_io_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("walls.svg");
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["walls", "--v", RANK2, "--format", "svg", "--out", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        include_str!("fixtures/walls_rank2.svg")
    );

    let bad = dir.path().join("missing").join("walls.svg");
    let (code, _, _) = call(&[
        "walls",
        "--v",
        RANK2,
        "--format",
        "svg",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_IO);
}

#[test]
fn walls_domain_errors() {
    let (code, _, _) = call(&["walls", "--v", "-1,0,0,0"]);
    assert_eq!(code, EXIT_DOMAIN);
    let (code, _, _) = call(&["walls", "--v", "1,0,1,0"]);
    assert_eq!(code, EXIT_DOMAIN);
}

#[test]
fn binary_output_is_deterministic_across_threads() {
    for format in ["json", "csv", "svg"] {
        let args = ["walls", "--v", RANK2, "--format", format];
        let (code, first) = binary(&args, "1");
        assert_eq!(code, EXIT_OK);
        for threads in ["1", "4", "4"] {
            assert_eq!(
                binary(&args, threads).1,
                first,
                "format {format}, threads {threads}"
            );
        }
    }
}
