use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clifford-lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn dims(v: &serde_json::Value) -> Vec<(i64, i64, i64)> {
    v["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t[0].as_i64().unwrap(), t[1].as_i64().unwrap(), t[2].as_i64().unwrap()))
        .collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("clifford-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn algebra_sl2() {
    let o = bin(&["algebra", "--n", "2", "--check", "sl2", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["total"], 3);
}

#[test]
fn algebra_hodge_automorphism() {
    let o = bin(&["algebra", "--n", "3", "--check", "hodge-aut"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("g H g⁻¹ = 𝓗") && text.contains("g Λ g⁻¹ = α𝓛") && text.contains("g L g⁻¹ = α𝓛̄"));
}

#[test]
fn algebra_range_guard() {
    let o = bin(&["algebra", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("n out of supported range"));
}

#[test]
fn hermitian_on_kt() {
    let o = bin(&["verify", "--manifold", "kt.json", "--suite", "hermitian", "--t", "-1,0,1", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert!(v["total"].as_u64().unwrap() >= 30);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| !c["anchor"].as_str().unwrap().is_empty()));
}

#[test]
fn kaehler_suite_gating() {
    let o = bin(&["verify", "--manifold", "kt.json", "--suite", "kaehler"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dω ≠ 0"));
    let o = bin(&["verify", "--manifold", "kt_ak.json", "--suite", "kaehler"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn json_is_reproducible() {
    let args = ["verify", "--manifold", "kt", "--suite", "bochner", "--json", "-"];
    let a = bin(&args);
    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "3"]);
    let b = bin(&parallel);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, bin(&args).stdout);
}

#[test]
fn json_to_file_keeps_text() {
    let path = scratch("report.json");
    let p = path.to_str().unwrap();
    let o = bin(&["verify", "--manifold", "torus4", "--suite", "bochner", "--t", "1", "--json", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("suite bochner | model torus4 | mode exact"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["model"], "torus4");
}

#[test]
fn torus_binomial_diamond() {
    let o = bin(&["diamond", "--manifold", "torus4.json", "--family", "d", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let mut rows = [0i64; 5];
    for (p, q, d) in dims(&v) {
        rows[(p + q) as usize] += d;
    }
    assert_eq!(rows, [1, 4, 6, 4, 1]);
    assert!(dims(&v).contains(&(1, 1, 4)));
}

#[test]
fn kt_diamond_text() {
    let o = bin(&["diamond", "--manifold", "kt", "--family", "eps-delbh"]);
    let body: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split_whitespace().collect::<Vec<_>>().join(" ")).collect();
    assert_eq!(body, ["1", "1 1", "0 2 0", "1 1", "1"]);
    assert!(stdout(&o).contains("invariant forms"));
}

#[test]
fn clifford_grading_matches_transport() {
    // g⁻¹ carries (r, s) = (q − p, n − p − q) onto (p, q)
    for (m, cliff, form) in [("kt", "B-Bt", "eps-delbh"), ("kt_ak", "D", "delta"), ("kt", "D", "D")] {
        let c = dims(&json(&bin(&["diamond", "--manifold", m, "--family", cliff, "--grading", "rs", "--json", "-"])));
        let sym: Vec<_> = c.iter().map(|&(r, s, d)| (-r, -s, d)).collect();
        let mut sorted = sym.clone();
        sorted.sort();
        assert_eq!(sorted, c, "{m} {cliff}: c-symmetry");
        if cliff == form {
            continue;
        }
        let f = dims(&json(&bin(&["diamond", "--manifold", m, "--family", form, "--json", "-"])));
        for (p, q, d) in f {
            assert!(c.contains(&(q - p, 2 - p - q, d)), "{m}: ({p},{q})");
        }
    }
}

#[test]
fn unknown_family_and_suite() {
    let o = bin(&["diamond", "--manifold", "kt", "--family", "zeta"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown family"));
    let o = bin(&["verify", "--manifold", "kt", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_manifold_reports_position() {
    let path = scratch("broken.json");
    std::fs::write(&path, "{\n  \"n\": 1,\n  \"coframe\": [\"a\", \"b\"],\n  \"J\": {\"a\": \"b\", \"b\": \"-a\"},\n}\n").unwrap();
    let o = bin(&["info", "--manifold", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));

    std::fs::write(&path, r#"{"n": 1, "coframe": ["a", "b"], "d": {"b": [["a", "c", "1"]]}, "J": {"a": "b", "b": "-a"}}"#).unwrap();
    let o = bin(&["info", "--manifold", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("d.b[0][1]"), "{}", stderr(&o));
}

#[test]
fn info_checks_expectations() {
    let o = bin(&["info", "--manifold", "kt"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("dω = x∧y∧w"));
    assert!(text.contains("N = 0"));

    let path = scratch("claims.json");
    let spec = std::fs::read_to_string(clifford_lab::catalog::resolve("kt")).unwrap();
    std::fs::write(&path, spec.replace("\"almost_kaehler\": false", "\"almost_kaehler\": true")).unwrap();
    let o = bin(&["info", "--manifold", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("file expects true"));
}

#[test]
fn catalog_override() {
    let dir = scratch("catalog");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("plane.json"),
        r#"{"name": "plane", "n": 1, "coframe": ["u", "v"], "J": {"u": "v", "v": "-u"}}"#,
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_clifford-lab"))
        .args(["diamond", "--manifold", "plane", "--family", "d", "--json", "-"])
        .env("CLIFFORD_LAB_CATALOG", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(dims(&json(&o)), vec![(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]);
}

#[test]
fn float_mode_runs() {
    let o = bin(&["verify", "--manifold", "kt", "--suite", "laplacian", "--mode", "float", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("mode float"));
}
