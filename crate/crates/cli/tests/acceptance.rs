//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use clifford_lab::catalog;
use clifford_lab::commands::{diamond_dims, verify_report};
use clifford_lab_core::clifford::Multivector;
use clifford_lab_core::context::ModelContext;
use clifford_lab_core::harmonics::{check_symmetries, harmonic_space, Family, Grading};
use clifford_lab_core::lie::LieModel;
use clifford_lab_core::report::Report;
use clifford_lab_core::scalar::{Exact, Float, Scalar};
use clifford_lab_core::suites::{self, AlgebraCheck, Suite};

const TOL: f64 = 1e-9;
const MODELS: [&str; 4] = ["torus4", "kt", "kt_ak", "iwasawa"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn model(name: &str) -> LieModel {
    catalog::load(name).unwrap_or_else(|e| panic!("{name}: {e}")).1
}

fn report<S: Scalar>(name: &str, suite: Suite, ts: &[(i64, i64)]) -> Result<Report, String> {
    verify_report::<S>(model(name), suite, ts, TOL, 4).map_err(|o| o.stderr.trim().to_string())
}

/// Passes with exact zero residuals, and contains every id in `required`.
fn exact_clean(r: &Report, required: &[String]) -> Result<(), String> {
    if let Some(c) = r.failures().next() {
        return Err(format!("{} {}: {} fails ({})", r.suite, r.model, c.id, c.detail.clone().unwrap_or_default()));
    }
    if let Some(c) = r.checks.iter().find(|c| c.residual != 0.0) {
        return Err(format!("{} {}: {} has residual {}", r.suite, r.model, c.id, c.residual));
    }
    for id in required {
        if r.find(id).is_none() {
            return Err(format!("{} {}: identity {id} missing", r.suite, r.model));
        }
    }
    Ok(())
}

fn per_t(ts: &[(i64, i64)], ids: &[&str]) -> Vec<String> {
    ts.iter().flat_map(|(a, _)| ids.iter().map(move |id| format!("t={a}.{id}"))).collect()
}

fn owned(ids: &[&str]) -> Vec<String> {
    ids.iter().map(|s| s.to_string()).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_clifford-lab"))
        .args(["diamond", "--manifold", "kt.json", "--family", "eps-delbh", "--json", "-"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let dims: BTreeMap<(i64, i64), i64> = v["dims"]
        .as_array()
        .ok_or("no dims")?
        .iter()
        .map(|t| ((t[0].as_i64().unwrap(), t[1].as_i64().unwrap()), t[2].as_i64().unwrap()))
        .collect();
    let rows: Vec<Vec<i64>> = (0..=4)
        .map(|k| (0..=k).rev().filter(|p| *p <= 2 && k - p <= 2).map(|p| dims[&(p, k - p)]).collect())
        .collect();
    let want = vec![vec![1], vec![1, 1], vec![0, 2, 0], vec![1, 1], vec![1]];
    let shown: Vec<String> = rows.iter().map(|r| r.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")).collect();
    if rows != want || v["invariant_forms"] != true || v["family"] != "eps-delbh" {
        return Err(format!("got {}", shown.join(" / ")));
    }
    if elapsed >= 10.0 {
        return Err(format!("took {elapsed:.2} s"));
    }
    Ok(format!("KT eps-delbh diamond {} in {elapsed:.2} s", shown.join(" / ")))
}

fn criterion_2() -> Outcome {
    let m = model("kt");
    let ctx = ModelContext::<Exact>::new(m, 0.0).map_err(|e| e.to_string())?;
    let at = |name: &str| ctx.model.labels().iter().position(|l| l == name).unwrap();
    let xyw = (1 << at("x")) | (1 << at("y")) | (1 << at("w"));
    let expected = Multivector::blade(4, xyw, Exact::one());
    if ctx.forms.domega != expected {
        return Err(format!("dω = {}", ctx.forms.domega));
    }
    if !ctx.data.nijenhuis.data().iter().all(|x| x.is_zero()) || !ctx.model.is_integrable() {
        return Err("N ≠ 0".into());
    }
    Ok("dω = x∧y∧w and N = 0 exactly".into())
}

fn criterion_3() -> Outcome {
    let required = owned(&[
        "sl2.L_Lbar",
        "sl2.H_L",
        "sl2.H_Lbar",
        "corr.H",
        "corr.L_plus_Lbar",
        "corr.L_minus_Lbar",
        "g.H",
        "g.Lambda",
        "g.L",
        "bigrading.total",
        "bigrading.vanishing",
    ]);
    let mut total = 0;
    for n in 1..=3 {
        let r = suites::algebra::<Exact>(n, &AlgebraCheck::ALL).map_err(|e| e.to_string())?;
        exact_clean(&r, &required)?;
        total += r.checks.len();
    }
    Ok(format!("{total} exact identities for n = 1, 2, 3"))
}

fn criterion_4() -> Outcome {
    let ts = [(-1, 1), (0, 1), (1, 1), (2, 1)];
    let r = report::<Exact>("kt", Suite::Hermitian, &ts)?;
    let mut required = per_t(
        &ts,
        &["dh.d_h", "dh.d_j", "dh.dc_h", "dh.dc_j", "dh.dt_h", "dh.dt_j", "dh.dct_h", "dh.dct_j", "dt.adjoint", "gaudmainprop"],
    );
    required.extend(owned(&[
        "curlyd.forms",
        "curlyb.forms",
        "deltatrd.delta",
        "deltatrd.trs",
        "hcurlyb.l",
        "hcurlyb.lbar",
        "hcurlyb.h",
        "hdeltab.h",
        "hdeltab.l",
    ]));
    exact_clean(&r, &required)?;
    Ok(format!("{} exact identities on KT, t ∈ {{-1, 0, 1, 2}}", r.checks.len()))
}

fn criterion_5() -> Outcome {
    let ts = suites::default_ts(Suite::Appendix);
    let mut required = owned(&["nij.trace", "bpN", "lc.torsion_free", "kob_nom"]);
    required.extend(per_t(&ts, &["herm_iff1", "a_plus_t.1", "herm_iff2.20", "herm_iff2.02", "t_general", "bpTnew"]));
    required.extend(owned(&["probe#3.prop20", "probe#3.prop11", "probe#3.jderid_plus"]));
    let mut total = 0;
    for name in MODELS {
        let r = report::<Exact>(name, Suite::Appendix, &ts)?;
        exact_clean(&r, &required)?;
        total += r.checks.len();
    }
    Ok(format!("{total} exact identities on the four catalog models"))
}

fn criterion_6() -> Outcome {
    let r = report::<Exact>("kt_ak", Suite::Kaehler, &[])?;
    let required = owned(&[
        "ak.lambda_deltabar",
        "ak.l_delta_star",
        "ak.lambda_delta_star",
        "ak.laplacians",
        "deltad_deltadelta",
        "hdeltad.l",
        "hdeltad.lbar",
        "hdeltad.h",
        "D.closure.l",
        "D.closure.lbar",
        "D.closure.h",
        "akcor",
    ]);
    exact_clean(&r, &required)?;
    let ctx = ModelContext::<Exact>::new(model("kt_ak"), 0.0).map_err(|e| e.to_string())?;
    let dd = harmonic_space(&ctx, Family::CurlyD, Grading::Clifford);
    let dl = harmonic_space(&ctx, Family::Delta, Grading::Forms);
    for p in 0..=2i64 {
        for q in 0..=2i64 {
            let (a, b) = (dd.get((q - p, 2 - p - q)).len(), dl.get((p, q)).len());
            if a != b {
                return Err(format!("dim 𝓗_𝔇^{{{},{}}} = {a} but dim 𝓗_δ^{{{p},{q}}} = {b}", q - p, 2 - p - q));
            }
        }
    }
    Ok(format!("{} exact identities on kt_ak, 𝓗_𝔇 ≅ 𝓗_δ in all 9 bidegrees", r.checks.len()))
}

fn criterion_7() -> Outcome {
    let ts = [(-1, 1), (1, 1)];
    let base = per_t(&ts, &["bochner.square", "bochner.anti", "bochner.square.torsion", "bochner.anti.torsion"]);
    let r = report::<Exact>("kt", Suite::Bochner, &ts)?;
    exact_clean(&r, &base)?;
    let mut with_flat = base;
    with_flat.extend(per_t(&ts, &["bochner.differential"]));
    let t = report::<Exact>("torus4", Suite::Bochner, &ts)?;
    exact_clean(&t, &with_flat)?;
    Ok(format!("{} exact identities on KT and torus4, t ∈ {{-1, 1}}", r.checks.len() + t.checks.len()))
}

fn criterion_8() -> Outcome {
    let ctx = ModelContext::<Exact>::new(model("kt"), 0.0).map_err(|e| e.to_string())?;
    let r = check_symmetries(&ctx);
    exact_clean(&r, &owned(&["ciso", "trsiso", "hodgehar"]))?;
    let bb = harmonic_space(&ctx, Family::CurlyBBt, Grading::Clifford).dims();
    let eh = harmonic_space(&ctx, Family::EpsDelbarHat, Grading::Forms).dims();
    for (&(rr, ss), &d) in &bb {
        if bb.get(&(-rr, -ss)) != Some(&d) || bb.get(&(rr, -ss)) != Some(&d) {
            return Err(format!("dimension asymmetry at ({rr},{ss})"));
        }
    }
    let mut matched = 0;
    for p in 0..=2i64 {
        for q in 0..=2i64 {
            if bb.get(&(q - p, 2 - p - q)) != eh.get(&(p, q)) {
                return Err(format!("g-transport mismatch at (p,q) = ({p},{q})"));
            }
            matched += 1;
        }
    }
    Ok(format!("c, ᵗ dimension symmetry and g-transport in all {matched} bidegrees"))
}

type Verdicts = BTreeMap<String, bool>;

fn verdicts<S: Scalar>(name: &str) -> BTreeMap<String, Result<Verdicts, String>> {
    let mut out = BTreeMap::new();
    for suite in Suite::ALL {
        let r = report::<S>(name, suite, &suites::default_ts(suite))
            .map(|r| r.checks.iter().map(|c| (c.id.clone(), c.passed)).collect());
        out.insert(suite.tag().to_string(), r);
    }
    out
}

fn all_dims<S: Scalar>(name: &str) -> BTreeMap<(Family, Grading), BTreeMap<(i64, i64), usize>> {
    let mut out = BTreeMap::new();
    for family in Family::ALL {
        for grading in [Grading::Forms, Grading::Clifford] {
            let d = diamond_dims::<S>(model(name), family, grading, TOL).unwrap_or_else(|o| panic!("{}", o.stderr));
            out.insert((family, grading), d);
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let results: Vec<(&str, Result<usize, String>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = MODELS
            .iter()
            .map(|&name| {
                scope.spawn(move || {
                    let (ve, vf) = (verdicts::<Exact>(name), verdicts::<Float>(name));
                    if ve != vf {
                        let suite = ve.keys().find(|k| ve[*k] != vf[*k]).cloned().unwrap_or_default();
                        return Err(format!("{name}: verdicts differ in suite {suite}"));
                    }
                    let (de, df) = (all_dims::<Exact>(name), all_dims::<Float>(name));
                    if de != df {
                        let key = de.keys().find(|k| de[*k] != df[*k]).unwrap();
                        return Err(format!("{name}: dimensions differ for {} {}", key.0, key.1.tag()));
                    }
                    Ok(ve.values().map(|v| v.as_ref().map(|m| m.len()).unwrap_or(0)).sum::<usize>())
                })
            })
            .collect();
        MODELS.iter().copied().zip(handles.into_iter().map(|h| h.join().expect("model thread"))).collect()
    });
    let mut total = 0;
    for (_, r) in results {
        total += r?;
    }
    Ok(format!("{total} verdicts and all harmonic dimensions agree on the catalog (tol 1e-9)"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Kodaira-Thurston diamond", criterion_1),
        ("KT geometric facts", criterion_2),
        ("algebra suite", criterion_3),
        ("hermitian suite on KT", criterion_4),
        ("appendix suite on the catalog", criterion_5),
        ("almost Kähler suite on kt_ak", criterion_6),
        ("Bochner suite on KT and torus", criterion_7),
        ("symmetry isomorphisms on KT", criterion_8),
        ("backend agreement", criterion_9),
    ];
    let mut failed = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("criterion {} PASS  {title}: {msg} [{secs:.1} s]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL  {title}: {msg} [{secs:.1} s]", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
