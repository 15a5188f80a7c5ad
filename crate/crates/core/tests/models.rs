use std::collections::BTreeMap;

use clifford_lab_core::clifford::ComplexStructure;
use clifford_lab_core::context::ModelContext;
use clifford_lab_core::harmonics::{harmonic_space, Family, Grading};
use clifford_lab_core::lie::{LieModel, ModelError, Rat};
use clifford_lab_core::scalar::{Exact, Float};
use clifford_lab_core::suites::{self, Suite, SuiteError};

fn r(k: i64) -> Rat {
    Rat::from_integer(k.into())
}

/// `J v_from = sign · v_to`.
fn structure(m: usize, pairs: &[(usize, usize, i64)]) -> ComplexStructure {
    let mut j = vec![vec![r(0); m]; m];
    for &(from, to, s) in pairs {
        j[to][from] = r(s);
    }
    ComplexStructure::from_matrix(j)
}

fn names(n: &[&str]) -> Vec<String> {
    n.iter().map(|s| s.to_string()).collect()
}

fn kodaira_thurston(j: ComplexStructure) -> LieModel {
    let d = vec![vec![], vec![], vec![(0, 1, r(1))], vec![]];
    LieModel::from_differential("kt", names(&["x", "y", "z", "w"]), &d, j).unwrap()
}

fn kt() -> LieModel {
    kodaira_thurston(structure(4, &[(1, 0, 1), (0, 1, -1), (2, 3, 1), (3, 2, -1)]))
}

fn kt_ak() -> LieModel {
    kodaira_thurston(structure(4, &[(0, 2, 1), (2, 0, -1), (1, 3, 1), (3, 1, -1)]))
}

fn rows(dims: &BTreeMap<(i64, i64), usize>) -> Vec<Vec<usize>> {
    (0..=4i64)
        .map(|k| (0..=k).rev().filter(|p| *p <= 2 && k - p <= 2).map(|p| dims[&(p, k - p)]).collect())
        .collect()
}

#[test]
fn kodaira_thurston_diamond() {
    let ctx = ModelContext::<Exact>::new(kt(), 0.0).unwrap();
    let h = harmonic_space(&ctx, Family::EpsDelbarHat, Grading::Forms);
    assert_eq!(rows(&h.dims()), vec![vec![1], vec![1, 1], vec![0, 2, 0], vec![1, 1], vec![1]]);
    let f = ModelContext::<Float>::new(kt(), 1e-9).unwrap();
    assert_eq!(harmonic_space(&f, Family::EpsDelbarHat, Grading::Forms).dims(), h.dims());
}

#[test]
fn suites_on_kodaira_thurston() {
    for (model, almost_kaehler) in [(kt(), false), (kt_ak(), true)] {
        let ctx = ModelContext::<Exact>::new(model, 0.0).unwrap();
        assert_eq!(ctx.almost_kaehler(), almost_kaehler);
        for suite in Suite::ALL {
            match suites::run(&ctx, suite, &suites::default_ts(suite)) {
                Ok(report) => {
                    let bad: Vec<_> = report.failures().map(|c| c.id.clone()).collect();
                    assert!(bad.is_empty(), "{} {}: {bad:?}", ctx.model.name(), suite.tag());
                }
                Err(SuiteError::NotAlmostKaehler) => assert!(!almost_kaehler && suite == Suite::Kaehler),
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn abelian_plane_has_every_form_harmonic() {
    let j = structure(2, &[(0, 1, 1), (1, 0, -1)]);
    let m = LieModel::from_differential("plane", names(&["u", "v"]), &[vec![], vec![]], j).unwrap();
    let ctx = ModelContext::<Exact>::new(m, 0.0).unwrap();
    for family in Family::ALL {
        assert_eq!(harmonic_space(&ctx, family, Grading::Forms).dim(), 4, "{family}");
    }
}

#[test]
fn rejects_non_orthogonal_j() {
    let mut j = vec![vec![r(0); 4]; 4];
    j[1][0] = r(2);
    j[0][1] = Rat::new((-1).into(), 2.into());
    j[3][2] = r(1);
    j[2][3] = r(-1);
    let d = vec![vec![]; 4];
    let e = LieModel::from_differential("skewed", names(&["a", "b", "c", "d"]), &d, ComplexStructure::from_matrix(j));
    assert_eq!(e.unwrap_err(), ModelError::NotComplexStructure);
}
