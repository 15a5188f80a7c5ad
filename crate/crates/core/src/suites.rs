//! Named identity suites, split into independent units.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::clifford::ComplexStructure;
use crate::connection::{check_form_splitting, check_projections, Tensor3};
use crate::context::ModelContext;
use crate::harmonics::{self, Family, Grading};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::sl2::{Sl2Error, Sl2Structure};

pub const MAX_ALGEBRA_N: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AlgebraCheck {
    Sl2,
    Structure,
    Correspondence,
    HodgeAut,
    Bigrading,
}

impl AlgebraCheck {
    pub const ALL: [AlgebraCheck; 5] = [
        AlgebraCheck::Sl2,
        AlgebraCheck::Structure,
        AlgebraCheck::Correspondence,
        AlgebraCheck::HodgeAut,
        AlgebraCheck::Bigrading,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            AlgebraCheck::Sl2 => "sl2",
            AlgebraCheck::Structure => "structure",
            AlgebraCheck::Correspondence => "correspondence",
            AlgebraCheck::HodgeAut => "hodge-aut",
            AlgebraCheck::Bigrading => "bigrading",
        }
    }

    pub fn parse(s: &str) -> Option<AlgebraCheck> {
        Self::ALL.iter().copied().find(|c| c.tag() == s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SuiteError {
    OutOfRange(usize),
    Sl2(Sl2Error),
    /// The almost Kähler suite on a model with `dω ≠ 0`.
    NotAlmostKaehler,
}

impl fmt::Display for SuiteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteError::OutOfRange(n) => write!(f, "n out of supported range: {n} (expected 1..={MAX_ALGEBRA_N})"),
            SuiteError::Sl2(e) => write!(f, "{e}"),
            SuiteError::NotAlmostKaehler => f.write_str("refused: dω ≠ 0, the structure is not almost Kähler"),
        }
    }
}

/// Model-free checks on the standard structure of `ℝ^{2n}`.
pub fn algebra<S: Scalar>(n: usize, checks: &[AlgebraCheck]) -> Result<Report, SuiteError> {
    if !(1..=MAX_ALGEBRA_N).contains(&n) {
        return Err(SuiteError::OutOfRange(n));
    }
    let sl2 = Sl2Structure::<S>::new(ComplexStructure::standard(n), 0.0).map_err(SuiteError::Sl2)?;
    let mut r = Report::new("algebra", &format!("n={n}"), S::NAME);
    for c in checks {
        r.extend(match c {
            AlgebraCheck::Sl2 => sl2.check_sl2(),
            AlgebraCheck::Structure => sl2.check_structure(),
            AlgebraCheck::Correspondence => sl2.check_correspondences(),
            AlgebraCheck::HodgeAut => sl2.check_hodge_automorphism(),
            AlgebraCheck::Bigrading => sl2.check_bigrading(),
        });
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Hermitian,
    Kaehler,
    Appendix,
    Bochner,
    Laplacian,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Hermitian, Suite::Kaehler, Suite::Appendix, Suite::Bochner, Suite::Laplacian];

    pub fn tag(self) -> &'static str {
        match self {
            Suite::Hermitian => "hermitian",
            Suite::Kaehler => "kaehler",
            Suite::Appendix => "appendix",
            Suite::Bochner => "bochner",
            Suite::Laplacian => "laplacian",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Self::ALL.iter().copied().find(|c| c.tag() == s)
    }
}

/// One independently computable piece of a suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unit {
    Forms,
    Riemannian,
    Dirac(i64, i64),
    Bismut,
    AlmostKaehler,
    Connections,
    Projections,
    Bochner(i64, i64),
    Harmonics(Family),
    Symmetries,
}

/// Default parameters `t` per suite.
pub fn default_ts(suite: Suite) -> Vec<(i64, i64)> {
    match suite {
        Suite::Bochner => alloc::vec![(-1, 1), (1, 1)],
        _ => alloc::vec![(-1, 1), (0, 1), (1, 1), (2, 1)],
    }
}

pub fn units<S: Scalar>(ctx: &ModelContext<S>, suite: Suite, ts: &[(i64, i64)]) -> Result<Vec<Unit>, SuiteError> {
    let mut u = Vec::new();
    match suite {
        Suite::Hermitian => {
            u.push(Unit::Forms);
            u.push(Unit::Riemannian);
            u.extend(ts.iter().map(|&(a, b)| Unit::Dirac(a, b)));
            u.push(Unit::Bismut);
        }
        Suite::Kaehler => {
            if !ctx.almost_kaehler() {
                return Err(SuiteError::NotAlmostKaehler);
            }
            u.push(Unit::AlmostKaehler);
        }
        Suite::Appendix => {
            u.push(Unit::Connections);
            u.push(Unit::Projections);
        }
        Suite::Bochner => u.extend(ts.iter().map(|&(a, b)| Unit::Bochner(a, b))),
        Suite::Laplacian => {
            u.extend(Family::ALL.iter().map(|&f| Unit::Harmonics(f)));
            u.push(Unit::Symmetries);
        }
    }
    Ok(u)
}

fn t_tag(num: i64, den: i64) -> String {
    if den == 1 {
        format!("t={num}")
    } else {
        format!("t={num}/{den}")
    }
}

/// Small skew tensor with entries in `−3..=3`, fixed by `seed`.
pub fn probe_tensor<S: Scalar>(dim: usize, seed: i64) -> Tensor3<S> {
    let raw = |a: usize, b: usize, c: usize| (seed + 3 * a as i64 + 5 * (b * b) as i64 + 7 * (a * c) as i64 + c as i64).rem_euclid(7) - 3;
    Tensor3::from_fn(dim, |a, b, c| S::from_i64(raw(a, b, c) - raw(a, c, b)))
}

pub fn run_unit<S: Scalar>(ctx: &ModelContext<S>, unit: Unit, ts: &[(i64, i64)]) -> Report {
    let tol = ctx.tol;
    let (model, sl2, forms, data) = (&ctx.model, &ctx.sl2, &ctx.forms, &ctx.data);
    match unit {
        Unit::Forms => {
            let mut r = forms.check_differential(tol);
            r.extend(forms.check_zeroth_order(model, sl2, tol));
            r.extend(forms.check_almost_hermitian(sl2, tol));
            r.extend(forms.check_j_weights(tol));
            r
        }
        Unit::Riemannian => ctx.riemannian.check(sl2, forms, tol),
        Unit::Dirac(num, den) => ctx.hermitian(num, den).check(sl2, forms, data, &ctx.riemannian, tol),
        Unit::Bismut => ctx.bismut.check_bismut(sl2, forms, ctx.kaehler(), tol),
        Unit::AlmostKaehler => {
            let mut r = forms.check_almost_kaehler(sl2, tol);
            r.extend(ctx.riemannian.check_almost_kaehler(sl2, forms, tol));
            r.extend(harmonics::check_almost_kaehler(ctx));
            r
        }
        Unit::Connections => data.check(model, forms, ts, tol),
        Unit::Projections => {
            let mut r = Report::default();
            let mut tensors = alloc::vec![
                ("nijenhuis", data.nijenhuis.clone()),
                ("domega", data.domega.clone()),
                ("nabla_omega", data.nabla_omega.clone()),
                ("probe", probe_tensor(data.dim(), 1)),
            ];
            for &(num, den) in ts {
                tensors.push(("torsion", data.torsion_t(num, den)));
            }
            for (k, (name, t)) in tensors.iter().enumerate() {
                r.extend(check_projections(t, &data.j, tol).tagged(&format!("{name}#{k}")));
            }
            r.extend(check_form_splitting(sl2, &forms.domega, tol).tagged("domega"));
            r.extend(check_form_splitting(sl2, &forms.dc_omega, tol).tagged("dc_omega"));
            r
        }
        Unit::Bochner(num, den) => ctx.hermitian(num, den).check_bochner(data, ctx.kaehler(), tol),
        Unit::Harmonics(family) => {
            let h = harmonics::harmonic_space(ctx, family, Grading::Forms);
            let mut r = harmonics::check_kernel(ctx, &h);
            if family == Family::CurlyBBt || (family == Family::CurlyD && ctx.almost_kaehler()) {
                r.extend(harmonics::check_sl2_closure(ctx, &h));
            }
            r
        }
        Unit::Symmetries => harmonics::check_symmetries(ctx),
    }
}

/// Every unit in order, on one thread.
pub fn run<S: Scalar>(ctx: &ModelContext<S>, suite: Suite, ts: &[(i64, i64)]) -> Result<Report, SuiteError> {
    let mut r = Report::new(suite.tag(), ctx.model.name(), S::NAME);
    for u in units(ctx, suite, ts)? {
        r.extend(run_unit(ctx, u, ts));
    }
    Ok(r)
}

pub fn unit_label(unit: Unit) -> String {
    match unit {
        Unit::Dirac(a, b) | Unit::Bochner(a, b) => t_tag(a, b),
        Unit::Harmonics(f) => format!("harmonics.{f}"),
        other => format!("{other:?}").to_lowercase(),
    }
}
