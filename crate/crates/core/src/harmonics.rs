//! Harmonic spaces of invariant forms and Clifford sections.
//!
//! For a family `T_1, …, T_k` the harmonic space is
//! `⋂ ker T_j ∩ ker T_j*`, computed as one kernel of the stacked matrix.
//! Everything is restricted to left-invariant sections.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::context::ModelContext;
use crate::lie::laplacian;
use crate::linalg::{contained_in, intersect, kernel_within, span_basis, span_dim, Matrix};
use crate::report::{Check, Report};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    D,
    Delta,
    DeltaBar,
    Eps,
    DelbarHat,
    /// `ε` and `∂̄̂` jointly
    EpsDelbarHat,
    CurlyD,
    CurlyB,
    /// `𝔅` and `𝔅ᵗ` jointly
    CurlyBBt,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::D,
        Family::Delta,
        Family::DeltaBar,
        Family::Eps,
        Family::DelbarHat,
        Family::EpsDelbarHat,
        Family::CurlyD,
        Family::CurlyB,
        Family::CurlyBBt,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::D => "d",
            Family::Delta => "delta",
            Family::DeltaBar => "delta-bar",
            Family::Eps => "eps",
            Family::DelbarHat => "delbh",
            Family::EpsDelbarHat => "eps-delbh",
            Family::CurlyD => "D",
            Family::CurlyB => "B",
            Family::CurlyBBt => "B-Bt",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.tag() == s)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Family::D => "d",
            Family::Delta => "δ",
            Family::DeltaBar => "δ̄",
            Family::Eps => "ε",
            Family::DelbarHat => "∂̄̂",
            Family::EpsDelbarHat => "ε ∩ ∂̄̂",
            Family::CurlyD => "𝔇",
            Family::CurlyB => "𝔅",
            Family::CurlyBBt => "𝔅 ∩ 𝔅ᵗ",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Grading {
    /// form bidegree `(p, q)`
    Forms,
    /// Clifford bidegree `(r, s)`
    Clifford,
}

impl Grading {
    pub fn tag(self) -> &'static str {
        match self {
            Grading::Forms => "pq",
            Grading::Clifford => "rs",
        }
    }

    pub fn parse(s: &str) -> Option<Grading> {
        match s {
            "pq" => Some(Grading::Forms),
            "rs" => Some(Grading::Clifford),
            _ => None,
        }
    }
}

/// The operators whose joint kernel (with adjoints) defines the family.
pub fn family_operators<S: Scalar>(ctx: &ModelContext<S>, family: Family) -> Vec<Matrix<S>> {
    let f = &ctx.forms;
    match family {
        Family::D => alloc::vec![f.d.clone()],
        Family::Delta => alloc::vec![f.delta.clone()],
        Family::DeltaBar => alloc::vec![f.delta_bar.clone()],
        Family::Eps => alloc::vec![f.eps.clone()],
        Family::DelbarHat => alloc::vec![f.delbar_hat.clone()],
        Family::EpsDelbarHat => alloc::vec![f.eps.clone(), f.delbar_hat.clone()],
        Family::CurlyD => alloc::vec![ctx.riemannian.curly.clone()],
        Family::CurlyB => alloc::vec![ctx.bismut.small.clone()],
        Family::CurlyBBt => alloc::vec![ctx.bismut.small.clone(), ctx.sl2.t_conj(&ctx.bismut.small)],
    }
}

/// `[T_1; T_1*; T_2; T_2*; …]`
pub fn stacked<S: Scalar>(ops: &[Matrix<S>]) -> Matrix<S> {
    let mut out: Option<Matrix<S>> = None;
    for t in ops {
        let pair = t.vstack(&t.adjoint());
        out = Some(match out {
            None => pair,
            Some(o) => o.vstack(&pair),
        });
    }
    out.expect("a family has at least one operator")
}

#[derive(Clone, Debug)]
pub struct HarmonicSpace<S> {
    pub family: Family,
    pub grading: Grading,
    pub total: Vec<Vec<S>>,
    pub spaces: BTreeMap<(i64, i64), Vec<Vec<S>>>,
}

impl<S: Scalar> HarmonicSpace<S> {
    pub fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        self.spaces.iter().map(|(k, v)| (*k, v.len())).collect()
    }

    pub fn dim(&self) -> usize {
        self.total.len()
    }

    pub fn get(&self, key: (i64, i64)) -> &[Vec<S>] {
        self.spaces.get(&key).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

/// Bases of the bidegree pieces, keyed by `(p, q)` or `(r, s)`.
pub fn bidegree_bases<S: Scalar>(ctx: &ModelContext<S>, grading: Grading) -> BTreeMap<(i64, i64), Vec<Vec<S>>> {
    let tol = ctx.tol;
    match grading {
        Grading::Forms => {
            ctx.sl2.pi.iter().map(|(&(p, q), m)| ((p as i64, q as i64), m.reduce(tol).colspace)).collect()
        }
        Grading::Clifford => ctx
            .sl2
            .clifford_projector
            .iter()
            .map(|(&k, m)| (k, m.reduce(tol).colspace))
            .filter(|(_, b)| !b.is_empty())
            .collect(),
    }
}

pub fn harmonic_space<S: Scalar>(ctx: &ModelContext<S>, family: Family, grading: Grading) -> HarmonicSpace<S> {
    let stack = stacked(&family_operators(ctx, family));
    let tol = ctx.tol;
    let total = stack.kernel(tol);
    let spaces = bidegree_bases(ctx, grading)
        .into_iter()
        .map(|(k, basis)| (k, kernel_within(&stack, &basis, tol)))
        .collect();
    HarmonicSpace { family, grading, total, spaces }
}

/// `ker Σ Δ_{T_j} = ⋂ ker T_j ∩ ker T_j*`, and the bidegree pieces fill it
/// whenever the family is homogeneous.
pub fn check_kernel<S: Scalar>(ctx: &ModelContext<S>, space: &HarmonicSpace<S>) -> Report {
    let tol = ctx.tol;
    let size = ctx.sl2.size();
    let mut r = Report::new("harmonic-kernel", "", "");
    let ops = family_operators(ctx, space.family);
    let mut lap = Matrix::zeros(size, size);
    for t in &ops {
        lap = lap.add(&laplacian(t));
    }
    let via_lap = lap.kernel(tol);
    let same = via_lap.len() == space.dim()
        && contained_in(size, &via_lap, &space.total, tol)
        && contained_in(size, &space.total, &via_lap, tol);
    r.push(Check::flag(
        &format!("{}.laplacian", space.family),
        "ker ΣΔ_T = ⋂ ker T ∩ ker T*",
        same,
        Some(format!("{} vs {}", via_lap.len(), space.dim())),
    ));
    r
}

fn image<S: Scalar>(m: &Matrix<S>, basis: &[Vec<S>]) -> Vec<Vec<S>> {
    basis.iter().map(|v| m.apply(v)).collect()
}

fn maps_onto<S: Scalar>(size: usize, from: &[Vec<S>], to: &[Vec<S>], tol: f64) -> (bool, String) {
    let ok = from.len() == to.len() && contained_in(size, from, to, tol) && span_dim(size, from, tol) == to.len();
    (ok, format!("{} → {}", from.len(), to.len()))
}

/// `𝓛`, `𝓛̄`, `𝓗` preserve the harmonic space.
pub fn check_sl2_closure<S: Scalar>(ctx: &ModelContext<S>, space: &HarmonicSpace<S>) -> Report {
    let tol = ctx.tol;
    let size = ctx.sl2.size();
    let mut r = Report::new("sl2-closure", "", "");
    let sym = space.family.symbol();
    for (name, op) in [("l", &ctx.sl2.l), ("lbar", &ctx.sl2.lbar), ("h", &ctx.sl2.h)] {
        let op_sym = match name {
            "l" => "𝓛",
            "lbar" => "𝓛̄",
            _ => "𝓗",
        };
        r.push(Check::flag(
            &format!("{}.closure.{name}", space.family),
            &format!("{op_sym}(𝓗_{{{sym}}}) ⊂ 𝓗_{{{sym}}}"),
            contained_in(size, &image(op, &space.total), &space.total, tol),
            None,
        ));
    }
    r
}

/// `c`, `ᵗ` and `g` on the `𝔅 ∩ 𝔅ᵗ` harmonics, and the same for `𝔇` and `δ`
/// on almost Kähler models.
pub fn check_symmetries<S: Scalar>(ctx: &ModelContext<S>) -> Report {
    let tol = ctx.tol;
    let size = ctx.sl2.size();
    let n = ctx.sl2.n as i64;
    let mut r = Report::new("symmetries", "", "");
    let bb = harmonic_space(ctx, Family::CurlyBBt, Grading::Clifford);
    let conj = |basis: &[Vec<S>]| -> Vec<Vec<S>> { basis.iter().map(|v| v.iter().map(|z| z.conj()).collect()).collect() };

    let (mut c_ok, mut t_ok, mut details) = (true, true, Vec::new());
    for (&(rr, ss), basis) in &bb.spaces {
        let (ok, msg) = maps_onto(size, &conj(basis), bb.get((-rr, -ss)), tol);
        if !ok {
            details.push(format!("c ({rr},{ss}): {msg}"));
        }
        c_ok &= ok;
        let (ok, msg) = maps_onto(size, &image(&ctx.sl2.transpose, basis), bb.get((rr, -ss)), tol);
        if !ok {
            details.push(format!("t ({rr},{ss}): {msg}"));
        }
        t_ok &= ok;
    }
    let detail = if details.is_empty() { None } else { Some(details.join("; ")) };
    r.push(Check::flag("ciso", "c: 𝓗^{r,s} → 𝓗^{−r,−s} for 𝔅 ∩ 𝔅ᵗ", c_ok, detail.clone()));
    r.push(Check::flag("trsiso", "ᵗ: 𝓗^{r,s} → 𝓗^{r,−s} for 𝔅 ∩ 𝔅ᵗ", t_ok, detail));

    let mut pairs = alloc::vec![(Family::CurlyBBt, Family::EpsDelbarHat, "hodgehar")];
    if ctx.almost_kaehler() {
        pairs.push((Family::CurlyD, Family::Delta, "hodgehar.ak"));
    }
    for (cliff, form, id) in pairs {
        let cs = if cliff == Family::CurlyBBt { bb.clone() } else { harmonic_space(ctx, cliff, Grading::Clifford) };
        let fs = harmonic_space(ctx, form, Grading::Forms);
        let mut ok = true;
        let mut bad = Vec::new();
        for (&(p, q), fbasis) in &fs.spaces {
            let moved = image(&ctx.sl2.g_inv, cs.get((q - p, n - p - q)));
            let (good, msg) = maps_onto(size, &moved, fbasis, tol);
            if !good {
                bad.push(format!("({p},{q}): {msg}"));
            }
            ok &= good;
        }
        r.push(Check::flag(
            id,
            &format!("g⁻¹: 𝓗_{{{}}}^{{q−p,n−p−q}} → 𝓗_{{{}}}^{{p,q}}", cliff.symbol(), form.symbol()),
            ok,
            if bad.is_empty() { None } else { Some(bad.join("; ")) },
        ));
    }
    r
}

/// Statements that need `dω = 0`.
pub fn check_almost_kaehler<S: Scalar>(ctx: &ModelContext<S>) -> Report {
    let tol = ctx.tol;
    let size = ctx.sl2.size();
    let mut r = Report::new("harmonics-ak", "", "");
    let dd = harmonic_space(ctx, Family::CurlyD, Grading::Forms);
    let dl = harmonic_space(ctx, Family::Delta, Grading::Forms);
    let equal = dd.dim() == dl.dim() && contained_in(size, &dd.total, &dl.total, tol);
    r.push(Check::flag("akcor", "𝓗_𝔇 = 𝓗_δ", equal, Some(format!("{} vs {}", dd.dim(), dl.dim()))));
    r.extend(check_sl2_closure(ctx, &dd));
    let eps = harmonic_space(ctx, Family::Eps, Grading::Forms);
    let del = stacked(core::slice::from_ref(&ctx.forms.del)).kernel(tol);
    let same = eps.dim() == del.len() && contained_in(size, &eps.total, &del, tol);
    r.push(Check::flag("eps_is_del", "𝓗_ε = 𝓗_∂ when dω = 0", same, None));
    r
}

/// Pieces of a graded harmonic space add up to the whole when every
/// operator of the family is homogeneous for the grading.
pub fn graded_total<S: Scalar>(space: &HarmonicSpace<S>, size: usize, tol: f64) -> usize {
    let all: Vec<Vec<S>> = space.spaces.values().flatten().cloned().collect();
    span_basis(size, &all, tol).len()
}

/// The bidegree pieces of `a` that also lie in `b`.
pub fn common<S: Scalar>(a: &HarmonicSpace<S>, b: &HarmonicSpace<S>, size: usize, tol: f64) -> BTreeMap<(i64, i64), usize> {
    a.spaces
        .iter()
        .map(|(k, v)| (*k, intersect(size, v, b.get(*k), tol).len()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Exact, Float};
    use crate::test_models::*;
    use alloc::vec;

    fn exact(model: crate::lie::LieModel) -> ModelContext<Exact> {
        ModelContext::new(model, 0.0).unwrap()
    }

    fn failures(r: &Report) -> Vec<String> {
        r.failures().map(|c| format!("{} {}", c.id, c.detail.clone().unwrap_or_default())).collect()
    }

    fn rows(dims: &BTreeMap<(i64, i64), usize>, n: i64) -> Vec<Vec<usize>> {
        (0..=2 * n)
            .map(|k| {
                (0..=k)
                    .filter(|p| *p <= n && k - p <= n)
                    .map(|p| dims.get(&(p, k - p)).copied().unwrap_or(0))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn kodaira_thurston_diamond() {
        let ctx = exact(kt());
        let h = harmonic_space(&ctx, Family::EpsDelbarHat, Grading::Forms);
        assert_eq!(rows(&h.dims(), 2), vec![vec![1], vec![1, 1], vec![0, 2, 0], vec![1, 1], vec![1]]);
        assert!(check_kernel(&ctx, &h).passed());
    }

    #[test]
    fn torus_binomials() {
        let ctx = exact(torus4());
        let h = harmonic_space(&ctx, Family::D, Grading::Forms);
        let sums: Vec<usize> = rows(&h.dims(), 2).iter().map(|r| r.iter().sum()).collect();
        assert_eq!(sums, vec![1, 4, 6, 4, 1]);
        assert_eq!(h.dims()[&(1, 1)], 4);
        assert_eq!(h.dim(), 16);
        let d = harmonic_space(&ctx, Family::CurlyD, Grading::Clifford);
        assert!(check_sl2_closure(&ctx, &d).passed());
    }

    #[test]
    fn symmetries_on_models() {
        for (name, model) in [("torus4", torus4()), ("kt", kt()), ("kt_ak", kt_ak())] {
            let ctx = exact(model);
            let r = check_symmetries(&ctx);
            assert!(r.passed(), "{name}: {:?}", failures(&r));
            let bb = harmonic_space(&ctx, Family::CurlyBBt, Grading::Clifford);
            let r = check_sl2_closure(&ctx, &bb);
            assert!(r.passed(), "{name}: {:?}", failures(&r));
            for fam in Family::ALL {
                let h = harmonic_space(&ctx, fam, Grading::Forms);
                assert!(check_kernel(&ctx, &h).passed(), "{name} {fam}");
            }
        }
    }

    #[test]
    fn almost_kaehler_harmonics() {
        for model in [torus4(), kt_ak()] {
            let ctx = exact(model);
            assert!(ctx.almost_kaehler());
            let r = check_almost_kaehler(&ctx);
            assert!(r.passed(), "{:?}", failures(&r));
        }
        assert!(!exact(kt()).almost_kaehler());
    }

    #[test]
    fn float_dimensions_agree() {
        for model in [kt(), kt_ak()] {
            let e = exact(model.clone());
            let f = ModelContext::<Float>::new(model, 1e-9).unwrap();
            for fam in Family::ALL {
                for g in [Grading::Forms, Grading::Clifford] {
                    assert_eq!(harmonic_space(&e, fam, g).dims(), harmonic_space(&f, fam, g).dims(), "{fam} {g:?}");
                }
            }
        }
    }
}
