//! Vector valued 2-forms and the canonical Hermitian connections.
//!
//! An element of `Ω²(TM)` is stored as the 3-tensor
//! `φ(X,Y,Z) = ⟨X, φ(Y,Z)⟩` on the orthonormal frame, skew in the last two
//! slots. A connection is stored through `Γ(v_i, v_j, v_k) = ⟨∇_{v_i} v_j, v_k⟩`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::clifford::{ops, Multivector};
use crate::lie::{eval2, eval3, two_form, unit_vector, FormOperators, LieModel};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::sl2::Sl2Structure;

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> Tensor3<S> {
    pub fn zero(dim: usize) -> Self {
        Tensor3 { dim, data: vec![S::zero(); dim * dim * dim] }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(dim * dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    data.push(f(a, b, c));
                }
            }
        }
        Tensor3 { dim, data }
    }

    /// A 3-form read as a tensor, `φ(v_a,v_b,v_c)`.
    pub fn from_form(phi: &Multivector<S>) -> Self {
        let m = phi.dim();
        let e: Vec<Vec<S>> = (0..m).map(|k| unit_vector(m, k)).collect();
        Self::from_fn(m, |a, b, c| {
            if a == b || b == c || a == c {
                S::zero()
            } else {
                eval3(phi, &e[a], &e[b], &e[c])
            }
        })
    }

    /// The 3-form with coefficients `φ(v_a,v_b,v_c)`, `a < b < c`.
    pub fn to_form(&self) -> Multivector<S> {
        let m = self.dim;
        let mut out = Multivector::zero(m);
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    out.add_term((1 << a) | (1 << b) | (1 << c), self.get(a, b, c));
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &S {
        &self.data[(a * self.dim + b) * self.dim + c]
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn add(&self, o: &Self) -> Self {
        Tensor3 { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Tensor3 { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, s: &S) -> Self {
        Tensor3 { dim: self.dim, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn scale_ratio(&self, num: i64, den: i64) -> Self {
        self.scale(&S::from_ratio(num, den))
    }

    pub fn inner(&self, o: &Self) -> S {
        self.data.iter().zip(&o.data).fold(S::zero(), |acc, (a, b)| acc.add(&a.conj().mul(b)))
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    /// `φ(X,Y,Z)` on arbitrary vectors.
    pub fn eval(&self, x: &[S], y: &[S], z: &[S]) -> S {
        let m = self.dim;
        let mut acc = S::zero();
        for a in 0..m {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..m {
                if y[b].is_zero() {
                    continue;
                }
                let xy = x[a].mul(&y[b]);
                for c in 0..m {
                    if !z[c].is_zero() {
                        acc = acc.add(&xy.mul(&z[c]).mul(self.get(a, b, c)));
                    }
                }
            }
        }
        acc
    }

    /// Precomposition with `J` in the slots flagged by `mask`,
    /// e.g. `[false, true, true]` gives `φ(X, JY, JZ)`.
    pub fn with_j(&self, j: &Matrix<S>, mask: [bool; 3]) -> Self {
        let m = self.dim;
        let mut t = self.clone();
        for (slot, &on) in mask.iter().enumerate() {
            if !on {
                continue;
            }
            let src = t.clone();
            t = Self::from_fn(m, |a, b, c| {
                let mut acc = S::zero();
                for r in 0..m {
                    let idx = [a, b, c];
                    let jr = j.get(r, idx[slot]);
                    if jr.is_zero() {
                        continue;
                    }
                    let mut ix = idx;
                    ix[slot] = r;
                    acc = acc.add(&jr.mul(src.get(ix[0], ix[1], ix[2])));
                }
                acc
            });
        }
        t
    }

    pub fn p20(&self, j: &Matrix<S>) -> Self {
        self.sub(&self.with_j(j, [false, true, true]))
            .add(&self.with_j(j, [true, false, true]))
            .add(&self.with_j(j, [true, true, false]))
            .scale_ratio(1, 4)
    }

    pub fn p02(&self, j: &Matrix<S>) -> Self {
        self.sub(&self.with_j(j, [false, true, true]))
            .sub(&self.with_j(j, [true, false, true]))
            .sub(&self.with_j(j, [true, true, false]))
            .scale_ratio(1, 4)
    }

    pub fn p11(&self, j: &Matrix<S>) -> Self {
        self.add(&self.with_j(j, [false, true, true])).scale_ratio(1, 2)
    }

    /// `M(φ)(X,Y,Z) = φ(X, JY, JZ)`.
    pub fn m_op(&self, j: &Matrix<S>) -> Self {
        self.with_j(j, [false, true, true])
    }

    /// Cyclic average.
    pub fn cyclic(&self) -> Self {
        Self::from_fn(self.dim, |a, b, c| {
            self.get(a, b, c).add(self.get(b, c, a)).add(self.get(c, a, b)).mul(&S::from_ratio(1, 3))
        })
    }

    /// `r(φ)(X) = Σ_j φ(v_j, v_j, X)`.
    pub fn trace(&self) -> Vec<S> {
        (0..self.dim).map(|c| (0..self.dim).fold(S::zero(), |acc, j| acc.add(self.get(j, j, c)))).collect()
    }

    /// `i(θ)(X,Y,Z) = (θ(Z)⟨X,Y⟩ − θ(Y)⟨Z,X⟩)/(2n − 1)`.
    pub fn from_one_form(dim: usize, theta: &[S]) -> Self {
        let k = S::from_ratio(1, dim as i64 - 1);
        Self::from_fn(dim, |a, b, c| {
            let mut v = S::zero();
            if a == b {
                v = v.add(&theta[c]);
            }
            if a == c {
                v = v.sub(&theta[b]);
            }
            v.mul(&k)
        })
    }

    pub fn q_op(&self) -> Self {
        Self::from_one_form(self.dim, &self.trace())
    }

    pub fn is_skew_last_two(&self, tol: f64) -> bool {
        let m = self.dim;
        (0..m).all(|a| (0..m).all(|b| (0..m).all(|c| self.get(a, b, c).add(self.get(a, c, b)).is_negligible(tol))))
    }

    /// Component in `E⁺` of a 3-form (with respect to `J`).
    pub fn plus(&self, j: &Matrix<S>) -> Self {
        self.p20(j).add(&self.p11(j))
    }

    pub fn minus(&self, j: &Matrix<S>) -> Self {
        self.p02(j)
    }

    /// Projection onto `Ω_a^{1,1}`, the orthogonal complement of
    /// `ker P ∩ Ω^{1,1}` inside `Ω^{1,1}`.
    pub fn p11_a(&self, j: &Matrix<S>, tol: f64) -> Self {
        let m = self.dim;
        let mut spanning = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let mut f = Multivector::zero(m);
                    f.add_term((1 << a) | (1 << b) | (1 << c), &S::one());
                    spanning.push(Tensor3::from_form(&f).p11(j));
                }
            }
        }
        project_onto_span(&spanning, &self.p11(j), tol)
    }

    /// Projection onto `Ω_s^{1,1} = ker P ∩ Ω^{1,1}`.
    pub fn p11_s(&self, j: &Matrix<S>, tol: f64) -> Self {
        self.p11(j).sub(&self.p11_a(j, tol))
    }
}

/// Orthogonal projection of `x` onto the span of `vectors`, by
/// Gram–Schmidt without normalization.
fn project_onto_span<S: Scalar>(vectors: &[Tensor3<S>], x: &Tensor3<S>, tol: f64) -> Tensor3<S> {
    let mut basis: Vec<(Tensor3<S>, S)> = Vec::new();
    for v in vectors {
        let mut u = v.clone();
        for (b, nb) in &basis {
            let c = b.inner(&u).div(nb).unwrap();
            u = u.sub(&b.scale(&c));
        }
        let nu = u.inner(&u);
        if !nu.is_negligible(tol) {
            basis.push((u, nu));
        }
    }
    let mut out = Tensor3::zero(x.dim);
    for (b, nb) in &basis {
        out = out.add(&b.scale(&b.inner(x).div(nb).unwrap()));
    }
    out
}

/// `(ε(v_a), ε̄(v_a))` for every frame vector, `ε(v) = ½(v − iJv)`.
pub fn eps_pairs<S: Scalar>(j: &Matrix<S>) -> Vec<(Vec<S>, Vec<S>)> {
    let m = j.rows();
    let half = S::from_ratio(1, 2);
    (0..m)
        .map(|a| {
            let jv = j.column(a);
            let e: Vec<S> = (0..m)
                .map(|k| {
                    let v = if k == a { S::one() } else { S::zero() };
                    v.sub(&S::i().mul(&jv[k])).mul(&half)
                })
                .collect();
            let eb = e.iter().map(|z| z.conj()).collect();
            (e, eb)
        })
        .collect()
}

/// Coefficients `Γ(v_i, v_j, v_k) = ⟨∇_{v_i} v_j, v_k⟩` of an invariant
/// metric connection.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection<S> {
    pub gamma: Tensor3<S>,
}

impl<S: Scalar> Connection<S> {
    pub fn levi_civita(model: &LieModel) -> Self {
        let c = |k: usize, i: usize, j: usize| S::from_rational(model.structure_constant(k, i, j));
        let gamma = Tensor3::from_fn(model.dim(), |i, j, k| {
            c(k, i, j).sub(&c(i, j, k)).add(&c(j, k, i)).mul(&S::from_ratio(1, 2))
        });
        Connection { gamma }
    }

    /// `∇ = ∇̃ + a` with `⟨a_X Y, Z⟩ = A(X,Y,Z)`.
    pub fn from_potential(model: &LieModel, a: &Tensor3<S>) -> Self {
        Connection { gamma: Self::levi_civita(model).gamma.add(a) }
    }

    /// Matrix of `∇_{v_i}` on the frame: column `j` holds `∇_{v_i} v_j`.
    pub fn matrix(&self, i: usize) -> Matrix<S> {
        let m = self.gamma.dim();
        Matrix::from_fn(m, m, |k, j| self.gamma.get(i, j, k).clone())
    }

    /// `∇_{v_i}` extended as a derivation to forms and to `ℂl`.
    pub fn on_forms(&self, i: usize) -> Matrix<S> {
        ops::derivation_extension(&self.matrix(i))
    }

    /// `T(X,Y,Z) = ⟨X, ∇_Y Z − ∇_Z Y − [Y,Z]⟩`.
    pub fn torsion(&self, model: &LieModel) -> Tensor3<S> {
        let g = &self.gamma;
        Tensor3::from_fn(g.dim(), |x, y, z| {
            g.get(y, z, x).sub(g.get(z, y, x)).sub(&S::from_rational(model.structure_constant(x, y, z)))
        })
    }

    /// Potential relative to Levi-Civita.
    pub fn potential(&self, model: &LieModel) -> Tensor3<S> {
        self.gamma.sub(&Self::levi_civita(model).gamma)
    }

    /// `(∇ω)(X,Y,Z) = ⟨(∇_X J)Y, Z⟩`.
    pub fn nabla_omega(&self, j: &Matrix<S>) -> Tensor3<S> {
        let m = self.gamma.dim();
        let d: Vec<Matrix<S>> = (0..m).map(|x| self.matrix(x).commutator(j)).collect();
        Tensor3::from_fn(m, |x, y, z| d[x].get(z, y).clone())
    }

    pub fn is_metric(&self, tol: f64) -> bool {
        self.gamma.is_skew_last_two(tol)
    }
}

/// The Hermitian geometry of one model as 3-tensors.
#[derive(Clone, Debug)]
pub struct HermitianData<S> {
    pub j: Matrix<S>,
    pub levi_civita: Connection<S>,
    pub nabla_omega: Tensor3<S>,
    pub nijenhuis: Tensor3<S>,
    pub domega: Tensor3<S>,
    pub dc_omega: Tensor3<S>,
    pub theta: Vec<S>,
}

impl<S: Scalar> HermitianData<S> {
    pub fn new(model: &LieModel, forms: &FormOperators<S>) -> Self {
        let j = model.structure().matrix::<S>();
        let levi_civita = Connection::levi_civita(model);
        let nabla_omega = levi_civita.nabla_omega(&j);
        let n = model.nijenhuis();
        let nijenhuis = Tensor3::from_fn(model.dim(), |x, y, z| S::from_rational(&n[x][y][z]));
        let m = model.dim();
        let theta = (0..m).map(|k| forms.theta.coefficient(1 << k)).collect();
        HermitianData {
            domega: Tensor3::from_form(&forms.domega),
            dc_omega: Tensor3::from_form(&forms.dc_omega),
            j,
            levi_civita,
            nabla_omega,
            nijenhuis,
            theta,
        }
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    /// `T^t = N + (3t−1)/4 d_cω⁺ − (t+1)/4 M(d_cω⁺)`, with `t = num/den`.
    pub fn torsion_t(&self, num: i64, den: i64) -> Tensor3<S> {
        let dc_plus = self.dc_omega.plus(&self.j);
        self.nijenhuis
            .add(&dc_plus.scale_ratio(3 * num - den, 4 * den))
            .sub(&dc_plus.m_op(&self.j).scale_ratio(num + den, 4 * den))
    }

    /// `A^t = −N + 3/2 PN + (t−1)/4 d_cω⁺ + (t+1)/4 M(d_cω⁺)`.
    pub fn potential_t(&self, num: i64, den: i64) -> Tensor3<S> {
        let dc_plus = self.dc_omega.plus(&self.j);
        let n = &self.nijenhuis;
        n.cyclic()
            .scale_ratio(3, 2)
            .sub(n)
            .add(&dc_plus.scale_ratio(num - den, 4 * den))
            .add(&dc_plus.m_op(&self.j).scale_ratio(num + den, 4 * den))
    }

    pub fn connection_t(&self, model: &LieModel, num: i64, den: i64) -> Connection<S> {
        Connection::from_potential(model, &self.potential_t(num, den))
    }

    /// The identities relating `N`, `dω`, `∇̃ω`, torsion and potential.
    pub fn check(&self, model: &LieModel, forms: &FormOperators<S>, params: &[(i64, i64)], tol: f64) -> Report {
        let mut r = Report::new("appendix", "", "");
        let j = &self.j;
        let m = self.dim();
        let t3 = |id: &str, anchor: &str, x: Tensor3<S>| Check::scalars(id, anchor, x.data(), tol);

        let lc = &self.levi_civita;
        r.push(Check::flag("lc.metric", "∇̃ is metric", lc.is_metric(tol), None));
        r.push(t3("lc.torsion_free", "∇̃ is torsion free", lc.torsion(model)));
        r.push(t3(
            "kob_nom",
            "½∇̃ω(X,Y,Z) = ¼dω(X,Y,Z) − ¼dω(X,JY,JZ) + N(JX,Y,Z)",
            self.nabla_omega
                .scale_ratio(1, 2)
                .sub(&self.domega.scale_ratio(1, 4))
                .add(&self.domega.m_op(j).scale_ratio(1, 4))
                .sub(&self.nijenhuis.with_j(j, [true, false, false])),
        ));
        r.push(t3("lc_omega.11", "(∇̃ω)^{1,1} = 0", self.nabla_omega.p11(j)));
        r.push(t3("bp_lev_om", "P(∇̃ω) = ⅓dω", self.nabla_omega.cyclic().sub(&self.domega.scale_ratio(1, 3))));
        r.push(t3(
            "bp_lev_om.20",
            "P((∇̃ω)^{2,0}) = ⅓dω⁺",
            self.nabla_omega.p20(j).cyclic().sub(&self.domega.plus(j).scale_ratio(1, 3)),
        ));
        r.push(t3(
            "bp_lev_om.02",
            "P((∇̃ω)^{0,2}) = ⅓dω⁻",
            self.nabla_omega.p02(j).cyclic().sub(&self.domega.minus(j).scale_ratio(1, 3)),
        ));
        let dplus = self.domega.plus(j);
        r.push(t3("dom_3bpMdom", "(dω)⁺ = 3PM(dω⁺)", dplus.sub(&dplus.m_op(j).cyclic().scale_ratio(3, 1))));
        let dcplus = self.dc_omega.plus(j);
        r.push(t3("dcom.3bpM", "(d_cω)⁺ = 3PM(d_cω⁺)", dcplus.sub(&dcplus.m_op(j).cyclic().scale_ratio(3, 1))));
        let n = &self.nijenhuis;
        r.push(t3("nij.02", "N ∈ Ω^{0,2}(TM)", n.sub(&n.p02(j))));
        r.push(Check::scalars("nij.trace", "r(N) = 0", &n.trace(), tol));
        r.push(t3("bpN", "PN = ⅓(d_cω)⁻", n.cyclic().sub(&self.dc_omega.minus(j).scale_ratio(1, 3))));
        let r_m = dcplus.m_op(j).trace();
        r.push(Check::scalars(
            "trace.mdcom",
            "r(M(d_cω⁺)) = 2θ",
            &r_m.iter().zip(&self.theta).map(|(a, b)| a.sub(&b.scale_i64(2))).collect::<Vec<_>>(),
            tol,
        ));
        let dc_direct = self.domega.with_j(j, [true, true, true]).scale(&S::one().neg());
        r.push(t3("dc.def", "d_cω(X,Y,Z) = −dω(JX,JY,JZ)", self.dc_omega.sub(&dc_direct)));

        let mut levicom = Vec::new();
        let e: Vec<Vec<S>> = (0..m).map(|k| unit_vector(m, k)).collect();
        for x in 0..m {
            let w = Multivector::from_coefficients(m, &lc.on_forms(x).apply(&forms.omega.to_coefficients()));
            for y in 0..m {
                for z in 0..m {
                    levicom.push(eval2(&w, &e[y], &e[z]).sub(self.nabla_omega.get(x, y, z)));
                }
            }
        }
        r.push(Check::scalars("levicom", "(∇̃_X ω)(Y,Z) = ⟨(∇̃_X J)Y, Z⟩", &levicom, tol));
        let pairs = eps_pairs(j);
        let mdc = dcplus.m_op(j);
        let mut on_eps = Vec::new();
        for (ei, _) in &pairs {
            for (_, ebj) in &pairs {
                for (_, ebk) in &pairs {
                    on_eps.push(mdc.eval(ei, ebj, ebk).add(&dcplus.eval(ei, ebj, ebk)));
                }
            }
        }
        r.push(Check::scalars("mdcom.eps", "M(d_cω⁺)(ε_i,ε̄_j,ε̄_k) = −d_cω⁺(ε_i,ε̄_j,ε̄_k)", &on_eps, tol));

        let integrable = self.nijenhuis.is_zero_within(tol);
        let closed = self.domega.is_zero_within(tol);
        if integrable {
            r.push(t3("chern.t11", "T^{1,1} = 0 for t = 1 when N = 0", self.torsion_t(1, 1).p11(j)));
        }
        if closed {
            let t1 = self.torsion_t(1, 1);
            for &(num, den) in params {
                r.push(t3(
                    &format!("ak.t_independent.{num}/{den}"),
                    "T^t does not depend on t when dω = 0",
                    self.torsion_t(num, den).sub(&t1),
                ));
            }
        }
        if integrable && closed {
            r.push(t3("kaehler.torsion", "T^t = 0 on a Kähler model", self.torsion_t(0, 1)));
            r.push(t3("kaehler.chern", "∇^t = ∇̃ on a Kähler model", self.potential_t(0, 1)));
        }
        let (g1, gm1) = (self.connection_t(model, 1, 1).gamma, self.connection_t(model, -1, 1).gamma);

        for &(num, den) in params {
            let tag = if den == 1 { format!("{num}") } else { format!("{num}/{den}") };
            let tt = self.torsion_t(num, den);
            let at = self.potential_t(num, den);
            let conn = self.connection_t(model, num, den);
            let id = |s: &str| format!("t={tag}.{s}");
            r.push(t3(
                &id("affine_line"),
                "∇^t = (1+t)/2 ∇¹ + (1−t)/2 ∇⁻¹",
                conn.gamma
                    .sub(&g1.scale_ratio(den + num, 2 * den))
                    .sub(&gm1.scale_ratio(den - num, 2 * den)),
            ));
            r.push(Check::flag(&id("metric"), "∇^t is metric", conn.is_metric(tol), None));
            r.push(t3(&id("hermitian"), "∇^t J = 0", conn.nabla_omega(j)));
            r.push(t3(&id("torsion"), "torsion of ∇̃ + A^t is T^t", conn.torsion(model).sub(&tt)));
            r.push(t3(
                &id("herm_iff1"),
                "A(X,JY,Z) + A(X,Y,JZ) = −∇̃ω",
                at.with_j(j, [false, true, false]).add(&at.with_j(j, [false, false, true])).add(&self.nabla_omega),
            ));
            r.push(t3(&id("a_plus_t.1"), "A + T = 3P(A)", at.add(&tt).sub(&at.cyclic().scale_ratio(3, 1))));
            r.push(t3(&id("a_plus_t.2"), "3P(A) = 3/2 P(T)", at.cyclic().scale_ratio(3, 1).sub(&tt.cyclic().scale_ratio(3, 2))));
            r.push(t3(&id("a_from_t"), "A^t = −T^t + 3/2 PT^t", at.add(&tt).sub(&tt.cyclic().scale_ratio(3, 2))));
            let t11 = tt.p11(j);
            let pt11 = t11.cyclic();
            r.push(t3(
                &id("herm_iff2.20"),
                "T^{2,0} − 3/2(P(T^{1,1}) − MP(T^{1,1})) = ½(d_cω⁺ − M d_cω⁺)",
                tt.p20(j)
                    .sub(&pt11.sub(&pt11.m_op(j)).scale_ratio(3, 2))
                    .sub(&dcplus.sub(&dcplus.m_op(j)).scale_ratio(1, 2)),
            ));
            r.push(t3(&id("herm_iff2.02"), "T^{0,2} = N", tt.p02(j).sub(n)));
            let t11a = tt.p11_a(j, tol);
            r.push(t3(
                &id("bpTnew"),
                "P(T^{2,0} − T_a^{1,1}) = ⅓d_cω⁺",
                tt.p20(j).sub(&t11a).cyclic().sub(&dcplus.scale_ratio(1, 3)),
            ));
            r.push(t3(&id("t11s"), "T_s^{1,1} = 0", tt.p11_s(j, tol)));
            let pt_plus = tt.cyclic().plus(j);
            r.push(t3(
                &id("canonical"),
                "(PT)⁺ = (2t−1)/3 d_cω⁺",
                pt_plus.sub(&dcplus.scale_ratio(2 * num - den, 3 * den)),
            ));
            r.push(t3(
                &id("t_general"),
                "T = N + 9/8(PT)⁺ + ⅛d_cω⁺ − 3/8 M((PT)⁺) − 3/8 M(d_cω⁺) + T_s^{1,1}",
                n.add(&pt_plus.scale_ratio(9, 8))
                    .add(&dcplus.scale_ratio(1, 8))
                    .sub(&pt_plus.m_op(j).scale_ratio(3, 8))
                    .sub(&dcplus.m_op(j).scale_ratio(3, 8))
                    .add(&tt.p11_s(j, tol))
                    .sub(&tt),
            ));
            r.push(t3(
                &id("dom_minus"),
                "(dω)⁻(X,Y,Z) = −3(PT)⁻(JX,Y,Z)",
                self.domega.minus(j).add(&tt.cyclic().minus(j).with_j(j, [true, false, false]).scale_ratio(3, 1)),
            ));
            let ra = at.trace();
            r.push(Check::scalars(
                &id("trace_a"),
                "r(A) = (t+1)/2 θ",
                &ra.iter()
                    .zip(&self.theta)
                    .map(|(a, b)| a.sub(&b.mul(&S::from_ratio(num + den, 2 * den))))
                    .collect::<Vec<_>>(),
                tol,
            ));
        }

        // identities on 1-forms, evaluated on the coframe
        let e: Vec<Vec<S>> = (0..m).map(|k| unit_vector(m, k)).collect();
        let mdc = dcplus.m_op(j);
        let half = S::from_ratio(1, 2);
        let apply = |x: &Matrix<S>, y: usize| Multivector::from_coefficients(m, &x.apply(&Multivector::<S>::generator(m, y).to_coefficients()));
        let rho_c = forms.form_conj(&forms.rho_plus);
        let (mut l3, mut l5, mut lm, mut lnb) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let nb = n.sub(&n.cyclic().scale_ratio(3, 2));
        for y in 0..m {
            let jy = j.column(y);
            let lhs3 = two_form(m, |a, b| mdc.eval(&e[a], &e[y], &e[b]));
            let rhs3 = two_form(m, |a, b| {
                dcplus.eval(&e[a], &e[y], &e[b]).add(&dplus.eval(&e[a], &jy, &e[b])).mul(&half)
            });
            l3.extend(lhs3.sub(&rhs3).unwrap().to_coefficients());
            let lhs5 = two_form(m, |a, b| dcplus.eval(&e[a], &e[y], &e[b]).mul(&half));
            l5.extend(lhs5.add(&apply(&rho_c, y)).unwrap().to_coefficients());
            let rhs_m = apply(&forms.tau_plus, y)
                .sub(&forms.theta.wedge(&Multivector::generator(m, y)).unwrap())
                .unwrap()
                .sub(&apply(&rho_c, y))
                .unwrap();
            lm.extend(lhs3.sub(&rhs_m).unwrap().to_coefficients());
            let lhs_n = two_form(m, |a, b| nb.eval(&e[a], &e[y], &e[b]));
            lnb.extend(lhs_n.sub(&apply(&forms.mu.add(&forms.mubar), y)).unwrap().to_coefficients());
        }
        r.push(Check::scalars(
            "mdcom.halves",
            "Σ M(d_cω⁺)(v_j,Y,v_k) v_j∧v_k = ½Σ(d_cω⁺(v_j,Y,v_k) + dω⁺(v_j,JY,v_k)) v_j∧v_k",
            &l3,
            tol,
        ));
        r.push(Check::scalars("rho_c.one_forms", "½Σ d_cω⁺(v_j,Y,v_k) v_j∧v_k = −ρ⁺_c(Y)", &l5, tol));
        r.push(Check::scalars("mdcom", "Σ M(d_cω⁺)(v_j,Y,v_k) v_j∧v_k = τ⁺(Y) − θ∧Y − ρ⁺_c(Y)", &lm, tol));
        r.push(Check::scalars("n_minus_bpn", "Σ (N − 3/2 PN)(v_j,Y,v_k) v_j∧v_k = (μ+μ̄)(Y)", &lnb, tol));
        r
    }
}

/// Algebraic identities of the projections on an arbitrary tensor `phi`
/// skew in its last two slots.
pub fn check_projections<S: Scalar>(phi: &Tensor3<S>, j: &Matrix<S>, tol: f64) -> Report {
    let mut r = Report::new("projections", "", "");
    let t3 = |id: &str, anchor: &str, x: Tensor3<S>| Check::scalars(id, anchor, x.data(), tol);
    let (p20, p11, p02) = (phi.p20(j), phi.p11(j), phi.p02(j));
    r.push(t3("split", "φ = φ^{2,0} + φ^{1,1} + φ^{0,2}", phi.sub(&p20).sub(&p11).sub(&p02)));
    for (id, anchor, p, f) in [
        ("p20.idem", "p_{2,0}² = p_{2,0}", &p20, Tensor3::p20 as fn(&Tensor3<S>, &Matrix<S>) -> Tensor3<S>),
        ("p11.idem", "p_{1,1}² = p_{1,1}", &p11, Tensor3::p11),
        ("p02.idem", "p_{0,2}² = p_{0,2}", &p02, Tensor3::p02),
    ] {
        r.push(t3(id, anchor, f(p, j).sub(p)));
    }
    r.push(t3("p20.type", "φ^{2,0}(X,JY,Z) = −φ^{2,0}(JX,Y,Z)", p20.with_j(j, [false, true, false]).add(&p20.with_j(j, [true, false, false]))));
    r.push(t3("p02.type", "φ^{0,2}(X,JY,Z) = φ^{0,2}(JX,Y,Z)", p02.with_j(j, [false, true, false]).sub(&p02.with_j(j, [true, false, false]))));
    r.push(t3("p11.type", "φ^{1,1}(X,JY,JZ) = φ^{1,1}(X,Y,Z)", p11.m_op(j).sub(&p11)));
    r.push(t3("p11.skew", "φ^{1,1}(X,JY,Z) + φ^{1,1}(X,Y,JZ) = 0", p11.with_j(j, [false, true, false]).add(&p11.with_j(j, [false, false, true]))));
    r.push(Check::scalars(
        "split.orthogonal",
        "the splitting is orthogonal",
        &[p20.inner(&p11), p20.inner(&p02), p11.inner(&p02)],
        tol,
    ));
    let (p, q) = (phi.cyclic(), phi.q_op());
    r.push(t3("P.idem", "P² = P", p.cyclic().sub(&p)));
    r.push(t3("Q.idem", "Q² = Q", q.q_op().sub(&q)));
    r.push(t3("PQ", "PQ = 0", q.cyclic()));
    r.push(t3("QP", "QP = 0", p.q_op()));
    let phi0 = phi.sub(&p).sub(&q);
    r.push(t3("decomp.p_kernel", "φ₀ = φ − Pφ − Qφ lies in ker P", phi0.cyclic()));
    r.push(Check::scalars("decomp.r_kernel", "φ₀ = φ − Pφ − Qφ lies in ker r", &phi0.trace(), tol));
    r.push(t3("m.involution", "M² = id", phi.m_op(j).m_op(j).sub(phi)));
    let theta = phi.trace();
    let ri = Tensor3::from_one_form(phi.dim(), &theta).trace();
    r.push(Check::scalars("ri", "r∘i = id", &ri.iter().zip(&theta).map(|(a, b)| a.sub(b)).collect::<Vec<_>>(), tol));

    let pp20 = p20.cyclic();
    r.push(t3("prop20", "φ^{2,0} = 3/2(Pφ^{2,0} − MPφ^{2,0})", p20.sub(&pp20.sub(&pp20.m_op(j)).scale_ratio(3, 2))));
    r.push(t3("prop20.image", "P(Ω^{2,0}) ⊂ E⁺", pp20.minus(j)));
    let a11 = phi.p11_a(j, tol);
    let pa = a11.cyclic();
    r.push(t3("prop11", "φ_a^{1,1} = ¾(Pφ_a^{1,1} + MPφ_a^{1,1})", a11.sub(&pa.add(&pa.m_op(j)).scale_ratio(3, 4))));
    r.push(t3("prop11.image", "P(Ω_a^{1,1}) ⊂ E⁺", pa.minus(j)));
    r.push(t3("s11.kernel", "P(φ_s^{1,1}) = 0", phi.p11_s(j, tol).cyclic()));
    let pp02 = p02.cyclic();
    r.push(t3("prop02", "P(Ω^{0,2}) ⊂ E⁻", pp02.plus(j)));
    r.push(t3("prop02.type", "P(Ω^{0,2}) ⊂ Ω^{0,2}", pp02.sub(&pp02.p02(j))));
    r.push(t3("bpphi_plus", "P(φ_a^{1,1}) + P(φ^{2,0}) = (Pφ)⁺", pa.add(&pp20).sub(&p.plus(j))));
    r.push(t3("pm.split3", "(Pφ)⁻ = (Pφ)^{0,2}, (Pφ)⁺ = (Pφ)^{2,0} + (Pφ)^{1,1}", p.minus(j).add(&p.plus(j)).sub(&p)));
    let pplus = p.plus(j);
    r.push(t3(
        "jderid_plus",
        "φ = φ(JX,JY,Z) + φ(X,JY,JZ) + φ(JX,Y,JZ) on E⁺",
        pplus
            .with_j(j, [true, true, false])
            .add(&pplus.with_j(j, [false, true, true]))
            .add(&pplus.with_j(j, [true, false, true]))
            .sub(&pplus),
    ));
    r
}

/// Three-form `E⁺`/`E⁻` projections agree with the `J_der` eigenspaces.
pub fn check_form_splitting<S: Scalar>(sl2: &Sl2Structure<S>, phi: &Multivector<S>, tol: f64) -> Report {
    let mut r = Report::new("three-forms", "", "");
    let j = sl2.structure.matrix::<S>();
    let t = Tensor3::from_form(phi);
    let m = phi.dim();
    let via_forms = Multivector::from_coefficients(m, &crate::lie::e_plus(sl2).apply(&phi.to_coefficients()));
    r.push(Check::scalars(
        "eplus.eigen",
        "φ⁺ = φ^{2,0} + φ^{1,1} is the ±i eigenpart of J_der",
        t.plus(&j).sub(&Tensor3::from_form(&via_forms)).data(),
        tol,
    ));
    let via_forms = Multivector::from_coefficients(m, &crate::lie::e_minus(sl2).apply(&phi.to_coefficients()));
    r.push(Check::scalars(
        "eminus.eigen",
        "φ⁻ = φ^{0,2} is the ±3i eigenpart of J_der",
        t.minus(&j).sub(&Tensor3::from_form(&via_forms)).data(),
        tol,
    ));
    r
}


#[cfg(test)]
mod model_tests {
    use super::*;
    use crate::lie::FormOperators;
    use crate::scalar::Exact;
    use crate::test_models::*;
    use alloc::string::String;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn suite(model: &LieModel) -> Report {
        let sl2 = Sl2Structure::<Exact>::new(model.structure().clone(), 0.0).unwrap();
        let forms = FormOperators::new(model, &sl2).unwrap();
        HermitianData::new(model, &forms).check(model, &forms, &[(-1, 1), (0, 1), (1, 1), (2, 1), (1, 3)], 0.0)
    }

    fn show(r: &Report) -> Vec<(String, String)> {
        r.failures().map(|c| (c.id.clone(), c.detail.clone().unwrap_or_default())).collect()
    }

    #[test]
    fn appendix_on_models() {
        for m in [torus4(), kt(), kt_ak(), iwasawa(1), iwasawa(-1)] {
            let r = suite(&m);
            assert!(r.passed(), "{}: {:?}", m.name(), show(&r));
        }
    }

    #[test]
    fn projections_on_random_tensors() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [torus4(), kt(), kt_ak(), iwasawa(1)] {
            let j = m.structure().matrix::<Exact>();
            let dim = m.dim();
            for _ in 0..100 {
                let mut t = Tensor3::<Exact>::from_fn(dim, |_, _, _| Exact::from_i64(rng.gen_range(-3..=3)));
                t = Tensor3::from_fn(dim, |a, b, c| t.get(a, b, c).sub(t.get(a, c, b)));
                let r = check_projections(&t, &j, 0.0);
                assert!(r.passed(), "{:?}", show(&r));
            }
        }
    }
}
