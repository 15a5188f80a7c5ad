//! Dirac operators on invariant sections of `ℂl(M)`.
//!
//! A left-invariant section has constant coefficients in the invariant
//! frame, so a connection acts on it through its coefficients alone and
//! `D = Σ_j v_j · ∇_{v_j}` is the finite matrix `Σ_j L_{v_j} Γ_j`, where
//! `Γ_j` is `∇_{v_j}` extended as a derivation.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::clifford::{ops, Multivector};
use crate::connection::{eps_pairs, Connection, HermitianData, Tensor3};
use crate::lie::{laplacian, FormOperators, LieModel};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::sl2::Sl2Structure;

/// Left Clifford multiplication by the vector with coefficients `x`.
pub fn left_vector<S: Scalar>(x: &[S]) -> Matrix<S> {
    ops::left_mul(&Multivector::vector(x.len(), x))
}

/// `(a·t + b)/c` for `t = num/den`.
fn affine<S: Scalar>(num: i64, den: i64, a: i64, b: i64, c: i64) -> S {
    S::from_ratio(a * num + b * den, c * den)
}

/// A metric connection acting on invariant sections of `ℂl(M)`.
#[derive(Clone, Debug)]
pub struct CliffordConnection<S> {
    pub gamma: Tensor3<S>,
    /// `c^k_{ij}` at `(k·m + i)·m + j`.
    structure: Vec<S>,
    directions: Vec<Matrix<S>>,
}

impl<S: Scalar> CliffordConnection<S> {
    pub fn new(model: &LieModel, conn: &Connection<S>) -> Self {
        let m = model.dim();
        let mut structure = Vec::with_capacity(m * m * m);
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    structure.push(S::from_rational(model.structure_constant(k, i, j)));
                }
            }
        }
        let directions = (0..m).map(|i| conn.on_forms(i)).collect();
        CliffordConnection { gamma: conn.gamma.clone(), structure, directions }
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn direction(&self, i: usize) -> &Matrix<S> {
        &self.directions[i]
    }

    /// `∇_X` for a complex combination `X = Σ x_a v_a`.
    pub fn along(&self, x: &[S]) -> Matrix<S> {
        let size = self.directions[0].rows();
        let mut out = Matrix::zeros(size, size);
        for (a, xa) in x.iter().enumerate() {
            if !xa.is_zero() {
                out = out.add(&self.directions[a].scale(xa));
            }
        }
        out
    }

    /// `∇_X Y` for invariant `X`, `Y`.
    pub fn covariant(&self, x: &[S], y: &[S]) -> Vec<S> {
        let m = self.dim();
        (0..m)
            .map(|k| {
                let mut s = S::zero();
                for a in 0..m {
                    for b in 0..m {
                        s.add_assign(&x[a].mul(&y[b]).mul(self.gamma.get(a, b, k)));
                    }
                }
                s
            })
            .collect()
    }

    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        let m = self.dim();
        (0..m)
            .map(|k| {
                let mut s = S::zero();
                for i in 0..m {
                    for j in 0..m {
                        s.add_assign(&x[i].mul(&y[j]).mul(&self.structure[(k * m + i) * m + j]));
                    }
                }
                s
            })
            .collect()
    }

    /// `T(X,Y) = ∇_X Y − ∇_Y X − [X,Y]`.
    pub fn torsion(&self, x: &[S], y: &[S]) -> Vec<S> {
        let a = self.covariant(x, y);
        let b = self.covariant(y, x);
        let c = self.bracket(x, y);
        (0..self.dim()).map(|k| a[k].sub(&b[k]).sub(&c[k])).collect()
    }

    /// `∇_{X,Y} = ∇_X∇_Y − ∇_{∇_X Y}`.
    pub fn second(&self, x: &[S], y: &[S]) -> Matrix<S> {
        self.along(x).mul(&self.along(y)).sub(&self.along(&self.covariant(x, y)))
    }

    /// `R(X,Y) = [∇_X, ∇_Y] − ∇_{[X,Y]}`.
    pub fn curvature(&self, x: &[S], y: &[S]) -> Matrix<S> {
        self.along(x).commutator(&self.along(y)).sub(&self.along(&self.bracket(x, y)))
    }

    /// `Σ_j v_j · ∇_{v_j}`.
    pub fn dirac(&self) -> Matrix<S> {
        let m = self.dim();
        let size = self.directions[0].rows();
        let mut out = Matrix::zeros(size, size);
        for j in 0..m {
            let v: Vec<S> = (0..m).map(|k| if k == j { S::one() } else { S::zero() }).collect();
            out = out.add(&left_vector(&v).mul(&self.directions[j]));
        }
        out
    }
}

/// The Riemannian Dirac operator and its relatives.
#[derive(Clone, Debug)]
pub struct RiemannianDirac<S> {
    pub levi_civita: CliffordConnection<S>,
    /// `D̃`
    pub d: Matrix<S>,
    pub d_c: Matrix<S>,
    pub d_t: Matrix<S>,
    pub d_ct: Matrix<S>,
    /// `𝔇 = ½(D̃ + iD̃_c)`
    pub curly: Matrix<S>,
    pub curly_bar: Matrix<S>,
    pub curly_t: Matrix<S>,
    pub curly_bar_t: Matrix<S>,
}

fn halves<S: Scalar>(x: &Matrix<S>, xc: &Matrix<S>) -> (Matrix<S>, Matrix<S>) {
    let h = S::from_ratio(1, 2);
    let ixc = xc.scale(&S::i());
    (x.add(&ixc).scale(&h), x.sub(&ixc).scale(&h))
}

impl<S: Scalar> RiemannianDirac<S> {
    pub fn new(model: &LieModel, sl2: &Sl2Structure<S>) -> Self {
        let levi_civita = CliffordConnection::new(model, &Connection::levi_civita(model));
        let d = levi_civita.dirac();
        let d_c = sl2.c_conj(&d);
        let (curly, curly_bar) = halves(&d, &d_c);
        RiemannianDirac {
            d_t: sl2.t_conj(&d),
            d_ct: sl2.t_conj(&d_c),
            curly_t: sl2.t_conj(&curly),
            curly_bar_t: sl2.t_conj(&curly_bar),
            levi_civita,
            d,
            d_c,
            curly,
            curly_bar,
        }
    }

    /// Identities valid on every almost Hermitian model.
    pub fn check(&self, sl2: &Sl2Structure<S>, forms: &FormOperators<S>, tol: f64) -> Report {
        let mut r = Report::new("riemannian", "", "");
        let eq = |id: &str, anchor: &str, a: &Matrix<S>, b: &Matrix<S>| Check::equal(id, anchor, a, b, tol);
        let i = S::i();
        let d = &forms.d;
        let (dl, dlb) = (&forms.delta, &forms.delta_bar);
        let (dls, dlbs) = (dl.adjoint(), dlb.adjoint());
        let alpha = &sl2.alpha;

        r.push(eq("dtilde.d_plus_dstar", "D̃ = d + d*", &self.d, &d.add(&d.adjoint())));
        r.push(eq("dtilde.delta", "D̃ = δ + δ̄ + δ* + δ̄*", &self.d, &dl.add(dlb).add(&dls).add(&dlbs)));
        r.push(eq("dtilde.self_adjoint", "D̃* = D̃", &self.d.adjoint(), &self.d));
        r.push(eq("dtilde.alpha", "D̃α = −αD̃", &self.d.mul(alpha), &alpha.mul(&self.d).neg()));
        r.push(Check::matrix("dtilde.trs_commute", "[D̃, D̃ᵗ] = 0", &self.d.commutator(&self.d_t), tol));
        r.push(Check::matrix("dtilde.c_trs_commute", "[D̃_c, D̃_cᵗ] = 0", &self.d_c.commutator(&self.d_ct), tol));
        let dc_forms = forms.form_conj(d).neg();
        r.push(eq("dcongetcj.dc", "D̃_c ≅ −d_c − d_c*", &self.d_c, &dc_forms.add(&dc_forms.adjoint())));
        r.push(eq(
            "dcongetcj.delta",
            "D̃_c ≅ i(δ − δ̄ + δ̄* − δ*)",
            &self.d_c,
            &dl.sub(dlb).add(&dlbs).sub(&dls).scale(&i),
        ));
        r.push(eq("dcongetctrs", "D̃ᵗ ≅ dα − d*α", &self.d_t, &d.sub(&d.adjoint()).mul(alpha)));
        r.push(eq("curlyd.forms", "𝔇 = δ̄ + δ*", &self.curly, &dlb.add(&dls)));
        r.push(eq("curlyd_bar.forms", "𝔇̄ = δ + δ̄*", &self.curly_bar, &dl.add(&dlbs)));
        r.push(eq("curlyd_t.forms", "𝔇ᵗ = δ̄α − δ*α", &self.curly_t, &dlb.sub(&dls).mul(alpha)));
        r.push(eq("curlyd_bar_t.forms", "𝔇̄ᵗ = δα − δ̄*α", &self.curly_bar_t, &dl.sub(&dlbs).mul(alpha)));
        r.push(eq("ccurlydc", "c𝔇c = 𝔇̄", &ops::c_conjugate(&self.curly), &self.curly_bar));
        let lap = laplacian(&self.curly);
        r.push(eq("deltatrd.trs", "Δ_𝔇 = Δ_{𝔇ᵗ}", &lap, &laplacian(&self.curly_t)));
        r.push(eq("deltatrd.delta", "Δ_𝔇 = Δ_δ + Δ_δ̄", &lap, &laplacian(dl).add(&laplacian(dlb))));
        r
    }

    /// Identities that need `dω = 0`.
    pub fn check_almost_kaehler(&self, sl2: &Sl2Structure<S>, forms: &FormOperators<S>, tol: f64) -> Report {
        let mut r = Report::new("almost_kaehler_dirac", "", "");
        let eq = |id: &str, anchor: &str, a: &Matrix<S>, b: &Matrix<S>| Check::equal(id, anchor, a, b, tol);
        let i = S::i();
        let h = &sl2.h;
        let (d, dc, dt, dct) = (&self.d, &self.d_c, &self.d_t, &self.d_ct);

        r.push(eq("akdi.d", "[D̃, 𝓗] = −iD̃_c", &d.commutator(h), &dc.scale(&i.neg())));
        r.push(eq("akdi.dc", "[D̃_c, 𝓗] = iD̃", &dc.commutator(h), &d.scale(&i)));
        r.push(eq("akdi.dt", "[D̃ᵗ, 𝓗] = iD̃_cᵗ", &dt.commutator(h), &dct.scale(&i)));
        r.push(eq("akdi.dct", "[D̃_cᵗ, 𝓗] = −iD̃ᵗ", &dct.commutator(h), &dt.scale(&i.neg())));

        let plus = sl2.l.add(&sl2.lbar);
        let minus = sl2.l.sub(&sl2.lbar);
        r.push(eq("rdcurlyl.plus_d", "{𝓛 + 𝓛̄, D̃} = D̃ᵗ", &plus.anticommutator(d), dt));
        r.push(eq("rdcurlyl.minus_d", "{𝓛 − 𝓛̄, D̃} = −iD̃_cᵗ", &minus.anticommutator(d), &dct.scale(&i.neg())));
        r.push(eq("rdcurlyl.plus_dt", "{𝓛 + 𝓛̄, D̃ᵗ} = D̃", &plus.anticommutator(dt), d));
        r.push(eq("rdcurlyl.minus_dt", "{𝓛 − 𝓛̄, D̃ᵗ} = iD̃_c", &minus.anticommutator(dt), &dc.scale(&i)));
        r.push(eq("rdcurlyl.plus_dc", "{𝓛 + 𝓛̄, D̃_c} = D̃_cᵗ", &plus.anticommutator(dc), dct));
        r.push(eq("rdcurlyl.minus_dc", "{𝓛 − 𝓛̄, D̃_c} = iD̃ᵗ", &minus.anticommutator(dc), &dt.scale(&i)));
        r.push(eq("rd_c_rdtrs", "[D̃_c, D̃ᵗ] = [D̃, D̃_cᵗ]", &dc.commutator(dt), &d.commutator(dct)));

        let (cd, cdb) = (&self.curly, &self.curly_bar);
        r.push(Check::matrix("hcurlyd.l", "{𝔇, 𝓛} = 0", &cd.anticommutator(&sl2.l), tol));
        r.push(Check::matrix("hcurlyd.lbar_bar", "{𝔇̄, 𝓛̄} = 0", &cdb.anticommutator(&sl2.lbar), tol));
        r.push(eq("hcurlyd.lbar", "{𝔇, 𝓛̄} = 𝔇ᵗ", &cd.anticommutator(&sl2.lbar), &self.curly_t));
        r.push(eq("hcurlyd.l_bar", "{𝔇̄, 𝓛} = 𝔇̄ᵗ", &cdb.anticommutator(&sl2.l), &self.curly_bar_t));
        r.push(eq("hcurlyd.h", "[𝓗, 𝔇] = 𝔇", &h.commutator(cd), cd));

        let lap = laplacian(cd);
        r.push(Check::matrix("hdeltad.h", "[𝓗, Δ_𝔇] = 0", &h.commutator(&lap), tol));
        r.push(Check::matrix("hdeltad.l", "[𝓛, Δ_𝔇] = 0", &sl2.l.commutator(&lap), tol));
        r.push(Check::matrix("hdeltad.lbar", "[𝓛̄, Δ_𝔇] = 0", &sl2.lbar.commutator(&lap), tol));
        r.push(eq("deltad_deltadelta", "Δ_𝔇 = 2Δ_δ", &lap, &laplacian(&forms.delta).scale_ratio(2, 1)));
        r
    }
}

/// The canonical Hermitian Dirac operator `D_t` and its split parts.
#[derive(Clone, Debug)]
pub struct HermitianDirac<S> {
    pub t: (i64, i64),
    pub connection: CliffordConnection<S>,
    /// `A^t = ∇^t − ∇̃` as a tensor.
    pub potential: Tensor3<S>,
    pub d: Matrix<S>,
    pub d_c: Matrix<S>,
    pub d_t: Matrix<S>,
    pub d_ct: Matrix<S>,
    /// `𝔡_t = ½(D_t + i(D_t)_c)`
    pub small: Matrix<S>,
    pub small_bar: Matrix<S>,
}

impl<S: Scalar> HermitianDirac<S> {
    pub fn new(model: &LieModel, sl2: &Sl2Structure<S>, data: &HermitianData<S>, num: i64, den: i64) -> Self {
        let conn = data.connection_t(model, num, den);
        let potential = conn.potential(model);
        let connection = CliffordConnection::new(model, &conn);
        let d = connection.dirac();
        let d_c = sl2.c_conj(&d);
        let (small, small_bar) = halves(&d, &d_c);
        HermitianDirac {
            t: (num, den),
            potential,
            d_t: sl2.t_conj(&d),
            d_ct: sl2.t_conj(&d_c),
            connection,
            d,
            d_c,
            small,
            small_bar,
        }
    }

    fn label(&self) -> String {
        let (num, den) = self.t;
        if den == 1 {
            format!("t={num}")
        } else {
            format!("t={num}/{den}")
        }
    }

    /// `Σ_a ε(v_a)·∇_{ε̄(v_a)}`, the frame form of `𝔡_t`.
    pub fn small_from_frame(&self, j: &Matrix<S>) -> Matrix<S> {
        let size = self.d.rows();
        let mut out = Matrix::zeros(size, size);
        for (e, eb) in eps_pairs(j) {
            out = out.add(&left_vector(&e).mul(&self.connection.along(&eb)));
        }
        out
    }

    /// Identities of one `D_t`.
    pub fn check(
        &self,
        sl2: &Sl2Structure<S>,
        forms: &FormOperators<S>,
        data: &HermitianData<S>,
        riemannian: &RiemannianDirac<S>,
        tol: f64,
    ) -> Report {
        let mut r = Report::new("hermitian_dirac", "", "");
        let eq = |id: &str, anchor: &str, a: &Matrix<S>, b: &Matrix<S>| Check::equal(id, anchor, a, b, tol);
        let (num, den) = self.t;
        let i = S::i();
        let ni = i.neg();
        let (h, cj) = (&sl2.h, &sl2.curly_j);
        let (d, dc, dt, dct) = (&self.d, &self.d_c, &self.d_t, &self.d_ct);
        let jm = &data.j;
        let m = data.dim();

        r.push(eq("dh.d_h", "[D_t, 𝓗] = −i(D_t)_c", &d.commutator(h), &dc.scale(&ni)));
        r.push(eq("dh.d_j", "[D_t, 𝓙] = −i(D_t)_c", &d.commutator(cj), &dc.scale(&ni)));
        r.push(eq("dh.dc_h", "[(D_t)_c, 𝓗] = iD_t", &dc.commutator(h), &d.scale(&i)));
        r.push(eq("dh.dc_j", "[(D_t)_c, 𝓙] = iD_t", &dc.commutator(cj), &d.scale(&i)));
        r.push(eq("dh.dt_h", "[D_tᵗ, 𝓗] = i(D_t)_cᵗ", &dt.commutator(h), &dct.scale(&i)));
        r.push(eq("dh.dt_j", "[D_tᵗ, 𝓙] = −i(D_t)_cᵗ", &dt.commutator(cj), &dct.scale(&ni)));
        r.push(eq("dh.dct_h", "[(D_t)_cᵗ, 𝓗] = −iD_tᵗ", &dct.commutator(h), &dt.scale(&ni)));
        r.push(eq("dh.dct_j", "[(D_t)_cᵗ, 𝓙] = iD_tᵗ", &dct.commutator(cj), &dt.scale(&i)));
        r.push(eq("dt.alpha", "D_tα = −αD_t", &d.mul(&sl2.alpha), &sl2.alpha.mul(d).neg()));

        // adjoint laws
        let da = d.sub(&riemannian.d);
        let ra = self.potential.trace();
        r.push(Check::scalars(
            "trace_a",
            "r(A) = (t+1)/2 θ",
            &ra.iter()
                .zip(&data.theta)
                .map(|(a, b)| a.sub(&b.mul(&affine(num, den, 1, 1, 2))))
                .collect::<Vec<_>>(),
            tol,
        ));
        r.push(eq("da.adjoint", "D_A* = D_A + L_{r(A)}", &da.adjoint(), &da.add(&left_vector(&ra))));
        let mut d_a_forms = Matrix::zeros(d.rows(), d.cols());
        for j in 0..m {
            let v = Multivector::<S>::generator(m, j);
            let a_j = ops::derivation_extension(&Matrix::from_fn(m, m, |k, l| self.potential.get(j, l, k).clone()));
            d_a_forms = d_a_forms.add(&ops::wedge_left(&v).mul(&a_j));
        }
        let i_ra = ops::contract_left(&Multivector::vector(m, &ra));
        r.push(eq("da.forms", "D_A ≅ d_A + d_A* + r(A)⌟", &da, &d_a_forms.add(&d_a_forms.adjoint()).add(&i_ra)));
        let l_theta = left_vector(&data.theta);
        r.push(eq("dt.adjoint", "D_t* = D_t + (t+1)/2 L_θ", &d.adjoint(), &d.add(&l_theta.scale(&affine(num, den, 1, 1, 2)))));
        let jtheta = jm.apply(&data.theta);
        r.push(eq(
            "dt_c.adjoint",
            "(D_t)_c = (D_t)_c* + (t+1)/2 L_{Jθ}",
            dc,
            &dc.adjoint().add(&left_vector(&jtheta).scale(&affine(num, den, 1, 1, 2))),
        ));

        // the decomposition on forms
        let adj = |x: &Matrix<S>| x.adjoint();
        let first = forms.del.add(&forms.delbar).add(&adj(&forms.del)).add(&adj(&forms.delbar));
        let taus = forms
            .tau_del
            .add(&forms.tau_delbar)
            .add(&adj(&forms.tau_del))
            .add(&adj(&forms.tau_delbar))
            .sub(&forms.e_theta)
            .add(&forms.i_theta);
        let rhos = forms
            .rho_del
            .sub(&forms.rho_delbar)
            .sub(&adj(&forms.rho_del))
            .add(&adj(&forms.rho_delbar))
            .scale(&i);
        let rhs = first.add(&taus.scale(&affine(num, den, 1, 1, 4))).add(&rhos.scale(&affine(num, den, 3, -1, 4)));
        r.push(eq(
            "gaudmainprop",
            "D_t = ∂ + ∂̄ + ∂* + ∂̄* + (t+1)/4(τ_∂ + τ̄_∂ + τ_∂* + τ̄_∂* − E_θ + I_θ) + (3t−1)/4 i(ρ_∂ − ρ̄_∂ − ρ_∂* + ρ̄_∂*)",
            d,
            &rhs,
        ));

        // the split operator
        let small = &self.small;
        r.push(eq("small.frame", "½(D_t + i(D_t)_c) = 2Σ ε_j·∇^t_{ε̄_j}", small, &self.small_from_frame(jm)));
        let mut off = Matrix::zeros(d.rows(), d.cols());
        for (&(r1, s1), p) in &sl2.clifford_projector {
            for (&(r2, s2), q) in &sl2.clifford_projector {
                if (r2 - r1, s2 - s1) != (1, 1) {
                    off = off.add(&q.mul(small).mul(p));
                }
            }
        }
        r.push(Check::matrix("small.bidegree", "𝔡_t has Clifford bidegree (1,1)", &off, tol));
        let theta01: Vec<S> = data
            .theta
            .iter()
            .zip(&jtheta)
            .map(|(a, b)| a.add(&i.mul(b)).mul(&S::from_ratio(1, 2)))
            .collect();
        r.push(eq(
            "small.adjoint",
            "𝔡_t* = 𝔡̄_t + (t+1)/2 L_{(θ+iJθ)/2}",
            &small.adjoint(),
            &self.small_bar.add(&left_vector(&theta01).scale(&affine(num, den, 1, 1, 2))),
        ));
        r.tagged(&self.label())
    }

    /// Identities specific to the Bismut operator `B = D_{−1}`.
    pub fn check_bismut(&self, sl2: &Sl2Structure<S>, forms: &FormOperators<S>, kaehler: bool, tol: f64) -> Report {
        let mut r = Report::new("bismut", "", "");
        let eq = |id: &str, anchor: &str, a: &Matrix<S>, b: &Matrix<S>| Check::equal(id, anchor, a, b, tol);
        let i = S::i();
        let ni = i.neg();
        let alpha = &sl2.alpha;
        let (b, bc, bt, bct) = (&self.d, &self.d_c, &self.d_t, &self.d_ct);
        let (e, hb) = (&forms.eps, &forms.delbar_hat);
        let (es, hbs) = (e.adjoint(), hb.adjoint());

        r.push(eq("b.self_adjoint", "B* = B", &b.adjoint(), b));
        r.push(eq("b.forms", "B = ε + ∂̄̂ + ε* + ∂̄̂*", b, &e.add(hb).add(&es).add(&hbs)));
        r.push(eq("b_c.forms", "B_c ≅ i(ε − ∂̄̂ + ∂̄̂* − ε*)", bc, &e.sub(hb).add(&hbs).sub(&es).scale(&i)));
        r.push(eq("b_t.forms", "Bᵗ ≅ (ε + ∂̄̂ − ε* − ∂̄̂*)α", bt, &e.add(hb).sub(&es).sub(&hbs).mul(alpha)));
        r.push(eq("b.h", "[B, 𝓗] = −iB_c*", &b.commutator(&sl2.h), &bc.adjoint().scale(&ni)));

        let plus = sl2.l.add(&sl2.lbar);
        let minus = sl2.l.sub(&sl2.lbar);
        r.push(eq("bltlta.plus_b", "{𝓛 + 𝓛̄, B} = Bᵗ", &plus.anticommutator(b), bt));
        r.push(eq("bltlta.minus_b", "{𝓛 − 𝓛̄, B} = −iB_cᵗ", &minus.anticommutator(b), &bct.scale(&ni)));
        r.push(eq("bltlta.plus_bt", "{𝓛 + 𝓛̄, Bᵗ} = B", &plus.anticommutator(bt), b));
        r.push(eq("bltlta.minus_bt", "{𝓛 − 𝓛̄, Bᵗ} = iB_c", &minus.anticommutator(bt), &bc.scale(&i)));
        r.push(eq("bltlta.plus_bc", "{𝓛 + 𝓛̄, B_c} = B_cᵗ", &plus.anticommutator(bc), bct));
        r.push(eq("bltlta.minus_bc", "{𝓛 − 𝓛̄, B_c} = iBᵗ", &minus.anticommutator(bc), &bt.scale(&i)));

        let (cb, cbb) = (&self.small, &self.small_bar);
        let (cbt, cbbt) = (sl2.t_conj(cb), sl2.t_conj(cbb));
        r.push(eq("curlyb.forms", "𝔅 = ∂̄̂ + ε*", cb, &hb.add(&es)));
        r.push(eq("curlyb_bar.forms", "𝔅̄ = ε + ∂̄̂*", cbb, &e.add(&hbs)));
        r.push(eq("curlyb_t.forms", "𝔅ᵗ = ∂̄̂α − ε*α", &cbt, &hb.sub(&es).mul(alpha)));
        r.push(eq("curlyb_bar_t.forms", "𝔅̄ᵗ = εα − ∂̄̂*α", &cbbt, &e.sub(&hbs).mul(alpha)));
        r.push(eq("curlyb.adjoint", "𝔅* = 𝔅̄", &cb.adjoint(), cbb));
        r.push(eq("ccurlybc", "c𝔅c = 𝔅̄", &ops::c_conjugate(cb), cbb));
        r.push(eq("ccurlybtc", "c𝔅ᵗc = 𝔅̄ᵗ", &ops::c_conjugate(&cbt), &cbbt));

        r.push(Check::matrix("hcurlyb.l", "{𝔅, 𝓛} = 0", &cb.anticommutator(&sl2.l), tol));
        r.push(Check::matrix("hcurlyb.lbar_bar", "{𝔅̄, 𝓛̄} = 0", &cbb.anticommutator(&sl2.lbar), tol));
        r.push(eq("hcurlyb.lbar", "{𝔅, 𝓛̄} = 𝔅ᵗ", &cb.anticommutator(&sl2.lbar), &cbt));
        r.push(eq("hcurlyb.l_bar", "{𝔅̄, 𝓛} = 𝔅̄ᵗ", &cbb.anticommutator(&sl2.l), &cbbt));
        r.push(eq("hcurlyb.h", "[𝓗, 𝔅] = 𝔅", &sl2.h.commutator(cb), cb));

        let lap = laplacian(cb);
        let lapt = laplacian(&cbt);
        r.push(Check::matrix("hdeltab.h", "[𝓗, Δ_𝔅] = 0", &sl2.h.commutator(&lap), tol));
        r.push(Check::matrix("hdeltab.h_t", "[𝓗, Δ_{𝔅ᵗ}] = 0", &sl2.h.commutator(&lapt), tol));
        r.push(eq("hdeltab.l", "[𝓛, Δ_𝔅] = [𝔅̄ᵗ, 𝔅]", &sl2.l.commutator(&lap), &cbbt.commutator(cb)));
        r.push(eq("hdeltab.l_t", "[𝓛, Δ_{𝔅ᵗ}] = [𝔅, 𝔅̄ᵗ]", &sl2.l.commutator(&lapt), &cb.commutator(&cbbt)));
        r.push(eq("hdeltab.lbar", "[𝓛̄, Δ_𝔅] = [𝔅ᵗ, 𝔅̄]", &sl2.lbar.commutator(&lap), &cbt.commutator(cbb)));
        r.push(eq("hdeltab.lbar_t", "[𝓛̄, Δ_{𝔅ᵗ}] = [𝔅̄, 𝔅ᵗ]", &sl2.lbar.commutator(&lapt), &cbb.commutator(&cbt)));
        r.push(eq(
            "delta_ah",
            "Δ_𝔅 + Δ_{𝔅ᵗ} ≅ 2(Δ_ε + Δ_∂̄̂)",
            &lap.add(&lapt),
            &laplacian(e).add(&laplacian(hb)).scale_ratio(2, 1),
        ));
        if kaehler {
            r.push(Check::matrix("kaehler.b_bt", "[B, Bᵗ] = 0", &b.commutator(bt), tol));
            r.push(Check::matrix("kaehler.bc_bct", "[B_c, B_cᵗ] = 0", &bc.commutator(bct), tol));
            r.push(eq("kaehler.delta_b", "Δ_𝔅 = Δ_{𝔅ᵗ}", &lap, &lapt));
        }
        r
    }

    /// Second-order identities for `𝔡_t`.
    pub fn check_bochner(&self, data: &HermitianData<S>, kaehler: bool, tol: f64) -> Report {
        let mut r = Report::new("bochner", "", "");
        let eq = |id: &str, anchor: &str, a: &Matrix<S>, b: &Matrix<S>| Check::equal(id, anchor, a, b, tol);
        let (num, den) = self.t;
        let t = S::from_ratio(num, den);
        let conn = &self.connection;
        let pairs = eps_pairs(&data.j);
        let size = self.d.rows();
        let m = data.dim();
        let zero = || Matrix::<S>::zeros(size, size);
        let n_t = &data.nijenhuis;
        let dcp = data.dc_omega.plus(&data.j);
        let tt = data.torsion_t(num, den);

        // sums over an adapted frame j ≤ n are halves of sums over all v_a
        let half = S::from_ratio(1, 2);
        let quarter = S::from_ratio(1, 4);
        let eighth = S::from_ratio(1, 8);

        // torsion of ∇^t against the tensor T^t, then on (0,1)-vectors
        let mut tors = Vec::new();
        let mut expand = Vec::new();
        for (_, ebj) in &pairs {
            for (_, ebk) in &pairs {
                let measured = conn.torsion(ebj, ebk);
                let mut predicted = vec![S::zero(); m];
                for (ei, ebi) in &pairs {
                    let nn = n_t.eval(ebi, ebj, ebk);
                    let dd = dcp.eval(ei, ebj, ebk).mul(&t);
                    for k in 0..m {
                        predicted[k].add_assign(&nn.mul(&ei[k]).add(&dd.mul(&ebi[k])));
                    }
                }
                for k in 0..m {
                    let e_k: Vec<S> = (0..m).map(|q| if q == k { S::one() } else { S::zero() }).collect();
                    tors.push(measured[k].sub(&tt.eval(&e_k, ebj, ebk)));
                    expand.push(measured[k].sub(&predicted[k]));
                }
            }
        }
        r.push(Check::scalars("torsion.tensor", "⟨X, T^t(Y,Z)⟩ = T^t(X,Y,Z)", &tors, tol));
        r.push(Check::scalars(
            "torsion.expansion",
            "T^t(ε̄_j,ε̄_k) = 2Σ_i N(ε̄_i,ε̄_j,ε̄_k)ε_i + t d_cω⁺(ε_i,ε̄_j,ε̄_k)ε̄_i",
            &expand,
            tol,
        ));

        let small_sq = self.small.mul(&self.small).scale(&quarter);
        let mut curv = zero();
        let mut tors_term = zero();
        let mut closed = zero();
        for (ea, eba) in &pairs {
            for (eb, ebb) in &pairs {
                let lab = left_vector(ea).mul(&left_vector(eb));
                curv = curv.add(&lab.mul(&conn.curvature(eba, ebb)));
                tors_term = tors_term.add(&lab.mul(&conn.along(&conn.torsion(eba, ebb))));
                let mut inner = zero();
                for (ec, ebc) in &pairs {
                    let nn = n_t.eval(ebc, eba, ebb);
                    let dd = dcp.eval(ec, eba, ebb).mul(&t);
                    inner = inner.add(&conn.along(ec).scale(&nn)).add(&conn.along(ebc).scale(&dd));
                }
                closed = closed.add(&lab.mul(&inner));
            }
        }
        let curv = curv.scale(&eighth);
        r.push(eq(
            "bochner.square.torsion",
            "¼𝔡_t² = Σ_{j<k} ε_j·ε_k·(R^t(ε̄_j,ε̄_k) − ∇^t_{T^t(ε̄_j,ε̄_k)})",
            &small_sq,
            &curv.sub(&tors_term.scale(&eighth)),
        ));
        r.push(eq(
            "bochner.square",
            "¼𝔡_t² = Σ_{j<k} ε_j·ε_k·R^t(ε̄_j,ε̄_k) − 2ε_j·ε_k·Σ_i(N(ε̄_i,ε̄_j,ε̄_k)∇^t_{ε_i} + t d_cω⁺(ε_i,ε̄_j,ε̄_k)∇^t_{ε̄_i})",
            &small_sq,
            &curv.sub(&closed.scale(&eighth)),
        ));
        if kaehler {
            r.push(Check::matrix("bochner.differential", "𝔡_t² = 0", &self.small.mul(&self.small), tol));
        }

        // 𝔡_t𝔡̄_t + 𝔡̄_t𝔡_t
        let anti = self.small.anticommutator(&self.small_bar);
        let mut rough = zero();
        for (e, eb) in &pairs {
            rough = rough.sub(&conn.second(eb, e));
        }
        let rough = rough.scale(&half);
        let mut rt = zero();
        let mut tmixed = zero();
        let mut dterm = zero();
        for (ek, ebk) in &pairs {
            for (ej, ebj) in &pairs {
                let lab = left_vector(ebk).mul(&left_vector(ej));
                rt = rt.add(&lab.mul(&conn.curvature(ek, ebj)));
                tmixed = tmixed.add(&lab.mul(&conn.along(&conn.torsion(ek, ebj))));
                let mut inner = zero();
                for (ei, ebi) in &pairs {
                    inner = inner
                        .add(&conn.along(ebi).scale(&dcp.eval(ei, ek, ebj)))
                        .add(&conn.along(ei).scale(&dcp.eval(ebi, ek, ebj)));
                }
                dterm = dterm.add(&lab.mul(&inner));
            }
        }
        let rt = rt.scale(&quarter);
        r.push(eq(
            "bochner.anti.torsion",
            "𝔡_t𝔡̄_t + 𝔡̄_t𝔡_t = 4(−Σ_j ∇^t_{ε̄_j,ε_j} + Σ_{j,k} ε̄_k·ε_j·(R^t(ε_k,ε̄_j) − ∇^t_{T^t(ε_k,ε̄_j)}))",
            &anti,
            &rough.add(&rt).sub(&tmixed.scale(&quarter)).scale_ratio(4, 1),
        ));
        r.push(eq(
            "bochner.anti",
            "𝔡_t𝔡̄_t + 𝔡̄_t𝔡_t = 4(∇*∇_t + 𝓡_t) − 4(t−1) Σ_{i,j,k} ε̄_k·ε_j·(d_cω⁺(ε_i,ε_k,ε̄_j)∇^t_{ε̄_i} + d_cω⁺(ε̄_i,ε_k,ε̄_j)∇^t_{ε_i})",
            &anti,
            &rough
                .add(&rt)
                .scale_ratio(4, 1)
                .sub(&dterm.scale(&affine::<S>(num, den, 1, -1, 2))),
        ));
        r.tagged(&self.label())
    }
}

/// `∇_v(φ·ψ) = ∇_v(φ)·ψ + φ·∇_v(ψ)` on the given pairs, for every frame `v`.
pub fn check_leibniz<S: Scalar>(conn: &CliffordConnection<S>, pairs: &[(Multivector<S>, Multivector<S>)], tol: f64) -> Check {
    let mut residual = Vec::new();
    for (x, y) in pairs {
        let xy = x.clifford_mul(y).expect("same dimension");
        for a in 0..conn.dim() {
            let g = conn.direction(a);
            let apply = |z: &Multivector<S>| Multivector::from_coefficients(z.dim(), &g.apply(&z.to_coefficients()));
            let lhs = apply(&xy);
            let rhs = apply(x).clifford_mul(y).unwrap().add(&x.clifford_mul(&apply(y)).unwrap()).unwrap();
            residual.extend(lhs.sub(&rhs).unwrap().to_coefficients());
        }
    }
    Check::scalars("leibniz", "∇_v(φ·ψ) = ∇_v(φ)·ψ + φ·∇_v(ψ)", &residual, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;
    use crate::test_models::*;
    use alloc::string::String;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    struct Setup {
        sl2: Sl2Structure<Exact>,
        forms: FormOperators<Exact>,
        data: HermitianData<Exact>,
        riem: RiemannianDirac<Exact>,
    }

    fn setup(model: &LieModel) -> Setup {
        let sl2 = Sl2Structure::<Exact>::new(model.structure().clone(), 0.0).unwrap();
        let forms = FormOperators::new(model, &sl2).unwrap();
        let data = HermitianData::new(model, &forms);
        let riem = RiemannianDirac::new(model, &sl2);
        Setup { sl2, forms, data, riem }
    }

    fn show(r: &Report) -> Vec<(String, String)> {
        r.failures().map(|c| (c.id.clone(), c.detail.clone().unwrap_or_default())).collect()
    }

    #[test]
    fn riemannian_on_models() {
        for m in [torus4(), kt(), kt_ak()] {
            let s = setup(&m);
            let r = s.riem.check(&s.sl2, &s.forms, 0.0);
            assert!(r.passed(), "{}: {:?}", m.name(), show(&r));
        }
    }

    #[test]
    fn almost_kaehler_dirac() {
        for m in [torus4(), kt_ak()] {
            let s = setup(&m);
            let r = s.riem.check_almost_kaehler(&s.sl2, &s.forms, 0.0);
            assert!(r.passed(), "{}: {:?}", m.name(), show(&r));
        }
        // [D̃, 𝓗] = −iD̃_c really needs dω = 0
        let s = setup(&kt());
        let r = s.riem.check_almost_kaehler(&s.sl2, &s.forms, 0.0);
        assert!(!r.find("akdi.d").unwrap().passed);
    }

    #[test]
    fn hermitian_dirac_on_models() {
        for m in [torus4(), kt(), kt_ak()] {
            let s = setup(&m);
            let kaehler = s.forms.is_almost_kaehler() && m.is_integrable();
            for (num, den) in [(-1, 1), (0, 1), (1, 1), (2, 1), (1, 3)] {
                let op = HermitianDirac::new(&m, &s.sl2, &s.data, num, den);
                let r = op.check(&s.sl2, &s.forms, &s.data, &s.riem, 0.0);
                assert!(r.passed(), "{} t={num}/{den}: {:?}", m.name(), show(&r));
                let r = op.check_bochner(&s.data, kaehler, 0.0);
                assert!(r.passed(), "{} t={num}/{den}: {:?}", m.name(), show(&r));
                if num == -1 {
                    let r = op.check_bismut(&s.sl2, &s.forms, kaehler, 0.0);
                    assert!(r.passed(), "{}: {:?}", m.name(), show(&r));
                }
            }
        }
    }

    #[test]
    fn torus_operators_coincide() {
        let m = torus4();
        let s = setup(&m);
        let b = HermitianDirac::new(&m, &s.sl2, &s.data, -1, 1);
        assert_eq!(b.d, s.riem.d);
        assert_eq!(b.small, s.riem.curly);
    }

    #[test]
    fn connection_is_a_clifford_derivation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in [kt(), kt_ak()] {
            let dim = m.dim();
            let s = setup(&m);
            let mut pairs = Vec::new();
            for _ in 0..100 {
                let mut f = || {
                    let c: Vec<Exact> = (0..1 << dim).map(|_| Exact::from_i64(rng.gen_range(-2..=2))).collect();
                    Multivector::from_coefficients(dim, &c)
                };
                pairs.push((f(), f()));
            }
            let b = HermitianDirac::new(&m, &s.sl2, &s.data, -1, 1);
            assert!(check_leibniz(&s.riem.levi_civita, &pairs, 0.0).passed);
            assert!(check_leibniz(&b.connection, &pairs, 0.0).passed);
        }
    }
}

