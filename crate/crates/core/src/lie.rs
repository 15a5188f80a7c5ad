//! Left-invariant almost Hermitian structures on Lie groups and the
//! operators they induce on invariant complex forms.
//!
//! A model is an orthonormal coframe `e^1..e^{2n}` with structure constants
//! `[v_i, v_j] = Σ_k c^k_{ij} v_k`, so that `d e^k = −Σ_{i<j} c^k_{ij} e^i∧e^j`,
//! together with an orthogonal `J`. The metric identification turns the
//! coframe into the frame, which is how forms and Clifford elements share
//! one blade basis.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::clifford::{ops, ComplexStructure, Multivector};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::sl2::Sl2Structure;

pub type Rat = BigRational;

#[derive(Clone, Debug, PartialEq)]
pub enum ModelError {
    OddDimension(usize),
    Shape { what: &'static str, expected: usize, found: usize },
    IndexOutOfRange { generator: usize, index: usize },
    /// A wedge term `e^a∧e^a` in `d e^k`.
    RepeatedFactor { generator: usize, index: usize },
    NotAntisymmetric { k: usize, i: usize, j: usize },
    /// Jacobi fails on `(v_i, v_j, v_l)`, equivalently `d² ≠ 0`.
    Jacobi { i: usize, j: usize, l: usize },
    /// `tr ad(v_j) ≠ 0`.
    NotUnimodular { generator: usize },
    NotComplexStructure,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::OddDimension(m) => write!(f, "coframe has odd length {m}"),
            ModelError::Shape { what, expected, found } => {
                write!(f, "{what}: expected {expected} entries, found {found}")
            }
            ModelError::IndexOutOfRange { generator, index } => {
                write!(f, "d of generator {generator} refers to unknown generator {index}")
            }
            ModelError::RepeatedFactor { generator, index } => {
                write!(f, "d of generator {generator} contains the degenerate term e{index}∧e{index}")
            }
            ModelError::NotAntisymmetric { k, i, j } => {
                write!(f, "structure constants not antisymmetric at c^{k}_{{{i}{j}}}")
            }
            ModelError::Jacobi { i, j, l } => {
                write!(f, "Jacobi identity fails on generators ({i}, {j}, {l}); d² ≠ 0")
            }
            ModelError::NotUnimodular { generator } => {
                write!(f, "not unimodular: tr ad(v_{generator}) ≠ 0")
            }
            ModelError::NotComplexStructure => f.write_str("J is not orthogonal with J² = −1"),
        }
    }
}

/// Validated Lie algebra with orthonormal coframe and orthogonal `J`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieModel {
    name: String,
    labels: Vec<String>,
    /// `c[k][i][j] = c^k_{ij}`.
    c: Vec<Vec<Vec<Rat>>>,
    structure: ComplexStructure,
}

impl LieModel {
    /// From `d e^k = Σ coeff · e^a∧e^b`, one list of `(a, b, coeff)` per generator.
    pub fn from_differential(
        name: &str,
        labels: Vec<String>,
        d: &[Vec<(usize, usize, Rat)>],
        structure: ComplexStructure,
    ) -> Result<Self, ModelError> {
        let m = labels.len();
        if d.len() != m {
            return Err(ModelError::Shape { what: "differential", expected: m, found: d.len() });
        }
        let mut c = vec![vec![vec![Rat::zero(); m]; m]; m];
        for (k, terms) in d.iter().enumerate() {
            for (a, b, coeff) in terms {
                for idx in [*a, *b] {
                    if idx >= m {
                        return Err(ModelError::IndexOutOfRange { generator: k, index: idx });
                    }
                }
                if a == b {
                    return Err(ModelError::RepeatedFactor { generator: k, index: *a });
                }
                c[k][*a][*b] -= coeff;
                c[k][*b][*a] += coeff;
            }
        }
        Self::from_brackets(name, labels, c, structure)
    }

    pub fn from_brackets(
        name: &str,
        labels: Vec<String>,
        c: Vec<Vec<Vec<Rat>>>,
        structure: ComplexStructure,
    ) -> Result<Self, ModelError> {
        let m = labels.len();
        if !m.is_multiple_of(2) {
            return Err(ModelError::OddDimension(m));
        }
        if structure.dim() != m {
            return Err(ModelError::Shape { what: "J", expected: m, found: structure.dim() });
        }
        if c.len() != m || c.iter().any(|r| r.len() != m || r.iter().any(|s| s.len() != m)) {
            return Err(ModelError::Shape { what: "structure constants", expected: m, found: c.len() });
        }
        let model = LieModel { name: name.to_string(), labels, c, structure };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<(), ModelError> {
        let m = self.dim();
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    if self.c[k][i][j] != -self.c[k][j][i].clone() {
                        return Err(ModelError::NotAntisymmetric { k, i, j });
                    }
                }
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                for l in j + 1..m {
                    let a = self.bracket(&self.bracket(&unit(m, i), &unit(m, j)), &unit(m, l));
                    let b = self.bracket(&self.bracket(&unit(m, j), &unit(m, l)), &unit(m, i));
                    let e = self.bracket(&self.bracket(&unit(m, l), &unit(m, i)), &unit(m, j));
                    if (0..m).any(|k| !(a[k].clone() + &b[k] + &e[k]).is_zero()) {
                        return Err(ModelError::Jacobi { i, j, l });
                    }
                }
            }
        }
        for j in 0..m {
            let tr = (0..m).fold(Rat::zero(), |acc, k| acc + &self.c[k][j][k]);
            if !tr.is_zero() {
                return Err(ModelError::NotUnimodular { generator: j });
            }
        }
        if !self.structure.is_orthogonal_complex() {
            return Err(ModelError::NotComplexStructure);
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn n(&self) -> usize {
        self.dim() / 2
    }

    pub fn structure(&self) -> &ComplexStructure {
        &self.structure
    }

    /// `c^k_{ij}`.
    pub fn structure_constant(&self, k: usize, i: usize, j: usize) -> &Rat {
        &self.c[k][i][j]
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Bracket of invariant vector fields given in frame coordinates.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let m = self.dim();
        let mut out = vec![Rat::zero(); m];
        for i in 0..m {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[k][i][j].is_zero() {
                        *o += &xy * &self.c[k][i][j];
                    }
                }
            }
        }
        out
    }

    pub fn apply_j(&self, x: &[Rat]) -> Vec<Rat> {
        let m = self.dim();
        (0..m).map(|a| (0..m).fold(Rat::zero(), |acc, b| acc + self.structure.entry(a, b) * &x[b])).collect()
    }

    /// `N(v_a, v_b) = Σ_k N[k][a][b] v_k` with
    /// `N(X,Y) = ¼([JX,JY] − J[JX,Y] − J[X,JY] − [X,Y])`.
    pub fn nijenhuis(&self) -> Vec<Vec<Vec<Rat>>> {
        let m = self.dim();
        let quarter = Rat::new(1.into(), 4.into());
        let mut n = vec![vec![vec![Rat::zero(); m]; m]; m];
        for a in 0..m {
            for b in 0..m {
                let (x, y) = (unit(m, a), unit(m, b));
                let (jx, jy) = (self.apply_j(&x), self.apply_j(&y));
                let t1 = self.bracket(&jx, &jy);
                let t2 = self.apply_j(&self.bracket(&jx, &y));
                let t3 = self.apply_j(&self.bracket(&x, &jy));
                let t4 = self.bracket(&x, &y);
                for k in 0..m {
                    n[k][a][b] = (t1[k].clone() - &t2[k] - &t3[k] - &t4[k]) * &quarter;
                }
            }
        }
        n
    }

    pub fn is_integrable(&self) -> bool {
        self.nijenhuis().iter().flatten().flatten().all(Zero::is_zero)
    }

    /// `d e^k = −Σ_{i<j} c^k_{ij} e^i∧e^j`.
    pub fn differential_of<S: Scalar>(&self, k: usize) -> Multivector<S> {
        let m = self.dim();
        let mut out = Multivector::zero(m);
        for i in 0..m {
            for j in i + 1..m {
                let c = &self.c[k][i][j];
                if !c.is_zero() {
                    out.add_term((1 << i) | (1 << j), &S::from_rational(c).neg());
                }
            }
        }
        out
    }
}

fn unit(m: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); m];
    v[i] = Rat::from_integer(1.into());
    v
}

/// `φ(X, Y, Z)` for a 3-form, as the scalar part of `Z⌟Y⌟X⌟φ`.
pub fn eval3<S: Scalar>(phi: &Multivector<S>, x: &[S], y: &[S], z: &[S]) -> S {
    let dim = phi.dim();
    let c = |v: &[S], f: &Multivector<S>| Multivector::contract(&Multivector::vector(dim, v), f).unwrap();
    c(z, &c(y, &c(x, phi))).coefficient(0)
}

/// `φ(X, Y)` for a 2-form.
pub fn eval2<S: Scalar>(phi: &Multivector<S>, x: &[S], y: &[S]) -> S {
    let dim = phi.dim();
    let c = |v: &[S], f: &Multivector<S>| Multivector::contract(&Multivector::vector(dim, v), f).unwrap();
    c(y, &c(x, phi)).coefficient(0)
}

/// `Σ_{j,k} f(j,k) v_j∧v_k` over all ordered pairs.
pub fn two_form<S: Scalar>(dim: usize, mut f: impl FnMut(usize, usize) -> S) -> Multivector<S> {
    let mut out = Multivector::zero(dim);
    for j in 0..dim {
        for k in 0..dim {
            if j == k {
                continue;
            }
            let v = f(j, k);
            let (b, s) = if j < k { ((1 << j) | (1 << k), v) } else { ((1 << j) | (1 << k), v.neg()) };
            out.add_term(b, &s);
        }
    }
    out
}

pub fn unit_vector<S: Scalar>(m: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); m];
    v[i] = S::one();
    v
}

/// Part of `x` shifting the form bidegree by `(dp, dq)`.
pub fn bidegree_component<S: Scalar>(sl2: &Sl2Structure<S>, x: &Matrix<S>, dp: i64, dq: i64) -> Matrix<S> {
    let size = sl2.size();
    let mut out = Matrix::zeros(size, size);
    for (&(p, q), src) in &sl2.pi {
        let (tp, tq) = (p as i64 + dp, q as i64 + dq);
        if tp < 0 || tq < 0 {
            continue;
        }
        if let Some(dst) = sl2.pi.get(&(tp as usize, tq as usize)) {
            out = out.add(&dst.mul(x).mul(src));
        }
    }
    out
}

/// Projector onto `E⁺ = Re(Λ^{2,1} ⊕ Λ^{1,2})` inside 3-forms.
pub fn e_plus<S: Scalar>(sl2: &Sl2Structure<S>) -> Matrix<S> {
    sl2.pi_pq(2, 1).add(&sl2.pi_pq(1, 2))
}

/// Projector onto `E⁻ = Re(Λ^{3,0} ⊕ Λ^{0,3})`.
pub fn e_minus<S: Scalar>(sl2: &Sl2Structure<S>) -> Matrix<S> {
    sl2.pi_pq(3, 0).add(&sl2.pi_pq(0, 3))
}

/// `ρ_Γ(φ) = Σ_j (v_j⌟Γ)∧(v_j⌟φ)`.
///
/// This sign is the one for which `iρ_∂(ω) = ∂ω`, `[L, ∂ − iρ_∂] = 0` and
/// `½Σ d_cω⁺(v_j,Y,v_k) v_j∧v_k = −ρ⁺_c(Y)` hold.
pub fn rho_frame<S: Scalar>(gamma: &Multivector<S>) -> Matrix<S> {
    let dim = gamma.dim();
    let size = 1usize << dim;
    let mut out = Matrix::zeros(size, size);
    for j in 0..dim {
        let v = Multivector::generator(dim, j);
        let vg = Multivector::contract(&v, gamma).unwrap();
        out = out.add(&ops::wedge_left(&vg).mul(&ops::contract_left(&v)));
    }
    out
}

/// `ρ_Γ(φ_1∧…∧φ_k) = Σ_j (−1)^{j−1} φ_1∧…∧(φ_j⌟Γ)∧…∧φ_k`.
pub fn rho_derivation<S: Scalar>(gamma: &Multivector<S>) -> Matrix<S> {
    let dim = gamma.dim();
    let images: Vec<Multivector<S>> =
        (0..dim).map(|j| Multivector::contract(&Multivector::generator(dim, j), gamma).unwrap()).collect();
    ops::graded_derivation(&images)
}

/// Operators on invariant complex forms of one model.
#[derive(Clone, Debug)]
pub struct FormOperators<S> {
    pub d: Matrix<S>,
    pub del: Matrix<S>,
    pub delbar: Matrix<S>,
    pub mu: Matrix<S>,
    pub mubar: Matrix<S>,
    pub omega: Multivector<S>,
    pub domega: Multivector<S>,
    pub domega_plus: Multivector<S>,
    pub domega_minus: Multivector<S>,
    pub del_omega: Multivector<S>,
    pub delbar_omega: Multivector<S>,
    pub dc_omega: Multivector<S>,
    /// Lee form `θ = Λ(dω)`.
    pub theta: Multivector<S>,
    pub rho_plus: Matrix<S>,
    pub rho_del: Matrix<S>,
    pub rho_delbar: Matrix<S>,
    pub lambda_plus: Matrix<S>,
    pub lambda_del: Matrix<S>,
    pub lambda_delbar: Matrix<S>,
    pub tau_plus: Matrix<S>,
    pub tau_del: Matrix<S>,
    pub tau_delbar: Matrix<S>,
    pub eps: Matrix<S>,
    pub delbar_hat: Matrix<S>,
    pub delta: Matrix<S>,
    pub delta_bar: Matrix<S>,
    pub e_theta: Matrix<S>,
    pub i_theta: Matrix<S>,
    /// Derivation extension of `e^k ↦ e^k ∘ N`.
    pub nijenhuis_dual: Matrix<S>,
    /// `J` acting on covectors is `−J` under the metric identification:
    /// these are `Λ(−J)`, its inverse, and the derivation of `−J`.
    pub form_j_alg: Matrix<S>,
    pub form_j_alg_inv: Matrix<S>,
    pub form_j_der: Matrix<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureMismatch;

impl<S: Scalar> FormOperators<S> {
    pub fn new(model: &LieModel, sl2: &Sl2Structure<S>) -> Result<Self, StructureMismatch> {
        if sl2.structure != *model.structure() {
            return Err(StructureMismatch);
        }
        let m = model.dim();
        let images: Vec<Multivector<S>> = (0..m).map(|k| model.differential_of(k)).collect();
        let d = ops::graded_derivation(&images);
        let del = bidegree_component(sl2, &d, 1, 0);
        let delbar = bidegree_component(sl2, &d, 0, 1);
        let mu = bidegree_component(sl2, &d, 2, -1);
        let mubar = bidegree_component(sl2, &d, -1, 2);

        let omega = sl2.omega.clone();
        let apply = |x: &Matrix<S>, v: &Multivector<S>| Multivector::from_coefficients(m, &x.apply(&v.to_coefficients()));
        let domega = apply(&d, &omega);
        let domega_plus = apply(&e_plus(sl2), &domega);
        let domega_minus = apply(&e_minus(sl2), &domega);
        let del_omega = apply(&sl2.pi_pq(2, 1), &domega);
        let delbar_omega = apply(&sl2.pi_pq(1, 2), &domega);
        let dc_omega = apply(&sl2.j_alg_inv.mul(&d).mul(&sl2.j_alg), &omega).scale(&S::one().neg());
        let theta = apply(&sl2.ext_lambda, &domega);

        let rho_plus = rho_frame(&domega_plus);
        let rho_del = rho_frame(&del_omega);
        let rho_delbar = rho_frame(&delbar_omega);
        let lambda_plus = ops::wedge_left(&domega_plus);
        let lambda_del = ops::wedge_left(&del_omega);
        let lambda_delbar = ops::wedge_left(&delbar_omega);
        let tau = |lam: &Matrix<S>| sl2.ext_lambda.commutator(lam);
        let tau_plus = tau(&lambda_plus);
        let tau_del = tau(&lambda_del);
        let tau_delbar = tau(&lambda_delbar);

        let i = S::i();
        let eps = del.sub(&rho_del.scale(&i));
        let delbar_hat = delbar.add(&rho_delbar.scale(&i));
        let delta = del.add(&mubar);
        let delta_bar = delbar.add(&mu);

        let nij = model.nijenhuis();
        let dual_images: Vec<Multivector<S>> = (0..m)
            .map(|k| {
                let mut f = Multivector::zero(m);
                for a in 0..m {
                    for b in a + 1..m {
                        f.add_term((1 << a) | (1 << b), &S::from_rational(&nij[k][a][b]));
                    }
                }
                f
            })
            .collect();

        Ok(FormOperators {
            e_theta: ops::wedge_left(&theta),
            i_theta: ops::contract_left(&theta),
            nijenhuis_dual: ops::graded_derivation(&dual_images),
            form_j_alg: sl2.j_alg_inv.clone(),
            form_j_alg_inv: sl2.j_alg.clone(),
            form_j_der: sl2.j_der.neg(),
            d,
            del,
            delbar,
            mu,
            mubar,
            omega,
            domega,
            domega_plus,
            domega_minus,
            del_omega,
            delbar_omega,
            dc_omega,
            theta,
            rho_plus,
            rho_del,
            rho_delbar,
            lambda_plus,
            lambda_del,
            lambda_delbar,
            tau_plus,
            tau_del,
            tau_delbar,
            eps,
            delbar_hat,
            delta,
            delta_bar,
        })
    }

    pub fn is_almost_kaehler(&self) -> bool {
        self.domega.is_zero()
    }

    pub fn is_balanced(&self) -> bool {
        self.theta.is_zero()
    }

    /// Conjugation by the dual `J_alg`: `(J^∨_alg)⁻¹ X J^∨_alg`.
    pub fn form_conj(&self, x: &Matrix<S>) -> Matrix<S> {
        self.form_j_alg_inv.mul(x).mul(&self.form_j_alg)
    }

    /// `d² = 0`, the splitting of `d`, and the quadratic relations among
    /// `∂, ∂̄, μ, μ̄` together with their adjoints.
    pub fn check_differential(&self, tol: f64) -> Report {
        let mut r = Report::new("differential", "", "");
        let (d, p, pb, m, mb) = (&self.d, &self.del, &self.delbar, &self.mu, &self.mubar);
        r.push(Check::matrix("d.squared", "d² = 0", &d.mul(d), tol));
        let sum = p.add(pb).add(m).add(mb);
        r.push(Check::equal("d.split", "d = ∂ + ∂̄ + μ + μ̄", d, &sum, tol));
        let rel = [
            ("d2.mu_mu", "μ² = 0", m.mul(m)),
            ("d2.mu_del", "μ∂ + ∂μ = 0", m.anticommutator(p)),
            ("d2.mu_delbar", "μ∂̄ + ∂̄μ + ∂² = 0", m.anticommutator(pb).add(&p.mul(p))),
            (
                "d2.mixed",
                "μμ̄ + μ̄μ + ∂∂̄ + ∂̄∂ = 0",
                m.anticommutator(mb).add(&p.anticommutator(pb)),
            ),
            ("d2.mubar_del", "μ̄∂ + ∂μ̄ + ∂̄² = 0", mb.anticommutator(p).add(&pb.mul(pb))),
            ("d2.mubar_delbar", "μ̄∂̄ + ∂̄μ̄ = 0", mb.anticommutator(pb)),
            ("d2.mubar_mubar", "μ̄² = 0", mb.mul(mb)),
        ];
        for (id, anchor, x) in &rel {
            r.push(Check::matrix(id, anchor, x, tol));
        }
        for (id, anchor, x) in &rel {
            r.push(Check::matrix(&format!("{id}.adjoint"), &format!("adjoint of {anchor}"), &x.adjoint(), tol));
        }
        r.push(Check::equal("d.delta_split", "d = δ + δ̄", d, &self.delta.add(&self.delta_bar), tol));
        r
    }

    /// Bidegree tags, `ρ`, `λ`, `τ`, `θ` and the Nijenhuis duality.
    pub fn check_zeroth_order(&self, model: &LieModel, sl2: &Sl2Structure<S>, tol: f64) -> Report {
        let mut r = Report::new("zeroth-order", "", "");
        let i = S::i();
        let m = model.dim();
        let pure = |x: &Matrix<S>, dp: i64, dq: i64| x.sub(&bidegree_component(sl2, x, dp, dq));
        for (id, anchor, x, dp, dq) in [
            ("pure.rho_del", "ρ_∂ has bidegree (1,0)", &self.rho_del, 1, 0),
            ("pure.rho_delbar", "ρ̄_∂ has bidegree (0,1)", &self.rho_delbar, 0, 1),
            ("pure.tau_del", "τ_∂ has bidegree (1,0)", &self.tau_del, 1, 0),
            ("pure.tau_delbar", "τ̄_∂ has bidegree (0,1)", &self.tau_delbar, 0, 1),
            ("pure.eps", "ε has bidegree (1,0)", &self.eps, 1, 0),
            ("pure.delbar_hat", "∂̄̂ has bidegree (0,1)", &self.delbar_hat, 0, 1),
        ] {
            r.push(Check::matrix(id, anchor, &pure(x, dp, dq), tol));
        }
        let omega = self.omega.to_coefficients();
        let omega_11 = sl2.pi_pq(1, 1).apply(&omega);
        r.push(Check::scalars(
            "omega.type",
            "ω is real of type (1,1)",
            &omega
                .iter()
                .zip(&omega_11)
                .map(|(a, b)| a.sub(b))
                .chain(omega.iter().map(|a| a.sub(&a.conj())))
                .collect::<Vec<_>>(),
            tol,
        ));
        let split = self.domega.sub(&self.domega_plus).unwrap().sub(&self.domega_minus).unwrap();
        r.push(Check::scalars("domega.split", "dω = dω⁺ + dω⁻", &split.to_coefficients(), tol));
        let plus = self.domega_plus.sub(&self.del_omega).unwrap().sub(&self.delbar_omega).unwrap();
        r.push(Check::scalars("domega.plus", "dω⁺ = ∂ω + ∂̄ω", &plus.to_coefficients(), tol));
        let theta_plus = sl2.ext_lambda.apply(&self.domega_plus.to_coefficients());
        r.push(Check::scalars(
            "theta.plus",
            "θ = Λ(dω) = Λ(dω⁺)",
            &theta_plus.iter().zip(self.theta.to_coefficients()).map(|(a, b)| a.sub(&b)).collect::<Vec<_>>(),
            tol,
        ));

        r.push(Check::equal(
            "rho.formulas",
            "ρ⁺ derivation formula = Σ (v_j⌟dω⁺)∧(v_j⌟φ)",
            &rho_derivation(&self.domega_plus),
            &self.rho_plus,
            tol,
        ));
        r.push(Check::equal(
            "rho.del_formulas",
            "ρ_∂ derivation formula = frame formula",
            &rho_derivation(&self.del_omega),
            &self.rho_del,
            tol,
        ));
        r.push(Check::equal("rho.conj", "ρ̄_∂ = c ρ_∂ c", &self.rho_delbar, &ops::c_conjugate(&self.rho_del), tol));
        r.push(Check::equal("rho.sum", "ρ⁺ = ρ_∂ + ρ̄_∂", &self.rho_plus, &self.rho_del.add(&self.rho_delbar), tol));
        r.push(Check::equal("tau.sum", "τ⁺ = τ_∂ + τ̄_∂", &self.tau_plus, &self.tau_del.add(&self.tau_delbar), tol));
        r.push(Check::equal(
            "rho.jconj",
            "J_alg⁻¹ ρ_∂ J_alg = −iρ_∂",
            &self.form_conj(&self.rho_del),
            &self.rho_del.scale(&i.neg()),
            tol,
        ));
        r.push(Check::equal(
            "rhobar.jconj",
            "J_alg⁻¹ ρ̄_∂ J_alg = iρ̄_∂",
            &self.form_conj(&self.rho_delbar),
            &self.rho_delbar.scale(&i),
            tol,
        ));
        r.push(Check::equal(
            "rho.plus_c",
            "ρ⁺_c = i(ρ̄_∂ − ρ_∂)",
            &self.form_conj(&self.rho_plus),
            &self.rho_delbar.sub(&self.rho_del).scale(&i),
            tol,
        ));
        let irho_omega = self.rho_del.apply(&omega).iter().map(|x| x.mul(&i)).collect::<Vec<_>>();
        r.push(Check::scalars(
            "rho.at_omega",
            "iρ_∂(ω) = ∂ω",
            &irho_omega.iter().zip(self.del_omega.to_coefficients()).map(|(a, b)| a.sub(&b)).collect::<Vec<_>>(),
            tol,
        ));
        let rho_zero = self.rho_del.is_zero_within(tol);
        let del_omega_zero = self.del_omega.to_coefficients().iter().all(|x| x.is_negligible(tol));
        let delbar_omega_zero = self.delbar_omega.to_coefficients().iter().all(|x| x.is_negligible(tol));
        r.push(Check::flag(
            "rho.vanishing",
            "ρ_∂ = 0 ⇔ ∂ω = ∂̄ω = 0",
            rho_zero == (del_omega_zero && delbar_omega_zero),
            Some(format!("ρ_∂ = 0: {rho_zero}, ∂ω = 0: {del_omega_zero}, ∂̄ω = 0: {delbar_omega_zero}")),
        ));
        let lam1 = self.lambda_plus.apply(&Multivector::<S>::one(m).to_coefficients());
        r.push(Check::scalars(
            "lambda.at_one",
            "λ⁺(1) = dω⁺",
            &lam1.iter().zip(self.domega_plus.to_coefficients()).map(|(a, b)| a.sub(&b)).collect::<Vec<_>>(),
            tol,
        ));

        // ½ Σ_{j,k} dω⁺(v_j, JY, v_k) v_j∧v_k = τ⁺(Y) − θ∧Y on the coframe
        let mut resid = Vec::new();
        for y in 0..m {
            let jy = sl2.structure.image::<S>(y);
            let lhs = two_form(m, |j, k| {
                eval3(&self.domega_plus, &unit_vector(m, j), &jy, &unit_vector(m, k)).mul(&S::from_ratio(1, 2))
            });
            let ycoef = Multivector::<S>::generator(m, y).to_coefficients();
            let tau_y = Multivector::from_coefficients(m, &self.tau_plus.apply(&ycoef));
            let rhs = tau_y.sub(&self.theta.wedge(&Multivector::generator(m, y)).unwrap()).unwrap();
            resid.extend(lhs.sub(&rhs).unwrap().to_coefficients());
        }
        r.push(Check::scalars("tau.on_one_forms", "½Σ dω⁺(v_j,JY,v_k) v_j∧v_k = τ⁺(Y) − θ∧Y", &resid, tol));

        r.push(Check::equal(
            "nijenhuis.dual",
            "μ + μ̄ = N^∨",
            &self.mu.add(&self.mubar),
            &self.nijenhuis_dual,
            tol,
        ));
        r
    }

    /// The almost Hermitian identities for `ε` and `∂̄̂`.
    pub fn check_almost_hermitian(&self, sl2: &Sl2Structure<S>, tol: f64) -> Report {
        let mut r = Report::new("almost-hermitian-forms", "", "");
        let (lam, l) = (&sl2.ext_lambda, &sl2.ext_l);
        let i = S::i();
        let (e, h) = (&self.eps, &self.delbar_hat);
        let (es, hs) = (e.adjoint(), h.adjoint());
        r.push(Check::equal("ah.lambda_hbar", "[Λ, ∂̄̂] = −iε*", &lam.commutator(h), &es.scale(&i.neg()), tol));
        r.push(Check::equal("ah.l_eps_star", "[L, ε*] = i∂̄̂", &l.commutator(&es), &h.scale(&i), tol));
        r.push(Check::equal("ah.lambda_eps", "[Λ, ε] = i∂̄̂*", &lam.commutator(e), &hs.scale(&i), tol));
        r.push(Check::equal("ah.l_hbar_star", "[L, ∂̄̂*] = −iε", &l.commutator(&hs), &e.scale(&i.neg()), tol));
        r.push(Check::matrix("ah.lambda_eps_star", "[Λ, ε*] = 0", &lam.commutator(&es), tol));
        r.push(Check::matrix("ah.lambda_hbar_star", "[Λ, ∂̄̂*] = 0", &lam.commutator(&hs), tol));
        r.push(Check::matrix("ah.l_eps", "[L, ε] = 0", &l.commutator(e), tol));
        r.push(Check::matrix("ah.l_hbar", "[L, ∂̄̂] = 0", &l.commutator(h), tol));
        r
    }

    /// Generalized Kähler identities; meaningful only when `dω = 0`.
    pub fn check_almost_kaehler(&self, sl2: &Sl2Structure<S>, tol: f64) -> Report {
        let mut r = Report::new("almost-kaehler-forms", "", "");
        let (lam, l) = (&sl2.ext_lambda, &sl2.ext_l);
        let i = S::i();
        let (a, b) = (&self.delta, &self.delta_bar);
        let (as_, bs) = (a.adjoint(), b.adjoint());
        r.push(Check::equal("ak.lambda_deltabar", "[Λ, δ̄] = −iδ*", &lam.commutator(b), &as_.scale(&i.neg()), tol));
        r.push(Check::equal("ak.l_delta_star", "[L, δ*] = iδ̄", &l.commutator(&as_), &b.scale(&i), tol));
        r.push(Check::equal("ak.lambda_delta", "[Λ, δ] = iδ̄*", &lam.commutator(a), &bs.scale(&i), tol));
        r.push(Check::equal("ak.l_deltabar_star", "[L, δ̄*] = −iδ", &l.commutator(&bs), &a.scale(&i.neg()), tol));
        r.push(Check::matrix("ak.lambda_delta_star", "[Λ, δ*] = 0", &lam.commutator(&as_), tol));
        r.push(Check::matrix("ak.lambda_deltabar_star", "[Λ, δ̄*] = 0", &lam.commutator(&bs), tol));
        r.push(Check::matrix("ak.l_delta", "[L, δ] = 0", &l.commutator(a), tol));
        r.push(Check::matrix("ak.l_deltabar", "[L, δ̄] = 0", &l.commutator(b), tol));
        r.push(Check::equal("ak.laplacians", "Δ_δ = Δ_δ̄", &laplacian(a), &laplacian(b), tol));
        r
    }

    /// Bidegree bookkeeping of `μ` and `∂` under the dual `J` action.
    pub fn check_j_weights(&self, tol: f64) -> Report {
        let mut r = Report::new("j-weights", "", "");
        let i = S::i();
        let jd = &self.form_j_der;
        r.push(Check::equal("remark.mu_jder", "[μ, J_der] = −3iμ", &self.mu.commutator(jd), &self.mu.scale(&i.scale_i64(-3)), tol));
        r.push(Check::equal("remark.mu_jalg", "J_alg⁻¹ μ J_alg = iμ", &self.form_conj(&self.mu), &self.mu.scale(&i), tol));
        r.push(Check::equal("remark.del_jder", "[∂, J_der] = −i∂", &self.del.commutator(jd), &self.del.scale(&i.neg()), tol));
        r.push(Check::equal("remark.del_jalg", "J_alg⁻¹ ∂ J_alg = −i∂", &self.form_conj(&self.del), &self.del.scale(&i.neg()), tol));
        r
    }
}

/// `Δ_T = TT* + T*T`.
pub fn laplacian<S: Scalar>(t: &Matrix<S>) -> Matrix<S> {
    let ts = t.adjoint();
    t.mul(&ts).add(&ts.mul(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;
    use alloc::string::ToString;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// Signed permutation `J v_from = sign · v_to`.
    fn j_from(m: usize, pairs: &[(usize, usize, i64)]) -> ComplexStructure {
        let mut j = vec![vec![r(0); m]; m];
        for &(from, to, s) in pairs {
            j[to][from] = r(s);
        }
        ComplexStructure::from_matrix(j)
    }

    fn kt() -> LieModel {
        // x, y, z, w with dz = x∧y; Jy = x, Jz = w
        let j = j_from(4, &[(1, 0, 1), (0, 1, -1), (2, 3, 1), (3, 2, -1)]);
        let d = vec![vec![], vec![], vec![(0, 1, r(1))], vec![]];
        LieModel::from_differential("kt", labels(&["x", "y", "z", "w"]), &d, j).unwrap()
    }

    #[test]
    fn kt_brackets_and_nijenhuis() {
        let m = kt();
        assert_eq!(*m.structure_constant(2, 0, 1), r(-1));
        assert!(m.is_integrable());
        assert!(!m.is_abelian());
    }

    #[test]
    fn rejects_bad_models() {
        let j = ComplexStructure::standard(1);
        let d = vec![vec![], vec![(0, 1, r(-1))]];
        let e = LieModel::from_differential("affine", labels(&["a", "b"]), &d, j.clone()).unwrap_err();
        assert_eq!(e, ModelError::NotUnimodular { generator: 0 });
        let d = vec![vec![(0, 0, r(1))], vec![]];
        assert!(matches!(
            LieModel::from_differential("bad", labels(&["a", "b"]), &d, j.clone()),
            Err(ModelError::RepeatedFactor { .. })
        ));
        let d = vec![vec![(0, 5, r(1))], vec![]];
        assert!(matches!(
            LieModel::from_differential("bad", labels(&["a", "b"]), &d, j),
            Err(ModelError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn rejects_jacobi_failure() {
        // [v1,v2] = v3 and [v3,v1] = v1
        let j = ComplexStructure::standard(2);
        let d = vec![vec![(0, 2, r(1))], vec![], vec![(0, 1, r(-1))], vec![]];
        let e = LieModel::from_differential("bad", labels(&["a", "b", "c", "e"]), &d, j).unwrap_err();
        assert!(matches!(e, ModelError::Jacobi { .. }));
    }

    #[test]
    fn kt_forms() {
        let m = kt();
        let sl2 = Sl2Structure::<Exact>::new(m.structure().clone(), 0.0).unwrap();
        let f = FormOperators::new(&m, &sl2).unwrap();
        // dz = x∧y
        let z = Multivector::<Exact>::generator(4, 2).to_coefficients();
        let dz = Multivector::from_coefficients(4, &f.d.apply(&z));
        assert_eq!(dz, Multivector::blade(4, 0b0011, Exact::one()));
        // dω = x∧y∧w
        assert_eq!(f.domega, Multivector::blade(4, 0b1011, Exact::one()));
        assert!(f.mu.is_zero_within(0.0) && f.mubar.is_zero_within(0.0));
        // θ_k = ⟨ω∧e^k, dω⟩ with ω = −x∧y + z∧w
        assert_eq!(f.theta, Multivector::blade(4, 0b1000, Exact::from_i64(-1)));
        assert!(!f.is_almost_kaehler());
        assert!(!f.is_balanced());
        assert!(f.check_differential(0.0).passed());
        let z = f.check_zeroth_order(&m, &sl2, 0.0);
        assert!(z.passed(), "{:?}", z.failures().collect::<Vec<_>>());
        assert!(f.check_almost_hermitian(&sl2, 0.0).passed());
        assert!(f.check_j_weights(0.0).passed());
    }

    #[test]
    fn catalog_form_suites() {
        use crate::test_models;
        for m in [test_models::torus4(), test_models::kt_ak(), test_models::iwasawa(1), test_models::iwasawa(-1)] {
            let sl2 = Sl2Structure::<Exact>::new(m.structure().clone(), 0.0).unwrap();
            let f = FormOperators::new(&m, &sl2).unwrap();
            let mut r = f.check_differential(0.0);
            r.extend(f.check_zeroth_order(&m, &sl2, 0.0));
            r.extend(f.check_almost_hermitian(&sl2, 0.0));
            r.extend(f.check_j_weights(0.0));
            if f.is_almost_kaehler() {
                r.extend(f.check_almost_kaehler(&sl2, 0.0));
            }
            assert!(r.passed(), "{}: {:?}", m.name(), r.failures().map(|c| &c.id).collect::<Vec<_>>());
        }
    }

    #[test]
    fn kt_ak_is_almost_kaehler_not_integrable() {
        let m = crate::test_models::kt_ak();
        assert!(!m.is_integrable());
        let sl2 = Sl2Structure::<Exact>::new(m.structure().clone(), 0.0).unwrap();
        let f = FormOperators::new(&m, &sl2).unwrap();
        assert!(f.is_almost_kaehler());
        assert!(!f.mu.is_zero_within(0.0));
        assert!(f.rho_del.is_zero_within(0.0));
    }

    #[test]
    fn torus_is_flat() {
        let m = crate::test_models::torus4();
        let sl2 = Sl2Structure::<Exact>::new(m.structure().clone(), 0.0).unwrap();
        let f = FormOperators::new(&m, &sl2).unwrap();
        assert!(f.d.is_zero_within(0.0) && f.rho_plus.is_zero_within(0.0) && f.tau_plus.is_zero_within(0.0));
        assert!(f.is_balanced());
    }
}
