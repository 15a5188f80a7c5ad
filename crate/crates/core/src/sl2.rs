//! Clifford-side sl(2) operators, the exterior triple (L, Λ, H), the two
//! bigradings and the Hodge automorphism g.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::clifford::{ops, ComplexStructure, Multivector};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::{root_of_unity_8, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum Sl2Error {
    /// An operator expected to be diagonalizable with the given spectrum is not.
    NotDiagonalizable(&'static str),
    NotComplexStructure,
}

impl fmt::Display for Sl2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sl2Error::NotDiagonalizable(name) => {
                write!(f, "{name} is not diagonalizable over its expected integer spectrum")
            }
            Sl2Error::NotComplexStructure => f.write_str("J is not an orthogonal complex structure"),
        }
    }
}

/// Spectral projectors of `x` for the candidate eigenvalues, by Lagrange
/// interpolation. Fails unless they sum to the identity and `x P = λ P`.
pub fn spectral_projectors<S: Scalar>(
    x: &Matrix<S>,
    eigenvalues: &[S],
    name: &'static str,
    tol: f64,
) -> Result<Vec<Matrix<S>>, Sl2Error> {
    let size = x.rows();
    let id = Matrix::identity(size);
    let mut out = Vec::with_capacity(eigenvalues.len());
    for (a, la) in eigenvalues.iter().enumerate() {
        let mut p = id.clone();
        for (b, lb) in eigenvalues.iter().enumerate() {
            if a == b {
                continue;
            }
            let den = la.sub(lb).inv().map_err(|_| Sl2Error::NotDiagonalizable(name))?;
            let factor = x.sub(&Matrix::scalar(size, lb)).scale(&den);
            p = p.mul(&factor);
        }
        out.push(p);
    }
    let mut total = Matrix::zeros(size, size);
    for (p, l) in out.iter().zip(eigenvalues) {
        if !x.mul(p).sub(&p.scale(l)).is_zero_within(tol) {
            return Err(Sl2Error::NotDiagonalizable(name));
        }
        total = total.add(p);
    }
    if !total.sub(&id).is_zero_within(tol) {
        return Err(Sl2Error::NotDiagonalizable(name));
    }
    Ok(out)
}

/// `ε(v) = ½(v − iJv)` for the `k`-th generator.
pub fn epsilon<S: Scalar>(j: &ComplexStructure, k: usize) -> Multivector<S> {
    let dim = j.dim();
    let half = S::from_ratio(1, 2);
    let v = Multivector::<S>::generator(dim, k);
    let jv = Multivector::vector(dim, &j.image::<S>(k));
    v.sub(&jv.scale(&S::i())).unwrap().scale(&half)
}

/// `ε̄(v) = ½(v + iJv)`.
pub fn epsilon_bar<S: Scalar>(j: &ComplexStructure, k: usize) -> Multivector<S> {
    epsilon(j, k).conjugate_c()
}

/// `ω = ½ Σ_j v_j ∧ J v_j`, i.e. `ω(v, w) = ⟨Jv, w⟩`.
pub fn fundamental_form<S: Scalar>(j: &ComplexStructure) -> Multivector<S> {
    let dim = j.dim();
    let mut w = Multivector::zero(dim);
    for k in 0..dim {
        let t = Multivector::<S>::generator(dim, k).wedge(&Multivector::vector(dim, &j.image::<S>(k))).unwrap();
        w = w.add(&t).unwrap();
    }
    w.scale(&S::from_ratio(1, 2))
}

/// The operator algebra of one almost Hermitian vector space.
#[derive(Clone, Debug)]
pub struct Sl2Structure<S> {
    pub n: usize,
    pub dim: usize,
    pub structure: ComplexStructure,
    pub omega: Multivector<S>,
    /// `ω₀ = ω / 2i`.
    pub omega0: Multivector<S>,
    pub l: Matrix<S>,
    pub lbar: Matrix<S>,
    pub h: Matrix<S>,
    pub j_alg: Matrix<S>,
    pub j_alg_inv: Matrix<S>,
    pub j_der: Matrix<S>,
    /// `𝓙 = −i J_der`.
    pub curly_j: Matrix<S>,
    pub ext_l: Matrix<S>,
    pub ext_lambda: Matrix<S>,
    pub ext_h: Matrix<S>,
    pub alpha: Matrix<S>,
    pub transpose: Matrix<S>,
    /// `Π_p`, indexed by degree.
    pub degree: Vec<Matrix<S>>,
    /// `π_{p,q}` on forms.
    pub pi: BTreeMap<(usize, usize), Matrix<S>>,
    /// `P_{r,s}` onto `ℂl^{r,s}`.
    pub clifford_projector: BTreeMap<(i64, i64), Matrix<S>>,
    pub g: Matrix<S>,
    pub g_inv: Matrix<S>,
    pub tol: f64,
}

/// Bases of the two bigradings.
#[derive(Clone, Debug)]
pub struct BidegreeTable<S> {
    pub clifford: BTreeMap<(i64, i64), Vec<Vec<S>>>,
    pub forms: BTreeMap<(usize, usize), Vec<Vec<S>>>,
}

impl<S: Scalar> BidegreeTable<S> {
    pub fn clifford_dims(&self) -> BTreeMap<(i64, i64), usize> {
        self.clifford.iter().map(|(k, v)| (*k, v.len())).collect()
    }

    pub fn form_dims(&self) -> BTreeMap<(usize, usize), usize> {
        self.forms.iter().map(|(k, v)| (*k, v.len())).collect()
    }
}

impl<S: Scalar> Sl2Structure<S> {
    /// Standard structure `J e_k = e_{n+k}` on ℝ^{2n}.
    pub fn standard(n: usize, tol: f64) -> Result<Self, Sl2Error> {
        Self::new(ComplexStructure::standard(n), tol)
    }

    pub fn new(structure: ComplexStructure, tol: f64) -> Result<Self, Sl2Error> {
        if !structure.dim().is_multiple_of(2) || !structure.is_orthogonal_complex() {
            return Err(Sl2Error::NotComplexStructure);
        }
        let dim = structure.dim();
        let n = dim / 2;
        let size = 1usize << dim;

        let mut l = Matrix::zeros(size, size);
        let mut lbar = Matrix::zeros(size, size);
        for k in 0..dim {
            let e = epsilon::<S>(&structure, k);
            let eb = epsilon_bar::<S>(&structure, k);
            l = l.add(&ops::left_mul(&e).mul(&ops::right_mul(&eb)));
            lbar = lbar.add(&ops::left_mul(&eb).mul(&ops::right_mul(&e)));
        }
        let mhalf = S::from_ratio(-1, 2);
        let l = l.scale(&mhalf);
        let lbar = lbar.scale(&mhalf);
        let h = l.commutator(&lbar);

        let jm = structure.matrix::<S>();
        let j_alg = ops::algebra_extension(&jm);
        let j_alg_inv = ops::algebra_extension(&jm.transpose());
        let j_der = ops::derivation_extension(&jm);
        let curly_j = j_der.scale(&S::i().neg());

        let omega = fundamental_form::<S>(&structure);
        let omega0 = omega.scale(&S::from_i64(2).mul(&S::i()).inv().expect("2i ≠ 0"));

        let ext_l = ops::wedge_left(&omega);
        let ext_lambda = ext_l.adjoint();
        let degree: Vec<Matrix<S>> = (0..=dim as u32).map(|p| ops::degree_projector(dim, p)).collect();
        let mut ext_h = Matrix::zeros(size, size);
        for (p, proj) in degree.iter().enumerate() {
            ext_h = ext_h.add(&proj.scale(&S::from_i64(n as i64 - p as i64)));
        }

        // π_{p,q}: degree p+q and −J_der = i(p−q)
        let neg_jder = j_der.neg();
        let mut pi = BTreeMap::new();
        for k in 0..=dim {
            let pairs: Vec<(usize, usize)> = (0..=n).filter(|&p| k >= p && k - p <= n).map(|p| (p, k - p)).collect();
            let restricted = neg_jder.mul(&degree[k]);
            let mut eig: Vec<S> = pairs.iter().map(|&(p, q)| S::i().scale_i64(p as i64 - q as i64)).collect();
            // the complement of degree k sits at eigenvalue 0 of `restricted`
            let zero_in = pairs.iter().any(|&(p, q)| p == q);
            if !zero_in {
                eig.push(S::zero());
            }
            let projs = spectral_projectors(&restricted, &eig, "J_der on a fixed degree", tol)?;
            for (idx, &(p, q)) in pairs.iter().enumerate() {
                let proj = if p == q {
                    // eigenvalue 0 also collects the other degrees
                    projs[idx].mul(&degree[k])
                } else {
                    projs[idx].clone()
                };
                pi.insert((p, q), proj);
            }
        }

        let spectrum: Vec<S> = (-(n as i64)..=n as i64).map(S::from_i64).collect();
        let ph = spectral_projectors(&h, &spectrum, "𝓗", tol)?;
        let pj = spectral_projectors(&curly_j, &spectrum, "𝓙", tol)?;
        let mut clifford_projector = BTreeMap::new();
        for (ri, r) in (-(n as i64)..=n as i64).enumerate() {
            for (si, s) in (-(n as i64)..=n as i64).enumerate() {
                clifford_projector.insert((r, s), pj[ri].mul(&ph[si]));
            }
        }

        // g = exp(−πi/4 H) exp(−πi/4 𝓗), both spectral with ζ₈ = e^{−πi/4}
        let mut exp_h = Matrix::zeros(size, size);
        let mut exp_h_inv = Matrix::zeros(size, size);
        for (p, proj) in degree.iter().enumerate() {
            let e = n as i64 - p as i64;
            exp_h = exp_h.add(&proj.scale(&root_of_unity_8(e)));
            exp_h_inv = exp_h_inv.add(&proj.scale(&root_of_unity_8(-e)));
        }
        let mut exp_ch = Matrix::zeros(size, size);
        let mut exp_ch_inv = Matrix::zeros(size, size);
        for (si, s) in (-(n as i64)..=n as i64).enumerate() {
            exp_ch = exp_ch.add(&ph[si].scale(&root_of_unity_8(s)));
            exp_ch_inv = exp_ch_inv.add(&ph[si].scale(&root_of_unity_8(-s)));
        }
        let g = exp_h.mul(&exp_ch);
        let g_inv = exp_ch_inv.mul(&exp_h_inv);

        Ok(Sl2Structure {
            n,
            dim,
            structure,
            omega,
            omega0,
            l,
            lbar,
            h,
            j_alg,
            j_alg_inv,
            j_der,
            curly_j,
            ext_l,
            ext_lambda,
            ext_h,
            alpha: ops::antipodal(dim),
            transpose: ops::transpose(dim),
            degree,
            pi,
            clifford_projector,
            g,
            g_inv,
            tol,
        })
    }

    pub fn size(&self) -> usize {
        1 << self.dim
    }

    /// `T_c = J_alg⁻¹ T J_alg`.
    pub fn c_conj(&self, t: &Matrix<S>) -> Matrix<S> {
        self.j_alg_inv.mul(t).mul(&self.j_alg)
    }

    /// `Tᵗ = ᵗ T ᵗ`.
    pub fn t_conj(&self, t: &Matrix<S>) -> Matrix<S> {
        self.transpose.mul(t).mul(&self.transpose)
    }

    /// Projector onto `ℂl^{r,s}` (zero outside the range).
    pub fn p_rs(&self, r: i64, s: i64) -> Matrix<S> {
        self.clifford_projector
            .get(&(r, s))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.size(), self.size()))
    }

    pub fn pi_pq(&self, p: usize, q: usize) -> Matrix<S> {
        self.pi.get(&(p, q)).cloned().unwrap_or_else(|| Matrix::zeros(self.size(), self.size()))
    }

    pub fn bidegree_decompose(&self) -> BidegreeTable<S> {
        let clifford = self
            .clifford_projector
            .iter()
            .map(|(k, p)| (*k, p.reduce(self.tol).colspace))
            .collect();
        let forms = self.pi.iter().map(|(k, p)| (*k, p.reduce(self.tol).colspace)).collect();
        BidegreeTable { clifford, forms }
    }

    pub fn check_sl2(&self) -> Report {
        let tol = self.tol;
        let mut r = Report::new("sl2", &format!("n={}", self.n), S::NAME);
        r.push(Check::equal("sl2.L_Lbar", "[𝓛, 𝓛̄] = 𝓗", &self.l.commutator(&self.lbar), &self.h, tol));
        r.push(Check::equal("sl2.H_L", "[𝓗, 𝓛] = 2𝓛", &self.h.commutator(&self.l), &self.l.scale_ratio(2, 1), tol));
        r.push(Check::equal(
            "sl2.H_Lbar",
            "[𝓗, 𝓛̄] = −2𝓛̄",
            &self.h.commutator(&self.lbar),
            &self.lbar.scale_ratio(-2, 1),
            tol,
        ));
        r
    }

    /// Identities tying 𝓗, 𝓙, J_alg and J_der to ω₀ and to one another.
    pub fn check_structure(&self) -> Report {
        let tol = self.tol;
        let dim = self.dim;
        let mut r = Report::new("structure", &format!("n={}", self.n), S::NAME);
        let lw = ops::left_mul(&self.omega0);
        let rw = ops::right_mul(&self.omega0);
        r.push(Check::equal("structure.H_omega0", "𝓗φ = ω₀·φ + φ·ω₀", &self.h, &lw.add(&rw), tol));
        r.push(Check::equal("structure.J_omega0", "𝓙φ = ω₀·φ − φ·ω₀", &self.curly_j, &lw.sub(&rw), tol));
        for (id, anchor, x) in [
            ("structure.J_L", "[𝓙, 𝓛] = 0", &self.l),
            ("structure.J_Lbar", "[𝓙, 𝓛̄] = 0", &self.lbar),
            ("structure.J_H", "[𝓙, 𝓗] = 0", &self.h),
        ] {
            r.push(Check::matrix(id, anchor, &self.curly_j.commutator(x), tol));
        }
        // automorphism and derivation laws on generators: enough by induction
        let mut auto_res = Matrix::zeros(self.size(), self.size());
        let mut der_res = Matrix::zeros(self.size(), self.size());
        for k in 0..dim {
            let v = Multivector::<S>::generator(dim, k);
            let jv = Multivector::vector(dim, &self.structure.image::<S>(k));
            let lv = ops::left_mul(&v);
            let ljv = ops::left_mul(&jv);
            auto_res = auto_res.add(&self.j_alg.mul(&lv).sub(&ljv.mul(&self.j_alg)));
            der_res = der_res.add(&self.j_der.commutator(&lv).sub(&ljv));
        }
        r.push(Check::matrix("structure.J_alg_automorphism", "J_alg(v·φ) = Jv·J_alg(φ)", &auto_res, tol));
        r.push(Check::matrix("structure.J_der_derivation", "J_der(v·φ) = Jv·φ + v·J_der(φ)", &der_res, tol));
        r.push(Check::equal(
            "structure.J_alg_inverse",
            "J_alg⁻¹ J_alg = 1",
            &self.j_alg_inv.mul(&self.j_alg),
            &Matrix::identity(self.size()),
            tol,
        ));
        r.push(Check::equal("structure.L_adjoint", "𝓛* = 𝓛̄", &self.l.adjoint(), &self.lbar, tol));
        // J_alg is complex linear and sends ε ↦ iε, ε̄ ↦ −iε̄, so it fixes 𝓛;
        // the swap 𝓛 ↔ 𝓛̄ comes from complex conjugation (checked below)
        r.push(Check::equal("structure.L_c", "𝓛_c = 𝓛", &self.c_conj(&self.l), &self.l, tol));
        r.push(Check::equal("structure.H_c", "𝓗_c = 𝓗", &self.c_conj(&self.h), &self.h, tol));
        r.push(Check::equal("structure.J_c", "𝓙_c = 𝓙", &self.c_conj(&self.curly_j), &self.curly_j, tol));
        r.push(Check::equal("structure.J_t", "𝓙ᵗ = 𝓙", &self.t_conj(&self.curly_j), &self.curly_j, tol));
        r.push(Check::equal("structure.H_t", "𝓗ᵗ = −𝓗", &self.t_conj(&self.h), &self.h.neg(), tol));
        r.push(Check::equal("structure.L_t", "𝓛ᵗ = 𝓛̄", &self.t_conj(&self.l), &self.lbar, tol));
        r.push(Check::equal(
            "structure.L_conj",
            "c 𝓛 c = 𝓛̄",
            &ops::c_conjugate(&self.l),
            &self.lbar,
            tol,
        ));
        r
    }

    pub fn check_correspondences(&self) -> Report {
        let tol = self.tol;
        let i = S::i();
        let mut r = Report::new("correspondence", &format!("n={}", self.n), S::NAME);
        r.push(Check::equal(
            "corr.exterior_sl2",
            "[Λ, L] = H",
            &self.ext_lambda.commutator(&self.ext_l),
            &self.ext_h,
            tol,
        ));
        r.push(Check::equal(
            "corr.H",
            "𝓗 = i(Λ − L)",
            &self.h,
            &self.ext_lambda.sub(&self.ext_l).scale(&i),
            tol,
        ));
        r.push(Check::equal(
            "corr.L_plus_Lbar",
            "𝓛 + 𝓛̄ = αH",
            &self.l.add(&self.lbar),
            &self.alpha.mul(&self.ext_h),
            tol,
        ));
        r.push(Check::equal(
            "corr.L_minus_Lbar",
            "𝓛 − 𝓛̄ = −iα(Λ + L)",
            &self.l.sub(&self.lbar),
            &self.alpha.mul(&self.ext_lambda.add(&self.ext_l)).scale(&i.neg()),
            tol,
        ));
        r
    }

    pub fn check_hodge_automorphism(&self) -> Report {
        let tol = self.tol;
        let mut r = Report::new("hodge-aut", &format!("n={}", self.n), S::NAME);
        let conj = |x: &Matrix<S>| self.g.mul(x).mul(&self.g_inv);
        r.push(Check::equal(
            "g.inverse",
            "g g⁻¹ = 1",
            &self.g.mul(&self.g_inv),
            &Matrix::identity(self.size()),
            tol,
        ));
        r.push(Check::equal("g.H", "g H g⁻¹ = 𝓗", &conj(&self.ext_h), &self.h, tol));
        r.push(Check::equal("g.Lambda", "g Λ g⁻¹ = α𝓛", &conj(&self.ext_lambda), &self.alpha.mul(&self.l), tol));
        r.push(Check::equal("g.L", "g L g⁻¹ = α𝓛̄", &conj(&self.ext_l), &self.alpha.mul(&self.lbar), tol));
        r
    }

    /// Dimension table of both bigradings plus the g-transport of one onto the other.
    pub fn check_bigrading(&self) -> Report {
        let tol = self.tol;
        let n = self.n as i64;
        let mut r = Report::new("bigrading", &format!("n={}", self.n), S::NAME);
        let table = self.bidegree_decompose();
        let dims = table.clifford_dims();
        let total: usize = dims.values().sum();
        r.push(Check::flag(
            "bigrading.total",
            "Σ dim ℂl^{r,s} = 4^n",
            total == self.size(),
            Some(format!("{total}")),
        ));
        let stray: Vec<(i64, i64)> = dims
            .iter()
            .filter(|(&(rr, ss), &d)| d > 0 && ((rr + ss - n).rem_euclid(2) != 0 || rr.abs() > n || ss.abs() > n))
            .map(|(k, _)| *k)
            .collect();
        r.push(Check::flag(
            "bigrading.vanishing",
            "ℂl^{r,s} = 0 unless r + s ≡ n (mod 2)",
            stray.is_empty(),
            if stray.is_empty() { None } else { Some(format!("{stray:?}")) },
        ));
        let mut idem = Matrix::zeros(self.size(), self.size());
        let mut sum = Matrix::zeros(self.size(), self.size());
        let keys: Vec<_> = self.pi.keys().cloned().collect();
        for a in &keys {
            let pa = &self.pi[a];
            sum = sum.add(pa);
            idem = idem.add(&pa.mul(pa).sub(pa));
            for b in &keys {
                if a != b {
                    idem = idem.add(&pa.mul(&self.pi[b]));
                }
            }
        }
        r.push(Check::matrix("bigrading.pi_orthogonal", "π_{p,q} π_{p',q'} = δ π_{p,q}", &idem, tol));
        r.push(Check::equal("bigrading.pi_complete", "Σ π_{p,q} = 1", &sum, &Matrix::identity(self.size()), tol));
        let mut transport = Matrix::zeros(self.size(), self.size());
        let mut dim_ok = true;
        for (&(p, q), pi) in &self.pi {
            let (rr, ss) = (q as i64 - p as i64, n - p as i64 - q as i64);
            let moved = self.g_inv.mul(&self.p_rs(rr, ss)).mul(&self.g);
            transport = transport.add(&moved.sub(pi));
            let expect = binomial(self.n, p) * binomial(self.n, q);
            dim_ok &= table.forms[&(p, q)].len() == expect && dims.get(&(rr, ss)).copied() == Some(expect);
        }
        r.push(Check::matrix(
            "bigrading.g_transport",
            "g⁻¹ ℂl^{q−p, n−p−q} g = Λ^{p,q}",
            &transport,
            tol,
        ));
        r.push(Check::flag("bigrading.form_dims", "dim Λ^{p,q} = C(n,p) C(n,q)", dim_ok, None));
        r
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    #[test]
    fn l_of_one_for_n1() {
        let s = Sl2Structure::<Exact>::standard(1, 0.0).unwrap();
        // 𝓛(1) = −ε₁ε̄₁ = ½ − (i/2) e₁∧Je₁
        let col = s.l.column(0);
        let expect = [Exact::from_ratio(1, 2), Exact::zero(), Exact::zero(), Exact::from_ratio(-1, 2).mul(&Exact::i())];
        assert_eq!(col, expect.to_vec());
    }

    #[test]
    fn epsilon_relation() {
        let j = ComplexStructure::standard(2);
        let e = epsilon::<Exact>(&j, 0);
        let eb = epsilon_bar::<Exact>(&j, 0);
        let s = e.clifford_mul(&eb).unwrap().add(&eb.clifford_mul(&e).unwrap()).unwrap();
        assert_eq!(s, Multivector::scalar(4, Exact::from_i64(-1)));
    }

    #[test]
    fn n1_bigrading_is_four_lines() {
        let s = Sl2Structure::<Exact>::standard(1, 0.0).unwrap();
        let dims = s.bidegree_decompose().clifford_dims();
        for ((r, t), d) in dims {
            let expected = usize::from([(-1, 0), (1, 0), (0, 1), (0, -1)].contains(&(r, t)));
            assert_eq!(d, expected, "({r},{t})");
        }
    }

    #[test]
    fn exterior_lambda_of_omega_n2() {
        let s = Sl2Structure::<Exact>::standard(2, 0.0).unwrap();
        let w = s.omega.to_coefficients();
        let lw = s.ext_lambda.apply(&w);
        let mut expect = alloc::vec![Exact::zero(); 16];
        expect[0] = Exact::from_i64(2);
        assert_eq!(lw, expect);
    }

    #[test]
    fn j_der_kills_e_wedge_je() {
        let s = Sl2Structure::<Exact>::standard(1, 0.0).unwrap();
        assert!(s.j_der.column(3).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn g_of_one_n1() {
        // ω = e₁₂, 𝓗1 = −i e₁₂, 𝓗e₁₂ = i, so 1 = ½(1 − i e₁₂) + ½(1 + i e₁₂)
        // with 𝓗-eigenvalues +1, −1. Then H = +1 on degree 0, −1 on degree 2:
        // g1 = ½ζ(ζ + ζ⁻¹) + ½ζ⁻¹(−iζ + iζ⁻¹) e₁₂ = ½(1 − i) − ½(1 + i) e₁₂
        let s = Sl2Structure::<Exact>::standard(1, 0.0).unwrap();
        let g1 = s.g.column(0);
        let half = Exact::from_ratio(1, 2);
        let hi = half.mul(&Exact::i());
        assert_eq!(g1[0], half.sub(&hi));
        assert_eq!(g1[3], half.neg().sub(&hi));
        assert!(g1[1].is_zero() && g1[2].is_zero());
    }

    #[test]
    fn suites_pass_n1_n2() {
        for n in 1..=3 {
            let s = Sl2Structure::<Exact>::standard(n, 0.0).unwrap();
            for rep in [s.check_sl2(), s.check_structure(), s.check_correspondences(), s.check_hodge_automorphism(), s.check_bigrading()] {
                for c in &rep.checks {
                    assert!(c.passed, "n={n} {} {:?}", c.id, c.detail);
                }
            }
        }
    }
}
