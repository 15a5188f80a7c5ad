//! Dense matrices over a [`Scalar`], plus rank and null-space routines.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = S::one();
        }
        m
    }

    pub fn scalar(n: usize, s: &S) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = s.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix whose `c`-th column is `f(c)`.
    pub fn from_columns_fn(rows: usize, cols: usize, mut f: impl FnMut(usize) -> Vec<S>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for c in 0..cols {
            let col = f(c);
            debug_assert_eq!(col.len(), rows);
            for (r, v) in col.into_iter().enumerate() {
                m.data[r * cols + c] = v;
            }
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        Self::from_columns_fn(rows, columns.len(), |c| columns[c].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &S) {
        let e = &mut self.data[r * self.cols + c];
        e.add_assign(v);
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        self.map(|x| if x.is_zero() { S::zero() } else { x.mul(s) })
    }

    pub fn scale_ratio(&self, num: i64, den: i64) -> Self {
        self.scale(&S::from_ratio(num, den))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let support: Vec<Vec<usize>> = (0..o.rows)
            .map(|k| (0..o.cols).filter(|&j| !o.get(k, j).is_zero()).collect())
            .collect();
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() || support[k].is_empty() {
                    continue;
                }
                for &j in &support[k] {
                    let p = a.mul(o.get(k, j));
                    out.data[i * o.cols + j].add_assign(&p);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "shape mismatch in apply");
        let mut out = vec![S::zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, k);
                if !a.is_zero() {
                    o.add_assign(&a.mul(x));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols, "shape mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows, "shape mismatch in hstack");
        Self::from_fn(self.rows, self.cols + o.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                o.get(r, c - self.cols).clone()
            }
        })
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().filter(|x| !x.is_zero()).map(|x| x.modulus()).fold(0.0, f64::max)
    }

    /// Zero up to `tol` (structural zero in exact mode).
    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    /// First entry whose modulus exceeds `tol`, or any nonzero in exact mode.
    pub fn first_nonzero(&self, tol: f64) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|x| !x.is_negligible(tol))
            .map(|k| (k / self.cols, k % self.cols))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn reduce(&self, tol: f64) -> Reduction<S> {
        S::kernel(self.rows, self.cols, &self.data, tol)
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.reduce(tol).rank
    }

    pub fn kernel(&self, tol: f64) -> Vec<Vec<S>> {
        self.reduce(tol).kernel
    }

    /// Solves `self · x = I` when square and invertible.
    pub fn inverse(&self, tol: f64) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let red = aug.reduce(tol);
        if red.pivots.len() < n || red.pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        red.rref.map(|r| Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }
}

/// Result of a rank computation: kernel and column-space bases.
#[derive(Clone, Debug)]
pub struct Reduction<S> {
    pub rank: usize,
    /// Pivot columns (exact backend only; empty in float mode).
    pub pivots: Vec<usize>,
    pub kernel: Vec<Vec<S>>,
    pub colspace: Vec<Vec<S>>,
    /// Reduced row echelon form when computed by elimination.
    pub rref: Option<Matrix<S>>,
}

/// Gauss–Jordan elimination over the field. Pivots on the first nonzero
/// entry in exact mode and on the largest modulus otherwise.
pub fn default_reduction<S: Scalar>(rows: usize, cols: usize, data: &[S], tol: f64) -> Reduction<S> {
    let mut m = Matrix { rows, cols, data: data.to_vec() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pick = if S::EXACT {
            (r..rows).find(|&i| !m.get(i, c).is_zero())
        } else {
            (r..rows)
                .filter(|&i| !m.get(i, c).is_negligible(tol))
                .max_by(|&x, &y| m.get(x, c).modulus().total_cmp(&m.get(y, c).modulus()))
        };
        let Some(p) = pick else { continue };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.get(r, c).inv().expect("pivot is nonzero");
        for j in c..cols {
            let v = m.get(r, j);
            if !v.is_zero() {
                let nv = v.mul(&inv);
                m.set(r, j, nv);
            }
        }
        let prow: Vec<(usize, S)> = (c..cols)
            .filter(|&j| !m.get(r, j).is_zero())
            .map(|j| (j, m.get(r, j).clone()))
            .collect();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for (j, v) in &prow {
                let nv = m.get(i, *j).sub(&f.mul(v));
                m.set(i, *j, nv);
            }
            if !S::EXACT {
                m.set(i, c, S::zero());
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = m.get(k, f).neg();
            }
            v
        })
        .collect();
    let colspace = pivots
        .iter()
        .map(|&p| (0..rows).map(|i| data[i * cols + p].clone()).collect())
        .collect();
    Reduction { rank: pivots.len(), pivots, kernel, colspace, rref: Some(m) }
}

/// One-sided Jacobi SVD. Singular values at most `tol · max(1, σ_max)`
/// count as zero.
pub fn svd_reduction<S: Scalar>(rows: usize, cols: usize, data: &[S], tol: f64) -> Reduction<S> {
    use num_complex::Complex64;
    let mut a: Vec<Vec<Complex64>> =
        (0..cols).map(|c| (0..rows).map(|r| data[r * cols + c].to_complex()).collect()).collect();
    let mut v: Vec<Vec<Complex64>> = (0..cols)
        .map(|c| (0..cols).map(|r| Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect();
    let norm2 = |x: &[Complex64]| x.iter().map(|z| z.norm_sqr()).sum::<f64>();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = norm2(&a[p]);
                let beta = norm2(&a[q]);
                let gamma: Complex64 = a[p].iter().zip(&a[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= 1e-15 * libm::sqrt(alpha * beta) || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for mat in [&mut a, &mut v] {
                    let (lo, hi) = mat.split_at_mut(q);
                    let (xp, xq) = (&mut lo[p], &mut hi[0]);
                    for (x, y) in xp.iter_mut().zip(xq.iter_mut()) {
                        let yq = *y * phase.conj();
                        let nx = *x * c - yq * s;
                        let ny = *x * s + yq * c;
                        *x = nx;
                        *y = ny;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma: Vec<f64> = a.iter().map(|col| libm::sqrt(norm2(col))).collect();
    let smax = sigma.iter().cloned().fold(0.0, f64::max);
    let thr = tol * smax.max(1.0);
    let to_s = S::from_complex;
    let mut kernel = Vec::new();
    let mut colspace = Vec::new();
    for (j, s) in sigma.iter().enumerate() {
        if *s > thr {
            colspace.push(a[j].iter().map(|z| to_s(*z / *s)).collect());
        } else {
            kernel.push(v[j].iter().map(|z| to_s(*z)).collect());
        }
    }
    Reduction { rank: colspace.len(), pivots: Vec::new(), kernel, colspace, rref: None }
}

/// Basis for the span of `vectors` (exact pivots or SVD in float mode).
pub fn span_basis<S: Scalar>(dim: usize, vectors: &[Vec<S>], tol: f64) -> Vec<Vec<S>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    Matrix::from_columns(dim, vectors).reduce(tol).colspace
}

/// Dimension of the span of `vectors`.
pub fn span_dim<S: Scalar>(dim: usize, vectors: &[Vec<S>], tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(dim, vectors).rank(tol)
}

/// Whether every vector of `sub` lies in the span of `space`.
pub fn contained_in<S: Scalar>(dim: usize, sub: &[Vec<S>], space: &[Vec<S>], tol: f64) -> bool {
    let base = span_dim(dim, space, tol);
    let mut all = space.to_vec();
    all.extend(sub.iter().cloned());
    span_dim(dim, &all, tol) == base
}

/// Basis of `{ x ∈ span(basis) : m x = 0 }`.
pub fn kernel_within<S: Scalar>(m: &Matrix<S>, basis: &[Vec<S>], tol: f64) -> Vec<Vec<S>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let w = Matrix::from_columns(m.cols(), basis);
    let mw = m.mul(&w);
    mw.kernel(tol).iter().map(|c| w.apply(c)).collect()
}

/// Basis of the intersection of two subspaces.
pub fn intersect<S: Scalar>(dim: usize, a: &[Vec<S>], b: &[Vec<S>], tol: f64) -> Vec<Vec<S>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ma = Matrix::from_columns(dim, a);
    let mb = Matrix::from_columns(dim, b);
    let stacked = ma.hstack(&mb.neg());
    let ker = stacked.kernel(tol);
    let vecs: Vec<Vec<S>> = ker.iter().map(|k| ma.apply(&k[..a.len()])).collect();
    span_basis(dim, &vecs, tol)
}
