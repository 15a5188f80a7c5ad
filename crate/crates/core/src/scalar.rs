//! Scalars: the exact field ℚ(i, √2) and a floating complex alternate.
//!
//! Every matrix entry in the crate is a [`Scalar`]. The exact backend is
//! closed under the eighth roots of unity, which is all the operator
//! exponentials below ever need.

use alloc::string::String;
use core::fmt;


use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Errors raised by scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    DivisionByZero,
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::DivisionByZero => f.write_str("division by zero"),
        }
    }
}

/// Field operations shared by the exact and floating backends.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// True when arithmetic is exact and equality is structural.
    const EXACT: bool;
    /// Backend name used in reports.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn i() -> Self;
    fn sqrt2() -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn from_i64(n: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn inv(&self) -> Result<Self, ScalarError>;

    /// Structural zero. In float mode only an exact `0.0` qualifies.
    fn is_zero(&self) -> bool;
    /// Zero up to `tol`; the exact backend ignores `tol`.
    fn is_negligible(&self, tol: f64) -> bool;
    /// Modulus as a float, for residual reporting and pivoting.
    fn modulus(&self) -> f64;
    fn to_complex(&self) -> Complex64;
    /// Nearest backend value to a float (exact backend: dyadic rationals).
    fn from_complex(z: Complex64) -> Self;

    fn add_assign(&mut self, rhs: &Self) {
        *self = Scalar::add(self, rhs);
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn scale_i64(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k))
    }

    fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Null-space / rank routine suited to the backend.
    fn kernel(rows: usize, cols: usize, data: &[Self], tol: f64) -> crate::linalg::Reduction<Self> {
        crate::linalg::default_reduction(rows, cols, data, tol)
    }
}

/// ζ₈^k with ζ₈ = (√2/2)(1 − i) = e^{−πi/4}. Period 8 in `k`.
pub fn root_of_unity_8<S: Scalar>(k: i64) -> S {
    let half = S::from_ratio(1, 2);
    let h = half.mul(&S::sqrt2());
    let hi = h.mul(&S::i());
    match k.rem_euclid(8) {
        0 => S::one(),
        1 => h.sub(&hi),
        2 => S::i().neg(),
        3 => h.neg().sub(&hi),
        4 => S::one().neg(),
        5 => h.neg().add(&hi),
        6 => S::i(),
        _ => h.add(&hi),
    }
}

/// Element a + b·i + c·√2 + d·i·√2 of ℚ(i, √2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exact {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

fn q0() -> BigRational {
    BigRational::zero()
}

// (x + y√2)(x' + y'√2) over ℚ, skipping zero parts.
fn qmul(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_zero() || y.is_zero() {
        q0()
    } else {
        x * y
    }
}

impl Exact {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Exact { a, b, c, d }
    }

    pub fn rational(a: BigRational) -> Self {
        Exact { a, b: q0(), c: q0(), d: q0() }
    }

    pub fn gaussian(a: BigRational, b: BigRational) -> Self {
        Exact { a, b, c: q0(), d: q0() }
    }

    /// True when the √2 parts vanish.
    pub fn is_gaussian(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.d.is_zero()
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Scalar for Exact {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn zero() -> Self {
        Exact::rational(q0())
    }
    fn one() -> Self {
        Exact::rational(BigRational::one())
    }
    fn i() -> Self {
        Exact::gaussian(q0(), BigRational::one())
    }
    fn sqrt2() -> Self {
        Exact::new(q0(), q0(), BigRational::one(), q0())
    }
    fn from_rational(r: &BigRational) -> Self {
        Exact::rational(r.clone())
    }
    fn from_i64(n: i64) -> Self {
        Exact::rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn add(&self, o: &Self) -> Self {
        Exact::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }
    fn sub(&self, o: &Self) -> Self {
        Exact::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_gaussian() && o.is_gaussian() {
            let a = qmul(&self.a, &o.a) - qmul(&self.b, &o.b);
            let b = qmul(&self.a, &o.b) + qmul(&self.b, &o.a);
            return Exact::gaussian(a, b);
        }
        // x = u + √2 w with u = a + bi, w = c + di
        // x x' = (u u' + 2 w w') + √2 (u w' + w u')
        let uu_re = qmul(&self.a, &o.a) - qmul(&self.b, &o.b);
        let uu_im = qmul(&self.a, &o.b) + qmul(&self.b, &o.a);
        let ww_re = qmul(&self.c, &o.c) - qmul(&self.d, &o.d);
        let ww_im = qmul(&self.c, &o.d) + qmul(&self.d, &o.c);
        let uw_re = qmul(&self.a, &o.c) - qmul(&self.b, &o.d) + qmul(&self.c, &o.a) - qmul(&self.d, &o.b);
        let uw_im = qmul(&self.a, &o.d) + qmul(&self.b, &o.c) + qmul(&self.c, &o.b) + qmul(&self.d, &o.a);
        let two = BigRational::from_integer(BigInt::from(2));
        Exact::new(uu_re + &two * ww_re, uu_im + &two * ww_im, uw_re, uw_im)
    }
    fn neg(&self) -> Self {
        Exact::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
    fn conj(&self) -> Self {
        Exact::new(self.a.clone(), -&self.b, self.c.clone(), -&self.d)
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // x = U + iV with U = a + c√2, V = b + d√2; 1/x = (U − iV)/(U² + V²)
        let two = BigRational::from_integer(BigInt::from(2));
        let p = &self.a * &self.a + &two * &self.c * &self.c + &self.b * &self.b + &two * &self.d * &self.d;
        let q = &two * (&self.a * &self.c + &self.b * &self.d);
        // 1/(p + q√2) = (p − q√2)/(p² − 2q²)
        let den = &p * &p - &two * &q * &q;
        let np = &p / &den;
        let nq = -(&q / &den);
        let u = Exact::new(self.a.clone(), -&self.b, self.c.clone(), -&self.d);
        let n = Exact::new(np, q0(), nq, q0());
        Ok(u.mul(&n))
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }
    fn from_complex(z: Complex64) -> Self {
        let q = |x: f64| BigRational::from_float(x).unwrap_or_else(q0);
        Exact::gaussian(q(z.re), q(z.im))
    }
    fn to_complex(&self) -> Complex64 {
        let r2 = core::f64::consts::SQRT_2;
        Complex64::new(
            ratio_to_f64(&self.a) + r2 * ratio_to_f64(&self.c),
            ratio_to_f64(&self.b) + r2 * ratio_to_f64(&self.d),
        )
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        alloc::format!("{}", r.numer())
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (r, unit) in [(&self.a, ""), (&self.b, "i"), (&self.c, "√2"), (&self.d, "i√2")] {
            if r.is_zero() {
                continue;
            }
            let neg = r.is_negative();
            let mag = r.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if unit.is_empty() {
                f.write_str(&fmt_rat(&mag))?;
            } else if mag.is_one() {
                f.write_str(unit)?;
            } else {
                write!(f, "{}{}", fmt_rat(&mag), unit)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl core::ops::Add for &Exact {
    type Output = Exact;
    fn add(self, rhs: &Exact) -> Exact {
        Scalar::add(self, rhs)
    }
}

impl core::ops::Sub for &Exact {
    type Output = Exact;
    fn sub(self, rhs: &Exact) -> Exact {
        Scalar::sub(self, rhs)
    }
}

impl core::ops::Mul for &Exact {
    type Output = Exact;
    fn mul(self, rhs: &Exact) -> Exact {
        Scalar::mul(self, rhs)
    }
}

impl core::ops::Neg for &Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Scalar::neg(self)
    }
}

/// Floating complex scalar used for cross-checks.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Float(pub Complex64);

impl Float {
    pub fn new(re: f64, im: f64) -> Self {
        Float(Complex64::new(re, im))
    }
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.0.re, self.0.im)
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Scalar for Float {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn zero() -> Self {
        Float::new(0.0, 0.0)
    }
    fn one() -> Self {
        Float::new(1.0, 0.0)
    }
    fn i() -> Self {
        Float::new(0.0, 1.0)
    }
    fn sqrt2() -> Self {
        Float::new(core::f64::consts::SQRT_2, 0.0)
    }
    fn from_rational(r: &BigRational) -> Self {
        Float::new(ratio_to_f64(r), 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Float::new(n as f64, 0.0)
    }

    fn add(&self, o: &Self) -> Self {
        Float(self.0 + o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Float(self.0 - o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Float(self.0 * o.0)
    }
    fn neg(&self) -> Self {
        Float(-self.0)
    }
    fn conj(&self) -> Self {
        Float(self.0.conj())
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Float(self.0.inv()))
    }

    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.0.norm() <= tol
    }
    fn modulus(&self) -> f64 {
        self.0.norm()
    }
    fn to_complex(&self) -> Complex64 {
        self.0
    }
    fn from_complex(z: Complex64) -> Self {
        Float(z)
    }

    fn kernel(rows: usize, cols: usize, data: &[Self], tol: f64) -> crate::linalg::Reduction<Self> {
        crate::linalg::svd_reduction(rows, cols, data, tol)
    }
}

/// Parses "p/q", "p" or "-p/q" into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}
