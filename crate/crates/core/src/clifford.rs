//! Real Clifford algebras `C(p,q)` and complex Clifford algebras `CC(n)` as
//! coefficient arrays over the `2^n` basis blades.
//!
//! A blade is a bitmask: bit `a` set means generator `v^a` is a factor, and
//! factors are always written in increasing index order. Generators
//! `0..p` square to `+e`, generators `p..n` square to `-e`. Complex algebras
//! use the Euclidean basis (`p = n`, `q = 0`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_GENERATORS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Signature> {
        let n = p + q;
        if n == 0 || n > MAX_GENERATORS {
            return Err(Error::InvalidSignature { p, q });
        }
        Ok(Signature { p, q })
    }

    /// The Euclidean signature `(n, 0)` used for the complex algebra `CC(n)`.
    pub fn euclidean(n: usize) -> Result<Signature> {
        Signature::new(n, 0)
    }

    pub fn p(self) -> usize {
        self.p
    }

    pub fn q(self) -> usize {
        self.q
    }

    pub fn n(self) -> usize {
        self.p + self.q
    }

    pub fn blade_count(self) -> usize {
        1 << self.n()
    }

    /// `η^{aa}`: `+1` for the first `p` generators and `-1` for the rest.
    pub fn eta(self, a: usize) -> f64 {
        if a < self.p {
            1.0
        } else {
            -1.0
        }
    }

    /// `η(v, w)` for vectors given by their components.
    pub fn inner(self, v: &[f64], w: &[f64]) -> f64 {
        (0..self.n()).map(|a| self.eta(a) * v[a] * w[a]).sum()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarField {
    Real,
    Complex,
}

/// Sign of `blade(a) * blade(b)` from reordering the factors, before the
/// generator squares are applied.
pub fn reorder_sign(a: u32, b: u32) -> f64 {
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `blade(a) * blade(b) = sign * blade(a ^ b)`.
pub fn blade_product(sig: Signature, a: u32, b: u32) -> (f64, u32) {
    let mut sign = reorder_sign(a, b);
    let common = a & b;
    for k in sig.p()..sig.n() {
        if common & (1 << k) != 0 {
            sign = -sign;
        }
    }
    (sign, a ^ b)
}

pub fn grade(mask: u32) -> usize {
    mask.count_ones() as usize
}

/// An element of `C(p,q)` or of `CC(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiVector {
    sig: Signature,
    field: ScalarField,
    coeffs: Vec<Complex64>,
}

impl MultiVector {
    pub fn zero(sig: Signature, field: ScalarField) -> MultiVector {
        MultiVector { sig, field, coeffs: vec![Complex64::new(0.0, 0.0); sig.blade_count()] }
    }

    pub fn scalar(sig: Signature, field: ScalarField, c: f64) -> MultiVector {
        MultiVector::blade(sig, field, 0, Complex64::new(c, 0.0))
    }

    /// The unit `e`.
    pub fn one(sig: Signature, field: ScalarField) -> MultiVector {
        MultiVector::scalar(sig, field, 1.0)
    }

    /// `coeff * blade(mask)`. A complex coefficient in a real algebra is a
    /// programming error and panics.
    pub fn blade(sig: Signature, field: ScalarField, mask: u32, coeff: Complex64) -> MultiVector {
        assert!((mask as usize) < sig.blade_count(), "blade mask out of range");
        assert!(
            field == ScalarField::Complex || coeff.im == 0.0,
            "complex coefficient in a real algebra"
        );
        let mut m = MultiVector::zero(sig, field);
        m.coeffs[mask as usize] = coeff;
        m
    }

    /// The generator `v^a` of a real algebra.
    pub fn generator(sig: Signature, a: usize) -> MultiVector {
        MultiVector::blade(sig, ScalarField::Real, 1 << a, Complex64::new(1.0, 0.0))
    }

    /// `Σ_a v_a v^a` in a real algebra.
    pub fn vector(sig: Signature, components: &[f64]) -> MultiVector {
        assert_eq!(components.len(), sig.n(), "vector length must equal the generator count");
        let mut m = MultiVector::zero(sig, ScalarField::Real);
        for (a, &c) in components.iter().enumerate() {
            m.coeffs[1 << a] = Complex64::new(c, 0.0);
        }
        m
    }

    pub fn from_coeffs(sig: Signature, field: ScalarField, coeffs: Vec<Complex64>) -> Result<MultiVector> {
        if coeffs.len() != sig.blade_count() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients given for an algebra with {} blades",
                coeffs.len(),
                sig.blade_count()
            )));
        }
        if field == ScalarField::Real && coeffs.iter().any(|c| c.im != 0.0) {
            return Err(Error::InvalidArgument("complex coefficient in a real algebra".into()));
        }
        Ok(MultiVector { sig, field, coeffs })
    }

    pub fn from_real(sig: Signature, coeffs: &[f64]) -> Result<MultiVector> {
        MultiVector::from_coeffs(
            sig,
            ScalarField::Real,
            coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        )
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: u32) -> Complex64 {
        self.coeffs[mask as usize]
    }

    pub fn real_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.re).collect()
    }

    fn same_algebra(&self, other: &MultiVector) -> Result<()> {
        if self.sig != other.sig || self.field != other.field {
            return Err(Error::AlgebraMismatch {
                left: self.algebra_name(),
                right: other.algebra_name(),
            });
        }
        Ok(())
    }

    pub fn algebra_name(&self) -> String {
        match self.field {
            ScalarField::Real => format!("C{}", self.sig),
            ScalarField::Complex => format!("CC({})", self.sig.n()),
        }
    }

    /// The Clifford product.
    pub fn geometric_product(&self, other: &MultiVector) -> Result<MultiVector> {
        self.same_algebra(other)?;
        let mut out = MultiVector::zero(self.sig, self.field);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.re == 0.0 && ca.im == 0.0 {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.re == 0.0 && cb.im == 0.0 {
                    continue;
                }
                let (s, m) = blade_product(self.sig, a as u32, b as u32);
                out.coeffs[m as usize] += ca * cb * s;
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &MultiVector) -> Result<MultiVector> {
        self.same_algebra(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    fn zip(&self, other: &MultiVector, f: impl Fn(Complex64, Complex64) -> Complex64) -> MultiVector {
        MultiVector {
            sig: self.sig,
            field: self.field,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> MultiVector {
        self.map(|(_, x)| x * c)
    }

    /// Multiplication by a complex number; only meaningful in `CC(n)`.
    pub fn scale_complex(&self, c: Complex64) -> MultiVector {
        assert!(self.field == ScalarField::Complex || c.im == 0.0, "complex scale of a real element");
        self.map(|(_, x)| x * c)
    }

    fn map(&self, f: impl Fn((u32, Complex64)) -> Complex64) -> MultiVector {
        MultiVector {
            sig: self.sig,
            field: self.field,
            coeffs: self.coeffs.iter().enumerate().map(|(m, &c)| f((m as u32, c))).collect(),
        }
    }

    /// Reversal of the order of factors in every blade.
    pub fn reverse(&self) -> MultiVector {
        self.map(|(m, c)| {
            let k = grade(m);
            if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
    }

    /// The automorphism `v ↦ -v` on generators.
    pub fn grade_involution(&self) -> MultiVector {
        self.map(|(m, c)| if grade(m).is_multiple_of(2) { c } else { -c })
    }

    pub fn grade_part(&self, k: usize) -> MultiVector {
        let zero = Complex64::new(0.0, 0.0);
        self.map(|(m, c)| if grade(m) == k { c } else { zero })
    }

    /// Largest coefficient magnitude outside grade 1.
    pub fn off_vector_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(m, _)| grade(*m as u32) != 1)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    /// Grade-1 coefficients `v_a` (real parts).
    pub fn vector_part(&self) -> Vec<f64> {
        (0..self.sig.n()).map(|a| self.coeffs[1 << a].re).collect()
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(m, c)| grade(m as u32).is_multiple_of(2) || c.norm() == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient difference; `INFINITY` across different algebras.
    pub fn max_abs_diff(&self, other: &MultiVector) -> f64 {
        if self.same_algebra(other).is_err() {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &MultiVector {
    type Output = MultiVector;
    fn add(self, rhs: &MultiVector) -> MultiVector {
        self.try_add(rhs).expect("adding elements of different algebras")
    }
}

impl Sub for &MultiVector {
    type Output = MultiVector;
    fn sub(self, rhs: &MultiVector) -> MultiVector {
        self.same_algebra(rhs).expect("subtracting elements of different algebras");
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &MultiVector {
    type Output = MultiVector;
    fn neg(self) -> MultiVector {
        self.scale(-1.0)
    }
}

/// Panicking shorthand for [`MultiVector::geometric_product`].
impl Mul for &MultiVector {
    type Output = MultiVector;
    fn mul(self, rhs: &MultiVector) -> MultiVector {
        self.geometric_product(rhs).expect("multiplying elements of different algebras")
    }
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if self.field == ScalarField::Real {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            if m == 0 {
                write!(f, "e")?;
            }
            for a in 0..self.sig.n() {
                if m & (1 << a) != 0 {
                    write!(f, "v{a}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Embeds a real `C(p,q)` element into `CC(p+q)`, sending `v^a` to `e^a`
/// for `a < p` and to `i e^a` otherwise.
pub fn complexify(a: &MultiVector) -> Result<MultiVector> {
    if a.field != ScalarField::Real {
        return Err(Error::InvalidArgument("complexify expects a real algebra element".into()));
    }
    let sig = a.sig;
    let target = Signature::euclidean(sig.n())?;
    let timelike_mask: u32 = ((1u32 << sig.n()) - 1) & !((1u32 << sig.p()) - 1);
    let coeffs = a
        .coeffs
        .iter()
        .enumerate()
        .map(|(m, c)| {
            let k = (m as u32 & timelike_mask).count_ones();
            c * Complex64::i().powu(k)
        })
        .map(|c| Complex64::new(round_unit(c.re), round_unit(c.im)))
        .collect();
    MultiVector::from_coeffs(target, ScalarField::Complex, coeffs)
}

/// `powu` on `i` is exact up to signed zeros; normalise `-0.0` to `0.0`.
fn round_unit(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Real,
    RealPair,
    Complex,
    ComplexPair,
    Quaternion,
    QuaternionPair,
}

/// A matrix algebra `Mat(d, K)` or `Mat(d, K) ⊕ Mat(d, K)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraClass {
    pub kind: MatrixKind,
    pub d: usize,
}

impl AlgebraClass {
    /// Dimension over the reals.
    pub fn real_dimension(self) -> usize {
        let per = match self.kind {
            MatrixKind::Real => 1,
            MatrixKind::RealPair | MatrixKind::Complex => 2,
            MatrixKind::ComplexPair | MatrixKind::Quaternion => 4,
            MatrixKind::QuaternionPair => 8,
        };
        per * self.d * self.d
    }

    /// Dimension of the centre over the reals.
    pub fn center_real_dimension(self) -> usize {
        match self.kind {
            MatrixKind::Real | MatrixKind::Quaternion => 1,
            MatrixKind::RealPair | MatrixKind::Complex | MatrixKind::QuaternionPair => 2,
            MatrixKind::ComplexPair => 4,
        }
    }
}

impl fmt::Display for AlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d;
        match self.kind {
            MatrixKind::Real => write!(f, "Mat({d},R)"),
            MatrixKind::RealPair => write!(f, "Mat({d},R)+Mat({d},R)"),
            MatrixKind::Complex => write!(f, "Mat({d},C)"),
            MatrixKind::ComplexPair => write!(f, "Mat({d},C)+Mat({d},C)"),
            MatrixKind::Quaternion => write!(f, "Mat({d},H)"),
            MatrixKind::QuaternionPair => write!(f, "Mat({d},H)+Mat({d},H)"),
        }
    }
}

/// The matrix algebra isomorphic to `C(p,q)` (real) or `CC(p+q)` (complex).
pub fn classify(sig: Signature, field: ScalarField) -> AlgebraClass {
    let n = sig.n();
    if field == ScalarField::Complex {
        return if n.is_multiple_of(2) {
            AlgebraClass { kind: MatrixKind::Complex, d: 1 << (n / 2) }
        } else {
            AlgebraClass { kind: MatrixKind::ComplexPair, d: 1 << ((n - 1) / 2) }
        };
    }
    let r = (sig.p() as i64 - sig.q() as i64).rem_euclid(8);
    let (kind, d) = match r {
        0 | 2 => (MatrixKind::Real, 1 << (n / 2)),
        1 => (MatrixKind::RealPair, 1 << ((n - 1) / 2)),
        3 | 7 => (MatrixKind::Complex, 1 << ((n - 1) / 2)),
        4 | 6 => (MatrixKind::Quaternion, 1 << ((n - 2) / 2)),
        _ => (MatrixKind::QuaternionPair, 1 << ((n - 3) / 2)),
    };
    AlgebraClass { kind, d }
}

/// Dimension over the scalar field of the centre, found as the null space of
/// the linear system `z q - q z = 0` over every basis blade `q`.
pub fn center_dimension(sig: Signature, field: ScalarField) -> Result<usize> {
    let n = sig.n();
    if n > 6 {
        return Err(Error::InvalidArgument(format!(
            "center_dimension is limited to n <= 6 (got n = {n})"
        )));
    }
    let sig = match field {
        ScalarField::Real => sig,
        ScalarField::Complex => Signature::euclidean(n)?,
    };
    let count = sig.blade_count();
    // The structure constants are real in the chosen bases, so the complex
    // null space has the same dimension as the real one.
    let mut m = DMatrix::<f64>::zeros(count * count, count);
    for q in 0..count as u32 {
        for z in 0..count as u32 {
            let (s1, out) = blade_product(sig, z, q);
            let (s2, _) = blade_product(sig, q, z);
            m[(q as usize * count + out as usize, z as usize)] += s1 - s2;
        }
    }
    Ok(count - matrix_rank(&m))
}

pub(crate) fn matrix_rank(m: &DMatrix<f64>) -> usize {
    let svd = m.clone().svd(false, false);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let tol = smax * 1e-10 * m.nrows().max(m.ncols()) as f64;
    svd.singular_values.iter().filter(|&&s| s > tol).count()
}
