//! Matrix representations of Clifford algebras, γ-matrices, Pin and Spin
//! versors, the adjoint action onto the pseudo-orthogonal group, Lorentz
//! generators and spinor spaces as minimal left ideals.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::clifford::{blade_product, grade, matrix_rank, MultiVector, ScalarField, Signature};
use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// `σ¹, σ², σ³`.
pub fn pauli() -> [CMatrix; 3] {
    [
        CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    ]
}

/// The 2×2 block matrix `[[a, b], [c, d]]`.
pub fn block2(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let mut m = CMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(a);
    m.view_mut((0, n), (n, n)).copy_from(b);
    m.view_mut((n, 0), (n, n)).copy_from(c);
    m.view_mut((n, n), (n, n)).copy_from(d);
    m
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Images of the generators of a Clifford algebra as square complex matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRep {
    name: &'static str,
    /// `η^{aa}`, the square of each generator image.
    eta: Vec<f64>,
    field: ScalarField,
    gens: Vec<CMatrix>,
}

impl MatrixRep {
    pub fn new(name: &'static str, eta: Vec<f64>, field: ScalarField, gens: Vec<CMatrix>) -> Result<MatrixRep> {
        if gens.is_empty() || gens.len() != eta.len() {
            return Err(Error::InvalidArgument("one metric sign per generator image is required".into()));
        }
        let d = gens[0].nrows();
        if gens.iter().any(|g| g.nrows() != d || g.ncols() != d) {
            return Err(Error::InvalidArgument("generator images must be square of equal size".into()));
        }
        Ok(MatrixRep { name, eta, field, gens })
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn dim(&self) -> usize {
        self.gens[0].nrows()
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_images(&self) -> &[CMatrix] {
        &self.gens
    }

    pub fn gen(&self, a: usize) -> &CMatrix {
        &self.gens[a]
    }

    /// `η^{ab}` realised by the generator images (diagonal entries).
    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    /// The signature counting `+` and `-` squares, when the signs appear in
    /// the canonical order (`+` first).
    pub fn signature(&self) -> Option<Signature> {
        let p = self.eta.iter().filter(|&&s| s > 0.0).count();
        let canonical = self.eta.iter().enumerate().all(|(a, &s)| (a < p) == (s > 0.0));
        if canonical {
            Signature::new(p, self.eta.len() - p).ok()
        } else {
            None
        }
    }

    /// Largest entry of `γ^a γ^b + γ^b γ^a - 2η^{ab}·1` over all pairs.
    pub fn relation_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for a in 0..self.n() {
            for b in a..self.n() {
                let mut r = anticommutator(&self.gens[a], &self.gens[b]);
                if a == b {
                    r -= identity(d) * c(2.0 * self.eta[a], 0.0);
                }
                worst = worst.max(max_abs(&r));
            }
        }
        worst
    }

    /// All entries real.
    pub fn is_real(&self) -> bool {
        self.gens.iter().all(|g| g.iter().all(|z| z.im == 0.0))
    }

    /// Image of a basis blade: the ordered product of its generator images.
    pub fn blade_image(&self, mask: u32) -> CMatrix {
        let mut m = identity(self.dim());
        for a in 0..self.n() {
            if mask & (1 << a) != 0 {
                m *= &self.gens[a];
            }
        }
        m
    }

    /// Image of an algebra element whose generators match this
    /// representation's generators one-to-one.
    pub fn image(&self, x: &MultiVector) -> Result<CMatrix> {
        let sig = x.signature();
        let squares_match = sig.n() == self.n()
            && (0..self.n()).all(|a| match x.field() {
                ScalarField::Real => sig.eta(a) == self.eta[a],
                ScalarField::Complex => true,
            });
        if !squares_match || (x.field() == ScalarField::Complex && self.field == ScalarField::Real) {
            return Err(Error::AlgebraMismatch { left: x.algebra_name(), right: self.name.to_string() });
        }
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for (mask, coeff) in x.coeffs().iter().enumerate() {
            if coeff.norm() != 0.0 {
                m += self.blade_image(mask as u32) * *coeff;
            }
        }
        Ok(m)
    }
}

/// The representation of `CC(n)` on `2^{n/2}` dimensions built by doubling
/// from `e¹ ↦ σ¹, e² ↦ σ²`.
///
/// Each doubling step sends the old images `Γ_k` to `Γ_k ⊗ σ¹` and adds
/// `χ ⊗ σ¹` and `1 ⊗ σ²`, where `χ = i^{n/2} Γ_1 ⋯ Γ_n` is the chirality.
pub fn build_rep(n: usize) -> Result<MatrixRep> {
    if n == 0 || !n.is_multiple_of(2) || n > 8 {
        return Err(Error::InvalidArgument(format!("build_rep needs an even n between 2 and 8, got {n}")));
    }
    let [s1, s2, _] = pauli();
    let mut gens = vec![s1.clone(), s2.clone()];
    while gens.len() < n {
        let m = gens.len();
        let d = gens[0].nrows();
        let mut chi = identity(d) * I.powu((m / 2) as u32);
        for g in &gens {
            chi *= g;
        }
        let mut next: Vec<CMatrix> = gens.iter().map(|g| g.kronecker(&s1)).collect();
        next.push(chi.kronecker(&s1));
        next.push(identity(d).kronecker(&s2));
        gens = next;
    }
    MatrixRep::new("build_rep", vec![1.0; n], ScalarField::Complex, gens)
}

/// Dirac matrices `γ⁰ = [[0,1],[1,0]]`, `γ^j = [[0,-σ^j],[σ^j,0]]`,
/// representing `C(1,3)` with `η = diag(1,-1,-1,-1)`.
pub fn dirac_gammas() -> MatrixRep {
    let one = identity(2);
    let zero = CMatrix::zeros(2, 2);
    let mut gens = vec![block2(&zero, &one, &one, &zero)];
    for s in pauli() {
        gens.push(block2(&zero, &(-&s), &s, &zero));
    }
    MatrixRep::new("dirac", vec![1.0, -1.0, -1.0, -1.0], ScalarField::Real, gens).expect("dirac matrices")
}

/// The Euclidean generators of `CC(4)` in the Dirac representation:
/// `e⁰ = γ⁰` and `e^j = -iγ^j`.
pub fn dirac_euclidean() -> MatrixRep {
    let d = dirac_gammas();
    let gens = d
        .gens
        .iter()
        .enumerate()
        .map(|(a, g)| if a == 0 { g.clone() } else { g * (-I) })
        .collect();
    MatrixRep::new("dirac-euclidean", vec![1.0; 4], ScalarField::Complex, gens).expect("euclidean images")
}

/// The real Majorana matrices. The metric they realise is read off their
/// squares and stored in [`MatrixRep::eta`].
pub fn majorana_gammas() -> MatrixRep {
    let [s1, _, s3] = pauli();
    let one = identity(2);
    let zero = CMatrix::zeros(2, 2);
    let gens = vec![
        block2(&zero, &one, &one, &zero),
        block2(&zero, &(-&one), &one, &zero),
        block2(&s1, &zero, &zero, &(-&s1)),
        block2(&s3, &zero, &zero, &(-&s3)),
    ];
    let eta = gens
        .iter()
        .map(|g| {
            let sq = g * g;
            if (sq - identity(4)).iter().all(|z| z.norm() == 0.0) {
                1.0
            } else {
                -1.0
            }
        })
        .collect();
    MatrixRep::new("majorana", eta, ScalarField::Real, gens).expect("majorana matrices")
}

/// A product `v_1 ⋯ v_k` of unit vectors (`η(v,v) = ±1`) of `C(p,q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VersorElement {
    sig: Signature,
    factors: Vec<Vec<f64>>,
    product: MultiVector,
}

pub const UNIT_TOLERANCE: f64 = 1e-12;

impl VersorElement {
    pub fn new(sig: Signature, factors: Vec<Vec<f64>>) -> Result<VersorElement> {
        let mut product = MultiVector::one(sig, ScalarField::Real);
        for v in &factors {
            if v.len() != sig.n() {
                return Err(Error::InvalidArgument("versor factor has the wrong length".into()));
            }
            let norm = sig.inner(v, v);
            if (norm.abs() - 1.0).abs() > UNIT_TOLERANCE {
                return Err(Error::InvalidArgument(format!("versor factor has η(v,v) = {norm}, not ±1")));
            }
            product = &product * &MultiVector::vector(sig, v);
        }
        Ok(VersorElement { sig, factors, product })
    }

    /// The unit `e` (no factors).
    pub fn identity(sig: Signature) -> VersorElement {
        VersorElement::new(sig, Vec::new()).expect("empty versor")
    }

    /// `exp(t/2 · v_i v_j)` written as a product of two unit vectors: a
    /// rotation by `t` when `v_i, v_j` square alike, a boost of rapidity `t`
    /// otherwise.
    pub fn exp_bivector(sig: Signature, i: usize, j: usize, t: f64) -> Result<VersorElement> {
        if i == j || i >= sig.n() || j >= sig.n() {
            return Err(Error::InvalidArgument("exp_bivector needs two distinct generators".into()));
        }
        let (si, sj) = (sig.eta(i), sig.eta(j));
        let (a, b) = if si == sj {
            ((t / 2.0).cos(), (t / 2.0).sin())
        } else {
            ((t / 2.0).cosh(), (t / 2.0).sinh())
        };
        let mut u = vec![0.0; sig.n()];
        u[i] = 1.0;
        let mut w = vec![0.0; sig.n()];
        w[i] = si * a;
        w[j] = b;
        // w may drift from unit length by rounding; renormalise.
        let norm = sig.inner(&w, &w).abs().sqrt();
        w.iter_mut().for_each(|x| *x /= norm);
        VersorElement::new(sig, vec![u, w])
    }

    /// A product of `k` vectors from [`random_unit_vector`].
    pub fn random(sig: Signature, k: usize, rng: &mut impl Rng) -> VersorElement {
        let factors = (0..k).map(|_| random_unit_vector(sig, rng)).collect();
        VersorElement::new(sig, factors).expect("normalised factors")
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn factors(&self) -> &[Vec<f64>] {
        &self.factors
    }

    pub fn product(&self) -> &MultiVector {
        &self.product
    }

    /// In Spin when the factor count is even.
    pub fn is_spin(&self) -> bool {
        self.factors.len().is_multiple_of(2)
    }

    /// `-g`, realised by negating the first factor (or as `(-v)(v)/η(v,v)`
    /// for the unit).
    pub fn negated(&self) -> VersorElement {
        let mut factors = self.factors.clone();
        if factors.is_empty() {
            let mut v = vec![0.0; self.sig.n()];
            v[0] = 1.0;
            let s = self.sig.eta(0);
            factors = vec![v.iter().map(|x| -x * s).collect(), v];
        } else {
            factors[0].iter_mut().for_each(|x| *x = -*x);
        }
        VersorElement::new(self.sig, factors).expect("negated factors stay unit")
    }

    /// `g h` as the concatenation of factor lists.
    pub fn compose(&self, other: &VersorElement) -> VersorElement {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        VersorElement::new(self.sig, factors).expect("composed factors stay unit")
    }

    /// `g^{-1}`: the factors in reverse order, each divided by its square.
    pub fn inverse(&self) -> VersorElement {
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|v| {
                let s = self.sig.inner(v, v).signum();
                v.iter().map(|x| x * s).collect()
            })
            .collect();
        VersorElement::new(self.sig, factors).expect("inverse factors stay unit")
    }

    /// `g^{-1}` as an algebra element, `reverse(g) · Π η(v_i, v_i)`.
    pub fn inverse_product(&self) -> MultiVector {
        let s: f64 = self.factors.iter().map(|v| self.sig.inner(v, v).signum()).product();
        self.product.reverse().scale(s)
    }
}

/// A random vector with `η(v,v) = ±1`. Candidates close to the light cone
/// (`|η(v,v)|` below half the Euclidean square norm) are rejected so that
/// boosts stay moderate.
pub fn random_unit_vector(sig: Signature, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..sig.n()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = sig.inner(&v, &v);
        let euclid: f64 = v.iter().map(|x| x * x).sum();
        if euclid > 1e-2 && norm.abs() >= 0.5 * euclid {
            let r = norm.abs().sqrt();
            return v.iter().map(|x| x / r).collect();
        }
    }
}

/// `g w g^{-1}` for a vector `w`, returned as its components.
pub fn adjoint_action(g: &VersorElement, w: &[f64]) -> Result<Vec<f64>> {
    let sig = g.sig;
    if w.len() != sig.n() {
        return Err(Error::InvalidArgument("vector has the wrong length".into()));
    }
    let img = &(g.product() * &MultiVector::vector(sig, w)) * &g.inverse_product();
    let scale = 1.0 + w.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let stray = img.off_vector_norm();
    if stray > 1e-9 * scale * (1.0 + g.product().max_abs()).powi(2) {
        return Err(Error::Internal(format!(
            "conjugate of a vector left the generating space (stray component {stray:e})"
        )));
    }
    Ok(img.vector_part())
}

/// The matrix of `w ↦ g w g^{-1}` (column `b` is the image of `v^b`).
pub fn adjoint_matrix(g: &VersorElement) -> Result<DMatrix<f64>> {
    let n = g.sig.n();
    let mut m = DMatrix::zeros(n, n);
    for b in 0..n {
        let mut e = vec![0.0; n];
        e[b] = 1.0;
        let col = adjoint_action(g, &e)?;
        for a in 0..n {
            m[(a, b)] = col[a];
        }
    }
    Ok(m)
}

/// Largest entry of `Λᵀ η Λ - η`.
pub fn eta_preservation_residual(sig: Signature, lambda: &DMatrix<f64>) -> f64 {
    let n = sig.n();
    let eta = DMatrix::from_fn(n, n, |a, b| if a == b { sig.eta(a) } else { 0.0 });
    (lambda.transpose() * &eta * lambda - eta).amax()
}

/// Dimension of the even elements commuting with every generator, i.e. the
/// kernel of the adjoint action on the even subalgebra as a linear space.
/// A value of 1 means `ĝ = id` forces `g ∈ span{e}`, hence `g = ±e` for a
/// Spin element.
pub fn even_centralizer_dimension(sig: Signature) -> usize {
    let count = sig.blade_count();
    let even: Vec<u32> = (0..count as u32).filter(|m| grade(*m).is_multiple_of(2)).collect();
    let mut m = DMatrix::<f64>::zeros(sig.n() * count, even.len());
    for a in 0..sig.n() {
        let v = 1u32 << a;
        for (col, &z) in even.iter().enumerate() {
            let (s1, out) = blade_product(sig, z, v);
            let (s2, _) = blade_product(sig, v, z);
            m[(a * count + out as usize, col)] += s1 - s2;
        }
    }
    even.len() - matrix_rank(&m)
}

/// Index pairs `a < b` in the order used for Lorentz generators.
pub const LORENTZ_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// `I_ab = ¼[γ_a, γ_b]` with `γ_a = η_ab γ^b`.
#[derive(Debug, Clone)]
pub struct LorentzGenerators {
    eta: Vec<f64>,
    mats: Vec<CMatrix>,
}

impl LorentzGenerators {
    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    /// `I_ab` for any `a, b` (zero on the diagonal, antisymmetric).
    pub fn get(&self, a: usize, b: usize) -> CMatrix {
        if a == b {
            return CMatrix::zeros(4, 4);
        }
        let (lo, hi, s) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
        let k = LORENTZ_PAIRS.iter().position(|&p| p == (lo, hi)).expect("pair in range");
        &self.mats[k] * c(s, 0.0)
    }

    /// The six independent generators in [`LORENTZ_PAIRS`] order.
    pub fn independent(&self) -> &[CMatrix] {
        &self.mats
    }

    /// Largest residual of
    /// `[I_ab, I_cd] = η_ad I_bc + η_bc I_ad - η_ac I_bd - η_bd I_ac`.
    pub fn algebra_residual(&self) -> f64 {
        let eta = |a: usize, b: usize| if a == b { self.eta[a] } else { 0.0 };
        let mut worst = 0.0f64;
        for a in 0..4 {
            for b in 0..4 {
                for cc in 0..4 {
                    for d in 0..4 {
                        let lhs = commutator(&self.get(a, b), &self.get(cc, d));
                        let rhs = self.get(b, cc) * c(eta(a, d), 0.0) + self.get(a, d) * c(eta(b, cc), 0.0)
                            - self.get(b, d) * c(eta(a, cc), 0.0)
                            - self.get(a, cc) * c(eta(b, d), 0.0);
                        worst = worst.max(max_abs(&(lhs - rhs)));
                    }
                }
            }
        }
        worst
    }
}

pub fn lorentz_generators(rep: &MatrixRep) -> Result<LorentzGenerators> {
    if rep.n() != 4 || rep.eta() != [1.0, -1.0, -1.0, -1.0] {
        return Err(Error::InvalidArgument("lorentz_generators needs a representation of C(1,3)".into()));
    }
    if rep.relation_residual() > 1e-12 {
        return Err(Error::InvalidArgument("generator images violate the C(1,3) relations".into()));
    }
    let low: Vec<CMatrix> = (0..4).map(|a| rep.gen(a) * c(rep.eta()[a], 0.0)).collect();
    let mats = LORENTZ_PAIRS.iter().map(|&(a, b)| commutator(&low[a], &low[b]) * c(0.25, 0.0)).collect();
    Ok(LorentzGenerators { eta: rep.eta().to_vec(), mats })
}

/// A minimal left ideal `CC(n)·p` of the complex Clifford algebra.
#[derive(Debug, Clone)]
pub struct SpinorSpaceBasis {
    pub idempotent: MultiVector,
    /// Orthonormal (in coefficient space) basis of the ideal.
    pub basis: Vec<MultiVector>,
}

impl SpinorSpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Distance of `x` from the span of the basis, in the coefficient norm.
    pub fn projection_residual(&self, x: &MultiVector) -> f64 {
        let mut r: Vec<Complex64> = x.coeffs().to_vec();
        for b in &self.basis {
            let proj: Complex64 = b.coeffs().iter().zip(&r).map(|(u, v)| u.conj() * v).sum();
            for (ri, bi) in r.iter_mut().zip(b.coeffs()) {
                *ri -= proj * bi;
            }
        }
        r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// The ideal generated by `p = Π_k ½(e + i e^{2k-1} e^{2k})`, a product of
/// commuting rank-one projectors.
pub fn spinor_space(n: usize) -> Result<SpinorSpaceBasis> {
    if n == 0 || !n.is_multiple_of(2) || n > 6 {
        return Err(Error::InvalidArgument(format!("spinor_space needs n in {{2, 4, 6}}, got {n}")));
    }
    let sig = Signature::euclidean(n)?;
    let f = ScalarField::Complex;
    let mut p = MultiVector::one(sig, f);
    for k in 0..n / 2 {
        let mask = (1u32 << (2 * k)) | (1u32 << (2 * k + 1));
        let s = MultiVector::blade(sig, f, mask, I);
        let proj = (&MultiVector::one(sig, f) + &s).scale(0.5);
        p = &p * &proj;
    }
    let mut basis: Vec<MultiVector> = Vec::new();
    for mask in 0..sig.blade_count() as u32 {
        let v = &MultiVector::blade(sig, f, mask, ONE) * &p;
        let mut r: Vec<Complex64> = v.coeffs().to_vec();
        for b in &basis {
            let proj: Complex64 = b.coeffs().iter().zip(&r).map(|(u, w)| u.conj() * w).sum();
            for (ri, bi) in r.iter_mut().zip(b.coeffs()) {
                *ri -= proj * bi;
            }
        }
        let norm = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-10 {
            r.iter_mut().for_each(|z| *z /= norm);
            basis.push(MultiVector::from_coeffs(sig, f, r)?);
        }
    }
    debug_assert!(basis.iter().all(|b| b.coeffs().len() == sig.blade_count()));
    Ok(SpinorSpaceBasis { idempotent: p, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn exact_eq(a: &CMatrix, b: &CMatrix) -> bool {
        a.iter().zip(b.iter()).all(|(x, y)| x == y)
    }

    #[test]
    fn build_rep_small_cases() {
        let r2 = build_rep(2).unwrap();
        let [s1, s2, _] = pauli();
        assert!(exact_eq(r2.gen(0), &s1) && exact_eq(r2.gen(1), &s2));
        assert_eq!(build_rep(4).unwrap().dim(), 4);
        assert!(build_rep(3).is_err());
        assert!(build_rep(10).is_err());
    }

    #[test]
    fn build_rep_relations_are_exact() {
        for n in [2, 4, 6, 8] {
            let r = build_rep(n).unwrap();
            assert_eq!(r.relation_residual(), 0.0, "n={n}");
            for g in r.gen_images() {
                for z in g.iter() {
                    let allowed = [ZERO, ONE, -ONE, I, -I];
                    assert!(allowed.contains(z), "entry {z} in n={n}");
                }
            }
        }
    }

    #[test]
    fn build_rep_is_homomorphism_on_blades() {
        let n = 4;
        let r = build_rep(n).unwrap();
        let sig = Signature::euclidean(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a: u32 = rng.random_range(0..16);
            let b: u32 = rng.random_range(0..16);
            let ma = MultiVector::blade(sig, ScalarField::Complex, a, ONE);
            let mb = MultiVector::blade(sig, ScalarField::Complex, b, ONE);
            let lhs = r.image(&(&ma * &mb)).unwrap();
            let rhs = r.image(&ma).unwrap() * r.image(&mb).unwrap();
            assert!(exact_eq(&lhs, &rhs));
        }
    }

    #[test]
    fn dirac_matrices() {
        let d = dirac_gammas();
        assert_eq!(d.relation_residual(), 0.0);
        let g0 = d.gen(0);
        assert!(exact_eq(&(g0 * g0), &identity(4)));
        assert!(exact_eq(&(d.gen(1) * d.gen(1)), &(-identity(4))));
        assert_eq!(g0[(0, 2)], ONE);
        assert_eq!(g0[(0, 0)], ZERO);
        assert_eq!(dirac_euclidean().relation_residual(), 0.0);
    }

    #[test]
    fn majorana_matrices() {
        let m = majorana_gammas();
        assert!(m.is_real());
        assert_eq!(m.eta(), &[1.0, -1.0, 1.0, 1.0]);
        assert_eq!(m.relation_residual(), 0.0);
        for g in m.gen_images() {
            assert!(g.iter().all(|z| [ZERO, ONE, -ONE].contains(z)));
        }
        assert!(m.signature().is_none());
    }

    #[test]
    fn identity_versor_acts_trivially() {
        let sig = Signature::new(1, 3).unwrap();
        let m = adjoint_matrix(&VersorElement::identity(sig)).unwrap();
        assert_eq!(m, DMatrix::identity(4, 4));
    }

    #[test]
    fn euclidean_plane_rotation() {
        let sig = Signature::new(4, 0).unwrap();
        let theta = 0.6;
        let g = VersorElement::exp_bivector(sig, 0, 1, theta).unwrap();
        let expected = MultiVector::from_real(
            sig,
            &[(theta / 2.0).cos(), 0.0, 0.0, (theta / 2.0).sin(), 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        )
        .unwrap();
        assert!(g.product().max_abs_diff(&expected) < 1e-15);
        let m = adjoint_matrix(&g).unwrap();
        let (c0, s0) = (theta.cos(), theta.sin());
        let oracle = DMatrix::from_row_slice(4, 4, &[c0, s0, 0.0, 0.0, -s0, c0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!((m - oracle).amax() < 1e-15);
    }

    #[test]
    fn adjoint_kernel_is_plus_minus_unit() {
        for (p, q) in [(1, 3), (4, 0), (0, 4), (2, 2), (3, 0)] {
            assert_eq!(even_centralizer_dimension(Signature::new(p, q).unwrap()), 1, "({p},{q})");
        }
    }

    #[test]
    fn negation_is_in_the_kernel() {
        let sig = Signature::new(1, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = VersorElement::random(sig, 4, &mut rng);
        let minus = g.negated();
        assert!(minus.product().max_abs_diff(&g.product().scale(-1.0)) < 1e-15);
        let a = adjoint_matrix(&g).unwrap();
        let b = adjoint_matrix(&minus).unwrap();
        assert!((a - b).amax() < 1e-13);
    }

    #[test]
    fn spin_preserves_eta_and_orientation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, q) in [(1, 3), (4, 0), (0, 4), (2, 2)] {
            let sig = Signature::new(p, q).unwrap();
            for k in [2, 4, 6] {
                let g = VersorElement::random(sig, k, &mut rng);
                let m = adjoint_matrix(&g).unwrap();
                assert!(eta_preservation_residual(sig, &m) < 1e-12, "{sig} k={k}");
                if p == 0 || q == 0 {
                    assert!((m.determinant() - 1.0).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn lorentz_generator_algebra() {
        let l = lorentz_generators(&dirac_gammas()).unwrap();
        assert!(l.algebra_residual() < 1e-15);
        let lhs = commutator(&l.get(0, 1), &l.get(1, 2));
        assert!(max_abs(&(lhs + l.get(0, 2))) < 1e-15);
        assert!(max_abs(&(l.get(2, 1) + l.get(1, 2))) == 0.0);
    }

    #[test]
    fn generator_exponential_matches_versor() {
        let theta: f64 = 0.3;
        let d = dirac_gammas();
        let l = lorentz_generators(&d).unwrap();
        let s = (l.get(1, 2) * c(theta, 0.0)).exp();
        let sinv = (l.get(1, 2) * c(-theta, 0.0)).exp();
        let sig = Signature::new(1, 3).unwrap();
        let g = VersorElement::exp_bivector(sig, 1, 2, theta).unwrap();
        let lambda = adjoint_matrix(&g).unwrap();
        for b in 0..4 {
            let conj = &s * d.gen(b) * &sinv;
            let mut expect = CMatrix::zeros(4, 4);
            for a in 0..4 {
                expect += d.gen(a) * c(lambda[(a, b)], 0.0);
            }
            assert!(max_abs(&(conj - expect)) < 1e-13);
        }
    }

    #[test]
    fn spinor_ideals() {
        for n in [2, 4] {
            let s = spinor_space(n).unwrap();
            let p2 = &s.idempotent * &s.idempotent;
            assert_eq!(p2, s.idempotent);
            assert_eq!(s.dim(), 1 << (n / 2));
        }
        let s = spinor_space(4).unwrap();
        let sig = Signature::euclidean(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let coeffs = (0..16).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let a = MultiVector::from_coeffs(sig, ScalarField::Complex, coeffs).unwrap();
            for b in &s.basis {
                assert!(s.projection_residual(&(&a * b)) < 1e-12);
            }
        }
    }
}
