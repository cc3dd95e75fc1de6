//! Lorentz connections in a tetrad gauge, the spin connection and the
//! Dirac operator on sampled spinor fields.
//!
//! The spin generators are `I_ab = ¼[γ_a, γ_b]` built from the Dirac
//! matrices, and the spinor covariant derivative is `∂_λ − ω_λ` with
//! `ω_λ = ½ A_λ^{ab} I_ab`.

use num_complex::Complex64;

use crate::expr::{Expr, Jet2};
use crate::gravity::tensor::{eta, DIM, T1, T3, Z3};
use crate::gravity::{JetPoint, TetradJet};
use crate::spin::{anticommutator, c, dirac_gammas, lorentz_generators, max_abs, CMatrix, LorentzGenerators, MatrixRep};
use crate::{Error, Result};

/// Four complex spinor components, each a pair of real expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorFieldSample {
    comps: Vec<(Expr, Expr)>,
}

impl SpinorFieldSample {
    pub fn new(comps: Vec<(Expr, Expr)>) -> SpinorFieldSample {
        assert_eq!(comps.len(), DIM, "a Dirac spinor has 4 components");
        SpinorFieldSample { comps }
    }

    pub fn components(&self) -> &[(Expr, Expr)] {
        &self.comps
    }

    pub fn set_component(&mut self, a: usize, imaginary: bool, e: Expr) {
        let slot = &mut self.comps[a];
        if imaginary {
            slot.1 = e;
        } else {
            slot.0 = e;
        }
    }

    pub fn eval_jets(&self, point: &[f64]) -> Result<Vec<(Jet2, Jet2)>> {
        self.comps.iter().map(|(re, im)| Ok((re.eval_jet2(point)?, im.eval_jet2(point)?))).collect()
    }
}

/// `A_λ^{ab}` indexed `[λ][a][b]`, antisymmetric in `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzConnValue {
    a: T3,
}

impl LorentzConnValue {
    /// Antisymmetrizes the given components.
    pub fn from_components(raw: &T3) -> LorentzConnValue {
        let mut a = Z3;
        for l in 0..DIM {
            for i in 0..DIM {
                for j in i + 1..DIM {
                    let v = 0.5 * (raw[l][i][j] - raw[l][j][i]);
                    a[l][i][j] = v;
                    a[l][j][i] = -v;
                }
            }
        }
        LorentzConnValue { a }
    }

    pub fn components(&self) -> &T3 {
        &self.a
    }

    pub fn get(&self, lam: usize, a: usize, b: usize) -> f64 {
        self.a[lam][a][b]
    }

    pub fn max_abs_diff(&self, other: &LorentzConnValue) -> f64 {
        let mut m: f64 = 0.0;
        for l in 0..DIM {
            for i in 0..DIM {
                for j in 0..DIM {
                    m = m.max((self.a[l][i][j] - other.a[l][i][j]).abs());
                }
            }
        }
        m
    }
}

/// `X_λ^μ_k = ∂_λ h^μ_k − h^ν_k Γ_λ^μ_ν` indexed `[λ][μ][k]`.
fn frame_covariant_derivative(t: &TetradJet, gamma: &T3) -> T3 {
    let mut x = Z3;
    for l in 0..DIM {
        for m in 0..DIM {
            for k in 0..DIM {
                let conn: f64 = (0..DIM).map(|n| t.frame[n][k] * gamma[l][m][n]).sum();
                x[l][m][k] = t.dframe[l][m][k] - conn;
            }
        }
    }
    x
}

/// `M_λ^{ab} = η^{kb} h^a_μ X_λ^μ_k`, whose antisymmetric part is `A`.
fn lorentz_raw(t: &TetradJet, gamma: &T3) -> T3 {
    let x = frame_covariant_derivative(t, gamma);
    let mut m = Z3;
    for l in 0..DIM {
        for a in 0..DIM {
            for b in 0..DIM {
                m[l][a][b] = eta(b) * (0..DIM).map(|mu| t.h[a][mu] * x[l][mu][b]).sum::<f64>();
            }
        }
    }
    m
}

/// `A_λ^{ab}` for a given tetrad and world connection.
pub fn lorentz_from_world(t: &TetradJet, gamma: &T3) -> LorentzConnValue {
    LorentzConnValue::from_components(&lorentz_raw(t, gamma))
}

pub fn extract_lorentz_connection(jp: &JetPoint) -> Result<LorentzConnValue> {
    Ok(lorentz_from_world(jp.require_tetrad()?, jp.connection()))
}

/// `Γ_λ^μ_ν = h^k_ν ∂_λ h^μ_k + η_{ka} h^μ_b h^k_ν A_λ^{ab}`.
pub fn lorentz_world_connection(a: &LorentzConnValue, jp: &JetPoint) -> Result<T3> {
    let t = jp.require_tetrad()?;
    let mut g = Z3;
    for l in 0..DIM {
        for mu in 0..DIM {
            for nu in 0..DIM {
                let mut inh = 0.0;
                let mut hom = 0.0;
                for k in 0..DIM {
                    inh += t.h[k][nu] * t.dframe[l][mu][k];
                    for b in 0..DIM {
                        hom += eta(k) * t.frame[mu][b] * t.h[k][nu] * a.a[l][k][b];
                    }
                }
                g[l][mu][nu] = inh + hom;
            }
        }
    }
    Ok(g)
}

/// Shared γ-matrix data for the spinor sector.
#[derive(Debug, Clone)]
pub struct DiracSetup {
    pub gammas: MatrixRep,
    pub generators: LorentzGenerators,
}

impl DiracSetup {
    pub fn new() -> DiracSetup {
        let gammas = dirac_gammas();
        let generators = lorentz_generators(&gammas).expect("Dirac matrices generate the Lorentz algebra");
        DiracSetup { gammas, generators }
    }

    /// `γ_h(t) = t_μ h^μ_a γ^a`.
    pub fn gamma_of_coframe(&self, jp: &JetPoint, t: &T1) -> Result<CMatrix> {
        let tet = jp.require_tetrad()?;
        let mut out = CMatrix::zeros(4, 4);
        for a in 0..DIM {
            let w: f64 = (0..DIM).map(|mu| t[mu] * tet.frame[mu][a]).sum();
            out += self.gammas.gen(a) * c(w, 0.0);
        }
        Ok(out)
    }

    /// `ω_λ` from the literal `¼ (η^{kb}h^a_μ − η^{ka}h^b_μ) X_λ^μ_k I_ab`.
    pub fn spin_connection(&self, jp: &JetPoint) -> Result<[CMatrix; 4]> {
        let raw = lorentz_raw(jp.require_tetrad()?, jp.connection());
        Ok(std::array::from_fn(|l| {
            let mut w = CMatrix::zeros(4, 4);
            for a in 0..DIM {
                for b in 0..DIM {
                    if a != b {
                        w += self.generators.get(a, b) * c(0.25 * (raw[l][a][b] - raw[l][b][a]), 0.0);
                    }
                }
            }
            w
        }))
    }

    /// `ω_λ = Σ_{a<b} A_λ^{ab} I_ab`.
    pub fn spin_connection_from(&self, a: &LorentzConnValue) -> [CMatrix; 4] {
        std::array::from_fn(|l| {
            let mut w = CMatrix::zeros(4, 4);
            for i in 0..DIM {
                for j in i + 1..DIM {
                    w += self.generators.get(i, j) * c(a.a[l][i][j], 0.0);
                }
            }
            w
        })
    }

    /// `(𝒟ψ) = h^λ_a γ^a (∂_λψ − ω_λψ)` at the point.
    pub fn dirac_operator(&self, jp: &JetPoint) -> Result<[Complex64; 4]> {
        let tet = jp.require_tetrad()?;
        let psi = jp.spinor().ok_or(Error::MissingField { what: "a spinor field" })?;
        let omega = self.spin_connection(jp)?;
        let v = nalgebra::DVector::from_column_slice(&psi.value);
        let mut out = nalgebra::DVector::<Complex64>::zeros(4);
        for l in 0..DIM {
            let cov = nalgebra::DVector::from_column_slice(&psi.grad[l]) - &omega[l] * &v;
            let mut gl = CMatrix::zeros(4, 4);
            for a in 0..DIM {
                gl += self.gammas.gen(a) * c(tet.frame[l][a], 0.0);
            }
            out += gl * cov;
        }
        Ok([out[0], out[1], out[2], out[3]])
    }

    /// Largest entry of the residual after projecting each `ω_λ` onto the
    /// span of the six generators.
    pub fn generator_span_residual(&self, omega: &[CMatrix; 4]) -> f64 {
        let gens = self.generators.independent();
        let mut a = nalgebra::DMatrix::<Complex64>::zeros(16, gens.len());
        for (j, g) in gens.iter().enumerate() {
            for (i, v) in g.iter().enumerate() {
                a[(i, j)] = *v;
            }
        }
        let svd = a.clone().svd(true, true);
        omega
            .iter()
            .map(|w| {
                let b = nalgebra::DVector::from_iterator(16, w.iter().copied());
                let x = svd.solve(&b, 1e-14).expect("SVD with both factors");
                (&a * x - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}

impl Default for DiracSetup {
    fn default() -> Self {
        DiracSetup::new()
    }
}

/// Whether `γ_h(t)γ_h(t')` and `γ_{h'}(t)γ_{h'}(t')` differ in some entry
/// by more than `1e-8`.
pub fn representation_inequivalence_check(
    setup: &DiracSetup,
    jp_h: &JetPoint,
    jp_h2: &JetPoint,
    t: &T1,
    t2: &T1,
) -> Result<bool> {
    let p1 = setup.gamma_of_coframe(jp_h, t)? * setup.gamma_of_coframe(jp_h, t2)?;
    let p2 = setup.gamma_of_coframe(jp_h2, t)? * setup.gamma_of_coframe(jp_h2, t2)?;
    Ok(max_abs(&(p1 - p2)) > 1e-8)
}

/// Largest entry of `{γ_h(t), γ_h(t')} − 2 g^{μν} t_μ t'_ν`.
pub fn coframe_clifford_residual(setup: &DiracSetup, jp: &JetPoint, t: &T1, t2: &T1) -> Result<f64> {
    let ac = anticommutator(&setup.gamma_of_coframe(jp, t)?, &setup.gamma_of_coframe(jp, t2)?);
    let gi = jp.inverse_metric();
    let mut s = 0.0;
    for m in 0..DIM {
        for n in 0..DIM {
            s += gi[m][n] * t[m] * t2[n];
        }
    }
    Ok(max_abs(&(ac - crate::spin::identity(4) * c(2.0 * s, 0.0))))
}
