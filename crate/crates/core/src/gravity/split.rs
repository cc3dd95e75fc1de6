//! Space-time splitting by a tetrad and affine (Cartan) connections.

use nalgebra::SymmetricEigen;

use super::chart::JetPoint;
use super::connection::kronecker;
use super::tensor::{max_abs2, sub2, to_matrix, TensorValue, Variance, DIM, T1, T2, Z2};
use crate::{Error, Result};

use Variance::{Down as D, Up as U};

#[derive(Debug, Clone)]
pub struct SpaceTimeSplit {
    /// `h⁰_λ`.
    pub time_covector: T1,
    /// `h^μ_0`.
    pub time_vector: T1,
    /// `g^R_{μν} = Σ_a h^a_μ h^a_ν`.
    pub riemannian: TensorValue,
    /// Eigenvalues of `g^R`, ascending.
    pub riemannian_eigenvalues: T1,
    /// Largest `|g − (2h⁰⊗h⁰ − g^R)|`.
    pub residual: f64,
}

pub fn spacetime_split(jp: &JetPoint) -> Result<SpaceTimeSplit> {
    let t = jp.require_tetrad()?;
    let mut gr = Z2;
    let mut recon = Z2;
    for mu in 0..DIM {
        for nu in 0..DIM {
            gr[mu][nu] = (0..DIM).map(|a| t.h[a][mu] * t.h[a][nu]).sum();
            recon[mu][nu] = 2.0 * t.h[0][mu] * t.h[0][nu] - gr[mu][nu];
        }
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(to_matrix(&gr)).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    if ev[0] <= 0.0 {
        return Err(Error::degenerate(
            format!("Riemannian metric of the tetrad is not positive definite (eigenvalue {:.3e})", ev[0]),
            &jp.point,
        ));
    }
    Ok(SpaceTimeSplit {
        time_covector: t.h[0],
        time_vector: std::array::from_fn(|mu| t.frame[mu][0]),
        riemannian: TensorValue::from_t2("gR", [("mu", D), ("nu", D)], &gr),
        riemannian_eigenvalues: [ev[0], ev[1], ev[2], ev[3]],
        residual: max_abs2(&sub2(&jp.g, &recon)),
    })
}

/// `A_λ^μ = Γ_λ^μ_ν ẋ^ν + σ^μ_λ` at the fibre point `ẋ`. The soldering form
/// is given as `soldering[λ][μ] = σ^μ_λ` and defaults to `δ`.
pub fn cartan_connection(jp: &JetPoint, xdot: &T1, soldering: Option<&T2>) -> TensorValue {
    let sigma = soldering.copied().unwrap_or_else(kronecker);
    let mut a = Z2;
    for la in 0..DIM {
        for mu in 0..DIM {
            let lin: f64 = (0..DIM).map(|nu| jp.gamma[la][mu][nu] * xdot[nu]).sum();
            a[la][mu] = lin + sigma[la][mu];
        }
    }
    TensorValue::from_t2("A", [("lam", D), ("mu", U)], &a)
}
