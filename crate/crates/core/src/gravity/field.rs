//! The Hilbert–Einstein Lagrangian density and its field-equation residuals.

use super::chart::JetPoint;
use super::connection::{curvature_of, ricci_contraction, scalar_of};
use super::tensor::{delta, TensorValue, Variance, DIM, T2, T3, T4, Z2, Z3};

use Variance::{Down as D, Up as U};

/// `L = g^{μβ} R_{λμ}^λ_β √|det g|` from raw field values.
pub fn lgr_density(ginv: &T2, sqrt_abs_det: f64, gamma: &T3, dgamma: &T4) -> f64 {
    let (r, _) = curvature_of(gamma, dgamma);
    scalar_of(ginv, &r) * sqrt_abs_det
}

pub fn hilbert_einstein_density(jp: &JetPoint) -> f64 {
    lgr_density(&jp.ginv, jp.sqrt_abs_det(), &jp.gamma, &jp.dgamma)
}

#[derive(Debug, Clone)]
pub struct FieldEquations {
    /// `E_{αβ} = 𝓡_{αβ} − ½ g_{αβ} 𝓡`.
    pub einstein: TensorValue,
    /// `E^ν_α^β`, the connection equations.
    pub connection: TensorValue,
}

/// `∂_α (g^{νβ} √|det g|)` indexed `[α][ν][β]`.
pub(crate) fn densitized_inverse_derivative(jp: &JetPoint) -> T3 {
    let sq = jp.sqrt_abs_det();
    let mut q = Z3;
    for al in 0..DIM {
        let dg = &jp.dg[al];
        let trace: f64 = (0..DIM).flat_map(|r| (0..DIM).map(move |s| (r, s))).map(|(r, s)| jp.ginv[r][s] * dg[r][s]).sum();
        let dsq = 0.5 * sq * trace;
        for nu in 0..DIM {
            for be in 0..DIM {
                let mut dinv = 0.0;
                for r in 0..DIM {
                    for s in 0..DIM {
                        dinv -= jp.ginv[nu][r] * dg[r][s] * jp.ginv[s][be];
                    }
                }
                q[al][nu][be] = dinv * sq + jp.ginv[nu][be] * dsq;
            }
        }
    }
    q
}

pub fn he_field_equations(jp: &JetPoint) -> FieldEquations {
    let (r, _) = curvature_of(&jp.gamma, &jp.dgamma);
    let ric = ricci_contraction(&r);
    let scalar = scalar_of(&jp.ginv, &r);
    let mut e = Z2;
    for al in 0..DIM {
        for be in 0..DIM {
            e[al][be] = ric[al][be] - 0.5 * jp.g[al][be] * scalar;
        }
    }

    let q = densitized_inverse_derivative(jp);
    let k = &jp.gamma;
    let gi = &jp.ginv;
    let sq = jp.sqrt_abs_det();
    let mut em = Z3;
    for nu in 0..DIM {
        for al in 0..DIM {
            for be in 0..DIM {
                let div: f64 = (0..DIM).map(|la| q[la][la][be]).sum();
                let mut alg = 0.0;
                for ga in 0..DIM {
                    alg += gi[nu][ga] * k[al][be][ga];
                    alg -= gi[nu][be] * k[ga][ga][al];
                    alg += gi[ga][be] * k[ga][nu][al];
                    for la in 0..DIM {
                        alg -= delta(nu, al) * gi[la][ga] * k[la][be][ga];
                    }
                }
                em[nu][al][be] = -q[al][nu][be] + div * delta(nu, al) + alg * sq;
            }
        }
    }
    FieldEquations {
        einstein: TensorValue::from_t2("E", [("al", D), ("be", D)], &e),
        connection: TensorValue::from_t3("E", [("nu", U), ("al", D), ("be", U)], &em),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gravity::chart::Chart;

    fn schwarzschild() -> Chart {
        Chart::new("schw", &["t", "r", "th", "ph"], &[("rs", 1.0)])
            .unwrap()
            .with_diagonal_metric(["1-rs/r", "-1/(1-rs/r)", "-r^2", "-r^2*sin(th)^2"])
            .unwrap()
    }

    #[test]
    fn minkowski_zero_connection_is_exact_solution() {
        let c = Chart::new("flat", &["t", "x", "y", "z"], &[])
            .unwrap()
            .with_diagonal_metric(["1", "-1", "-1", "-1"])
            .unwrap()
            .with_connection(&[])
            .unwrap();
        let f = he_field_equations(&c.jet_point(&[1.0, 2.0, 3.0, 4.0]).unwrap());
        assert_eq!(f.einstein.max_abs(), 0.0);
        assert_eq!(f.connection.max_abs(), 0.0);
    }

    #[test]
    fn schwarzschild_levi_civita_is_vacuum() {
        let jp = schwarzschild().jet_point(&[0.0, 3.0, 1.1, 0.4]).unwrap();
        let f = he_field_equations(&jp);
        assert!(f.einstein.max_abs() < 1e-12, "{}", f.einstein.max_abs());
        assert!(f.connection.max_abs() < 1e-12, "{}", f.connection.max_abs());
        assert!(hilbert_einstein_density(&jp).abs() < 1e-12);
    }

    #[test]
    fn schwarzschild_zero_connection_violates_connection_equations() {
        let mut c = schwarzschild();
        c.set_zero_connection();
        let f = he_field_equations(&c.jet_point(&[0.0, 3.0, 1.1, 0.4]).unwrap());
        assert!(f.connection.max_abs() > 1e-3);
    }
}
