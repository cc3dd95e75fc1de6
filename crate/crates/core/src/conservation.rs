//! Momenta, energy-momentum current and superpotential of the
//! Hilbert–Einstein Lagrangian, with flux integrals of the superpotential.
//!
//! The superpotential is `U^{μλ} = π^{μλ}_α^ν (∂_ν τ^α − Γ_σ^α_ν τ^σ)`,
//! i.e. the momenta contracted with the covariant derivative of `τ`.

use rayon::prelude::*;

use crate::expr::{Expr, Jet2};
use crate::gravity::field::lgr_density;
use crate::gravity::tensor::{delta, DIM, T1, T2, T4, Z2, Z4};
use crate::gravity::{Chart, JetPoint, TensorValue, Variance};
use crate::quadrature::gauss_legendre_on;
use crate::{Error, Result};

/// Four component expressions of a vector field `τ^μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFieldTau {
    comps: Vec<Expr>,
}

impl VectorFieldTau {
    pub fn new(comps: Vec<Expr>) -> VectorFieldTau {
        assert_eq!(comps.len(), DIM, "a vector field has 4 components");
        VectorFieldTau { comps }
    }

    pub fn components(&self) -> &[Expr] {
        &self.comps
    }

    pub fn set_component(&mut self, mu: usize, e: Expr) {
        self.comps[mu] = e;
    }

    pub fn eval_jets(&self, point: &[f64]) -> Result<Vec<Jet2>> {
        self.comps.iter().map(|e| Ok(e.eval_jet2(point)?)).collect()
    }
}

/// `π^{λν}_α^β` indexed `[λ][ν][α][β]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentaValue {
    pub pi: T4,
}

impl MomentaValue {
    pub fn to_tensor(&self) -> TensorValue {
        use Variance::{Down, Up};
        TensorValue::from_t4("pi", [("lam", Up), ("nu", Up), ("al", Down), ("be", Up)], &self.pi)
    }
}

/// `π^{λν}_α^β = √|g| (g^{νβ} δ^λ_α − g^{λβ} δ^ν_α)`.
pub fn he_momenta(jp: &JetPoint) -> MomentaValue {
    let gi = jp.inverse_metric();
    let sq = jp.sqrt_abs_det();
    let mut pi = Z4;
    for la in 0..DIM {
        for nu in 0..DIM {
            for al in 0..DIM {
                for be in 0..DIM {
                    pi[la][nu][al][be] = sq * (gi[nu][be] * delta(la, al) - gi[la][be] * delta(nu, al));
                }
            }
        }
    }
    MomentaValue { pi }
}

/// `∂L/∂Γ_ν^α_β = π^{λν}_α^σ Γ_λ^β_σ − π^{λν}_σ^β Γ_λ^σ_α`, indexed
/// `[ν][α][β]`.
pub fn connection_momenta(jp: &JetPoint) -> [[[f64; DIM]; DIM]; DIM] {
    let pi = he_momenta(jp).pi;
    let k = jp.connection();
    let mut out = [[[0.0; DIM]; DIM]; DIM];
    for nu in 0..DIM {
        for al in 0..DIM {
            for be in 0..DIM {
                let mut s = 0.0;
                for la in 0..DIM {
                    for si in 0..DIM {
                        s += pi[la][nu][al][si] * k[la][be][si] - pi[la][nu][si][be] * k[la][si][al];
                    }
                }
                out[nu][al][be] = s;
            }
        }
    }
    out
}

/// `L_GR` at the point.
pub fn lagrangian(jp: &JetPoint) -> f64 {
    lgr_density(jp.inverse_metric(), jp.sqrt_abs_det(), jp.connection(), jp.connection_derivatives())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpotentialValue {
    /// Antisymmetrized `U^{μλ}`.
    pub u: T2,
    /// Largest `|U^{μλ} + U^{λμ}|` before antisymmetrization.
    pub antisymmetry_residual: f64,
}

pub fn komar_superpotential(jp: &JetPoint) -> Result<SuperpotentialValue> {
    let tau = jp.require_tau()?;
    let pi = he_momenta(jp).pi;
    let k = jp.connection();
    let mut dtau = Z2;
    for nu in 0..DIM {
        for al in 0..DIM {
            let conn: f64 = (0..DIM).map(|s| k[s][al][nu] * tau.value[s]).sum();
            dtau[nu][al] = tau.d1[nu][al] - conn;
        }
    }
    let mut raw = Z2;
    for mu in 0..DIM {
        for la in 0..DIM {
            let mut s = 0.0;
            for al in 0..DIM {
                for nu in 0..DIM {
                    s += pi[mu][la][al][nu] * dtau[nu][al];
                }
            }
            raw[mu][la] = s;
        }
    }
    let mut u = Z2;
    let mut res: f64 = 0.0;
    for mu in 0..DIM {
        for la in 0..DIM {
            res = res.max((raw[mu][la] + raw[la][mu]).abs());
            u[mu][la] = 0.5 * (raw[mu][la] - raw[la][mu]);
        }
    }
    Ok(SuperpotentialValue { u, antisymmetry_residual: res })
}

/// The energy-momentum current `𝒥^λ` along `τ`.
pub fn em_current(jp: &JetPoint) -> Result<T1> {
    let tau = jp.require_tau()?;
    let pi = he_momenta(jp).pi;
    let k = jp.connection();
    let dk = jp.connection_derivatives();
    let l = lagrangian(jp);
    let mut j = [0.0; DIM];
    for la in 0..DIM {
        let mut s = 0.0;
        for mu in 0..DIM {
            for al in 0..DIM {
                for be in 0..DIM {
                    let p = pi[la][mu][al][be];
                    if p == 0.0 {
                        continue;
                    }
                    let mut lie = 0.0;
                    for ga in 0..DIM {
                        lie += dk[ga][mu][al][be] * tau.value[ga];
                        lie -= k[mu][ga][be] * tau.d1[ga][al];
                        lie += k[mu][al][ga] * tau.d1[be][ga];
                        lie += k[ga][al][be] * tau.d1[mu][ga];
                    }
                    lie -= tau.d2[mu][be][al];
                    s += p * lie;
                }
            }
        }
        j[la] = s - tau.value[la] * l;
    }
    Ok(j)
}

/// Step used for finite-difference divergences of the superpotential.
pub const DIVERGENCE_STEP: f64 = 1e-4;

fn shifted(x: &T1, steps: &[(usize, f64)]) -> T1 {
    let mut y = *x;
    for &(i, h) in steps {
        y[i] += h;
    }
    y
}

fn superpotential_at(chart: &Chart, x: &T1) -> Result<T2> {
    Ok(komar_superpotential(&chart.jet_point(x)?)?.u)
}

/// Runs `f(h)` with `h` halved (at most 10 times) while it fails on a
/// numeric domain error.
fn with_adaptive_step<T>(h0: f64, mut f: impl FnMut(f64) -> Result<T>) -> Result<T> {
    let mut h = h0;
    for _ in 0..10 {
        match f(h) {
            Err(e) if e.is_numeric() => h *= 0.5,
            other => return other,
        }
    }
    f(h)
}

/// `d_μ U^{μλ}` by central differences with step `h`.
pub fn superpotential_divergence(chart: &Chart, x: &T1, h: f64) -> Result<T1> {
    with_adaptive_step(h, |h| {
        let mut div = [0.0; DIM];
        for mu in 0..DIM {
            let up = superpotential_at(chart, &shifted(x, &[(mu, h)]))?;
            let dn = superpotential_at(chart, &shifted(x, &[(mu, -h)]))?;
            for la in 0..DIM {
                div[la] += (up[mu][la] - dn[mu][la]) / (2.0 * h);
            }
        }
        Ok(div)
    })
}

/// `d_λ d_μ U^{μλ}` by nested central differences with step `h`.
pub fn superpotential_double_divergence(chart: &Chart, x: &T1, h: f64) -> Result<f64> {
    with_adaptive_step(h, |h| {
        let mut s = 0.0;
        for mu in 0..DIM {
            for la in 0..DIM {
                let v = |a: f64, b: f64| -> Result<f64> {
                    Ok(superpotential_at(chart, &shifted(x, &[(mu, a), (la, b)]))?[mu][la])
                };
                let d = (v(h, h)? - v(h, -h)? - v(-h, h)? + v(-h, -h)?) / (4.0 * h * h);
                s += d;
            }
        }
        Ok(s)
    })
}

/// A family of coordinate spheres: `x[radial] = r`, angles over the two
/// given axes and ranges, the remaining coordinate taken from `base`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereFamily {
    pub base: T1,
    pub radial: usize,
    pub polar: (usize, f64, f64),
    pub azimuthal: (usize, f64, f64),
    /// The component `U^{radial, time}` is integrated.
    pub time: usize,
}

impl SphereFamily {
    /// Spherical coordinates ordered `(t, r, θ, φ)` at `t = 0`.
    pub fn spherical() -> SphereFamily {
        SphereFamily {
            base: [0.0; DIM],
            radial: 1,
            polar: (2, 0.0, std::f64::consts::PI),
            azimuthal: (3, 0.0, 2.0 * std::f64::consts::PI),
            time: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxResult {
    pub radius: f64,
    pub nodes: usize,
    pub value: f64,
}

/// `∮ U^{r t} dθ dφ` over the sphere of coordinate radius `radius` with an
/// `nodes × nodes` Gauss–Legendre rule.
pub fn komar_flux(chart: &Chart, family: &SphereFamily, radius: f64, nodes: usize) -> Result<FluxResult> {
    if nodes == 0 {
        return Err(Error::InvalidArgument("quadrature needs at least one node".into()));
    }
    let (th, wth) = gauss_legendre_on(nodes, family.polar.1, family.polar.2);
    let (ph, wph) = gauss_legendre_on(nodes, family.azimuthal.1, family.azimuthal.2);
    let terms: Vec<Result<f64>> = (0..nodes * nodes)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / nodes, k % nodes);
            let mut x = family.base;
            x[family.radial] = radius;
            x[family.polar.0] = th[i];
            x[family.azimuthal.0] = ph[j];
            let u = superpotential_at(chart, &x)?;
            Ok(wth[i] * wph[j] * u[family.radial][family.time])
        })
        .collect();
    let mut value = 0.0;
    for t in terms {
        value += t?;
    }
    Ok(FluxResult { radius, nodes, value })
}

/// Largest relative deviation of the fluxes from their mean.
pub fn relative_spread(fluxes: &[FluxResult]) -> f64 {
    let n = fluxes.len() as f64;
    let mean = fluxes.iter().map(|f| f.value).sum::<f64>() / n;
    let dev = fluxes.iter().map(|f| (f.value - mean).abs()).fold(0.0, f64::max);
    if mean == 0.0 {
        dev
    } else {
        dev / mean.abs()
    }
}
