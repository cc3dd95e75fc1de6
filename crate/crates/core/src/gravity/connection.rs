//! Christoffel symbols, torsion, non-metricity, contorsion, the connection
//! decomposition, curvature and Ricci contractions.

use super::chart::{christoffel_first, raise_middle, JetPoint};
use super::tensor::{delta, eta, max_abs3, TensorValue, Variance, DIM, T2, T3, T4, Z2, Z3, Z4};
use crate::Result;

use Variance::{Down as D, Up as U};

#[derive(Debug, Clone)]
pub struct MetricFromTetrad {
    pub g: TensorValue,
    pub ginv: TensorValue,
    /// Largest deviation in `g^{μν}h^a_μ h^b_ν = η^{ab}` and
    /// `g_{μν}h^μ_a h^ν_b = η_{ab}`.
    pub orthonormality_residual: f64,
}

/// The metric induced by the declared tetrad, with orthonormality residuals.
pub fn metric_from_tetrad(jp: &JetPoint) -> Result<MetricFromTetrad> {
    let t = jp.require_tetrad()?;
    let mut res: f64 = 0.0;
    for a in 0..DIM {
        for b in 0..DIM {
            let mut up = 0.0;
            let mut down = 0.0;
            for m in 0..DIM {
                for n in 0..DIM {
                    up += jp.ginv[m][n] * t.h[a][m] * t.h[b][n];
                    down += jp.g[m][n] * t.frame[m][a] * t.frame[n][b];
                }
            }
            let target = if a == b { eta(a) } else { 0.0 };
            res = res.max((up - target).abs()).max((down - target).abs());
        }
    }
    Ok(MetricFromTetrad {
        g: TensorValue::from_t2("g", [("mu", D), ("nu", D)], &jp.g),
        ginv: TensorValue::from_t2("ginv", [("mu", U), ("nu", U)], &jp.ginv),
        orthonormality_residual: res,
    })
}

#[derive(Debug, Clone)]
pub struct Christoffel {
    /// `{_{μνα}}`.
    pub first: TensorValue,
    /// `g^{βν}{_{μνα}}` as `_mu^be_al`.
    pub mixed: TensorValue,
}

pub fn christoffel(jp: &JetPoint) -> Christoffel {
    let first = christoffel_first(&jp.dg);
    let mixed = raise_middle(&jp.ginv, &first);
    Christoffel {
        first: TensorValue::from_t3("christoffel", [("mu", D), ("nu", D), ("al", D)], &first),
        mixed: TensorValue::from_t3("christoffel", [("mu", D), ("be", U), ("al", D)], &mixed),
    }
}

/// `Γ_{μνα} = g_{νβ} Γ_μ^β_α`.
pub fn lower_connection(g: &T2, gamma: &T3) -> T3 {
    let mut out = Z3;
    for mu in 0..DIM {
        for nu in 0..DIM {
            for al in 0..DIM {
                out[mu][nu][al] = (0..DIM).map(|be| g[nu][be] * gamma[mu][be][al]).sum();
            }
        }
    }
    out
}

/// `T_μ^ν_λ = Γ_μ^ν_λ − Γ_λ^ν_μ`.
pub fn torsion_of(gamma: &T3) -> T3 {
    let mut t = Z3;
    for mu in 0..DIM {
        for nu in 0..DIM {
            for la in 0..DIM {
                t[mu][nu][la] = gamma[mu][nu][la] - gamma[la][nu][mu];
            }
        }
    }
    t
}

pub fn torsion(jp: &JetPoint) -> TensorValue {
    TensorValue::from_t3("T", [("mu", D), ("nu", U), ("lam", D)], &torsion_of(&jp.gamma))
}

/// `C_{μνα} = ∂_μ g_{να} + Γ_{μνα} + Γ_{μαν}`.
pub fn nonmetricity_of(g: &T2, dg: &T3, gamma: &T3) -> T3 {
    let low = lower_connection(g, gamma);
    let mut c = Z3;
    for mu in 0..DIM {
        for nu in 0..DIM {
            for al in 0..DIM {
                c[mu][nu][al] = dg[mu][nu][al] + (low[mu][nu][al] + low[mu][al][nu]);
            }
        }
    }
    c
}

pub fn nonmetricity(jp: &JetPoint) -> TensorValue {
    TensorValue::from_t3("C", [("mu", D), ("nu", D), ("al", D)], &nonmetricity_of(&jp.g, &jp.dg, &jp.gamma))
}

/// `S_{μνα} = ½(T_{νμα} + T_{ναμ} + T_{μνα} + C_{ανμ} − C_{ναμ})`.
pub fn contorsion_of(g: &T2, dg: &T3, gamma: &T3) -> T3 {
    let t = lower_connection(g, &torsion_of(gamma));
    let c = nonmetricity_of(g, dg, gamma);
    let mut s = Z3;
    for mu in 0..DIM {
        for nu in 0..DIM {
            for al in 0..DIM {
                let tors = t[nu][mu][al] + (t[nu][al][mu] + t[mu][nu][al]);
                s[mu][nu][al] = 0.5 * (tors + (c[al][nu][mu] - c[nu][al][mu]));
            }
        }
    }
    s
}

pub fn contorsion(jp: &JetPoint) -> TensorValue {
    TensorValue::from_t3("S", [("mu", D), ("nu", D), ("al", D)], &contorsion_of(&jp.g, &jp.dg, &jp.gamma))
}

/// Largest non-metricity component of `gamma` against the point's metric.
pub fn nonmetricity_residual(jp: &JetPoint, gamma: &T3) -> f64 {
    max_abs3(&nonmetricity_of(&jp.g, &jp.dg, gamma))
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub christoffel: TensorValue,
    pub contorsion: TensorValue,
    pub nonmetricity: TensorValue,
    /// Largest `|Γ_{μνα} − ({_{μνα}} + S_{μνα} + ½C_{μνα})|`.
    pub residual: f64,
}

/// Splits the lowered connection into Christoffel, contorsion and
/// non-metricity parts and reports the recomposition residual.
pub fn decompose_connection(jp: &JetPoint) -> Decomposition {
    let chr = christoffel_first(&jp.dg);
    let s = contorsion_of(&jp.g, &jp.dg, &jp.gamma);
    let c = nonmetricity_of(&jp.g, &jp.dg, &jp.gamma);
    let low = lower_connection(&jp.g, &jp.gamma);
    let mut diff = Z3;
    for mu in 0..DIM {
        for nu in 0..DIM {
            for al in 0..DIM {
                diff[mu][nu][al] = low[mu][nu][al] - (chr[mu][nu][al] + s[mu][nu][al] + 0.5 * c[mu][nu][al]);
            }
        }
    }
    let idx = [("mu", D), ("nu", D), ("al", D)];
    Decomposition {
        christoffel: TensorValue::from_t3("christoffel", idx, &chr),
        contorsion: TensorValue::from_t3("S", idx, &s),
        nonmetricity: TensorValue::from_t3("C", idx, &c),
        residual: max_abs3(&diff),
    }
}

/// `R_{λμ}^α_β` and the jet-splitting companion `𝓢_{λμ}^α_β`, both
/// indexed `[λ][μ][α][β]`, with `R + 𝓢 = 2 ∂_λ Γ_μ^α_β`.
pub fn curvature_of(gamma: &T3, dgamma: &T4) -> (T4, T4) {
    let mut r = Z4;
    let mut s = Z4;
    for la in 0..DIM {
        for mu in 0..DIM {
            for al in 0..DIM {
                for be in 0..DIM {
                    let d1 = dgamma[la][mu][al][be];
                    let d2 = dgamma[mu][la][al][be];
                    let mut q1 = 0.0;
                    let mut q2 = 0.0;
                    for ga in 0..DIM {
                        q1 += gamma[la][ga][be] * gamma[mu][al][ga];
                        q2 += gamma[mu][ga][be] * gamma[la][al][ga];
                    }
                    s[la][mu][al][be] = (d1 + d2) - (q1 - q2);
                    if la < mu {
                        let anti = (d1 - d2) + (q1 - q2);
                        r[la][mu][al][be] = anti;
                        r[mu][la][al][be] = -anti;
                    }
                }
            }
        }
    }
    (r, s)
}

#[derive(Debug, Clone)]
pub struct Curvature {
    pub r: TensorValue,
    pub s: TensorValue,
}

pub fn curvature(jp: &JetPoint) -> Curvature {
    let (r, s) = curvature_of(&jp.gamma, &jp.dgamma);
    let idx = [("lam", D), ("mu", D), ("al", U), ("be", D)];
    Curvature { r: TensorValue::from_t4("R", idx, &r), s: TensorValue::from_t4("S_jet", idx, &s) }
}

/// `R_{λμ}^λ_β` indexed `[μ][β]`.
pub fn ricci_contraction(r: &T4) -> T2 {
    let mut out = Z2;
    for mu in 0..DIM {
        for be in 0..DIM {
            out[mu][be] = (0..DIM).map(|la| r[la][mu][la][be]).sum();
        }
    }
    out
}

/// `g^{μβ} R_{λμ}^λ_β`.
pub fn scalar_of(ginv: &T2, r: &T4) -> f64 {
    let ric = ricci_contraction(r);
    let mut s = 0.0;
    for mu in 0..DIM {
        for be in 0..DIM {
            s += ginv[mu][be] * ric[mu][be];
        }
    }
    s
}

#[derive(Debug, Clone)]
pub struct Ricci {
    /// `R_c = ½ R_{λμ}^λ_β`.
    pub normalized: TensorValue,
    /// `R_{λμ}^λ_β`.
    pub conventional: TensorValue,
    pub scalar: f64,
}

pub fn ricci_and_scalar(jp: &JetPoint) -> Ricci {
    let (r, _) = curvature_of(&jp.gamma, &jp.dgamma);
    let conv = ricci_contraction(&r);
    let mut half = conv;
    for row in half.iter_mut() {
        for x in row.iter_mut() {
            *x *= 0.5;
        }
    }
    let idx = [("mu", D), ("be", D)];
    Ricci {
        normalized: TensorValue::from_t2("Rc", idx, &half),
        conventional: TensorValue::from_t2("Ric", idx, &conv),
        scalar: scalar_of(&jp.ginv, &r),
    }
}

/// `δ` as a convenience tensor for affine constructions.
pub(crate) fn kronecker() -> T2 {
    std::array::from_fn(|i| std::array::from_fn(|j| delta(i, j)))
}
