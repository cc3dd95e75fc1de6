//! Finite diffeomorphism covariance of the Hilbert–Einstein density.
//!
//! Fields are pulled back along `x(y)` as multivariate Taylor series in
//! `y`, so the transformed jets are exact to second order. When no inverse
//! map is declared it is obtained by series reversion of `y(x)`.

use std::sync::Arc;

use super::chart::{Chart, ConnectionSpec, FieldJets, JetPoint};
use super::field::hilbert_einstein_density;
use super::tensor::{DIM, T1};
use crate::expr::{Expr, MonomialTable, TaylorSeries};
use crate::{Error, Result};

/// Order of the series carried through the pullback; connection jets need
/// two orders beyond the Jacobian's second derivatives.
const SERIES_ORDER: usize = 4;

/// A coordinate change `y = y(x)` with an optional declared inverse.
#[derive(Debug, Clone)]
pub struct Diffeo {
    forward: Vec<Expr>,
    inverse: Option<Vec<Expr>>,
}

impl Diffeo {
    /// Both maps are written over the chart's coordinate names; the inverse
    /// reads them as the new coordinates `y`.
    pub fn new(chart: &Chart, forward: [&str; 4], inverse: Option<[&str; 4]>) -> Result<Diffeo> {
        let parse = |v: [&str; 4]| v.iter().map(|s| chart.parse(s)).collect::<Result<Vec<_>>>();
        Ok(Diffeo { forward: parse(forward)?, inverse: inverse.map(parse).transpose()? })
    }

    pub fn identity(chart: &Chart) -> Result<Diffeo> {
        let c = chart.coords();
        let names: Vec<&str> = c.iter().map(String::as_str).collect();
        Diffeo::new(chart, [names[0], names[1], names[2], names[3]], Some([names[0], names[1], names[2], names[3]]))
    }

    pub fn forward(&self) -> &[Expr] {
        &self.forward
    }

    pub fn map_point(&self, x: &T1) -> Result<T1> {
        let mut y = [0.0; DIM];
        for (i, e) in self.forward.iter().enumerate() {
            y[i] = e.eval_f64(x)?;
        }
        Ok(y)
    }
}

#[derive(Debug, Clone)]
pub struct CovarianceReport {
    pub x: T1,
    pub y: T1,
    /// `L(x)`.
    pub original: f64,
    /// `L'(y) · |det ∂y/∂x|`.
    pub transformed: f64,
    pub jacobian_det: f64,
    pub residual: f64,
    /// The same comparison for `√|det g|` alone.
    pub density_residual: f64,
}

type Series = TaylorSeries;

fn mul(a: &Series, b: &Series) -> Series {
    a.clone() * b.clone()
}

fn sum(terms: impl Iterator<Item = Series>, table: &Arc<MonomialTable>) -> Series {
    terms.fold(TaylorSeries::constant(table, 0.0), |acc, t| acc + t)
}

fn eval_all(es: &[Expr], inputs: &[Series]) -> Result<Vec<Series>> {
    es.iter().map(|e| Ok(e.eval_with(inputs)?)).collect()
}

type SeriesMatrix = Vec<Vec<Series>>;

fn matmul_series(a: &SeriesMatrix, b: &SeriesMatrix, table: &Arc<MonomialTable>) -> SeriesMatrix {
    (0..DIM)
        .map(|i| (0..DIM).map(|j| sum((0..DIM).map(|k| mul(&a[i][k], &b[k][j])), table)).collect())
        .collect()
}

/// Inverse of the series matrix `m` by Newton iteration from `m0_inv`.
fn invert_series(m: &SeriesMatrix, m0_inv: &nalgebra::Matrix4<f64>, table: &Arc<MonomialTable>) -> SeriesMatrix {
    let mut w: SeriesMatrix = (0..DIM)
        .map(|i| (0..DIM).map(|j| TaylorSeries::constant(table, m0_inv[(i, j)])).collect())
        .collect();
    let mut reached = 1;
    while reached <= table.order() {
        let mw = matmul_series(m, &w, table);
        let corr: SeriesMatrix = (0..DIM)
            .map(|i| {
                (0..DIM)
                    .map(|j| TaylorSeries::constant(table, if i == j { 2.0 } else { 0.0 }) - mw[i][j].clone())
                    .collect()
            })
            .collect();
        w = matmul_series(&w, &corr, table);
        reached *= 2;
    }
    w
}

/// `x(y)` as series about `y0`, by declared inverse or by fixed-Jacobian
/// series reversion of the forward map.
fn inverse_series(d: &Diffeo, x0: &T1, y0: &T1, j0: &nalgebra::Matrix4<f64>, table: &Arc<MonomialTable>) -> Result<Vec<Series>> {
    let yvars: Vec<Series> = (0..DIM).map(|i| TaylorSeries::variable(table, i, y0[i])).collect();
    if let Some(inv) = &d.inverse {
        let x = eval_all(inv, &yvars)?;
        let back: f64 = (0..DIM).map(|i| (x[i].coeffs()[0] - x0[i]).abs()).fold(0.0, f64::max);
        let scale = 1.0 + x0.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if back > 1e-10 * scale {
            return Err(Error::InvalidArgument(format!(
                "declared inverse does not map {y0:?} back to {x0:?} (off by {back:.3e})"
            )));
        }
        return Ok(x);
    }
    let j0inv = j0.try_inverse().ok_or_else(|| Error::degenerate("diffeomorphism Jacobian not invertible", x0))?;
    let mut x: Vec<Series> = (0..DIM).map(|i| TaylorSeries::constant(table, x0[i])).collect();
    for _ in 0..=table.order() {
        let y = eval_all(&d.forward, &x)?;
        let r: Vec<Series> = (0..DIM).map(|i| yvars[i].clone() - y[i].clone()).collect();
        x = (0..DIM)
            .map(|m| x[m].clone() + sum((0..DIM).map(|i| r[i].scaled(j0inv[(m, i)])), table))
            .collect();
    }
    Ok(x)
}

/// Jets of the chart's fields pulled back along the series map `x`, whose
/// Jacobian at the expansion point is `jac0 = ∂x/∂y`.
fn pulled_back_jets(chart: &Chart, x: &[Series], jac0_inv: &nalgebra::Matrix4<f64>, table: &Arc<MonomialTable>) -> Result<FieldJets> {
    let jac: SeriesMatrix = (0..DIM).map(|m| (0..DIM).map(|l| x[m].diff(l)).collect()).collect();
    let mut jets = FieldJets::default();
    if let Some(metric) = chart.metric_exprs() {
        let g = eval_all(metric, x)?;
        let mut out = Vec::with_capacity(DIM * DIM);
        for l in 0..DIM {
            for n in 0..DIM {
                let s = sum(
                    (0..DIM).flat_map(|a| (0..DIM).map(move |b| (a, b))).map(|(a, b)| mul(&mul(&jac[a][l], &jac[b][n]), &g[a * DIM + b])),
                    table,
                );
                out.push(s.to_jet2());
            }
        }
        jets.metric = Some(out);
    }
    if let Some(tetrad) = chart.tetrad_exprs() {
        let h = eval_all(tetrad, x)?;
        let mut out = Vec::with_capacity(DIM * DIM);
        for a in 0..DIM {
            for l in 0..DIM {
                out.push(sum((0..DIM).map(|m| mul(&h[a * DIM + m], &jac[m][l])), table).to_jet2());
            }
        }
        jets.tetrad = Some(out);
    }
    if let ConnectionSpec::Components(comps) = chart.connection() {
        let k = eval_all(comps, x)?;
        let w = invert_series(&jac, jac0_inv, table);
        // k'_λ^μ_ν = W^μ_a J^b_λ J^c_ν k_b^a_c − W^μ_a ∂_λ∂_ν x^a
        let idx = |b: usize, a: usize, c: usize| (b * DIM + a) * DIM + c;
        let mut m1 = vec![TaylorSeries::constant(table, 0.0); DIM * DIM * DIM];
        for b in 0..DIM {
            for mu in 0..DIM {
                for c in 0..DIM {
                    m1[idx(b, mu, c)] = sum((0..DIM).map(|a| mul(&w[mu][a], &k[idx(b, a, c)])), table);
                }
            }
        }
        let mut m2 = vec![TaylorSeries::constant(table, 0.0); DIM * DIM * DIM];
        for l in 0..DIM {
            for mu in 0..DIM {
                for c in 0..DIM {
                    m2[idx(l, mu, c)] = sum((0..DIM).map(|b| mul(&jac[b][l], &m1[idx(b, mu, c)])), table);
                }
            }
        }
        let mut out = Vec::with_capacity(DIM * DIM * DIM);
        for l in 0..DIM {
            for mu in 0..DIM {
                for n in 0..DIM {
                    let hom = sum((0..DIM).map(|c| mul(&m2[idx(l, mu, c)], &jac[c][n])), table);
                    let inh = sum((0..DIM).map(|a| mul(&w[mu][a], &jac[a][l].diff(n))), table);
                    out.push((hom - inh).to_jet2());
                }
            }
        }
        jets.connection = Some(out);
    }
    Ok(jets)
}

/// Transforms the chart's fields by `diffeo` and compares the weighted
/// Lagrangian density at the image of `x0` with the original at `x0`.
pub fn covariance_check(chart: &Chart, diffeo: &Diffeo, x0: &T1) -> Result<CovarianceReport> {
    let table = MonomialTable::new(DIM, SERIES_ORDER);
    let mut j0 = nalgebra::Matrix4::zeros();
    let mut y0 = [0.0; DIM];
    for (i, e) in diffeo.forward.iter().enumerate() {
        let j = e.eval_jet2(x0)?;
        y0[i] = j.value;
        for m in 0..DIM {
            j0[(i, m)] = j.grad[m];
        }
    }
    let jdet = j0.determinant();
    if !(jdet.abs() >= 1e-12) {
        return Err(Error::degenerate(format!("diffeomorphism Jacobian determinant {jdet:.3e} vanishes"), x0));
    }

    let xvars: Vec<Series> = (0..DIM).map(|i| TaylorSeries::variable(&table, i, x0[i])).collect();
    let id = nalgebra::Matrix4::identity();
    let orig = JetPoint::from_jets(*x0, pulled_back_jets(chart, &xvars, &id, &table)?)?;

    let x = inverse_series(diffeo, x0, &y0, &j0, &table)?;
    let trans = JetPoint::from_jets(y0, pulled_back_jets(chart, &x, &j0, &table)?)?;

    let original = hilbert_einstein_density(&orig);
    let transformed = hilbert_einstein_density(&trans) * jdet.abs();
    let density_residual = (trans.sqrt_abs_det() * jdet.abs() - orig.sqrt_abs_det()).abs();
    Ok(CovarianceReport {
        x: *x0,
        y: y0,
        original,
        transformed,
        jacobian_det: jdet,
        residual: (transformed - original).abs(),
        density_residual,
    })
}
