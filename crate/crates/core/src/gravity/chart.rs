//! Charts (field definitions as expressions) and their jets at a point.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;

use super::tensor::{eta, from_matrix, to_matrix, DIM, T1, T2, T3, T4, Z2, Z3, Z4};
use crate::conservation::VectorFieldTau;
use crate::dirac::SpinorFieldSample;
use crate::expr::{Expr, Jet2};
use crate::{Error, Result};

/// Points with `|det g|` below this are refused.
pub const MIN_ABS_DET: f64 = 1e-12;
/// Points where the tetrad condition number exceeds this are refused.
pub const MAX_TETRAD_CONDITION: f64 = 1e8;
/// Agreement required when a chart declares both a metric and a tetrad.
pub const METRIC_TETRAD_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum ConnectionSpec {
    LeviCivita,
    /// `Γ_λ^μ_ν` at flat index `16λ + 4μ + ν`.
    Components(Vec<Expr>),
}

/// A four-dimensional coordinate chart with analytic field components.
#[derive(Debug, Clone)]
pub struct Chart {
    name: String,
    coords: Arc<[String]>,
    constants: Arc<[(String, f64)]>,
    metric: Option<Vec<Expr>>,
    tetrad: Option<Vec<Expr>>,
    connection: ConnectionSpec,
    spinor: Option<SpinorFieldSample>,
    tau: Option<VectorFieldTau>,
}

fn check_index(i: usize, what: &str) -> Result<()> {
    if i < DIM {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{what} index {i} out of range 0..3")))
    }
}

impl Chart {
    pub fn new(name: impl Into<String>, coords: &[&str], constants: &[(&str, f64)]) -> Result<Chart> {
        if coords.len() != DIM {
            return Err(Error::InvalidArgument(format!(
                "a chart needs exactly 4 coordinates, got {}",
                coords.len()
            )));
        }
        let mut seen = BTreeMap::new();
        for c in coords.iter().copied().chain(constants.iter().map(|(n, _)| *n)) {
            if seen.insert(c, ()).is_some() {
                return Err(Error::InvalidArgument(format!("name '{c}' declared twice")));
            }
        }
        Ok(Chart {
            name: name.into(),
            coords: coords.iter().map(|s| s.to_string()).collect(),
            constants: constants.iter().map(|(n, v)| (n.to_string(), *v)).collect(),
            metric: None,
            tetrad: None,
            connection: ConnectionSpec::LeviCivita,
            spinor: None,
            tau: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn constants(&self) -> &[(String, f64)] {
        &self.constants
    }

    pub fn constant(&self, name: &str) -> Option<f64> {
        self.constants.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    /// Parses an expression over this chart's coordinates and constants.
    pub fn parse(&self, source: &str) -> Result<Expr> {
        Ok(Expr::parse_shared(source, Arc::clone(&self.coords), Arc::clone(&self.constants))?)
    }

    fn zero(&self) -> Expr {
        Expr::constant(0.0, Arc::clone(&self.coords), Arc::clone(&self.constants))
    }

    pub fn has_metric(&self) -> bool {
        self.metric.is_some()
    }

    pub fn has_tetrad(&self) -> bool {
        self.tetrad.is_some()
    }

    /// Metric expressions at flat index `4μ + ν`.
    pub fn metric_exprs(&self) -> Option<&Vec<Expr>> {
        self.metric.as_ref()
    }

    /// Coframe expressions at flat index `4a + μ`.
    pub fn tetrad_exprs(&self) -> Option<&Vec<Expr>> {
        self.tetrad.as_ref()
    }

    pub fn connection(&self) -> &ConnectionSpec {
        &self.connection
    }

    pub fn spinor(&self) -> Option<&SpinorFieldSample> {
        self.spinor.as_ref()
    }

    pub fn tau(&self) -> Option<&VectorFieldTau> {
        self.tau.as_ref()
    }

    /// Metric component `g_{μν}`; also sets `g_{νμ}`.
    pub fn set_metric(&mut self, mu: usize, nu: usize, source: &str) -> Result<()> {
        check_index(mu, "metric")?;
        check_index(nu, "metric")?;
        let e = self.parse(source)?;
        let zero = self.zero();
        let m = self.metric.get_or_insert_with(|| vec![zero; DIM * DIM]);
        m[mu * DIM + nu] = e.clone();
        m[nu * DIM + mu] = e;
        Ok(())
    }

    /// Coframe component `h^a_μ`.
    pub fn set_tetrad(&mut self, a: usize, mu: usize, source: &str) -> Result<()> {
        check_index(a, "tetrad")?;
        check_index(mu, "tetrad")?;
        let e = self.parse(source)?;
        let zero = self.zero();
        self.tetrad.get_or_insert_with(|| vec![zero; DIM * DIM])[a * DIM + mu] = e;
        Ok(())
    }

    /// Connection component `Γ_λ^μ_ν`; replaces a Levi-Civita declaration.
    pub fn set_connection(&mut self, lam: usize, mu: usize, nu: usize, source: &str) -> Result<()> {
        for i in [lam, mu, nu] {
            check_index(i, "connection")?;
        }
        let e = self.parse(source)?;
        if let ConnectionSpec::LeviCivita = self.connection {
            self.connection = ConnectionSpec::Components(vec![self.zero(); DIM * DIM * DIM]);
        }
        if let ConnectionSpec::Components(c) = &mut self.connection {
            c[(lam * DIM + mu) * DIM + nu] = e;
        }
        Ok(())
    }

    /// A declared connection with every component zero.
    pub fn set_zero_connection(&mut self) {
        self.connection = ConnectionSpec::Components(vec![self.zero(); DIM * DIM * DIM]);
    }

    pub fn set_levi_civita(&mut self) {
        self.connection = ConnectionSpec::LeviCivita;
    }

    /// Real or imaginary part of the spinor component `ψ^A`.
    pub fn set_spinor(&mut self, a: usize, imaginary: bool, source: &str) -> Result<()> {
        check_index(a, "spinor")?;
        let e = self.parse(source)?;
        let zero = self.zero();
        let s = self.spinor.get_or_insert_with(|| SpinorFieldSample::new(vec![(zero.clone(), zero); DIM]));
        s.set_component(a, imaginary, e);
        Ok(())
    }

    pub fn set_tau(&mut self, mu: usize, source: &str) -> Result<()> {
        check_index(mu, "tau")?;
        let e = self.parse(source)?;
        let zero = self.zero();
        self.tau.get_or_insert_with(|| VectorFieldTau::new(vec![zero; DIM])).set_component(mu, e);
        Ok(())
    }

    pub fn clear_metric(&mut self) {
        self.metric = None;
    }

    pub fn clear_tetrad(&mut self) {
        self.tetrad = None;
    }

    /// Builder form of [`Chart::set_metric`] over `(μ, ν, expr)` entries.
    pub fn with_metric(mut self, entries: &[(usize, usize, &str)]) -> Result<Chart> {
        for &(m, n, s) in entries {
            self.set_metric(m, n, s)?;
        }
        Ok(self)
    }

    pub fn with_diagonal_metric(self, diag: [&str; 4]) -> Result<Chart> {
        let entries: Vec<_> = diag.iter().enumerate().map(|(i, s)| (i, i, *s)).collect();
        self.with_metric(&entries)
    }

    pub fn with_tetrad(mut self, entries: &[(usize, usize, &str)]) -> Result<Chart> {
        for &(a, m, s) in entries {
            self.set_tetrad(a, m, s)?;
        }
        Ok(self)
    }

    pub fn with_connection(mut self, entries: &[(usize, usize, usize, &str)]) -> Result<Chart> {
        self.set_zero_connection();
        for &(l, m, n, s) in entries {
            self.set_connection(l, m, n, s)?;
        }
        Ok(self)
    }

    /// Spinor components as `(A, re, im)` entries.
    pub fn with_spinor(mut self, entries: &[(usize, &str, &str)]) -> Result<Chart> {
        for &(a, re, im) in entries {
            self.set_spinor(a, false, re)?;
            self.set_spinor(a, true, im)?;
        }
        Ok(self)
    }

    pub fn with_tau(mut self, comps: [&str; 4]) -> Result<Chart> {
        for (mu, s) in comps.iter().enumerate() {
            self.set_tau(mu, s)?;
        }
        Ok(self)
    }

    /// Evaluates every declared field to second order at `point`.
    pub fn field_jets(&self, point: &T1) -> Result<FieldJets> {
        let eval = |es: &Vec<Expr>| -> Result<Vec<Jet2>> {
            es.iter().map(|e| Ok(e.eval_jet2(point)?)).collect()
        };
        Ok(FieldJets {
            metric: self.metric.as_ref().map(eval).transpose()?,
            tetrad: self.tetrad.as_ref().map(eval).transpose()?,
            connection: match &self.connection {
                ConnectionSpec::LeviCivita => None,
                ConnectionSpec::Components(c) => Some(eval(c)?),
            },
            spinor: self.spinor.as_ref().map(|s| s.eval_jets(point)).transpose()?,
            tau: self.tau.as_ref().map(|t| t.eval_jets(point)).transpose()?,
        })
    }

    pub fn jet_point(&self, point: &T1) -> Result<JetPoint> {
        JetPoint::from_jets(*point, self.field_jets(point)?)
    }
}

/// Raw second-order jets of the declared field components at a point.
///
/// Layouts: metric `4μ + ν`, tetrad `4a + μ`, connection `16λ + 4μ + ν`.
/// A `None` connection means Levi-Civita.
#[derive(Debug, Clone, Default)]
pub struct FieldJets {
    pub metric: Option<Vec<Jet2>>,
    pub tetrad: Option<Vec<Jet2>>,
    pub connection: Option<Vec<Jet2>>,
    /// `(re ψ^A, im ψ^A)`.
    pub spinor: Option<Vec<(Jet2, Jet2)>>,
    pub tau: Option<Vec<Jet2>>,
}

/// Coframe `h^a_μ`, frame `h^μ_a` and their first derivatives.
#[derive(Debug, Clone)]
pub struct TetradJet {
    /// `h[a][μ] = h^a_μ`.
    pub h: T2,
    /// `dh[ρ][a][μ] = ∂_ρ h^a_μ`.
    pub dh: T3,
    /// `frame[μ][a] = h^μ_a`.
    pub frame: T2,
    /// `dframe[ρ][μ][a] = ∂_ρ h^μ_a`.
    pub dframe: T3,
    /// Ratio of extreme singular values of the coframe matrix.
    pub condition: f64,
}

#[derive(Debug, Clone)]
pub struct SpinorJet {
    pub value: [Complex64; DIM],
    /// `grad[ρ][A] = ∂_ρ ψ^A`.
    pub grad: [[Complex64; DIM]; DIM],
}

#[derive(Debug, Clone)]
pub struct TauJet {
    pub value: T1,
    /// `d1[ρ][α] = ∂_ρ τ^α`.
    pub d1: T2,
    /// `d2[ρ][σ][α] = ∂_ρ ∂_σ τ^α`.
    pub d2: T3,
}

/// All field data at one chart point.
#[derive(Debug, Clone)]
pub struct JetPoint {
    pub(crate) point: T1,
    pub(crate) g: T2,
    pub(crate) ginv: T2,
    pub(crate) det: f64,
    /// `dg[ρ][μ][ν] = ∂_ρ g_{μν}`.
    pub(crate) dg: T3,
    /// `ddg[ρ][σ][μ][ν]`; present whenever the metric jets were second order.
    pub(crate) ddg: T4,
    pub(crate) tetrad: Option<TetradJet>,
    /// `gamma[λ][μ][ν] = Γ_λ^μ_ν`.
    pub(crate) gamma: T3,
    /// `dgamma[ρ][λ][μ][ν] = ∂_ρ Γ_λ^μ_ν`.
    pub(crate) dgamma: T4,
    pub(crate) levi_civita: bool,
    pub(crate) spinor: Option<SpinorJet>,
    pub(crate) tau: Option<TauJet>,
}

fn check_jets(v: &[Jet2], len: usize, what: &str) -> Result<()> {
    if v.len() != len || v.iter().any(|j| j.nvars() != DIM) {
        return Err(Error::InvalidArgument(format!("{what} jets must be {len} jets in 4 variables")));
    }
    Ok(())
}

impl JetPoint {
    /// Builds the point from explicit jets, applying the domain checks.
    pub fn from_jets(point: T1, jets: FieldJets) -> Result<JetPoint> {
        let tetrad_metric = match &jets.tetrad {
            Some(t) => {
                check_jets(t, DIM * DIM, "tetrad")?;
                Some(metric_jets_from_tetrad(t))
            }
            None => None,
        };
        let (g, dg, ddg) = match (&jets.metric, tetrad_metric) {
            (Some(m), tm) => {
                check_jets(m, DIM * DIM, "metric")?;
                let own = metric_arrays(m);
                if let Some(tm) = tm {
                    let diff = (0..DIM)
                        .flat_map(|i| (0..DIM).map(move |j| (i, j)))
                        .map(|(i, j)| (own.0[i][j] - tm.0[i][j]).abs())
                        .fold(0.0, f64::max);
                    if diff > METRIC_TETRAD_TOLERANCE {
                        return Err(Error::InvalidArgument(format!(
                            "declared metric and tetrad disagree by {diff:.3e} at {point:?}"
                        )));
                    }
                }
                own
            }
            (None, Some(tm)) => tm,
            (None, None) => return Err(Error::MissingField { what: "a metric or tetrad" }),
        };

        let gm = to_matrix(&g);
        let det = gm.determinant();
        if !det.is_finite() || det.abs() < MIN_ABS_DET {
            return Err(Error::degenerate(format!("|det g| = {:.3e} is below {MIN_ABS_DET:e}", det.abs()), &point));
        }
        check_signature(&gm, &point)?;
        let inv = gm.try_inverse().ok_or_else(|| Error::degenerate("metric not invertible", &point))?;
        let mut ginv = from_matrix(&inv);
        for i in 0..DIM {
            for j in i + 1..DIM {
                let s = 0.5 * (ginv[i][j] + ginv[j][i]);
                ginv[i][j] = s;
                ginv[j][i] = s;
            }
        }

        let tetrad = match &jets.tetrad {
            Some(t) => Some(tetrad_jet(t, &point)?),
            None => None,
        };

        let (gamma, dgamma, levi_civita) = match &jets.connection {
            Some(c) => {
                check_jets(c, DIM * DIM * DIM, "connection")?;
                let mut gamma = Z3;
                let mut dgamma = Z4;
                for l in 0..DIM {
                    for m in 0..DIM {
                        for n in 0..DIM {
                            let j = &c[(l * DIM + m) * DIM + n];
                            gamma[l][m][n] = j.value;
                            for r in 0..DIM {
                                dgamma[r][l][m][n] = j.grad[r];
                            }
                        }
                    }
                }
                (gamma, dgamma, false)
            }
            None => {
                let (gamma, dgamma) = levi_civita_jet(&ginv, &dg, &ddg);
                (gamma, dgamma, true)
            }
        };

        let spinor = match &jets.spinor {
            Some(s) => {
                if s.len() != DIM {
                    return Err(Error::InvalidArgument("spinor needs 4 components".into()));
                }
                let mut value = [Complex64::new(0.0, 0.0); DIM];
                let mut grad = [[Complex64::new(0.0, 0.0); DIM]; DIM];
                for (a, (re, im)) in s.iter().enumerate() {
                    value[a] = Complex64::new(re.value, im.value);
                    for r in 0..DIM {
                        grad[r][a] = Complex64::new(re.grad[r], im.grad[r]);
                    }
                }
                Some(SpinorJet { value, grad })
            }
            None => None,
        };

        let tau = match &jets.tau {
            Some(t) => {
                check_jets(t, DIM, "tau")?;
                let mut value = [0.0; DIM];
                let mut d1 = Z2;
                let mut d2 = Z3;
                for (a, j) in t.iter().enumerate() {
                    value[a] = j.value;
                    for r in 0..DIM {
                        d1[r][a] = j.grad[r];
                        for s in 0..DIM {
                            d2[r][s][a] = j.hess(r, s);
                        }
                    }
                }
                Some(TauJet { value, d1, d2 })
            }
            None => None,
        };

        Ok(JetPoint { point, g, ginv, det, dg, ddg, tetrad, gamma, dgamma, levi_civita, spinor, tau })
    }

    pub fn point(&self) -> &T1 {
        &self.point
    }

    pub fn metric(&self) -> &T2 {
        &self.g
    }

    pub fn inverse_metric(&self) -> &T2 {
        &self.ginv
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    /// `√|det g|`.
    pub fn sqrt_abs_det(&self) -> f64 {
        self.det.abs().sqrt()
    }

    pub fn metric_derivatives(&self) -> &T3 {
        &self.dg
    }

    pub fn metric_second_derivatives(&self) -> &T4 {
        &self.ddg
    }

    pub fn tetrad(&self) -> Option<&TetradJet> {
        self.tetrad.as_ref()
    }

    pub fn require_tetrad(&self) -> Result<&TetradJet> {
        self.tetrad.as_ref().ok_or(Error::MissingField { what: "a tetrad" })
    }

    /// The connection `Γ_λ^μ_ν` in use (declared or Levi-Civita).
    pub fn connection(&self) -> &T3 {
        &self.gamma
    }

    pub fn connection_derivatives(&self) -> &T4 {
        &self.dgamma
    }

    pub fn is_levi_civita(&self) -> bool {
        self.levi_civita
    }

    pub fn spinor(&self) -> Option<&SpinorJet> {
        self.spinor.as_ref()
    }

    pub fn tau(&self) -> Option<&TauJet> {
        self.tau.as_ref()
    }

    pub fn require_tau(&self) -> Result<&TauJet> {
        self.tau.as_ref().ok_or(Error::MissingField { what: "a vector field tau" })
    }

    /// Number of positive and negative metric eigenvalues.
    pub fn signature_counts(&self) -> (usize, usize) {
        let e = SymmetricEigen::new(to_matrix(&self.g)).eigenvalues;
        (e.iter().filter(|&&x| x > 0.0).count(), e.iter().filter(|&&x| x < 0.0).count())
    }
}

fn check_signature(g: &Matrix4<f64>, point: &T1) -> Result<()> {
    let e = SymmetricEigen::new(*g).eigenvalues;
    let pos = e.iter().filter(|&&x| x > 0.0).count();
    let neg = e.iter().filter(|&&x| x < 0.0).count();
    if (pos, neg) != (1, 3) {
        return Err(Error::degenerate(
            format!("metric signature has {pos} positive and {neg} negative eigenvalues, expected (+,-,-,-)"),
            point,
        ));
    }
    Ok(())
}

fn metric_arrays(m: &[Jet2]) -> (T2, T3, T4) {
    let mut g = Z2;
    let mut dg = Z3;
    let mut ddg = Z4;
    for mu in 0..DIM {
        for nu in mu..DIM {
            let j = &m[mu * DIM + nu];
            for (a, b) in [(mu, nu), (nu, mu)] {
                g[a][b] = j.value;
                for r in 0..DIM {
                    dg[r][a][b] = j.grad[r];
                    for s in 0..DIM {
                        ddg[r][s][a][b] = j.hess(r, s);
                    }
                }
            }
        }
    }
    (g, dg, ddg)
}

/// `g_{μν} = η_ab h^a_μ h^b_ν` with exact first and second derivatives.
fn metric_jets_from_tetrad(t: &[Jet2]) -> (T2, T3, T4) {
    let h = |a: usize, m: usize| &t[a * DIM + m];
    let mut g = Z2;
    let mut dg = Z3;
    let mut ddg = Z4;
    for mu in 0..DIM {
        for nu in mu..DIM {
            let mut v = 0.0;
            let mut d = [0.0; DIM];
            let mut dd = Z2;
            for a in 0..DIM {
                let (x, y) = (h(a, mu), h(a, nu));
                let e = eta(a);
                v += e * x.value * y.value;
                for r in 0..DIM {
                    d[r] += e * (x.grad[r] * y.value + x.value * y.grad[r]);
                    for s in 0..DIM {
                        dd[r][s] += e
                            * (x.hess(r, s) * y.value
                                + x.grad[r] * y.grad[s]
                                + x.grad[s] * y.grad[r]
                                + x.value * y.hess(r, s));
                    }
                }
            }
            for (p, q) in [(mu, nu), (nu, mu)] {
                g[p][q] = v;
                for r in 0..DIM {
                    dg[r][p][q] = d[r];
                    for s in 0..DIM {
                        ddg[r][s][p][q] = dd[r][s];
                    }
                }
            }
        }
    }
    (g, dg, ddg)
}

fn tetrad_jet(t: &[Jet2], point: &T1) -> Result<TetradJet> {
    let mut h = Z2;
    let mut dh = Z3;
    for a in 0..DIM {
        for m in 0..DIM {
            let j = &t[a * DIM + m];
            h[a][m] = j.value;
            for r in 0..DIM {
                dh[r][a][m] = j.grad[r];
            }
        }
    }
    let hm = to_matrix(&h);
    let sv = hm.singular_values();
    let (smax, smin) = (sv.max(), sv.min());
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition <= MAX_TETRAD_CONDITION) {
        return Err(Error::degenerate(
            format!("tetrad condition number {condition:.3e} exceeds {MAX_TETRAD_CONDITION:e}"),
            point,
        ));
    }
    let inv = hm.try_inverse().ok_or_else(|| Error::degenerate("tetrad not invertible", point))?;
    let frame = from_matrix(&inv);
    let mut dframe = Z3;
    for r in 0..DIM {
        let d = -(inv * to_matrix(&dh[r]) * inv);
        dframe[r] = from_matrix(&d);
    }
    Ok(TetradJet { h, dh, frame, dframe, condition })
}

/// `{_{μνα}} = −½(∂_μ g_{να} + ∂_α g_{νμ} − ∂_ν g_{μα})`.
pub(crate) fn christoffel_first(dg: &T3) -> T3 {
    let mut c = Z3;
    for mu in 0..DIM {
        for nu in 0..DIM {
            for al in 0..DIM {
                c[mu][nu][al] = -0.5 * ((dg[mu][nu][al] + dg[al][nu][mu]) - dg[nu][mu][al]);
            }
        }
    }
    c
}

/// Raises the middle index: `Γ_μ^β_α = g^{βν} {_{μνα}}`.
pub(crate) fn raise_middle(ginv: &T2, low: &T3) -> T3 {
    let mut out = Z3;
    for mu in 0..DIM {
        for be in 0..DIM {
            for al in 0..DIM {
                out[mu][be][al] = (0..DIM).map(|nu| ginv[be][nu] * low[mu][nu][al]).sum();
            }
        }
    }
    out
}

/// Levi-Civita `Γ` and its first derivatives from metric jets.
fn levi_civita_jet(ginv: &T2, dg: &T3, ddg: &T4) -> (T3, T4) {
    let low = christoffel_first(dg);
    let gamma = raise_middle(ginv, &low);
    let mut dgamma = Z4;
    for r in 0..DIM {
        // ∂_ρ g^{βν} = −g^{βκ} ∂_ρ g_{κλ} g^{λν}
        let mut dinv = Z2;
        for b in 0..DIM {
            for n in 0..DIM {
                let mut s = 0.0;
                for k in 0..DIM {
                    for l in 0..DIM {
                        s += ginv[b][k] * dg[r][k][l] * ginv[l][n];
                    }
                }
                dinv[b][n] = -s;
            }
        }
        let dlow = christoffel_first(&ddg[r]);
        for mu in 0..DIM {
            for be in 0..DIM {
                for al in 0..DIM {
                    dgamma[r][mu][be][al] = (0..DIM)
                        .map(|nu| dinv[be][nu] * low[mu][nu][al] + ginv[be][nu] * dlow[mu][nu][al])
                        .sum();
                }
            }
        }
    }
    (gamma, dgamma)
}
