//! Seeded test charts with sampling domains.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gravity::tensor::{DIM, T1};
use crate::gravity::{Chart, Diffeo};
use crate::Result;

/// A chart with the coordinate box its points are sampled from.
#[derive(Debug, Clone)]
pub struct CorpusChart {
    pub chart: Chart,
    pub domain: [(f64, f64); 4],
}

impl CorpusChart {
    pub fn name(&self) -> &str {
        self.chart.name()
    }

    /// `n` points drawn uniformly from the domain.
    pub fn sample_points(&self, n: usize, rng: &mut impl Rng) -> Vec<T1> {
        (0..n).map(|_| std::array::from_fn(|i| rng.random_range(self.domain[i].0..self.domain[i].1))).collect()
    }

    pub fn sample_points_seeded(&self, n: usize, seed: u64) -> Vec<T1> {
        self.sample_points(n, &mut ChaCha8Rng::seed_from_u64(seed))
    }
}

const CARTESIAN: [&str; 4] = ["t", "x", "y", "z"];
const UNIT_BOX: [(f64, f64); 4] = [(-1.0, 1.0); 4];

pub fn minkowski() -> CorpusChart {
    let chart = Chart::new("minkowski", &CARTESIAN, &[])
        .and_then(|c| c.with_diagonal_metric(["1", "-1", "-1", "-1"]))
        .expect("static chart");
    CorpusChart { chart, domain: UNIT_BOX }
}

/// Flat space in spherical coordinates `(t, r, th, ph)`.
pub fn minkowski_spherical() -> CorpusChart {
    let chart = Chart::new("minkowski-spherical", &["t", "r", "th", "ph"], &[])
        .and_then(|c| c.with_diagonal_metric(["1", "-1", "-r^2", "-r^2*sin(th)^2"]))
        .expect("static chart");
    CorpusChart { chart, domain: [(-1.0, 1.0), (1.0, 5.0), (0.3, 2.8), (0.0, 6.2)] }
}

/// Schwarzschild coordinates, sampled at `r ∈ [2.5 rs, 10 rs]`, `θ ∈ [0.3, 2.8]`.
pub fn schwarzschild(rs: f64) -> CorpusChart {
    let chart = Chart::new("schwarzschild", &["t", "r", "th", "ph"], &[("rs", rs)])
        .and_then(|c| c.with_diagonal_metric(["1-rs/r", "-1/(1-rs/r)", "-r^2", "-r^2*sin(th)^2"]))
        .expect("static chart");
    CorpusChart { chart, domain: [(-1.0, 1.0), (2.5 * rs, 10.0 * rs), (0.3, 2.8), (0.0, 6.2)] }
}

/// Schwarzschild with `τ = ∂_t` declared.
pub fn schwarzschild_with_time_translation(rs: f64) -> CorpusChart {
    let mut c = schwarzschild(rs);
    c.chart = c.chart.with_tau(["1", "0", "0", "0"]).expect("static chart");
    c
}

/// Spatially flat de Sitter `diag(1, −e^{2Ht}, −e^{2Ht}, −e^{2Ht})`.
pub fn de_sitter(h: f64) -> CorpusChart {
    let a = "-exp(2*H*t)";
    let chart = Chart::new("de-sitter", &CARTESIAN, &[("H", h)])
        .and_then(|c| c.with_diagonal_metric(["1", a, a, a]))
        .expect("static chart");
    CorpusChart { chart, domain: UNIT_BOX }
}

/// `g = e^{2φ} η` with `φ = 0.1 x`.
pub fn conformally_flat() -> CorpusChart {
    let f = "exp(2*0.1*x)";
    let m = "-exp(2*0.1*x)";
    let chart = Chart::new("conformally-flat", &CARTESIAN, &[])
        .and_then(|c| c.with_diagonal_metric([f, m, m, m]))
        .expect("static chart");
    CorpusChart { chart, domain: UNIT_BOX }
}

/// A random polynomial of degree ≤ `degree` (1 or 2) in the Cartesian
/// coordinates with coefficients uniform in `[-scale, scale]`.
pub fn random_polynomial(rng: &mut impl Rng, degree: usize, scale: f64) -> String {
    let mut c = || scale * rng.random_range(-1.0..1.0_f64);
    let mut terms = vec![format!("({:e})", c())];
    for i in 0..DIM {
        terms.push(format!("({:e})*{}", c(), CARTESIAN[i]));
    }
    if degree >= 2 {
        for i in 0..DIM {
            for j in i..DIM {
                terms.push(format!("({:e})*{}*{}", c(), CARTESIAN[i], CARTESIAN[j]));
            }
        }
    }
    terms.join("+")
}

/// `η + 1e-2·P(x)` with random symmetric degree-2 polynomial entries.
pub fn random_perturbation(seed: u64) -> CorpusChart {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eta = ["1", "-1", "-1", "-1"];
    let mut entries = Vec::new();
    for mu in 0..DIM {
        for nu in mu..DIM {
            let p = random_polynomial(&mut rng, 2, 1e-2);
            let s = if mu == nu { format!("{}+{}", eta[mu], p) } else { p };
            entries.push((mu, nu, s));
        }
    }
    let refs: Vec<(usize, usize, &str)> = entries.iter().map(|(a, b, s)| (*a, *b, s.as_str())).collect();
    let chart = Chart::new(format!("perturbed-{seed}"), &CARTESIAN, &[])
        .and_then(|c| c.with_metric(&refs))
        .expect("generated chart");
    CorpusChart { chart, domain: UNIT_BOX }
}

/// A perturbed metric with a random degree-1 polynomial connection.
pub fn random_connection(seed: u64) -> CorpusChart {
    let base = random_perturbation(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
    let mut chart = base.chart;
    for l in 0..DIM {
        for m in 0..DIM {
            for n in 0..DIM {
                let p = random_polynomial(&mut rng, 1, 0.5);
                chart.set_connection(l, m, n, &p).expect("generated expression");
            }
        }
    }
    CorpusChart { chart, domain: base.domain }
}

/// `h^a_μ = δ^a_μ + 0.05·P(x)` with random degree-2 polynomial entries.
pub fn random_tetrad(seed: u64) -> CorpusChart {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chart = Chart::new(format!("tetrad-{seed}"), &CARTESIAN, &[]).expect("static chart");
    for a in 0..DIM {
        for mu in 0..DIM {
            let p = random_polynomial(&mut rng, 2, 0.05);
            let s = if a == mu { format!("1+{p}") } else { p };
            chart.set_tetrad(a, mu, &s).expect("generated expression");
        }
    }
    CorpusChart { chart, domain: UNIT_BOX }
}

/// A quadratic perturbation of the identity,
/// `y^0 = x^0 + ε(x^1x^2 + ½(x^0)²)` and similar for the other components;
/// the inverse comes from series reversion.
pub fn quadratic_diffeo(chart: &Chart, eps: f64) -> Result<Diffeo> {
    let c: Vec<&str> = chart.coords().iter().map(String::as_str).collect();
    let f = [
        format!("{0}+{eps:e}*({1}*{2}+0.5*{0}^2)", c[0], c[1], c[2]),
        format!("{1}+{eps:e}*({0}*{2}-0.3*{1}^2)", c[0], c[1], c[3]),
        format!("{2}+{eps:e}*(0.7*{0}^2+{1}*{3})", c[0], c[1], c[2], c[3]),
        format!("{3}+{eps:e}*({2}^2-{0}*{1})", c[0], c[1], c[2], c[3]),
    ];
    Diffeo::new(chart, [&f[0], &f[1], &f[2], &f[3]], None)
}

/// A flat chart with unit tetrad, zero connection and the plane wave
/// `ψ_A = u_A e^{-i k_μ x^μ}` for real amplitudes `u`.
pub fn flat_plane_wave(k: [f64; 4], u: [f64; 4]) -> Result<Chart> {
    let phase = format!("({:e})*t+({:e})*x+({:e})*y+({:e})*z", k[0], k[1], k[2], k[3]);
    let re: Vec<String> = u.iter().map(|a| format!("({a:e})*cos({phase})")).collect();
    let im: Vec<String> = u.iter().map(|a| format!("-({a:e})*sin({phase})")).collect();
    let spinor: Vec<(usize, &str, &str)> = (0..4).map(|i| (i, re[i].as_str(), im[i].as_str())).collect();
    let mut chart = Chart::new("flat-plane-wave", &CARTESIAN, &[])?
        .with_tetrad(&[(0, 0, "1"), (1, 1, "1"), (2, 2, "1"), (3, 3, "1")])?
        .with_spinor(&spinor)?;
    chart.set_zero_connection();
    Ok(chart)
}

/// The five charts every metric-level invariant is checked on.
pub fn standard_corpus() -> Vec<CorpusChart> {
    vec![minkowski(), schwarzschild(1.0), de_sitter(0.5), conformally_flat(), random_perturbation(1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_charts_evaluate_on_their_domains() {
        let mut all = standard_corpus();
        all.push(minkowski_spherical());
        all.push(random_connection(2));
        all.push(random_tetrad(3));
        for c in &all {
            for p in c.sample_points_seeded(20, 9) {
                c.chart.jet_point(&p).unwrap_or_else(|e| panic!("{}: {e}", c.name()));
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = random_connection(4).chart.jet_point(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        let b = random_connection(4).chart.jet_point(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(a.connection(), b.connection());
        assert_eq!(a.metric(), b.metric());
    }
}
