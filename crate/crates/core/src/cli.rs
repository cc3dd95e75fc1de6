//! Commands behind the `gaugegrav` binary: point and grid parsing, the
//! inspect/curvature/dirac/superpotential reports and the verify suites.

use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clifford::{center_dimension, classify, complexify, MultiVector, ScalarField, Signature};
use crate::conservation::{em_current, komar_flux, komar_superpotential, relative_spread, SphereFamily};
use crate::corpus;
use crate::dirac::{extract_lorentz_connection, lorentz_from_world, lorentz_world_connection, DiracSetup};
use crate::gravity::tensor::{delta, matmul, max_abs2, max_abs3, sub3, T1};
use crate::gravity::{
    covariance_check, curvature, decompose_connection, he_field_equations, metric_from_tetrad,
    nonmetricity_residual, ricci_and_scalar, spacetime_split, Chart, JetPoint, TensorValue, Variance,
};
use crate::report::{Check, Report};
use crate::spin::{
    adjoint_matrix, build_rep, dirac_gammas, eta_preservation_residual, even_centralizer_dimension,
    lorentz_generators, majorana_gammas, max_abs, VersorElement,
};
use crate::{Error, Result};

use Variance::{Down, Up};

/// Process exit status for an error: 3 for numeric domain failures, 2 for
/// everything caused by the input.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_numeric() {
        3
    } else {
        2
    }
}

/// Parses `x0,x1,x2,x3`.
pub fn parse_point(s: &str) -> Result<T1> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::InvalidArgument(format!("--at needs 4 comma-separated numbers, got '{s}'")));
    }
    let mut p = [0.0; 4];
    for (slot, v) in p.iter_mut().zip(&parts) {
        *slot = v.parse().map_err(|_| Error::InvalidArgument(format!("'{v}' in --at '{s}' is not a number")))?;
    }
    Ok(p)
}

/// A product grid: per axis either a fixed value `v` or `lo:hi:n` with `n`
/// equally spaced points including both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub axes: [(f64, f64, usize); 4],
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Grid> {
        let bad = |why: &str| Error::InvalidArgument(format!("--grid '{s}': {why}"));
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(bad("need 4 comma-separated axes"));
        }
        let mut axes = [(0.0, 0.0, 1); 4];
        for (axis, part) in axes.iter_mut().zip(&parts) {
            let f: Vec<&str> = part.split(':').collect();
            let num = |v: &str| v.trim().parse::<f64>().map_err(|_| bad(&format!("'{v}' is not a number")));
            *axis = match f.as_slice() {
                [v] => {
                    let v = num(v)?;
                    (v, v, 1)
                }
                [lo, hi, n] => {
                    let n: usize = n.trim().parse().ok().filter(|n| *n >= 1).ok_or_else(|| bad("counts must be >= 1"))?;
                    (num(lo)?, num(hi)?, n)
                }
                _ => return Err(bad("each axis is 'v' or 'lo:hi:n'")),
            };
        }
        Ok(Grid { axes })
    }
}

impl Grid {
    /// All grid points, last axis fastest.
    pub fn points(&self) -> Vec<T1> {
        let vals: Vec<Vec<f64>> = self
            .axes
            .iter()
            .map(|&(lo, hi, n)| {
                if n == 1 {
                    vec![lo]
                } else {
                    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
                }
            })
            .collect();
        let mut out = Vec::new();
        for &a in &vals[0] {
            for &b in &vals[1] {
                for &c in &vals[2] {
                    for &d in &vals[3] {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CurvatureOptions {
    pub decompose: bool,
    pub field_equations: bool,
}

fn tol_or(tol: Option<f64>, default: f64) -> f64 {
    tol.unwrap_or(default)
}

fn point_label(p: &T1) -> String {
    let s: Vec<String> = p.iter().map(|v| format!("{v}")).collect();
    format!("point ({})", s.join(", "))
}

fn require_points(points: &[T1]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("no points given; use --at or --grid".into()));
    }
    Ok(())
}

/// Builds one sub-report per point in parallel and appends them in order.
fn per_point(
    report: &mut Report,
    chart: &Chart,
    points: &[T1],
    f: impl Fn(&JetPoint, &mut Report) -> Result<()> + Sync,
) -> Result<Vec<JetPoint>> {
    let parts: Vec<Result<(JetPoint, Report)>> = points
        .par_iter()
        .map(|p| {
            let jp = chart.jet_point(p)?;
            let mut r = Report::new(point_label(p));
            f(&jp, &mut r)?;
            Ok((jp, r))
        })
        .collect();
    let mut jps = Vec::with_capacity(parts.len());
    for part in parts {
        let (jp, r) = part?;
        report.extend(r);
        jps.push(jp);
    }
    Ok(jps)
}

fn inverse_residual(jp: &JetPoint) -> f64 {
    let prod = matmul(jp.metric(), jp.inverse_metric());
    let mut r: f64 = 0.0;
    for (i, row) in prod.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            r = r.max((v - delta(i, j)).abs());
        }
    }
    r
}

/// Metric, inverse, determinant, signature and tetrad residuals.
pub fn cmd_inspect(chart: &Chart, points: &[T1], tol: Option<f64>) -> Result<Report> {
    require_points(points)?;
    let mut report = Report::new(format!("inspect {}", chart.name()));
    report.text("coords", chart.coords().join(", "));
    report.text("connection", if matches!(chart.connection(), crate::gravity::ConnectionSpec::LeviCivita) {
        "levi-civita"
    } else {
        "declared"
    });
    per_point(&mut report, chart, points, |jp, r| {
        r.tensor(TensorValue::from_t2("g", [("mu", Down), ("nu", Down)], jp.metric()));
        r.tensor(TensorValue::from_t2("g", [("mu", Up), ("nu", Up)], jp.inverse_metric()));
        r.scalar("det g", jp.det());
        r.scalar("sqrt|det g|", jp.sqrt_abs_det());
        let (plus, minus) = jp.signature_counts();
        r.text("signature", format!("{}{}", "+".repeat(plus), "-".repeat(minus)));
        r.check(Check::flag("signature (+,-,-,-)", (plus, minus) == (1, 3)));
        r.check(Check::new("metric inverse residual", inverse_residual(jp), tol_or(tol, 1e-10)));
        if jp.tetrad().is_some() {
            let m = metric_from_tetrad(jp)?;
            r.tensor(TensorValue::from_t2("h", [("a", Up), ("mu", Down)], &jp.require_tetrad()?.h));
            r.scalar("tetrad condition number", jp.require_tetrad()?.condition);
            r.check(Check::new("tetrad orthonormality residual", m.orthonormality_residual, tol_or(tol, 1e-10)));
            let s = spacetime_split(jp)?;
            r.vector("spatial metric eigenvalues", &s.riemannian_eigenvalues);
            r.check(Check::new("space-time split residual", s.residual, tol_or(tol, 1e-10)));
        }
        Ok(())
    })?;
    Ok(report)
}

/// Curvature, both Ricci normalizations and the scalar; optionally the
/// connection split and the field-equation residuals.
pub fn cmd_curvature(chart: &Chart, points: &[T1], opts: CurvatureOptions, tol: Option<f64>) -> Result<Report> {
    require_points(points)?;
    let mut report = Report::new(format!("curvature {}", chart.name()));
    let jps = per_point(&mut report, chart, points, |jp, r| {
        let curv = curvature(jp);
        r.tensor(curv.r.clone());
        r.check(Check::new("curvature antisymmetry (lam,mu)", curv.r.antisymmetry_residual(0, 1), tol_or(tol, 1e-10)));
        let ric = ricci_and_scalar(jp);
        r.tensor(ric.conventional.clone());
        r.tensor(ric.normalized);
        r.scalar("scalar curvature", ric.scalar);
        r.check(Check::new("ricci residual (vacuum)", ric.conventional.max_abs(), tol_or(tol, 1e-8)).info());
        let nm = nonmetricity_residual(jp, jp.connection());
        if jp.is_levi_civita() {
            r.check(Check::new("levi-civita metricity", nm, tol_or(tol, 1e-10)));
        } else {
            r.scalar("nonmetricity max", nm);
        }
        if opts.decompose {
            let d = decompose_connection(jp);
            let scale = 1.0 + max_abs3(jp.connection());
            r.tensor(d.christoffel);
            r.tensor(d.contorsion);
            r.tensor(d.nonmetricity);
            r.check(Check::new("decomposition residual", d.residual / scale, tol_or(tol, 1e-10)));
        }
        if opts.field_equations {
            let fe = he_field_equations(jp);
            let worst = fe.einstein.max_abs().max(fe.connection.max_abs());
            r.tensor(fe.einstein);
            r.tensor(fe.connection);
            r.check(Check::new("field equation residual (vacuum)", worst, tol_or(tol, 1e-8)).info());
        }
        Ok(())
    })?;
    if jps.len() > 1 {
        let s: Vec<f64> = jps.iter().map(|jp| ricci_and_scalar(jp).scalar).collect();
        let spread = s.iter().copied().fold(f64::MIN, f64::max) - s.iter().copied().fold(f64::MAX, f64::min);
        report.heading("grid");
        report.check(Check::new("scalar curvature spread", spread, tol_or(tol, 1e-8)).info());
    }
    Ok(report)
}

/// Lorentz connection, spin-connection norms and `𝒟ψ`.
pub fn cmd_dirac(chart: &Chart, points: &[T1], tol: Option<f64>) -> Result<Report> {
    if !chart.has_tetrad() {
        return Err(Error::InvalidArgument("dirac requires [tetrad]".into()));
    }
    if chart.spinor().is_none() {
        return Err(Error::InvalidArgument("dirac requires [spinor]".into()));
    }
    require_points(points)?;
    let setup = DiracSetup::new();
    let mut report = Report::new(format!("dirac {}", chart.name()));
    per_point(&mut report, chart, points, |jp, r| {
        let a = extract_lorentz_connection(jp)?;
        r.tensor(TensorValue::from_t3("A", [("lam", Down), ("a", Up), ("b", Up)], a.components()));
        let omega = setup.spin_connection(jp)?;
        let norms: Vec<f64> = omega.iter().map(max_abs).collect();
        r.vector("spin connection max |omega_lam|", &norms);
        let from_a = setup.spin_connection_from(&a);
        let two_paths = omega.iter().zip(&from_a).map(|(x, y)| max_abs(&(x - y))).fold(0.0, f64::max);
        r.check(Check::new("spin connection two-path agreement", two_paths, tol_or(tol, 1e-12)));
        r.check(Check::new("spin connection generator span", setup.generator_span_residual(&omega), tol_or(tol, 1e-10)));
        let back = lorentz_world_connection(&a, jp)?;
        let rt = max_abs3(&sub3(&back, jp.connection()));
        r.check(Check::new("connection is Lorentz (round trip)", rt, tol_or(tol, 1e-10)).info());
        let psi = jp.spinor().ok_or(Error::MissingField { what: "a spinor field" })?;
        r.complex("psi", &psi.value);
        r.complex("D psi", &setup.dirac_operator(jp)?);
        Ok(())
    })?;
    Ok(report)
}

/// `U^{μλ}` at the points and flux integrals over coordinate spheres.
pub fn cmd_superpotential(
    chart: &Chart,
    points: &[T1],
    radii: &[f64],
    nodes: usize,
    tol: Option<f64>,
) -> Result<Report> {
    if chart.tau().is_none() {
        return Err(Error::InvalidArgument("superpotential requires [tau]".into()));
    }
    if points.is_empty() && radii.is_empty() {
        return Err(Error::InvalidArgument("no points or radii given; use --at, --grid or --radii".into()));
    }
    let mut report = Report::new(format!("superpotential {}", chart.name()));
    per_point(&mut report, chart, points, |jp, r| {
        let u = komar_superpotential(jp)?;
        r.tensor(TensorValue::from_t2("U", [("mu", Up), ("lam", Up)], &u.u));
        let scale = 1.0 + max_abs2(&u.u);
        r.check(Check::new("U antisymmetry residual", u.antisymmetry_residual / scale, tol_or(tol, 1e-10)));
        r.vector("current J^lam", &em_current(jp)?);
        Ok(())
    })?;
    if !radii.is_empty() {
        report.heading("flux over coordinate spheres (t, r, theta, phi)");
        let family = SphereFamily::spherical();
        let coarse = (nodes / 8).max(1);
        let mut fine = Vec::new();
        for &radius in radii {
            let f = komar_flux(chart, &family, radius, nodes)?;
            let c = komar_flux(chart, &family, radius, coarse)?;
            report.scalar(format!("flux r={radius} nodes={nodes}"), f.value);
            report.scalar(format!("flux r={radius} nodes={coarse}"), c.value);
            report.scalar(format!("refinement change r={radius}"), (f.value - c.value).abs());
            fine.push(f);
        }
        if fine.len() > 1 {
            report.check(Check::new("flux relative spread", relative_spread(&fine), tol_or(tol, 1e-4)).info());
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Clifford,
    Gravity,
    Spin,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "clifford" => Ok(Suite::Clifford),
            "gravity" => Ok(Suite::Gravity),
            "spin" => Ok(Suite::Spin),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidArgument(format!("unknown suite '{s}' (clifford, gravity, spin or all)"))),
        }
    }
}

/// Runs the invariant suites. Failures, including evaluation errors, are
/// report content rather than errors.
pub fn cmd_verify(suite: Suite, tol: Option<f64>) -> Report {
    let mut report = Report::new(match suite {
        Suite::Clifford => "verify clifford",
        Suite::Gravity => "verify gravity",
        Suite::Spin => "verify spin",
        Suite::All => "verify all",
    });
    if matches!(suite, Suite::Clifford | Suite::All) {
        report.extend(verify_clifford());
    }
    if matches!(suite, Suite::Spin | Suite::All) {
        report.extend(verify_spin());
    }
    if matches!(suite, Suite::Gravity | Suite::All) {
        report.extend(verify_gravity(tol));
    }
    report
}

fn verify_clifford() -> Report {
    let mut r = Report::new("clifford");
    for n in 1..=4 {
        for p in 0..=n {
            let sig = Signature::new(p, n - p).expect("n <= 4");
            let class = classify(sig, ScalarField::Real);
            r.text(format!("C({p},{})", n - p), class.to_string());
            r.check(Check::flag(
                format!("C({p},{}) dimension 2^{n} = {}", n - p, class),
                sig.blade_count() == 1 << n && class.real_dimension() == 1 << n,
            ));
            let centre = center_dimension(sig, ScalarField::Real);
            r.check(Check::flag(
                format!("C({p},{}) center dimension", n - p),
                centre.ok() == Some(class.center_real_dimension()),
            ));
        }
        let sig = Signature::euclidean(n).expect("n <= 4");
        let class = classify(sig, ScalarField::Complex);
        let centre = center_dimension(sig, ScalarField::Complex);
        r.check(Check::flag(format!("CC({n}) = {class} center"), centre.ok() == Some(class.center_real_dimension() / 2)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sig = Signature::new(1, 3).expect("static");
    let mut hom: f64 = 0.0;
    let mut assoc: f64 = 0.0;
    for _ in 0..20 {
        let [a, b, c] = std::array::from_fn(|_| random_integer_multivector(sig, &mut rng));
        let lhs = complexify(&(&a * &b));
        let rhs = complexify(&a).and_then(|x| complexify(&b).and_then(|y| x.geometric_product(&y)));
        hom = hom.max(match (lhs, rhs) {
            (Ok(l), Ok(r)) => l.max_abs_diff(&r),
            _ => f64::INFINITY,
        });
        assoc = assoc.max((&(&a * &b) * &c).max_abs_diff(&(&a * &(&b * &c))));
    }
    r.check(Check::new("associativity on integer multivectors", assoc, 0.0));
    r.check(Check::new("complexification is a homomorphism", hom, 1e-12));
    r
}

fn random_integer_multivector(sig: Signature, rng: &mut ChaCha8Rng) -> MultiVector {
    use rand::Rng;
    let coeffs: Vec<f64> = (0..sig.blade_count()).map(|_| rng.random_range(-3..=3) as f64).collect();
    MultiVector::from_real(sig, &coeffs).expect("length matches")
}

/// Largest η-preservation residual, largest `|ĝ − (−g)̂|` and the count of
/// failed adjoint evaluations over `n` random Spin versors.
pub fn double_cover_sample(sig: Signature, n: usize, seed: u64) -> (f64, f64, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut eta: f64 = 0.0;
    let mut neg: f64 = 0.0;
    let mut failures = 0;
    for i in 0..n {
        let g = VersorElement::random(sig, 2 * (1 + i % 3), &mut rng);
        match (adjoint_matrix(&g), adjoint_matrix(&g.negated())) {
            (Ok(a), Ok(b)) => {
                eta = eta.max(eta_preservation_residual(sig, &a));
                neg = neg.max((a - b).amax());
            }
            _ => failures += 1,
        }
    }
    (eta, neg, failures)
}

fn verify_spin() -> Report {
    let mut r = Report::new("spin");
    for n in [2, 4, 6, 8] {
        match build_rep(n) {
            Ok(rep) => r.check(Check::new(format!("CC({n}) representation relations"), rep.relation_residual(), 0.0)),
            Err(_) => r.check(Check::flag(format!("CC({n}) representation builds"), false)),
        };
    }
    let dirac = dirac_gammas();
    r.check(Check::new("dirac gamma anticommutators", dirac.relation_residual(), 0.0));
    let maj = majorana_gammas();
    r.check(Check::flag("majorana gammas are real", maj.is_real()));
    r.check(Check::new("majorana gamma anticommutators", maj.relation_residual(), 0.0));
    match lorentz_generators(&dirac) {
        Ok(g) => r.check(Check::new("lorentz generator algebra", g.algebra_residual(), 1e-15)),
        Err(_) => r.check(Check::flag("lorentz generators", false)),
    };
    for (p, q) in [(1, 3), (4, 0), (0, 4)] {
        let sig = Signature::new(p, q).expect("static");
        let (eta, neg, failures) = double_cover_sample(sig, 200, 7 + p as u64);
        r.check(Check::new(format!("C({p},{q}) adjoint preserves eta (200 versors)"), eta, 1e-12));
        r.check(Check::new(format!("C({p},{q}) adjoint of -g equals adjoint of g"), neg, 1e-12));
        r.check(Check::flag(format!("C({p},{q}) adjoint evaluations"), failures == 0));
        r.check(Check::flag(format!("C({p},{q}) adjoint kernel is {{+e, -e}}"), even_centralizer_dimension(sig) == 1));
    }
    r
}

fn verify_gravity(tol: Option<f64>) -> Report {
    let mut r = Report::new("gravity");
    let t = |d| tol_or(tol, d);
    let fail = |r: &mut Report, name: &str, e: Error| {
        r.text(format!("{name} error"), e.to_string());
        r.check(Check::flag(name.to_string(), false));
    };

    for c in corpus::standard_corpus() {
        let worst: Result<f64> = c.sample_points_seeded(20, 1).iter().try_fold(0.0, |m: f64, p| {
            let jp = c.chart.jet_point(p)?;
            Ok(m.max(nonmetricity_residual(&jp, jp.connection())))
        });
        match worst {
            Ok(v) => r.check(Check::new(format!("{} levi-civita metricity", c.name()), v, t(1e-10))),
            Err(e) => {
                fail(&mut r, &format!("{} levi-civita metricity", c.name()), e);
                false
            }
        };
    }

    let decomp: Result<f64> = (0..50u64).try_fold(0.0, |m: f64, seed| {
        let c = corpus::random_connection(seed);
        let p = c.sample_points_seeded(1, seed)[0];
        let jp = c.chart.jet_point(&p)?;
        Ok(m.max(decompose_connection(&jp).residual / (1.0 + max_abs3(jp.connection()))))
    });
    match decomp {
        Ok(v) => {
            r.check(Check::new("decomposition round trip (50 connections)", v, t(1e-10)));
        }
        Err(e) => fail(&mut r, "decomposition round trip", e),
    }

    let schw = corpus::schwarzschild(1.0);
    let vac: Result<f64> = schw.sample_points_seeded(20, 2).iter().try_fold(0.0, |m: f64, p| {
        let jp = schw.chart.jet_point(p)?;
        let fe = he_field_equations(&jp);
        Ok(m.max(ricci_and_scalar(&jp).conventional.max_abs()).max(fe.einstein.max_abs()).max(fe.connection.max_abs()))
    });
    match vac {
        Ok(v) => {
            r.check(Check::new("schwarzschild vacuum (ricci and field equations)", v, t(1e-7)));
        }
        Err(e) => fail(&mut r, "schwarzschild vacuum", e),
    }

    let lorentz: Result<f64> = (0..5u64).try_fold(0.0, |m: f64, seed| {
        let c = corpus::random_tetrad(seed);
        let mut worst = m;
        for p in c.sample_points_seeded(4, seed) {
            let jp = c.chart.jet_point(&p)?;
            let a = extract_lorentz_connection(&jp)?;
            let world = lorentz_world_connection(&a, &jp)?;
            let back = lorentz_from_world(jp.require_tetrad()?, &world);
            worst = worst.max(back.max_abs_diff(&a));
        }
        Ok(worst)
    });
    match lorentz {
        Ok(v) => {
            r.check(Check::new("lorentz connection round trip", v, t(1e-10)));
        }
        Err(e) => fail(&mut r, "lorentz connection round trip", e),
    }

    match dirac_plane_wave_residual() {
        Ok(v) => {
            r.check(Check::new("dirac flat limit on plane waves", v, t(1e-12)));
        }
        Err(e) => fail(&mut r, "dirac flat limit", e),
    }

    let mut charts = corpus::standard_corpus();
    charts.push(corpus::random_connection(5));
    for c in &charts {
        let res: Result<f64> = corpus::quadratic_diffeo(&c.chart, 1e-3).and_then(|d| {
            c.sample_points_seeded(5, 11).iter().try_fold(0.0, |m: f64, p| Ok(m.max(covariance_check(&c.chart, &d, p)?.residual)))
        });
        match res {
            Ok(v) => r.check(Check::new(format!("{} density covariance", c.name()), v, t(1e-8))),
            Err(e) => {
                fail(&mut r, &format!("{} density covariance", c.name()), e);
                false
            }
        };
    }

    let komar = corpus::schwarzschild_with_time_translation(1.0);
    let fluxes: Result<Vec<_>> =
        [3.0, 5.0, 8.0].iter().map(|&rad| komar_flux(&komar.chart, &SphereFamily::spherical(), rad, 64)).collect();
    match fluxes {
        Ok(f) => {
            for x in &f {
                r.scalar(format!("schwarzschild flux r={}", x.radius), x.value);
            }
            r.check(Check::new("schwarzschild flux relative spread", relative_spread(&f), t(1e-4)));
        }
        Err(e) => fail(&mut r, "schwarzschild flux", e),
    }
    r
}

/// Largest `|𝒟ψ − (−i k_μ γ^μ ψ)|` over a few plane waves on the flat chart.
pub fn dirac_plane_wave_residual() -> Result<f64> {
    let setup = DiracSetup::new();
    let waves = [([0.7, 0.2, -0.4, 0.1], [1.0, 0.5, -0.3, 0.2]), ([-1.1, 0.3, 0.8, -0.6], [0.2, -1.0, 0.4, 0.9])];
    let mut worst: f64 = 0.0;
    for (k, u) in waves {
        let chart = corpus::flat_plane_wave(k, u)?;
        for p in [[0.0, 0.0, 0.0, 0.0], [0.3, -0.2, 0.5, 0.1], [-0.7, 0.4, -0.1, 0.9]] {
            let jp = chart.jet_point(&p)?;
            let psi = jp.spinor().ok_or(Error::MissingField { what: "a spinor field" })?.value;
            let v = nalgebra::DVector::from_column_slice(&psi);
            let mut oracle = nalgebra::DVector::<Complex64>::zeros(4);
            for (mu, km) in k.iter().enumerate() {
                oracle += setup.gammas.gen(mu) * &v * Complex64::new(0.0, -km);
            }
            let d = setup.dirac_operator(&jp)?;
            for i in 0..4 {
                worst = worst.max((d[i] - oracle[i]).norm());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartfile::parse_chart_file;
    use crate::report::Format;

    const MINK: &str = "[chart]\nname = minkowski\ncoords = t, x, y, z\n[metric]\ng 0 0 = 1\ng 1 1 = -1\ng 2 2 = -1\ng 3 3 = -1\n[tau]\ntau 0 = 1\n";

    #[test]
    fn point_and_grid_parsing() {
        assert_eq!(parse_point("0, 3, 1.5, -2e-1").unwrap(), [0.0, 3.0, 1.5, -0.2]);
        assert!(parse_point("1,2,3").is_err());
        let g: Grid = "0,2:4:3,1,0:1:2".parse().unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], [0.0, 2.0, 1.0, 0.0]);
        assert_eq!(pts[1], [0.0, 2.0, 1.0, 1.0]);
        assert_eq!(pts[5], [0.0, 4.0, 1.0, 1.0]);
        assert!("0,1:2,0,0".parse::<Grid>().is_err());
    }

    #[test]
    fn inspect_minkowski_at_origin() {
        let c = parse_chart_file(MINK, "m.chart").unwrap();
        let r = cmd_inspect(&c, &[[0.0; 4]], None).unwrap();
        assert!(r.passed());
        let m = r.render(Format::Machine);
        assert!(m.contains("scalar\tdet g\t-1.0000000000000000e0\n"));
        assert!(m.contains("text\tsignature\t+---\n"));
    }

    #[test]
    fn minkowski_curvature_is_zero_and_flux_vanishes() {
        let c = parse_chart_file(MINK, "m.chart").unwrap();
        let opts = CurvatureOptions { decompose: true, field_equations: true };
        let r = cmd_curvature(&c, &[[0.1, 0.2, 0.3, 0.4]], opts, None).unwrap();
        for item in r.items() {
            if let crate::report::Item::Tensor(t) = item {
                assert_eq!(t.max_abs(), 0.0, "{}", t.name);
            }
        }
        let s = cmd_superpotential(&c, &[], &[1.0, 2.0], 8, None).unwrap();
        for item in s.items() {
            if let crate::report::Item::Scalar { key, value } = item {
                if key.starts_with("flux") {
                    assert!(value.abs() < 1e-12, "{key} = {value}");
                }
            }
        }
    }

    #[test]
    fn dirac_requires_spinor() {
        let text = "[chart]\ncoords = t,x,y,z\n[tetrad]\nh 0 0 = 1\nh 1 1 = 1\nh 2 2 = 1\nh 3 3 = 1\n";
        let c = parse_chart_file(text, "f.chart").unwrap();
        let e = cmd_dirac(&c, &[[0.0; 4]], None).unwrap_err();
        assert_eq!(e.to_string(), "dirac requires [spinor]");
        assert_eq!(exit_code(&e), 2);
    }

    #[test]
    fn verify_suites_pass() {
        let r = cmd_verify(Suite::Clifford, None);
        assert!(r.passed(), "{}", r.render(Format::Text));
        let r = cmd_verify(Suite::Spin, None);
        assert!(r.passed(), "{}", r.render(Format::Text));
    }

    #[test]
    fn plane_wave_oracle() {
        assert!(dirac_plane_wave_residual().unwrap() < 1e-12);
    }
}
