//! Property tests over random charts, versors, expressions and reports.

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gaugegrav::cli::Grid;
use gaugegrav::clifford::Signature;
use gaugegrav::corpus;
use gaugegrav::dirac::{extract_lorentz_connection, lorentz_world_connection};
use gaugegrav::expr::parse_expr;
use gaugegrav::gravity::{curvature, decompose_connection, metric_from_tetrad, nonmetricity_residual, torsion, TensorValue, Variance};
use gaugegrav::report::{Format, Report};
use gaugegrav::spin::{adjoint_matrix, eta_preservation_residual, VersorElement};

fn unit_point() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-1.0..1.0f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn jet_value_matches_plain_evaluation(a in -2.0..2.0f64, b in -2.0..2.0f64, p in unit_point()) {
        let src = format!("exp({a}*x)*sin(y + {b}*t) + (z - t)^3/(3 + x^2)");
        let e = parse_expr(&src, &["t", "x", "y", "z"], &BTreeMap::new()).unwrap();
        let jet = e.eval_jet2(&p).unwrap();
        let v = e.eval_f64(&p).unwrap();
        prop_assert!((jet.value - v).abs() <= 1e-14 * (1.0 + v.abs()));
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(jet.hess(i, j), jet.hess(j, i));
            }
        }
    }

    #[test]
    fn spin_versors_preserve_eta(seed in any::<u64>(), sig_idx in 0usize..3, half in 1usize..4) {
        let (p, q) = [(1, 3), (4, 0), (0, 4)][sig_idx];
        let sig = Signature::new(p, q).unwrap();
        let g = VersorElement::random(sig, 2 * half, &mut ChaCha8Rng::seed_from_u64(seed));
        let m = adjoint_matrix(&g).unwrap();
        prop_assert!(eta_preservation_residual(sig, &m) < 1e-12);
        let minus = adjoint_matrix(&g.negated()).unwrap();
        prop_assert!((m - minus).amax() < 1e-12);
    }

    #[test]
    fn connection_split_reassembles(seed in 0u64..10_000, p in unit_point()) {
        let c = corpus::random_connection(seed);
        let jp = c.chart.jet_point(&p).unwrap();
        prop_assert!(decompose_connection(&jp).residual < 1e-12);
        prop_assert!(torsion(&jp).antisymmetry_residual(0, 2) == 0.0);
        let r = curvature(&jp);
        prop_assert!(r.r.antisymmetry_residual(0, 1) == 0.0);
        let dk = jp.connection_derivatives();
        for idx in 0..256 {
            let (l, m, a, b) = (idx / 64, idx / 16 % 4, idx / 4 % 4, idx % 4);
            let sum = r.r.get(&[l, m, a, b]) + r.s.get(&[l, m, a, b]);
            prop_assert!((sum - 2.0 * dk[l][m][a][b]).abs() < 1e-12);
        }
    }

    #[test]
    fn levi_civita_is_metric(seed in 0u64..10_000, p in unit_point()) {
        let c = corpus::random_perturbation(seed);
        let jp = c.chart.jet_point(&p).unwrap();
        prop_assert!(nonmetricity_residual(&jp, jp.connection()) < 1e-12);
    }

    #[test]
    fn tetrad_metric_and_lorentz_round_trip(seed in 0u64..10_000, p in unit_point()) {
        let c = corpus::random_tetrad(seed);
        let jp = c.chart.jet_point(&p).unwrap();
        prop_assert!(metric_from_tetrad(&jp).unwrap().orthonormality_residual < 1e-12);
        let a = extract_lorentz_connection(&jp).unwrap();
        let back = lorentz_world_connection(&a, &jp).unwrap();
        let k = jp.connection();
        for l in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    prop_assert!((back[l][m][n] - k[l][m][n]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn machine_numbers_round_trip(vals in prop::array::uniform4(-1e6..1e6f64)) {
        let mut r = Report::new("p");
        r.tensor(TensorValue::from_t1("v", [("mu", Variance::Up)], &vals));
        let text = r.render(Format::Machine);
        let parsed: Vec<f64> = text
            .lines()
            .filter(|l| l.starts_with("tensor"))
            .map(|l| l.rsplit('\t').next().unwrap().parse().unwrap())
            .collect();
        prop_assert_eq!(parsed, vals.to_vec());
    }

    #[test]
    fn grid_point_count(n in prop::array::uniform4(1usize..4)) {
        let spec = format!("0:1:{},2:3:{},-1:1:{},5:6:{}", n[0], n[1], n[2], n[3]);
        let g: Grid = spec.parse().unwrap();
        let pts = g.points();
        prop_assert_eq!(pts.len(), n.iter().product::<usize>());
        prop_assert!(pts.iter().all(|p| (0.0..=1.0).contains(&p[0]) && (5.0..=6.0).contains(&p[3])));
    }
}
