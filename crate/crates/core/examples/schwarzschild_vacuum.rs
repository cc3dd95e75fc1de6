//! Ricci tensor and field equations of Schwarzschild, against the scalar
//! curvature of de Sitter.

use gaugegrav::corpus;
use gaugegrav::gravity::{he_field_equations, hilbert_einstein_density, ricci_and_scalar};

fn main() -> gaugegrav::Result<()> {
    let schw = corpus::schwarzschild(1.0);
    let mut worst: f64 = 0.0;
    for p in schw.sample_points_seeded(20, 1) {
        let jp = schw.chart.jet_point(&p)?;
        let fe = he_field_equations(&jp);
        worst = worst.max(ricci_and_scalar(&jp).conventional.max_abs());
        worst = worst.max(fe.einstein.max_abs()).max(fe.connection.max_abs());
    }
    println!("Schwarzschild: largest Ricci / field-equation component over 20 points {worst:.2e}");

    let ds = corpus::de_sitter(0.5);
    for p in ds.sample_points_seeded(3, 2) {
        let jp = ds.chart.jet_point(&p)?;
        println!(
            "de Sitter at t = {:+.3}: scalar {:.12}, density {:.12}",
            p[0],
            ricci_and_scalar(&jp).scalar,
            hilbert_einstein_density(&jp)
        );
    }
    Ok(())
}
