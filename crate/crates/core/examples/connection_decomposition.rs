//! Torsion, nonmetricity and contorsion of a random connection, and the
//! reassembly of the connection from the three pieces.

use gaugegrav::corpus;
use gaugegrav::gravity::{curvature, decompose_connection, nonmetricity, nonmetricity_residual, torsion};

fn main() -> gaugegrav::Result<()> {
    let c = corpus::random_connection(3);
    let jp = c.chart.jet_point(&[0.1, -0.2, 0.3, 0.05])?;

    let t = torsion(&jp);
    let q = nonmetricity(&jp);
    println!("torsion: max {:.3e}, antisymmetry residual {:.1e}", t.max_abs(), t.antisymmetry_residual(0, 2));
    println!("nonmetricity: max {:.3e}", q.max_abs());

    let d = decompose_connection(&jp);
    println!("contorsion max {:.3e}", d.contorsion.max_abs());
    println!("Christoffel + contorsion + C/2 reproduces the connection to {:.1e}", d.residual);

    let lc = corpus::schwarzschild(1.0).chart.jet_point(&[0.0, 4.0, 1.2, 0.3])?;
    println!("\nSchwarzschild Levi-Civita nonmetricity {:.1e}", nonmetricity_residual(&lc, lc.connection()));
    println!("curvature component R_{{01}}^0_1 = {:.12}", curvature(&lc).r.get(&[0, 1, 0, 1]));
    Ok(())
}
