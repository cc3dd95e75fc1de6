//! Lorentz connection of a curved tetrad and the Dirac operator on a plane
//! wave in flat space.

use gaugegrav::corpus;
use gaugegrav::dirac::{extract_lorentz_connection, lorentz_world_connection, DiracSetup};
use gaugegrav::gravity::tensor::{max_abs3, sub3};

fn main() -> gaugegrav::Result<()> {
    let setup = DiracSetup::new();

    let c = corpus::random_tetrad(2);
    let jp = c.chart.jet_point(&[0.2, -0.1, 0.4, 0.3])?;
    let a = extract_lorentz_connection(&jp)?;
    let back = lorentz_world_connection(&a, &jp)?;
    println!("Lorentz connection A_0^{{01}} = {:+.6e}", a.get(0, 0, 1));
    println!("world connection rebuilt from A differs by {:.1e}", max_abs3(&sub3(&back, jp.connection())));
    let omega = setup.spin_connection(&jp)?;
    println!("spin connection lies in the generator span to {:.1e}", setup.generator_span_residual(&omega));

    let k = [0.7, 0.2, -0.4, 0.1];
    let wave = corpus::flat_plane_wave(k, [1.0, 0.0, 0.5, 0.0])?;
    let jp = wave.jet_point(&[0.3, -0.2, 0.5, 0.1])?;
    let d = setup.dirac_operator(&jp)?;
    println!("\nplane wave with k = {k:?}:");
    for (i, z) in d.iter().enumerate() {
        println!("  (D psi)_{i} = {:+.10} {:+.10}i", z.re, z.im);
    }
    Ok(())
}
