//! The superpotential of the static Killing field on Schwarzschild and its
//! flux through spheres of several radii.

use gaugegrav::conservation::{em_current, komar_flux, komar_superpotential, relative_spread, SphereFamily};
use gaugegrav::corpus;

fn main() -> gaugegrav::Result<()> {
    let c = corpus::schwarzschild_with_time_translation(1.0);
    let jp = c.chart.jet_point(&[0.0, 4.0, 1.0, 0.0])?;
    let u = komar_superpotential(&jp)?;
    println!("U^{{10}} at r = 4: {:+.12}", u.u[1][0]);
    println!("current J at r = 4: {:?}", em_current(&jp)?);

    let family = SphereFamily::spherical();
    let mut fluxes = Vec::new();
    for r in [3.0, 5.0, 8.0] {
        let f = komar_flux(&c.chart, &family, r, 32)?;
        println!("flux at r = {r}: {:.14}", f.value);
        fluxes.push(f);
    }
    println!("relative spread {:.1e} (4 pi = {:.14})", relative_spread(&fluxes), 4.0 * std::f64::consts::PI);
    Ok(())
}
