//! The Hilbert-Einstein density transforms as a scalar density under a
//! quadratic change of coordinates.

use gaugegrav::corpus;
use gaugegrav::gravity::covariance_check;

fn main() -> gaugegrav::Result<()> {
    let mut charts = corpus::standard_corpus();
    charts.push(corpus::random_connection(5));
    for c in &charts {
        let d = corpus::quadratic_diffeo(&c.chart, 1e-3)?;
        let p = c.sample_points_seeded(1, 4)[0];
        let r = covariance_check(&c.chart, &d, &p)?;
        println!(
            "{:<20} L(x) = {:+.12e}  L'(y) |det dy/dx| = {:+.12e}  residual {:.1e}",
            c.name(),
            r.original,
            r.transformed,
            r.residual
        );
    }
    Ok(())
}
