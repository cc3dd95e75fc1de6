//! Parse a chart file from text and print a curvature report in both
//! output formats.

use gaugegrav::chartfile::parse_chart_file;
use gaugegrav::cli::{cmd_curvature, CurvatureOptions};
use gaugegrav::report::Format;

const CHART: &str = "
[chart]
name = conformal
coords = t, x, y, z

[metric]
g 0 0 = exp(0.2*x)
g 1 1 = -exp(0.2*x)
g 2 2 = -exp(0.2*x)
g 3 3 = -exp(0.2*x)
";

fn main() -> gaugegrav::Result<()> {
    let chart = parse_chart_file(CHART, "inline.chart")?;
    let opts = CurvatureOptions { decompose: true, field_equations: false };
    let report = cmd_curvature(&chart, &[[0.0, 0.5, 0.0, 0.0]], opts, None)?;
    print!("{}", report.render(Format::Text));
    let machine = report.render(Format::Machine);
    println!("\nmachine mode, first lines:");
    for line in machine.lines().take(6) {
        println!("{line}");
    }
    Ok(())
}
