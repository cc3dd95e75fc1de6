//! Run the algebraic verification suites and print the verdicts.

use gaugegrav::cli::{cmd_verify, Suite};
use gaugegrav::report::Format;

fn main() {
    for suite in [Suite::Clifford, Suite::Spin] {
        let r = cmd_verify(suite, None);
        let text = r.render(Format::Text);
        for line in text.lines().filter(|l| l.starts_with("check") || l.starts_with("verdict")) {
            println!("{line}");
        }
    }
}
