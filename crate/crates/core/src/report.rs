//! Structured command output in text or line-delimited machine form.
//!
//! Machine mode prints one tab-separated record per line with every float
//! in `{:.16e}` (17 significant digits); it never depends on time, locale
//! or thread scheduling.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;

use crate::gravity::TensorValue;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format, Error> {
        match s {
            "text" => Ok(Format::Text),
            "machine" => Ok(Format::Machine),
            _ => Err(Error::InvalidArgument(format!("unknown format '{s}' (expected text or machine)"))),
        }
    }
}

/// A residual compared against a tolerance. Gating checks decide the
/// verdict; informational ones are shown but never fail the report.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
    pub gating: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, tol: f64) -> Check {
        let pass = if tol == 0.0 { value == 0.0 } else { value < tol };
        Check { name: name.into(), value, tol, pass, gating: true }
    }

    pub fn flag(name: impl Into<String>, ok: bool) -> Check {
        Check { name: name.into(), value: if ok { 0.0 } else { 1.0 }, tol: 0.0, pass: ok, gating: true }
    }

    pub fn info(mut self) -> Check {
        self.gating = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Heading(String),
    Scalar { key: String, value: f64 },
    Text { key: String, value: String },
    Vector { key: String, values: Vec<f64> },
    Complex { key: String, values: Vec<Complex64> },
    Tensor(TensorValue),
    Check(Check),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub title: String,
    items: Vec<Item>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { title: title.into(), items: Vec::new() }
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn push(&mut self, item: Item) {
        self.items.push(item);
    }

    pub fn heading(&mut self, h: impl Into<String>) {
        self.push(Item::Heading(h.into()));
    }

    pub fn scalar(&mut self, key: impl Into<String>, value: f64) {
        self.push(Item::Scalar { key: key.into(), value });
    }

    pub fn text(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.push(Item::Text { key: key.into(), value: value.into() });
    }

    pub fn vector(&mut self, key: impl Into<String>, values: &[f64]) {
        self.push(Item::Vector { key: key.into(), values: values.to_vec() });
    }

    pub fn complex(&mut self, key: impl Into<String>, values: &[Complex64]) {
        self.push(Item::Complex { key: key.into(), values: values.to_vec() });
    }

    pub fn tensor(&mut self, t: TensorValue) {
        self.push(Item::Tensor(t));
    }

    pub fn check(&mut self, c: Check) -> bool {
        let pass = c.pass;
        self.push(Item::Check(c));
        pass
    }

    pub fn extend(&mut self, other: Report) {
        self.heading(other.title);
        self.items.extend(other.items);
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.items.iter().filter_map(|i| match i {
            Item::Check(c) => Some(c),
            _ => None,
        })
    }

    /// True when every gating check passed.
    pub fn passed(&self) -> bool {
        self.checks().all(|c| c.pass || !c.gating)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Machine => self.render_machine(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = format!("== {} ==\n", self.title);
        for item in &self.items {
            match item {
                Item::Heading(h) => {
                    let _ = writeln!(out, "-- {h} --");
                }
                Item::Scalar { key, value } => {
                    let _ = writeln!(out, "{key:<28} {}", txt(*value));
                }
                Item::Text { key, value } => {
                    let _ = writeln!(out, "{key:<28} {value}");
                }
                Item::Vector { key, values } => {
                    let vs: Vec<String> = values.iter().map(|v| txt(*v)).collect();
                    let _ = writeln!(out, "{key:<28} [{}]", vs.join(", "));
                }
                Item::Complex { key, values } => {
                    let _ = writeln!(out, "{key}");
                    for (i, z) in values.iter().enumerate() {
                        let _ = writeln!(out, "  [{i}] {} {}i", txt(z.re), txt(z.im));
                    }
                }
                Item::Tensor(t) => text_tensor(&mut out, t),
                Item::Check(c) => {
                    let bound = if c.tol == 0.0 { "== 0".to_string() } else { format!("< {:e}", c.tol) };
                    let verdict = match (c.pass, c.gating) {
                        (true, _) => "PASS",
                        (false, true) => "FAIL",
                        (false, false) => "FAIL (info)",
                    };
                    let _ = writeln!(out, "check {:<40} {:.3e} {bound} {verdict}", c.name, c.value);
                }
            }
        }
        let (n, failed) = self.tally();
        let _ = writeln!(
            out,
            "verdict: {} ({n} checks, {failed} failed)",
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }

    fn render_machine(&self) -> String {
        let mut out = format!("report\t{}\n", self.title);
        for item in &self.items {
            match item {
                Item::Heading(h) => {
                    let _ = writeln!(out, "section\t{h}");
                }
                Item::Scalar { key, value } => {
                    let _ = writeln!(out, "scalar\t{key}\t{}", num(*value));
                }
                Item::Text { key, value } => {
                    let _ = writeln!(out, "text\t{key}\t{value}");
                }
                Item::Vector { key, values } => {
                    for (i, v) in values.iter().enumerate() {
                        let _ = writeln!(out, "vector\t{key}\t{i}\t{}", num(*v));
                    }
                }
                Item::Complex { key, values } => {
                    for (i, z) in values.iter().enumerate() {
                        let _ = writeln!(out, "complex\t{key}\t{i}\t{}\t{}", num(z.re), num(z.im));
                    }
                }
                Item::Tensor(t) => {
                    let key = format!("{}{}", t.name, t.index_pattern());
                    for (idx, v) in t.components() {
                        let idx: Vec<String> = idx.iter().map(usize::to_string).collect();
                        let _ = writeln!(out, "tensor\t{key}\t{}\t{}", idx.join(","), num(v));
                    }
                }
                Item::Check(c) => {
                    let _ = writeln!(
                        out,
                        "check\t{}\t{}\t{}\t{}\t{}",
                        c.name,
                        num(c.value),
                        num(c.tol),
                        if c.pass { "PASS" } else { "FAIL" },
                        if c.gating { "gating" } else { "info" }
                    );
                }
            }
        }
        let _ = writeln!(out, "verdict\t{}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }

    fn tally(&self) -> (usize, usize) {
        let n = self.checks().count();
        let failed = self.checks().filter(|c| !c.pass && c.gating).count();
        (n, failed)
    }
}

/// Fixed 17-significant-digit form; negative zero prints as zero.
fn num(v: f64) -> String {
    format!("{:.16e}", v + 0.0)
}

fn txt(v: f64) -> String {
    format!("{:+.10e}", v + 0.0)
}

fn text_tensor(out: &mut String, t: &TensorValue) {
    let label = format!("{}{}", t.name, t.index_pattern());
    match t.rank() {
        0 => {
            let _ = writeln!(out, "{label:<28} {}", txt(t.data()[0]));
        }
        1 => {
            let vs: Vec<String> = t.data().iter().map(|v| txt(*v)).collect();
            let _ = writeln!(out, "{label:<28} [{}]", vs.join(", "));
        }
        2 => {
            let _ = writeln!(out, "{label}");
            for row in t.data().chunks(4) {
                let vs: Vec<String> = row.iter().map(|v| txt(*v)).collect();
                let _ = writeln!(out, "  {}", vs.join("  "));
            }
        }
        _ => {
            let _ = writeln!(out, "{label}");
            let mut any = false;
            for (idx, v) in t.components() {
                if v != 0.0 {
                    any = true;
                    let _ = writeln!(out, "  {idx:?} {}", txt(v));
                }
            }
            if !any {
                let _ = writeln!(out, "  (all components zero)");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("sample");
        r.scalar("det", -1.0);
        r.tensor(TensorValue::from_t1("v", [("mu", crate::gravity::Variance::Up)], &[1.0, -0.0, 0.5, 2.0]));
        r.check(Check::new("residual", 0.25, 0.5));
        r.check(Check::new("vacuum", 1.0, 1e-8).info());
        r
    }

    #[test]
    fn machine_format_is_fixed() {
        let m = sample().render(Format::Machine);
        assert!(m.contains("scalar\tdet\t-1.0000000000000000e0\n"));
        assert!(m.contains("tensor\tv^mu\t1\t0.0000000000000000e0\n"));
        assert!(m.contains("check\tresidual\t2.5000000000000000e-1\t5.0000000000000000e-1\tPASS\tgating\n"));
        assert!(m.ends_with("verdict\tPASS\n"));
    }

    #[test]
    fn info_checks_do_not_gate() {
        let mut r = sample();
        assert!(r.passed());
        assert!(r.render(Format::Text).contains("< 5e-1 PASS"));
        r.check(Check::flag("signature", false));
        assert!(!r.passed());
        let text = r.render(Format::Text);
        assert!(text.contains("verdict: FAIL (3 checks, 1 failed)"), "{text}");
    }

    #[test]
    fn nan_fails() {
        assert!(!Check::new("x", f64::NAN, 1.0).pass);
    }
}
