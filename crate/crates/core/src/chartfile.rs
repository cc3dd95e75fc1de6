//! The sectioned chart-definition format.
//!
//! ```text
//! # Schwarzschild exterior
//! [chart]
//! name = schwarzschild
//! coords = t, r, th, ph
//! rs = 1
//!
//! [metric]
//! g 0 0 = 1 - rs/r
//! g 1 1 = -1/(1 - rs/r)
//! g 2 2 = -r^2
//! g 3 3 = -r^2*sin(th)^2
//!
//! [connection]
//! levi-civita
//!
//! [tau]
//! tau 0 = 1
//! ```
//!
//! Sections: `[chart]`, one of `[metric]` (`g mu nu = expr`, symmetric
//! completion) or `[tetrad]` (`h a mu = expr`), and optionally
//! `[connection]` (`Gamma lam mu nu = expr` or the single keyword
//! `levi-civita`), `[spinor]` (`psi A re|im = expr`) and `[tau]`
//! (`tau mu = expr`). Missing entries are zero; a missing `[connection]`
//! means Levi-Civita. `#` starts a comment.

use std::collections::BTreeMap;
use std::path::Path;

use crate::gravity::Chart;
use crate::{Error, Result};

const SECTIONS: [&str; 6] = ["chart", "metric", "tetrad", "connection", "spinor", "tau"];

#[derive(Debug)]
struct Line<'a> {
    number: usize,
    text: &'a str,
}

struct Ctx<'a> {
    file: &'a str,
}

impl Ctx<'_> {
    fn err(&self, section: &str, line: usize, message: impl Into<String>) -> Error {
        Error::ChartFile { file: self.file.to_string(), section: section.to_string(), line, message: message.into() }
    }
}

/// Reads and parses a chart file.
pub fn load_chart_file(path: impl AsRef<Path>) -> Result<Chart> {
    let path = path.as_ref();
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| Error::ChartFile {
        file: name.clone(),
        section: String::new(),
        line: 0,
        message: format!("cannot read file: {e}"),
    })?;
    parse_chart_file(&text, &name)
}

/// Parses chart-file text; `file` is used in error messages.
pub fn parse_chart_file(text: &str, file: &str) -> Result<Chart> {
    let ctx = Ctx { file };
    let mut sections: BTreeMap<&str, (usize, Vec<Line>)> = BTreeMap::new();
    let mut current: Option<&str> = None;
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| ctx.err(current.unwrap_or(""), number, format!("malformed section header '{text}'")))?
                .trim();
            let known = SECTIONS
                .iter()
                .find(|s| **s == name)
                .ok_or_else(|| ctx.err(name, number, format!("unknown section [{name}]")))?;
            if let Some((first, _)) = sections.get(known) {
                return Err(ctx.err(name, number, format!("section [{name}] repeated (first at line {first})")));
            }
            sections.insert(known, (number, Vec::new()));
            current = Some(known);
            continue;
        }
        let sec = current.ok_or_else(|| ctx.err("", number, "content before the first section header"))?;
        sections.get_mut(sec).expect("current section registered").1.push(Line { number, text });
    }

    let (chart_line, chart_lines) =
        sections.get("chart").ok_or_else(|| ctx.err("chart", 0, "missing [chart] section"))?;
    let mut chart = parse_chart_header(&ctx, *chart_line, chart_lines)?;

    match (sections.get("metric"), sections.get("tetrad")) {
        (Some(_), Some((l, _))) => {
            return Err(ctx.err("tetrad", *l, "declare at most one of [metric] and [tetrad]"));
        }
        (None, None) => return Err(ctx.err("chart", *chart_line, "one of [metric] or [tetrad] is required")),
        _ => {}
    }

    let mut seen: BTreeMap<(&str, Vec<usize>), usize> = BTreeMap::new();
    let mut claim = |sec: &'static str, key: Vec<usize>, line: usize| -> Result<()> {
        if let Some(first) = seen.insert((sec, key.clone()), line) {
            return Err(ctx.err(sec, line, format!("duplicate entry {key:?} (first at line {first})")));
        }
        Ok(())
    };

    if let Some((_, lines)) = sections.get("metric") {
        for l in lines {
            let (idx, expr) = entry(&ctx, "metric", l, "g", 2, &[])?;
            let mut key = idx.clone();
            key.sort_unstable();
            claim("metric", key, l.number)?;
            chart.set_metric(idx[0], idx[1], expr).map_err(|e| wrap(&ctx, "metric", l.number, e))?;
        }
    }
    if let Some((_, lines)) = sections.get("tetrad") {
        for l in lines {
            let (idx, expr) = entry(&ctx, "tetrad", l, "h", 2, &[])?;
            claim("tetrad", idx.clone(), l.number)?;
            chart.set_tetrad(idx[0], idx[1], expr).map_err(|e| wrap(&ctx, "tetrad", l.number, e))?;
        }
    }
    if let Some((header, lines)) = sections.get("connection") {
        let lc: Vec<&Line> = lines.iter().filter(|l| l.text.eq_ignore_ascii_case("levi-civita")).collect();
        if !lc.is_empty() {
            if lines.len() > 1 {
                return Err(ctx.err("connection", lc[0].number, "levi-civita replaces all entries and must stand alone"));
            }
            chart.set_levi_civita();
        } else {
            chart.set_zero_connection();
            if lines.is_empty() {
                return Err(ctx.err("connection", *header, "empty [connection]; write entries or levi-civita"));
            }
            for l in lines {
                let (idx, expr) = entry(&ctx, "connection", l, "Gamma", 3, &[])?;
                claim("connection", idx.clone(), l.number)?;
                chart
                    .set_connection(idx[0], idx[1], idx[2], expr)
                    .map_err(|e| wrap(&ctx, "connection", l.number, e))?;
            }
        }
    }
    if let Some((_, lines)) = sections.get("spinor") {
        for l in lines {
            let (idx, expr) = entry(&ctx, "spinor", l, "psi", 1, &["re", "im"])?;
            claim("spinor", idx.clone(), l.number)?;
            chart.set_spinor(idx[0], idx[1] == 1, expr).map_err(|e| wrap(&ctx, "spinor", l.number, e))?;
        }
    }
    if let Some((_, lines)) = sections.get("tau") {
        for l in lines {
            let (idx, expr) = entry(&ctx, "tau", l, "tau", 1, &[])?;
            claim("tau", idx.clone(), l.number)?;
            chart.set_tau(idx[0], expr).map_err(|e| wrap(&ctx, "tau", l.number, e))?;
        }
    }
    Ok(chart)
}

fn wrap(ctx: &Ctx, section: &str, line: usize, e: Error) -> Error {
    ctx.err(section, line, e.to_string())
}

fn parse_chart_header(ctx: &Ctx, header: usize, lines: &[Line]) -> Result<Chart> {
    let mut name = None;
    let mut coords: Option<Vec<String>> = None;
    let mut constants: Vec<(String, f64)> = Vec::new();
    let mut keys: BTreeMap<String, usize> = BTreeMap::new();
    for l in lines {
        let (k, v) = l
            .text
            .split_once('=')
            .ok_or_else(|| ctx.err("chart", l.number, "expected 'key = value'"))?;
        let (k, v) = (k.trim(), v.trim());
        if let Some(first) = keys.insert(k.to_string(), l.number) {
            return Err(ctx.err("chart", l.number, format!("duplicate key '{k}' (first at line {first})")));
        }
        match k {
            "name" => name = Some(v.to_string()),
            "coords" => {
                let cs: Vec<String> = v.split(',').map(|s| s.trim().to_string()).collect();
                if cs.len() != 4 || cs.iter().any(|c| !is_ident(c)) {
                    return Err(ctx.err("chart", l.number, "coords must be 4 comma-separated identifiers"));
                }
                coords = Some(cs);
            }
            _ => {
                if !is_ident(k) {
                    return Err(ctx.err("chart", l.number, format!("'{k}' is not a valid constant name")));
                }
                let value: f64 = v
                    .parse()
                    .map_err(|_| ctx.err("chart", l.number, format!("constant '{k}' needs a numeric value, got '{v}'")))?;
                constants.push((k.to_string(), value));
            }
        }
    }
    let coords = coords.ok_or_else(|| ctx.err("chart", header, "missing 'coords'"))?;
    let cref: Vec<&str> = coords.iter().map(String::as_str).collect();
    let kref: Vec<(&str, f64)> = constants.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    Chart::new(name.unwrap_or_else(|| "unnamed".into()), &cref, &kref).map_err(|e| wrap(ctx, "chart", header, e))
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `head i j ... [tag] = expr`. When `tags` is non-empty a trailing
/// tag is required and its position is appended to the indices.
fn entry<'a>(
    ctx: &Ctx,
    section: &str,
    l: &Line<'a>,
    head: &str,
    nidx: usize,
    tags: &[&str],
) -> Result<(Vec<usize>, &'a str)> {
    let (lhs, rhs) = l
        .text
        .split_once('=')
        .ok_or_else(|| ctx.err(section, l.number, format!("expected '{head} ... = expr'")))?;
    let words: Vec<&str> = lhs.split_whitespace().collect();
    let want = 1 + nidx + usize::from(!tags.is_empty());
    if words.len() != want || words[0] != head {
        let tag = if tags.is_empty() { String::new() } else { format!(" {}", tags.join("|")) };
        return Err(ctx.err(
            section,
            l.number,
            format!("expected '{head}{}{tag} = expr'", " <index>".repeat(nidx)),
        ));
    }
    let mut idx = Vec::with_capacity(want - 1);
    for w in &words[1..=nidx] {
        let i: usize = w
            .parse()
            .ok()
            .filter(|i| *i < 4)
            .ok_or_else(|| ctx.err(section, l.number, format!("index '{w}' is not in 0..3")))?;
        idx.push(i);
    }
    if !tags.is_empty() {
        let t = words[nidx + 1];
        let pos = tags
            .iter()
            .position(|x| *x == t)
            .ok_or_else(|| ctx.err(section, l.number, format!("expected one of {} instead of '{t}'", tags.join("|"))))?;
        idx.push(pos);
    }
    let rhs = rhs.trim();
    if rhs.is_empty() {
        return Err(ctx.err(section, l.number, "empty expression"));
    }
    Ok((idx, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCHW: &str = "\
# exterior
[chart]
name = schwarzschild
coords = t, r, th, ph
rs = 1

[metric]
g 0 0 = 1 - rs/r
g 1 1 = -1/(1 - rs/r)
g 2 2 = -r^2
g 3 3 = -r^2*sin(th)^2   # closing entry

[connection]
levi-civita

[tau]
tau 0 = 1
";

    fn err_of(text: &str) -> (String, usize, String) {
        match parse_chart_file(text, "test.chart") {
            Err(Error::ChartFile { section, line, message, .. }) => (section, line, message),
            other => panic!("expected a chart-file error, got {other:?}"),
        }
    }

    #[test]
    fn parses_schwarzschild() {
        let c = parse_chart_file(SCHW, "s.chart").unwrap();
        assert_eq!(c.name(), "schwarzschild");
        assert_eq!(c.constant("rs"), Some(1.0));
        let jp = c.jet_point(&[0.0, 3.0, 1.0, 0.5]).unwrap();
        assert!(jp.is_levi_civita());
        assert_eq!(jp.tau().unwrap().value, [1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn unknown_section_names_section_and_line() {
        let text = SCHW.replace("[tau]", "[tua]");
        let (sec, line, msg) = err_of(&text);
        assert_eq!((sec.as_str(), line), ("tua", 16));
        assert!(msg.contains("unknown section"));
    }

    #[test]
    fn rejects_duplicates_and_bad_indices() {
        let dup = SCHW.replace("g 2 2 = -r^2", "g 2 2 = -r^2\ng 2 2 = -r");
        assert_eq!(err_of(&dup).1, 11);
        let sym = SCHW.replace("g 2 2 = -r^2", "g 0 1 = 0\ng 1 0 = 0");
        assert_eq!(err_of(&sym).0, "metric");
        let bad = SCHW.replace("g 2 2", "g 2 4");
        assert!(err_of(&bad).2.contains("0..3"));
        let both = format!("{SCHW}\n[tetrad]\nh 0 0 = 1\n");
        assert!(err_of(&both).2.contains("at most one"));
    }

    #[test]
    fn expression_errors_carry_line() {
        let text = SCHW.replace("-r^2*sin(th)^2", "-r^2*sin(th");
        let (sec, line, _) = err_of(&text);
        assert_eq!((sec.as_str(), line), ("metric", 11));
        let text = SCHW.replace("1 - rs/r\n", "1 - M/r\n");
        assert!(err_of(&text).2.contains('M'));
    }

    #[test]
    fn connection_and_spinor_entries() {
        let text = "[chart]\ncoords = t,x,y,z\n[tetrad]\nh 0 0 = 1\nh 1 1 = 1\nh 2 2 = 1\nh 3 3 = 1\n\
                    [connection]\nGamma 1 0 2 = 0.5\n[spinor]\npsi 0 re = cos(t)\npsi 0 im = -sin(t)\n";
        let c = parse_chart_file(text, "f.chart").unwrap();
        let jp = c.jet_point(&[0.0; 4]).unwrap();
        assert_eq!(jp.connection()[1][0][2], 0.5);
        assert_eq!(jp.spinor().unwrap().value[0].re, 1.0);
        let mixed = text.replace("Gamma 1 0 2 = 0.5", "Gamma 1 0 2 = 0.5\nlevi-civita");
        assert!(err_of(&mixed).2.contains("levi-civita"));
    }
}
