//! Parse a chart expression and evaluate it as a value, a second-order jet
//! and a truncated Taylor series.

use std::collections::BTreeMap;

use gaugegrav::expr::{parse_expr, MonomialTable, TaylorSeries};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let constants = BTreeMap::from([("rs".to_string(), 1.0)]);
    let f = parse_expr("-r^2*sin(th)^2 / (1 - rs/r)", &["t", "r", "th", "ph"], &constants)?;
    let x = [0.0, 3.0, 1.0, 0.5];

    println!("f(x)        = {:.12}", f.eval_f64(&x)?);

    let jet = f.eval_jet2(&x)?;
    println!("grad f      = {:?}", jet.grad);
    println!("d2f/dr dth  = {:.12}", jet.hess(1, 2));

    let table = MonomialTable::new(4, 4);
    let vars: Vec<TaylorSeries> = x.iter().enumerate().map(|(i, &v)| TaylorSeries::variable(&table, i, v)).collect();
    let series = f.eval_with(&vars)?;
    println!("d4f/dr4     = {:.12}", series.derivative_at(&[0, 4, 0, 0]));

    match parse_expr("sin(r", &["t", "r", "th", "ph"], &constants) {
        Ok(_) => unreachable!(),
        Err(e) => println!("parse error at offset {}: {e}", e.offset()),
    }
    Ok(())
}
