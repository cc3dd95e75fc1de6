//! Truncated multivariate Taylor series of arbitrary order.
//!
//! A series stores the coefficients of every monomial of total degree at most
//! the table order. Each series also tracks the order up to which its
//! coefficients are exact: differentiation lowers it by one and products take
//! the minimum, so quantities built from derivatives of a series report how
//! many of their own derivatives are trustworthy.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Jet2, Scalar};

/// Monomials in `nvars` variables of total degree ≤ `order`, graded by degree.
#[derive(Debug)]
pub struct MonomialTable {
    nvars: usize,
    order: usize,
    exps: Vec<Vec<u8>>,
    /// `products[i]` lists `(j, k)` with monomial i times monomial j = monomial k.
    products: Vec<Vec<(usize, usize)>>,
    /// `lower[i][v]` is the monomial with exponent of `v` reduced by one.
    lower: Vec<Vec<Option<usize>>>,
}

impl MonomialTable {
    pub fn new(nvars: usize, order: usize) -> Arc<MonomialTable> {
        let mut exps: Vec<Vec<u8>> = Vec::new();
        for d in 0..=order {
            let mut cur = vec![0u8; nvars];
            push_degree(&mut exps, &mut cur, 0, d);
        }
        let degree: Vec<usize> = exps.iter().map(|e| e.iter().map(|&x| x as usize).sum()).collect();
        let index = |e: &[u8]| exps.iter().position(|x| x.as_slice() == e);
        let products = (0..exps.len())
            .map(|i| {
                (0..exps.len())
                    .filter(|&j| degree[i] + degree[j] <= order)
                    .map(|j| {
                        let s: Vec<u8> = exps[i].iter().zip(&exps[j]).map(|(a, b)| a + b).collect();
                        (j, index(&s).expect("product monomial within order"))
                    })
                    .collect()
            })
            .collect();
        let lower = exps
            .iter()
            .map(|e| {
                (0..nvars)
                    .map(|v| {
                        (e[v] > 0).then(|| {
                            let mut l = e.clone();
                            l[v] -= 1;
                            index(&l).expect("lowered monomial")
                        })
                    })
                    .collect()
            })
            .collect();
        Arc::new(MonomialTable { nvars, order, exps, products, lower })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self, i: usize) -> &[u8] {
        &self.exps[i]
    }

    pub fn index_of(&self, exps: &[u8]) -> Option<usize> {
        self.exps.iter().position(|e| e.as_slice() == exps)
    }
}

fn push_degree(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, var: usize, left: usize) {
    if var + 1 == cur.len() {
        cur[var] = left as u8;
        out.push(cur.clone());
        return;
    }
    for k in (0..=left).rev() {
        cur[var] = k as u8;
        push_degree(out, cur, var + 1, left - k);
    }
    cur[var] = 0;
}

fn factorial(k: u8) -> f64 {
    (1..=k as u32).map(f64::from).product()
}

#[derive(Debug, Clone)]
pub struct TaylorSeries {
    table: Arc<MonomialTable>,
    coeffs: Vec<f64>,
    valid: usize,
}

impl TaylorSeries {
    pub fn constant(table: &Arc<MonomialTable>, c: f64) -> TaylorSeries {
        let mut coeffs = vec![0.0; table.len()];
        coeffs[0] = c;
        TaylorSeries { table: Arc::clone(table), coeffs, valid: table.order }
    }

    /// The series of `x_i` expanded about `x_i = value`.
    pub fn variable(table: &Arc<MonomialTable>, i: usize, value: f64) -> TaylorSeries {
        let mut s = TaylorSeries::constant(table, value);
        if table.order >= 1 {
            let mut e = vec![0u8; table.nvars];
            e[i] = 1;
            let k = table.index_of(&e).expect("linear monomial");
            s.coeffs[k] = 1.0;
        }
        s
    }

    pub fn table(&self) -> &Arc<MonomialTable> {
        &self.table
    }

    /// Order up to which the coefficients are exact.
    pub fn valid_order(&self) -> usize {
        self.valid
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// The partial derivative `∂^α f` at the expansion point.
    pub fn derivative_at(&self, exps: &[u8]) -> f64 {
        let deg: usize = exps.iter().map(|&e| e as usize).sum();
        assert!(
            deg <= self.valid,
            "derivative of order {deg} requested from a series exact to order {}",
            self.valid
        );
        let k = self.table.index_of(exps).expect("monomial within table order");
        self.coeffs[k] * exps.iter().map(|&e| factorial(e)).product::<f64>()
    }

    /// The series of `∂f/∂x_v`.
    pub fn diff(&self, v: usize) -> TaylorSeries {
        let t = &self.table;
        let mut coeffs = vec![0.0; t.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if let Some(l) = t.lower[i][v] {
                coeffs[l] += c * f64::from(t.exps[i][v]);
            }
        }
        TaylorSeries { table: Arc::clone(t), coeffs, valid: self.valid.saturating_sub(1) }
    }

    /// Value, gradient and Hessian at the expansion point.
    pub fn to_jet2(&self) -> Jet2 {
        let n = self.table.nvars;
        let unit = |a: usize, b: Option<usize>| {
            let mut e = vec![0u8; n];
            e[a] += 1;
            if let Some(b) = b {
                e[b] += 1;
            }
            e
        };
        let grad = (0..n).map(|a| self.derivative_at(&unit(a, None))).collect();
        let hess: Vec<Vec<f64>> = (0..n)
            .map(|a| (0..n).map(|b| self.derivative_at(&unit(a, Some(b)))).collect())
            .collect();
        Jet2::from_parts(self.coeffs[0], grad, &hess)
    }

    fn with_coeffs(&self, coeffs: Vec<f64>, valid: usize) -> TaylorSeries {
        TaylorSeries { table: Arc::clone(&self.table), coeffs, valid }
    }

    fn mul_ref(&self, other: &TaylorSeries) -> TaylorSeries {
        let t = &self.table;
        let mut coeffs = vec![0.0; t.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for &(j, k) in &t.products[i] {
                coeffs[k] += a * other.coeffs[j];
            }
        }
        self.with_coeffs(coeffs, self.valid.min(other.valid))
    }

    /// `c · self`.
    pub fn scaled(&self, c: f64) -> TaylorSeries {
        self.scale(c)
    }

    fn scale(&self, c: f64) -> TaylorSeries {
        self.with_coeffs(self.coeffs.iter().map(|x| c * x).collect(), self.valid)
    }

    /// The nilpotent part `f - f(x0)`.
    fn nilpotent(&self) -> TaylorSeries {
        let mut s = self.clone();
        s.coeffs[0] = 0.0;
        s
    }

    /// `Σ_k w_k u^k` for the nilpotent `u`, truncated at the table order.
    fn power_sum(u: &TaylorSeries, weights: impl Fn(usize) -> f64) -> TaylorSeries {
        let order = u.table.order;
        let mut acc = TaylorSeries::constant(&u.table, weights(0));
        acc.valid = u.valid;
        let mut pw = TaylorSeries::constant(&u.table, 1.0);
        for k in 1..=order {
            pw = pw.mul_ref(u);
            let w = weights(k);
            if w != 0.0 {
                for (a, p) in acc.coeffs.iter_mut().zip(&pw.coeffs) {
                    *a += w * p;
                }
            }
        }
        acc
    }

    /// `f(self)` from the values `f^{(k)}(x0)`, `k = 0..=order`.
    pub fn compose(&self, derivs: &[f64]) -> TaylorSeries {
        let u = self.nilpotent();
        TaylorSeries::power_sum(&u, |k| derivs.get(k).copied().unwrap_or(0.0) / factorial(k as u8))
    }

    fn recip(&self) -> TaylorSeries {
        let a0 = self.coeffs[0];
        let u = self.nilpotent().scale(1.0 / a0);
        TaylorSeries::power_sum(&u, |k| if k % 2 == 0 { 1.0 } else { -1.0 }).scale(1.0 / a0)
    }

    /// The pair `(sin u, cos u)` of the nilpotent part.
    fn sin_cos_nil(&self) -> (TaylorSeries, TaylorSeries) {
        let u = self.nilpotent();
        let s = TaylorSeries::power_sum(&u, |k| match k % 4 {
            1 => 1.0 / factorial(k as u8),
            3 => -1.0 / factorial(k as u8),
            _ => 0.0,
        });
        let c = TaylorSeries::power_sum(&u, |k| match k % 4 {
            0 => 1.0 / factorial(k as u8),
            2 => -1.0 / factorial(k as u8),
            _ => 0.0,
        });
        (s, c)
    }

    fn sinh_cosh_nil(&self) -> (TaylorSeries, TaylorSeries) {
        let u = self.nilpotent();
        let s = TaylorSeries::power_sum(&u, |k| if k % 2 == 1 { 1.0 / factorial(k as u8) } else { 0.0 });
        let c = TaylorSeries::power_sum(&u, |k| if k % 2 == 0 { 1.0 / factorial(k as u8) } else { 0.0 });
        (s, c)
    }

    /// `self^p` for constant real `p` and positive value.
    fn powc(&self, p: f64) -> TaylorSeries {
        let a0 = self.coeffs[0];
        let u = self.nilpotent().scale(1.0 / a0);
        let mut binom = vec![1.0];
        for k in 1..=self.table.order {
            let prev = binom[k - 1];
            binom.push(prev * (p - (k - 1) as f64) / k as f64);
        }
        TaylorSeries::power_sum(&u, |k| binom[k]).scale(a0.powf(p))
    }

    fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0.0)
    }
}

fn zip_with(a: &TaylorSeries, b: &TaylorSeries, f: impl Fn(f64, f64) -> f64) -> TaylorSeries {
    debug_assert!(Arc::ptr_eq(&a.table, &b.table) || a.table.len() == b.table.len());
    let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f(*x, *y)).collect();
    a.with_coeffs(coeffs, a.valid.min(b.valid))
}

impl Add for TaylorSeries {
    type Output = TaylorSeries;
    fn add(self, rhs: TaylorSeries) -> TaylorSeries {
        zip_with(&self, &rhs, |a, b| a + b)
    }
}

impl Sub for TaylorSeries {
    type Output = TaylorSeries;
    fn sub(self, rhs: TaylorSeries) -> TaylorSeries {
        zip_with(&self, &rhs, |a, b| a - b)
    }
}

impl Mul for TaylorSeries {
    type Output = TaylorSeries;
    fn mul(self, rhs: TaylorSeries) -> TaylorSeries {
        self.mul_ref(&rhs)
    }
}

impl Div for TaylorSeries {
    type Output = TaylorSeries;
    fn div(self, rhs: TaylorSeries) -> TaylorSeries {
        self.mul_ref(&rhs.recip())
    }
}

impl Neg for TaylorSeries {
    type Output = TaylorSeries;
    fn neg(self) -> TaylorSeries {
        self.scale(-1.0)
    }
}

impl Scalar for TaylorSeries {
    const CARRIES_DERIVATIVES: bool = true;

    fn lift(&self, c: f64) -> Self {
        TaylorSeries::constant(&self.table, c)
    }

    fn value(&self) -> f64 {
        self.coeffs[0]
    }

    fn powf(&self, exponent: &Self) -> Self {
        if exponent.is_constant() {
            let mut out = self.powc(exponent.coeffs[0]);
            out.valid = out.valid.min(exponent.valid);
            return out;
        }
        (exponent.clone() * self.ln()).exp()
    }

    fn sin(&self) -> Self {
        let (s0, c0) = self.coeffs[0].sin_cos();
        let (s, c) = self.sin_cos_nil();
        s.scale(c0) + c.scale(s0)
    }

    fn cos(&self) -> Self {
        let (s0, c0) = self.coeffs[0].sin_cos();
        let (s, c) = self.sin_cos_nil();
        c.scale(c0) - s.scale(s0)
    }

    fn exp(&self) -> Self {
        let u = self.nilpotent();
        TaylorSeries::power_sum(&u, |k| 1.0 / factorial(k as u8)).scale(self.coeffs[0].exp())
    }

    fn ln(&self) -> Self {
        let a0 = self.coeffs[0];
        let u = self.nilpotent().scale(1.0 / a0);
        let mut out = TaylorSeries::power_sum(&u, |k| {
            if k == 0 {
                0.0
            } else if k % 2 == 1 {
                1.0 / k as f64
            } else {
                -1.0 / k as f64
            }
        });
        out.coeffs[0] = a0.ln();
        out
    }

    fn sqrt(&self) -> Self {
        self.powc(0.5)
    }

    fn sinh(&self) -> Self {
        let a0 = self.coeffs[0];
        let (s, c) = self.sinh_cosh_nil();
        s.scale(a0.cosh()) + c.scale(a0.sinh())
    }

    fn cosh(&self) -> Self {
        let a0 = self.coeffs[0];
        let (s, c) = self.sinh_cosh_nil();
        c.scale(a0.cosh()) + s.scale(a0.sinh())
    }

    fn abs(&self) -> Self {
        self.scale(self.coeffs[0].signum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_sizes() {
        assert_eq!(MonomialTable::new(4, 3).len(), 35);
        assert_eq!(MonomialTable::new(2, 2).len(), 6);
        assert_eq!(MonomialTable::new(1, 0).len(), 1);
    }

    #[test]
    fn third_derivative_of_cubic() {
        let t = MonomialTable::new(2, 3);
        let x = TaylorSeries::variable(&t, 0, 2.0);
        let y = TaylorSeries::variable(&t, 1, -1.0);
        // f = x^2 y + y^3
        let f = x.clone() * x.clone() * y.clone() + y.clone() * y.clone() * y.clone();
        assert_eq!(f.value(), -4.0 - 1.0);
        assert_eq!(f.derivative_at(&[2, 1]), 2.0);
        assert_eq!(f.derivative_at(&[0, 3]), 6.0);
        assert_eq!(f.derivative_at(&[1, 1]), 4.0);
    }

    #[test]
    fn elementary_functions_match_closed_derivatives() {
        let t = MonomialTable::new(1, 3);
        let x0 = 0.7;
        let x = TaylorSeries::variable(&t, 0, x0);
        let close = |a: f64, b: f64| (a - b).abs() < 1e-13 * (1.0 + b.abs());
        let s = x.sin();
        assert!(close(s.derivative_at(&[3]), -x0.cos()));
        let e = x.exp();
        assert!(close(e.derivative_at(&[3]), x0.exp()));
        let l = x.ln();
        assert!(close(l.derivative_at(&[3]), 2.0 / (x0 * x0 * x0)));
        let r = x.sqrt();
        assert!(close(r.derivative_at(&[2]), -0.25 * x0.powf(-1.5)));
        let q = x.lift(1.0) / x.clone();
        assert!(close(q.derivative_at(&[3]), -6.0 / x0.powi(4)));
        let c = x.cosh();
        assert!(close(c.derivative_at(&[3]), x0.sinh()));
    }

    #[test]
    fn differentiation_lowers_valid_order() {
        let t = MonomialTable::new(2, 3);
        let x = TaylorSeries::variable(&t, 0, 1.0);
        let y = TaylorSeries::variable(&t, 1, 1.0);
        let f = (x * y).sin();
        let fx = f.diff(0);
        assert_eq!(fx.valid_order(), 2);
        let fxy = fx.diff(1);
        assert!((fxy.value() - (1.0f64.cos() - 1.0f64.sin())).abs() < 1e-14);
        assert_eq!((fxy.clone() * f).valid_order(), 1);
    }

    #[test]
    fn agrees_with_jet2() {
        use crate::expr::parse_expr;
        use std::collections::BTreeMap;
        let e = parse_expr("exp(x*y)/(1 + x^2) + sqrt(y)", &["x", "y"], &BTreeMap::new()).unwrap();
        let p = [0.3, 1.7];
        let jet = e.eval_jet2(&p).unwrap();
        let t = MonomialTable::new(2, 2);
        let vars = [TaylorSeries::variable(&t, 0, p[0]), TaylorSeries::variable(&t, 1, p[1])];
        let ser = e.eval_with(&vars).unwrap().to_jet2();
        assert!((jet.value - ser.value).abs() < 1e-14);
        for a in 0..2 {
            assert!((jet.grad[a] - ser.grad[a]).abs() < 1e-13);
            for b in 0..2 {
                assert!((jet.hess(a, b) - ser.hess(a, b)).abs() < 1e-12);
            }
        }
    }
}
