//! Second-order forward-mode jets.

use std::ops::{Add, Div, Mul, Neg, Sub};

use super::Scalar;

/// Value, gradient and Hessian of a function of `n` variables.
///
/// The Hessian is stored as its upper triangle, row-major, so symmetry holds
/// by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub grad: Vec<f64>,
    hess: Vec<f64>,
}

#[inline]
fn tri_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

impl Jet2 {
    pub fn constant(n: usize, value: f64) -> Jet2 {
        Jet2 { value, grad: vec![0.0; n], hess: vec![0.0; n * (n + 1) / 2] }
    }

    /// The coordinate function `x_i` evaluated at `value`.
    pub fn variable(n: usize, i: usize, value: f64) -> Jet2 {
        let mut j = Jet2::constant(n, value);
        j.grad[i] = 1.0;
        j
    }

    /// Builds a jet from explicit data; `hess` must be symmetric (only the
    /// upper triangle is read).
    pub fn from_parts(value: f64, grad: Vec<f64>, hess: &[Vec<f64>]) -> Jet2 {
        let n = grad.len();
        let mut j = Jet2 { value, grad, hess: vec![0.0; n * (n + 1) / 2] };
        for a in 0..n {
            for b in a..n {
                j.hess[tri_index(n, a, b)] = hess[a][b];
            }
        }
        j
    }

    /// A jet with the given value and gradient and zero Hessian.
    pub fn first_order(value: f64, grad: Vec<f64>) -> Jet2 {
        let n = grad.len();
        Jet2 { value, grad, hess: vec![0.0; n * (n + 1) / 2] }
    }

    pub fn nvars(&self) -> usize {
        self.grad.len()
    }

    pub fn hess(&self, i: usize, j: usize) -> f64 {
        self.hess[tri_index(self.grad.len(), i, j)]
    }

    pub fn hess_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.nvars();
        (0..n).map(|i| (0..n).map(|j| self.hess(i, j)).collect()).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.grad.iter().all(|&g| g == 0.0) && self.hess.iter().all(|&h| h == 0.0)
    }

    /// `f(self)` given `f`, `f'` and `f''` at `self.value`.
    pub fn chain(&self, f0: f64, f1: f64, f2: f64) -> Jet2 {
        let n = self.nvars();
        let mut out = Jet2 {
            value: f0,
            grad: self.grad.iter().map(|g| f1 * g).collect(),
            hess: self.hess.iter().map(|h| f1 * h).collect(),
        };
        if f2 != 0.0 {
            for a in 0..n {
                for b in a..n {
                    out.hess[tri_index(n, a, b)] += f2 * self.grad[a] * self.grad[b];
                }
            }
        }
        out
    }

    pub fn recip(&self) -> Jet2 {
        let v = self.value;
        self.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }

    pub fn scale(&self, c: f64) -> Jet2 {
        Jet2 {
            value: c * self.value,
            grad: self.grad.iter().map(|g| c * g).collect(),
            hess: self.hess.iter().map(|h| c * h).collect(),
        }
    }

    fn zip(&self, other: &Jet2, f: impl Fn(f64, f64) -> f64) -> Jet2 {
        debug_assert_eq!(self.nvars(), other.nvars());
        Jet2 {
            value: f(self.value, other.value),
            grad: self.grad.iter().zip(&other.grad).map(|(a, b)| f(*a, *b)).collect(),
            hess: self.hess.iter().zip(&other.hess).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Jet2) -> Jet2 {
        let n = self.nvars();
        let (u, v) = (self.value, other.value);
        let mut out = Jet2 {
            value: u * v,
            grad: (0..n).map(|i| u * other.grad[i] + v * self.grad[i]).collect(),
            hess: self.hess.iter().zip(&other.hess).map(|(hu, hv)| u * hv + v * hu).collect(),
        };
        for a in 0..n {
            for b in a..n {
                out.hess[tri_index(n, a, b)] +=
                    self.grad[a] * other.grad[b] + other.grad[a] * self.grad[b];
            }
        }
        out
    }

    pub fn add_ref(&self, other: &Jet2) -> Jet2 {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub_ref(&self, other: &Jet2) -> Jet2 {
        self.zip(other, |a, b| a - b)
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        self.add_ref(&rhs)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        self.sub_ref(&rhs)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        self.mul_ref(&rhs)
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, rhs: Jet2) -> Jet2 {
        self.mul_ref(&rhs.recip())
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl Scalar for Jet2 {
    const CARRIES_DERIVATIVES: bool = true;

    fn lift(&self, c: f64) -> Self {
        Jet2::constant(self.nvars(), c)
    }

    fn value(&self) -> f64 {
        self.value
    }

    fn powf(&self, exponent: &Self) -> Self {
        if exponent.is_constant() {
            let a = exponent.value;
            let v = self.value;
            return self.chain(v.powf(a), a * v.powf(a - 1.0), a * (a - 1.0) * v.powf(a - 2.0));
        }
        let mut out = (exponent.clone() * self.ln()).exp();
        out.value = self.value.powf(exponent.value);
        out
    }

    fn sin(&self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    fn cos(&self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    fn tan(&self) -> Self {
        let t = self.value.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    fn exp(&self) -> Self {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    fn ln(&self) -> Self {
        let v = self.value;
        self.chain(v.ln(), 1.0 / v, -1.0 / (v * v))
    }

    fn sqrt(&self) -> Self {
        let r = self.value.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.value))
    }

    fn sinh(&self) -> Self {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.chain(s, c, s)
    }

    fn cosh(&self) -> Self {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.chain(c, s, c)
    }

    fn tanh(&self) -> Self {
        let t = self.value.tanh();
        let d = 1.0 - t * t;
        self.chain(t, d, -2.0 * t * d)
    }

    fn abs(&self) -> Self {
        let s = self.value.signum();
        self.chain(self.value.abs(), s, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hessian_storage_is_symmetric() {
        let x = Jet2::variable(3, 0, 1.5);
        let z = Jet2::variable(3, 2, -0.5);
        let p = x.mul_ref(&z);
        assert_eq!(p.hess(0, 2), 1.0);
        assert_eq!(p.hess(2, 0), 1.0);
        assert_eq!(p.hess(1, 1), 0.0);
    }

    #[test]
    fn quadratic_is_exact() {
        // f = 3x^2 - 2xy + y^2/2 + x - 7
        let x = Jet2::variable(2, 0, 0.3);
        let y = Jet2::variable(2, 1, -1.1);
        let c = |v| Jet2::constant(2, v);
        let f = c(3.0) * x.clone() * x.clone() - c(2.0) * x.clone() * y.clone()
            + y.clone() * y.clone() / c(2.0)
            + x.clone()
            - c(7.0);
        assert_eq!(f.grad, vec![6.0 * 0.3 - 2.0 * -1.1 + 1.0, -2.0 * 0.3 + -1.1]);
        assert_eq!((f.hess(0, 0), f.hess(0, 1), f.hess(1, 1)), (6.0, -2.0, 1.0));
    }

    #[test]
    fn from_parts_round_trip() {
        let h = vec![vec![1.0, 2.0], vec![2.0, 3.0]];
        let j = Jet2::from_parts(4.0, vec![5.0, 6.0], &h);
        assert_eq!(j.hess_matrix(), h);
    }
}
