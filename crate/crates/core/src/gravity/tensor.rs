//! Fixed-size component arrays for four dimensions and the labelled
//! [`TensorValue`] used in reports.

use std::fmt;

pub const DIM: usize = 4;

pub type T1 = [f64; DIM];
pub type T2 = [[f64; DIM]; DIM];
pub type T3 = [[[f64; DIM]; DIM]; DIM];
pub type T4 = [[[[f64; DIM]; DIM]; DIM]; DIM];

pub const Z1: T1 = [0.0; DIM];
pub const Z2: T2 = [Z1; DIM];
pub const Z3: T3 = [Z2; DIM];
pub const Z4: T4 = [Z3; DIM];

/// The Minkowski metric `diag(1, -1, -1, -1)`.
pub const ETA: T2 = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
    [0.0, 0.0, -1.0, 0.0],
    [0.0, 0.0, 0.0, -1.0],
];

pub fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

pub fn eta(a: usize) -> f64 {
    ETA[a][a]
}

pub fn max_abs1(t: &T1) -> f64 {
    t.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

pub fn max_abs2(t: &T2) -> f64 {
    t.iter().map(max_abs1).fold(0.0, f64::max)
}

pub fn max_abs3(t: &T3) -> f64 {
    t.iter().map(max_abs2).fold(0.0, f64::max)
}

pub fn max_abs4(t: &T4) -> f64 {
    t.iter().map(max_abs3).fold(0.0, f64::max)
}

pub fn sub2(a: &T2, b: &T2) -> T2 {
    let mut out = Z2;
    for i in 0..DIM {
        for j in 0..DIM {
            out[i][j] = a[i][j] - b[i][j];
        }
    }
    out
}

pub fn sub3(a: &T3, b: &T3) -> T3 {
    let mut out = Z3;
    for i in 0..DIM {
        out[i] = sub2(&a[i], &b[i]);
    }
    out
}

pub fn matmul(a: &T2, b: &T2) -> T2 {
    let mut out = Z2;
    for i in 0..DIM {
        for j in 0..DIM {
            out[i][j] = (0..DIM).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn transpose(a: &T2) -> T2 {
    let mut out = Z2;
    for i in 0..DIM {
        for j in 0..DIM {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub fn to_matrix(a: &T2) -> nalgebra::Matrix4<f64> {
    nalgebra::Matrix4::from_fn(|i, j| a[i][j])
}

pub fn from_matrix(m: &nalgebra::Matrix4<f64>) -> T2 {
    let mut out = Z2;
    for i in 0..DIM {
        for j in 0..DIM {
            out[i][j] = m[(i, j)];
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Up,
    Down,
}

/// Components of a tensor at a point with index variance and labels.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorValue {
    pub name: String,
    pub indices: Vec<(&'static str, Variance)>,
    data: Vec<f64>,
}

impl TensorValue {
    pub fn new(name: impl Into<String>, indices: Vec<(&'static str, Variance)>, data: Vec<f64>) -> TensorValue {
        assert_eq!(data.len(), DIM.pow(indices.len() as u32), "component count must be 4^rank");
        TensorValue { name: name.into(), indices, data }
    }

    pub fn scalar(name: impl Into<String>, v: f64) -> TensorValue {
        TensorValue::new(name, Vec::new(), vec![v])
    }

    pub fn from_t1(name: impl Into<String>, idx: [(&'static str, Variance); 1], t: &T1) -> TensorValue {
        TensorValue::new(name, idx.to_vec(), t.to_vec())
    }

    pub fn from_t2(name: impl Into<String>, idx: [(&'static str, Variance); 2], t: &T2) -> TensorValue {
        TensorValue::new(name, idx.to_vec(), t.iter().flatten().copied().collect())
    }

    pub fn from_t3(name: impl Into<String>, idx: [(&'static str, Variance); 3], t: &T3) -> TensorValue {
        TensorValue::new(name, idx.to_vec(), t.iter().flatten().flatten().copied().collect())
    }

    pub fn from_t4(name: impl Into<String>, idx: [(&'static str, Variance); 4], t: &T4) -> TensorValue {
        TensorValue::new(name, idx.to_vec(), t.iter().flatten().flatten().flatten().copied().collect())
    }

    pub fn rank(&self) -> usize {
        self.indices.len()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.rank(), "index count must equal the rank");
        idx.iter().fold(0, |acc, &i| {
            assert!(i < DIM, "index out of range");
            acc * DIM + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    /// Every component with its multi-index, in row-major order.
    pub fn components(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        let r = self.rank();
        self.data.iter().enumerate().map(move |(k, &v)| {
            let mut idx = vec![0; r];
            let mut rest = k;
            for slot in idx.iter_mut().rev() {
                *slot = rest % DIM;
                rest /= DIM;
            }
            (idx, v)
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &TensorValue) -> f64 {
        assert_eq!(self.rank(), other.rank());
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Largest `|t(..i..j..) + sign * t(..j..i..)|` over all components;
    /// `sign = 1` measures antisymmetry, `sign = -1` symmetry.
    fn pair_residual(&self, i: usize, j: usize, sign: f64) -> f64 {
        self.components()
            .map(|(idx, v)| {
                let mut sw = idx.clone();
                sw.swap(i, j);
                (v + sign * self.get(&sw)).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn antisymmetry_residual(&self, i: usize, j: usize) -> f64 {
        self.pair_residual(i, j, 1.0)
    }

    pub fn symmetry_residual(&self, i: usize, j: usize) -> f64 {
        self.pair_residual(i, j, -1.0)
    }

    /// Index signature such as `_mu^nu_lam`.
    pub fn index_pattern(&self) -> String {
        self.indices
            .iter()
            .map(|(l, v)| match v {
                Variance::Up => format!("^{l}"),
                Variance::Down => format!("_{l}"),
            })
            .collect()
    }
}

impl fmt::Display for TensorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}{}", self.name, self.index_pattern())?;
        for (idx, v) in self.components() {
            if v != 0.0 {
                writeln!(f, "  {idx:?} = {v:.12e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_order_is_row_major() {
        let mut t = Z3;
        t[1][2][3] = 5.0;
        let tv = TensorValue::from_t3("x", [("a", Variance::Down), ("b", Variance::Up), ("c", Variance::Down)], &t);
        assert_eq!(tv.get(&[1, 2, 3]), 5.0);
        let (idx, v) = tv.components().find(|(_, v)| *v != 0.0).unwrap();
        assert_eq!((idx, v), (vec![1, 2, 3], 5.0));
        assert_eq!(tv.index_pattern(), "_a^b_c");
        assert_eq!(tv.antisymmetry_residual(0, 2), 5.0);
    }
}
