use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Square big-integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        IntMatrix {
            dim,
            data: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = IntMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn ones(dim: usize) -> Self {
        let mut m = IntMatrix::zeros(dim);
        for v in m.data.iter_mut() {
            *v = BigInt::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.dim + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim);
        IntMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * n + j] += a * b;
                }
            }
        }
        out
    }

    /// Evaluate `p(A)` with matrix Horner.
    pub fn apply_poly(&self, p: &IntPoly) -> IntMatrix {
        let n = self.dim;
        let mut acc = IntMatrix::zeros(n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc.data[i * n + i] += c;
            }
        }
        acc
    }

    /// Exact characteristic polynomial `det(tI - A)` by the
    /// Faddeev-LeVerrier recurrence; every division is exact over the
    /// integers.
    pub fn char_poly(&self) -> IntPoly {
        let n = self.dim;
        // p(t) = t^n + a[n-1] t^{n-1} + ... + a[0]
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = self.clone();
        for k in 1..=n {
            let a = -m.trace() / BigInt::from(k);
            coeffs[n - k] = a.clone();
            if k < n {
                let mut shifted = m;
                for i in 0..n {
                    shifted.data[i * n + i] += &a;
                }
                m = self.mul(&shifted);
            }
        }
        IntPoly::new(coeffs)
    }

    /// Minimum polynomial of a symmetric matrix: the square-free part of the
    /// characteristic polynomial.
    pub fn min_poly_symmetric(&self) -> Result<IntPoly> {
        if !self.is_symmetric() {
            return Err(Error::InvalidArgument(
                "minimum polynomial via square-free part requires a symmetric matrix".into(),
            ));
        }
        let p = self.char_poly().square_free_part()?;
        if !p.is_monic() {
            return Err(Error::Inconsistency(format!(
                "square-free part of a characteristic polynomial is not monic: {p}"
            )));
        }
        Ok(p)
    }
}
