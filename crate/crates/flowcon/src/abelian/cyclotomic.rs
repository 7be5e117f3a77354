use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactpoly::IntPoly;

/// Element of Z[ζ_L] for ζ_L = e^{2πi/L}, stored as an integer coefficient
/// vector of length L representing Σ c_j ζ^j. Representations are not unique;
/// equality is decided by exact reduction against the L-th cyclotomic
/// polynomial.
#[derive(Debug, Clone)]
pub struct CyclotomicValue {
    order: u64,
    coeffs: Vec<BigInt>,
}

/// Φ_n(x), computed as (x^n - 1) / Π_{d|n, d<n} Φ_d(x) and memoized.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    thread_local! {
        static CACHE: std::cell::RefCell<std::collections::HashMap<u64, IntPoly>> =
            std::cell::RefCell::new(std::collections::HashMap::new());
    }
    if let Some(p) = CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut num = IntPoly::new(num);
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = num.div_rem_monic(&cyclotomic_polynomial(d));
            debug_assert!(r.is_zero());
            num = q;
        }
    }
    CACHE.with(|c| c.borrow_mut().insert(n, num.clone()));
    num
}

impl CyclotomicValue {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1);
        CyclotomicValue {
            order,
            coeffs: vec![BigInt::zero(); order as usize],
        }
    }

    pub fn from_integer(c: BigInt) -> Self {
        CyclotomicValue {
            order: 1,
            coeffs: vec![c],
        }
    }

    /// The monomial ζ_order^exp.
    pub fn root_of_unity(order: u64, exp: u64) -> Self {
        let mut v = CyclotomicValue::zero(order);
        v.coeffs[(exp % order) as usize] = BigInt::one();
        v
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Re-express at order `m`, which must be a multiple of the current
    /// order.
    pub fn promote(&self, m: u64) -> CyclotomicValue {
        assert!(m % self.order == 0);
        let stride = (m / self.order) as usize;
        let mut out = CyclotomicValue::zero(m);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[j * stride] = c.clone();
        }
        out
    }

    fn unify(&self, other: &CyclotomicValue) -> (CyclotomicValue, CyclotomicValue) {
        let m = self.order.lcm(&other.order);
        (self.promote(m), other.promote(m))
    }

    pub fn add(&self, other: &CyclotomicValue) -> CyclotomicValue {
        let (mut a, b) = self.unify(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &CyclotomicValue) -> CyclotomicValue {
        let (mut a, b) = self.unify(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> CyclotomicValue {
        CyclotomicValue {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Product, convolving exponents modulo the (unified) order.
    pub fn mul(&self, other: &CyclotomicValue) -> CyclotomicValue {
        let (a, b) = self.unify(other);
        let l = a.order as usize;
        let mut out = CyclotomicValue::zero(a.order);
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                out.coeffs[(i + j) % l] += x * y;
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> CyclotomicValue {
        CyclotomicValue {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Complex conjugate: ζ^j -> ζ^{L-j}.
    pub fn conjugate(&self) -> CyclotomicValue {
        let l = self.order as usize;
        let mut out = CyclotomicValue::zero(self.order);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(l - j) % l] = c.clone();
        }
        out
    }

    /// Unique coordinates in the power basis 1, ζ, ..., ζ^{φ(L)-1}: the
    /// remainder of the coefficient polynomial modulo Φ_L.
    pub fn reduced(&self) -> Vec<BigInt> {
        let phi = cyclotomic_polynomial(self.order);
        let p = IntPoly::new(self.coeffs.clone());
        let (_, r) = p.div_rem_monic(&phi);
        let deg = phi.degree().unwrap();
        let mut out = r.coeffs().to_vec();
        out.resize(deg.max(1), BigInt::zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.raw_zero() || self.reduced().iter().all(|c| c.is_zero())
    }

    /// Fast sufficient (not necessary) zero test on the raw coefficients.
    pub(crate) fn raw_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.sub(&self.conjugate()).is_zero()
    }

    /// The value as a rational integer, if it is one. The reduced power-basis
    /// coordinates are unique, so the value is rational iff only the constant
    /// coordinate survives.
    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.reduced();
        if r[1..].iter().all(|c| c.is_zero()) {
            Some(r[0].clone())
        } else {
            None
        }
    }

    /// Floating-point evaluation; test oracle only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let l = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            // coefficients stay small in every use here
            let cf = c.to_string().parse::<f64>().unwrap();
            let theta = 2.0 * std::f64::consts::PI * j as f64 / l;
            re += cf * theta.cos();
            im += cf * theta.sin();
        }
        (re, im)
    }
}

impl PartialEq for CyclotomicValue {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl Eq for CyclotomicValue {}

impl fmt::Display for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mag = c.abs();
            if j == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "z{}^{j}", self.order)?;
            } else {
                write!(f, "{mag}*z{}^{j}", self.order)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
