use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Krawtchouk polynomial value
/// `K_r(w; d, m) = sum_i (-1)^i (m-1)^{r-i} C(w,i) C(d-w,r-i)`.
pub fn krawtchouk(r: u64, w: u64, d: u64, m: u64) -> Result<BigInt> {
    if r > d || w > d {
        return Err(Error::InvalidArgument(format!(
            "krawtchouk arguments out of range: r={r}, w={w}, d={d}"
        )));
    }
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "krawtchouk alphabet size must be at least 2, got {m}"
        )));
    }
    let mm1 = BigInt::from(m - 1);
    let mut acc = BigInt::zero();
    for i in 0..=r {
        let mut term = mm1.pow((r - i) as u32) * binomial(w, i) * binomial(d - w, r - i);
        if i % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    Ok(acc)
}

/// Power sums `s_1..s_kmax` of the non-principal eigenvalues of the
/// {±1}-flow Cayley graph on Z_n, n odd:
/// `s_k = -2^{k-1}` for odd k, `s_k = (n/2) C(k, k/2) - 2^{k-1}` for even k.
pub fn power_sums_pm1(n: u64, k_max: usize) -> Result<Vec<BigInt>> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "the closed form for power sums requires odd n >= 3, got {n}"
        )));
    }
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max as u64 {
        let two_pow = BigInt::from(2).pow((k - 1) as u32);
        let s = if k % 2 == 1 {
            -two_pow
        } else {
            BigInt::from(n) * binomial(k, k / 2) / BigInt::from(2) - two_pow
        };
        out.push(s);
    }
    Ok(out)
}

/// Elementary symmetric functions `e_1..e_jmax` from power sums via the
/// Newton-Girard recurrence `j e_j = sum_{i=1..j} (-1)^{i-1} e_{j-i} s_i`.
pub fn newton_girard(power_sums: &[BigInt], j_max: usize) -> Result<Vec<BigRational>> {
    if power_sums.len() < j_max {
        return Err(Error::InvalidArgument(format!(
            "need power sums s_1..s_{j_max}, got only {}",
            power_sums.len()
        )));
    }
    let mut e: Vec<BigRational> = vec![BigRational::one()];
    for j in 1..=j_max {
        let mut acc = BigRational::zero();
        for i in 1..=j {
            let term = &e[j - i] * BigRational::from_integer(power_sums[i - 1].clone());
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from_integer(BigInt::from(j)));
    }
    Ok(e[1..].to_vec())
}
