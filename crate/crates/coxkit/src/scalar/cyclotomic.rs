//! Integer-coefficient cyclotomic polynomials.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Distinct prime factors of `n`, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Euler totient of `n`.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for p in prime_factors(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Moebius function of a squarefree `n` given its prime count.
fn moebius_squarefree(n: u64) -> i32 {
    if n == 1 {
        return 1;
    }
    let k = prime_factors(n).len();
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Multiply `p` by `(x^d - 1)` in place.
fn mul_binomial(p: &mut Vec<BigInt>, d: usize) {
    let old = std::mem::take(p);
    let mut res = vec![BigInt::zero(); old.len() + d];
    for (i, c) in old.into_iter().enumerate() {
        res[i + d] += &c;
        res[i] -= c;
    }
    *p = res;
}

/// Divide `p` exactly by `(x^d - 1)`; panics if the division is not exact.
fn div_binomial(p: &mut Vec<BigInt>, d: usize) {
    let n = p.len();
    assert!(n > d, "degree too small for binomial division");
    let mut q = vec![BigInt::zero(); n - d];
    // p[k] = q[k-d] - q[k], solved from the top down
    for k in (d..n).rev() {
        let qk = if k < q.len() {
            q[k].clone()
        } else {
            BigInt::zero()
        };
        q[k - d] = &p[k] + &qk;
    }
    for k in 0..d {
        let qk = if k < q.len() {
            q[k].clone()
        } else {
            BigInt::zero()
        };
        assert!((&p[k] + &qk).is_zero(), "inexact cyclotomic division");
    }
    *p = q;
}

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
///
/// Uses the Moebius product over the squarefree radical, then substitutes
/// `x^(n/r)`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    if n == 1 {
        return vec![-BigInt::one(), BigInt::one()]; // x - 1
    }
    let radical: u64 = prime_factors(n).iter().product();
    let mut poly = vec![BigInt::one()];
    let divs = divisors(radical);
    for &d in &divs {
        if moebius_squarefree(radical / d) == 1 {
            mul_binomial(&mut poly, d as usize);
        }
    }
    for &d in &divs {
        if moebius_squarefree(radical / d) == -1 {
            div_binomial(&mut poly, d as usize);
        }
    }
    // Phi_n(x) = Phi_radical(x^(n/radical))
    let stretch = (n / radical) as usize;
    if stretch > 1 {
        let mut out = vec![BigInt::zero(); (poly.len() - 1) * stretch + 1];
        for (i, c) in poly.into_iter().enumerate() {
            out[i * stretch] = c;
        }
        poly = out;
    }
    debug_assert_eq!(poly.len() as u64 - 1, euler_phi(n));
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(n: u64) -> Vec<i64> {
        cyclotomic_polynomial(n)
            .into_iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(coeffs(1), vec![-1, 1]);
        assert_eq!(coeffs(2), vec![1, 1]);
        assert_eq!(coeffs(3), vec![1, 1, 1]);
        assert_eq!(coeffs(4), vec![1, 0, 1]);
        assert_eq!(coeffs(6), vec![1, -1, 1]);
        assert_eq!(coeffs(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(coeffs(20), vec![1, 0, -1, 0, 1, 0, -1, 0, 1]);
        assert_eq!(coeffs(24), vec![1, 0, 0, 0, -1, 0, 0, 0, 1]);
    }

    #[test]
    fn degrees_match_phi() {
        for n in 1..200u64 {
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(60), 16);
        assert_eq!(euler_phi(4), 2);
    }
}
