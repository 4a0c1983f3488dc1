//! Dense square matrices over [`CycScalar`], just enough for the reflection
//! representation: products, matrix-vector action, and exact leading minors.

use std::sync::Arc;

use crate::scalar::{CycScalar, ScalarContext, Sign};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Matrix {
    n: usize,
    /// Row-major entries.
    data: Vec<CycScalar>,
}

impl Matrix {
    pub fn identity(ctx: &Arc<ScalarContext>, n: usize) -> Matrix {
        let mut data = vec![CycScalar::zero(ctx); n * n];
        for i in 0..n {
            data[i * n + i] = CycScalar::one(ctx);
        }
        Matrix { n, data }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> CycScalar) -> Matrix {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &CycScalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycScalar) {
        self.data[i * self.n + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<CycScalar> {
        (0..self.n).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        Matrix::from_fn(n, |i, j| {
            let mut acc = None;
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.at(k, j);
                if b.is_zero() {
                    continue;
                }
                let term = a.mul(b);
                acc = Some(match acc {
                    None => term,
                    Some(s) => term.add(&s),
                });
            }
            acc.unwrap_or_else(|| CycScalar::zero(self.data[0].context()))
        })
    }

    pub fn apply(&self, v: &[CycScalar]) -> Vec<CycScalar> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| {
                let mut acc = CycScalar::zero(v[0].context());
                for (k, x) in v.iter().enumerate() {
                    let a = self.at(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    /// Leading principal minors `det(A[..k][..k])` for `k = 1..=n`.
    ///
    /// Division-free dynamic program over column subsets (Laplace expansion
    /// row by row), so coefficients stay the size of honest minors; ranks
    /// here are small (a Coxeter graph component). Absent subset keys stand
    /// for zero determinants.
    pub fn leading_minors(&self) -> Vec<CycScalar> {
        assert!(self.n <= 28, "minor computation is exponential in rank");
        if self.n == 0 {
            return Vec::new();
        }
        let ctx = self.data[0].context().clone();
        let mut minors = Vec::with_capacity(self.n);
        let mut dp: std::collections::HashMap<u32, CycScalar> = std::collections::HashMap::new();
        dp.insert(0, CycScalar::one(&ctx));
        for row in 0..self.n {
            let mut next: std::collections::HashMap<u32, CycScalar> =
                std::collections::HashMap::new();
            for (mask, det) in &dp {
                for c in 0..self.n as u32 {
                    let bit = 1u32 << c;
                    if mask & bit != 0 {
                        continue;
                    }
                    let a = self.at(row, c as usize);
                    if a.is_zero() {
                        continue;
                    }
                    // sign of inserting column c at its sorted position, for
                    // the expansion along the current (last) row
                    let pos = (mask & (bit - 1)).count_ones() as usize;
                    let term = a.mul(det);
                    let term = if (row + pos).is_multiple_of(2) {
                        term
                    } else {
                        term.neg()
                    };
                    let key = mask | bit;
                    let entry = next.remove(&key);
                    let sum = match entry {
                        None => term,
                        Some(s) => s.add(&term),
                    };
                    if !sum.is_zero() {
                        next.insert(key, sum);
                    }
                }
            }
            dp = next;
            let full = (1u32 << (row + 1)) - 1;
            minors.push(
                dp.get(&full)
                    .cloned()
                    .unwrap_or_else(|| CycScalar::zero(&ctx)),
            );
        }
        minors
    }

    /// Positive definiteness by Sylvester's criterion on exact minors.
    pub fn is_positive_definite(&self) -> bool {
        self.leading_minors()
            .iter()
            .all(|d| d.sign_or_zero() == Sign::Positive)
    }
}
