//! Rational interval enclosures used by the exact sign test.
//!
//! The only transcendental inputs are pi and cosines of rational multiples of
//! 2*pi. Both are enclosed by alternating series with explicit tail bounds, so
//! every interval endpoint is an exact rational and the enclosures are sound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    fn point(v: BigRational) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    fn widen(mut self, err: &BigRational) -> Self {
        self.lo -= err;
        self.hi += err;
        self
    }

    /// Round outward to dyadic endpoints with denominator `2^bits`.
    ///
    /// The exact series partial sums carry factorial-sized denominators;
    /// rounding keeps every later interval operation on small numbers while
    /// staying sound.
    fn round_outward(self, bits: u32) -> Self {
        let scale = BigInt::one() << bits;
        let lo = (self.lo.numer() * &scale).div_floor(self.lo.denom());
        let hi = (self.hi.numer() * &scale).div_ceil(self.hi.denom());
        Interval {
            lo: BigRational::new(lo, scale.clone()),
            hi: BigRational::new(hi, scale),
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    fn sub_interval(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    /// Product of two intervals with nonnegative lower endpoints.
    fn mul_nonneg(&self, other: &Interval) -> Interval {
        debug_assert!(!self.lo.is_negative() && !other.lo.is_negative());
        Interval {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    fn div_pos_int(&self, d: &BigInt) -> Interval {
        let r = BigRational::new(BigInt::one(), d.clone());
        Interval {
            lo: &self.lo * &r,
            hi: &self.hi * &r,
        }
    }

    /// Scale by an exact rational (either sign).
    pub fn scale(&self, c: &BigRational) -> Interval {
        if c.is_negative() {
            Interval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            Interval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    pub fn zero() -> Interval {
        Interval::point(BigRational::zero())
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }
}

fn pow2_inv(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// arctan(1/m) by the alternating Gregory series, with the first omitted term
/// as tail bound.
fn arctan_inv(m: u64, bits: u32) -> Interval {
    let eps = pow2_inv(bits);
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut term = BigRational::new(BigInt::one(), m.clone());
    let mut sum = BigRational::zero();
    let mut sign = true;
    let mut k = 0u64;
    loop {
        if term < eps {
            break;
        }
        if sign {
            sum += &term;
        } else {
            sum -= &term;
        }
        // next term: 1 / ((2k+3) m^(2k+3))
        let odd = BigInt::from(2 * k + 1);
        let next_odd = BigInt::from(2 * k + 3);
        term = term * BigRational::new(odd, next_odd) * BigRational::new(BigInt::one(), m2.clone());
        sign = !sign;
        k += 1;
    }
    // alternating series: truncation error bounded by the next term
    Interval::point(sum).widen(&term)
}

/// Enclosure of pi via Machin's formula.
pub fn pi_interval(bits: u32) -> Interval {
    let a = arctan_inv(5, bits + 8);
    let b = arctan_inv(239, bits + 8);
    let sixteen = BigRational::from(BigInt::from(16));
    let minus_four = BigRational::from(BigInt::from(-4));
    a.scale(&sixteen)
        .add(&b.scale(&minus_four))
        .round_outward(bits + 4)
}

/// cos at an exact rational point: interval Taylor series with alternating
/// tail bound, every step rounded to fixed dyadic precision so intermediate
/// numbers stay small.
///
/// Valid for |x| <= 8; terms decrease once 2k > |x|, and the bound waits for
/// that before stopping.
fn cos_rational(x: &BigRational, bits: u32) -> Interval {
    let p = bits + 12;
    let eps = pow2_inv(bits + 4);
    let x2 = Interval::point(x * x).round_outward(p);
    let mut term = Interval::point(BigRational::one());
    let mut sum = Interval::zero();
    let mut add = true;
    let mut k = 0u64;
    loop {
        if k >= 4 && term.hi < eps {
            break;
        }
        sum = if add {
            sum.add(&term)
        } else {
            sum.sub_interval(&term)
        }
        .round_outward(p);
        let denom = BigInt::from((2 * k + 1) * (2 * k + 2));
        term = term.mul_nonneg(&x2).div_pos_int(&denom).round_outward(p);
        add = !add;
        k += 1;
        assert!(k < 10_000, "cos series failed to converge");
    }
    sum.widen(&term.hi.clone())
}

/// Enclosure of cos(2*pi*j/n) to roughly `bits` bits, with dyadic endpoints.
pub fn cos_two_pi_frac(j: u64, n: u64, bits: u32) -> Interval {
    let j = j % n;
    let pi = pi_interval(bits + 16);
    let frac = BigRational::new(BigInt::from(2 * j), BigInt::from(n));
    // x ranges over [frac*pi.lo, frac*pi.hi]; evaluate at the midpoint and
    // add the radius (|cos'| <= 1)
    let x_iv = pi.scale(&frac);
    let mid = (&x_iv.lo + &x_iv.hi) / BigRational::from(BigInt::from(2));
    let radius = (&x_iv.hi - &x_iv.lo) / BigRational::from(BigInt::from(2));
    cos_rational(&mid, bits + 4)
        .widen(&radius)
        .round_outward(bits)
}
