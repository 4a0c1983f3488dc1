//! Exact arithmetic in the real part of a cyclotomic ring.
//!
//! Every scalar the toolkit manipulates — entries of the bilinear form, of
//! reflection matrices, and root coordinates — lies in `Q(zeta_N + 1/zeta_N)`
//! where `N` is a conductor chosen once per graph so that `2*cos(pi/m)` is
//! representable for every finite edge label `m`. Elements are stored as
//! rational-coefficient polynomials in `zeta_N`, reduced modulo the `N`-th
//! cyclotomic polynomial, which gives a decidable zero test. Signs of nonzero
//! values are decided by rational interval evaluation at the real embedding,
//! with precision doubled until the interval excludes zero.

mod cyclotomic;
mod interval;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi};
use interval::Interval;

#[derive(Debug, Error)]
pub enum ScalarError {
    #[error("label {0} does not divide the context conductor {1}")]
    LabelOutsideConductor(u64, u64),
    #[error("scalar context mismatch: conductor {0} vs {1}")]
    ContextMismatch(u64, u64),
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("scalar is not real")]
    NotReal,
}

/// Sign classification of a real cyclotomic scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Shared arithmetic context: conductor and cyclotomic modulus.
///
/// The conductor is the least common multiple of `{2m | m finite label, m >= 3}`
/// and 4, so it is always even and at least 4, and `2*cos(pi/m)` exists in the
/// ring for every label of the owning graph.
pub struct ScalarContext {
    conductor: u64,
    /// Monic modulus, constant term first; length `phi + 1`.
    modulus: Vec<BigInt>,
    phi: usize,
    cos_cache: Mutex<HashMap<(u64, u32), Interval>>,
}

impl fmt::Debug for ScalarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarContext")
            .field("conductor", &self.conductor)
            .field("phi", &self.phi)
            .finish()
    }
}

impl ScalarContext {
    /// Context for a collection of finite labels (values `m >= 2`).
    pub fn for_labels<I: IntoIterator<Item = u64>>(labels: I) -> Arc<ScalarContext> {
        let mut n: u64 = 4;
        for m in labels {
            if m >= 3 {
                n = n.lcm(&(2 * m));
            }
        }
        Self::with_conductor(n)
    }

    pub fn with_conductor(n: u64) -> Arc<ScalarContext> {
        assert!(
            n >= 4 && n.is_multiple_of(2),
            "conductor must be even and >= 4"
        );
        let modulus = cyclotomic_polynomial(n);
        let phi = modulus.len() - 1;
        Arc::new(ScalarContext {
            conductor: n,
            modulus,
            phi,
            cos_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    fn cos_enclosure(&self, j: u64, bits: u32) -> Interval {
        let key = (j % self.conductor, bits);
        let mut cache = self.cos_cache.lock().unwrap();
        if let Some(iv) = cache.get(&key) {
            return iv.clone();
        }
        let iv = interval::cos_two_pi_frac(key.0, self.conductor, bits);
        cache.insert(key, iv.clone());
        iv
    }
}

/// Exact element of the cyclotomic ring, in reduced normal form.
#[derive(Clone)]
pub struct CycScalar {
    ctx: Arc<ScalarContext>,
    /// Dense coefficients, constant term first, length `ctx.degree()`.
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar({self})")
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.conductor == other.ctx.conductor && self.coeffs == other.coeffs
    }
}
impl Eq for CycScalar {}

impl std::hash::Hash for CycScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.conductor.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for CycScalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on normal forms; used only as a deterministic
/// canonical ordering, not as the real-number order.
impl Ord for CycScalar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.ctx
            .conductor
            .cmp(&other.ctx.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl CycScalar {
    pub fn zero(ctx: &Arc<ScalarContext>) -> CycScalar {
        CycScalar {
            ctx: ctx.clone(),
            coeffs: vec![BigRational::zero(); ctx.phi],
        }
    }

    pub fn one(ctx: &Arc<ScalarContext>) -> CycScalar {
        Self::from_rational(ctx, BigRational::one())
    }

    pub fn from_integer(ctx: &Arc<ScalarContext>, n: i64) -> CycScalar {
        Self::from_rational(ctx, BigRational::from(BigInt::from(n)))
    }

    pub fn from_rational(ctx: &Arc<ScalarContext>, r: BigRational) -> CycScalar {
        let mut s = Self::zero(ctx);
        s.coeffs[0] = r;
        s
    }

    /// Build from raw power-basis coefficients (any length); reduces to
    /// normal form and validates realness.
    pub fn from_coeffs(
        ctx: &Arc<ScalarContext>,
        coeffs: Vec<BigRational>,
    ) -> Result<CycScalar, ScalarError> {
        let s = Self::reduce_new(ctx, coeffs);
        if !s.is_real() {
            return Err(ScalarError::NotReal);
        }
        Ok(s)
    }

    fn reduce_new(ctx: &Arc<ScalarContext>, mut coeffs: Vec<BigRational>) -> CycScalar {
        let phi = ctx.phi;
        if coeffs.len() < phi {
            coeffs.resize(phi, BigRational::zero());
        }
        // x^phi == -(m_0 + m_1 x + ... + m_{phi-1} x^{phi-1}) for the monic modulus
        for i in (phi..coeffs.len()).rev() {
            if coeffs[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut coeffs[i], BigRational::zero());
            for k in 0..phi {
                if !ctx.modulus[k].is_zero() {
                    let m = BigRational::from(ctx.modulus[k].clone());
                    coeffs[i - phi + k] -= &c * m;
                }
            }
        }
        coeffs.truncate(phi);
        CycScalar {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// `2*cos(pi/m)` as `x^(N/2m) + x^(N - N/2m)` in normal form.
    pub fn two_cos(ctx: &Arc<ScalarContext>, m: u64) -> Result<CycScalar, ScalarError> {
        if m == 0 || !ctx.conductor.is_multiple_of(2 * m) {
            return Err(ScalarError::LabelOutsideConductor(m, ctx.conductor));
        }
        let e = (ctx.conductor / (2 * m)) as usize;
        let n = ctx.conductor as usize;
        let mut raw = vec![BigRational::zero(); n];
        raw[e] += BigRational::one();
        raw[n - e] += BigRational::one();
        let s = Self::reduce_new(ctx, raw);
        assert!(s.is_real(), "two_cos produced a non-real scalar");
        Ok(s)
    }

    pub fn context(&self) -> &Arc<ScalarContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when the scalar is a rational number.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Fixed under the conjugation `x -> x^(N-1)`; real elements only pass
    /// through toolkit constructors, so this is an internal consistency check.
    pub fn is_real(&self) -> bool {
        let n = self.ctx.conductor as usize;
        let mut conj = vec![BigRational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = if j == 0 { 0 } else { n - j };
                conj[e] += c;
            }
        }
        let conj = Self::reduce_new(&self.ctx, conj);
        conj == *self
    }

    fn assert_ctx(&self, other: &CycScalar) {
        assert_eq!(
            self.ctx.conductor, other.ctx.conductor,
            "scalar context mismatch"
        );
    }

    pub fn add(&self, other: &CycScalar) -> CycScalar {
        self.assert_ctx(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycScalar {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &CycScalar) -> CycScalar {
        self.assert_ctx(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycScalar {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> CycScalar {
        CycScalar {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycScalar) -> CycScalar {
        self.assert_ctx(other);
        let phi = self.ctx.phi;
        let mut raw = vec![BigRational::zero(); 2 * phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let out = Self::reduce_new(&self.ctx, raw);
        debug_assert!(out.is_real());
        out
    }

    pub fn scale(&self, r: &BigRational) -> CycScalar {
        CycScalar {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn halved(&self) -> CycScalar {
        self.scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inverse(&self) -> Result<CycScalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let modulus: Vec<BigRational> = self
            .ctx
            .modulus
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let u = poly_modular_inverse(&self.coeffs, &modulus);
        Ok(Self::reduce_new(&self.ctx, u))
    }

    /// Exact sign at the real embedding.
    ///
    /// Zero is decided by the normal form; otherwise the value
    /// `sum_j c_j cos(2 pi j / N)` is enclosed in a rational interval whose
    /// precision doubles until it excludes zero.
    pub fn sign_or_zero(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        let mut bits: u32 = 64;
        loop {
            let mut acc = Interval::zero();
            for (j, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let iv = self.ctx.cos_enclosure(j as u64, bits);
                acc = acc.add(&iv.scale(c));
            }
            if acc.strictly_positive() {
                return Sign::Positive;
            }
            if acc.strictly_negative() {
                return Sign::Negative;
            }
            bits *= 2;
            assert!(
                bits <= 1 << 20,
                "sign test failed to converge; non-real scalar?"
            );
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign_or_zero() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign_or_zero() == Sign::Negative
    }

    /// Floating-point shadow of the real value, for display only.
    pub fn approx(&self) -> f64 {
        let n = self.ctx.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if c.is_zero() {
                    0.0
                } else {
                    let angle = 2.0 * std::f64::consts::PI * (j as f64) / n;
                    rational_to_f64(c) * angle.cos()
                }
            })
            .sum()
    }

    /// JSON form: exact coefficient list plus a decimal shadow.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| {
                serde_json::json!({
                    "num": bigint_json(c.numer()),
                    "den": bigint_json(c.denom()),
                })
            })
            .collect();
        serde_json::json!({
            "coeffs": coeffs,
            "approx": self.approx(),
        })
    }
}

fn bigint_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::json!(v),
        None => serde_json::json!(n.to_string()),
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Inverse of `a` modulo the monic polynomial `m` (both constant-first).
fn poly_modular_inverse(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    // extended Euclid: maintain r0 = m, r1 = a with u0 = 0, u1 = 1 so that
    // u_i * a == r_i (mod m)
    let mut r0 = trim(m.to_vec());
    let mut r1 = trim(a.to_vec());
    let mut u0: Vec<BigRational> = vec![];
    let mut u1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, rem) = poly_divmod(&r0, &r1);
        let next_u = poly_sub(&u0, &poly_mul(&q, &u1));
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = trim(next_u);
    }
    // r0 is a nonzero constant gcd (the modulus is irreducible)
    assert_eq!(r0.len(), 1, "cyclotomic modulus not coprime with scalar");
    let inv = BigRational::one() / r0[0].clone();
    u0.iter().map(|c| c * &inv).collect()
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    for i in (b.len() - 1..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let q = &rem[i] / &lead;
        let shift = i - (b.len() - 1);
        for (k, c) in b.iter().enumerate() {
            if !c.is_zero() {
                let delta = &q * c;
                rem[shift + k] -= delta;
            }
        }
        quot[shift] = q;
    }
    (trim(quot), trim(rem))
}

impl fmt::Display for CycScalar {
    /// `x` denotes the fixed primitive `N`-th root of unity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first && c.is_positive() {
                write!(f, "+")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "x^{j}")?;
            } else if (-c).is_one() {
                write!(f, "-x^{j}")?;
            } else {
                write!(f, "{c}*x^{j}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
