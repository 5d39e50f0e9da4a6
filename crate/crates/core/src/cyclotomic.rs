//! Exact arithmetic in `Q(ζ_m)`.
//!
//! A [`CycNum`] stores rational coordinates in the power basis
//! `1, ζ, ..., ζ^{φ(m)-1}`, reduced modulo the cyclotomic polynomial `Φ_m`.
//! Reduced coordinates are unique, so equality is coordinate equality and
//! every identity checked by this crate is an exact comparison.
//!
//! Character sums are accumulated first in the group ring `Z[Z/m]` with a
//! [`RootSum`] (one integer counter per exponent of `ζ_m`) and reduced once.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            while m % d == 0 {
                m /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Integer coefficients of `Φ_m`, low degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycPoly {
    pub m: u64,
    pub coeffs: Vec<i64>,
}

impl CycPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn memo() -> &'static RwLock<HashMap<u64, Arc<CycPoly>>> {
    static MEMO: OnceLock<RwLock<HashMap<u64, Arc<CycPoly>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Exact quotient of `a` by the monic `b`; panics if the division leaves a remainder.
fn exact_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut quot = vec![0i64; a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = r[i + db];
        quot[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = r[i + j]
                    .checked_sub(c.checked_mul(bj).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    assert!(r.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// `Φ_m`, as `(x^m - 1)` divided by `Φ_d` for every proper divisor `d`.
///
/// Results are memoized in a process-wide table that is safe to read from
/// worker threads.
pub fn cyclotomic_poly(m: u64) -> Arc<CycPoly> {
    assert!(m >= 1, "cyclotomic order must be positive");
    if let Some(hit) = memo().read().unwrap().get(&m) {
        return Arc::clone(hit);
    }
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in (1..m).filter(|d| m % d == 0) {
        let phi_d = cyclotomic_poly(d);
        num = exact_div_monic(&num, &phi_d.coeffs);
    }
    let poly = Arc::new(CycPoly { m, coeffs: num });
    memo()
        .write()
        .unwrap()
        .entry(m)
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

fn reduce_integers(m: u64, mut v: Vec<BigInt>) -> Vec<BigInt> {
    let phi = cyclotomic_poly(m);
    let d = phi.degree();
    while v.len() > d {
        let c = v.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let base = v.len() - d;
        for (j, &pj) in phi.coeffs[..d].iter().enumerate() {
            v[base + j] -= &c * pj;
        }
    }
    v.resize(d, BigInt::zero());
    v
}

fn reduce_rationals(m: u64, mut v: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_poly(m);
    let d = phi.degree();
    while v.len() > d {
        let c = v.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let base = v.len() - d;
        for (j, &pj) in phi.coeffs[..d].iter().enumerate() {
            if pj != 0 {
                v[base + j] -= &c * BigRational::from_integer(pj.into());
            }
        }
    }
    v.resize(d, BigRational::zero());
    v
}

/// An exact element of `Q(ζ_m)`.
#[derive(Clone, Debug)]
pub struct CycNum {
    m: u64,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero(m: u64) -> Self {
        let d = cyclotomic_poly(m).degree();
        Self { m, coeffs: vec![BigRational::zero(); d] }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_integer(m: u64, n: impl Into<BigInt>) -> Self {
        Self::from_rational(m, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(m: u64, r: BigRational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = r;
        z
    }

    /// `ζ_m^e`, with `e` taken mod `m`.
    pub fn zeta(m: u64, e: i64) -> Self {
        let e = e.rem_euclid(m as i64) as usize;
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::one();
        Self::from_reduced_integers(m, reduce_integers(m, v))
    }

    fn from_reduced_integers(m: u64, v: Vec<BigInt>) -> Self {
        Self { m, coeffs: v.into_iter().map(BigRational::from_integer).collect() }
    }

    /// `Σ counts[e] ζ_m^e`; `counts` may be shorter than `m`.
    pub fn from_exponent_counts(m: u64, counts: &[BigInt]) -> Self {
        assert!(counts.len() as u64 <= m, "exponent vector longer than m");
        Self::from_reduced_integers(m, reduce_integers(m, counts.to_vec()))
    }

    /// Builds a value from power-basis coordinates, reducing if needed.
    pub fn from_coeffs(m: u64, coeffs: Vec<BigRational>) -> Self {
        Self { m, coeffs: reduce_rationals(m, coeffs) }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, when this number lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Re-expresses this number in `Q(ζ_n)` for a multiple `n` of `m`.
    pub fn lift(&self, n: u64) -> Self {
        assert!(n % self.m == 0, "cannot lift from order {} to {}", self.m, n);
        if n == self.m {
            return self.clone();
        }
        let step = (n / self.m) as usize;
        let mut v = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Self::from_coeffs(n, v)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.m == b.m {
            (a.clone(), b.clone())
        } else {
            let l = a.m.lcm(&b.m);
            (a.lift(l), b.lift(l))
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self { m: self.m, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let m = self.m as usize;
        let mut v = vec![BigRational::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[(m - i) % m] += c;
        }
        Self::from_coeffs(self.m, v)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.m);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Numerical value at `ζ_m = e^{2πi/m}`.
    pub fn to_complex(&self) -> Complex64 {
        let step = std::f64::consts::TAU / self.m as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), step * i as f64))
            .sum()
    }

    /// Canonical text `m; c_0/d_0, c_1/d_1, ...`.
    pub fn canonical_string(&self) -> String {
        let body = self
            .coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect::<Vec<_>>()
            .join(", ");
        format!("{}; {}", self.m, body)
    }

    pub fn parse_canonical(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a canonical cyclotomic value: {s}"));
        let (m, body) = s.split_once(';').ok_or_else(bad)?;
        let m: u64 = m.trim().parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        let coeffs = body
            .split(',')
            .map(|t| {
                let (n, d) = t.trim().split_once('/').ok_or_else(bad)?;
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() as u64 != euler_phi(m) {
            return Err(bad());
        }
        Ok(Self { m, coeffs })
    }
}

impl PartialEq for CycNum {
    /// Exact equality; values of different orders are compared in `Q(ζ_lcm)`.
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::common(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycNum {}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let (mut a, b) = CycNum::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        let (mut a, b) = CycNum::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::common(self, rhs);
        let d = a.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        CycNum::from_coeffs(a.m, prod)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = &*self + rhs;
    }
}

/// Group-ring accumulator `Σ c_e ζ_m^e` with integer counters.
#[derive(Clone, Debug)]
pub struct RootSum {
    m: u64,
    counts: Vec<BigInt>,
}

impl RootSum {
    pub fn new(m: u64) -> Self {
        Self { m, counts: vec![BigInt::zero(); m as usize] }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    /// Adds `count · ζ_m^e`.
    pub fn add(&mut self, e: u64, count: impl Into<BigInt>) {
        self.counts[(e % self.m) as usize] += count.into();
    }

    pub fn add_one(&mut self, e: u64) {
        self.counts[(e % self.m) as usize] += 1;
    }

    /// Adds a dense table of small counts indexed by exponent.
    pub fn add_dense(&mut self, dense: &[u64]) {
        for (e, &c) in dense.iter().enumerate() {
            if c != 0 {
                self.counts[e % self.m as usize] += c;
            }
        }
    }

    pub fn total_count(&self) -> BigInt {
        self.counts.iter().sum()
    }

    pub fn to_cyc(&self) -> CycNum {
        CycNum::from_exponent_counts(self.m, &self.counts)
    }
}

/// `|z|^2` as an exact rational when `z · conj(z)` is rational.
pub fn norm_squared(z: &CycNum) -> Option<BigRational> {
    (z * &z.conj()).as_rational()
}

/// True when every coordinate is an integer.
pub fn is_integral_vector(z: &CycNum) -> bool {
    z.coeffs().iter().all(|c| c.is_integer())
}

pub(crate) fn rational(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}
