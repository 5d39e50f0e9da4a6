//! Finite fields `F_{p^k}` at desk scale.
//!
//! Elements are stored as [`Elem`] indices `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_i` is the coefficient of `z^i` in the polynomial basis over the
//! chosen modulus. A [`Field`] owns full exp/log tables for its canonical
//! generator, so multiplication, inversion and discrete logs are table
//! lookups. Fields are immutable once built and are shared behind [`Arc`].
//!
//! Two choices make every downstream computation reproducible:
//!
//! * the modulus is the smallest monic irreducible polynomial of degree `k`
//!   when coefficient tuples `(c_0, c_1, ..., c_{k-1})` are compared
//!   lexicographically, low degree first;
//! * the generator is the smallest element of order `q - 1` under the same
//!   coefficient-lexicographic order.
//!
//! ```
//! use charsum::ffield::Field;
//!
//! let f4 = Field::new(2, 2).unwrap();
//! assert_eq!(f4.spec().modulus, vec![1, 1, 1]); // z^2 + z + 1
//! let w = f4.generator();
//! assert_eq!(f4.mul(w, w), f4.add(w, f4.one()));
//! ```

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;
/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 8;

/// Index of an element inside its [`Field`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Parameters identifying a field: characteristic, degree and modulus.
///
/// `modulus` holds `c_0, ..., c_k` (monic, so `c_k = 1`). Prime fields use the
/// placeholder modulus `z`, i.e. `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u32 {
        self.p.pow(self.k)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^k`, or returns `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn validate_params(p: u64, k: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !(1..=MAX_DEGREE).contains(&k) {
        return Err(Error::DegreeOutOfRange(k));
    }
    match p.checked_pow(k) {
        Some(q) if q <= MAX_FIELD_ORDER => Ok(()),
        _ => Err(Error::FieldTooLarge { p, k }),
    }
}

// Dense polynomial helpers over F_p, coefficients low degree first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic `b`.
fn poly_rem_monic(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - (lead * bj) % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible_over_prime(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut divisor = digits(idx, p, d as u32);
            divisor.push(1);
            if poly_rem_monic(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree `k`
/// over `F_p`, comparing `(c_0, c_1, ...)` low degree first.
pub fn make_field(p: u64, k: u32) -> Result<FieldSpec> {
    validate_params(p, k)?;
    let p = p as u32;
    if k == 1 {
        return Ok(FieldSpec { p, k, modulus: vec![0, 1] });
    }
    let q = p.pow(k);
    for rank in 0..q {
        let mut poly = lex_digits(rank, p, k);
        poly.push(1);
        if poly[0] != 0 && is_irreducible_over_prime(&poly, p) {
            return Ok(FieldSpec { p, k, modulus: poly });
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(mut idx: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = idx % p;
            idx /= p;
            d
        })
        .collect()
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Coefficients whose lexicographic rank (c_0 most significant) is `rank`.
fn lex_digits(rank: u32, p: u32, k: u32) -> Vec<u32> {
    let mut d = digits(rank, p, k);
    d.reverse();
    d
}

fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    for i in (k..prod.len()).rev() {
        let lead = prod[i];
        if lead == 0 {
            continue;
        }
        for j in 0..k {
            let t = (lead * modulus[j] as u64) % p as u64;
            prod[i - k + j] = (prod[i - k + j] + p as u64 - t) % p as u64;
        }
        prod[i] = 0;
    }
    prod.truncate(k);
    prod.into_iter().map(|c| c as u32).collect()
}

fn pow_mod(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut acc = vec![0; k];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, modulus, p);
        }
        b = mul_mod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

/// Tables above this order fall back to digit-wise addition.
const ADD_TABLE_LIMIT: u32 = 512;

/// A finite field with precomputed exp/log/trace tables.
pub struct Field {
    spec: FieldSpec,
    q: u32,
    generator: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    trace: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.spec.p)
            .field("k", &self.spec.k)
            .field("modulus", &self.spec.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    /// Builds `F_{p^k}` with the canonical modulus.
    pub fn new(p: u64, k: u32) -> Result<Arc<Field>> {
        Ok(Arc::new(Self::from_spec(make_field(p, k)?)?))
    }

    /// Builds the field of order `q`.
    pub fn with_order(q: u64) -> Result<Arc<Field>> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, k)
    }

    /// Builds a field from an explicit spec, checking the modulus.
    pub fn from_spec(spec: FieldSpec) -> Result<Field> {
        validate_params(spec.p as u64, spec.k)?;
        let (p, k) = (spec.p, spec.k);
        if spec.modulus.len() != k as usize + 1 || spec.modulus[k as usize] != 1 {
            return Err(Error::InvalidParameter(format!(
                "modulus must be monic of degree {k}"
            )));
        }
        if spec.modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter("modulus coefficient out of range".into()));
        }
        if k > 1 && (spec.modulus[0] == 0 || !is_irreducible_over_prime(&spec.modulus, p)) {
            return Err(Error::InvalidParameter("modulus is not irreducible".into()));
        }
        let q = p.pow(k);
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let one = {
            let mut v = vec![0; k as usize];
            v[0] = 1;
            v
        };
        let modulus = &spec.modulus;
        let generator_coeffs = (1..q)
            .map(|rank| lex_digits(rank, p, k))
            .find(|g| {
                factors
                    .iter()
                    .all(|&r| pow_mod(g, order / r, modulus, p) != one)
            })
            .expect("multiplicative group is cyclic");
        let generator = Elem(undigits(&generator_coeffs, p));

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = one.clone();
        for e in 0..order as u32 {
            let idx = undigits(&cur, p);
            exp.push(idx);
            log[idx as usize] = e;
            cur = mul_mod(&cur, &generator_coeffs, modulus, p);
        }

        let neg = (0..q)
            .map(|x| {
                let d: Vec<u32> = digits(x, p, k).iter().map(|&c| (p - c) % p).collect();
                undigits(&d, p)
            })
            .collect();

        let mut field = Field {
            spec,
            q,
            generator,
            exp,
            log,
            neg,
            trace: Vec::new(),
            add: None,
        };
        if k > 1 && q <= ADD_TABLE_LIMIT {
            let mut table = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digitwise(a, b);
                }
            }
            field.add = Some(table);
        }
        field.trace = (0..q)
            .map(|x| {
                let mut acc = Elem::ZERO;
                let mut y = Elem(x);
                for _ in 0..k {
                    acc = field.add(acc, y);
                    y = field.pow(y, p as u64);
                }
                debug_assert!(acc.0 < p, "trace lands in the prime field");
                acc.0
            })
            .collect();
        Ok(field)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Field order `q`.
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.k
    }

    /// Order `p(q-1)` of the root-of-unity field holding every character value.
    pub fn ambient_order(&self) -> u64 {
        self.spec.p as u64 * (self.q as u64 - 1)
    }

    /// `Some(q0)` when this field has order `q0^2`.
    pub fn sub_order(&self) -> Option<u32> {
        (self.spec.k % 2 == 0).then(|| self.spec.p.pow(self.spec.k / 2))
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.q as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(Error::ElementOutOfRange { index, order: self.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.spec.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(Elem)
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        digits(x.0, self.spec.p, self.spec.k)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.spec.k as usize || coeffs.iter().any(|&c| c >= self.spec.p) {
            return Err(Error::Parse(format!(
                "coefficients {coeffs:?} do not describe an element of F_{}",
                self.q
            )));
        }
        Ok(Elem(undigits(coeffs, self.spec.p)))
    }

    fn add_digitwise(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p;
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.spec.k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.spec.k == 1 {
            return Elem((a.0 + b.0) % self.spec.p);
        }
        match &self.add {
            Some(t) => Elem(t[(a.0 * self.q + b.0) as usize]),
            None => Elem(self.add_digitwise(a.0, b.0)),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let n = self.q - 1;
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % n;
        Elem(self.exp[e as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(Elem(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        Elem(self.exp[l as usize])
    }

    /// `g^e` for the canonical generator `g`; `e` is reduced mod `q - 1`.
    pub fn exp(&self, e: i64) -> Elem {
        let n = (self.q - 1) as i64;
        Elem(self.exp[e.rem_euclid(n) as usize])
    }

    /// Discrete logarithm to the canonical generator, in `[0, q-2]`.
    pub fn dlog(&self, x: Elem) -> Result<u32> {
        if x.is_zero() {
            return Err(Error::ZeroLog);
        }
        Ok(self.log[x.0 as usize])
    }

    /// Absolute trace `x + x^p + ... + x^{p^{k-1}}`, as a residue mod `p`.
    pub fn trace(&self, x: Elem) -> u32 {
        self.trace[x.0 as usize]
    }

    /// `x^{q0}` in a field of order `q0^2`.
    pub fn frobenius_q(&self, x: Elem) -> Result<Elem> {
        let q0 = self.sub_order().ok_or(Error::NotQuadraticExtension(self.q))?;
        Ok(self.pow(x, q0 as u64))
    }

    /// Canonical text form `c0:c1:...`; prime-field elements print as `c0`.
    pub fn format(&self, x: Elem) -> String {
        self.coeffs(x)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(":")
    }

    /// Parses either the canonical `c0:c1:...` form or a bare element index.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        if s.contains(':') {
            let coeffs = s
                .split(':')
                .map(|t| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{s}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            self.from_coeffs(&coeffs)
        } else {
            let idx: u64 = s.parse().map_err(|e| Error::Parse(format!("{s}: {e}")))?;
            self.elem(idx)
        }
    }
}

/// An element bundled with its field, for call sites that want mismatched
/// fields reported as errors rather than silently mixed.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<Field>,
    value: Elem,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(field: &Arc<Field>, value: Elem) -> Result<Self> {
        field.elem(value.0 as u64)?;
        Ok(Self { field: Arc::clone(field), value })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    fn wrap(&self, value: Elem) -> Self {
        Self { field: Arc::clone(&self.field), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.div(self.value, other.value)?))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.wrap(self.field.pow(self.value, e))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}
