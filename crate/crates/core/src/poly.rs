//! Monic polynomials over a [`Field`].

use crate::error::{check_cap, Error, Result};
use crate::ffield::{Elem, Field};

/// Cap on the number of polynomials a single enumeration may produce.
pub const MONIC_ENUMERATION_CAP: f64 = 1e7;

/// `z^n + c_{n-1} z^{n-1} + ... + c_0`, stored as `[c_0, ..., c_{n-1}]`.
///
/// The empty coefficient list is the constant polynomial `1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonicPoly {
    coeffs: Vec<Elem>,
}

impl MonicPoly {
    pub fn new(coeffs: Vec<Elem>) -> Self {
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// `z + c`.
    pub fn linear(c: Elem) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Non-leading coefficients `c_0, ..., c_{n-1}`.
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `z^i`, including the implicit leading `1`.
    pub fn coeff(&self, i: usize) -> Elem {
        match i.cmp(&self.coeffs.len()) {
            std::cmp::Ordering::Less => self.coeffs[i],
            std::cmp::Ordering::Equal => Elem::ONE,
            std::cmp::Ordering::Greater => Elem::ZERO,
        }
    }

    pub fn constant_term(&self) -> Elem {
        self.coeff(0)
    }

    pub fn mul(&self, other: &Self, f: &Field) -> Self {
        let (n, m) = (self.degree(), other.degree());
        let mut out = vec![Elem::ZERO; n + m + 1];
        for i in 0..=n {
            let a = self.coeff(i);
            if a.is_zero() {
                continue;
            }
            for j in 0..=m {
                out[i + j] = f.add(out[i + j], f.mul(a, other.coeff(j)));
            }
        }
        out.pop();
        Self { coeffs: out }
    }

    /// Remainder of `self` modulo the monic `divisor`, as a dense list
    /// (possibly non-monic, trailing zeros trimmed).
    pub fn rem(&self, divisor: &Self, f: &Field) -> Vec<Elem> {
        let mut r: Vec<Elem> = (0..=self.degree()).map(|i| self.coeff(i)).collect();
        let d = divisor.degree();
        while r.len() > d {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - d;
            if !lead.is_zero() {
                for j in 0..=d {
                    let t = f.mul(lead, divisor.coeff(j));
                    r[shift + j] = f.sub(r[shift + j], t);
                }
            }
            r.pop();
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        r
    }

    /// Exact quotient by a monic divisor, or `None` if it does not divide.
    pub fn div_exact(&self, divisor: &Self, f: &Field) -> Option<Self> {
        let d = divisor.degree();
        if d > self.degree() {
            return None;
        }
        let mut r: Vec<Elem> = (0..=self.degree()).map(|i| self.coeff(i)).collect();
        let mut quot = vec![Elem::ZERO; self.degree() - d + 1];
        for shift in (0..quot.len()).rev() {
            let lead = r[shift + d];
            quot[shift] = lead;
            if !lead.is_zero() {
                for j in 0..=d {
                    r[shift + j] = f.sub(r[shift + j], f.mul(lead, divisor.coeff(j)));
                }
            }
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        quot.pop();
        Some(Self { coeffs: quot })
    }

    pub fn divides(&self, other: &Self, f: &Field) -> bool {
        other.rem(self, f).is_empty()
    }

    /// Canonical text, e.g. `z^2 + (1:1)z + 2` for readability in reports.
    pub fn format(&self, f: &Field) -> String {
        let mut terms = vec![match self.degree() {
            0 => "1".to_string(),
            1 => "z".to_string(),
            n => format!("z^{n}"),
        }];
        for i in (0..self.degree()).rev() {
            let c = self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let cs = if f.degree() > 1 { format!("({})", f.format(c)) } else { f.format(c) };
            terms.push(match i {
                0 => cs,
                1 if c == Elem::ONE => "z".into(),
                1 => format!("{cs}z"),
                _ if c == Elem::ONE => format!("z^{i}"),
                _ => format!("{cs}z^{i}"),
            });
        }
        terms.join(" + ")
    }
}

/// Monic polynomial of degree `d` whose coefficient digits in base `q`
/// (c_0 least significant) spell `index`.
pub fn monic_from_index(f: &Field, d: usize, mut index: u64) -> MonicPoly {
    let q = f.order() as u64;
    let coeffs = (0..d)
        .map(|_| {
            let c = Elem((index % q) as u32);
            index /= q;
            c
        })
        .collect();
    MonicPoly::new(coeffs)
}

/// All monic polynomials of degree `d`, optionally only those with `c_0 != 0`.
pub fn enumerate_monic(
    f: &Field,
    d: usize,
    exclude_zero_constant: bool,
) -> Result<impl Iterator<Item = MonicPoly> + '_> {
    let count = (f.order() as f64).powi(d as i32);
    check_cap("monic polynomial enumeration", count, MONIC_ENUMERATION_CAP)?;
    let total = (f.order() as u64).pow(d as u32);
    Ok((0..total)
        .map(move |i| monic_from_index(f, d, i))
        .filter(move |p| !exclude_zero_constant || d == 0 || !p.constant_term().is_zero()))
}

pub(crate) fn require_degree(p: &MonicPoly) -> Result<()> {
    if p.degree() == 0 {
        Err(Error::ConstantPolynomial)
    } else {
        Ok(())
    }
}
