use std::fmt;

use num_rational::BigRational;

use crate::cyclotomic::CycNum;

/// The coefficients of `u^0, ..., u^N` of a power series in `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPrefix {
    coeffs: Vec<CycNum>,
}

impl SeriesPrefix {
    /// Panics if `coeffs` is empty.
    pub fn new(coeffs: Vec<CycNum>) -> Self {
        assert!(!coeffs.is_empty(), "a series prefix holds at least u^0");
        Self { coeffs }
    }

    pub fn one(m: u64, n: usize) -> Self {
        let mut coeffs = vec![CycNum::zero(m); n + 1];
        coeffs[0] = CycNum::one(m);
        Self { coeffs }
    }

    /// Truncation degree `N`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &CycNum {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<CycNum> {
        self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.degree().min(other.degree());
        Self::new((0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    /// Product truncated at the smaller of the two degrees.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.degree().min(other.degree());
        let m = self.coeffs[0].order();
        let mut out = vec![CycNum::zero(m); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(r)).collect())
    }

    /// The series with `u` replaced by `-u`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Coefficients in canonical text, separated by ` | `.
    pub fn canonical_string(&self) -> String {
        self.coeffs
            .iter()
            .map(CycNum::canonical_string)
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

impl fmt::Display for SeriesPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}
