use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::Field;
use crate::poly::{enumerate_monic, MonicPoly};

pub fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducible polynomials of degree `d` over `F_q`.
pub fn necklace_count(q: u64, d: u32) -> u64 {
    let total: i128 = (1..=d)
        .filter(|e| d % e == 0)
        .map(|e| mobius(e as u64) as i128 * (q as i128).pow(d / e))
        .sum();
    (total / d as i128) as u64
}

/// Monic irreducible polynomials over a field, grouped by degree.
#[derive(Clone, Debug)]
pub struct IrreduciblesTable {
    field: Arc<Field>,
    by_degree: Vec<Vec<MonicPoly>>,
}

impl IrreduciblesTable {
    /// Sieve: a degree-`d` monic polynomial is kept when no irreducible of
    /// degree at most `d/2` divides it.
    pub fn build(field: &Arc<Field>, max_degree: usize) -> Result<Self> {
        let mut by_degree: Vec<Vec<MonicPoly>> = vec![Vec::new()];
        for d in 1..=max_degree {
            let mut kept: Vec<MonicPoly> = enumerate_monic(field, d, false)?
                .filter(|p| {
                    (1..=d / 2).all(|e| by_degree[e].iter().all(|phi| !phi.divides(p, field)))
                })
                .collect();
            let expected = necklace_count(field.order() as u64, d as u32);
            assert_eq!(kept.len() as u64, expected, "irreducible count mismatch in degree {d}");
            kept.sort();
            by_degree.push(kept);
        }
        Ok(Self { field: Arc::clone(field), by_degree })
    }

    /// Wraps precomputed lists after checking the per-degree counts.
    pub fn from_lists(field: &Arc<Field>, mut by_degree: Vec<Vec<MonicPoly>>) -> Result<Self> {
        if by_degree.first().map_or(true, |d0| !d0.is_empty()) {
            return Err(Error::Cache("degree-0 list must be present and empty".into()));
        }
        for (d, list) in by_degree.iter_mut().enumerate().skip(1) {
            list.sort();
            list.dedup();
            let expected = necklace_count(field.order() as u64, d as u32);
            if list.len() as u64 != expected || list.iter().any(|p| p.degree() != d) {
                return Err(Error::Cache(format!(
                    "degree {d}: found {} polynomials, expected {expected}",
                    list.len()
                )));
            }
        }
        Ok(Self { field: Arc::clone(field), by_degree })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn degree(&self, d: usize) -> &[MonicPoly] {
        &self.by_degree[d]
    }

    /// All irreducibles except `z`, by increasing degree.
    pub fn without_z(&self) -> impl Iterator<Item = &MonicPoly> {
        self.by_degree
            .iter()
            .flatten()
            .filter(|p| !(p.degree() == 1 && p.constant_term().is_zero()))
    }

    /// Requires the table to reach degree `deg(P) / 2`.
    pub fn is_irreducible(&self, p: &MonicPoly) -> bool {
        let d = p.degree();
        assert!(d / 2 <= self.max_degree(), "table too small for degree {d}");
        d >= 1 && (1..=d / 2).all(|e| self.by_degree[e].iter().all(|phi| !phi.divides(p, &self.field)))
    }

    /// Irreducible factors with multiplicity, by trial division.
    pub fn factor(&self, p: &MonicPoly) -> Vec<MonicPoly> {
        let mut rest = p.clone();
        let mut out = Vec::new();
        for phi in self.by_degree.iter().flatten() {
            if phi.degree() * 2 > rest.degree() {
                break;
            }
            while let Some(quot) = rest.div_exact(phi, &self.field) {
                out.push(phi.clone());
                rest = quot;
            }
        }
        if rest.degree() > 0 {
            out.push(rest);
        }
        out.sort();
        out
    }
}

/// Irreducibility test that builds the divisor table it needs.
pub fn is_irreducible(field: &Arc<Field>, p: &MonicPoly) -> Result<bool> {
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    Ok(IrreduciblesTable::build(field, p.degree() / 2)?.is_irreducible(p))
}
