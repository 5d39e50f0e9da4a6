use std::collections::BTreeSet;
use std::sync::Arc;

use super::irreducible::IrreduciblesTable;
use crate::error::{Error, Result};
use crate::ffield::Field;
use crate::poly::{enumerate_monic, MonicPoly};

/// `φ ↦ φ̃` on monic polynomials over `F_{q^2}` with nonzero constant term:
/// coefficient `i` of the image is `(α_{m-i} / α_0)^q`, with `α_m = 1`.
pub fn poly_involution(f: &Field, p: &MonicPoly) -> Result<MonicPoly> {
    f.sub_order().ok_or(Error::NotQuadraticExtension(f.order()))?;
    let a0 = p.constant_term();
    if a0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let inv = f.inv(a0)?;
    let m = p.degree();
    let coeffs = (0..m)
        .map(|i| f.frobenius_q(f.mul(p.coeff(m - i), inv)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MonicPoly::new(coeffs))
}

pub fn is_invariant(f: &Field, p: &MonicPoly) -> Result<bool> {
    Ok(poly_involution(f, p)? == *p)
}

/// Invariant monic polynomials of degree `m` with nonzero constant term.
pub fn invariant_polys(f: &Field, m: usize) -> Result<Vec<MonicPoly>> {
    f.sub_order().ok_or(Error::NotQuadraticExtension(f.order()))?;
    let mut out = Vec::new();
    for p in enumerate_monic(f, m, true)? {
        if m == 0 || is_invariant(f, &p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Exhaustive count of invariant monic polynomials of degree `m`.
pub fn count_invariant(f: &Field, m: usize) -> Result<u64> {
    Ok(invariant_polys(f, m)?.len() as u64)
}

/// Number of invariant irreducibles (other than `z`) in each degree
/// `0..=max_degree`.
pub fn invariant_irreducible_counts(f: &Arc<Field>, max_degree: usize) -> Result<Vec<usize>> {
    f.sub_order().ok_or(Error::NotQuadraticExtension(f.order()))?;
    let table = IrreduciblesTable::build(f, max_degree)?;
    let mut counts = vec![0; max_degree + 1];
    for phi in table.without_z() {
        if is_invariant(f, phi)? {
            counts[phi.degree()] += 1;
        }
    }
    Ok(counts)
}

/// Degrees `d <= max_degree` in which some invariant irreducible exists.
pub fn invariant_irreducible_degrees(f: &Arc<Field>, max_degree: usize) -> Result<BTreeSet<usize>> {
    Ok(invariant_irreducible_counts(f, max_degree)?
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(d, _)| d)
        .collect())
}
