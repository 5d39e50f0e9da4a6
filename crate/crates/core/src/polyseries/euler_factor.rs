//! Truncated Euler factors: sums over monic polynomials with nonzero
//! constant term of a multiplicative weight times `u^{deg P} / q^{i deg P}`,
//! alongside the closed forms they must reduce to.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::involution::{invariant_polys, poly_involution};
use super::irreducible::IrreduciblesTable;
use super::series::SeriesPrefix;
use crate::characters::{chi_argument, tau_argument, AddChar, MultChar};
use crate::charsums::{g1, g2, gauss_sum, kloosterman};
use crate::cyclotomic::{CycNum, RootSum};
use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::poly::{enumerate_monic, MonicPoly};

/// Sign of `u` in the unitary Euler factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// `1 / q^e`.
pub(crate) fn inv_power(q: u64, e: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(q).pow(e))
}

fn same_field(a: &Field, b: &Field) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::MixedFields)
    }
}

fn check_level(i: u32) -> Result<()> {
    if i == 0 {
        Err(Error::InvalidParameter("level i must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Assembles `Σ_d (sum_d / q^{i d}) u^d` from per-degree root sums.
fn weighted_series(m: u64, q: u64, i: u32, sums: Vec<RootSum>) -> SeriesPrefix {
    let mut coeffs = vec![CycNum::one(m)];
    for (d, s) in sums.into_iter().enumerate().skip(1) {
        coeffs.push(s.to_cyc().scale(&inv_power(q, i * d as u32)));
    }
    SeriesPrefix::new(coeffs)
}

/// `Σ_{P(0) ≠ 0, deg P ≤ N} χ(P) λ(P) u^{deg P} / q^{i deg P}` by direct
/// enumeration.
pub fn euler_factor_gl(chi: &MultChar, lambda: &AddChar, i: u32, n: usize) -> Result<SeriesPrefix> {
    same_field(chi.field(), lambda.field())?;
    check_level(i)?;
    let f = chi.field();
    let m = f.ambient_order();
    let mut sums = vec![RootSum::new(m)];
    for d in 1..=n {
        let mut acc = RootSum::new(m);
        for p in enumerate_monic(f, d, true)? {
            let c = chi.ambient_exponent(chi_argument(f, &p)).expect("c_0 != 0");
            acc.add_one(c + lambda.ambient_exponent(f.neg(p.coeff(d - 1))));
        }
        sums.push(acc);
    }
    Ok(weighted_series(m, f.order() as u64, i, sums))
}

/// The three closed forms for [`euler_factor_gl`]:
/// `(1 - u/q^i)/(1 - u/q^{i-1})`, `1`, or `1 + u G(χ,λ)/q^i`.
pub fn euler_factor_gl_closed(chi: &MultChar, lambda: &AddChar, i: u32, n: usize) -> Result<SeriesPrefix> {
    same_field(chi.field(), lambda.field())?;
    check_level(i)?;
    let f = chi.field();
    let (m, q) = (f.ambient_order(), f.order() as u64);
    let mut out = SeriesPrefix::one(m, n).into_coeffs();
    if !lambda.is_trivial() {
        if n >= 1 {
            out[1] = gauss_sum(chi, lambda)?.scale(&inv_power(q, i));
        }
    } else if chi.is_trivial() {
        // 1/(1 - u/q^{i-1}) = Σ u^d / q^{(i-1)d}, then multiply by (1 - u/q^i)
        let geometric: Vec<BigRational> = (0..=n).map(|d| inv_power(q, (i - 1) * d as u32)).collect();
        for d in 1..=n {
            let c = &geometric[d] - &geometric[d - 1] * inv_power(q, i);
            out[d] = CycNum::from_rational(m, c);
        }
    }
    Ok(SeriesPrefix::new(out))
}

/// `Σ_{P(0) ≠ 0, deg P ≤ N} τ(P) u^{deg P} / q^{i deg P}`.
pub fn euler_factor_kloost(lambda: &AddChar, x: Elem, y: Elem, i: u32, n: usize) -> Result<SeriesPrefix> {
    check_level(i)?;
    if x.is_zero() {
        return Err(Error::ZeroArgument("x"));
    }
    if y.is_zero() {
        return Err(Error::ZeroArgument("y"));
    }
    let f = lambda.field();
    let m = f.ambient_order();
    let mut sums = vec![RootSum::new(m)];
    for d in 1..=n {
        let mut acc = RootSum::new(m);
        for p in enumerate_monic(f, d, true)? {
            acc.add_one(lambda.ambient_exponent(tau_argument(f, x, y, &p)?));
        }
        sums.push(acc);
    }
    Ok(weighted_series(m, f.order() as u64, i, sums))
}

/// `1 + u K_λ(x,y)/q^i + q u^2/q^{2i}`, truncated at `N`.
pub fn euler_factor_kloost_closed(lambda: &AddChar, x: Elem, y: Elem, i: u32, n: usize) -> Result<SeriesPrefix> {
    check_level(i)?;
    let f = lambda.field();
    let (m, q) = (f.ambient_order(), f.order() as u64);
    let mut out = SeriesPrefix::one(m, n).into_coeffs();
    if n >= 1 {
        out[1] = kloosterman(lambda, x, y)?.scale(&inv_power(q, i));
    }
    if n >= 2 {
        out[2] = CycNum::from_rational(m, BigRational::from_integer(q.into()) * inv_power(q, 2 * i));
    }
    Ok(SeriesPrefix::new(out))
}

fn unitary_base(f: &Field) -> Result<u64> {
    f.sub_order().map(u64::from).ok_or(Error::NotQuadraticExtension(f.order()))
}

/// Invariant monic polynomials of degrees `1..=n` (index 0 is empty).
pub fn invariant_table(f: &Field, n: usize) -> Result<Vec<Vec<MonicPoly>>> {
    let mut out = vec![Vec::new()];
    for d in 1..=n {
        out.push(invariant_polys(f, d)?);
    }
    Ok(out)
}

/// `Σ_{P = P̃, P(0) ≠ 0} χ(P) λ(P) (±u)^{deg P} / q^{i deg P}` over a field
/// of order `q^2`.
pub fn euler_factor_unitary(
    chi: &MultChar,
    lambda: &AddChar,
    i: u32,
    n: usize,
    sign: Sign,
) -> Result<SeriesPrefix> {
    let table = invariant_table(chi.field(), n)?;
    euler_factor_unitary_with(&table, chi, lambda, i, sign)
}

/// As [`euler_factor_unitary`], reusing a prebuilt [`invariant_table`].
pub fn euler_factor_unitary_with(
    invariants: &[Vec<MonicPoly>],
    chi: &MultChar,
    lambda: &AddChar,
    i: u32,
    sign: Sign,
) -> Result<SeriesPrefix> {
    same_field(chi.field(), lambda.field())?;
    check_level(i)?;
    let f = chi.field();
    let q = unitary_base(f)?;
    let m = f.ambient_order();
    let mut sums = vec![RootSum::new(m)];
    for (d, polys) in invariants.iter().enumerate().skip(1) {
        let mut acc = RootSum::new(m);
        // (-1)^d contributes ζ_m^{m/2} for odd d under the minus sign
        let flip = if sign == Sign::Minus && d % 2 == 1 { m / 2 } else { 0 };
        for p in polys {
            let c = chi.ambient_exponent(chi_argument(f, p)).expect("c_0 != 0");
            acc.add_one(c + lambda.ambient_exponent(f.neg(p.coeff(d - 1))) + flip);
        }
        sums.push(acc);
    }
    Ok(weighted_series(m, q, i, sums))
}

/// `1 ± u G_1/q^i + u^2 G_2/q^{2i}`, truncated at `N`.
pub fn euler_factor_unitary_closed(
    chi: &MultChar,
    lambda: &AddChar,
    i: u32,
    n: usize,
    sign: Sign,
) -> Result<SeriesPrefix> {
    check_level(i)?;
    let f = chi.field();
    let q = unitary_base(f)?;
    let mut out = SeriesPrefix::one(f.ambient_order(), n).into_coeffs();
    if n >= 1 {
        let s = BigRational::from_integer(sign.as_i64().into());
        out[1] = g1(chi, lambda)?.scale(&(inv_power(q, i) * s));
    }
    if n >= 2 {
        out[2] = g2(chi, lambda)?.scale(&inv_power(q, 2 * i));
    }
    Ok(SeriesPrefix::new(out))
}

/// Multiplies `acc` by `1/(1 - w u^d)` truncated at `acc.degree()`, where
/// `w = ζ_m^e · scale`.
fn times_geometric(acc: &SeriesPrefix, m: u64, e: u64, scale: &BigRational, d: usize) -> SeriesPrefix {
    let n = acc.degree();
    let w = CycNum::zeta(m, e as i64).scale(scale);
    let mut factor = SeriesPrefix::one(m, n).into_coeffs();
    let mut power = CycNum::one(m);
    let mut k = d;
    while k <= n {
        power = &power * &w;
        factor[k] = power.clone();
        k += d;
    }
    acc.mul(&SeriesPrefix::new(factor))
}

/// `∏_{φ ≠ z} 1/(1 - χ(φ)λ(φ) u^{deg φ}/q^{i deg φ})` assembled from the
/// irreducibles table, truncated at the table's maximal degree.
pub fn euler_product_gl(table: &IrreduciblesTable, chi: &MultChar, lambda: &AddChar, i: u32) -> Result<SeriesPrefix> {
    let f = table.field();
    same_field(f, chi.field())?;
    same_field(f, lambda.field())?;
    let (m, q, n) = (f.ambient_order(), f.order() as u64, table.max_degree());
    let mut acc = SeriesPrefix::one(m, n);
    for phi in table.without_z() {
        let d = phi.degree();
        let e = chi.ambient_exponent(chi_argument(f, phi)).expect("φ ≠ z") + lambda.ambient_exponent(f.neg(phi.coeff(d - 1)));
        acc = times_geometric(&acc, m, e, &inv_power(q, i * d as u32), d);
    }
    Ok(acc)
}

/// `∏_{φ ≠ z} 1/(1 - τ(φ) u^{deg φ}/q^{i deg φ})` from the irreducibles table.
pub fn euler_product_kloost(table: &IrreduciblesTable, lambda: &AddChar, x: Elem, y: Elem, i: u32) -> Result<SeriesPrefix> {
    let f = table.field();
    same_field(f, lambda.field())?;
    let (m, q, n) = (f.ambient_order(), f.order() as u64, table.max_degree());
    let mut acc = SeriesPrefix::one(m, n);
    for phi in table.without_z() {
        let d = phi.degree();
        let e = lambda.ambient_exponent(tau_argument(f, x, y, phi)?);
        acc = times_geometric(&acc, m, e, &inv_power(q, i * d as u32), d);
    }
    Ok(acc)
}

/// Product over invariant irreducibles and over pairs `{φ, φ̃}` with
/// `φ ≠ φ̃`, truncated at the table's maximal degree.
pub fn euler_product_unitary(
    table: &IrreduciblesTable,
    chi: &MultChar,
    lambda: &AddChar,
    i: u32,
    sign: Sign,
) -> Result<SeriesPrefix> {
    let f = table.field();
    same_field(f, chi.field())?;
    same_field(f, lambda.field())?;
    let q = unitary_base(f)?;
    let (m, n) = (f.ambient_order(), table.max_degree());
    let weight = |p: &MonicPoly| {
        chi.ambient_exponent(chi_argument(f, p)).expect("φ ≠ z")
            + lambda.ambient_exponent(f.neg(p.coeff(p.degree() - 1)))
    };
    let mut acc = SeriesPrefix::one(m, n);
    for phi in table.without_z() {
        let d = phi.degree();
        let tilde = poly_involution(f, phi)?;
        if tilde == *phi {
            let flip = if sign == Sign::Minus { m / 2 } else { 0 };
            acc = times_geometric(&acc, m, weight(phi) + flip, &inv_power(q, i * d as u32), d);
        } else if *phi < tilde && 2 * d <= n {
            let e = weight(phi) + weight(&tilde);
            acc = times_geometric(&acc, m, e, &inv_power(q, 2 * i * d as u32), 2 * d);
        }
    }
    Ok(acc)
}
