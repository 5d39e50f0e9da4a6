//! Exact coefficients of infinite products over `i ≥ 1`, extracted from
//! the self-similarity `u ↦ u/q` instead of truncating the product.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::euler_factor::Sign;
use super::series::SeriesPrefix;
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        Err(Error::InvalidParameter(format!("q must be at least 2, got {q}")))
    } else {
        Ok(())
    }
}

fn qpow(q: u64, n: usize) -> BigInt {
    BigInt::from(q).pow(n as u32)
}

fn common_order(values: &[&CycNum]) -> u64 {
    values.iter().fold(1, |acc, z| num_integer::lcm(acc, z.order()))
}

/// Coefficients of `∏_{i≥1} F(u/q^i)` where `F(u) = 1 + a_1 u + a_2 u^2 + ...`.
///
/// From `P(u) = F(u/q) P(u/q)`: `p_n (q^n - 1) = Σ_{k≥1} a_k p_{n-k}`.
pub fn level_product_coeffs(a: &[CycNum], q: u64, n: usize) -> Result<SeriesPrefix> {
    check_q(q)?;
    let m = common_order(&a.iter().collect::<Vec<_>>());
    let a: Vec<CycNum> = a.iter().map(|z| z.lift(m)).collect();
    let mut p = vec![CycNum::one(m)];
    for d in 1..=n {
        let mut acc = CycNum::zero(m);
        for (k, ak) in a.iter().enumerate() {
            let k = k + 1;
            if k > d {
                break;
            }
            if !ak.is_zero() {
                acc += &(ak * &p[d - k]);
            }
        }
        let denom = BigRational::from_integer(qpow(q, d) - 1);
        p.push(acc.scale(&denom.recip()));
    }
    Ok(SeriesPrefix::new(p))
}

/// `∏_{i≥1} (1 + u G / q^i)`.
pub fn product_coeffs_gl(g: &CycNum, q: u64, n: usize) -> Result<SeriesPrefix> {
    level_product_coeffs(std::slice::from_ref(g), q, n)
}

/// `∏_{i≥1} (1 + u K / q^i + q u^2 / q^{2i})`.
pub fn product_coeffs_kloost(k: &CycNum, q: u64, n: usize) -> Result<SeriesPrefix> {
    let second = CycNum::from_integer(k.order(), q);
    level_product_coeffs(&[k.clone(), second], q, n)
}

/// `∏_{i≥1} (1 + (-1)^{i+1} u G_1 / q^i + u^2 G_2 / q^{2i})`.
///
/// With `A(u) = 1 + G_1 u + G_2 u^2`, `B(u) = 1 - G_1 u + G_2 u^2`, the
/// product `Q` and its sign-flipped twin `R` satisfy `Q(u) = A(u/q) R(u/q)`
/// and `R(u) = B(u/q) Q(u/q)`. Each degree is a 2x2 system with
/// determinant `1 - q^{-2n}`.
pub fn product_coeffs_unitary(g1: &CycNum, g2: &CycNum, q: u64, n: usize) -> Result<SeriesPrefix> {
    check_q(q)?;
    let m = common_order(&[g1, g2]);
    let (g1, g2) = (g1.lift(m), g2.lift(m));
    let mut qs = vec![CycNum::one(m)];
    let mut rs = vec![CycNum::one(m)];
    for d in 1..=n {
        let mut a = &g1 * &rs[d - 1];
        let mut b = -(&g1 * &qs[d - 1]);
        if d >= 2 {
            a += &(&g2 * &rs[d - 2]);
            b += &(&g2 * &qs[d - 2]);
        }
        let qd = BigRational::from_integer(qpow(q, d));
        let det = (&qd * &qd - BigRational::one()).recip();
        // q_n = (q^n a + b) / (q^{2n} - 1),  r_n = (q^n b + a) / (q^{2n} - 1)
        let qn = (&a.scale(&qd) + &b).scale(&det);
        let rn = (&b.scale(&qd) + &a).scale(&det);
        qs.push(qn);
        rs.push(rn);
    }
    Ok(SeriesPrefix::new(qs))
}

/// `(±1)^n / ((q^n - 1) ... (q - 1))`, the closed-form side of Euler's identity.
pub fn euler_closed_form(q: u64, n: usize, sign: Sign) -> BigRational {
    let denom: BigInt = (1..=n).map(|k| qpow(q, k) - 1).product();
    let num = if sign == Sign::Minus && n % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    BigRational::new(num, denom)
}

/// Compares the recurrence coefficients of `∏_{i≥1}(1 ± u/q^i)` with the
/// closed forms for `n ≤ N`.
pub fn euler_identity_check(q: u64, n: usize, sign: Sign) -> Result<bool> {
    let g = CycNum::from_integer(1, sign.as_i64());
    let series = product_coeffs_gl(&g, q, n)?;
    Ok(series
        .coeffs()
        .iter()
        .enumerate()
        .all(|(k, c)| c.as_rational() == Some(euler_closed_form(q, k, sign))))
}

/// `∏_{i≤n} (q^i - 1)`, the denominator cleared by the integrality check.
pub fn euler_denominator(q: u64, n: usize) -> BigInt {
    (1..=n).map(|k| qpow(q, k) - 1).product()
}

/// True when `z` times `d` has integer coordinates.
pub fn clears_to_integers(z: &CycNum, d: &BigInt) -> bool {
    z.coeffs().iter().all(|c| (c * BigRational::from_integer(d.clone())).is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::rational;

    #[test]
    fn gl_coefficients() {
        let g = CycNum::zeta(6, 1);
        let s = product_coeffs_gl(&g, 3, 3).unwrap();
        assert_eq!(s.coeff(1), &g.scale(&rational(1, 2)));
        assert_eq!(s.coeff(2), &g.pow(2).scale(&rational(1, 16)));
        for n in 0..=3 {
            let d = euler_denominator(3, n);
            assert!(clears_to_integers(s.coeff(n), &d));
        }
    }

    #[test]
    fn kloosterman_low_terms() {
        let k = CycNum::from_integer(1, 2);
        let s = product_coeffs_kloost(&k, 3, 2).unwrap();
        assert_eq!(s.coeff(1).as_rational(), Some(rational(1, 1)));
        // s_2 (9 - 1) = K s_1 + q = 2 + 3
        assert_eq!(s.coeff(2).as_rational(), Some(rational(5, 8)));
    }

    #[test]
    fn unitary_sanity() {
        let g1 = CycNum::from_integer(1, 5);
        let zero = CycNum::zero(1);
        let s = product_coeffs_unitary(&g1, &zero, 3, 3).unwrap();
        assert_eq!(s.coeff(1).as_rational(), Some(rational(5, 4)));
        let s = product_coeffs_unitary(&zero, &zero, 3, 3).unwrap();
        assert_eq!(s, SeriesPrefix::one(1, 3));
    }

    #[test]
    fn euler_identities() {
        for q in [2, 3, 4, 5] {
            for sign in [Sign::Plus, Sign::Minus] {
                assert!(euler_identity_check(q, 8, sign).unwrap());
            }
        }
        assert_eq!(euler_closed_form(7, 0, Sign::Minus), BigRational::one());
    }
}
