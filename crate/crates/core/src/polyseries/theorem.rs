//! Both-sides checks of the generating-function identities, returned as
//! [`VerificationReport`]s.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::euler_factor::{
    euler_factor_gl, euler_factor_gl_closed, euler_factor_kloost, euler_factor_kloost_closed,
    euler_factor_unitary_closed, euler_factor_unitary_with, invariant_table, Sign,
};
use super::involution::{count_invariant, invariant_irreducible_degrees};
use super::products::{euler_closed_form, product_coeffs_gl, product_coeffs_kloost, product_coeffs_unitary};
use crate::characters::{AddChar, MultChar};
use crate::charsums::{bound_row, g1, g2, gauss_sum, hyper_kloosterman, hyper_kloosterman_fourier, kloosterman};
use crate::cyclotomic::{norm_squared, CycNum};
use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::matgroups::{enumerate_gl, enumerate_u_filter, gl_order, u_histogram, u_order, unitary_field, GlHistograms};
use crate::report::{timed, Params, VerificationReport};

/// Which group-side identity [`theorem_check`] verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// `Σ_{GL} χ(det) λ(tr)` against `∏ (1 + uG/q^i)`.
    ExpGl,
    /// `Σ_{GL} λ(x tr g + y tr g^{-1})` against the Kloosterman product.
    KloostGl,
    /// `Σ_{U} χ(det) λ(tr)` against the alternating unitary product.
    ProdU,
}

/// Optional restriction of a sweep. `None` means "every value".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Selection {
    pub chi: Option<i64>,
    /// Index of the additive character parameter `a` in `λ_a`.
    pub lam: Option<u64>,
    pub x: Option<u64>,
    pub y: Option<u64>,
}

fn binom2(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

fn times_integer(z: &CycNum, k: &BigUint) -> CycNum {
    z.scale(&BigRational::from_integer(BigInt::from(k.clone())))
}

fn mult_chars(f: &Arc<Field>, sel: Option<i64>) -> Vec<MultChar> {
    match sel {
        Some(j) => vec![MultChar::new(f, j)],
        None => MultChar::all(f).collect(),
    }
}

fn add_chars(f: &Arc<Field>, sel: Option<u64>, skip_trivial: bool) -> Result<Vec<AddChar>> {
    match sel {
        Some(a) => {
            let lam = AddChar::new(f, f.elem(a)?)?;
            if skip_trivial && lam.is_trivial() {
                return Err(Error::TrivialCharacter);
            }
            Ok(vec![lam])
        }
        None => Ok(AddChar::all(f).filter(|l| !skip_trivial || !l.is_trivial()).collect()),
    }
}

fn nonzero_values(f: &Field, sel: Option<u64>) -> Result<Vec<Elem>> {
    match sel {
        Some(v) => {
            let e = f.elem(v)?;
            if e.is_zero() {
                return Err(Error::ZeroArgument("x/y"));
            }
            Ok(vec![e])
        }
        None => Ok(f.nonzero().collect()),
    }
}

fn char_params(n: usize, q: u64, chi: &MultChar, lam: &AddChar) -> Params {
    Params::new()
        .with("n", n)
        .with("q", q)
        .with("chi", chi.index())
        .with("lam", lam.field().format(lam.parameter()))
}

fn compare(lhs: &CycNum, rhs: &CycNum) -> (bool, String, String) {
    (lhs == rhs, lhs.canonical_string(), rhs.canonical_string())
}

/// Closed form of `Σ_{GL(n,q)} χ(det g) λ(tr g)`.
pub fn gl_closed_form(chi: &MultChar, lambda: &AddChar, n: usize) -> Result<CycNum> {
    let f = chi.field();
    let q = f.order() as u64;
    let m = f.ambient_order();
    Ok(if lambda.is_trivial() {
        if chi.is_trivial() {
            times_integer(&CycNum::one(m), &gl_order(n as u32, q))
        } else {
            CycNum::zero(m)
        }
    } else {
        let g = gauss_sum(chi, lambda)?;
        g.pow(n as u32).scale(&BigRational::from_integer(BigInt::from(q).pow(binom2(n))))
    })
}

/// Coefficient of `u^n` in the product over `i ≥ 1` of the GL Euler
/// factors. For trivial `λ` the product telescopes to `1/(1-u)` or to `1`.
pub fn gl_series_coeff(chi: &MultChar, lambda: &AddChar, n: usize) -> Result<CycNum> {
    let f = chi.field();
    let m = f.ambient_order();
    if lambda.is_trivial() {
        return Ok(if chi.is_trivial() || n == 0 { CycNum::one(m) } else { CycNum::zero(m) });
    }
    let g = gauss_sum(chi, lambda)?;
    Ok(product_coeffs_gl(&g, f.order() as u64, n)?.coeff(n).clone())
}

/// Theorem for `GL`: closed form and `|GL|·p_n`, for every selected `(χ, λ)`.
pub fn check_gl(n: usize, q: u64, sel: &Selection) -> Result<Vec<VerificationReport>> {
    let f = Field::with_order(q)?;
    let h = GlHistograms::compute(&f, n)?;
    let order = gl_order(n as u32, q);
    let mut out = Vec::new();
    for chi in mult_chars(&f, sel.chi) {
        for lam in add_chars(&f, sel.lam, false)? {
            let lhs = h.char_sum(&chi, &lam)?;
            out.push(timed("gl-closed-form", char_params(n, q, &chi, &lam), || {
                Ok(compare(&lhs, &gl_closed_form(&chi, &lam, n)?))
            })?);
            out.push(timed("gl-series", char_params(n, q, &chi, &lam), || {
                Ok(compare(&lhs, &times_integer(&gl_series_coeff(&chi, &lam, n)?, &order)))
            })?);
        }
    }
    Ok(out)
}

/// `q^{C(n,2)} f_λ(x) = Σ_{det g = x} λ(tr g)` for every selected `x`.
pub fn check_kim(n: usize, q: u64, sel: &Selection) -> Result<Vec<VerificationReport>> {
    let f = Field::with_order(q)?;
    let h = GlHistograms::compute(&f, n)?;
    let lam = add_chars(&f, sel.lam.or(Some(1)), true)?.remove(0);
    let scale = BigRational::from_integer(BigInt::from(q).pow(binom2(n)));
    nonzero_values(&f, sel.x)?
        .into_iter()
        .map(|x| {
            let params = Params::new().with("n", n).with("q", q).with("x", f.format(x));
            timed("kim-relation", params, || {
                let lhs = hyper_kloosterman(&lam, x, n as u32)?.scale(&scale);
                Ok(compare(&lhs, &h.det_fiber_sum(x, &lam)?))
            })
        })
        .collect()
}

/// Direct hyper-Kloosterman sum against its Gauss-sum Fourier expansion.
pub fn check_fourier(n: usize, q: u64, sel: &Selection) -> Result<Vec<VerificationReport>> {
    let f = Field::with_order(q)?;
    let lam = add_chars(&f, sel.lam.or(Some(1)), true)?.remove(0);
    nonzero_values(&f, sel.x)?
        .into_iter()
        .map(|x| {
            let params = Params::new().with("n", n).with("q", q).with("x", f.format(x));
            timed("fourier-inversion", params, || {
                let lhs = hyper_kloosterman(&lam, x, n as u32)?;
                Ok(compare(&lhs, &hyper_kloosterman_fourier(&lam, x, n as u32)?))
            })
        })
        .collect()
}

/// `max_x |f_λ(x)| ≤ ((q-2) q^{n/2} + 1)/(q-1)` within the bound tolerance.
pub fn check_bound(n: usize, q: u64) -> Result<VerificationReport> {
    timed("fourier-bound", Params::new().with("n", n).with("q", q), || {
        let row = bound_row(n as u32, q)?;
        let ok = row.max_actual <= row.fulman + crate::charsums::BOUND_TOLERANCE;
        Ok((ok, format!("{:.9}", row.max_actual), format!("{:.9}", row.fulman)))
    })
}

/// `|GL(n,q)|·s_n` against `Σ_{GL} λ(x tr g + y tr g^{-1})`.
pub fn check_kloosterman(n: usize, q: u64, sel: &Selection) -> Result<Vec<VerificationReport>> {
    let f = Field::with_order(q)?;
    let h = GlHistograms::compute(&f, n)?;
    let order = gl_order(n as u32, q);
    let lam = add_chars(&f, sel.lam.or(Some(1)), true)?.remove(0);
    let mut out = Vec::new();
    for x in nonzero_values(&f, sel.x)? {
        for y in nonzero_values(&f, sel.y)? {
            let params = Params::new()
                .with("n", n)
                .with("q", q)
                .with("lam", f.format(lam.parameter()))
                .with("x", f.format(x))
                .with("y", f.format(y));
            out.push(timed("kloosterman-gl", params, || {
                let lhs = h.kloosterman_sum(&lam, x, y)?;
                let k = kloosterman(&lam, x, y)?;
                let s = product_coeffs_kloost(&k, q, n)?;
                Ok(compare(&lhs, &times_integer(s.coeff(n), &order)))
            })?);
        }
    }
    Ok(out)
}

/// `|U(n,q)|·q_n` against `Σ_{U(n,q)} χ(det g) λ(tr g)`, nontrivial `λ`.
pub fn check_unitary(n: usize, q: u64, sel: &Selection) -> Result<Vec<VerificationReport>> {
    let f = unitary_field(q)?;
    let h = u_histogram(&f, n, None)?;
    let order = u_order(n as u32, q);
    let mut out = Vec::new();
    for chi in mult_chars(&f, sel.chi) {
        for lam in add_chars(&f, sel.lam, true)? {
            out.push(timed("unitary-product", char_params(n, q, &chi, &lam), || {
                let lhs = crate::matgroups::u_char_sum(&h, &chi, &lam)?;
                let s = product_coeffs_unitary(&g1(&chi, &lam)?, &g2(&chi, &lam)?, q, n)?;
                Ok(compare(&lhs, &times_integer(s.coeff(n), &order)))
            })?);
        }
    }
    Ok(out)
}

fn series_params(q: u64, i: u32, big_n: usize) -> Params {
    Params::new().with("q", q).with("i", i).with("N", big_n)
}

/// Direct Euler-factor sums against the closed forms, every `(χ, λ)`.
pub fn check_lemma_gl(q: u64, i: u32, big_n: usize) -> Result<Vec<VerificationReport>> {
    let f = Field::with_order(q)?;
    let mut out = Vec::new();
    for chi in MultChar::all(&f) {
        for lam in AddChar::all(&f) {
            let params = series_params(q, i, big_n)
                .with("chi", chi.index())
                .with("lam", f.format(lam.parameter()));
            out.push(timed("euler-factor-gl", params, || {
                let lhs = euler_factor_gl(&chi, &lam, i, big_n)?;
                let rhs = euler_factor_gl_closed(&chi, &lam, i, big_n)?;
                Ok((lhs == rhs, lhs.canonical_string(), rhs.canonical_string()))
            })?);
        }
    }
    Ok(out)
}

/// Kloosterman Euler factors for every `(x, y)` with the canonical `λ`.
pub fn check_lemma_kloost(q: u64, i: u32, big_n: usize) -> Result<Vec<VerificationReport>> {
    let f = Field::with_order(q)?;
    let lam = AddChar::canonical(&f);
    let mut out = Vec::new();
    for x in f.nonzero() {
        for y in f.nonzero() {
            let params = series_params(q, i, big_n).with("x", f.format(x)).with("y", f.format(y));
            out.push(timed("euler-factor-kloosterman", params, || {
                let lhs = euler_factor_kloost(&lam, x, y, i, big_n)?;
                let rhs = euler_factor_kloost_closed(&lam, x, y, i, big_n)?;
                Ok((lhs == rhs, lhs.canonical_string(), rhs.canonical_string()))
            })?);
        }
    }
    Ok(out)
}

/// Invariant-polynomial Euler factors over `F_{q^2}` for every `χ`, every
/// nontrivial `λ` and both signs.
pub fn check_lemma_unitary(q: u64, i: u32, big_n: usize) -> Result<Vec<VerificationReport>> {
    let f = unitary_field(q)?;
    let table = invariant_table(&f, big_n)?;
    let mut out = Vec::new();
    for chi in MultChar::all(&f) {
        for lam in AddChar::all(&f).skip(1) {
            for sign in [Sign::Plus, Sign::Minus] {
                let params = series_params(q, i, big_n)
                    .with("chi", chi.index())
                    .with("lam", f.format(lam.parameter()))
                    .with("sign", sign);
                out.push(timed("euler-factor-unitary", params, || {
                    let lhs = euler_factor_unitary_with(&table, &chi, &lam, i, sign)?;
                    let rhs = euler_factor_unitary_closed(&chi, &lam, i, big_n, sign)?;
                    Ok((lhs == rhs, lhs.canonical_string(), rhs.canonical_string()))
                })?);
            }
        }
    }
    Ok(out)
}

/// Euler's identity for both signs up to `u^N`.
pub fn check_euler(q: u64, big_n: usize) -> Result<Vec<VerificationReport>> {
    [Sign::Plus, Sign::Minus]
        .into_iter()
        .map(|sign| {
            timed("euler-identity", Params::new().with("q", q).with("N", big_n).with("sign", sign), || {
                let g = CycNum::from_integer(1, sign.as_i64());
                let lhs = product_coeffs_gl(&g, q, big_n)?;
                let rhs: Vec<String> =
                    (0..=big_n).map(|k| euler_closed_form(q, k, sign).to_string()).collect();
                let got: Vec<String> = lhs
                    .coeffs()
                    .iter()
                    .map(|c| c.as_rational().map_or_else(|| c.canonical_string(), |r| r.to_string()))
                    .collect();
                Ok((got == rhs, got.join(" | "), rhs.join(" | ")))
            })
        })
        .collect()
}

/// `G · conj(G) = q` for every pair with both characters nontrivial.
pub fn check_gauss_modulus(q: u64) -> Result<Vec<VerificationReport>> {
    let f = Field::with_order(q)?;
    let mut out = Vec::new();
    for chi in MultChar::all(&f).filter(|c| !c.is_trivial()) {
        for lam in AddChar::all(&f).skip(1) {
            out.push(timed("gauss-modulus", char_params(1, q, &chi, &lam), || {
                let g = gauss_sum(&chi, &lam)?;
                let lhs = norm_squared(&g).map_or_else(|| (&g * &g.conj()).canonical_string(), |r| r.to_string());
                Ok((lhs == q.to_string(), lhs, q.to_string()))
            })?);
        }
    }
    Ok(out)
}

/// Number of invariant monic polynomials of degree `m` over `F_{q^2}`
/// against `q^m + q^{m-1}`.
pub fn check_invariant_count(q: u64, m: usize) -> Result<VerificationReport> {
    timed("invariant-count", Params::new().with("q", q).with("m", m), || {
        let f = unitary_field(q)?;
        let got = count_invariant(&f, m)?;
        let want = q.pow(m as u32) + q.pow(m as u32 - 1);
        Ok((got == want, got.to_string(), want.to_string()))
    })
}

/// Invariant irreducibles of degree `≤ D` occur only in odd degrees.
pub fn check_odd_degrees(q: u64, max_degree: usize) -> Result<VerificationReport> {
    timed("invariant-odd-degrees", Params::new().with("q", q).with("D", max_degree), || {
        let f = unitary_field(q)?;
        let degrees = invariant_irreducible_degrees(&f, max_degree)?;
        let even: Vec<_> = degrees.iter().filter(|d| *d % 2 == 0).collect();
        Ok((even.is_empty(), format!("{degrees:?}"), "odd only".to_string()))
    })
}

/// Enumerated `|GL(n,q)|` against the product formula.
pub fn check_gl_order(n: usize, q: u64) -> Result<VerificationReport> {
    timed("gl-order", Params::new().with("n", n).with("q", q), || {
        let f = Field::with_order(q)?;
        let got = BigUint::from(enumerate_gl(&f, n)?.count());
        let want = gl_order(n as u32, q);
        Ok((got == want, got.to_string(), want.to_string()))
    })
}

/// `|U(n,q)|` by exhaustive filtering of `GL(n,q^2)` against the formula.
pub fn check_u_order(n: usize, q: u64) -> Result<VerificationReport> {
    timed("u-order", Params::new().with("n", n).with("q", q), || {
        let f = unitary_field(q)?;
        let got = BigUint::from(enumerate_u_filter(&f, n)?.len());
        let want = u_order(n as u32, q);
        Ok((got == want, got.to_string(), want.to_string()))
    })
}

/// Group sum against `|group| ·` product coefficient for one theorem.
pub fn theorem_check(which: Theorem, n: usize, q: u64, sel: &Selection) -> Result<Vec<VerificationReport>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    match which {
        Theorem::ExpGl => check_gl(n, q, sel),
        Theorem::KloostGl => check_kloosterman(n, q, sel),
        Theorem::ProdU => check_unitary(n, q, sel),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(r: &[VerificationReport]) -> bool {
        !r.is_empty() && r.iter().all(VerificationReport::passed)
    }

    #[test]
    fn theorem_examples() {
        let all = Selection::default();
        assert!(all_pass(&theorem_check(Theorem::ExpGl, 2, 3, &all).unwrap()));
        let one = Selection { x: Some(1), y: Some(1), ..all };
        assert!(all_pass(&theorem_check(Theorem::KloostGl, 2, 3, &one).unwrap()));
        assert!(all_pass(&theorem_check(Theorem::ProdU, 2, 2, &all).unwrap()));
    }

    #[test]
    fn small_checks() {
        let all = Selection::default();
        assert!(all_pass(&check_kim(2, 3, &all).unwrap()));
        assert!(all_pass(&check_fourier(3, 3, &all).unwrap()));
        assert!(check_bound(3, 7).unwrap().passed());
        assert!(all_pass(&check_euler(2, 8).unwrap()));
        assert!(all_pass(&check_gauss_modulus(4).unwrap()));
        assert!(check_invariant_count(2, 3).unwrap().passed());
        assert!(check_odd_degrees(2, 4).unwrap().passed());
        assert!(check_gl_order(2, 2).unwrap().passed());
        assert!(check_u_order(1, 3).unwrap().passed());
    }

    #[test]
    fn trivial_lambda_rejected_for_unitary() {
        let sel = Selection { lam: Some(0), ..Selection::default() };
        assert!(matches!(check_unitary(1, 2, &sel), Err(Error::TrivialCharacter)));
    }
}
