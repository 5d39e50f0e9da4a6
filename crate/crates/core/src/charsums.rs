//! Scalar exponential sums over `F_q`.
//!
//! Every sum is accumulated in a [`RootSum`] and reduced exactly; floating
//! point appears only in the bound comparisons at the bottom of the module.

use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{AddChar, MultChar};
use crate::cyclotomic::{rational, CycNum, RootSum};
use crate::error::{check_cap, Error, Result};
use crate::ffield::{Elem, Field};

/// Largest number of terms a single hyper-Kloosterman evaluation may sum.
pub const HYPER_KLOOSTERMAN_CAP: f64 = 1e7;

/// Tolerance for the floating-point bound comparisons.
pub const BOUND_TOLERANCE: f64 = 1e-9;

fn same_field(a: &Arc<Field>, b: &Arc<Field>) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::MixedFields)
    }
}

/// `G(χ, λ) = Σ_{x ≠ 0} χ(x) λ(x)`.
pub fn gauss_sum(chi: &MultChar, lambda: &AddChar) -> Result<CycNum> {
    same_field(chi.field(), lambda.field())?;
    let f = chi.field();
    let mut acc = RootSum::new(f.ambient_order());
    for x in f.nonzero() {
        acc.add_one(chi.ambient_exponent(x).unwrap() + lambda.ambient_exponent(x));
    }
    Ok(acc.to_cyc())
}

/// `K_λ(x, y) = Σ_{α ≠ 0} λ(x α + y / α)`.
pub fn kloosterman(lambda: &AddChar, x: Elem, y: Elem) -> Result<CycNum> {
    if x.is_zero() {
        return Err(Error::ZeroArgument("x"));
    }
    if y.is_zero() {
        return Err(Error::ZeroArgument("y"));
    }
    let f = lambda.field();
    let mut acc = RootSum::new(f.ambient_order());
    for a in f.nonzero() {
        let arg = f.add(f.mul(x, a), f.div(y, a)?);
        acc.add_one(lambda.ambient_exponent(arg));
    }
    Ok(acc.to_cyc())
}

fn hyper_kloosterman_preconditions(f: &Field, x: Elem, n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if x.is_zero() {
        return Err(Error::ZeroArgument("x"));
    }
    let terms = (f.order() as f64 - 1.0).powi(n as i32 - 1);
    check_cap("hyper-Kloosterman sum", terms, HYPER_KLOOSTERMAN_CAP)
}

/// Tallies `Tr(a · (s + x / π))` over the remaining `depth` free variables.
fn tally_tuples(
    f: &Field,
    lambda: &AddChar,
    x: Elem,
    depth: u32,
    sum: Elem,
    prod: Elem,
    counts: &mut [u64],
) {
    if depth == 0 {
        let arg = f.add(sum, f.mul(x, f.inv(prod).unwrap()));
        counts[lambda.exponent(arg) as usize] += 1;
        return;
    }
    for a in f.nonzero() {
        tally_tuples(f, lambda, x, depth - 1, f.add(sum, a), f.mul(prod, a), counts);
    }
}

/// `f_λ(x) = Σ λ(α_1 + ... + α_{n-1} + x / (α_1 ⋯ α_{n-1}))` by direct
/// enumeration of `(F_q^*)^{n-1}`. For `n = 1` the sum is `λ(x)`.
pub fn hyper_kloosterman(lambda: &AddChar, x: Elem, n: u32) -> Result<CycNum> {
    let f = lambda.field();
    hyper_kloosterman_preconditions(f, x, n)?;
    let p = f.characteristic() as usize;
    let counts = if n == 1 {
        let mut c = vec![0u64; p];
        c[lambda.exponent(x) as usize] += 1;
        c
    } else {
        f.nonzero()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|a| {
                let mut c = vec![0u64; p];
                tally_tuples(f, lambda, x, n - 2, a, a, &mut c);
                c
            })
            .reduce(
                || vec![0u64; p],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    let mut acc = RootSum::new(f.ambient_order());
    let step = f.order() as u64 - 1;
    for (e, &c) in counts.iter().enumerate() {
        acc.add(e as u64 * step, c);
    }
    Ok(acc.to_cyc())
}

/// The same sum through Fourier inversion on `F_q^*`:
/// `f_λ(x) = (1/(q-1)) Σ_χ χ̄(x) G(χ, λ)^n`.
pub fn hyper_kloosterman_fourier(lambda: &AddChar, x: Elem, n: u32) -> Result<CycNum> {
    let f = lambda.field();
    hyper_kloosterman_preconditions(f, x, n)?;
    let mut total = CycNum::zero(f.ambient_order());
    for chi in MultChar::all(f) {
        let g = gauss_sum(&chi, lambda)?;
        total += &(chi.conj().eval(x) * g.pow(n));
    }
    Ok(total.scale(&rational(1, f.order() - 1)))
}

/// `n q^{(n-1)/2}`.
pub fn deligne_bound(n: u32, q: u64) -> f64 {
    n as f64 * (q as f64).powf((n as f64 - 1.0) / 2.0)
}

/// `(1 - 1/(q-1)) q^{n/2} + 1/(q-1)`.
pub fn fulman_bound(n: u32, q: u64) -> f64 {
    let q = q as f64;
    ((q - 2.0) * q.powf(n as f64 / 2.0) + 1.0) / (q - 1.0)
}

fn norm_one_subgroup(f: &Field) -> Result<(u32, Vec<Elem>)> {
    let q0 = f.sub_order().ok_or(Error::NotQuadraticExtension(f.order()))?;
    let step = q0 as i64 - 1;
    Ok((q0, (0..=q0 as i64).map(|t| f.exp(t * step)).collect()))
}

/// `G_1(χ, λ) = Σ_{α^{q+1} = 1} χ(-α) λ(-α)` over a field of order `q^2`.
pub fn g1(chi: &MultChar, lambda: &AddChar) -> Result<CycNum> {
    same_field(chi.field(), lambda.field())?;
    let f = chi.field();
    let (_, subgroup) = norm_one_subgroup(f)?;
    let mut acc = RootSum::new(f.ambient_order());
    for a in subgroup {
        let na = f.neg(a);
        acc.add_one(chi.ambient_exponent(na).unwrap() + lambda.ambient_exponent(na));
    }
    Ok(acc.to_cyc())
}

/// Sizes of the sets `{β : β^{q-1} = α^q or β = 0}`, one per norm-one `α`
/// in generator order. Each must equal `q`.
pub fn g2_fiber_sizes(f: &Field) -> Result<Vec<usize>> {
    let (q0, subgroup) = norm_one_subgroup(f)?;
    let mut sizes = vec![1usize; subgroup.len()];
    for b in f.nonzero() {
        let alpha = f.pow(f.pow(b, q0 as u64 - 1), q0 as u64);
        let t = f.dlog(alpha)? / (q0 - 1);
        sizes[t as usize] += 1;
    }
    Ok(sizes)
}

/// `G_2(χ, λ) = Σ_{α^{q+1}=1} χ(α) Σ_{β^{q-1} = α^q or β = 0} λ(-β)`.
pub fn g2(chi: &MultChar, lambda: &AddChar) -> Result<CycNum> {
    same_field(chi.field(), lambda.field())?;
    let f = chi.field();
    let (q0, subgroup) = norm_one_subgroup(f)?;
    let mut acc = RootSum::new(f.ambient_order());
    for &a in &subgroup {
        // β = 0
        acc.add_one(chi.ambient_exponent(a).unwrap());
    }
    for b in f.nonzero() {
        // α^q = β^{q-1} and α^{q^2} = α, so α = (β^{q-1})^q.
        let alpha = f.pow(f.pow(b, q0 as u64 - 1), q0 as u64);
        acc.add_one(chi.ambient_exponent(alpha).unwrap() + lambda.ambient_exponent(f.neg(b)));
    }
    debug_assert_eq!(acc.total_count(), BigInt::from(subgroup.len() * q0 as usize));
    Ok(acc.to_cyc())
}

/// One row of the bound comparison table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: u32,
    pub q: u64,
    pub deligne: f64,
    pub fulman: f64,
    pub max_actual: f64,
    pub argmax_x: String,
}

impl BoundRow {
    pub const CSV_HEADER: &'static str = "n,q,deligne,fulman,max_actual,argmax_x";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.q, self.deligne, self.fulman, self.max_actual, self.argmax_x
        )
    }

    /// True when the Fourier bound is strictly below Deligne's.
    pub fn fulman_sharper(&self) -> bool {
        self.fulman < self.deligne
    }

    pub fn within_bounds(&self) -> bool {
        self.max_actual <= self.deligne.min(self.fulman) + BOUND_TOLERANCE
    }
}

/// Computes `max_x |f_λ(x)|` with the canonical `λ` for every `(n, q)` pair.
pub fn bound_row(n: u32, q: u64) -> Result<BoundRow> {
    if n < 2 {
        return Err(Error::InvalidParameter("bounds need n >= 2".into()));
    }
    let f = Field::with_order(q)?;
    hyper_kloosterman_preconditions(&f, Elem::ONE, n)?;
    let lambda = AddChar::canonical(&f);
    let mut best: Option<(f64, Elem)> = None;
    for x in f.nonzero() {
        let v = hyper_kloosterman(&lambda, x, n)?.to_complex().norm();
        if best.map_or(true, |(b, _)| v > b) {
            best = Some((v, x));
        }
    }
    let (max_actual, arg) = best.expect("F_q^* is nonempty");
    Ok(BoundRow {
        n,
        q,
        deligne: deligne_bound(n, q),
        fulman: fulman_bound(n, q),
        max_actual,
        argmax_x: f.format(arg),
    })
}

/// Rows for every combination, sorted by `(q, n)`.
pub fn bound_table(n_set: &[u32], q_set: &[u64]) -> Result<Vec<BoundRow>> {
    let mut pairs: Vec<(u64, u32)> =
        q_set.iter().flat_map(|&q| n_set.iter().map(move |&n| (q, n))).collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs.into_iter().map(|(q, n)| bound_row(n, q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::norm_squared;
    use num_rational::BigRational;

    fn f(q: u64) -> Arc<Field> {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn gauss_sum_special_cases() {
        let f7 = f(7);
        let m = f7.ambient_order();
        let chi0 = MultChar::trivial(&f7);
        let lam0 = AddChar::new(&f7, Elem(0)).unwrap();
        let lam1 = AddChar::canonical(&f7);
        assert_eq!(gauss_sum(&chi0, &lam0).unwrap(), CycNum::from_integer(m, 6));
        assert_eq!(gauss_sum(&chi0, &lam1).unwrap(), CycNum::from_integer(m, -1));
        assert!(gauss_sum(&MultChar::new(&f7, 2), &lam0).unwrap().is_zero());
        let g = gauss_sum(&MultChar::new(&f7, 1), &lam1).unwrap();
        assert_eq!(norm_squared(&g), Some(BigRational::from_integer(7.into())));
        assert_eq!(
            gauss_sum(&chi0, &AddChar::canonical(&f(5))),
            Err(Error::MixedFields)
        );
    }

    #[test]
    fn kloosterman_examples() {
        let f5 = f(5);
        let lam = AddChar::canonical(&f5);
        let k = kloosterman(&lam, Elem(1), Elem(1)).unwrap();
        let expected = &(&CycNum::from_integer(5, 2) + &CycNum::zeta(5, 2)) + &CycNum::zeta(5, 3);
        assert_eq!(k, expected);
        assert!((k.to_complex().re - 0.381966).abs() < 1e-6);
        assert_eq!(k.conj(), k);

        let f2 = f(2);
        let k2 = kloosterman(&AddChar::canonical(&f2), Elem(1), Elem(1)).unwrap();
        assert_eq!(k2, CycNum::one(2));
        assert_eq!(kloosterman(&lam, Elem(0), Elem(1)), Err(Error::ZeroArgument("x")));
    }

    #[test]
    fn hyper_kloosterman_small_cases() {
        let f5 = f(5);
        let lam = AddChar::canonical(&f5);
        for x in f5.nonzero() {
            assert_eq!(hyper_kloosterman(&lam, x, 1).unwrap(), lam.eval(x));
            assert_eq!(
                hyper_kloosterman(&lam, x, 2).unwrap(),
                kloosterman(&lam, Elem(1), x).unwrap()
            );
            for n in 1..=4 {
                assert_eq!(
                    hyper_kloosterman(&lam, x, n).unwrap(),
                    hyper_kloosterman_fourier(&lam, x, n).unwrap()
                );
            }
        }
        let f2 = f(2);
        let lam2 = AddChar::canonical(&f2);
        for n in 1..6 {
            let v = hyper_kloosterman(&lam2, Elem(1), n).unwrap();
            assert_eq!(v, lam2.eval(f2.from_int(n as i64)));
        }
        assert!(hyper_kloosterman(&lam, Elem(1), 0).is_err());
        assert!(matches!(
            hyper_kloosterman(&AddChar::canonical(&f(11)), Elem(1), 9),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn fourier_route_on_f3() {
        let f3 = f(3);
        let lam = AddChar::canonical(&f3);
        let direct = kloosterman(&lam, Elem(1), Elem(1)).unwrap();
        assert_eq!(hyper_kloosterman_fourier(&lam, Elem(1), 2).unwrap(), direct);
    }

    #[test]
    fn bound_formulas() {
        assert!((deligne_bound(3, 7) - 21.0).abs() < 1e-12);
        assert!((deligne_bound(2, 5) - 2.0 * 5f64.sqrt()).abs() < 1e-12);
        assert!((deligne_bound(4, 4) - 32.0).abs() < 1e-12);
        assert!((fulman_bound(3, 7) - 15.6003).abs() < 1e-4);
        assert!((fulman_bound(2, 5) - 4.0).abs() < 1e-12);
        for n in 2..6 {
            assert!((fulman_bound(n, 2) - 1.0).abs() < 1e-12);
        }
        // n = 2: the bound is q - 1, the number of terms.
        for q in [3, 4, 5, 7, 8, 9, 11] {
            assert!((fulman_bound(2, q) - (q as f64 - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn unitary_sums_over_f4() {
        let f4 = f(4);
        let chi0 = MultChar::trivial(&f4);
        let lam0 = AddChar::new(&f4, Elem(0)).unwrap();
        let lam1 = AddChar::canonical(&f4);
        assert_eq!(g1(&chi0, &lam1).unwrap(), CycNum::from_integer(6, -1));
        assert_eq!(g1(&chi0, &lam0).unwrap(), CycNum::from_integer(6, 3));
        assert_eq!(g2(&chi0, &lam0).unwrap(), CycNum::from_integer(6, 6));
        assert!(g1(&MultChar::trivial(&f(8)), &AddChar::canonical(&f(8))).is_err());
    }

    #[test]
    fn g2_matches_brute_force_definition() {
        for q0 in [2u64, 3, 4] {
            let f = f(q0 * q0);
            assert!(g2_fiber_sizes(&f).unwrap().iter().all(|&s| s == q0 as usize));
            for chi in MultChar::all(&f) {
                for lam in AddChar::all(&f) {
                    let mut direct = CycNum::zero(f.ambient_order());
                    for a in f.nonzero().filter(|&a| f.pow(a, q0 + 1) == Elem::ONE) {
                        let target = f.pow(a, q0);
                        for b in f.elements() {
                            if b.is_zero() || f.pow(b, q0 - 1) == target {
                                direct = direct + chi.eval(a) * lam.eval(f.neg(b));
                            }
                        }
                    }
                    assert_eq!(g2(&chi, &lam).unwrap(), direct);
                }
            }
        }
    }

    #[test]
    fn small_bound_rows() {
        let row = bound_row(2, 2).unwrap();
        assert_eq!(row.fulman, 1.0);
        assert!((row.max_actual - 1.0).abs() < 1e-12);
        let row = bound_row(3, 7).unwrap();
        assert!(row.fulman_sharper() && row.within_bounds());
        let t = bound_table(&[3, 2], &[5, 3]).unwrap();
        let keys: Vec<_> = t.iter().map(|r| (r.q, r.n)).collect();
        assert_eq!(keys, vec![(3, 2), (3, 3), (5, 2), (5, 3)]);
        assert!(bound_row(1, 5).is_err());
    }
}
