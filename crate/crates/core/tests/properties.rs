use std::sync::Arc;

use charsum::characters::{chi_of_poly, lambda_of_poly, tau_of_poly, AddChar, MultChar};
use charsum::cyclotomic::CycNum;
use charsum::polyseries::{
    clears_to_integers, euler_denominator, euler_factor_gl, euler_factor_kloost, euler_factor_unitary,
    euler_product_gl, euler_product_kloost, euler_product_unitary, is_invariant, poly_involution,
    product_coeffs_gl, IrreduciblesTable, SeriesPrefix, Sign,
};
use charsum::{Elem, Field, MonicPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const ORDERS: [u64; 9] = [2, 3, 4, 5, 7, 8, 9, 16, 25];

fn field(q: u64) -> Arc<Field> {
    Field::with_order(q).unwrap()
}

fn field_and_elems(k: usize) -> impl Strategy<Value = (u64, Vec<u32>)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(move |q| (Just(q), prop::collection::vec(0..q as u32, k)))
}

fn cyc(m: u64, v: &[(i64, i64)]) -> CycNum {
    let coeffs = v
        .iter()
        .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
        .collect();
    CycNum::from_coeffs(m, coeffs)
}

fn cyc_triple() -> impl Strategy<Value = (u64, Vec<(i64, i64)>, Vec<(i64, i64)>, Vec<(i64, i64)>)> {
    (1u64..=24).prop_flat_map(|m| {
        let entry = (-9i64..=9, 1i64..=6);
        let v = prop::collection::vec(entry, 1..=m as usize);
        (Just(m), v.clone(), v.clone(), v)
    })
}

fn poly_strategy(q: u64, max_deg: usize) -> impl Strategy<Value = Vec<u32>> {
    (1..=max_deg).prop_flat_map(move |d| {
        (1..q as u32, prop::collection::vec(0..q as u32, d - 1)).prop_map(|(c0, rest)| {
            let mut v = vec![c0];
            v.extend(rest);
            v
        })
    })
}

fn monic(v: &[u32]) -> MonicPoly {
    MonicPoly::new(v.iter().map(|&c| Elem(c)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_laws((q, v) in field_and_elems(3)) {
        let f = field(q);
        let (a, b, c) = (Elem(v[0]), Elem(v[1]), Elem(v[2]));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            prop_assert_eq!(f.exp(f.dlog(a).unwrap() as i64), a);
        }
        // Frobenius x ↦ x^p is additive
        let p = f.characteristic() as u64;
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
        prop_assert_eq!(f.parse(&f.format(a)).unwrap(), a);
    }

    #[test]
    fn frobenius_q_is_an_involution((q, v) in prop::sample::select(vec![4u64, 9, 16, 25])
        .prop_flat_map(|q| (Just(q), prop::collection::vec(0..q as u32, 2))))
    {
        let f = field(q);
        let (a, b) = (Elem(v[0]), Elem(v[1]));
        let fr = |x| f.frobenius_q(x).unwrap();
        prop_assert_eq!(fr(fr(a)), a);
        prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
    }

    #[test]
    fn cyclotomic_ring_laws((m, a, b, c) in cyc_triple()) {
        let (a, b, c) = (cyc(m, &a), cyc(m, &b), cyc(m, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn canonical_form_round_trips((m, a, _b, _c) in cyc_triple()) {
        let a = cyc(m, &a);
        let s = a.canonical_string();
        let back = CycNum::parse_canonical(&s).unwrap();
        prop_assert_eq!(back.canonical_string(), s);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn complex_embedding_is_a_homomorphism((m, a, b, _c) in cyc_triple()) {
        let (a, b) = (cyc(m, &a), cyc(m, &b));
        let sum = (&a + &b).to_complex() - (a.to_complex() + b.to_complex());
        let prod = (&a * &b).to_complex() - a.to_complex() * b.to_complex();
        prop_assert!(sum.norm() < 1e-9);
        prop_assert!(prod.norm() < 1e-9 * (1.0 + a.to_complex().norm() * b.to_complex().norm()));
        prop_assert!((a.conj().to_complex() - a.to_complex().conj()).norm() < 1e-9);
    }

    #[test]
    fn lifting_preserves_values((m, a, _b, _c) in cyc_triple(), k in 1u64..4) {
        let a = cyc(m, &a);
        let l = a.lift(m * k);
        prop_assert_eq!(&l, &a);
        prop_assert!((l.to_complex() - a.to_complex()).norm() < 1e-9);
    }

    #[test]
    fn characters_are_multiplicative_on_polynomials(
        (q, p1, p2, x, y) in prop::sample::select(vec![3u64, 4, 5, 7])
            .prop_flat_map(|q| (Just(q), poly_strategy(q, 3), poly_strategy(q, 3), 1..q as u32, 1..q as u32))
    ) {
        let f = field(q);
        let (a, b) = (monic(&p1), monic(&p2));
        let ab = a.mul(&b, &f);
        let lam = AddChar::canonical(&f);
        let (x, y) = (Elem(x), Elem(y));
        let tau = |p: &MonicPoly| tau_of_poly(&lam, x, y, p).unwrap();
        prop_assert_eq!(tau(&ab), &tau(&a) * &tau(&b));
        let l = |p: &MonicPoly| lambda_of_poly(&lam, p).unwrap();
        prop_assert_eq!(l(&ab), &l(&a) * &l(&b));
        for chi in MultChar::all(&f) {
            let c = |p: &MonicPoly| chi_of_poly(&chi, p).unwrap();
            prop_assert_eq!(c(&ab), &c(&a) * &c(&b));
        }
    }

    #[test]
    fn involution_is_multiplicative(
        (q, p1, p2) in prop::sample::select(vec![4u64, 9])
            .prop_flat_map(|q| (Just(q), poly_strategy(q, 3), poly_strategy(q, 3)))
    ) {
        let f = field(q);
        let (a, b) = (monic(&p1), monic(&p2));
        let t = |p: &MonicPoly| poly_involution(&f, p).unwrap();
        prop_assert_eq!(t(&t(&a)), a.clone());
        prop_assert_eq!(t(&a.mul(&b, &f)), t(&a).mul(&t(&b), &f));
    }

    #[test]
    fn gl_product_clears_to_integers(re in -5i64..=5, im in -5i64..=5, q in 2u64..=7) {
        let g = &CycNum::from_integer(4, re) + &CycNum::zeta(4, 1).scale(&BigRational::from_integer(im.into()));
        let s = product_coeffs_gl(&g, q, 6).unwrap();
        for n in 0..=6 {
            prop_assert!(clears_to_integers(s.coeff(n), &euler_denominator(q, n)));
        }
    }

    #[test]
    fn truncated_series_multiplication(
        (m, a, b, c) in cyc_triple(), n in 1usize..4
    ) {
        let s = |v: &[(i64, i64)]| {
            let mut coeffs: Vec<CycNum> = (0..=n).map(|i| cyc(m, &v[..v.len().min(i + 1)])).collect();
            coeffs[0] = CycNum::one(m);
            SeriesPrefix::new(coeffs)
        };
        let (a, b, c) = (s(&a), s(&b), s(&c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&SeriesPrefix::one(m, n)), a.clone());
    }
}

/// Over `F_{q^2}`, `P` is invariant exactly when its irreducible factors
/// split into invariant ones and pairs `{φ, φ̃}` of equal multiplicity.
#[test]
fn unique_factorization_consistency() {
    for q in [4u64, 9] {
        let f = field(q);
        let table = IrreduciblesTable::build(&f, 2).unwrap();
        for d in 1..=3 {
            for p in charsum::poly::enumerate_monic(&f, d, true).unwrap() {
                let factors = table.factor(&p);
                let mut pairing_ok = true;
                for phi in &factors {
                    let tilde = poly_involution(&f, phi).unwrap();
                    let a = factors.iter().filter(|g| *g == phi).count();
                    let b = factors.iter().filter(|g| **g == tilde).count();
                    pairing_ok &= a == b;
                }
                assert_eq!(is_invariant(&f, &p).unwrap(), pairing_ok, "{}", p.format(&f));
            }
        }
    }
}

/// Products over irreducibles up to degree `N` agree with direct sums up to `u^N`.
#[test]
fn truncation_soundness() {
    for q in [2u64, 3, 4, 5] {
        let f = field(q);
        let table = IrreduciblesTable::build(&f, 4).unwrap();
        for chi in MultChar::all(&f) {
            for lam in AddChar::all(&f) {
                for i in [1, 2] {
                    assert_eq!(
                        euler_product_gl(&table, &chi, &lam, i).unwrap(),
                        euler_factor_gl(&chi, &lam, i, 4).unwrap()
                    );
                }
            }
        }
        let lam = AddChar::canonical(&f);
        for x in f.nonzero() {
            for y in f.nonzero() {
                assert_eq!(
                    euler_product_kloost(&table, &lam, x, y, 1).unwrap(),
                    euler_factor_kloost(&lam, x, y, 1, 4).unwrap()
                );
            }
        }
    }
    for q in [4u64, 9] {
        let f = field(q);
        let table = IrreduciblesTable::build(&f, 3).unwrap();
        for chi in MultChar::all(&f) {
            for lam in AddChar::all(&f) {
                for sign in [Sign::Plus, Sign::Minus] {
                    assert_eq!(
                        euler_product_unitary(&table, &chi, &lam, 1, sign).unwrap(),
                        euler_factor_unitary(&chi, &lam, 1, 3, sign).unwrap()
                    );
                }
            }
        }
    }
}
