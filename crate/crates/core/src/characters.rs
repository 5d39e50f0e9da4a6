//! Additive and multiplicative characters of `F_q`, and their extensions to
//! monic polynomials.
//!
//! Characters are indexed canonically so that "for every character" is a
//! plain loop:
//!
//! * `λ_a(x) = ζ_p^{Tr(a x)}` for `a ∈ F_q` (trivial iff `a = 0`);
//! * `χ_j(g^e) = ζ_{q-1}^{j e}` for the field's canonical generator `g`,
//!   `j ∈ [0, q-2]`, with `χ_j(0) = 0`.
//!
//! All values live in `Q(ζ_m)` with `m = p(q-1)`, the field's
//! [`ambient_order`](Field::ambient_order). The `*_exponent` methods return
//! the exponent of `ζ_m` directly for use in hot loops.

use std::sync::Arc;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::ffield::{Elem, Field, FieldElement};
use crate::poly::{require_degree, MonicPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddChar {
    field: Arc<Field>,
    a: Elem,
}

impl AddChar {
    pub fn new(field: &Arc<Field>, a: Elem) -> Result<Self> {
        field.elem(a.0 as u64)?;
        Ok(Self { field: Arc::clone(field), a })
    }

    /// `λ_1`, the character used wherever a fixed nontrivial one is needed.
    pub fn canonical(field: &Arc<Field>) -> Self {
        Self { field: Arc::clone(field), a: Elem::ONE }
    }

    /// Every additive character, `λ_0` first.
    pub fn all(field: &Arc<Field>) -> impl Iterator<Item = AddChar> + '_ {
        field.elements().map(move |a| Self { field: Arc::clone(field), a })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn parameter(&self) -> Elem {
        self.a
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_zero()
    }

    /// `Tr(a x)`, the exponent of `ζ_p`.
    pub fn exponent(&self, x: Elem) -> u32 {
        self.field.trace(self.field.mul(self.a, x))
    }

    /// Exponent of `ζ_m` for `λ(x)`, where `m` is the ambient order.
    pub fn ambient_exponent(&self, x: Elem) -> u64 {
        self.exponent(x) as u64 * (self.field.order() as u64 - 1)
    }

    pub fn eval(&self, x: Elem) -> CycNum {
        CycNum::zeta(self.field.ambient_order(), self.ambient_exponent(x) as i64)
    }

    pub fn eval_checked(&self, x: &FieldElement) -> Result<CycNum> {
        if **x.field() != *self.field {
            return Err(Error::MixedFields);
        }
        Ok(self.eval(x.value()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultChar {
    field: Arc<Field>,
    j: u32,
}

impl MultChar {
    /// `χ_j`; `j` is reduced mod `q - 1`.
    pub fn new(field: &Arc<Field>, j: i64) -> Self {
        let n = field.order() as i64 - 1;
        Self { field: Arc::clone(field), j: j.rem_euclid(n) as u32 }
    }

    pub fn trivial(field: &Arc<Field>) -> Self {
        Self::new(field, 0)
    }

    /// Every multiplicative character, `χ_0` first.
    pub fn all(field: &Arc<Field>) -> impl Iterator<Item = MultChar> + '_ {
        (0..field.order() as i64 - 1).map(move |j| Self::new(field, j))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn index(&self) -> u32 {
        self.j
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }

    /// `χ̄ = χ_{-j}`.
    pub fn conj(&self) -> Self {
        Self::new(&self.field, -(self.j as i64))
    }

    /// Exponent of `ζ_{q-1}`, or `None` at zero.
    pub fn exponent(&self, x: Elem) -> Option<u32> {
        let n = self.field.order() as u64 - 1;
        let l = self.field.dlog(x).ok()? as u64;
        Some(((self.j as u64 * l) % n) as u32)
    }

    /// Exponent of `ζ_m` for `χ(x)`, or `None` at zero.
    pub fn ambient_exponent(&self, x: Elem) -> Option<u64> {
        self.exponent(x).map(|e| e as u64 * self.field.characteristic() as u64)
    }

    pub fn eval(&self, x: Elem) -> CycNum {
        let m = self.field.ambient_order();
        match self.ambient_exponent(x) {
            Some(e) => CycNum::zeta(m, e as i64),
            None => CycNum::zero(m),
        }
    }

    pub fn eval_checked(&self, x: &FieldElement) -> Result<CycNum> {
        if **x.field() != *self.field {
            return Err(Error::MixedFields);
        }
        Ok(self.eval(x.value()))
    }
}

/// `(-1)^n c_0`, the element a multiplicative character sees in `P`.
pub fn chi_argument(f: &Field, p: &MonicPoly) -> Elem {
    let c0 = p.constant_term();
    if p.degree() % 2 == 1 {
        f.neg(c0)
    } else {
        c0
    }
}

/// `χ(P) = χ((-1)^n c_0)`, zero when `c_0 = 0`.
pub fn chi_of_poly(chi: &MultChar, p: &MonicPoly) -> Result<CycNum> {
    require_degree(p)?;
    Ok(chi.eval(chi_argument(&chi.field, p)))
}

/// `λ(P) = λ(-c_{n-1})`.
pub fn lambda_of_poly(lambda: &AddChar, p: &MonicPoly) -> Result<CycNum> {
    require_degree(p)?;
    let f = &lambda.field;
    Ok(lambda.eval(f.neg(p.coeff(p.degree() - 1))))
}

/// Argument of `λ` in `τ(P)`: `-x c_{n-1} - y c_1 / c_0` for degree at least
/// two, `-x c_0 - y / c_0` in degree one.
pub fn tau_argument(f: &Field, x: Elem, y: Elem, p: &MonicPoly) -> Result<Elem> {
    require_degree(p)?;
    let c0 = p.constant_term();
    if c0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let n = p.degree();
    let inv_c0 = f.inv(c0)?;
    let (top, recip) = if n == 1 {
        (c0, inv_c0)
    } else {
        (p.coeff(n - 1), f.mul(p.coeff(1), inv_c0))
    };
    Ok(f.neg(f.add(f.mul(x, top), f.mul(y, recip))))
}

/// `τ(P) = λ(x·tr(P) + y·tr(P^{-1}))` expressed through the coefficients.
pub fn tau_of_poly(lambda: &AddChar, x: Elem, y: Elem, p: &MonicPoly) -> Result<CycNum> {
    if x.is_zero() {
        return Err(Error::ZeroArgument("x"));
    }
    if y.is_zero() {
        return Err(Error::ZeroArgument("y"));
    }
    Ok(lambda.eval(tau_argument(&lambda.field, x, y, p)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Arc<Field> {
        Field::with_order(q).unwrap()
    }

    fn poly(v: &[u32]) -> MonicPoly {
        MonicPoly::new(v.iter().map(|&c| Elem(c)).collect())
    }

    #[test]
    fn additive_values() {
        let f5 = f(5);
        let l0 = AddChar::new(&f5, Elem(0)).unwrap();
        assert!(f5.elements().all(|x| l0.eval(x) == CycNum::one(20)));
        let l1 = AddChar::canonical(&f5);
        assert_eq!(l1.eval(Elem(3)), CycNum::zeta(5, 3));

        let f4 = f(4);
        assert_eq!(AddChar::canonical(&f4).eval(Elem(2)), CycNum::from_integer(6, -1));
    }

    #[test]
    fn multiplicative_values() {
        let f5 = f(5);
        let chi0 = MultChar::trivial(&f5);
        assert!(f5.nonzero().all(|x| chi0.eval(x) == CycNum::one(20)));
        assert_eq!(MultChar::new(&f5, 1).eval(Elem(4)), CycNum::from_integer(20, -1));
        for j in 0..4 {
            assert!(MultChar::new(&f5, j).eval(Elem(0)).is_zero());
        }
    }

    #[test]
    fn polynomial_functionals() {
        let f5 = f(5);
        let chi1 = MultChar::new(&f5, 1);
        let l1 = AddChar::canonical(&f5);
        for j in 0..4 {
            let chi = MultChar::new(&f5, j);
            assert_eq!(chi_of_poly(&chi, &poly(&[1, 1])).unwrap(), CycNum::one(20));
        }
        assert!(chi_of_poly(&chi1, &poly(&[0, 0])).unwrap().is_zero());
        assert_eq!(chi_of_poly(&chi1, &poly(&[2])).unwrap(), CycNum::zeta(4, 3));
        assert_eq!(chi_of_poly(&chi1, &MonicPoly::one()), Err(Error::ConstantPolynomial));

        assert_eq!(lambda_of_poly(&l1, &poly(&[2, 3])).unwrap(), CycNum::zeta(5, 2));
        assert_eq!(lambda_of_poly(&l1, &poly(&[4, 0, 0])).unwrap(), CycNum::one(5));
        assert_eq!(lambda_of_poly(&l1, &poly(&[3])).unwrap(), l1.eval(Elem(2)));
    }

    #[test]
    fn tau_examples() {
        let f5 = f(5);
        let l1 = AddChar::canonical(&f5);
        let one = Elem(1);
        assert_eq!(tau_of_poly(&l1, one, one, &poly(&[2])).unwrap(), CycNum::one(5));
        assert_eq!(tau_of_poly(&l1, one, one, &poly(&[1, 1])).unwrap(), CycNum::zeta(5, 3));
        assert_eq!(tau_of_poly(&l1, one, one, &poly(&[0, 1])), Err(Error::ZeroConstantTerm));
        assert_eq!(tau_of_poly(&l1, Elem(0), one, &poly(&[1])), Err(Error::ZeroArgument("x")));
        for a in 1..5 {
            for b in 1..5 {
                let (pa, pb) = (poly(&[a]), poly(&[b]));
                for (x, y) in [(1, 1), (2, 3), (4, 2)] {
                    let (x, y) = (Elem(x), Elem(y));
                    let lhs = tau_of_poly(&l1, x, y, &pa.mul(&pb, &f5)).unwrap();
                    let rhs = tau_of_poly(&l1, x, y, &pa).unwrap()
                        * tau_of_poly(&l1, x, y, &pb).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn characters_are_homomorphisms() {
        for q in [4, 7, 8, 9] {
            let fq = f(q);
            for lam in AddChar::all(&fq) {
                for x in fq.elements() {
                    for y in fq.elements() {
                        assert_eq!(
                            lam.ambient_exponent(fq.add(x, y)) % fq.ambient_order(),
                            (lam.ambient_exponent(x) + lam.ambient_exponent(y)) % fq.ambient_order()
                        );
                    }
                }
            }
            for chi in MultChar::all(&fq) {
                for x in fq.nonzero() {
                    for y in fq.nonzero() {
                        assert_eq!(chi.eval(fq.mul(x, y)), chi.eval(x) * chi.eval(y));
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_and_distinctness() {
        for q in [2, 3, 4, 5, 8, 9] {
            let fq = f(q);
            let m = fq.ambient_order();
            for chi in MultChar::all(&fq).skip(1) {
                let s = fq.nonzero().fold(CycNum::zero(m), |acc, x| acc + chi.eval(x));
                assert!(s.is_zero());
            }
            let mut tables = Vec::new();
            for lam in AddChar::all(&fq) {
                let s = fq.elements().fold(CycNum::zero(m), |acc, x| acc + lam.eval(x));
                assert_eq!(s.is_zero(), !lam.is_trivial());
                tables.push(fq.elements().map(|x| lam.exponent(x)).collect::<Vec<_>>());
            }
            let n = tables.len();
            tables.sort();
            tables.dedup();
            assert_eq!(tables.len(), n);
        }
    }

    #[test]
    fn polynomial_characters_are_multiplicative() {
        let f7 = f(7);
        let chi = MultChar::new(&f7, 1);
        let lam = AddChar::canonical(&f7);
        let ps = [poly(&[3, 1]), poly(&[0, 5, 2]), poly(&[6]), poly(&[1, 0, 0, 4])];
        for a in &ps {
            for b in &ps {
                let ab = a.mul(b, &f7);
                assert_eq!(
                    chi_of_poly(&chi, &ab).unwrap(),
                    chi_of_poly(&chi, a).unwrap() * chi_of_poly(&chi, b).unwrap()
                );
                assert_eq!(
                    lambda_of_poly(&lam, &ab).unwrap(),
                    lambda_of_poly(&lam, a).unwrap() * lambda_of_poly(&lam, b).unwrap()
                );
            }
        }
    }

    #[test]
    fn mixed_field_evaluation_is_rejected() {
        let f5 = f(5);
        let f7 = f(7);
        let x = FieldElement::new(&f7, Elem(1)).unwrap();
        assert_eq!(AddChar::canonical(&f5).eval_checked(&x), Err(Error::MixedFields));
        assert_eq!(MultChar::trivial(&f5).eval_checked(&x), Err(Error::MixedFields));
    }
}
