use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};

/// An `n × n` matrix over a finite field, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    field: Arc<Field>,
    n: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| self.row(i).iter().map(|&e| self.field.format(e)).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl SquareMatrix {
    pub fn new(field: &Arc<Field>, n: usize, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch);
        }
        for e in &entries {
            field.elem(e.0 as u64)?;
        }
        Ok(Self { field: Arc::clone(field), n, entries })
    }

    /// Builds a matrix from rows of element indices.
    pub fn from_rows(field: &Arc<Field>, rows: &[&[u32]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch);
        }
        Self::new(field, n, rows.iter().flat_map(|r| r.iter().map(|&x| Elem(x))).collect())
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Self {
        let mut entries = vec![Elem::ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = Elem::ONE;
        }
        Self { field: Arc::clone(field), n, entries }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let (f, n) = (&self.field, self.n);
        let mut entries = vec![Elem::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = (0..n).fold(Elem::ZERO, |acc, k| {
                    f.add(acc, f.mul(self.get(i, k), other.get(k, j)))
                });
            }
        }
        Ok(Self { field: Arc::clone(f), n, entries })
    }

    pub fn trace(&self) -> Elem {
        (0..self.n).fold(Elem::ZERO, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    pub fn det(&self) -> Elem {
        gauss_jordan(&self.field, self.n, &self.entries).map_or(Elem::ZERO, |r| r.det)
    }

    pub fn inverse(&self) -> Result<Self> {
        let r = gauss_jordan(&self.field, self.n, &self.entries).ok_or(Error::SingularMatrix)?;
        Ok(Self { field: Arc::clone(&self.field), n: self.n, entries: r.inverse })
    }

    /// Transpose with `x ↦ x^q` applied entrywise, in a field of order `q^2`.
    pub fn conj_transpose(&self) -> Result<Self> {
        let n = self.n;
        let mut entries = vec![Elem::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.field.frobenius_q(self.get(i, j))?;
            }
        }
        Ok(Self { field: Arc::clone(&self.field), n, entries })
    }
}

pub(crate) struct Reduction {
    pub det: Elem,
    pub inverse: Vec<Elem>,
}

/// Gauss-Jordan elimination; `None` when the matrix is singular.
pub(crate) fn gauss_jordan(f: &Field, n: usize, a: &[Elem]) -> Option<Reduction> {
    let w = 2 * n;
    let mut m = vec![Elem::ZERO; n * w];
    for i in 0..n {
        m[i * w..i * w + n].copy_from_slice(&a[i * n..(i + 1) * n]);
        m[i * w + n + i] = Elem::ONE;
    }
    let mut det = Elem::ONE;
    for c in 0..n {
        let pivot = (c..n).find(|&r| !m[r * w + c].is_zero())?;
        if pivot != c {
            for j in 0..w {
                m.swap(pivot * w + j, c * w + j);
            }
            det = f.neg(det);
        }
        let pv = m[c * w + c];
        det = f.mul(det, pv);
        let inv = f.inv(pv).ok()?;
        for j in c..w {
            m[c * w + j] = f.mul(m[c * w + j], inv);
        }
        for r in 0..n {
            let factor = m[r * w + c];
            if r == c || factor.is_zero() {
                continue;
            }
            for j in c..w {
                let t = f.mul(factor, m[c * w + j]);
                m[r * w + j] = f.sub(m[r * w + j], t);
            }
        }
    }
    let inverse = (0..n)
        .flat_map(|i| m[i * w + n..(i + 1) * w].to_vec())
        .collect();
    Some(Reduction { det, inverse })
}

/// Determinant and `tr(g^{-1})` of an invertible matrix.
pub(crate) fn det_and_inverse_trace(f: &Field, n: usize, a: &[Elem]) -> Option<(Elem, Elem)> {
    let r = gauss_jordan(f, n, a)?;
    let tr = (0..n).fold(Elem::ZERO, |acc, i| f.add(acc, r.inverse[i * n + i]));
    Some((r.det, tr))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_examples() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(SquareMatrix::identity(&f5, 3).trace(), Elem(3));

        let f3 = Field::new(3, 1).unwrap();
        let g = SquareMatrix::from_rows(&f3, &[&[1, 1], &[0, 1]]).unwrap();
        let gi = g.inverse().unwrap();
        assert_eq!(gi, SquareMatrix::from_rows(&f3, &[&[1, 2], &[0, 1]]).unwrap());
        assert_eq!(gi.trace(), Elem(2));
        assert_eq!(g.mul(&gi).unwrap(), SquareMatrix::identity(&f3, 2));

        let swap = SquareMatrix::from_rows(&f5, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(swap.det(), f5.neg(Elem::ONE));

        let singular = SquareMatrix::from_rows(&f5, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(singular.det(), Elem::ZERO);
        assert_eq!(singular.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn determinant_is_multiplicative() {
        let f7 = Field::new(7, 1).unwrap();
        let a = SquareMatrix::from_rows(&f7, &[&[1, 2, 3], &[4, 5, 6], &[0, 1, 1]]).unwrap();
        let b = SquareMatrix::from_rows(&f7, &[&[2, 0, 1], &[3, 3, 3], &[6, 1, 0]]).unwrap();
        assert_eq!(a.mul(&b).unwrap().det(), f7.mul(a.det(), b.det()));
        // cofactor expansion for the 3x3 case
        let cof = |m: &SquareMatrix| {
            let g = |i, j| m.get(i, j).0 as i64;
            let d = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
                - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
            f7.from_int(d)
        };
        assert_eq!(a.det(), cof(&a));
        assert_eq!(b.det(), cof(&b));
    }

    #[test]
    fn rejects_mismatches() {
        let f5 = Field::new(5, 1).unwrap();
        let f7 = Field::new(7, 1).unwrap();
        let a = SquareMatrix::identity(&f5, 2);
        assert_eq!(a.mul(&SquareMatrix::identity(&f7, 2)), Err(Error::MixedFields));
        assert_eq!(a.mul(&SquareMatrix::identity(&f5, 3)), Err(Error::DimensionMismatch));
        assert!(SquareMatrix::new(&f5, 2, vec![Elem(0); 3]).is_err());
    }
}
