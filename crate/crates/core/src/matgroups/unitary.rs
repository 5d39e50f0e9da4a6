use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::gl::det_trace_char_sum;
use super::matrix::SquareMatrix;
use super::{merge_tallies, DetTraceHistogram, PairHistogram};
use crate::characters::{AddChar, MultChar};
use crate::cyclotomic::CycNum;
use crate::error::{check_cap, Error, Result};
use crate::ffield::{Elem, Field};

/// Cap shared by the filter enumeration (`q^{2n^2}` candidates) and the
/// constrained one (`q^{2n}` candidate rows, `|U(n,q)|` results).
pub const U_ENUMERATION_CAP: f64 = 2e7;

/// `F_{q^2}`, the field `U(n,q)` lives in.
pub fn unitary_field(q: u64) -> Result<Arc<Field>> {
    let q2 = q.checked_mul(q).ok_or(Error::NotPrimePower(q))?;
    Field::with_order(q2)
}

/// `|U(n,q)| = q^{n(n-1)/2} ∏_{i=1}^n (q^i - (-1)^i)`.
pub fn u_order(n: u32, q: u64) -> BigUint {
    let qb = BigInt::from(q);
    let mut order = qb.pow(n * n.saturating_sub(1) / 2);
    for i in 1..=n {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        order *= qb.pow(i) - sign;
    }
    order.try_into().expect("unitary group order is positive")
}

fn sub_order(f: &Field) -> Result<u64> {
    f.sub_order().map(u64::from).ok_or(Error::NotQuadraticExtension(f.order()))
}

/// `⟨u, v⟩ = Σ u_a J_ab v_b^q`.
fn form(f: &Field, gram: &SquareMatrix, u: &[Elem], v_conj: &[Elem]) -> Elem {
    let n = u.len();
    let mut acc = Elem::ZERO;
    for a in 0..n {
        if u[a].is_zero() {
            continue;
        }
        for b in 0..n {
            acc = f.add(acc, f.mul(u[a], f.mul(gram.get(a, b), v_conj[b])));
        }
    }
    acc
}

fn check_gram(gram: &SquareMatrix) -> Result<()> {
    if gram.conj_transpose()? != *gram {
        return Err(Error::InvalidParameter("Gram matrix is not Hermitian".into()));
    }
    if gram.det().is_zero() {
        return Err(Error::InvalidParameter("Gram matrix is singular".into()));
    }
    Ok(())
}

struct RowSearch<'a> {
    f: &'a Field,
    gram: &'a SquareMatrix,
    n: usize,
    vectors: Vec<Vec<Elem>>,
    conjugates: Vec<Vec<Elem>>,
    /// candidate indices per row position, filtered by the diagonal condition
    by_row: Vec<Vec<usize>>,
}

impl<'a> RowSearch<'a> {
    fn new(f: &'a Field, gram: &'a SquareMatrix) -> Result<Self> {
        let n = gram.dim();
        let q = f.order() as u64;
        let count = (q as f64).powi(n as i32);
        check_cap("unitary row candidates", count, U_ENUMERATION_CAP)?;
        let vectors: Vec<Vec<Elem>> = (0..q.pow(n as u32))
            .map(|mut idx| {
                (0..n)
                    .map(|_| {
                        let e = Elem((idx % q) as u32);
                        idx /= q;
                        e
                    })
                    .collect()
            })
            .collect();
        let conjugates = vectors
            .iter()
            .map(|v| v.iter().map(|&x| f.frobenius_q(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let by_row = (0..n)
            .map(|i| {
                (0..vectors.len())
                    .filter(|&k| form(f, gram, &vectors[k], &conjugates[k]) == gram.get(i, i))
                    .collect()
            })
            .collect();
        Ok(Self { f, gram, n, vectors, conjugates, by_row })
    }

    fn extend(&self, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        let i = chosen.len();
        if i == self.n {
            visit(chosen);
            return;
        }
        for &k in &self.by_row[i] {
            let ok = chosen.iter().enumerate().all(|(j, &r)| {
                form(self.f, self.gram, &self.vectors[k], &self.conjugates[r]) == self.gram.get(i, j)
            });
            if ok {
                chosen.push(k);
                self.extend(chosen, visit);
                chosen.pop();
            }
        }
    }

    fn entries(&self, rows: &[usize]) -> Vec<Elem> {
        rows.iter().flat_map(|&k| self.vectors[k].iter().copied()).collect()
    }
}

/// `{g : g J g^* = J}` by choosing rows one at a time subject to the form
/// conditions; results are sorted by entries.
pub fn enumerate_unitary_with_form(f: &Arc<Field>, gram: &SquareMatrix) -> Result<Vec<SquareMatrix>> {
    if gram.field() != f {
        return Err(Error::MixedFields);
    }
    let q = sub_order(f)?;
    check_gram(gram)?;
    let n = gram.dim();
    check_cap("unitary group order", u_order(n as u32, q).to_f64().unwrap_or(f64::INFINITY), U_ENUMERATION_CAP)?;
    let search = RowSearch::new(f, gram)?;
    let mut out = Vec::new();
    search.extend(&mut Vec::new(), &mut |rows| {
        out.push(SquareMatrix::new(f, n, search.entries(rows)).expect("entries in range"));
    });
    out.sort_by(|a, b| a.entries().cmp(b.entries()));
    Ok(out)
}

/// `U(n,q)` for the identity Hermitian form, over a field of order `q^2`.
pub fn enumerate_u(f: &Arc<Field>, n: usize) -> Result<Vec<SquareMatrix>> {
    enumerate_unitary_with_form(f, &SquareMatrix::identity(f, n))
}

/// `U(n,q)` by testing every matrix in `M_n(F_{q^2})`; sorted by entries.
pub fn enumerate_u_filter(f: &Arc<Field>, n: usize) -> Result<Vec<SquareMatrix>> {
    sub_order(f)?;
    check_cap(
        "unitary filter enumeration",
        (f.order() as f64).powi((n * n) as i32),
        U_ENUMERATION_CAP,
    )?;
    let id = SquareMatrix::identity(f, n);
    let q = f.order() as u64;
    let mut out = Vec::new();
    for mut idx in 0..q.pow((n * n) as u32) {
        let entries: Vec<Elem> = (0..n * n)
            .map(|_| {
                let e = Elem((idx % q) as u32);
                idx /= q;
                e
            })
            .collect();
        let g = SquareMatrix::new(f, n, entries)?;
        if g.mul(&g.conj_transpose()?)? == id {
            out.push(g);
        }
    }
    out.sort_by(|a, b| a.entries().cmp(b.entries()));
    Ok(out)
}

/// `(det, tr)` histogram of the group preserving `gram` (identity if `None`).
pub fn u_histogram(f: &Arc<Field>, n: usize, gram: Option<&SquareMatrix>) -> Result<DetTraceHistogram> {
    let id;
    let gram = match gram {
        Some(g) => g,
        None => {
            id = SquareMatrix::identity(f, n);
            &id
        }
    };
    if gram.field() != f {
        return Err(Error::MixedFields);
    }
    let q = sub_order(f)?;
    check_gram(gram)?;
    check_cap("unitary group order", u_order(n as u32, q).to_f64().unwrap_or(f64::INFINITY), U_ENUMERATION_CAP)?;
    let search = RowSearch::new(f, gram)?;
    let tally = search.by_row[0]
        .par_iter()
        .map(|&first| {
            let mut t = HashMap::new();
            search.extend(&mut vec![first], &mut |rows| {
                let g = SquareMatrix::new(f, n, search.entries(rows)).expect("entries in range");
                *t.entry((g.det().0, g.trace().0)).or_insert(0) += 1;
            });
            t
        })
        .reduce(HashMap::new, merge_tallies);
    Ok(PairHistogram::from_tally(f, n, tally))
}

/// `Σ_{g ∈ U(n,q)} χ(det g) λ(tr g)` from a unitary histogram.
pub fn u_char_sum(h: &DetTraceHistogram, chi: &MultChar, lambda: &AddChar) -> Result<CycNum> {
    det_trace_char_sum(h, chi, lambda)
}
