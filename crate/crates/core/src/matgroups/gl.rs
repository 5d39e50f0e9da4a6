use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use super::matrix::{det_and_inverse_trace, SquareMatrix};
use super::{merge_tallies, DetTraceHistogram, PairHistogram, TraceInvHistogram};
use crate::characters::{AddChar, MultChar};
use crate::cyclotomic::{CycNum, RootSum};
use crate::error::{check_cap, Error, Result};
use crate::ffield::{Elem, Field};

/// Largest `q^{n^2}` an enumeration over all matrices may visit.
pub const GL_ENUMERATION_CAP: f64 = 2e7;

/// `|GL(n,q)| = q^{n(n-1)/2} ∏_{i=1}^n (q^i - 1)`.
pub fn gl_order(n: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let mut order = q.pow(n * n.saturating_sub(1) / 2);
    for i in 1..=n {
        order *= q.pow(i) - BigUint::one();
    }
    order
}

fn check_gl_cap(f: &Field, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("matrix dimension must be at least 1".into()));
    }
    check_cap(
        "matrix enumeration",
        (f.order() as f64).powi((n * n) as i32),
        GL_ENUMERATION_CAP,
    )
}

/// Steps the base-`q` odometer; returns false after the last state.
fn advance(entries: &mut [Elem], q: u32) -> bool {
    for e in entries.iter_mut() {
        e.0 += 1;
        if e.0 < q {
            return true;
        }
        e.0 = 0;
    }
    false
}

/// Every invertible `n × n` matrix over `f`, in odometer order.
pub fn enumerate_gl(f: &Arc<Field>, n: usize) -> Result<impl Iterator<Item = SquareMatrix> + '_> {
    check_gl_cap(f, n)?;
    let q = f.order();
    let mut state = Some(vec![Elem::ZERO; n * n]);
    let all = std::iter::from_fn(move || {
        let cur = state.take()?;
        let mut next = cur.clone();
        if advance(&mut next, q) {
            state = Some(next);
        }
        Some(cur)
    });
    Ok(all.filter_map(move |entries| {
        det_and_inverse_trace(f, n, &entries)
            .map(|_| SquareMatrix::new(f, n, entries).expect("entries in range"))
    }))
}

/// Both `GL(n,q)` histograms from a single enumeration pass.
#[derive(Clone, Debug)]
pub struct GlHistograms {
    pub det_trace: DetTraceHistogram,
    pub trace_inv: TraceInvHistogram,
}

type Tally = HashMap<(u32, u32), u64>;

/// Fills the `(det, tr)` and `(tr, tr g^{-1})` histograms of `GL(n,q)`.
///
/// The index space is split by first row across worker threads; partial
/// tallies are merged by pointwise addition.
pub fn gl_histograms(f: &Arc<Field>, n: usize) -> Result<GlHistograms> {
    check_gl_cap(f, n)?;
    let q = f.order();
    let first_rows = (q as u64).pow(n as u32);
    let (det_trace, trace_inv) = (0..first_rows)
        .into_par_iter()
        .map(|r0| {
            let mut dt = Tally::new();
            let mut ti = Tally::new();
            let mut entries = vec![Elem::ZERO; n * n];
            let mut idx = r0;
            for e in entries[..n].iter_mut() {
                *e = Elem((idx % q as u64) as u32);
                idx /= q as u64;
            }
            loop {
                if let Some((det, tr_inv)) = det_and_inverse_trace(f, n, &entries) {
                    let tr = (0..n).fold(Elem::ZERO, |acc, i| f.add(acc, entries[i * n + i]));
                    *dt.entry((det.0, tr.0)).or_insert(0) += 1;
                    *ti.entry((tr.0, tr_inv.0)).or_insert(0) += 1;
                }
                if !advance(&mut entries[n..], q) {
                    break;
                }
            }
            (dt, ti)
        })
        .reduce(
            || (Tally::new(), Tally::new()),
            |a, b| (merge_tallies(a.0, b.0), merge_tallies(a.1, b.1)),
        );
    Ok(GlHistograms {
        det_trace: PairHistogram::from_tally(f, n, det_trace),
        trace_inv: PairHistogram::from_tally(f, n, trace_inv),
    })
}

fn check_char_field(f: &Arc<Field>, other: &Arc<Field>) -> Result<()> {
    if f == other {
        Ok(())
    } else {
        Err(Error::MixedFields)
    }
}

impl GlHistograms {
    pub fn compute(f: &Arc<Field>, n: usize) -> Result<Self> {
        gl_histograms(f, n)
    }

    pub fn field(&self) -> &Arc<Field> {
        self.det_trace.field()
    }

    pub fn dim(&self) -> usize {
        self.det_trace.dim()
    }

    pub fn order(&self) -> BigUint {
        self.det_trace.total()
    }

    /// `Σ_{g ∈ GL(n,q)} χ(det g) λ(tr g)`.
    pub fn char_sum(&self, chi: &MultChar, lambda: &AddChar) -> Result<CycNum> {
        det_trace_char_sum(&self.det_trace, chi, lambda)
    }

    /// `Σ_{det g = x} λ(tr g)`.
    pub fn det_fiber_sum(&self, x: Elem, lambda: &AddChar) -> Result<CycNum> {
        check_char_field(self.field(), lambda.field())?;
        if x.is_zero() {
            return Err(Error::ZeroArgument("x"));
        }
        let mut acc = RootSum::new(self.field().ambient_order());
        for (det, tr, c) in self.det_trace.signed_counts() {
            if det == x {
                acc.add(lambda.ambient_exponent(tr), c);
            }
        }
        Ok(acc.to_cyc())
    }

    /// `Σ_{g ∈ GL(n,q)} λ(x tr g + y tr g^{-1})`.
    pub fn kloosterman_sum(&self, lambda: &AddChar, x: Elem, y: Elem) -> Result<CycNum> {
        check_char_field(self.field(), lambda.field())?;
        if x.is_zero() {
            return Err(Error::ZeroArgument("x"));
        }
        if y.is_zero() {
            return Err(Error::ZeroArgument("y"));
        }
        let f = self.field();
        let mut acc = RootSum::new(f.ambient_order());
        for (t1, t2, c) in self.trace_inv.signed_counts() {
            acc.add(lambda.ambient_exponent(f.add(f.mul(x, t1), f.mul(y, t2))), c);
        }
        Ok(acc.to_cyc())
    }
}

/// `Σ count · χ(det) λ(tr)` over a `(det, tr)` histogram.
pub(crate) fn det_trace_char_sum(
    h: &DetTraceHistogram,
    chi: &MultChar,
    lambda: &AddChar,
) -> Result<CycNum> {
    check_char_field(h.field(), chi.field())?;
    check_char_field(h.field(), lambda.field())?;
    let mut acc = RootSum::new(h.field().ambient_order());
    for (det, tr, c) in h.signed_counts() {
        let e = chi.ambient_exponent(det).expect("histogram keys have det != 0");
        acc.add(e + lambda.ambient_exponent(tr), c);
    }
    Ok(acc.to_cyc())
}
