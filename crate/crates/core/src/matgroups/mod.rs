//! Exhaustive enumeration of `GL(n,q)` and `U(n,q)`.
//!
//! Every group-side character sum factors through the joint distribution of
//! a few matrix invariants. One enumeration pass per `(n, q)` fills a
//! histogram of `(det g, tr g)` (and, for `GL`, of `(tr g, tr g^{-1})`);
//! character sweeps then only touch the histogram keys.

mod gl;
mod matrix;
mod unitary;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::ffield::{Elem, Field};

pub use gl::{enumerate_gl, gl_histograms, gl_order, GlHistograms, GL_ENUMERATION_CAP};
pub use matrix::SquareMatrix;
pub use unitary::{
    enumerate_u, enumerate_u_filter, enumerate_unitary_with_form, u_char_sum, u_histogram,
    u_order, unitary_field, U_ENUMERATION_CAP,
};

/// Joint counts of a pair of field-valued invariants over a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairHistogram {
    field: Arc<Field>,
    n: usize,
    counts: BTreeMap<(Elem, Elem), BigUint>,
}

/// Counts of `(det g, tr g)`.
pub type DetTraceHistogram = PairHistogram;
/// Counts of `(tr g, tr g^{-1})`.
pub type TraceInvHistogram = PairHistogram;

impl PairHistogram {
    pub(crate) fn from_tally(field: &Arc<Field>, n: usize, tally: HashMap<(u32, u32), u64>) -> Self {
        let counts = tally
            .into_iter()
            .map(|((a, b), c)| ((Elem(a), Elem(b)), BigUint::from(c)))
            .collect();
        Self { field: Arc::clone(field), n, counts }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &BTreeMap<(Elem, Elem), BigUint> {
        &self.counts
    }

    pub fn get(&self, a: Elem, b: Elem) -> BigUint {
        self.counts.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Pointwise sum, for merging partial histograms.
    pub fn merge(&mut self, other: &Self) {
        for (k, v) in &other.counts {
            *self.counts.entry(*k).or_insert_with(BigUint::zero) += v;
        }
    }

    /// CSV export with header `det,tr,count` (or the caller's column names).
    pub fn to_csv(&self, first: &str, second: &str) -> String {
        let mut out = format!("{first},{second},count\n");
        for ((a, b), c) in &self.counts {
            out.push_str(&format!("{},{},{}\n", self.field.format(*a), self.field.format(*b), c));
        }
        out
    }

    pub(crate) fn signed_counts(&self) -> impl Iterator<Item = (Elem, Elem, BigInt)> + '_ {
        self.counts.iter().map(|(&(a, b), c)| (a, b, BigInt::from(c.clone())))
    }
}

pub(crate) fn merge_tallies(
    mut a: HashMap<(u32, u32), u64>,
    b: HashMap<(u32, u32), u64>,
) -> HashMap<(u32, u32), u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}
