//! Kauffman bracket by plain state enumeration.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::pd::PdCode;
use crate::algebra::{HalfLaurent, Laurent};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: usize = 24;

/// Polynomial in `A`, keyed by the exponent of `A`.
pub type Bracket = Laurent<BigInt>;

/// States per parallel work item.
const CHUNK: u64 = 1 << 12;

#[derive(Clone, Debug)]
pub struct BracketResult {
    pub bracket: Bracket,
    /// Number of smoothing states summed, always `2^c`.
    pub states: u64,
}

/// `<D>` with `<O> = 1`, `delta = -A^2 - A^-2`.
///
/// Smoothing 0 at a crossing `(a, b, c, d)` joins `a-b` and `c-d`, and is
/// the one weighted by `A`.
pub fn kauffman_bracket(pd: &PdCode, budget: usize) -> Result<BracketResult> {
    let c = pd.len();
    if c > budget {
        return Err(Error::CrossingBudget { crossings: c, budget });
    }
    if c == 0 {
        return Ok(BracketResult {
            bracket: Bracket::one(),
            states: 1,
        });
    }
    let mut labels: Vec<u32> = pd.crossings().iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let idx = |l: u32| labels.binary_search(&l).expect("label present");
    let xs: Vec<[usize; 4]> = pd.crossings().iter().map(|x| x.map(idx)).collect();
    let arcs = labels.len();

    let total: u64 = 1 << c;
    let counted = AtomicU64::new(0);
    let chunks = total.div_ceil(CHUNK);
    // (A exponent, loops) -> number of states
    let tally = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut local: BTreeMap<(i64, usize), u64> = BTreeMap::new();
            let mut parent = vec![0usize; arcs];
            let lo = k * CHUNK;
            let hi = (lo + CHUNK).min(total);
            for state in lo..hi {
                for (i, p) in parent.iter_mut().enumerate() {
                    *p = i;
                }
                let mut na = 0i64;
                for (ci, &[a, b, cc, d]) in xs.iter().enumerate() {
                    if state >> ci & 1 == 0 {
                        na += 1;
                        union(&mut parent, a, b);
                        union(&mut parent, cc, d);
                    } else {
                        union(&mut parent, a, d);
                        union(&mut parent, b, cc);
                    }
                }
                let loops = (0..arcs).filter(|&i| find(&mut parent, i) == i).count();
                *local.entry((2 * na - c as i64, loops)).or_default() += 1;
            }
            counted.fetch_add(hi - lo, Ordering::Relaxed);
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });

    let delta = Bracket::from_terms([(2, BigInt::from(-1)), (-2, BigInt::from(-1))]);
    let max_loops = tally.keys().map(|k| k.1).max().unwrap_or(1);
    let mut delta_pow = vec![Bracket::one()];
    for i in 1..max_loops {
        delta_pow.push(delta_pow[i - 1].mul(&delta));
    }
    let mut bracket = Bracket::zero();
    for (&(e, loops), &m) in &tally {
        bracket = bracket.add(&delta_pow[loops - 1].shift(e).scale(&BigInt::from(m)));
    }
    Ok(BracketResult {
        bracket,
        states: counted.into_inner(),
    })
}

fn find(parent: &mut [usize], mut u: usize) -> usize {
    while parent[u] != u {
        parent[u] = parent[parent[u]];
        u = parent[u];
    }
    u
}

fn union(parent: &mut [usize], u: usize, v: usize) {
    let (ru, rv) = (find(parent, u), find(parent, v));
    parent[ru] = rv;
}

/// `V = (-A^3)^(-w) <D>` at `A = t^(-1/4)`.
pub fn jones_from_pd(pd: &PdCode, budget: usize) -> Result<HalfLaurent> {
    let br = kauffman_bracket(pd, budget)?.bracket;
    let w = pd.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let normalized = br.shift(-3 * w).scale(&BigInt::from(sign));
    let mut terms = Vec::new();
    for (k, v) in normalized.terms() {
        if k % 2 != 0 {
            return Err(Error::Internal(format!("odd power A^{k} after normalization")));
        }
        terms.push((-k / 2, v.clone()));
    }
    Ok(HalfLaurent::from_terms(terms))
}
