//! The map splitting an apartment class of rank `2n` into tensor products
//! of rank-2 apartment classes.

use std::collections::BTreeMap;

use serde::Serialize;

use super::tits::signed_permutations;
use crate::error::{Error, Result};

/// A formal integer combination of tensors `[a_1, b_1] ⊗ ... ⊗ [a_n, b_n]`.
/// Each factor is a rank-2 apartment class, stored with `a_i < b_i`
/// (using `[b, a] = -[a, b]`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaSum<T: Ord> {
    pub terms: BTreeMap<Vec<(T, T)>, i64>,
}

impl<T: Ord + Clone> DeltaSum<T> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn negated(&self) -> Self {
        DeltaSum { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }
}

pub const MAX_DELTA_LINES: usize = 6;

/// Sum over permutations `s` with `s(2i-1) < s(2i)` of
/// `sgn(s) [L_s(1), L_s(2)] ⊗ ... ⊗ [L_s(2n-1), L_s(2n)]`.
pub fn delta_map<T: Ord + Clone>(lines: &[T]) -> Result<DeltaSum<T>> {
    let m = lines.len();
    if m % 2 == 1 {
        return Err(Error::OddLineCount(m));
    }
    if m == 0 || m > MAX_DELTA_LINES {
        return Err(Error::OutOfRange(format!("delta map needs 2 to {MAX_DELTA_LINES} lines, got {m}")));
    }
    let mut sorted: Vec<&T> = lines.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NotADecomposition);
    }
    let mut terms: BTreeMap<Vec<(T, T)>, i64> = BTreeMap::new();
    for (perm, sign) in signed_permutations(m) {
        if perm.chunks(2).any(|p| p[0] > p[1]) {
            continue;
        }
        let mut coeff = sign;
        let key: Vec<(T, T)> = perm
            .chunks(2)
            .map(|p| {
                let (a, b) = (&lines[p[0]], &lines[p[1]]);
                if a < b {
                    (a.clone(), b.clone())
                } else {
                    coeff = -coeff;
                    (b.clone(), a.clone())
                }
            })
            .collect();
        *terms.entry(key).or_insert(0) += coeff;
    }
    terms.retain(|_, v| *v != 0);
    Ok(DeltaSum { terms })
}
