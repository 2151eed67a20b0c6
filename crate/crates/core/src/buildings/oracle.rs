//! Randomized check of the single-support formula
//! `H_p(Y; F) = ⊕_{ht(y) = m} H~_{p-1}(Y_{>y}; F(y))`
//! for functors supported on one height.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poset::{order_complex, poset_homology_with_functor, CoefficientFunctor, Poset, Presentation};
use crate::error::Result;
use crate::homology::HomologyGroup;

/// A random poset on at most `max_len` elements: a random DAG on
/// `0..len` (edges go up in index) and its transitive closure.
pub fn random_poset(rng: &mut impl Rng, max_len: usize) -> Poset {
    let len = rng.gen_range(1..=max_len);
    let density = rng.gen_range(0.1..0.35);
    let mut rel = Vec::new();
    for a in 0..len {
        for b in a + 1..len {
            if rng.gen_bool(density) {
                rel.push((a, b));
            }
        }
    }
    Poset::new(len, &rel).expect("edges increase in index")
}

/// A functor supported on the elements of height `m`, each carrying
/// `Z^r + Z/t` with `r <= 2`.
pub fn random_supported_functor(rng: &mut impl Rng, p: &Poset, m: usize) -> CoefficientFunctor {
    let heights = p.heights();
    let mut groups = BTreeMap::new();
    for (y, &h) in heights.iter().enumerate() {
        if h == m {
            let r = rng.gen_range(0..=2);
            let t = [0, 0, 2, 3, 4, 6][rng.gen_range(0..6)];
            groups.insert(y, Presentation::free_plus_cyclic(r, t));
        }
    }
    CoefficientFunctor::supported(p, &groups)
}

/// Both sides of the formula in degree `k`.
pub fn single_support_sides(
    p: &Poset,
    f: &CoefficientFunctor,
    m: usize,
    k: i64,
) -> Result<(HomologyGroup, HomologyGroup)> {
    let direct = poset_homology_with_functor(p, f, k)?;
    let mut split = HomologyGroup::zero();
    for (y, &h) in p.heights().iter().enumerate() {
        if h != m {
            continue;
        }
        let (up, _) = p.above(y);
        let part = order_complex(&up).reduced_homology_with(&f.groups[y], k - 1)?;
        split = split.direct_sum(&part);
    }
    Ok((direct, split))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub trials: usize,
    pub agreements: usize,
    /// Trial indices where some degree disagreed.
    pub failures: Vec<usize>,
    /// (trial, degree) pairs where both sides were a nonzero group.
    pub nonzero_comparisons: usize,
}

impl LemmaReport {
    pub fn all_agree(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Run `trials` random instances with posets of at most 12 elements.
pub fn lemma_oracle(trials: usize, seed: u64) -> Result<LemmaReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut nonzero_comparisons = 0;
    for t in 0..trials {
        let p = random_poset(&mut rng, 12);
        let top = p.heights().into_iter().max().unwrap_or(0);
        let m = rng.gen_range(0..=top);
        let f = random_supported_functor(&mut rng, &p, m);
        let mut ok = true;
        for k in 0..=(top as i64 + 1) {
            let (a, b) = single_support_sides(&p, &f, m, k)?;
            ok &= a == b;
            nonzero_comparisons += usize::from(!a.is_zero() && !b.is_zero());
        }
        if !ok {
            failures.push(t);
        }
    }
    Ok(LemmaReport { trials, agreements: trials - failures.len(), failures, nonzero_comparisons })
}
