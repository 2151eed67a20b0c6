//! Tits buildings of `F_q^n`, apartment classes, and the map from frames
//! to the Steinberg module.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::Serialize;

use super::poset::{order_complex, Poset, SimplicialComplex};
use super::ring::{Elem, FiniteRing};
use crate::error::{Error, Result};
use crate::homology::{self, HomologyGroup};

pub type FVec = Vec<Elem>;

/// Row-reduced echelon form over a field; zero rows dropped.
pub fn rref(k: FiniteRing, rows: &[FVec]) -> Vec<FVec> {
    let mut m: Vec<FVec> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = k.inv(m[r][c]).expect("nonzero field element");
        for x in m[r].iter_mut() {
            *x = k.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..ncols {
                    let t = k.mul(f, m[r][j]);
                    m[i][j] = k.sub(m[i][j], t);
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

pub fn rank(k: FiniteRing, rows: &[FVec]) -> usize {
    rref(k, rows).len()
}

/// A subspace of `F_q^n`, identified by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subspace {
    rows: Vec<FVec>,
}

impl Subspace {
    pub fn span(k: FiniteRing, vectors: &[FVec]) -> Result<Self> {
        if !k.is_field() {
            return Err(Error::UnsupportedRing(format!("subspaces need a field, got {k}")));
        }
        Ok(Subspace { rows: rref(k, vectors) })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[FVec] {
        &self.rows
    }

    pub fn is_subspace_of(&self, k: FiniteRing, other: &Subspace) -> bool {
        let mut all = other.rows.clone();
        all.extend(self.rows.iter().cloned());
        rank(k, &all) == other.dim()
    }
}

/// Every `dim`-dimensional subspace of `F_q^n`, enumerated by echelon shape.
pub fn subspaces_of_dim(k: FiniteRing, n: usize, dim: usize) -> Vec<Subspace> {
    let q = k.size();
    let mut out = Vec::new();
    for pivots in combinations(n, dim) {
        // free slots: row i, column c > pivots[i], c not a pivot
        let free: Vec<(usize, usize)> = (0..dim)
            .flat_map(|i| ((pivots[i] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
            .collect();
        let total = (q as usize).pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows = vec![vec![0 as Elem; n]; dim];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            for &(i, c) in &free {
                rows[i][c] = (code % q as usize) as Elem;
                code /= q as usize;
            }
            out.push(Subspace { rows });
        }
    }
    out.sort();
    out
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Permutations of `0..n` with their signs.
pub(crate) fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if rest.is_empty() {
            out.push((cur.clone(), sign));
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            // moving the i-th remaining element to the front costs i transpositions
            go(rest, cur, if i % 2 == 0 { sign } else { -sign }, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), 1, &mut out);
    out
}

/// The poset of proper nonzero subspaces of `F_q^n`.
#[derive(Clone, Debug)]
pub struct TitsBuilding {
    pub field: FiniteRing,
    pub n: usize,
    pub subspaces: Vec<Subspace>,
    pub poset: Poset,
    index: HashMap<Subspace, usize>,
}

pub const TITS_Q: [u32; 4] = [2, 3, 4, 5];

pub fn tits_building(n: usize, q: u32) -> Result<TitsBuilding> {
    if !(2..=4).contains(&n) || !TITS_Q.contains(&q) {
        return Err(Error::OutOfRange(format!(
            "Tits buildings are limited to 2 <= n <= 4 and q in {{2, 3, 4, 5}}, got n = {n}, q = {q}"
        )));
    }
    let k = FiniteRing::field(q)?;
    let subspaces: Vec<Subspace> = (1..n).flat_map(|d| subspaces_of_dim(k, n, d)).collect();
    let mut rel = Vec::new();
    for (i, a) in subspaces.iter().enumerate() {
        for (j, b) in subspaces.iter().enumerate() {
            if a.dim() < b.dim() && a.is_subspace_of(k, b) {
                rel.push((i, j));
            }
        }
    }
    let poset = Poset::new(subspaces.len(), &rel)?;
    let index = subspaces.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    Ok(TitsBuilding { field: k, n, subspaces, poset, index })
}

impl TitsBuilding {
    pub fn position(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn order_complex(&self) -> SimplicialComplex {
        order_complex(&self.poset)
    }

    /// Rank of `St_n(F_q)`, the top reduced homology.
    pub fn steinberg_rank(&self) -> usize {
        self.order_complex().reduced_homology(self.n as i64 - 2).free_rank
    }

    /// Indices of the 1-dimensional subspaces.
    pub fn lines(&self) -> Vec<usize> {
        (0..self.subspaces.len()).filter(|&i| self.subspaces[i].dim() == 1).collect()
    }
}

/// An integral chain in degree `n - 2` of the building's order complex,
/// keyed by flags of subspace indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SteinbergElement {
    pub terms: BTreeMap<Vec<usize>, i64>,
}

impl SteinbergElement {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn negated(&self) -> Self {
        SteinbergElement { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }

    /// Coefficient vector over the `(n - 2)`-simplices of `c`.
    pub fn to_vector(&self, c: &SimplicialComplex, n: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); c.count(n - 2)];
        for (flag, &x) in &self.terms {
            let i = c.position(flag).expect("flag is a simplex of the building");
            v[i] += x;
        }
        v
    }

    /// Whether the reduced boundary vanishes.
    pub fn is_cycle(&self, b: &TitsBuilding) -> bool {
        let c = b.order_complex();
        let d = c.boundary(b.n - 2);
        let v = self.to_vector(&c, b.n);
        d.iter().all(|row| row.iter().zip(&v).map(|(a, x)| a * x).sum::<BigInt>() == BigInt::from(0))
    }
}

/// The apartment class of an ordered decomposition of `F_q^n` into lines:
/// the signed sum over permutations of the flags of partial sums.
pub fn apartment_class(b: &TitsBuilding, lines: &[FVec]) -> Result<SteinbergElement> {
    let k = b.field;
    let n = b.n;
    if lines.len() != n || lines.iter().any(|l| l.len() != n) || rank(k, lines) != n {
        return Err(Error::NotADecomposition);
    }
    let mut terms = BTreeMap::new();
    for (perm, sign) in signed_permutations(n) {
        let mut flag = Vec::with_capacity(n - 1);
        for i in 1..n {
            let vs: Vec<FVec> = perm[..i].iter().map(|&j| lines[j].clone()).collect();
            let s = Subspace::span(k, &vs)?;
            flag.push(b.position(&s).expect("proper subspace"));
        }
        *terms.entry(flag).or_insert(0) += sign;
    }
    terms.retain(|_, v| *v != 0);
    Ok(SteinbergElement { terms })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaReport {
    pub n: usize,
    pub q: u32,
    pub frames: usize,
    pub image_rank: usize,
    pub steinberg_rank: usize,
    /// `St_n / image`; zero exactly when the frames generate.
    pub cokernel: HomologyGroup,
}

/// Images of all (unordered) full frames of `F_q^n` under the frame map,
/// compared with the Steinberg module.
pub fn alpha_report(n: usize, q: u32) -> Result<AlphaReport> {
    let b = tits_building(n, q)?;
    let k = b.field;
    let reps: Vec<FVec> = b.lines().iter().map(|&i| b.subspaces[i].basis()[0].clone()).collect();
    let mut frames = Vec::new();
    for combo in combinations(reps.len(), n) {
        let vs: Vec<FVec> = combo.iter().map(|&i| reps[i].clone()).collect();
        if rank(k, &vs) == n {
            frames.push(vs);
        }
    }
    let c = b.order_complex();
    let images: Vec<Vec<BigInt>> = frames
        .iter()
        .map(|f| apartment_class(&b, f).map(|a| a.to_vector(&c, n)))
        .collect::<Result<_>>()?;
    let rows = c.count(n - 2);
    let m: Vec<Vec<BigInt>> = (0..rows).map(|i| images.iter().map(|v| v[i].clone()).collect()).collect();
    let image_rank = homology::rank(&m);
    let d = c.boundary(n - 2);
    let cycles = homology::kernel_basis(&d, rows);
    let cokernel = homology::subquotient(&cycles, &images, rows)?;
    Ok(AlphaReport { n, q, frames: frames.len(), image_rank, steinberg_rank: cycles.len(), cokernel })
}

pub fn alpha_map_image_rank(n: usize, q: u32) -> Result<usize> {
    Ok(alpha_report(n, q)?.image_rank)
}
