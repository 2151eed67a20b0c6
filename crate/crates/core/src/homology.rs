//! Integral homology of chain complexes through the Smith normal form.
//!
//! Matrices are dense, row-major, over `BigInt`. A boundary `d_k: C_k -> C_{k-1}`
//! is stored with `dim C_{k-1}` rows and `dim C_k` columns.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn zeros(r: usize, c: usize) -> IntMatrix {
    vec![vec![BigInt::zero(); c]; r]
}

fn ncols(m: &[Vec<BigInt>]) -> usize {
    m.first().map_or(0, |r| r.len())
}

pub fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    let (n, k, m) = (a.len(), b.len(), ncols(b));
    let mut out = zeros(n, m);
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

pub fn is_zero_matrix(m: &[Vec<BigInt>]) -> bool {
    m.iter().all(|r| r.iter().all(Zero::is_zero))
}

/// `U * m * V = S` with `U`, `V` unimodular and `S` diagonal, `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.len().min(ncols(&self.s)))
            .map(|i| self.s[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    // row_dst -= q * row_src
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn col_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let t = q * &row[src];
            row[dst] -= t;
        }
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith normal form with smallest-absolute-value pivoting.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> Snf {
    let rows = m.len();
    let cols = ncols(m);
    let mut a: IntMatrix = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, a, v);
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    finish(u, a, v)
}

fn finish(u: IntMatrix, s: IntMatrix, v: IntMatrix) -> Snf {
    Snf { u, s, v }
}

pub fn rank(m: &[Vec<BigInt>]) -> usize {
    if m.is_empty() || ncols(m) == 0 {
        return 0;
    }
    smith_normal_form(m).rank()
}

/// A finitely generated abelian group `Z^r + Z/t_1 + ... + Z/t_k` with
/// `t_1 | t_2 | ... | t_k`, all `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(r: usize) -> Self {
        HomologyGroup { free_rank: r, torsion: Vec::new() }
    }

    /// `Z^free` modulo a subgroup with the given elementary divisors
    /// (units and zeros allowed; zeros are ignored).
    pub fn from_divisors(free: usize, divisors: impl IntoIterator<Item = BigInt>) -> Self {
        let mut elementary: Vec<BigInt> = Vec::new();
        for d in divisors {
            let d = d.abs();
            if d.is_zero() || d.is_one() {
                continue;
            }
            elementary.extend(prime_power_parts(&d));
        }
        HomologyGroup { free_rank: free, torsion: invariant_from_elementary(elementary) }
    }

    pub fn cyclic(n: i64) -> Self {
        if n == 0 {
            Self::free(1)
        } else {
            Self::from_divisors(0, [BigInt::from(n)])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &HomologyGroup) -> HomologyGroup {
        Self::from_divisors(self.free_rank + other.free_rank, self.torsion.iter().chain(&other.torsion).cloned())
    }

    /// `(Z/2)^k` style groups with small torsion given as integers.
    pub fn torsion_i64(&self) -> Vec<i64> {
        self.torsion.iter().map(|t| i64::try_from(t).unwrap_or(i64::MAX)).collect()
    }
}

fn prime_power_parts(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            let mut q = BigInt::one();
            while n.is_multiple_of(&p) {
                n /= &p;
                q *= &p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

fn invariant_from_elementary(mut parts: Vec<BigInt>) -> Vec<BigInt> {
    // group prime powers by prime, largest first; combine column-wise
    parts.sort();
    let mut by_prime: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    for q in parts {
        let p = smallest_prime_factor(&q);
        match by_prime.iter_mut().find(|(r, _)| *r == p) {
            Some((_, v)) => v.push(q),
            None => by_prime.push((p, vec![q])),
        }
    }
    let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut out = vec![BigInt::one(); len];
    for (_, mut v) in by_prime {
        v.sort_by(|a, b| b.cmp(a));
        for (i, q) in v.into_iter().enumerate() {
            out[len - 1 - i] *= q;
        }
    }
    out
}

fn smallest_prime_factor(n: &BigInt) -> BigInt {
    let mut p = BigInt::from(2);
    while &p * &p <= *n {
        if n.is_multiple_of(&p) {
            return p;
        }
        p += 1;
    }
    n.clone()
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let k = self.torsion[i..].iter().take_while(|x| *x == t).count();
            parts.push(if k == 1 { format!("Z/{t}") } else { format!("(Z/{t})^{k}") });
            i += k;
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// A bounded chain complex `C_lowest <- C_{lowest+1} <- ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    lowest: i64,
    dims: Vec<usize>,
    /// `boundaries[i]` is `d: C_{lowest+i+1} -> C_{lowest+i}`.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Build from chain-group ranks and the boundaries between consecutive
    /// groups, checking shapes and `d . d = 0`.
    pub fn new(lowest: i64, dims: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(Error::Shape(format!("{} groups need {} boundaries", dims.len(), dims.len().saturating_sub(1))));
        }
        for (i, b) in boundaries.iter().enumerate() {
            let ok = b.len() == dims[i] && b.iter().all(|r| r.len() == dims[i + 1]);
            if !ok {
                return Err(Error::Shape(format!("boundary out of degree {} has the wrong shape", lowest + i as i64 + 1)));
            }
        }
        for i in 1..boundaries.len() {
            if !is_zero_matrix(&matmul(&boundaries[i - 1], &boundaries[i])) {
                return Err(Error::BoundarySquareNonzero { degree: (lowest + i as i64 + 1) as usize });
            }
        }
        Ok(ChainComplex { lowest, dims, boundaries })
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    pub fn highest(&self) -> i64 {
        self.lowest + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, k: i64) -> usize {
        if k < self.lowest || k > self.highest() {
            return 0;
        }
        self.dims[(k - self.lowest) as usize]
    }

    /// `d_k: C_k -> C_{k-1}`, if both groups are in range.
    pub fn boundary(&self, k: i64) -> Option<&IntMatrix> {
        if k <= self.lowest || k > self.highest() {
            return None;
        }
        Some(&self.boundaries[(k - self.lowest - 1) as usize])
    }

    /// `H_k = ker d_k / im d_{k+1}`.
    pub fn homology(&self, k: i64) -> HomologyGroup {
        let n = self.dim(k);
        let out_rank = self.boundary(k).map_or(0, |b| rank(b));
        let (in_rank, factors) = match self.boundary(k + 1) {
            Some(b) if n > 0 && self.dim(k + 1) > 0 => {
                let f = smith_normal_form(b).invariant_factors();
                (f.len(), f)
            }
            _ => (0, Vec::new()),
        };
        HomologyGroup::from_divisors(n - out_rank - in_rank, factors)
    }
}

/// A complex of finitely presented groups `C_k = Z^{g_k} / im R_k`, with
/// boundaries given by integer lifts `Z^{g_k} -> Z^{g_{k-1}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedComplex {
    pub lowest: i64,
    pub generators: Vec<usize>,
    /// Relation matrix of each group: `g_k` rows, one column per relation.
    pub relations: Vec<IntMatrix>,
    pub boundaries: Vec<IntMatrix>,
}

fn hcat(a: &[Vec<BigInt>], b: &[Vec<BigInt>], rows: usize) -> IntMatrix {
    (0..rows)
        .map(|i| {
            let mut r = a.get(i).cloned().unwrap_or_default();
            r.extend(b.get(i).cloned().unwrap_or_default());
            r
        })
        .collect()
}

fn columns(m: &[Vec<BigInt>], rows: usize) -> Vec<Vec<BigInt>> {
    let c = ncols(m);
    (0..c).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect()
}

/// Integer kernel basis of `m` (as column vectors of length `cols`).
pub fn kernel_basis(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    if m.is_empty() || cols == 0 {
        return identity(cols);
    }
    let snf = smith_normal_form(m);
    let r = snf.rank();
    (r..cols).map(|j| (0..cols).map(|i| snf.v[i][j].clone()).collect()).collect()
}

/// The quotient of the lattice generated by `top` by the sublattice
/// generated by `bottom`, which must lie inside it.
pub fn subquotient(top: &[Vec<BigInt>], bottom: &[Vec<BigInt>], len: usize) -> Result<HomologyGroup> {
    if top.is_empty() {
        return Ok(HomologyGroup::zero());
    }
    // rows = coordinates, columns = generators
    let t: IntMatrix = (0..len).map(|i| top.iter().map(|g| g[i].clone()).collect()).collect();
    let snf = smith_normal_form(&t);
    let r = snf.rank();
    // t V = U^-1 S: the first r columns of t V form a basis W, with U W = S[:, :r]
    let mut coords: IntMatrix = zeros(r, bottom.len());
    for (j, b) in bottom.iter().enumerate() {
        let ub: Vec<BigInt> = snf.u.iter().map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum()).collect();
        for i in 0..len {
            let (q, rem) = if i < r { ub[i].div_rem(&snf.s[i][i]) } else { (BigInt::zero(), ub[i].clone()) };
            if !rem.is_zero() {
                return Err(Error::Invalid("subgroup not contained in the ambient lattice".into()));
            }
            if i < r {
                coords[i][j] = q;
            }
        }
    }
    if bottom.is_empty() || r == 0 {
        return Ok(HomologyGroup::free(r));
    }
    let f = smith_normal_form(&coords).invariant_factors();
    Ok(HomologyGroup::from_divisors(r - f.len(), f))
}

impl PresentedComplex {
    pub fn highest(&self) -> i64 {
        self.lowest + self.generators.len() as i64 - 1
    }

    fn index(&self, k: i64) -> Option<usize> {
        if k < self.lowest || k > self.highest() {
            None
        } else {
            Some((k - self.lowest) as usize)
        }
    }

    pub fn homology(&self, k: i64) -> Result<HomologyGroup> {
        let Some(i) = self.index(k) else {
            return Ok(HomologyGroup::zero());
        };
        let g = self.generators[i];
        if g == 0 {
            return Ok(HomologyGroup::zero());
        }
        // cycles: x with d x in im R_{k-1}
        let cycles: Vec<Vec<BigInt>> = match self.index(k - 1) {
            Some(j) if self.generators[j] > 0 => {
                let gl = self.generators[j];
                let d = &self.boundaries[j];
                let neg_rel: IntMatrix =
                    self.relations[j].iter().map(|r| r.iter().map(|x| -x).collect()).collect();
                let stacked = hcat(d, &neg_rel, gl);
                let width = g + ncols(&self.relations[j]);
                kernel_basis(&stacked, width).into_iter().map(|v| v[..g].to_vec()).collect()
            }
            _ => identity(g),
        };
        let mut bounds: Vec<Vec<BigInt>> = columns(&self.relations[i], g);
        if let Some(j) = self.index(k + 1) {
            if self.generators[j] > 0 {
                bounds.extend(columns(&self.boundaries[i], g));
            }
        }
        subquotient(&cycles, &bounds, g)
    }
}
