//! Finite posets, simplicial complexes, order complexes, and poset homology
//! with coefficients in a functor.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::homology::{self, ChainComplex, HomologyGroup, IntMatrix, PresentedComplex};

/// A finite strict partial order on `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    less: Vec<Vec<bool>>,
}

impl Poset {
    /// The transitive closure of `relations` (`(a, b)` meaning `a < b`).
    pub fn new(len: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut less = vec![vec![false; len]; len];
        for &(a, b) in relations {
            if a >= len || b >= len {
                return Err(Error::OutOfRange(format!("relation ({a}, {b}) on {len} elements")));
            }
            less[a][b] = true;
        }
        for k in 0..len {
            for i in 0..len {
                if less[i][k] {
                    for j in 0..len {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if (0..len).any(|i| less[i][i]) {
            return Err(Error::Invalid("relation has a cycle".into()));
        }
        Ok(Poset { less })
    }

    pub fn antichain(len: usize) -> Self {
        Poset { less: vec![vec![false; len]; len] }
    }

    /// `0 < 1 < ... < len - 1`.
    pub fn chain(len: usize) -> Self {
        let rel: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
        Poset::new(len, &rel).expect("a chain is acyclic")
    }

    pub fn len(&self) -> usize {
        self.less.len()
    }

    pub fn is_empty(&self) -> bool {
        self.less.is_empty()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    /// Number of strict relations `a < b`.
    pub fn relation_count(&self) -> usize {
        self.less.iter().map(|r| r.iter().filter(|&&x| x).count()).sum()
    }

    /// `ht(y) = dim Y_{<=y}`: one less than the longest chain ending at `y`.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&y| (0..n).filter(|&x| self.less[x][y]).count());
        let mut h = vec![0usize; n];
        for &y in &order {
            h[y] = (0..n).filter(|&x| self.less[x][y]).map(|x| h[x] + 1).max().unwrap_or(0);
        }
        h
    }

    /// The subposet on `elems`, in the given order.
    pub fn restrict(&self, elems: &[usize]) -> Poset {
        let less = elems.iter().map(|&a| elems.iter().map(|&b| self.less[a][b]).collect()).collect();
        Poset { less }
    }

    /// `Y_{>y}` and the indices of its elements in `self`.
    pub fn above(&self, y: usize) -> (Poset, Vec<usize>) {
        let elems: Vec<usize> = (0..self.len()).filter(|&z| self.less[y][z]).collect();
        (self.restrict(&elems), elems)
    }

    /// All chains `y_0 < ... < y_p`, grouped by `p`.
    pub fn chains(&self) -> Vec<Vec<Vec<usize>>> {
        let n = self.len();
        let mut by_len: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut layer: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        while !layer.is_empty() {
            let next: Vec<Vec<usize>> = layer
                .iter()
                .flat_map(|c| {
                    let last = *c.last().expect("nonempty chain");
                    (0..n).filter(move |&z| self.less[last][z]).map(move |z| {
                        let mut e = c.clone();
                        e.push(z);
                        e
                    })
                })
                .collect();
            by_len.push(layer);
            layer = next;
        }
        by_len
    }
}

/// A finite simplicial complex. Each simplex is an ordered vertex tuple;
/// faces are obtained by deleting entries, so the order fixes orientations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Downward closure of the given simplices, each sorted by vertex.
    pub fn from_simplices(vertices: usize, simplices: &[Vec<usize>]) -> Result<Self> {
        let mut layers: BTreeMap<usize, std::collections::BTreeSet<Vec<usize>>> = BTreeMap::new();
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.iter().any(|&v| v >= vertices) {
                return Err(Error::OutOfRange("simplex vertex".into()));
            }
            if s.is_empty() {
                continue;
            }
            // all nonempty subsets
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let f: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                layers.entry(f.len() - 1).or_default().insert(f);
            }
        }
        let top = layers.keys().next_back().map_or(0, |&k| k + 1);
        let simplices = (0..top).map(|k| layers.remove(&k).unwrap_or_default().into_iter().collect()).collect();
        Ok(Self::from_layers(vertices, simplices))
    }

    fn from_layers(vertices: usize, simplices: Vec<Vec<Vec<usize>>>) -> Self {
        let index = simplices
            .iter()
            .map(|layer| layer.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { vertices, simplices, index }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Highest simplex dimension, or `-1` for the empty complex.
    pub fn dim(&self) -> i64 {
        self.simplices.len() as i64 - 1
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn position(&self, simplex: &[usize]) -> Option<usize> {
        let k = simplex.len().checked_sub(1)?;
        self.index.get(k)?.get(simplex).copied()
    }

    /// The subcomplex of simplices with at most `k + 1` vertices.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        Self::from_layers(self.vertices, self.simplices.iter().take(k + 1).cloned().collect())
    }

    /// `d_k: C_k -> C_{k-1}`; for `k = 0` and `reduced`, the augmentation.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        let cols = self.simplices(k);
        if k == 0 {
            return vec![vec![BigInt::one(); cols.len()]];
        }
        let mut m = homology::zeros(self.count(k - 1), cols.len());
        for (j, s) in cols.iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let row = self.index[k - 1][&f];
                m[row][j] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    }

    pub fn chain_complex(&self, reduced: bool) -> ChainComplex {
        let top = self.simplices.len();
        if top == 0 {
            let (lowest, dim) = if reduced { (-1, 1) } else { (0, 0) };
            return ChainComplex::new(lowest, vec![dim], Vec::new()).expect("empty complex");
        }
        let mut dims: Vec<usize> = (0..top).map(|k| self.count(k)).collect();
        let mut bounds: Vec<IntMatrix> = (1..top).map(|k| self.boundary(k)).collect();
        let lowest = if reduced {
            dims.insert(0, 1);
            bounds.insert(0, self.boundary(0));
            -1
        } else {
            0
        };
        ChainComplex::new(lowest, dims, bounds).expect("simplicial boundaries compose to zero")
    }

    pub fn homology(&self, k: i64) -> HomologyGroup {
        self.chain_complex(false).homology(k)
    }

    pub fn reduced_homology(&self, k: i64) -> HomologyGroup {
        self.chain_complex(true).homology(k)
    }

    /// Reduced homology with coefficients in `Z^g / im rel`.
    pub fn reduced_homology_with(&self, group: &Presentation, k: i64) -> Result<HomologyGroup> {
        let top = self.simplices.len();
        let g = group.generators;
        let mut generators = vec![g];
        let mut relations = vec![group.relations.clone()];
        let mut boundaries = Vec::new();
        for p in 0..top {
            generators.push(self.count(p) * g);
            relations.push(block_diagonal(&vec![&group.relations; self.count(p)], g));
            boundaries.push(kron_identity(&self.boundary(p), g));
        }
        PresentedComplex { lowest: -1, generators, relations, boundaries }.homology(k)
    }

    pub fn is_connected(&self) -> bool {
        self.count(0) > 0 && self.reduced_homology(0).is_zero()
    }
}

pub fn order_complex(p: &Poset) -> SimplicialComplex {
    SimplicialComplex::from_layers(p.len(), p.chains())
}

pub fn reduced_homology(c: &SimplicialComplex, k: i64) -> HomologyGroup {
    c.reduced_homology(k)
}

/// A finitely presented abelian group `Z^generators / (column span of relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    /// `generators` rows; one column per relation.
    pub relations: IntMatrix,
}

impl Presentation {
    pub fn free(r: usize) -> Self {
        Presentation { generators: r, relations: vec![Vec::new(); r] }
    }

    /// `Z^r + Z/t` (no torsion summand when `t` is 0 or 1).
    pub fn free_plus_cyclic(r: usize, t: u32) -> Self {
        if t <= 1 {
            return Self::free(r);
        }
        let mut rel = homology::zeros(r + 1, 1);
        rel[r][0] = BigInt::from(t);
        Presentation { generators: r + 1, relations: rel }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn group(&self) -> HomologyGroup {
        let snf = homology::smith_normal_form(&self.relations);
        let f = snf.invariant_factors();
        HomologyGroup::from_divisors(self.generators - f.len(), f)
    }

    /// Whether the integer vector `x` lies in the relation lattice.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        if self.relations.first().is_none_or(|r| r.is_empty()) {
            return x.iter().all(Zero::is_zero);
        }
        let snf = homology::smith_normal_form(&self.relations);
        let ux: Vec<BigInt> = snf.u.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect();
        let f = snf.invariant_factors();
        ux.iter().enumerate().all(|(i, v)| if i < f.len() { v.is_multiple_of(&f[i]) } else { v.is_zero() })
    }
}

fn block_diagonal(blocks: &[&IntMatrix], rows_each: usize) -> IntMatrix {
    let total_cols: usize = blocks.iter().map(|b| b.first().map_or(0, |r| r.len())).sum();
    let mut out = homology::zeros(rows_each * blocks.len(), total_cols);
    let mut c0 = 0;
    for (bi, b) in blocks.iter().enumerate() {
        let w = b.first().map_or(0, |r| r.len());
        for i in 0..rows_each {
            for j in 0..w {
                out[bi * rows_each + i][c0 + j] = b[i][j].clone();
            }
        }
        c0 += w;
    }
    out
}

fn kron_identity(m: &IntMatrix, g: usize) -> IntMatrix {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = homology::zeros(rows * g, cols * g);
    for i in 0..rows {
        for j in 0..cols {
            if m[i][j].is_zero() {
                continue;
            }
            for t in 0..g {
                out[i * g + t][j * g + t] = m[i][j].clone();
            }
        }
    }
    out
}

/// A functor from a poset to finitely presented abelian groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientFunctor {
    pub groups: Vec<Presentation>,
    /// `maps[(y, z)]` for `y < z`: a lift `Z^{g_y} -> Z^{g_z}` (`g_z` rows).
    pub maps: BTreeMap<(usize, usize), IntMatrix>,
}

impl CoefficientFunctor {
    /// The constant functor `Z` with identity maps.
    pub fn constant(p: &Poset) -> Self {
        let mut maps = BTreeMap::new();
        for y in 0..p.len() {
            for z in 0..p.len() {
                if p.less(y, z) {
                    maps.insert((y, z), homology::identity(1));
                }
            }
        }
        CoefficientFunctor { groups: vec![Presentation::free(1); p.len()], maps }
    }

    /// Groups placed on the given elements, zero elsewhere, with all maps
    /// zero. Functorial whenever no two supported elements are comparable.
    pub fn supported(p: &Poset, groups: &BTreeMap<usize, Presentation>) -> Self {
        let gs: Vec<Presentation> = (0..p.len()).map(|y| groups.get(&y).cloned().unwrap_or_else(Presentation::zero)).collect();
        let mut maps = BTreeMap::new();
        for y in 0..p.len() {
            for z in 0..p.len() {
                if p.less(y, z) {
                    maps.insert((y, z), homology::zeros(gs[z].generators, gs[y].generators));
                }
            }
        }
        CoefficientFunctor { groups: gs, maps }
    }

    pub fn zero(p: &Poset) -> Self {
        Self::supported(p, &BTreeMap::new())
    }

    fn map(&self, y: usize, z: usize) -> Result<&IntMatrix> {
        self.maps.get(&(y, z)).ok_or_else(|| Error::NotFunctorial(format!("no map for {y} < {z}")))
    }

    /// Maps must respect relations and compose along every `y < z < w`.
    pub fn check(&self, p: &Poset) -> Result<()> {
        if self.groups.len() != p.len() {
            return Err(Error::Shape("one group per poset element".into()));
        }
        let n = p.len();
        for y in 0..n {
            for z in 0..n {
                if !p.less(y, z) {
                    continue;
                }
                let m = self.map(y, z)?;
                let shape_ok = m.len() == self.groups[z].generators
                    && m.iter().all(|r| r.len() == self.groups[y].generators);
                if !shape_ok {
                    return Err(Error::NotFunctorial(format!("map {y} -> {z} has the wrong shape")));
                }
                let image = homology::matmul(m, &self.groups[y].relations);
                for col in columns(&image, self.groups[z].generators) {
                    if !self.groups[z].contains(&col) {
                        return Err(Error::NotFunctorial(format!("map {y} -> {z} does not respect relations")));
                    }
                }
                for w in 0..n {
                    if !p.less(z, w) {
                        continue;
                    }
                    let comp = homology::matmul(self.map(z, w)?, m);
                    let direct = self.map(y, w)?;
                    let gw = self.groups[w].generators;
                    for j in 0..self.groups[y].generators {
                        let diff: Vec<BigInt> = (0..gw).map(|i| &comp[i][j] - &direct[i][j]).collect();
                        if !self.groups[w].contains(&diff) {
                            return Err(Error::NotFunctorial(format!("{y} < {z} < {w} does not commute")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn columns(m: &IntMatrix, rows: usize) -> Vec<Vec<BigInt>> {
    let c = m.first().map_or(0, |r| r.len());
    (0..c).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect()
}

/// `H_k(Y; F)` from the chains `C_p = ⊕_{y_0 < ... < y_p} F(y_0)`.
pub fn poset_homology_with_functor(p: &Poset, f: &CoefficientFunctor, k: i64) -> Result<HomologyGroup> {
    f.check(p)?;
    if k < 0 {
        return Ok(HomologyGroup::zero());
    }
    let chains = p.chains();
    let top = chains.len();
    // offsets of each chain's block in its degree
    let mut offsets: Vec<HashMap<Vec<usize>, usize>> = Vec::with_capacity(top);
    let mut generators = Vec::with_capacity(top);
    let mut relations = Vec::with_capacity(top);
    for layer in &chains {
        let mut off = HashMap::new();
        let mut total = 0;
        let mut blocks = Vec::new();
        for c in layer {
            off.insert(c.clone(), total);
            total += f.groups[c[0]].generators;
            blocks.push(&f.groups[c[0]].relations);
        }
        let width: usize = blocks.iter().map(|b| b.first().map_or(0, |r| r.len())).sum();
        let mut rel = homology::zeros(total, width);
        let mut c0 = 0;
        for (c, b) in layer.iter().zip(&blocks) {
            let r0 = off[c];
            let w = b.first().map_or(0, |r| r.len());
            for i in 0..f.groups[c[0]].generators {
                for j in 0..w {
                    rel[r0 + i][c0 + j] = b[i][j].clone();
                }
            }
            c0 += w;
        }
        offsets.push(off);
        generators.push(total);
        relations.push(rel);
    }
    let mut boundaries = Vec::new();
    for q in 1..top {
        let mut d = homology::zeros(generators[q - 1], generators[q]);
        for c in &chains[q] {
            let src = offsets[q][c];
            let gy = f.groups[c[0]].generators;
            for i in 0..c.len() {
                let mut face = c.clone();
                face.remove(i);
                let dst = offsets[q - 1][&face];
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                if i == 0 {
                    let m = f.map(c[0], c[1])?;
                    for (r, row) in m.iter().enumerate() {
                        for (s, x) in row.iter().enumerate() {
                            if !x.is_zero() {
                                d[dst + r][src + s] += &sign * x;
                            }
                        }
                    }
                } else {
                    for t in 0..gy {
                        d[dst + t][src + t] += &sign;
                    }
                }
            }
        }
        boundaries.push(d);
    }
    if top == 0 {
        return Ok(HomologyGroup::zero());
    }
    PresentedComplex { lowest: 0, generators, relations, boundaries }.homology(k)
}
