//! Exact facet and face enumeration for polyhedral cones, by the
//! incremental double-description method over the integers.
//!
//! Facet normals are primitive integer vectors oriented so that every
//! generator pairs nonnegatively with them (inner points pair positively).
//! Faces are identified by the set of generator indices they contain.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, QVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCone {
    generators: Vec<QVec>,
    integral: Vec<Vec<BigInt>>,
    dim: usize,
}

impl RationalCone {
    pub fn new(generators: Vec<QVec>) -> Result<Self> {
        let ambient = generators.first().map_or(0, |g| g.len());
        if generators.iter().any(|g| g.len() != ambient) {
            return Err(Error::Shape("generators of differing lengths".into()));
        }
        if generators.iter().any(|g| g.iter().all(Zero::is_zero)) {
            return Err(Error::Invalid("zero generator".into()));
        }
        let integral = generators.iter().map(|g| linalg::primitive_integer(g)).collect();
        let dim = linalg::rank_rat(&generators);
        Ok(RationalCone { generators, integral, dim })
    }

    pub fn from_integer(generators: &[Vec<BigInt>]) -> Result<Self> {
        Self::new(generators.iter().map(|g| linalg::to_rat(g)).collect())
    }

    pub fn generators(&self) -> &[QVec] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.generators.first().map_or(0, |g| g.len())
    }

    fn subset_rank(&self, idx: impl IntoIterator<Item = usize>) -> usize {
        let rows: Vec<Vec<BigInt>> = idx.into_iter().map(|i| self.integral[i].clone()).collect();
        linalg::rank_int(&rows)
    }

    /// Rank of the generators with the given indices.
    pub fn rank_of(&self, idx: &[usize]) -> usize {
        self.subset_rank(idx.iter().copied())
    }

    fn require_full(&self) -> Result<()> {
        let n = self.ambient_dim();
        if self.dim != n || n == 0 {
            return Err(Error::NotFullDimensional { rank: self.dim, expected: n });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub incident: Vec<usize>,
}

impl Facet {
    pub fn normal_rat(&self) -> QVec {
        linalg::to_rat(&self.normal)
    }
}

struct Working {
    normal: Vec<BigInt>,
    incident: BTreeSet<usize>,
}

/// All facets of a full-dimensional cone, sorted by normal.
pub fn facets_of_cone(c: &RationalCone) -> Result<Vec<Facet>> {
    c.require_full()?;
    let n = c.ambient_dim();
    let gens = &c.integral;

    let init = linalg::independent_subset(c.generators());
    debug_assert_eq!(init.len(), n);
    let mut facets: Vec<Working> = Vec::new();
    for (j, &gj) in init.iter().enumerate() {
        let others: Vec<QVec> = init
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &g)| linalg::to_rat(&gens[g]))
            .collect();
        let ns = linalg::null_space(&others, n);
        let mut h = linalg::primitive_integer(&ns[0]);
        if linalg::dot_int(&h, &gens[gj]).is_negative() {
            h = h.iter().map(|x| -x).collect();
        }
        let incident = init.iter().copied().filter(|&g| g != gj).collect();
        facets.push(Working { normal: h, incident });
    }

    let mut processed: BTreeSet<usize> = init.iter().copied().collect();
    for g in 0..gens.len() {
        if processed.contains(&g) {
            continue;
        }
        let s: Vec<BigInt> = facets.iter().map(|f| linalg::dot_int(&f.normal, &gens[g])).collect();
        let mut next: Vec<Working> = Vec::new();
        let minus: Vec<usize> = (0..facets.len()).filter(|&i| s[i].is_negative()).collect();
        let plus: Vec<usize> = (0..facets.len()).filter(|&i| s[i].is_positive()).collect();
        for &p in &plus {
            for &m in &minus {
                let common: BTreeSet<usize> =
                    facets[p].incident.intersection(&facets[m].incident).copied().collect();
                if common.len() < n - 2 || c.subset_rank(common.iter().copied()) != n - 2 {
                    continue;
                }
                let h: Vec<BigInt> = facets[m]
                    .normal
                    .iter()
                    .zip(&facets[p].normal)
                    .map(|(hm, hp)| &s[p] * hm - &s[m] * hp)
                    .collect();
                let mut incident = common;
                incident.insert(g);
                next.push(Working { normal: linalg::primitive(&h), incident });
            }
        }
        for (i, mut f) in facets.into_iter().enumerate() {
            if s[i].is_negative() {
                continue;
            }
            if s[i].is_zero() {
                f.incident.insert(g);
            }
            next.push(f);
        }
        facets = next;
        processed.insert(g);
    }

    let mut out: Vec<Facet> = facets
        .into_iter()
        .map(|f| {
            let incident =
                (0..gens.len()).filter(|&i| linalg::dot_int(&f.normal, &gens[i]).is_zero()).collect();
            Facet { normal: f.normal, incident }
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Faces of a cone keyed by their dimension as cones; a face is the sorted
/// list of generator indices it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub dim: usize,
    pub faces: BTreeMap<usize, Vec<Vec<usize>>>,
}

impl FaceLattice {
    pub fn of_dim(&self, k: usize) -> &[Vec<usize>] {
        self.faces.get(&k).map_or(&[], |v| v.as_slice())
    }

    /// Faces of dimension `k - 1` contained in `face`.
    pub fn subfaces(&self, face: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return Vec::new();
        }
        self.of_dim(k - 1)
            .iter()
            .filter(|f| f.iter().all(|i| face.binary_search(i).is_ok()))
            .cloned()
            .collect()
    }

    /// `(vertices, edges, faces)` of the polytope obtained by slicing a
    /// 4-dimensional cone, i.e. cone-faces of dimension 1, 2 and 3.
    pub fn polytope_counts(&self) -> (usize, usize, usize) {
        (self.of_dim(1).len(), self.of_dim(2).len(), self.of_dim(3).len())
    }

    /// Number of vertices on each 2-face of the polytope, sorted.
    pub fn facet_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self
            .of_dim(self.dim - 1)
            .iter()
            .map(|f| {
                self.of_dim(1)
                    .iter()
                    .filter(|r| r.iter().all(|i| f.binary_search(i).is_ok()))
                    .count()
            })
            .collect();
        sizes.sort_unstable();
        sizes
    }
}

/// All faces of dimension `down_to_dim ..= dim - 1`, plus the cone itself.
pub fn face_lattice(c: &RationalCone, down_to_dim: usize) -> Result<FaceLattice> {
    let facets = facets_of_cone(c)?;
    let n = c.dim();
    let mut faces: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    faces.insert(n, vec![(0..c.len()).collect()]);
    let top: Vec<Vec<usize>> = facets.iter().map(|f| f.incident.clone()).collect();
    faces.insert(n - 1, top.clone());
    let mut k = n - 1;
    while k > down_to_dim.max(1) {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for face in &faces[&k] {
            for f in &top {
                let meet: Vec<usize> = face.iter().copied().filter(|i| f.binary_search(i).is_ok()).collect();
                if meet.len() >= k - 1 && meet != *face && c.rank_of(&meet) == k - 1 {
                    found.insert(meet);
                }
            }
        }
        faces.insert(k - 1, found.into_iter().collect());
        k -= 1;
    }
    Ok(FaceLattice { dim: n, faces })
}

/// Check that every generator satisfies every facet inequality.
pub fn satisfies_all(c: &RationalCone, facets: &[Facet]) -> bool {
    c.generators().iter().all(|g| {
        facets.iter().all(|f| !linalg::dot_rat(&f.normal_rat(), g).is_negative())
    })
}

pub fn rat_vec(v: &[i64]) -> QVec {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}
