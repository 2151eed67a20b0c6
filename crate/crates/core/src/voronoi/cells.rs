//! Orbits of Voronoi cells under `GL_2(O_d)` and the boundary maps of the
//! Voronoi complex relative to its 0-cells.

use num_bigint::BigInt;

use super::equiv::{config_invariant, config_maps, config_stabilizer};
use super::PerfectFormClass;
use crate::error::{Error, Result};
use crate::hermitian::projection_rat;
use crate::homology::{int_matrix, ChainComplex, HomologyGroup};
use crate::linalg::{self, QVec};
use crate::quad::{QuadField, QuadMat2, QuadVec2};

/// An orbit of cells, described by one representative face of some
/// perfect-form cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoronoiCell {
    /// Dimension of the cell (one less than the dimension of its cone).
    pub dim: usize,
    pub orbit_label: usize,
    /// Class whose cone contains the representative.
    pub class: usize,
    /// Indices of the representative's vectors among the class's minimal vectors.
    pub face: Vec<usize>,
    pub generator_subset: Vec<QuadVec2>,
    /// Order of the stabilizer modulo scalar units.
    pub stabilizer_order: usize,
    pub orientation_preserved: bool,
    /// Number of (class, face) pairs falling in this orbit.
    pub occurrences: usize,
    invariant: (usize, Vec<BigInt>),
}

impl VoronoiCell {
    fn basis(&self) -> Vec<QVec> {
        orientation_basis(&self.generator_subset)
    }
}

/// All cell orbits in dimensions 1, 2, 3, orientable or not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellOrbits {
    pub field: QuadField,
    /// `cells[k - 1]` holds the `k`-dimensional orbits.
    pub cells: [Vec<VoronoiCell>; 3],
}

impl CellOrbits {
    pub fn of_dim(&self, k: usize) -> &[VoronoiCell] {
        &self.cells[k - 1]
    }

    pub fn counts(&self) -> [usize; 3] {
        [self.cells[0].len(), self.cells[1].len(), self.cells[2].len()]
    }

    pub fn orientable_counts(&self) -> [usize; 3] {
        let c = |k: usize| self.of_dim(k).iter().filter(|c| c.orientation_preserved).count();
        [c(1), c(2), c(3)]
    }

    /// The orbit containing `vectors`, and `g` with `g . rep = vectors`.
    pub fn locate(&self, dim: usize, vectors: &[QuadVec2]) -> Option<(usize, QuadMat2)> {
        let inv = config_invariant(vectors);
        self.of_dim(dim).iter().enumerate().find_map(|(i, c)| {
            if c.invariant != inv {
                return None;
            }
            config_maps(&c.generator_subset, vectors, true).pop().map(|g| (i, g))
        })
    }
}

/// Orientation-preserving cell orbits and the boundary matrices between them.
/// Matrices are row-major with rows indexed by the lower-dimensional orbits:
/// `d3` is `#C2 x #C3` and `d2` is `#C1 x #C2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoronoiComplexData {
    pub field: QuadField,
    pub cells: [Vec<VoronoiCell>; 3],
    pub d3: Vec<Vec<i64>>,
    pub d2: Vec<Vec<i64>>,
}

impl VoronoiComplexData {
    pub fn ranks(&self) -> [usize; 3] {
        [self.cells[0].len(), self.cells[1].len(), self.cells[2].len()]
    }

    /// The complex `C_1 <- C_2 <- C_3`; there is no `C_0` since the
    /// 0-cells are the boundary we work relative to.
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        ChainComplex::new(1, self.ranks().to_vec(), vec![int_matrix(&self.d2), int_matrix(&self.d3)])
    }

    pub fn homology(&self, k: i64) -> Result<HomologyGroup> {
        Ok(self.chain_complex()?.homology(k))
    }
}

/// Greedy independent subset of the projections, in order. Its ordering
/// fixes the orientation of the cell spanned by `vectors`.
pub fn orientation_basis(vectors: &[QuadVec2]) -> Vec<QVec> {
    let proj: Vec<QVec> = vectors.iter().map(projection_rat).collect();
    linalg::independent_subset(&proj).into_iter().map(|i| proj[i].clone()).collect()
}

fn image_basis(g: &QuadMat2, vectors: &[QuadVec2]) -> Vec<QVec> {
    let proj: Vec<QVec> = vectors.iter().map(projection_rat).collect();
    linalg::independent_subset(&proj)
        .into_iter()
        .map(|i| projection_rat(&g.apply(&vectors[i])))
        .collect()
}

/// Group every face of cone dimension 2..=4 of every class into orbits.
pub fn cell_orbits(classes: &[PerfectFormClass]) -> Result<CellOrbits> {
    let field = classes.first().map(|c| c.field()).ok_or_else(|| Error::Invalid("no classes".into()))?;
    for c in classes {
        if c.neighbors.iter().any(|n| n.is_none_or(|i| i >= classes.len())) {
            return Err(Error::IncompleteClassList { class: c.label });
        }
    }
    let mut orbits = CellOrbits { field, cells: [Vec::new(), Vec::new(), Vec::new()] };
    for dim in (1..=3).rev() {
        for class in classes {
            for face in class.lattice.of_dim(dim + 1) {
                let vectors: Vec<QuadVec2> = face.iter().map(|&i| class.min_vectors.vectors[i].clone()).collect();
                if let Some((i, _)) = orbits.locate(dim, &vectors) {
                    orbits.cells[dim - 1][i].occurrences += 1;
                    continue;
                }
                let label = orbits.cells[dim - 1].len();
                let stab = config_stabilizer(&vectors);
                let basis = orientation_basis(&vectors);
                let orientation_preserved =
                    stab.iter().all(|g| linalg::orientation_sign(&basis, &image_basis(g, &vectors)) == 1);
                orbits.cells[dim - 1].push(VoronoiCell {
                    dim,
                    orbit_label: label,
                    class: class.label,
                    face: face.clone(),
                    invariant: config_invariant(&vectors),
                    generator_subset: vectors,
                    stabilizer_order: stab.len(),
                    orientation_preserved,
                    occurrences: 1,
                });
            }
        }
    }
    Ok(orbits)
}

/// Boundary matrix from the orientable `dim`-cells to the orientable
/// `(dim - 1)`-cells.
fn boundary(classes: &[PerfectFormClass], orbits: &CellOrbits, dim: usize) -> Result<Vec<Vec<i64>>> {
    let rows: Vec<usize> =
        (0..orbits.of_dim(dim - 1).len()).filter(|&i| orbits.of_dim(dim - 1)[i].orientation_preserved).collect();
    let cols: Vec<&VoronoiCell> = orbits.of_dim(dim).iter().filter(|c| c.orientation_preserved).collect();
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, sigma) in cols.iter().enumerate() {
        let class = &classes[sigma.class];
        let b_sigma = sigma.basis();
        for tau_face in class.lattice.subfaces(&sigma.face, dim + 1) {
            let tau: Vec<QuadVec2> = tau_face.iter().map(|&i| class.min_vectors.vectors[i].clone()).collect();
            let (orbit, g) = orbits
                .locate(dim - 1, &tau)
                .ok_or(Error::IncompleteClassList { class: sigma.class })?;
            let Some(row) = rows.iter().position(|&r| r == orbit) else {
                continue;
            };
            let rep = &orbits.of_dim(dim - 1)[orbit];
            let b_tau = orientation_basis(&tau);
            let transport = linalg::orientation_sign(&b_tau, &image_basis(&g, &rep.generator_subset));
            let inward = sigma
                .face
                .iter()
                .find(|i| tau_face.binary_search(i).is_err())
                .map(|&i| projection_rat(&class.min_vectors.vectors[i]))
                .expect("proper face");
            let mut induced = b_tau.clone();
            induced.push(inward);
            let eps = linalg::orientation_sign(&b_sigma, &induced);
            m[row][j] += i64::from(eps * transport);
        }
    }
    Ok(m)
}

fn product_is_zero(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let inner = b.len();
    a.iter().all(|row| {
        let cols = b.first().map_or(0, |r| r.len());
        (0..cols).all(|j| (0..inner).map(|k| row[k] * b[k][j]).sum::<i64>() == 0)
    })
}

/// Boundary matrices of the Voronoi complex over the orientable orbits.
pub fn assemble_complex(classes: &[PerfectFormClass], orbits: &CellOrbits) -> Result<VoronoiComplexData> {
    let d3 = boundary(classes, orbits, 3)?;
    let d2 = boundary(classes, orbits, 2)?;
    if !product_is_zero(&d2, &d3) {
        return Err(Error::BoundarySquareNonzero { degree: 3 });
    }
    let keep = |k: usize| -> Vec<VoronoiCell> {
        orbits.of_dim(k).iter().filter(|c| c.orientation_preserved).cloned().collect()
    };
    Ok(VoronoiComplexData { field: orbits.field, cells: [keep(1), keep(2), keep(3)], d3, d2 })
}
