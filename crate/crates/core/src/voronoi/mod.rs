//! Voronoi's algorithm for binary Hermitian forms over `O_d`: perfect forms,
//! their cones, neighbours across facets, and classification up to
//! `GL_2(O_d)`.

mod cells;
pub mod equiv;

pub use cells::{assemble_complex, cell_orbits, orientation_basis, CellOrbits, VoronoiCell, VoronoiComplexData};

use std::fmt;

use log::debug;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hermitian::{projection, HermitianForm, MinimalVectorSet};
use crate::linalg;
use crate::polyhedra::{face_lattice, facets_of_cone, FaceLattice, Facet, RationalCone};
use crate::quad::{QuadField, QuadMat2, QuadVec2};

/// A perfect form together with its Voronoi cone data.
#[derive(Clone, Debug)]
pub struct PerfectFormClass {
    pub label: usize,
    pub representative: HermitianForm,
    pub min_vectors: MinimalVectorSet,
    pub cone: RationalCone,
    pub facets: Vec<Facet>,
    pub lattice: FaceLattice,
    /// Class reached by flipping across each facet, filled in by enumeration.
    pub neighbors: Vec<Option<usize>>,
}

impl PerfectFormClass {
    /// Build the class data for a perfect form, rescaling it to minimum 1.
    pub fn from_form(label: usize, form: &HermitianForm) -> Result<Self> {
        let mv = form.minimal_vectors()?;
        let form = form.scaled(&mv.min_value.recip());
        let min_vectors = MinimalVectorSet { min_value: BigRational::one(), vectors: mv.vectors };
        let gens: Vec<_> = min_vectors.vectors.iter().map(projection).collect();
        let cone = RationalCone::from_integer(&gens)?;
        if cone.dim() != 4 {
            return Err(Error::NotFullDimensional { rank: cone.dim(), expected: 4 });
        }
        let facets = facets_of_cone(&cone)?;
        let lattice = face_lattice(&cone, 1)?;
        let neighbors = vec![None; facets.len()];
        Ok(PerfectFormClass { label, representative: form, min_vectors, cone, facets, lattice, neighbors })
    }

    pub fn field(&self) -> QuadField {
        self.representative.field()
    }

    pub fn shape(&self) -> PolytopeShape {
        polytope_shape(self)
    }

    pub fn facet_vectors(&self, f: &Facet) -> Vec<QuadVec2> {
        f.incident.iter().map(|&i| self.min_vectors.vectors[i].clone()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PolytopeShape {
    Tetrahedron,
    SquarePyramid,
    TriangularPrism,
    HexagonalCap,
    Octahedron,
    Cuboctahedron,
    TruncatedTetrahedron,
    Other,
}

impl PolytopeShape {
    pub fn name(&self) -> &'static str {
        match self {
            PolytopeShape::Tetrahedron => "tetrahedron",
            PolytopeShape::SquarePyramid => "square pyramid",
            PolytopeShape::TriangularPrism => "triangular prism",
            PolytopeShape::HexagonalCap => "hexagonal cap",
            PolytopeShape::Octahedron => "octahedron",
            PolytopeShape::Cuboctahedron => "cuboctahedron",
            PolytopeShape::TruncatedTetrahedron => "truncated tetrahedron",
            PolytopeShape::Other => "other",
        }
    }
}

impl fmt::Display for PolytopeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classify the ideal polytope of a perfect form by its face numbers and the
/// multiset of 2-face sizes.
pub fn polytope_shape(p: &PerfectFormClass) -> PolytopeShape {
    classify_shape(p.lattice.polytope_counts(), &p.lattice.facet_sizes())
}

pub fn classify_shape(counts: (usize, usize, usize), sizes: &[usize]) -> PolytopeShape {
    let count = |k: usize| sizes.iter().filter(|&&s| s == k).count();
    match (counts, count(3), count(4), count(6)) {
        ((4, 6, 4), 4, 0, 0) => PolytopeShape::Tetrahedron,
        ((5, 8, 5), 4, 1, 0) => PolytopeShape::SquarePyramid,
        ((6, 9, 5), 2, 3, 0) => PolytopeShape::TriangularPrism,
        ((9, 15, 8), 4, 3, 1) => PolytopeShape::HexagonalCap,
        ((6, 12, 8), 8, 0, 0) => PolytopeShape::Octahedron,
        ((12, 24, 14), 8, 6, 0) => PolytopeShape::Cuboctahedron,
        ((12, 18, 8), 4, 0, 4) => PolytopeShape::TruncatedTetrahedron,
        _ => PolytopeShape::Other,
    }
}

/// True when the 2x2 Hermitian form is positive semidefinite.
fn is_psd(f: &HermitianForm) -> bool {
    let c = f.coords();
    !c[0].is_negative() && !c[1].is_negative() && !f.determinant().is_negative()
}

const MAX_BRACKET_STEPS: usize = 512;

/// Move from `q` (minimum 1, with `base_len` minimal vectors) along `dir`,
/// which vanishes on those vectors, to the first point where new minimal
/// vectors appear.
fn advance(q: &HermitianForm, dir: &HermitianForm, base_len: usize) -> Result<HermitianForm> {
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    // `lo` keeps the old minimal vectors only; `hi` is past the flip point
    let mut lo = BigRational::zero();
    let mut hi: Option<BigRational> = None;
    let mut u = BigRational::one();
    let mut steps = 0;
    let mut mv = loop {
        steps += 1;
        if steps > MAX_BRACKET_STEPS {
            return Err(Error::Invalid("direction never reaches a new minimal vector".into()));
        }
        let f = q.add_scaled(dir, &u);
        if f.is_positive_definite() {
            let mv = f.minimal_vectors()?;
            if mv.min_value < one {
                break mv;
            }
            if mv.len() > base_len {
                return Ok(f);
            }
            lo = u.clone();
        } else {
            hi = Some(u.clone());
        }
        u = match &hi {
            Some(h) => (&lo + h) / &two,
            None => &u * &two,
        };
    };
    loop {
        u = mv
            .vectors
            .iter()
            .map(|w| (q.evaluate(w) - &one) / (-dir.evaluate(w)))
            .min()
            .expect("nonempty minimal vector set");
        let f = q.add_scaled(dir, &u);
        mv = f.minimal_vectors()?;
        if mv.min_value == one {
            return Ok(f);
        }
    }
}

/// A perfect form reached from the identity by repeatedly moving inside the
/// orthogonal complement of the current minimal vectors.
pub fn initial_perfect_form(field: QuadField) -> Result<HermitianForm> {
    let mut form = HermitianForm::identity(field);
    loop {
        let mv = form.minimal_vectors()?;
        let proj = mv.projections();
        if linalg::rank_rat(&proj) == 4 {
            return Ok(form);
        }
        let ns = linalg::null_space(&proj, 4);
        let coords: [BigRational; 4] = ns[0].clone().try_into().expect("length 4");
        let mut dir = HermitianForm::from_coords(field, coords);
        if is_psd(&dir) {
            dir = dir.scaled(&-BigRational::one());
        }
        form = advance(&form, &dir, mv.len())?;
    }
}

/// The perfect neighbour of `p` across `facet`, with minimum 1.
pub fn flip_neighbor(p: &PerfectFormClass, facet: &Facet) -> Result<HermitianForm> {
    if !p.facets.contains(facet) {
        return Err(Error::ForeignFacet);
    }
    let normal: [BigRational; 4] = facet.normal_rat().try_into().expect("length 4");
    let dir = HermitianForm::from_coords(p.field(), normal);
    debug_assert!(p.facet_vectors(facet).iter().all(|v| dir.evaluate(v).is_zero()));
    advance(&p.representative, &dir, facet.incident.len())
}

/// `g` with `g* f1 g = f2`, if the two perfect forms are equivalent.
pub fn are_equivalent(f1: &HermitianForm, f2: &HermitianForm) -> Result<Option<QuadMat2>> {
    let m1 = f1.minimal_vectors()?;
    let m2 = f2.minimal_vectors()?;
    if equiv::config_invariant(&m1.vectors) != equiv::config_invariant(&m2.vectors) {
        return Ok(None);
    }
    let scale = &m2.min_value / &m1.min_value;
    let target = f1.scaled(&scale);
    for g in equiv::config_maps(&m2.vectors, &m1.vectors, false) {
        if target.transform(&g) == *f2 {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn find_class(classes: &[PerfectFormClass], form: &HermitianForm) -> Result<Option<usize>> {
    let mv = form.minimal_vectors()?;
    let inv = equiv::config_invariant(&mv.vectors);
    for c in classes {
        if equiv::config_invariant(&c.min_vectors.vectors) != inv {
            continue;
        }
        if are_equivalent(&c.representative, form)?.is_some() {
            return Ok(Some(c.label));
        }
    }
    Ok(None)
}

/// Breadth-first closure of the initial perfect form under facet flips,
/// modulo `GL_2(O_d)`. Labels follow discovery order.
pub fn enumerate_perfect_forms(field: QuadField) -> Result<Vec<PerfectFormClass>> {
    let seed = initial_perfect_form(field)?;
    let mut classes = vec![PerfectFormClass::from_form(0, &seed)?];
    let mut next = 0;
    while next < classes.len() {
        let current = classes[next].clone();
        let neighbours: Vec<Result<HermitianForm>> =
            current.facets.par_iter().map(|f| flip_neighbor(&current, f)).collect();
        for (j, nb) in neighbours.into_iter().enumerate() {
            let nb = nb?;
            let idx = match find_class(&classes, &nb)? {
                Some(i) => i,
                None => {
                    let label = classes.len();
                    debug!("d = {}: new perfect form class {} ({} minimal vectors)", field.d(), label, nb.minimal_vectors()?.len());
                    classes.push(PerfectFormClass::from_form(label, &nb)?);
                    label
                }
            };
            classes[next].neighbors[j] = Some(idx);
        }
        next += 1;
    }
    Ok(classes)
}
