//! Versioned JSON documents for the three pipeline stages (perfect forms,
//! cell orbits, boundary matrices) and a cache directory keyed by `d`.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::HermitianForm;
use crate::quad::{QuadField, QuadVec2};
use crate::voronoi::{
    assemble_complex, cell_orbits, enumerate_perfect_forms, CellOrbits, PerfectFormClass, VoronoiCell,
    VoronoiComplexData,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "BIANCHI_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".bianchi-cache";

fn small(x: &BigInt) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::OutOfRange(format!("{x} does not fit in 64 bits")))
}

fn vec_coords(v: &QuadVec2) -> Result<[i64; 4]> {
    let c = v.coords();
    Ok([small(&c[0])?, small(&c[1])?, small(&c[2])?, small(&c[3])?])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetDoc {
    pub normal: Vec<i64>,
    pub incident: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub label: usize,
    /// `(a, c, x, y)` for `[[a, x + y w], [*, c]]`, as exact rationals.
    pub form: [String; 4],
    pub min_vectors: Vec<[i64; 4]>,
    pub shape: String,
    /// Vertices, edges and 2-faces of the polytope.
    pub face_counts: [usize; 3],
    pub facets: Vec<FacetDoc>,
    pub neighbors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectFormsDoc {
    pub schema_version: u32,
    pub d: i64,
    pub classes: Vec<ClassDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub dim: usize,
    pub orbit_label: usize,
    pub class: usize,
    pub face: Vec<usize>,
    pub generators: Vec<[i64; 4]>,
    pub stabilizer_order: usize,
    pub orientation_preserved: bool,
    pub occurrences: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitsDoc {
    pub schema_version: u32,
    pub d: i64,
    /// Orbit lists for cell dimensions 1, 2, 3.
    pub cells: [Vec<CellDoc>; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub schema_version: u32,
    pub d: i64,
    /// Ranks of `C_1`, `C_2`, `C_3`.
    pub ranks: [usize; 3],
    /// Row-major, `#C1 x #C2`.
    pub d2: Vec<Vec<i64>>,
    /// Row-major, `#C2 x #C3`.
    pub d3: Vec<Vec<i64>>,
    /// `H_1`, `H_2`, `H_3`.
    pub homology: [String; 3],
}

pub fn class_doc(c: &PerfectFormClass) -> Result<ClassDoc> {
    let form = c.representative.coords().clone().map(|x| x.to_string());
    let min_vectors = c.min_vectors.vectors.iter().map(vec_coords).collect::<Result<_>>()?;
    let facets = c
        .facets
        .iter()
        .map(|f| {
            Ok(FacetDoc { normal: f.normal.iter().map(small).collect::<Result<_>>()?, incident: f.incident.clone() })
        })
        .collect::<Result<_>>()?;
    let neighbors = c
        .neighbors
        .iter()
        .map(|n| n.ok_or(Error::IncompleteClassList { class: c.label }))
        .collect::<Result<_>>()?;
    let (v, e, f) = c.lattice.polytope_counts();
    Ok(ClassDoc {
        label: c.label,
        form,
        min_vectors,
        shape: c.shape().to_string(),
        face_counts: [v, e, f],
        facets,
        neighbors,
    })
}

pub fn perfect_forms_doc(field: QuadField, classes: &[PerfectFormClass]) -> Result<PerfectFormsDoc> {
    Ok(PerfectFormsDoc {
        schema_version: SCHEMA_VERSION,
        d: field.d(),
        classes: classes.iter().map(class_doc).collect::<Result<_>>()?,
    })
}

/// Rebuild the classes, recomputing their cones and checking them against
/// the stored data.
pub fn classes_from_doc(doc: &PerfectFormsDoc) -> Result<Vec<PerfectFormClass>> {
    let field = QuadField::new(doc.d)?;
    let mut out = Vec::with_capacity(doc.classes.len());
    for c in &doc.classes {
        let coords = c
            .form
            .iter()
            .map(|s| BigRational::from_str(s).map_err(|_| Error::Invalid(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let coords: [BigRational; 4] = coords.try_into().expect("four coordinates");
        let mut class = PerfectFormClass::from_form(c.label, &HermitianForm::from_coords(field, coords))?;
        let stored: Vec<QuadVec2> = c.min_vectors.iter().map(|z| QuadVec2::from_coords(field, *z)).collect();
        if stored != class.min_vectors.vectors || c.neighbors.len() != class.facets.len() {
            return Err(Error::Invalid(format!("stored class {} does not match its form", c.label)));
        }
        class.neighbors = c.neighbors.iter().map(|&n| Some(n)).collect();
        out.push(class);
    }
    Ok(out)
}

fn cell_doc(c: &VoronoiCell) -> Result<CellDoc> {
    Ok(CellDoc {
        dim: c.dim,
        orbit_label: c.orbit_label,
        class: c.class,
        face: c.face.clone(),
        generators: c.generator_subset.iter().map(vec_coords).collect::<Result<_>>()?,
        stabilizer_order: c.stabilizer_order,
        orientation_preserved: c.orientation_preserved,
        occurrences: c.occurrences,
    })
}

pub fn orbits_doc(o: &CellOrbits) -> Result<OrbitsDoc> {
    let dim = |k: usize| o.of_dim(k).iter().map(cell_doc).collect::<Result<Vec<_>>>();
    Ok(OrbitsDoc { schema_version: SCHEMA_VERSION, d: o.field.d(), cells: [dim(1)?, dim(2)?, dim(3)?] })
}

pub fn complex_doc(c: &VoronoiComplexData) -> Result<ComplexDoc> {
    let h = |k: i64| c.homology(k).map(|g| g.to_string());
    Ok(ComplexDoc {
        schema_version: SCHEMA_VERSION,
        d: c.field.d(),
        ranks: c.ranks(),
        d2: c.d2.clone(),
        d3: c.d3.clone(),
        homology: [h(1)?, h(2)?, h(3)?],
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Stage outputs stored under `<root>/d<|d|>/`.
#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

pub const FORMS_FILE: &str = "perfect_forms.json";
pub const ORBITS_FILE: &str = "orbits.json";
pub const COMPLEX_FILE: &str = "complex.json";

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    /// `explicit`, else the environment variable, else the default.
    pub fn resolve(explicit: Option<&Path>) -> Self {
        match explicit {
            Some(p) => Cache::new(p),
            None => Cache::new(std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR), PathBuf::from)),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn dir(&self, d: i64) -> PathBuf {
        self.root.join(format!("d{}", d.unsigned_abs()))
    }

    pub fn path(&self, d: i64, name: &str) -> PathBuf {
        self.dir(d).join(name)
    }

    /// A stored document, or `None` if absent or written by another schema.
    pub fn load<T: DeserializeOwned + Versioned>(&self, d: i64, name: &str) -> Result<Option<T>> {
        let p = self.path(d, name);
        if !p.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&p)?;
        match serde_json::from_str::<T>(&text) {
            Ok(doc) if doc.schema_version() == SCHEMA_VERSION && doc.d() == d => Ok(Some(doc)),
            _ => Ok(None),
        }
    }

    pub fn store<T: Serialize>(&self, d: i64, name: &str, doc: &T) -> Result<()> {
        fs::create_dir_all(self.dir(d))?;
        fs::write(self.path(d, name), to_json(doc)?)?;
        Ok(())
    }
}

pub trait Versioned {
    fn schema_version(&self) -> u32;
    fn d(&self) -> i64;
}

macro_rules! versioned {
    ($($t:ty),*) => {$(
        impl Versioned for $t {
            fn schema_version(&self) -> u32 { self.schema_version }
            fn d(&self) -> i64 { self.d }
        }
    )*};
}

versioned!(PerfectFormsDoc, OrbitsDoc, ComplexDoc);

/// All three stage documents for one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pipeline {
    pub forms: PerfectFormsDoc,
    pub orbits: OrbitsDoc,
    pub complex: ComplexDoc,
}

/// Run the pipeline, reusing cached stages when a cache is given.
pub fn run_pipeline(field: QuadField, cache: Option<&Cache>) -> Result<Pipeline> {
    let d = field.d();
    let cached = |name: &str| -> Result<Option<ComplexDoc>> {
        match cache {
            Some(c) => c.load(d, name),
            None => Ok(None),
        }
    };
    let forms_cached: Option<PerfectFormsDoc> = match cache {
        Some(c) => c.load(d, FORMS_FILE)?,
        None => None,
    };
    let orbits_cached: Option<OrbitsDoc> = match cache {
        Some(c) => c.load(d, ORBITS_FILE)?,
        None => None,
    };
    if let (Some(forms), Some(orbits), Some(complex)) = (&forms_cached, &orbits_cached, cached(COMPLEX_FILE)?) {
        return Ok(Pipeline { forms: forms.clone(), orbits: orbits.clone(), complex });
    }
    let classes = match &forms_cached {
        Some(doc) => classes_from_doc(doc)?,
        None => enumerate_perfect_forms(field)?,
    };
    let forms = perfect_forms_doc(field, &classes)?;
    let orbits = cell_orbits(&classes)?;
    let complex = assemble_complex(&classes, &orbits)?;
    let out = Pipeline { forms, orbits: orbits_doc(&orbits)?, complex: complex_doc(&complex)? };
    if let Some(c) = cache {
        c.store(d, FORMS_FILE, &out.forms)?;
        c.store(d, ORBITS_FILE, &out.orbits)?;
        c.store(d, COMPLEX_FILE, &out.complex)?;
    }
    Ok(out)
}

/// Only the perfect-form stage, reusing a cached document when present.
pub fn perfect_forms_stage(field: QuadField, cache: Option<&Cache>) -> Result<PerfectFormsDoc> {
    if let Some(c) = cache {
        if let Some(doc) = c.load::<PerfectFormsDoc>(field.d(), FORMS_FILE)? {
            return Ok(doc);
        }
    }
    let classes = enumerate_perfect_forms(field)?;
    let doc = perfect_forms_doc(field, &classes)?;
    if let Some(c) = cache {
        c.store(field.d(), FORMS_FILE, &doc)?;
    }
    Ok(doc)
}
