//! Binary Hermitian forms over `K = Q(sqrt d)`, their minimal vectors and
//! the perfection test.
//!
//! A form is the matrix `[[a, b], [conj(b), c]]` with `a, c` rational and
//! `b = x + y*w`. Its four rational coordinates are `(a, c, x, y)`. For a
//! vector `v = (v1, v2)` in `O_d^2` the value is
//!
//! ```text
//! v* A v = a N(v1) + c N(v2) + x Tr(v2 conj(v1)) + y Tr(w v2 conj(v1))
//! ```
//!
//! so `v v*` corresponds to the integer vector returned by [`projection`],
//! and evaluation is the plain dot product of the two coordinate vectors.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, Gram};
use crate::linalg::{self, QVec};
use crate::quad::{QuadField, QuadInt, QuadMat2, QuadRat, QuadVec2};

/// Coordinates of the rank-one form `v v*` in the basis dual to the form
/// coordinates `(a, c, x, y)`.
pub fn projection(v: &QuadVec2) -> Vec<BigInt> {
    let z = &v.1 * &v.0.conj();
    let wz = &v.0.field().omega() * &z;
    vec![v.0.norm(), v.1.norm(), z.trace(), wz.trace()]
}

pub fn projection_rat(v: &QuadVec2) -> QVec {
    linalg::to_rat(&projection(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermitianForm {
    field: QuadField,
    coords: [BigRational; 4],
}

impl HermitianForm {
    pub fn from_coords(field: QuadField, coords: [BigRational; 4]) -> Self {
        HermitianForm { field, coords }
    }

    pub fn from_int_coords(field: QuadField, c: [i64; 4]) -> Self {
        Self::from_coords(field, c.map(|x| BigRational::from_integer(x.into())))
    }

    pub fn new(field: QuadField, a: BigRational, c: BigRational, b: &QuadRat) -> Self {
        let (x, y) = b.coords();
        Self::from_coords(field, [a, c, x, y])
    }

    pub fn identity(field: QuadField) -> Self {
        Self::from_int_coords(field, [1, 1, 0, 0])
    }

    /// Build a form from a 2x2 matrix over `K` (row-major), checking that it
    /// is Hermitian.
    pub fn from_matrix(field: QuadField, m: &[QuadRat; 4]) -> Result<Self> {
        let (a, ai) = m[0].coords();
        let (c, ci) = m[3].coords();
        let is_rational = |x: &QuadRat| x.conj() == *x;
        if !is_rational(&m[0]) || !is_rational(&m[3]) || m[2] != m[1].conj() {
            return Err(Error::Invalid("matrix is not Hermitian".into()));
        }
        debug_assert!(ai.is_zero() && ci.is_zero());
        Ok(Self::new(field, a, c, &m[1]))
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.coords
    }

    pub fn coords_vec(&self) -> QVec {
        self.coords.to_vec()
    }

    pub fn off_diagonal(&self) -> QuadRat {
        QuadRat::from_rationals(self.field, &self.coords[2], &self.coords[3])
    }

    pub fn as_matrix(&self) -> [QuadRat; 4] {
        let b = self.off_diagonal();
        let r = |x: &BigRational| QuadRat::from_rationals(self.field, x, &BigRational::zero());
        [r(&self.coords[0]), b.clone(), b.conj(), r(&self.coords[1])]
    }

    /// `a c - N(b)`.
    pub fn determinant(&self) -> BigRational {
        &self.coords[0] * &self.coords[1] - self.off_diagonal().norm()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.coords[0].is_positive() && self.determinant().is_positive()
    }

    pub fn evaluate(&self, v: &QuadVec2) -> BigRational {
        linalg::dot_rat(&self.coords, &projection_rat(v))
    }

    pub fn scaled(&self, s: &BigRational) -> Self {
        Self::from_coords(self.field, self.coords.clone().map(|x| x * s))
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &HermitianForm, s: &BigRational) -> Self {
        let mut c = self.coords.clone();
        for (x, y) in c.iter_mut().zip(other.coords.iter()) {
            *x += y * s;
        }
        Self::from_coords(self.field, c)
    }

    /// `g* A g`, so that `(g* A g)[v] = A[g v]`.
    pub fn transform(&self, g: &QuadMat2) -> Self {
        let m = self.as_matrix();
        let ge: Vec<QuadRat> = g.entries().iter().map(|x| QuadRat::from_int(x.clone())).collect();
        let gh = [ge[0].conj(), ge[2].conj(), ge[1].conj(), ge[3].conj()];
        let mul = |x: &[QuadRat], y: &[QuadRat]| -> [QuadRat; 4] {
            let e = |i: usize, j: usize| {
                x[2 * i]
                    .try_mul(&y[j])
                    .and_then(|p| p.try_add(&x[2 * i + 1].try_mul(&y[2 + j])?))
                    .expect("single field")
            };
            [e(0, 0), e(0, 1), e(1, 0), e(1, 1)]
        };
        let r = mul(&gh, &mul(&m, &ge));
        Self::from_matrix(self.field, &r).expect("g* A g is Hermitian")
    }

    /// Gram matrix of the rank-4 `Z`-lattice `O_d^2` in the basis
    /// `(e1, w e1, e2, w e2)`.
    pub fn real_gram(&self) -> Result<Gram> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let basis: Vec<QuadVec2> = (0..4)
            .map(|i| {
                let mut z = [0i64; 4];
                z[i] = 1;
                QuadVec2::from_coords(self.field, z)
            })
            .collect();
        let two = BigRational::from_integer(2.into());
        let mut g = vec![vec![BigRational::zero(); 4]; 4];
        for i in 0..4 {
            g[i][i] = self.evaluate(&basis[i]);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                let s = QuadVec2(&basis[i].0 + &basis[j].0, &basis[i].1 + &basis[j].1);
                let v = (self.evaluate(&s) - &g[i][i] - &g[j][j]) / &two;
                g[i][j] = v.clone();
                g[j][i] = v;
            }
        }
        Ok(g)
    }

    pub fn minimal_vectors(&self) -> Result<MinimalVectorSet> {
        let g = self.real_gram()?;
        let (min_value, raw) = lattice::minimum(&g);
        let mut vectors: Vec<QuadVec2> =
            raw.iter().map(|z| QuadVec2::from_big(self.field, z).canonical()).collect();
        vectors.sort_by(|a, b| a.coord_cmp(b));
        vectors.dedup();
        Ok(MinimalVectorSet { min_value, vectors })
    }

    /// Dimension of the span of `v v*` over the minimal vectors.
    pub fn perfection_rank(&self) -> Result<usize> {
        let mv = self.minimal_vectors()?;
        Ok(mv.projection_rank())
    }

    pub fn is_perfect(&self) -> Result<bool> {
        Ok(self.perfection_rank()? == 4)
    }

    /// The unique form taking the value 1 on every vector of a configuration
    /// whose projections span the whole space.
    pub fn from_configuration(field: QuadField, vectors: &[QuadVec2]) -> Option<Self> {
        let rows: Vec<QVec> = vectors
            .iter()
            .map(|v| {
                let mut r = projection_rat(v);
                r.push(BigRational::one());
                r
            })
            .collect();
        let mut m = rows;
        let pivots = linalg::rref(&mut m);
        if pivots.len() != 4 || pivots.contains(&4) {
            return None;
        }
        let c = [0, 1, 2, 3].map(|i| m[i][4].clone());
        Some(Self::from_coords(field, c))
    }
}

impl fmt::Display for HermitianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [*, {}]]", self.coords[0], self.off_diagonal(), self.coords[1])
    }
}

/// Minimal vectors of a form, one representative per unit orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalVectorSet {
    pub min_value: BigRational,
    pub vectors: Vec<QuadVec2>,
}

impl MinimalVectorSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn projections(&self) -> Vec<QVec> {
        self.vectors.iter().map(projection_rat).collect()
    }

    pub fn projection_rank(&self) -> usize {
        linalg::rank_rat(&self.projections())
    }

    pub fn position(&self, v: &QuadVec2) -> Option<usize> {
        let c = v.canonical();
        self.vectors.iter().position(|w| *w == c)
    }
}

/// `a + b w` as a `QuadInt`, for terse literals in tests and tables.
pub fn qi(field: QuadField, a: i64, b: i64) -> QuadInt {
    QuadInt::new(field, a, b)
}
