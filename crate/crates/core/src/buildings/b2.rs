//! Finite truncations of the graph `B_2(O_d)`: vertices are lines spanned by
//! unimodular vectors, edges join lines forming a basis.
//!
//! A truncation can split a connected graph, so a census here is evidence,
//! not proof.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::quad::{QuadField, QuadInt, QuadVec2};

pub const EVIDENCE_BANNER: &str = "evidence, not proof: a finite truncation may disconnect a connected graph";

/// Elements of `O_d` with norm at most `radius`.
pub fn elements_up_to_norm(field: QuadField, radius: u64) -> Vec<QuadInt> {
    // N(x + yw) >= 3 y^2 / 4 for every d <= -1, and symmetrically for x
    let bound = ((4.0 * radius as f64 / 3.0).sqrt().floor() as i64) + 1;
    let r = BigInt::from(radius);
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let z = QuadInt::new(field, x, y);
            if z.norm() <= r {
                out.push(z);
            }
        }
    }
    out
}

/// Whether `(a, b)` generates the unit ideal: the Z-span of `a, aw, b, bw`
/// has index 1 in `O_d`.
pub fn is_unimodular(v: &QuadVec2) -> bool {
    let w = v.field().omega();
    let gens = [v.0.clone(), &v.0 * &w, v.1.clone(), &v.1 * &w];
    let mut g = BigInt::zero();
    for i in 0..4 {
        for j in i + 1..4 {
            let m = gens[i].a() * gens[j].b() - gens[i].b() * gens[j].a();
            g = g.gcd(&m);
        }
    }
    g.is_one()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct B2Census {
    pub d: i64,
    pub radius: u64,
    pub vertices: usize,
    pub edges: usize,
    /// Component sizes, largest first.
    pub component_sizes: Vec<usize>,
    pub banner: &'static str,
}

impl B2Census {
    pub fn components(&self) -> usize {
        self.component_sizes.len()
    }
}

impl fmt::Display for B2Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}]", self.banner)?;
        writeln!(f, "d = {}, radius = {}: {} vertices, {} edges", self.d, self.radius, self.vertices, self.edges)?;
        write!(f, "{} components, sizes {:?}", self.components(), self.component_sizes)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Components of the truncated graph on lines `[a : b]` with
/// `N(a), N(b) <= radius`.
pub fn truncated_b2_components(field: QuadField, radius: u64) -> B2Census {
    let elems = elements_up_to_norm(field, radius);
    let mut verts: Vec<QuadVec2> = Vec::new();
    for a in &elems {
        for b in &elems {
            let v = QuadVec2(a.clone(), b.clone());
            if !v.is_zero() && is_unimodular(&v) {
                verts.push(v.canonical());
            }
        }
    }
    verts.sort_by(|x, y| x.coord_cmp(y));
    verts.dedup();
    let n = verts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut edges = 0;
    for i in 0..n {
        for j in i + 1..n {
            if verts[i].det(&verts[j]).is_unit() {
                edges += 1;
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut sizes = vec![0usize; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        sizes[r] += 1;
    }
    let mut component_sizes: Vec<usize> = sizes.into_iter().filter(|&s| s > 0).collect();
    component_sizes.sort_unstable_by(|a, b| b.cmp(a));
    B2Census { d: field.d(), radius, vertices: n, edges, component_sizes, banner: EVIDENCE_BANNER }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodularity() {
        let k = QuadField::new(-43).unwrap();
        assert!(is_unimodular(&QuadVec2::from_coords(k, [1, 0, 0, 0])));
        assert!(!is_unimodular(&QuadVec2::from_coords(k, [2, 0, 0, 0])));
        assert!(!is_unimodular(&QuadVec2::from_coords(k, [2, 0, 4, 0])));
        assert!(is_unimodular(&QuadVec2::from_coords(k, [2, 0, 3, 0])));
    }

    #[test]
    fn gaussian_truncation_is_connected() {
        let k = QuadField::new(-1).unwrap();
        let c = truncated_b2_components(k, 5);
        assert_eq!(c.components(), 1);
        assert!(c.vertices > 2);
    }

    #[test]
    fn zero_radius_is_empty() {
        let k = QuadField::new(-43).unwrap();
        let c = truncated_b2_components(k, 0);
        assert_eq!((c.vertices, c.edges, c.components()), (0, 0, 0));
        assert!(c.to_string().contains("evidence, not proof"));
    }
}
