//! `GL_2(O_d)`-equivalence of finite configurations of primitive vectors,
//! taken up to unit multiples. Both form equivalence and cell stabilizers
//! reduce to this search.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::quad::{QuadInt, QuadMat2, QuadVec2};

/// Invariant of a configuration under `GL_2(O_d)`: its size and the sorted
/// multiset of `N(det(v_i, v_j))` over pairs.
pub fn config_invariant(vs: &[QuadVec2]) -> (usize, Vec<BigInt>) {
    let mut dets = Vec::with_capacity(vs.len() * vs.len().saturating_sub(1) / 2);
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            dets.push(vs[i].det(&vs[j]).norm());
        }
    }
    dets.sort();
    (vs.len(), dets)
}

fn pivot_pair(from: &[QuadVec2]) -> Option<(usize, usize)> {
    for j in 1..from.len() {
        if !from[0].det(&from[j]).is_zero() {
            return Some((0, j));
        }
    }
    None
}

/// Matrices `g` in `GL_2(O_d)` with `g . from = to` as sets of lines (unit
/// multiples identified). Solutions are returned modulo scalar units; with
/// `first_only` the search stops at the first hit.
pub fn config_maps(from: &[QuadVec2], to: &[QuadVec2], first_only: bool) -> Vec<QuadMat2> {
    if from.len() != to.len() || from.is_empty() {
        return Vec::new();
    }
    let Some((i0, j0)) = pivot_pair(from) else {
        return Vec::new();
    };
    let field = from[0].field();
    let (w1, w2) = (&from[i0], &from[j0]);
    let dw = w1.det(w2);
    let target_norm = dw.norm();
    let targets: HashSet<QuadVec2> = to.iter().map(QuadVec2::canonical).collect();
    if targets.len() != to.len() {
        return Vec::new();
    }
    // adj [w1 w2] = [[w2.1, -w2.0], [-w1.1, w1.0]]
    let adj = QuadMat2([w2.1.clone(), -&w2.0, -&w1.1, w1.0.clone()]);
    let units = field.units();

    let mut out: Vec<QuadMat2> = Vec::new();
    for u1 in to {
        for u2 in to {
            if u1 == u2 || u1.det(u2).norm() != target_norm {
                continue;
            }
            for e in &units {
                let u2e = u2.scale(e);
                let m = QuadMat2::from_columns(u1, &u2e).mul(&adj);
                let Some(g) = divide_matrix(&m, &dw) else {
                    continue;
                };
                if !g.is_invertible() {
                    continue;
                }
                if from.iter().all(|v| targets.contains(&g.apply(v).canonical())) {
                    out.push(g);
                    if first_only {
                        return out;
                    }
                }
            }
        }
    }
    out
}

fn divide_matrix(m: &QuadMat2, d: &QuadInt) -> Option<QuadMat2> {
    let e = m.entries();
    Some(QuadMat2([
        e[0].div_exact(d)?,
        e[1].div_exact(d)?,
        e[2].div_exact(d)?,
        e[3].div_exact(d)?,
    ]))
}

/// The setwise stabilizer of a configuration, modulo scalar units.
pub fn config_stabilizer(vs: &[QuadVec2]) -> Vec<QuadMat2> {
    config_maps(vs, vs, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadField;

    #[test]
    fn standard_frame_stabilizer() {
        // {e1, e2} is stabilized by diag(1, +-1) and the swaps, mod +-1
        let k = QuadField::new(-43).unwrap();
        let vs = vec![QuadVec2::from_coords(k, [1, 0, 0, 0]), QuadVec2::from_coords(k, [0, 0, 1, 0])];
        let stab = config_stabilizer(&vs);
        assert_eq!(stab.len(), 4);
        assert!(stab.contains(&QuadMat2::identity(k)));
    }

    #[test]
    fn detects_non_equivalence() {
        let k = QuadField::new(-43).unwrap();
        let a = vec![QuadVec2::from_coords(k, [1, 0, 0, 0]), QuadVec2::from_coords(k, [0, 0, 1, 0])];
        // determinant 2: not a unimodular pair
        let b = vec![QuadVec2::from_coords(k, [1, 0, 0, 0]), QuadVec2::from_coords(k, [1, 0, 2, 0])];
        assert!(config_maps(&a, &b, true).is_empty());
    }
}
