//! Complexes of partial frames and partial bases over small finite rings.

use super::poset::SimplicialComplex;
use super::ring::FiniteRing;
use super::tits::{rank, FVec};
use crate::error::{Error, Result};

/// Vectors of `R^n` whose entries generate the unit ideal.
pub fn unimodular_vectors(r: FiniteRing, n: usize) -> Vec<FVec> {
    let q = r.size() as usize;
    let primes = r.residue_primes();
    let mut out = Vec::new();
    for mut code in 0..q.pow(n as u32) {
        let mut v = vec![0; n];
        for x in v.iter_mut() {
            *x = (code % q) as u32;
            code /= q;
        }
        let ok = match r {
            FiniteRing::Gf4 => v.iter().any(|&x| x != 0),
            FiniteRing::Zmod(_) => primes.iter().all(|&p| v.iter().any(|&x| x % p != 0)),
        };
        if ok {
            out.push(v);
        }
    }
    out
}

/// Whether the vectors extend to a basis of `R^n`: independent modulo every
/// maximal ideal.
pub fn is_partial_basis(r: FiniteRing, vs: &[FVec]) -> bool {
    if r.is_field() {
        return rank(r, vs) == vs.len();
    }
    r.residue_primes().into_iter().all(|p| {
        let k = FiniteRing::Zmod(p);
        let red: Vec<FVec> = vs.iter().map(|v| v.iter().map(|x| x % p).collect()).collect();
        rank(k, &red) == vs.len()
    })
}

fn line_rep(r: FiniteRing, v: &FVec) -> FVec {
    r.units()
        .into_iter()
        .map(|u| v.iter().map(|&x| r.mul(u, x)).collect::<FVec>())
        .min()
        .expect("a ring has units")
}

/// Lines of `R^n`: unit orbits of unimodular vectors, one representative each.
pub fn lines(r: FiniteRing, n: usize) -> Vec<FVec> {
    let mut ls: Vec<FVec> = unimodular_vectors(r, n).iter().map(|v| line_rep(r, v)).collect();
    ls.sort();
    ls.dedup();
    ls
}

/// All subsets of `items` (by index) that pass `ok`, assuming `ok` is
/// inherited by subsets. At most `max` elements each.
fn independent_sets(items: &[FVec], max: usize, ok: impl Fn(&[FVec]) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..items.len()).map(|i| vec![i]).collect();
    while let Some(s) = stack.pop() {
        let vs: Vec<FVec> = s.iter().map(|&i| items[i].clone()).collect();
        if !ok(&vs) {
            continue;
        }
        if s.len() < max {
            for j in s[s.len() - 1] + 1..items.len() {
                let mut t = s.clone();
                t.push(j);
                stack.push(t);
            }
        }
        out.push(s);
    }
    out
}

fn check_size(r: FiniteRing, n: usize) -> Result<()> {
    if n == 0 || n > 3 || (r.size() as usize).pow(n as u32) > 1000 {
        return Err(Error::OutOfRange(format!("frame complexes are limited to n <= 3 and |R|^n <= 1000, got n = {n} over {r}")));
    }
    Ok(())
}

/// `B_n(R)` and its `(n - 2)`-skeleton `B'_n(R)`.
#[derive(Clone, Debug)]
pub struct FrameComplexes {
    pub ring: FiniteRing,
    pub n: usize,
    /// Vertex `i` is the line through `lines[i]`.
    pub lines: Vec<FVec>,
    pub b: SimplicialComplex,
    pub b_prime: SimplicialComplex,
}

pub fn frame_complex(n: usize, r: FiniteRing) -> Result<FrameComplexes> {
    check_size(r, n)?;
    let ls = lines(r, n);
    let simplices = independent_sets(&ls, n, |vs| is_partial_basis(r, vs));
    let b = SimplicialComplex::from_simplices(ls.len(), &simplices)?;
    let b_prime = if n >= 2 { b.skeleton(n - 2) } else { SimplicialComplex::from_simplices(0, &[])? };
    Ok(FrameComplexes { ring: r, n, lines: ls, b, b_prime })
}

/// `PB_n(R)`: simplices are partial bases of unimodular vectors.
pub fn partial_basis_complex(n: usize, r: FiniteRing) -> Result<(Vec<FVec>, SimplicialComplex)> {
    check_size(r, n)?;
    let vs = unimodular_vectors(r, n);
    let simplices = independent_sets(&vs, n, |s| is_partial_basis(r, s));
    let c = SimplicialComplex::from_simplices(vs.len(), &simplices)?;
    Ok((vs, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::HomologyGroup;

    #[test]
    fn rank_two_over_f2() {
        let f = frame_complex(2, FiniteRing::field(2).unwrap()).unwrap();
        assert_eq!(f.lines.len(), 3);
        assert_eq!(f.b.count(1), 3);
        assert!(f.b.is_connected());
        // B' is the 0-skeleton: three points
        assert_eq!(f.b_prime.reduced_homology(0), HomologyGroup::free(2));
    }

    #[test]
    fn rank_one_is_a_point() {
        for q in [2, 3, 4, 5] {
            let f = frame_complex(1, FiniteRing::field(q).unwrap()).unwrap();
            assert_eq!(f.b.count(0), 1);
            assert!(f.b.reduced_homology(0).is_zero());
        }
    }

    #[test]
    fn zmod_six_lines() {
        let r = FiniteRing::zmod(6).unwrap();
        // P^1(Z/6) = P^1(F_2) x P^1(F_3): 3 * 4 lines
        assert_eq!(lines(r, 2).len(), 12);
        assert!(is_partial_basis(r, &[vec![1, 0], vec![0, 1]]));
        assert!(!is_partial_basis(r, &[vec![1, 0], vec![3, 1], vec![0, 1]]));
        assert!(!is_partial_basis(r, &[vec![2, 0]]));
    }

    #[test]
    fn partial_bases_over_f2() {
        let (vs, c) = partial_basis_complex(2, FiniteRing::field(2).unwrap()).unwrap();
        assert_eq!(vs.len(), 3);
        assert_eq!(c.count(1), 3);
    }

    #[test]
    fn size_guard() {
        assert!(frame_complex(4, FiniteRing::field(2).unwrap()).is_err());
        assert!(frame_complex(3, FiniteRing::field(11).unwrap()).is_err());
    }
}
