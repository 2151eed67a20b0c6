use bianchi_core::homology::{identity, int_matrix, matmul, zeros, PresentedComplex};
use bianchi_core::voronoi::{assemble_complex, cell_orbits, enumerate_perfect_forms};
use bianchi_core::{ChainComplex, HomologyGroup, IntMatrix, QuadField};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// A random unimodular matrix and its inverse, from elementary operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> (IntMatrix, IntMatrix) {
    let mut p = identity(n);
    let mut q = identity(n);
    if n < 2 {
        return (p, q);
    }
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            // negate row i of p and column i of q
            for x in p[i].iter_mut() {
                *x = -&*x;
            }
            for row in q.iter_mut() {
                row[i] = -&row[i];
            }
            continue;
        }
        // p <- (I + c e_ij) p,  q <- q (I - c e_ij)
        let add: Vec<BigInt> = p[j].iter().map(|x| x * c).collect();
        for (x, a) in p[i].iter_mut().zip(add) {
            *x += a;
        }
        for row in q.iter_mut() {
            let t = &row[i] * c;
            row[j] -= t;
        }
    }
    (p, q)
}

/// A direct sum of `Z -n-> Z` pieces and free summands, with the homology
/// that sum has by inspection.
#[derive(Clone, Debug)]
struct Pieces {
    /// `(k, n)`: a generator in degree `k + 1` with boundary `n` times a generator in degree `k`.
    arrows: Vec<(i64, i64)>,
    free: [usize; 3],
}

fn build(p: &Pieces) -> ([usize; 3], Vec<IntMatrix>, [HomologyGroup; 3]) {
    let mut dims = p.free;
    let mut pos = Vec::new();
    for &(k, _) in &p.arrows {
        let lo = (k - 1) as usize;
        pos.push((dims[lo], dims[lo + 1]));
        dims[lo] += 1;
        dims[lo + 1] += 1;
    }
    let mut d = vec![zeros(dims[0], dims[1]), zeros(dims[1], dims[2])];
    let mut free = p.free;
    let mut torsion: [Vec<BigInt>; 3] = Default::default();
    for (&(k, n), &(r, c)) in p.arrows.iter().zip(&pos) {
        let lo = (k - 1) as usize;
        d[lo][r][c] = BigInt::from(n);
        if n == 0 {
            free[lo] += 1;
            free[lo + 1] += 1;
        } else if n.abs() > 1 {
            torsion[lo].push(BigInt::from(n.abs()));
        }
    }
    let expect = [0, 1, 2].map(|i| HomologyGroup::from_divisors(free[i], torsion[i].clone()));
    (dims, d, expect)
}

fn pieces() -> impl Strategy<Value = Pieces> {
    (prop::collection::vec((1i64..=2, -6i64..=6), 0..6), [0usize..3, 0usize..3, 0usize..3])
        .prop_map(|(arrows, free)| Pieces { arrows, free })
}

fn ops() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..16, 0usize..16, -3i64..=3), 0..24)
}

fn conjugate(dims: [usize; 3], d: &[IntMatrix], o: [&[(usize, usize, i64)]; 3]) -> Vec<IntMatrix> {
    let bases: Vec<(IntMatrix, IntMatrix)> = (0..3).map(|i| unimodular(dims[i], o[i])).collect();
    // d_k' = P_{k-1} d_k P_k^{-1}
    (0..2).map(|i| matmul(&matmul(&bases[i].0, &d[i]), &bases[i + 1].1)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homology_of_known_sums(p in pieces(), o1 in ops(), o2 in ops(), o3 in ops()) {
        let (dims, d, expect) = build(&p);
        let moved = conjugate(dims, &d, [&o1, &o2, &o3]);
        let c = ChainComplex::new(1, dims.to_vec(), moved).unwrap();
        for k in 1..=3 {
            prop_assert_eq!(c.homology(k), expect[k as usize - 1].clone(), "degree {}", k);
        }
        prop_assert!(c.homology(0).is_zero() && c.homology(4).is_zero());
    }

    #[test]
    fn unimodular_helper_inverts(n in 1usize..6, o in ops()) {
        let (p, q) = unimodular(n, &o);
        prop_assert_eq!(matmul(&p, &q), identity(n));
    }

    #[test]
    fn universal_coefficients(p in pieces(), o1 in ops(), o2 in ops(), o3 in ops(), m in 2i64..7) {
        let (dims, d, expect) = build(&p);
        let moved = conjugate(dims, &d, [&o1, &o2, &o3]);
        let mi = BigInt::from(m);
        let relations: Vec<IntMatrix> = dims
            .iter()
            .map(|&n| (0..n).map(|i| (0..n).map(|j| if i == j { mi.clone() } else { BigInt::zero() }).collect()).collect())
            .collect();
        let pc = PresentedComplex { lowest: 1, generators: dims.to_vec(), relations, boundaries: moved };
        // H_k(C; Z/m) = H_k / m  +  m-torsion of H_{k-1}
        let reduce = |g: &HomologyGroup| -> Vec<BigInt> {
            let mut v: Vec<BigInt> = vec![mi.clone(); g.free_rank];
            v.extend(g.torsion.iter().map(|t| t.gcd(&mi)));
            v
        };
        for k in 1..=3i64 {
            let mut divisors = reduce(&expect[k as usize - 1]);
            if k >= 2 {
                divisors.extend(expect[k as usize - 2].torsion.iter().map(|t| t.gcd(&mi)));
            }
            divisors.retain(|x| !x.is_one());
            let want = HomologyGroup::from_divisors(0, divisors);
            prop_assert_eq!(pc.homology(k).unwrap(), want, "degree {} mod {}", k, m);
        }
    }
}

#[test]
fn voronoi_homology_survives_basis_change() {
    let classes = enumerate_perfect_forms(QuadField::new(-43).unwrap()).unwrap();
    let orbits = cell_orbits(&classes).unwrap();
    let cx = assemble_complex(&classes, &orbits).unwrap();
    let dims = cx.ranks();
    let d = vec![int_matrix(&cx.d2), int_matrix(&cx.d3)];
    let o: [&[(usize, usize, i64)]; 3] = [&[(0, 1, 2), (1, 0, -1)], &[(0, 4, 3), (2, 1, -2), (3, 3, 0)], &[(1, 2, 1), (3, 0, 5)]];
    let moved = conjugate(dims, &d, o);
    let c = ChainComplex::new(1, dims.to_vec(), moved).unwrap();
    for k in 1..=3 {
        assert_eq!(c.homology(k), cx.homology(k).unwrap());
    }
}

#[test]
fn nonzero_square_is_refused() {
    let one = int_matrix(&[vec![1]]);
    assert!(ChainComplex::new(0, vec![1, 1, 1], vec![one.clone(), one]).is_err());
}
