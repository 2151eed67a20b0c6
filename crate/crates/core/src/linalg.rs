//! Small dense exact linear algebra over `Q` used by the form and cone code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QVec = Vec<BigRational>;

pub fn to_rat(v: &[BigInt]) -> QVec {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Scale a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive(&ints)
}

/// Divide an integer vector by the gcd of its entries.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [QVec]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_rat(rows: &[QVec]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    let m: Vec<QVec> = rows.iter().map(|r| to_rat(r)).collect();
    rank_rat(&m)
}

/// Basis of `{x : row . x = 0 for all rows}` with `ncols` unknowns.
pub fn null_space(rows: &[QVec], ncols: usize) -> Vec<QVec> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); ncols];
            x[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -m[i][f].clone();
            }
            x
        })
        .collect()
}

pub fn det(m: &[QVec]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &a[c][j] * &f;
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Coordinates of `x` in the (independent) vectors `basis`, if `x` lies in
/// their span.
pub fn coords_in_basis(basis: &[QVec], x: &[BigRational]) -> Option<QVec> {
    let k = basis.len();
    let n = x.len();
    // augmented system: columns are basis vectors, last column is x
    let mut m: Vec<QVec> = (0..n)
        .map(|i| {
            let mut row: QVec = basis.iter().map(|b| b[i].clone()).collect();
            row.push(x[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) || pivots.len() != k {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

/// Sign of the determinant of the vectors `images` written in coordinates of
/// `basis`. Both sets must span the same space.
pub fn orientation_sign(basis: &[QVec], images: &[QVec]) -> i32 {
    let coords: Vec<QVec> = images
        .iter()
        .map(|v| coords_in_basis(basis, v).expect("vector outside the span"))
        .collect();
    let d = det(&coords);
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

/// Indices of a greedy maximal independent subset, in input order.
pub fn independent_subset(vectors: &[QVec]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<QVec> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        rows.push(v.clone());
        if rank_rat(&rows) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}
