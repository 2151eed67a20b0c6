//! Exact short-vector enumeration for positive definite rational Gram
//! matrices: LLL preconditioning followed by Fincke-Pohst on an exact
//! rational Cholesky decomposition.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Gram = Vec<Vec<BigRational>>;

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// `z^T G z` for an integer vector `z`.
pub fn eval_gram(g: &Gram, z: &[BigInt]) -> BigRational {
    let n = z.len();
    let mut acc = BigRational::zero();
    for i in 0..n {
        if z[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if z[j].is_zero() {
                continue;
            }
            acc += &g[i][j] * BigRational::from_integer(&z[i] * &z[j]);
        }
    }
    acc
}

/// Exact `q_ii`, `q_ij` coefficients with `z^T G z = sum_i q_ii (z_i + sum_{j>i} q_ij z_j)^2`.
/// Returns `None` unless `G` is positive definite.
fn cholesky(g: &Gram) -> Option<Gram> {
    let n = g.len();
    let mut q = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut d = g[i][i].clone();
        for k in 0..i {
            d -= &q[k][k] * &q[k][i] * &q[k][i];
        }
        if !d.is_positive() {
            return None;
        }
        q[i][i] = d;
        for j in i + 1..n {
            let mut s = g[i][j].clone();
            for k in 0..i {
                s -= &q[k][k] * &q[k][i] * &q[k][j];
            }
            q[i][j] = s / &q[i][i];
        }
    }
    Some(q)
}

pub fn is_positive_definite(g: &Gram) -> bool {
    cholesky(g).is_some()
}

fn transform(g: &Gram, t: &[Vec<BigInt>]) -> Gram {
    // G' = T^T G T with basis vectors as columns of T
    let n = g.len();
    let col = |j: usize| -> Vec<BigInt> { (0..n).map(|i| t[i][j].clone()).collect() };
    let cols: Vec<Vec<BigInt>> = (0..n).map(col).collect();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let mut acc = BigRational::zero();
            for a in 0..n {
                if cols[i][a].is_zero() {
                    continue;
                }
                for b in 0..n {
                    if cols[j][b].is_zero() {
                        continue;
                    }
                    acc += &g[a][b] * BigRational::from_integer(&cols[i][a] * &cols[j][b]);
                }
            }
            out[j][i] = acc.clone();
            out[i][j] = acc;
        }
    }
    out
}

fn gso(g: &Gram) -> (Vec<BigRational>, Gram) {
    let n = g.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut b = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g[i][j].clone();
            for k in 0..j {
                s -= &mu[j][k] * &mu[i][k] * &b[k];
            }
            mu[i][j] = s / &b[j];
        }
        let mut s = g[i][i].clone();
        for k in 0..i {
            s -= &mu[i][k] * &mu[i][k] * &b[k];
        }
        b[i] = s;
    }
    (b, mu)
}

fn round(x: &BigRational) -> BigInt {
    (x + BigRational::new(1.into(), 2.into())).floor().to_integer()
}

/// LLL-reduce a positive definite Gram matrix (delta = 3/4). Returns the
/// reduced Gram matrix and the unimodular `T` (reduced basis in its columns).
pub fn lll(g: &Gram) -> (Gram, Vec<Vec<BigInt>>) {
    let n = g.len();
    let mut t: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut cur = g.clone();
    let delta = BigRational::new(3.into(), 4.into());
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (_, mu) = gso(&cur);
            let r = round(&mu[k][j]);
            if !r.is_zero() {
                for row in t.iter_mut() {
                    let v = &row[j] * &r;
                    row[k] -= v;
                }
                cur = transform(g, &t);
            }
        }
        let (b, mu) = gso(&cur);
        let lhs = &b[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            for row in t.iter_mut() {
                row.swap(k, k - 1);
            }
            cur = transform(g, &t);
            k = if k > 1 { k - 1 } else { 1 };
        }
    }
    (cur, t)
}

/// Integer interval `{z : q (z - c)^2 <= rem}`, or `None` if empty.
fn interval(c: &BigRational, rem: &BigRational, q: &BigRational) -> Option<(BigInt, BigInt)> {
    let ok = |z: &BigInt| -> bool {
        let d = BigRational::from_integer(z.clone()) - c;
        q * &d * &d <= *rem
    };
    let mid = round(c);
    if !ok(&mid) {
        return None;
    }
    let radius = (rem / q).to_f64().unwrap_or(0.0).max(0.0).sqrt();
    let cf = c.to_f64().unwrap_or(0.0);
    let mut hi = BigInt::from((cf + radius).floor() as i64).max(mid.clone());
    while !ok(&hi) {
        hi -= 1;
    }
    while ok(&(&hi + 1)) {
        hi += 1;
    }
    let mut lo = BigInt::from((cf - radius).ceil() as i64).min(mid);
    while !ok(&lo) {
        lo += 1;
    }
    while ok(&(&lo - 1)) {
        lo -= 1;
    }
    Some((lo, hi))
}

fn enumerate(
    q: &Gram,
    level: usize,
    rem: BigRational,
    y: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    let n = q.len();
    let mut c = BigRational::zero();
    for j in level + 1..n {
        c -= &q[level][j] * BigRational::from_integer(y[j].clone());
    }
    let Some((lo, hi)) = interval(&c, &rem, &q[level][level]) else {
        return;
    };
    let mut z = lo;
    while z <= hi {
        let d = BigRational::from_integer(z.clone()) - &c;
        let used = &q[level][level] * &d * &d;
        y[level] = z.clone();
        if level == 0 {
            out.push(y.clone());
        } else {
            enumerate(q, level - 1, &rem - used, y, out);
        }
        z += 1;
    }
    y[level] = BigInt::zero();
}

/// All nonzero `z` with `z^T G z <= bound`, one from each `+-z` pair, with
/// their values. `G` must be positive definite.
pub fn short_vectors(g: &Gram, bound: &BigRational) -> Vec<(Vec<BigInt>, BigRational)> {
    let n = g.len();
    let (reduced, t) = lll(g);
    let q = cholesky(&reduced).expect("Gram matrix must be positive definite");
    let mut raw = Vec::new();
    let mut y = vec![BigInt::zero(); n];
    enumerate(&q, n - 1, bound.clone(), &mut y, &mut raw);
    raw.into_iter()
        .filter(|y| y.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()))
        .map(|y| {
            let z: Vec<BigInt> = (0..n).map(|i| (0..n).map(|j| &t[i][j] * &y[j]).sum()).collect();
            let v = eval_gram(&reduced, &y);
            (z, v)
        })
        .collect()
}

/// The minimum of `G` on nonzero integer vectors and all minimizers (one
/// from each `+-` pair).
pub fn minimum(g: &Gram) -> (BigRational, Vec<Vec<BigInt>>) {
    let (reduced, _) = lll(g);
    let bound = (0..g.len())
        .map(|i| reduced[i][i].clone())
        .min()
        .unwrap_or_else(|| rat(0));
    let all = short_vectors(g, &bound);
    let min = all.iter().map(|(_, v)| v.clone()).min().expect("basis vectors are within bound");
    let vecs = all.into_iter().filter(|(_, v)| *v == min).map(|(z, _)| z).collect();
    (min, vecs)
}
