//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fail.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use bianchi_core::buildings::{alpha_report, frame_complex, lemma_oracle, tits_building, truncated_b2_components, FiniteRing};
use bianchi_core::homology::{int_matrix, is_zero_matrix, matmul, smith_normal_form};
use bianchi_core::voronoi::{assemble_complex, cell_orbits, enumerate_perfect_forms, CellOrbits};
use bianchi_core::{HermitianForm, HomologyGroup, PerfectFormClass, QuadField, VoronoiComplexData};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

struct Field {
    d: i64,
    classes: Vec<PerfectFormClass>,
    orbits: CellOrbits,
    complex: VoronoiComplexData,
    seconds: f64,
}

fn compute(d: i64) -> std::result::Result<Field, String> {
    let t = Instant::now();
    let k = QuadField::new(d).map_err(|e| e.to_string())?;
    let classes = enumerate_perfect_forms(k).map_err(|e| e.to_string())?;
    let orbits = cell_orbits(&classes).map_err(|e| e.to_string())?;
    let complex = assemble_complex(&classes, &orbits).map_err(|e| e.to_string())?;
    Ok(Field { d, classes, orbits, complex, seconds: t.elapsed().as_secs_f64() })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_counts(fields: &[Field]) -> Check {
    let expected = [(-43, 4), (-67, 7), (-163, 25)];
    let mut parts = Vec::new();
    for (f, (d, n)) in fields.iter().zip(expected) {
        ensure(f.d == d && f.classes.len() == n, || format!("d = {}: {} classes, expected {n}", f.d, f.classes.len()))?;
        parts.push(format!("d={d}: {n} in {:.1}s", f.seconds));
    }
    Ok(parts.join(", "))
}

fn c2_shapes(fields: &[Field]) -> Check {
    let expected: [&[(&str, usize)]; 3] = [
        &[("triangular prism", 2), ("hexagonal cap", 1), ("truncated tetrahedron", 1)],
        &[("octahedron", 1), ("triangular prism", 2), ("hexagonal cap", 1), ("square pyramid", 2), ("truncated tetrahedron", 1)],
        &[("tetrahedron", 11), ("cuboctahedron", 1), ("triangular prism", 8), ("hexagonal cap", 2), ("square pyramid", 3)],
    ];
    for (f, exp) in fields.iter().zip(expected) {
        let mut got: BTreeMap<String, usize> = BTreeMap::new();
        for c in &f.classes {
            *got.entry(c.shape().to_string()).or_default() += 1;
        }
        let exp: BTreeMap<String, usize> = exp.iter().map(|(s, n)| (s.to_string(), *n)).collect();
        ensure(got == exp, || format!("d = {}: {got:?}, expected {exp:?}", f.d))?;
    }
    Ok("multisets match for d = -43, -67, -163".into())
}

fn c3_orbits(fields: &[Field]) -> Check {
    // (3-cells, 2-faces, edges)
    let expected = [(4, 6, 4), (7, 13, 8), (25, 49, 27)];
    let mut parts = Vec::new();
    for (f, e) in fields.iter().zip(expected) {
        let [c1, c2, c3] = f.orbits.counts();
        ensure((c3, c2, c1) == e, || format!("d = {}: {:?}, expected {e:?}", f.d, (c3, c2, c1)))?;
        parts.push(format!("{c3}/{c2}/{c1}"));
    }
    Ok(parts.join(", "))
}

fn c4_facets() -> Check {
    let k = common::d43();
    let vectors = common::d43_class_vectors(0);
    let form = HermitianForm::from_configuration(k, &vectors).ok_or("configuration does not determine a form")?;
    let class = PerfectFormClass::from_form(0, &form).map_err(|e| e.to_string())?;
    ensure(class.min_vectors.len() == vectors.len(), || format!("{} minimal vectors", class.min_vectors.len()))?;
    // computed index -> listed (1-based) index
    let mut relabel = vec![0; vectors.len()];
    for (i, v) in vectors.iter().enumerate() {
        let j = class.min_vectors.position(v).ok_or_else(|| format!("listed vector {} is not minimal", i + 1))?;
        relabel[j] = i + 1;
    }
    let mut got: Vec<Vec<usize>> = class
        .facets
        .iter()
        .map(|f| {
            let mut s: Vec<usize> = f.incident.iter().map(|&j| relabel[j]).collect();
            s.sort_unstable();
            s
        })
        .collect();
    got.sort();
    let mut exp: Vec<Vec<usize>> = common::D43_FACETS[0].iter().map(|s| s.to_vec()).collect();
    exp.sort();
    ensure(got == exp, || format!("facets {got:?}, expected {exp:?}"))?;
    Ok(format!("{} facets equal the listed sets (relabeling {relabel:?})", got.len()))
}

fn elementary(n: i64) -> HomologyGroup {
    HomologyGroup::from_divisors(0, std::iter::repeat_n(BigInt::from(2), n as usize))
}

fn c5_homology(fields: &[Field]) -> Check {
    let expected = [(1, 1), (2, 1), (6, 2)];
    let mut parts = Vec::new();
    for (f, (h1, h2)) in fields.iter().zip(expected) {
        let g1 = f.complex.homology(1).map_err(|e| e.to_string())?;
        let g2 = f.complex.homology(2).map_err(|e| e.to_string())?;
        ensure(g1 == elementary(h1) && g2 == elementary(h2), || format!("d = {}: H1 = {g1}, H2 = {g2}", f.d))?;
        parts.push(format!("d={}: H1={g1} H2={g2}", f.d));
    }
    Ok(parts.join("; "))
}

fn c6_boundary(fields: &[Field]) -> Check {
    for f in fields {
        let prod = matmul(&int_matrix(&f.complex.d2), &int_matrix(&f.complex.d3));
        ensure(is_zero_matrix(&prod), || format!("d = {}: d2 . d3 != 0", f.d))?;
        f.complex.chain_complex().map_err(|e| e.to_string())?;
    }
    Ok("d2 . d3 = 0 for all three complexes".into())
}

fn det_big(m: &[Vec<BigInt>]) -> BigInt {
    // Bareiss elimination
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// `D_k`: gcd of all `k x k` minors.
fn determinantal_divisors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let (r, c) = (m.len(), m[0].len());
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect();
                g = g.gcd(&det_big(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

fn c7_snf() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut deficient = 0;
    for trial in 0..500 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let bound = if trial % 3 == 0 { 3 } else { 20 };
        let mut m: Vec<Vec<BigInt>> =
            (0..r).map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()).collect();
        if r > 1 && rng.gen_bool(0.25) {
            let (a, b) = (rng.gen_range(0..r), rng.gen_range(0..r));
            m[a] = m[b].clone();
        }
        let snf = smith_normal_form(&m);
        let fail = |what: &str| format!("trial {trial} ({r}x{c}): {what}");
        ensure(matmul(&matmul(&snf.u, &m), &snf.v) == snf.s, || fail("U m V != S"))?;
        ensure(det_big(&snf.u).abs().is_one() && det_big(&snf.v).abs().is_one(), || fail("U or V not unimodular"))?;
        let diagonal = snf.s.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
        ensure(diagonal, || fail("S is not diagonal"))?;
        let f = snf.invariant_factors();
        ensure(f.iter().all(|x| x.is_positive()), || fail("negative invariant factor"))?;
        ensure(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])), || fail("divisibility chain broken"))?;
        let dd = determinantal_divisors(&m);
        ensure(dd.len() == f.len(), || fail("rank differs from the minors"))?;
        let mut prev = BigInt::one();
        for (k, d) in dd.iter().enumerate() {
            ensure((d / &prev) == f[k], || fail("invariant factor differs from D_k / D_(k-1)"))?;
            prev = d.clone();
        }
        deficient += usize::from(f.len() < r.min(c));
    }
    Ok(format!("500 matrices ({deficient} rank-deficient)"))
}

fn c8_solomon_tits() -> Check {
    let mut parts = Vec::new();
    for (n, q) in [(2usize, 2u32), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let b = tits_building(n, q).map_err(|e| e.to_string())?;
        let c = b.order_complex();
        let rank = (q as usize).pow((n * (n - 1) / 2) as u32);
        for k in -1..=(n as i64) {
            let h = c.reduced_homology(k);
            let want = if k == n as i64 - 2 { HomologyGroup::free(rank) } else { HomologyGroup::zero() };
            ensure(h == want, || format!("T_{n}(F_{q}): reduced H_{k} = {h}, expected {want}"))?;
        }
        parts.push(format!("({n},{q}):{rank}"));
    }
    Ok(parts.join(" "))
}

fn c9_alpha() -> Check {
    let mut parts = Vec::new();
    for (n, q) in [(2usize, 2u32), (2, 3), (3, 2)] {
        let r = alpha_report(n, q).map_err(|e| e.to_string())?;
        let st = tits_building(n, q).map_err(|e| e.to_string())?.steinberg_rank();
        ensure(r.image_rank == st, || format!("({n},{q}): image rank {} vs Steinberg rank {st}", r.image_rank))?;
        parts.push(format!("({n},{q}):{}/{st}", r.image_rank));
    }
    Ok(parts.join(" "))
}

fn c10_lemma() -> Check {
    let r = lemma_oracle(50, 2024).map_err(|e| e.to_string())?;
    ensure(r.trials == 50 && r.all_agree(), || format!("disagreements on trials {:?}", r.failures))?;
    ensure(r.nonzero_comparisons > 0, || "every comparison was between zero groups".into())?;
    Ok(format!("{}/{} agree ({} nonzero comparisons)", r.agreements, r.trials, r.nonzero_comparisons))
}

fn c11_connectivity() -> Check {
    for q in [2, 3, 4] {
        let f = frame_complex(2, FiniteRing::field(q).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(f.b.is_connected(), || format!("B_2(F_{q}) is disconnected"))?;
    }
    let f = frame_complex(3, FiniteRing::field(2).unwrap()).map_err(|e| e.to_string())?;
    ensure(f.b.reduced_homology(0).is_zero(), || "reduced H_0(B_3(F_2)) != 0".into())?;
    ensure(f.b_prime.reduced_homology(0).is_zero(), || "reduced H_0(B'_3(F_2)) != 0".into())?;
    Ok("B_2(F_2), B_2(F_3), B_2(F_4) connected; reduced H_0 of B_3(F_2), B'_3(F_2) vanish".into())
}

fn c12_census() -> Check {
    let c = truncated_b2_components(QuadField::new(-43).unwrap(), 5);
    let text = c.to_string();
    ensure(text.contains("evidence, not proof"), || "banner missing".into())?;
    ensure(c.components() >= 1, || "no components reported".into())?;
    Ok(format!("observed {} component(s) on {} vertices (non-gating)", c.components(), c.vertices))
}

fn run(id: usize, name: &str, f: impl FnOnce() -> Check) -> bool {
    let t = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
    let secs = t.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("PASS {id:>2} {name}: {detail} [{secs:.2}s]");
            true
        }
        Err(why) => {
            println!("FAIL {id:>2} {name}: {why} [{secs:.2}s]");
            false
        }
    }
}

fn main() {
    let fields: std::result::Result<Vec<Field>, String> = [-43, -67, -163].into_iter().map(compute).collect();
    let with = |f: fn(&[Field]) -> Check| {
        let fields = &fields;
        move || fields.as_ref().map_err(Clone::clone).and_then(|v| f(v))
    };
    let results = [
        run(1, "perfect-form counts", with(c1_counts)),
        run(2, "polytope shapes", with(c2_shapes)),
        run(3, "cell-orbit counts", with(c3_orbits)),
        run(4, "d=-43 facet golden", c4_facets),
        run(5, "Voronoi homology", with(c5_homology)),
        run(6, "boundary squares to zero", with(c6_boundary)),
        run(7, "Smith normal form suite", c7_snf),
        run(8, "Solomon-Tits at desk scale", c8_solomon_tits),
        run(9, "alpha surjectivity", c9_alpha),
        run(10, "single-support lemma oracle", c10_lemma),
        run(11, "connectivity instances", c11_connectivity),
        run(12, "truncated B2 census", c12_census),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
