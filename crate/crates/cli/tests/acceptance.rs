//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use segre_core::cohomo::{self, TwistInterval, TwistedFactorList};
use segre_core::oracle::{self, TruncatedAlgebra, Verdict};
use segre_core::series::{HilbertSeries, DEFAULT_GUARD};
use segre_core::toric::ToricPresentation;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

/// Golden counterexample through the command-line entry point.
fn golden_counterexample() -> Outcome {
    let start = Instant::now();
    let out = segre_cli::run([
        "segre", "oracle", "friendly", "--ring1", "x:3", "--ring2", "y:2", "--shift1", "2",
        "--shift2", "1", "--window", "-6..6",
    ]);
    let elapsed = start.elapsed();
    check(out.code == 0, || {
        format!("exit {} ({})", out.code, out.stderr.trim())
    })?;
    let v: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    check(v["left"]["nonzero"] == json!({"1": 1, "2": 1}), || {
        format!("left {}", v["left"]["nonzero"])
    })?;
    check(v["right"]["nonzero"] == json!({"2": 1}), || {
        format!("right {}", v["right"]["nonzero"])
    })?;
    check(v["verdict"] == "not_friendly_certified", || {
        format!("verdict {}", v["verdict"])
    })?;
    check(v["exact"] == true, || "not exact".into())?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "left {{1:1, 2:1}}, right {{2:1}}, exact, {elapsed:.2?}"
    ))
}

fn sorted_desc(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Every non-increasing vector of length `m` with entries in `lo..=hi`.
fn non_increasing(m: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for tail in non_increasing(m - 1, lo, hi) {
        let floor = tail.first().copied().unwrap_or(lo);
        for x in floor..=hi {
            let mut v = vec![x];
            v.extend(&tail);
            out.push(v);
        }
    }
    out
}

/// Vectors the equivalence sweep runs on: 1200 seeded random ones and the
/// exhaustive small grid.
fn sweep_vectors() -> Vec<Vec<i64>> {
    let mut rng = StdRng::seed_from_u64(0x5e9e);
    let mut vectors: Vec<Vec<i64>> = (0..1200)
        .map(|_| {
            let m = rng.gen_range(1..=6);
            sorted_desc((0..m).map(|_| rng.gen_range(-10..=10)).collect())
        })
        .collect();
    for m in 1..=3 {
        vectors.extend(non_increasing(m, -4, 4));
    }
    // 9 + 45 + 165 exhaustive vectors
    assert_eq!(vectors.len(), 1200 + 219);
    vectors
}

fn criterion_equivalence() -> Outcome {
    let start = Instant::now();
    let vectors = sweep_vectors();
    let mut cases = 0usize;
    let mut discrepancies = Vec::new();
    for rhos in &vectors {
        for a in -10..=10 {
            cases += 1;
            let chain = cohomo::cm_uniform_twist(rhos, a).map_err(|e| e.to_string())?;
            let raw = cohomo::cm_uniform_twist_raw(rhos, a).map_err(|e| e.to_string())?;
            if chain != raw {
                discrepancies.push(format!("{rhos:?} a={a}: chain {chain}, raw {raw}"));
            }
            if a != 0 && a != 1 {
                let ratio = cohomo::cm_chain(rhos, a).map_err(|e| e.to_string())?;
                if ratio != chain {
                    discrepancies.push(format!(
                        "{rhos:?} a={a}: chain {chain}, ratio chain {ratio}"
                    ));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    check(discrepancies.is_empty(), || {
        format!(
            "{} discrepancies, first {}",
            discrepancies.len(),
            discrepancies[0]
        )
    })?;
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "{} vectors, {cases} cases, 0 discrepancies, {elapsed:.2?}",
        vectors.len()
    ))
}

fn criterion_depth_grid() -> Outcome {
    let mut cases = 0;
    for r in 2..=4 {
        for s in 2..=4 {
            for alpha in -5..=-1 {
                for beta in -5..=-1 {
                    for a in -6..=6 {
                        for b in -6..=6 {
                            cases += 1;
                            let list = TwistedFactorList::new(&[r, s], &[alpha, beta], &[a, b])
                                .map_err(|e| e.to_string())?;
                            let support =
                                cohomo::cohomology_support(&list).map_err(|e| e.to_string())?;
                            let closed = cohomo::prop_depth_m2(r, s, alpha, beta, a, b)
                                .map_err(|e| e.to_string())?;
                            check(
                                support.depth == closed.depth && support.is_cm == closed.is_cm,
                                || {
                                    format!(
                                    "r={r} s={s} a-inv=({alpha},{beta}) shifts=({a},{b}): support depth {} vs closed form {}",
                                    support.depth, closed.depth
                                )
                                },
                            )?;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{cases} grid points, 0 discrepancies"))
}

fn criterion_interval() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x1a7e);
    let mut vectors: Vec<Vec<i64>> = vec![
        vec![3, 3],
        vec![5],
        vec![2, 2, 2],
        vec![4, 2],
        vec![9, 3, 1],
        vec![6, 3],
    ];
    while vectors.len() < 250 {
        let m = rng.gen_range(1..=5);
        vectors.push(sorted_desc((0..m).map(|_| rng.gen_range(1..=12)).collect()));
    }
    let (mut all_integers, mut only_zero_one) = (0, 0);
    for rhos in &vectors {
        let interval = cohomo::cm_twist_interval(rhos).map_err(|e| e.to_string())?;
        let scan: Vec<i64> = (-50..=50)
            .filter(|&a| cohomo::cm_uniform_twist(rhos, a).expect("sorted input"))
            .collect();
        let predicted: Vec<i64> = match interval.integer_points() {
            None => (-50..=50).collect(),
            Some(points) => points,
        };
        check(scan == predicted, || {
            format!("{rhos:?}: interval {predicted:?}, scan {scan:?}")
        })?;
        if interval == TwistInterval::AllIntegers {
            all_integers += 1;
        }
        if scan == [0, 1] {
            only_zero_one += 1;
        }
    }
    check(all_integers > 0 && only_zero_one > 0, || {
        "missing the all-integers or {0,1} case".into()
    })?;
    let four_two = cohomo::cm_twist_interval(&[4, 2]).map_err(|e| e.to_string())?;
    check(four_two.integer_points() == Some(vec![0, 1]), || {
        format!("(4,2) gives {four_two:?}")
    })?;
    Ok(format!(
        "{} vectors; {all_integers} all-integer, {only_zero_one} exactly {{0,1}}",
        vectors.len()
    ))
}

fn criterion_anticanonical() -> Outcome {
    let mut cases = 0;
    for rho1 in 1..=10 {
        for rho2 in 1..=rho1 {
            cases += 1;
            let closed = cohomo::anticanonical_cm_m2(-rho1, -rho2);
            let chain = cohomo::cm_uniform_twist(&[rho1, rho2], -1).map_err(|e| e.to_string())?;
            check(closed == chain, || {
                format!("({rho1},{rho2}): closed form {closed}, chain {chain}")
            })?;
        }
    }
    Ok(format!("{cases} pairs agree"))
}

fn criterion_toric_census() -> Outcome {
    let i2 = ToricPresentation::identity(2);
    let segre = i2.segre(&i2);
    let counts = segre.census(6, None).map_err(|e| e.to_string())?.counts();
    let expected: Vec<usize> = (0..=6).map(|n| (n + 1) * (n + 1)).collect();
    check(counts == expected, || format!("census {counts:?}"))?;

    let plane = HilbertSeries::polynomial_ring(2);
    let product = plane
        .hadamard(&plane, DEFAULT_GUARD)
        .map_err(|e| e.to_string())?;
    let target = HilbertSeries::from_i64_terms(&[(0, 1), (1, 1)], 3);
    check(product == target, || format!("hadamard {product}"))?;
    let window = product.window(0, 6).map_err(|e| e.to_string())?;
    let from_census: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
    check(window.values == from_census, || {
        "series window differs from census".into()
    })?;

    let kernel = segre.kernel_lattice();
    let generator: Vec<BigInt> = [1, -1, -1, 1].iter().map(|&x| BigInt::from(x)).collect();
    let negated: Vec<BigInt> = generator.iter().map(|x| -x).collect();
    check(kernel.rank() == 1, || {
        format!("kernel rank {}", kernel.rank())
    })?;
    check(
        kernel.vectors[0] == generator || kernel.vectors[0] == negated,
        || format!("kernel generator {:?}", kernel.vectors[0]),
    )?;
    Ok("counts (n+1)^2 to n=6, (1+t)/(1-t)^3, kernel ±(1,-1,-1,1)".into())
}

fn random_presentation(rng: &mut StdRng) -> ToricPresentation {
    loop {
        let r = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=4);
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=3)).collect())
            .collect();
        if let Ok(p) = ToricPresentation::validate(rows) {
            return p;
        }
    }
}

fn criterion_census_law() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xce75);
    for case in 0..20 {
        let (p, q) = (random_presentation(&mut rng), random_presentation(&mut rng));
        let cp = p.census(5, None).map_err(|e| e.to_string())?.counts();
        let cq = q.census(5, None).map_err(|e| e.to_string())?.counts();
        let cs = p
            .segre(&q)
            .census(5, None)
            .map_err(|e| e.to_string())?
            .counts();
        let product: Vec<usize> = cp.iter().zip(&cq).map(|(x, y)| x * y).collect();
        check(cs == product, || {
            format!(
                "case {case}: {:?} x {:?}: segre {cs:?}, product {product:?}",
                p.rows(),
                q.rows()
            )
        })?;
    }
    Ok("20 random pairs, census of Segre = product up to N=5".into())
}

fn criterion_toric_duality() -> Outcome {
    let i2 = ToricPresentation::identity(2);
    let plane_counts = i2.census(12, None).map_err(|e| e.to_string())?.counts();
    let plane_dim = |k: i64| if k < 0 { 0 } else { plane_counts[k as usize] };
    let mut notes = Vec::new();
    for a in 1..=2i64 {
        let top = oracle::suggested_truncation(-a, 0, 4, 4);
        let t = Arc::new(TruncatedAlgebra::from_toric(&i2, top, None).map_err(|e| e.to_string())?);
        let w = oracle::friendliness_witness(&t, &t, -a, 0, -4, 4).map_err(|e| e.to_string())?;
        let mut compared = 0;
        for d in &w.left.degrees {
            if !d.status.is_conclusive() {
                continue;
            }
            compared += 1;
            // (R(a) # S)_i = R_{i+a} (x) S_i
            let expected = plane_dim(d.degree + a) * plane_dim(d.degree);
            check(d.dim == expected, || {
                format!(
                    "a={a}, degree {}: hom {} vs census {expected}",
                    d.degree, d.dim
                )
            })?;
        }
        check(compared > 0, || format!("a={a}: no conclusive degree"))?;
        check(w.verdict == Verdict::Consistent, || {
            format!("a={a}: verdict {}", w.verdict.as_str())
        })?;
        notes.push(format!("a={a}: {compared}/9 degrees"));
    }
    Ok(notes.join(", "))
}

fn criterion_dual_and_ring_cm() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xd0a1);
    for _ in 0..100 {
        let m = rng.gen_range(1..=8);
        let shifts: Vec<i64> = (0..m).map(|_| rng.gen_range(-1000..=1000)).collect();
        let back = cohomo::dual_shift(&cohomo::dual_shift(&shifts));
        check(back == shifts, || format!("{shifts:?} -> {back:?}"))?;
    }
    let mut cm_cases = 0;
    for rhos in sweep_vectors().iter().filter(|r| r.len() >= 2) {
        for a in -10..=10 {
            if cohomo::cm_uniform_twist(rhos, a).map_err(|e| e.to_string())? {
                cm_cases += 1;
                let last = *rhos.last().expect("m >= 2");
                check(last > 0, || {
                    format!("{rhos:?} a={a} is CM with rho_m = {last}")
                })?;
            }
        }
    }
    Ok(format!(
        "100 involutions; {cm_cases} CM cases with m >= 2 all have rho_m > 0"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("golden counterexample", golden_counterexample),
        ("criterion equivalence sweep", criterion_equivalence),
        ("depth closed form on full grid", criterion_depth_grid),
        ("twist interval law", criterion_interval),
        ("anticanonical m=2 consistency", criterion_anticanonical),
        ("toric Segre census", criterion_toric_census),
        ("census-Hadamard law", criterion_census_law),
        ("toric Segre duality", criterion_toric_duality),
        ("dual involution and ring CM", criterion_dual_and_ring_cm),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
