//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use lemnis_core::corpus::{random_non_power, random_poly, reducibility_corpus, Instance};
use lemnis_core::monodromy::{component_count, escaping_branch_counts};
use lemnis_core::separated::{
    build_real_form, build_separated, explicit_factors, germ_branch_count, infinity_incidence, multiply_all,
    proportionality_report, Axis, NumericBiPoly,
};
use lemnis_core::tracer::{component_count_numeric, trace_lemniscate, CurveSet};
use lemnis_core::{decide_reducibility, extract_power_form, max_power_exponent, GaussianRational, UniPoly};
use num::complex::Complex64;
use num::integer::gcd;
use num::{BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 200;
const MAX_DEGREE: usize = 6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

// ---------------------------------------------------------------------------
// Test-side oracles

/// Whether `p` is a d-th power over C, by solving for the monic root's
/// coefficients from the top down and expanding back.
fn is_dth_power(p: &UniPoly, d: usize) -> bool {
    let total = p.degree().expect("non-constant");
    if !total.is_multiple_of(d) {
        return false;
    }
    let n = total / d;
    let m = p.monic();
    let mut b = vec![GaussianRational::zero(); n + 1];
    b[n] = GaussianRational::from(1);
    let inv_d = GaussianRational::from(d as i64).inv().unwrap();
    for k in 1..=n {
        let partial = UniPoly::new(p.var(), b.clone()).pow(d as u32);
        let residual = &m.coeff(total - k) - &partial.coeff(total - k);
        b[n - k] = &residual * &inv_d;
    }
    UniPoly::new(p.var(), b).pow(d as u32) == m
}

fn power_oracle(p: &UniPoly) -> usize {
    let n = p.degree().expect("non-constant");
    (1..=n).rev().find(|&d| is_dth_power(p, d)).expect("d = 1 always works")
}

/// `P(z)Q(w) - 1` from float coefficients.
fn separated_oracle(p: &UniPoly, q: &UniPoly) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> =
        p.coeffs().iter().map(|a| q.coeffs().iter().map(|b| a.to_complex() * b.to_complex()).collect()).collect();
    out[0][0] -= 1.0;
    out
}

fn convolve(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let cols = |m: &[Vec<Complex64>]| m.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![vec![Complex64::zero(); cols(a) + cols(b) - 1]; a.len() + b.len() - 1];
    for (i, ra) in a.iter().enumerate() {
        for (j, x) in ra.iter().enumerate() {
            for (k, rb) in b.iter().enumerate() {
                for (l, y) in rb.iter().enumerate() {
                    out[i + k][j + l] += x * y;
                }
            }
        }
    }
    out
}

fn max_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    let get = |m: &[Vec<Complex64>], i: usize, j: usize| m.get(i).and_then(|r| r.get(j)).copied().unwrap_or_default();
    let rows = a.len().max(b.len());
    let cols = a.iter().chain(b).map(Vec::len).max().unwrap_or(0);
    let mut worst = 0.0f64;
    for i in 0..rows {
        for j in 0..cols {
            worst = worst.max((get(a, i, j) - get(b, i, j)).norm());
        }
    }
    worst
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c)
}

fn distance_to_polylines(c: &CurveSet, x: f64, y: f64) -> f64 {
    let mut best = f64::INFINITY;
    for line in &c.polylines {
        for seg in line.windows(2) {
            let ((ax, ay), (bx, by)) = (seg[0], seg[1]);
            let (dx, dy) = (bx - ax, by - ay);
            let len2 = dx * dx + dy * dy;
            let t = if len2 == 0.0 { 0.0 } else { (((x - ax) * dx + (y - ay) * dy) / len2).clamp(0.0, 1.0) };
            let (px, py) = (ax + t * dx, ay + t * dy);
            best = best.min(((x - px).powi(2) + (y - py).powi(2)).sqrt());
        }
    }
    best
}

/// Hausdorff distance between two traces, over vertices and segments.
fn hausdorff(a: &CurveSet, b: &CurveSet) -> f64 {
    let one_way = |from: &CurveSet, to: &CurveSet| {
        from.vertices().map(|(x, y)| distance_to_polylines(to, x, y)).fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

// ---------------------------------------------------------------------------
// Criteria

fn decision_oracle_agreement(corpus: &[Instance]) -> Outcome {
    let start = Instant::now();
    let results: Vec<Result<(usize, usize), String>> = corpus
        .par_iter()
        .map(|inst| {
            let expected = gcd(power_oracle(&inst.p), power_oracle(&inst.q));
            let decided = decide_reducibility(&inst.p, &inst.q).map_err(|e| e.to_string())?.d;
            let cert =
                component_count(&inst.p, &inst.q, 42).map_err(|e| format!("P = {}, Q = {}: {e}", inst.p, inst.q))?;
            if decided != expected || inst.planted.is_some_and(|d| d != expected) {
                return Err(format!("decision {decided} vs oracle {expected} for P = {}, Q = {}", inst.p, inst.q));
            }
            Ok((cert.orbit_count, expected))
        })
        .collect();
    let elapsed = start.elapsed();
    let mut mismatches = Vec::new();
    let mut reducible = 0;
    for r in &results {
        match r {
            Ok((orbits, d)) if orbits == d => reducible += usize::from(*d > 1),
            Ok((orbits, d)) => mismatches.push(format!("orbit_count {orbits} vs d {d}")),
            Err(e) => mismatches.push(e.clone()),
        }
    }
    let in_time = elapsed < Duration::from_secs(300);
    outcome(
        mismatches.is_empty() && in_time && corpus.len() >= 200,
        format!(
            "{}/{} instances agree ({reducible} reducible), {:.1}s{}",
            results.len() - mismatches.len(),
            results.len(),
            elapsed.as_secs_f64(),
            mismatches.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    )
}

fn factors_multiply_back(corpus: &[Instance]) -> Outcome {
    let planted: Vec<&Instance> =
        corpus.iter().filter(|i| i.planted.is_some() && i.p.degree().unwrap() + i.q.degree().unwrap() <= 8).collect();
    let mut worst = 0.0f64;
    let mut failures = 0;
    for inst in &planted {
        let expected = separated_oracle(&inst.p, &inst.q);
        let factors = match explicit_factors(&inst.p, &inst.q) {
            Ok(f) => f,
            Err(_) => {
                failures += 1;
                continue;
            }
        };
        let coeffs = |g: &NumericBiPoly| g.coeffs().to_vec();
        let product = factors.iter().skip(1).fold(coeffs(&factors[0]), |acc, g| convolve(&acc, &coeffs(g)));
        let (dp, dq) = (inst.p.degree().unwrap(), inst.q.degree().unwrap());
        let lead = expected[dp][dq].norm();
        let residual = max_diff(&product, &expected) / lead;
        let exact_matches = build_separated(&inst.p, &inst.q).unwrap().to_numeric().coeffs().to_vec();
        let library = max_diff(multiply_all(&factors).unwrap().coeffs(), &exact_matches) / lead;
        worst = worst.max(residual).max(library);
        if factors.len() != inst.planted.unwrap()
            || residual.is_nan()
            || residual >= 1e-8
            || library.is_nan()
            || library >= 1e-8
        {
            failures += 1;
        }
    }
    outcome(
        failures == 0 && !planted.is_empty(),
        format!("{} planted instances, worst normalized residual {worst:.2e} (< 1e-8)", planted.len()),
    )
}

fn real_form_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nonreal = 0;
    let mut worst_scaled = 0.0f64;
    let mut worst_plain = 0.0f64;
    let mut exact_failures = 0;
    for _ in 0..100 {
        let deg = rng.gen_range(1..=10);
        let p = random_poly(&mut rng, "z", deg);
        let f = build_real_form(&p).unwrap();
        if !f.coeffs().iter().flatten().all(|c| c.im().is_zero()) {
            nonreal += 1;
        }
        let pc = p.to_complex_coeffs();
        let fr: Vec<Vec<f64>> = f.coeffs().iter().map(|r| r.iter().map(|c| c.to_complex().re).collect()).collect();
        for _ in 0..20 {
            let (x, y): (f64, f64) = (rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let modulus = horner(&pc, Complex64::new(x, y)).norm_sqr() - 1.0;
            let (mut value, mut scale) = (0.0, 0.0);
            for (i, row) in fr.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    let t = c * x.powi(i as i32) * y.powi(j as i32);
                    value += t;
                    scale += t.abs();
                }
            }
            let err = (value - modulus).abs();
            worst_scaled = worst_scaled.max(err / scale.max(1.0));
            worst_plain = worst_plain.max(err / modulus.abs().max(1.0));
        }
        // Exact check at one Gaussian-rational point.
        let (xr, yr) = (
            BigRational::new(rng.gen_range(-9..=9).into(), 4.into()),
            BigRational::new(rng.gen_range(-9..=9).into(), 5.into()),
        );
        let pv = p.eval(&GaussianRational::new(xr.clone(), yr.clone()));
        let expected = &(&pv * &pv.conj()) - &GaussianRational::from(1);
        let (xg, yg) = (GaussianRational::real(xr), GaussianRational::real(yr));
        let got = f.coeffs().iter().rev().fold(GaussianRational::zero(), |acc, row| {
            let inner = row.iter().rev().fold(GaussianRational::zero(), |s, c| &(&s * &yg) + c);
            &(&acc * &xg) + &inner
        });
        if got != expected {
            exact_failures += 1;
        }
    }
    outcome(
        nonreal == 0 && exact_failures == 0 && worst_scaled <= 1e-9 && worst_plain <= 1e-9,
        format!(
            "100 polynomials: {nonreal} with nonzero imaginary parts, {exact_failures} exact-point mismatches, \
             worst error {worst_plain:.2e} relative to max(1, |value|), {worst_scaled:.2e} relative to the evaluation scale (both <= 1e-9)"
        ),
    )
}

fn incidence_proportionality(corpus: &[Instance]) -> Outcome {
    let planted: Vec<&Instance> = corpus.iter().filter(|i| i.planted.is_some()).collect();
    let failures: Vec<String> = planted
        .par_iter()
        .filter_map(|inst| {
            let d = inst.planted.unwrap();
            let (dp, dq) = (inst.p.degree().unwrap(), inst.q.degree().unwrap());
            let check = || -> Result<(), String> {
                let f = build_separated(&inst.p, &inst.q).map_err(|e| e.to_string())?;
                let l1 = infinity_incidence(&f, Axis::L1).map_err(|e| e.to_string())?;
                let l2 = infinity_incidence(&f, Axis::L2).map_err(|e| e.to_string())?;
                if (l1.total(), l2.total()) != (dp, dq) {
                    return Err(format!("symbolic sums ({}, {})", l1.total(), l2.total()));
                }
                let factors = explicit_factors(&inst.p, &inst.q).map_err(|e| e.to_string())?;
                let mut sums = (0, 0);
                for g in &factors {
                    sums.0 += infinity_incidence(g, Axis::L1).map_err(|e| e.to_string())?.total();
                    sums.1 += infinity_incidence(g, Axis::L2).map_err(|e| e.to_string())?.total();
                }
                if sums != (dp, dq) {
                    return Err(format!("numeric factor sums {sums:?}"));
                }
                let rest = multiply_all(&factors[1..]).unwrap();
                let halves = [&factors[0], &rest];
                let inc: Vec<_> = halves
                    .iter()
                    .map(|g| (infinity_incidence(*g, Axis::L1).unwrap(), infinity_incidence(*g, Axis::L2).unwrap()))
                    .collect();
                let bideg: Vec<_> = halves.iter().map(|g| g.bidegree().unwrap()).collect();
                let r = proportionality_report(&inc, &bideg).map_err(|e| e.to_string())?;
                if !r.consistent || r.d != d {
                    return Err(format!("report consistent = {}, d = {}", r.consistent, r.d));
                }
                for (splits, exact, a) in [(&r.l1, &l1, &r.a), (&r.l2, &l2, &r.b)] {
                    if splits.len() != exact.points.len() {
                        return Err("point count differs".into());
                    }
                    for (s, aj) in splits.iter().zip(a) {
                        let pj = exact
                            .points
                            .iter()
                            .min_by(|x, y| {
                                (x.location - s.location).norm().total_cmp(&(y.location - s.location).norm())
                            })
                            .unwrap()
                            .multiplicity;
                        if pj != s.first + s.second || pj != aj * d {
                            return Err(format!("p_j = {pj} vs {} + {} vs {aj}·{d}", s.first, s.second));
                        }
                    }
                }
                Ok(())
            };
            check().err().map(|e| format!("P = {}, Q = {}: {e}", inst.p, inst.q))
        })
        .collect();
    outcome(
        failures.is_empty() && !planted.is_empty(),
        format!(
            "{}/{} planted instances reproduce p_j = p'_j + p''_j = a_j·d{}",
            planted.len() - failures.len(),
            planted.len(),
            failures.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    )
}

fn germ_branch_counts(corpus: &[Instance]) -> Outcome {
    let results: Vec<(usize, Vec<String>)> = corpus
        .par_iter()
        .map(|inst| {
            let mut errs = Vec::new();
            let f = build_separated(&inst.p, &inst.q).unwrap();
            let inc = infinity_incidence(&f, Axis::L1).unwrap();
            let q = inst.q.degree().unwrap();
            let centers: Vec<Complex64> = inc.points.iter().map(|pt| pt.location).collect();
            let numeric = match escaping_branch_counts(&inst.p, &inst.q, &centers) {
                Ok(n) => n,
                Err(e) => {
                    errs.push(format!("P = {}, Q = {}: {e}", inst.p, inst.q));
                    return (inc.points.len(), errs);
                }
            };
            for (j, (pt, n)) in inc.points.iter().zip(numeric).enumerate() {
                let formula = gcd(q, pt.multiplicity);
                let library = germ_branch_count(&inst.p, &inst.q, j).ok();
                if n != formula || library != Some(formula) {
                    errs.push(format!(
                        "P = {}, Q = {}, point {j}: numeric {n}, gcd {formula}, library {library:?}",
                        inst.p, inst.q
                    ));
                }
            }
            (inc.points.len(), errs)
        })
        .collect();
    let points: usize = results.iter().map(|r| r.0).sum();
    let errs: Vec<&String> = results.iter().flat_map(|r| &r.1).collect();
    let bad_instances = results.iter().filter(|r| !r.1.is_empty()).count();
    outcome(
        errs.is_empty(),
        format!(
            "{}/{} instances, {points} incidence points, {} disagreements{}",
            corpus.len() - bad_instances,
            corpus.len(),
            errs.len(),
            errs.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    )
}

fn power_detection() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut failures = 0;
    let mut proper_powers = 0;
    for k in 0..500 {
        let d = rng.gen_range(1..=4usize);
        // Every other A is itself a planted power so d_max(A) > 1 occurs.
        let a = if k % 2 == 0 {
            let deg = rng.gen_range(1..=5);
            random_poly(&mut rng, "z", deg)
        } else {
            let e = rng.gen_range(2..=5usize);
            let deg = rng.gen_range(1..=(5 / e).max(1));
            random_non_power(&mut rng, "z", deg).pow(e as u32)
        };
        let ad = a.pow(d as u32);
        let da = power_oracle(&a);
        proper_powers += usize::from(da > 1);
        let ok = max_power_exponent(&a).ok() == Some(da)
            && max_power_exponent(&ad).ok() == Some(d * da)
            && power_oracle(&ad) == d * da
            && extract_power_form(&ad, d).map(|f| f.reconstruct()).ok().as_ref() == Some(&ad)
            && extract_power_form(&ad, d * da).map(|f| f.reconstruct()).ok().as_ref() == Some(&ad);
        failures += usize::from(!ok);
    }
    outcome(failures == 0, format!("{}/500 cases ({proper_powers} with d_max(A) > 1)", 500 - failures))
}

fn tracer() -> Outcome {
    let z = UniPoly::from_ints("z", &[0, 1]);
    let lin = trace_lemniscate(&z, 256).unwrap();
    let cell = lin.cell_size().0.max(lin.cell_size().1);
    let to_circle = lin.vertices().map(|(x, y)| ((x * x + y * y).sqrt() - 1.0).abs()).fold(0.0, f64::max);
    let from_circle = (0..2048)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / 2048.0;
            distance_to_polylines(&lin, t.cos(), t.sin())
        })
        .fold(0.0, f64::max);
    let h_circle = to_circle.max(from_circle);
    let cassini = trace_lemniscate(&UniPoly::from_ints("z", &[-2, 0, 1]), 256).unwrap();
    let square = trace_lemniscate(&UniPoly::from_ints("z", &[0, 0, 1]), 256).unwrap();
    let h_square = hausdorff(&lin, &square);
    let counts = (component_count_numeric(&lin), component_count_numeric(&cassini), component_count_numeric(&square));
    outcome(
        counts == (1, 2, 1) && h_circle < 2.0 * cell && h_square < 2.0 * cell,
        format!(
            "components z: {}, z^2-2: {}, z^2: {}; Hausdorff to unit circle {:.3} cells, z^2 vs z {:.3} cells",
            counts.0,
            counts.1,
            counts.2,
            h_circle / cell,
            h_square / cell
        ),
    )
}

fn determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_lemnis");
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut details = Vec::new();
    let mut pass = true;
    for name in ["cubes", "cubic_quadratic", "planted_fourth"] {
        let p = corpus.join(format!("{name}.p.json"));
        let q = corpus.join(format!("{name}.q.json"));
        let runs: Vec<_> = (0..3)
            .map(|_| {
                Command::new(exe)
                    .args(["verify", "--p", p.to_str().unwrap(), "--q", q.to_str().unwrap(), "--seed", "42"])
                    .output()
                    .expect("binary runs")
            })
            .collect();
        let same = runs.iter().all(|r| r.stdout == runs[0].stdout && r.status.code() == Some(0));
        pass &= same && !runs[0].stdout.is_empty();
        details.push(format!("{name}: {}", if same { "identical" } else { "differs" }));
    }
    outcome(pass, format!("3 runs each, {}", details.join(", ")))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let corpus = reducibility_corpus(CORPUS_SEED, CORPUS_SIZE, MAX_DEGREE);
    let criteria: Vec<Criterion> = vec![
        ("1 decision vs monodromy orbits", Box::new(|| decision_oracle_agreement(&corpus))),
        ("2 explicit factors multiply back", Box::new(|| factors_multiply_back(&corpus))),
        ("3 real form exactness", Box::new(real_form_exactness)),
        ("4 incidence and proportionality", Box::new(|| incidence_proportionality(&corpus))),
        ("5 germ branch counts", Box::new(|| germ_branch_counts(&corpus))),
        ("6 power detection", Box::new(power_detection)),
        ("7 lemniscate tracer", Box::new(tracer)),
        ("8 verify determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let o = check();
        failed += usize::from(!o.pass);
        println!(
            "[{}] criterion {name}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
