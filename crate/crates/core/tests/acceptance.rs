//! Acceptance suite. One line per criterion; exits nonzero if any fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use octobil::bounds::{admissible, bounds_table, corollary_sections, Registry, VerifyPolicy};
use octobil::maps::codomain_change_of_basis;
use octobil::restriction::{format_newnbl_table, image_span, newnbl_table};
use octobil::scalar::{self, Scalar};
use octobil::verify::{
    find_kernel_pair, fuzz_nonsingularity, margin_estimate, rank_profile, verify_not_in_image, Side, Strategy,
};
use octobil::{builtin, BilinearMap, Element, Level};

const LAW_CASES: usize = 1000;
const LAW_BUDGET: Duration = Duration::from_secs(30);

const FUZZ_TRIALS: u64 = 10_000;
const FUZZ_BOUND: i64 = 5;
const FUZZ_SEED: u64 = 0xC0DA;
const FUZZ_BUDGET: Duration = Duration::from_secs(120);

const RANK_SAMPLES: u64 = 100;

const QUOTIENT_TRIALS: u64 = 1_000;
const AVOID_TRIALS: u64 = 100_000;
const AVOID_BOUND: i64 = 9;

const OCTONION_MARGIN_TOL: f64 = 1e-9;
const SINGULAR_MARGIN_MAX: f64 = 1e-6;
const MARGIN_REPRO_TOL: f64 = 1e-6;
const MARGIN_BUDGET: Duration = Duration::from_secs(60);

const BOUNDS_MAX: usize = 16;
const ADMISSIBLE_MAX: usize = 64;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_element(rng: &mut rand_chacha::ChaCha8Rng, level: Level) -> Element {
    Element::new(level, common::rationals(rng, level.dim())).unwrap()
}

fn algebra_laws() -> Check {
    let start = Instant::now();
    let mut rng = common::rng(1);
    for level in Level::ALL {
        let one = Element::one(level);
        for case in 0..LAW_CASES {
            let x = random_element(&mut rng, level);
            let y = random_element(&mut rng, level);
            let z = random_element(&mut rng, level);
            let xy = &x * &y;
            let xx = &x * &x;
            let fail = |law: &str| format!("{law} fails at level {level}, case {case}");
            ensure(xy.norm() == x.norm() * y.norm(), || fail("composition"))?;
            ensure(&x * &xy == &xx * &y, || fail("left alternative"))?;
            ensure(&(&y * &x) * &x == &y * &xx, || fail("right alternative"))?;
            ensure(&x * &(&y * &x) == &xy * &x, || fail("flexible"))?;
            ensure(xy.conj() == &y.conj() * &x.conj(), || fail("conjugation"))?;
            let two_re = Element::real(level, x.inner(&one).unwrap() * scalar::int(2));
            ensure(x.conj() == &two_re - &x, || fail("conj = 2<x,1> - x"))?;
            let polar = (&x + &y).norm() - x.norm() - y.norm();
            ensure(polar == x.inner(&y).unwrap() * scalar::int(2), || fail("polarization"))?;
            let basic = (&x.conj() * &xy).inner(&z).unwrap();
            ensure(basic == x.norm() * y.inner(&z).unwrap(), || fail("<conj(a)(ab),c> = |a|^2<b,c>"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < LAW_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{LAW_CASES} cases x 4 levels, exact"))
}

fn nonsingular_catalog() -> Vec<&'static str> {
    vec![
        "main_f",
        "f1",
        "f2",
        "f3",
        "lam_map",
        "adem_map",
        "real_mul",
        "complex_mul",
        "quaternion_mul",
        "octonion_mul",
    ]
}

fn fuzz_catalog() -> Check {
    let start = Instant::now();
    for id in nonsingular_catalog() {
        let f = builtin(id).unwrap();
        let rep = fuzz_nonsingularity(&f, FUZZ_TRIALS, FUZZ_SEED, FUZZ_BOUND).unwrap();
        ensure(rep.passed && rep.failure_count == 0, || format!("{id}: {} failures", rep.failure_count))?;
    }
    let c = builtin("commutator_map").unwrap();
    let rep = fuzz_nonsingularity(&c, FUZZ_TRIALS, FUZZ_SEED, FUZZ_BOUND).unwrap();
    let w = rep.failures.first().ok_or("commutator_map produced no witness")?;
    ensure(
        !scalar::is_zero_vec(&w.x) && !scalar::is_zero_vec(&w.y) && scalar::is_zero_vec(&c.evaluate(&w.x, &w.y).unwrap()),
        || "commutator witness does not re-verify".into(),
    )?;
    let elapsed = start.elapsed();
    ensure(elapsed < FUZZ_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "10 maps clean at {FUZZ_TRIALS} trials; commutator witness {:?}#{}",
        w.stage, w.index
    ))
}

fn rank_profiles() -> Check {
    let cases = [("main_f", 32, 32), ("f1", 24, 24), ("f2", 16, 32), ("f3", 32, 16)];
    let mut rng = common::rng(3);
    for (id, left, right) in cases {
        let f = builtin(id).unwrap();
        for (side, want) in [(Side::Left, left), (Side::Right, right)] {
            let rep = rank_profile(&f, side, RANK_SAMPLES, FUZZ_SEED, FUZZ_BOUND).unwrap();
            ensure(rep.passed && rep.min_rank_observed == Some(want), || {
                format!("{id} {side:?}: min rank {:?}, want {want}", rep.min_rank_observed)
            })?;
        }
        let (r, s, _) = f.dims();
        for _ in 0..3 {
            let x = common::to_scalars(&common::ints(&mut rng, r, 5));
            let y = common::to_scalars(&common::ints(&mut rng, s, 5));
            let l = common::rank_oracle(&f.fixed_left_matrix(&x).unwrap().to_rows());
            let rr = common::rank_oracle(&f.fixed_right_matrix(&y).unwrap().to_rows());
            ensure(l == left && rr == right, || format!("{id}: oracle ranks {l}/{rr}"))?;
        }
    }
    Ok(format!("{RANK_SAMPLES} samples per side; main_f 32/32, f1 24/24, f2 16/32, f3 32/16"))
}

fn image_spans() -> Check {
    let mut dims = Vec::new();
    for (id, want) in [("commutator_map", 7), ("main_f", 55), ("octonion_mul", 8)] {
        let f = builtin(id).unwrap();
        let got = image_span(&f).dimension;
        let oracle = common::rank_oracle(&f.as_tensor().basis_images());
        ensure(got == want && oracle == want, || format!("{id}: {got} (oracle {oracle}), want {want}"))?;
        dims.push(format!("{id}={got}"));
    }
    Ok(dims.join(", "))
}

fn restriction_table() -> Check {
    let rows = newnbl_table().unwrap();
    let expected = [
        ("r1", (24, 32, 47)),
        ("r2", (21, 29, 43)),
        ("r3", (19, 27, 41)),
        ("r4", (19, 31, 45)),
        ("r6", (29, 29, 51)),
        ("r7", (26, 26, 48)),
    ];
    for (label, dims) in expected {
        let row = rows.iter().find(|r| r.label == label).ok_or(format!("{label} missing"))?;
        ensure(row.computed == dims && row.matches, || format!("{label}: computed {:?}", row.computed))?;
    }
    let r5 = rows.iter().find(|r| r.label == "r5").ok_or("r5 missing")?;
    ensure(r5.claimed == (23, 27, 45), || "r5 tabulated value".into())?;
    ensure(!r5.matches && r5.computed != r5.claimed, || "r5 unexpectedly matches".into())?;
    let text = format_newnbl_table(&rows);
    ensure(text.lines().any(|l| l.contains("r5") && l.contains("MISMATCH")), || {
        "r5 discrepancy not reported in table output".into()
    })?;
    let mut fuzzed = 0;
    for row in &rows {
        let mut maps: Vec<&Arc<BilinearMap>> = vec![row.restricted.map()];
        maps.extend(row.alternatives.iter().map(|a| a.restricted.map()));
        for m in maps {
            let rep = fuzz_nonsingularity(m, FUZZ_TRIALS, FUZZ_SEED, FUZZ_BOUND).unwrap();
            ensure(rep.passed, || format!("{} failed fuzz", m.id()))?;
            fuzzed += 1;
        }
    }
    Ok(format!(
        "6 rows match; r5 computed {:?} vs tabulated {:?} reported; {fuzzed} restricted maps fuzzed",
        r5.computed, r5.claimed
    ))
}

fn corollary(registry: &Registry) -> Check {
    let want = [
        "47ξ_23 has 32 independent sections",
        "43ξ_20 has 29 independent sections",
        "41ξ_18 has 27 independent sections",
        "45ξ_18 has 31 independent sections",
        "45ξ_22 has 27 independent sections",
        "51ξ_28 has 29 independent sections",
    ];
    let got: Vec<String> = corollary_sections(registry).unwrap().iter().map(|e| e.to_string()).collect();
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("47ξ23/32 43ξ20/29 41ξ18/27 45ξ18/31 45ξ22/27 51ξ28/29".into())
}

fn quotient() -> Check {
    let p = Arc::new(builtin("poly_mul(2,2)").unwrap());
    let z = scalar::ints(&[1, 0, 1]);
    let q = p.quotient_project(&z).unwrap();
    ensure(q.dims() == (2, 2, 2), || format!("quotient dims {:?}", q.dims()))?;
    let rep = fuzz_nonsingularity(&q, QUOTIENT_TRIALS, FUZZ_SEED, FUZZ_BOUND).unwrap();
    ensure(rep.passed, || "quotient fails fuzz".into())?;
    let c = builtin("complex_mul").unwrap();
    let m = codomain_change_of_basis(q.as_tensor(), c.as_tensor()).ok_or("no change of basis")?;
    ensure(common::rank_oracle(&m.to_rows()) == 2, || "change of basis not invertible".into())?;
    let mapped = m.mul(&q.as_tensor().unfold());
    ensure(mapped == c.as_tensor().unfold(), || "C * quotient != complex_mul".into())?;
    let avoid = verify_not_in_image(&p, &z, AVOID_TRIALS, FUZZ_SEED, AVOID_BOUND).unwrap();
    let checks = avoid.sign_checks.unwrap_or(0);
    ensure(avoid.passed && checks > 0, || format!("avoid passed={} sign checks {checks}", avoid.passed))?;
    let rows: Vec<String> = m.to_rows().iter().map(|r| scalar::format_vector(r)).collect();
    Ok(format!("C = [{}]; avoid {AVOID_TRIALS} trials, {checks} sign checks", rows.join("; ")))
}

fn margins() -> Check {
    let start = Instant::now();
    let o = builtin("octonion_mul").unwrap();
    let mo = margin_estimate(&o, 8, 200, 1e-12, FUZZ_SEED).unwrap().margin_value.unwrap();
    ensure((mo - 1.0).abs() <= OCTONION_MARGIN_TOL, || format!("octonion margin {mo}"))?;
    let c = builtin("commutator_map").unwrap();
    let mc = margin_estimate(&c, 8, 200, 1e-12, FUZZ_SEED).unwrap().margin_value.unwrap();
    ensure(mc <= SINGULAR_MARGIN_MAX, || format!("commutator margin {mc}"))?;
    let f = builtin("main_f").unwrap();
    let a = margin_estimate(&f, 32, 500, 1e-12, FUZZ_SEED).unwrap().margin_value.unwrap();
    let b = margin_estimate(&f, 32, 500, 1e-12, FUZZ_SEED).unwrap().margin_value.unwrap();
    ensure(a > 0.0, || format!("main_f margin {a}"))?;
    ensure((a - b).abs() <= MARGIN_REPRO_TOL, || format!("main_f reruns {a} vs {b}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < MARGIN_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("octonion {mo:.12}, commutator {mc:.2e}, main_f {a:.6}"))
}

fn admissibility(registry: &Registry) -> Check {
    let yes: Vec<usize> = (1..=ADMISSIBLE_MAX).filter(|&k| admissible(k, k, k).unwrap()).collect();
    ensure(yes == [1, 2, 4, 8], || format!("admissible squares {yes:?}"))?;
    let two = registry.best_upper_bound(2, 2).unwrap();
    ensure(two.k == 2, || format!("best(2,2) = {}", two.k))?;
    let table = bounds_table(registry, BOUNDS_MAX).unwrap();
    for e in &table {
        ensure(e.k <= e.r + e.s - 1, || format!("best({},{}) = {}", e.r, e.s, e.k))?;
        let t = registry.best_upper_bound(e.s, e.r).unwrap();
        ensure(t.k <= e.r + e.s - 1, || format!("best({},{}) = {}", e.s, e.r, t.k))?;
    }
    Ok(format!("squares {yes:?}; best(2,2)=2 via {}; {} pairs checked", two.source, 2 * table.len()))
}

fn reports() -> Vec<String> {
    let f = builtin("main_f").unwrap();
    let c = builtin("commutator_map").unwrap();
    let p = builtin("poly_mul(2,2)").unwrap();
    let z: Vec<Scalar> = scalar::ints(&[1, 0, 1]);
    vec![
        fuzz_nonsingularity(&f, 1_000, 5, 5).unwrap().to_json().unwrap(),
        fuzz_nonsingularity(&c, 1_000, 5, 5).unwrap().to_json().unwrap(),
        rank_profile(&f, Side::Right, 20, 5, 5).unwrap().to_json().unwrap(),
        margin_estimate(&f, 8, 200, 1e-12, 5).unwrap().to_json().unwrap(),
        margin_estimate(&c, 4, 100, 1e-12, 5).unwrap().to_json().unwrap(),
        verify_not_in_image(&p, &z, 5_000, 5, 9).unwrap().to_json().unwrap(),
        serde_json::to_string(&find_kernel_pair(&c, Strategy::RandomizedKernel, 10, 5, 5).unwrap()).unwrap(),
    ]
}

fn determinism() -> Check {
    let pool = |n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    let serial = pool(1).install(reports);
    let parallel = pool(4).install(reports);
    let again = reports();
    ensure(serial == parallel && serial == again, || "reports differ between runs".into())?;
    Ok(format!("{} reports bit-identical across 1, 4 and default threads", serial.len()))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: usize, name: &str, check: &dyn Fn() -> Check| {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS [{n:>2}] {name} ({secs:.1}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{n:>2}] {name} ({secs:.1}s): {why}");
            }
        }
    };
    report(1, "algebra laws", &algebra_laws);
    report(2, "nonsingularity fuzz", &fuzz_catalog);
    report(3, "rank certification", &rank_profiles);
    report(4, "image dimensions", &image_spans);
    report(5, "restriction table", &restriction_table);
    let registry = Registry::verified(VerifyPolicy::default()).unwrap();
    report(6, "section counts", &|| corollary(&registry));
    report(7, "quotient construction", &quotient);
    report(8, "margin estimator", &margins);
    report(9, "admissibility and bounds", &|| admissibility(&registry));
    report(10, "determinism", &determinism);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
