//! Nonsingularity checks.
//!
//! Every randomized routine draws from a ChaCha stream keyed by `(seed,
//! trial index)`, so reports are identical whether trials run serially or on
//! the rayon pool. Exact modes work over the rationals with integer samples
//! in `[−B, B]`; an all-zero draw is redrawn from the same stream.
//!
//! A passing fuzz or rank report means no counterexample was found within
//! the budget. It is not a proof.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::maps::{BilinearMap, Construction};
use crate::scalar::{self, Scalar};

pub const DEFAULT_BOUND: i64 = 5;

const MAX_RECORDED_FAILURES: usize = 64;

const NO_COUNTEREXAMPLE: &str = "no counterexample found within budget";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Fuzz,
    RankLeft,
    RankRight,
    Witness,
    ImageAvoid,
    Margin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Where a witness came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    /// Standard basis pair `(eᵢ, eⱼ)`, index `i·s + j`.
    Basis,
    /// Seeded random pair.
    Random,
    /// Seeded random `x` paired with itself.
    Diagonal,
    /// Random point whose frozen linear map has a kernel.
    Kernel,
    /// Violation of the sign argument for the degree-one polynomial product.
    SignCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub stage: Stage,
    pub index: u64,
    #[serde(with = "scalar::serde_vec")]
    pub x: Vec<Scalar>,
    #[serde(with = "scalar::serde_vec")]
    pub y: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub map_id: String,
    pub mode: Mode,
    pub trials: u64,
    pub seed: u64,
    pub bound: i64,
    pub passed: bool,
    /// Total failures seen; at most 64 are kept in `failures`.
    pub failure_count: u64,
    pub failures: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_rank_observed: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iters: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_checks: Option<u64>,
    pub claim: String,
}

impl VerificationReport {
    fn new(map: &BilinearMap, mode: Mode, trials: u64, seed: u64, bound: i64) -> Self {
        VerificationReport {
            map_id: map.id().to_string(),
            mode,
            trials,
            seed,
            bound,
            passed: true,
            failure_count: 0,
            failures: Vec::new(),
            min_rank_observed: None,
            expected_rank: None,
            margin_value: None,
            max_iters: None,
            tol: None,
            sign_checks: None,
            claim: NO_COUNTEREXAMPLE.into(),
        }
    }

    fn record(&mut self, mut failures: Vec<Witness>) {
        failures.sort_by_key(|w| (w.stage, w.index));
        self.failure_count = failures.len() as u64;
        failures.truncate(MAX_RECORDED_FAILURES);
        self.passed = failures.is_empty();
        if !self.passed {
            self.claim = "counterexample found".into();
        }
        self.failures = failures;
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Independent stream for one trial.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform integers in `[−bound, bound]`, redrawn until nonzero.
pub fn sample_nonzero(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Vec<Scalar> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&c| c != 0) {
            return scalar::ints(&v);
        }
    }
}

fn check_budget(trials: u64, bound: i64) -> Result<()> {
    if trials == 0 {
        return Err(Error::NonPositive("trials"));
    }
    if bound < 1 {
        return Err(Error::NonPositive("coefficient bound"));
    }
    Ok(())
}

fn basis_pairs(r: usize, s: usize) -> impl IndexedParallelIterator<Item = (u64, Vec<Scalar>, Vec<Scalar>)> {
    (0..r * s).into_par_iter().map(move |idx| {
        let (i, j) = (idx / s, idx % s);
        (idx as u64, scalar::unit(r, i), scalar::unit(s, j))
    })
}

/// Searches for `f(x, y) = 0` with `x, y ≠ 0`.
///
/// Probes every basis pair first, then `trials` random pairs; when `r = s`
/// each random `x` is also tried against itself.
pub fn fuzz_nonsingularity(map: &BilinearMap, trials: u64, seed: u64, bound: i64) -> Result<VerificationReport> {
    check_budget(trials, bound)?;
    let (r, s, _) = map.dims();
    let mut report = VerificationReport::new(map, Mode::Fuzz, trials, seed, bound);
    let is_zero = |x: &[Scalar], y: &[Scalar]| scalar::is_zero_vec(&map.evaluate(x, y).expect("dims checked"));

    let mut failures: Vec<Witness> = basis_pairs(r, s)
        .filter(|(_, x, y)| is_zero(x, y))
        .map(|(index, x, y)| Witness {
            stage: Stage::Basis,
            index,
            x,
            y,
        })
        .collect();

    let random: Vec<Witness> = (0..trials)
        .into_par_iter()
        .flat_map_iter(|t| {
            let mut rng = trial_rng(seed, t);
            let x = sample_nonzero(&mut rng, r, bound);
            let y = sample_nonzero(&mut rng, s, bound);
            let mut found = Vec::new();
            if r == s && is_zero(&x, &x) {
                found.push(Witness {
                    stage: Stage::Diagonal,
                    index: t,
                    x: x.clone(),
                    y: x.clone(),
                });
            }
            if is_zero(&x, &y) {
                found.push(Witness {
                    stage: Stage::Random,
                    index: t,
                    x,
                    y,
                });
            }
            found
        })
        .collect();
    failures.extend(random);
    report.record(failures);
    Ok(report)
}

/// Exact rank of the frozen linear map at `samples` random nonzero points.
/// Passes when every rank is full (`s` on the left, `r` on the right); each
/// rank deficiency is recorded with a kernel vector as an exact witness.
pub fn rank_profile(map: &BilinearMap, side: Side, samples: u64, seed: u64, bound: i64) -> Result<VerificationReport> {
    check_budget(samples, bound)?;
    let (r, s, _) = map.dims();
    let mode = match side {
        Side::Left => Mode::RankLeft,
        Side::Right => Mode::RankRight,
    };
    let (point_len, full) = match side {
        Side::Left => (r, s),
        Side::Right => (s, r),
    };
    let mut report = VerificationReport::new(map, mode, samples, seed, bound);
    let results: Vec<(usize, Option<Witness>)> = (0..samples)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let p = sample_nonzero(&mut rng, point_len, bound);
            let m = frozen(map, side, &p);
            let rank = m.rank();
            let witness = (rank < full).then(|| {
                let kernel = scalar::clear_denominators(&m.nullspace()[0]);
                let (x, y) = match side {
                    Side::Left => (p.clone(), kernel),
                    Side::Right => (kernel, p.clone()),
                };
                Witness {
                    stage: Stage::Kernel,
                    index: t,
                    x,
                    y,
                }
            });
            (rank, witness)
        })
        .collect();
    report.min_rank_observed = results.iter().map(|(rank, _)| *rank).min();
    report.expected_rank = Some(full);
    report.record(results.into_iter().filter_map(|(_, w)| w).collect());
    Ok(report)
}

fn frozen(map: &BilinearMap, side: Side, p: &[Scalar]) -> Matrix {
    match side {
        Side::Left => map.fixed_left_matrix(p),
        Side::Right => map.fixed_right_matrix(p),
    }
    .expect("dims checked")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// `y = x`, starting from the non-identity basis vectors `e₁, e₂, …, e₀`
    /// and continuing with random points. Needs `r = s`.
    Diagonal,
    Random,
    /// Random `x`, then an exact kernel vector of `y ↦ f(x, y)`.
    RandomizedKernel,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "diagonal" => Ok(Strategy::Diagonal),
            "random" => Ok(Strategy::Random),
            "randomized-kernel" | "kernel" => Ok(Strategy::RandomizedKernel),
            other => Err(Error::InvalidParameters {
                id: "strategy".into(),
                reason: format!("unknown strategy `{other}`"),
            }),
        }
    }
}

/// Looks for a kernel pair within `budget` attempts. Attempts run in order
/// and the first success is returned.
pub fn find_kernel_pair(
    map: &BilinearMap,
    strategy: Strategy,
    budget: u64,
    seed: u64,
    bound: i64,
) -> Result<Option<Witness>> {
    check_budget(budget, bound)?;
    let (r, s, _) = map.dims();
    let is_zero = |x: &[Scalar], y: &[Scalar]| scalar::is_zero_vec(&map.evaluate(x, y).expect("dims checked"));
    for t in 0..budget {
        let mut rng = trial_rng(seed, t);
        let found = match strategy {
            Strategy::Diagonal => {
                if r != s {
                    return Ok(None);
                }
                let x = if (t as usize) < r {
                    scalar::unit(r, (t as usize + 1) % r)
                } else {
                    sample_nonzero(&mut rng, r, bound)
                };
                is_zero(&x, &x).then(|| (Stage::Diagonal, x.clone(), x))
            }
            Strategy::Random => {
                let x = sample_nonzero(&mut rng, r, bound);
                let y = sample_nonzero(&mut rng, s, bound);
                is_zero(&x, &y).then_some((Stage::Random, x, y))
            }
            Strategy::RandomizedKernel => {
                let x = sample_nonzero(&mut rng, r, bound);
                let ns = frozen(map, Side::Left, &x).nullspace();
                ns.first()
                    .map(|k| (Stage::Kernel, x.clone(), scalar::clear_denominators(k)))
            }
        };
        if let Some((stage, x, y)) = found {
            return Ok(Some(Witness { stage, index: t, x, y }));
        }
    }
    Ok(None)
}

/// `Some(λ)` when `v = λz` with `λ ≠ 0`.
fn multiple_of(v: &[Scalar], z: &[Scalar], pivot: usize) -> Option<Scalar> {
    use num_traits::Zero;
    if v[pivot].is_zero() {
        return None;
    }
    let lambda = &v[pivot] / &z[pivot];
    v.iter()
        .zip(z)
        .all(|(a, b)| *a == &lambda * b)
        .then_some(lambda)
}

/// Checks that no value `f(x, y)` is a nonzero multiple of `z`.
///
/// Basis pairs are probed first, then `trials` random pairs. For the
/// degree-one polynomial product with `z = (1, 0, 1)` every random sample
/// whose outer coordinates share a sign also runs the exact sign argument:
/// the two cross terms multiply to the product of the outer coordinates, so
/// they are nonzero with equal signs and the middle coordinate cannot vanish.
pub fn verify_not_in_image(
    map: &BilinearMap,
    z: &[Scalar],
    trials: u64,
    seed: u64,
    bound: i64,
) -> Result<VerificationReport> {
    use num_traits::{Signed, Zero};
    check_budget(trials, bound)?;
    let (r, s, k) = map.dims();
    if z.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: z.len(),
        });
    }
    if scalar::is_zero_vec(z) {
        return Err(Error::ZeroVector("z"));
    }
    let pivot = crate::maps::pivot_index(z);
    let sign_argument = matches!(
        map.construction(),
        Some(Construction::IntroFDeg1) | Some(Construction::PolyMul { r: 2, s: 2 })
    ) && z == scalar::ints(&[1, 0, 1]).as_slice();

    let mut report = VerificationReport::new(map, Mode::ImageAvoid, trials, seed, bound);
    let hits = |x: &[Scalar], y: &[Scalar]| {
        let v = map.evaluate(x, y).expect("dims checked");
        multiple_of(&v, z, pivot).is_some()
    };

    let mut failures: Vec<Witness> = basis_pairs(r, s)
        .filter(|(_, x, y)| hits(x, y))
        .map(|(index, x, y)| Witness {
            stage: Stage::Basis,
            index,
            x,
            y,
        })
        .collect();

    let random: Vec<(u64, Vec<Witness>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let x = sample_nonzero(&mut rng, r, bound);
            let y = sample_nonzero(&mut rng, s, bound);
            let v = map.evaluate(&x, &y).expect("dims checked");
            let mut found = Vec::new();
            let mut checks = 0;
            if sign_argument && (&v[0] * &v[2]).is_positive() {
                checks = 1;
                let cross = (&x[0] * &y[1]) * (&x[1] * &y[0]);
                if cross != &v[0] * &v[2] || v[1].is_zero() {
                    found.push(Witness {
                        stage: Stage::SignCheck,
                        index: t,
                        x: x.clone(),
                        y: y.clone(),
                    });
                }
            }
            if multiple_of(&v, z, pivot).is_some() {
                found.push(Witness {
                    stage: Stage::Random,
                    index: t,
                    x,
                    y,
                });
            }
            (checks, found)
        })
        .collect();
    let mut checks = 0;
    for (c, found) in random {
        checks += c;
        failures.extend(found);
    }
    if sign_argument {
        report.sign_checks = Some(checks);
    }
    report.record(failures);
    if report.passed {
        report.claim = format!("no value on the line through z found within budget; {NO_COUNTEREXAMPLE}");
    }
    Ok(report)
}

/// Floating-point structure constants, for the margin estimator.
struct FloatTensor {
    r: usize,
    s: usize,
    k: usize,
    entries: Vec<(usize, usize, usize, f64)>,
}

impl FloatTensor {
    fn new(map: &BilinearMap) -> FloatTensor {
        let t = map.as_tensor();
        let (r, s, k) = t.dims();
        FloatTensor {
            r,
            s,
            k,
            entries: t
                .entries()
                .iter()
                .map(|e| (e.t, e.i, e.j, scalar::to_f64(&e.value)))
                .collect(),
        }
    }

    fn frozen(&self, side: Side, p: &DVector<f64>) -> DMatrix<f64> {
        let cols = match side {
            Side::Left => self.s,
            Side::Right => self.r,
        };
        let mut m = DMatrix::zeros(self.k, cols);
        for &(t, i, j, v) in &self.entries {
            match side {
                Side::Left => m[(t, j)] += v * p[i],
                Side::Right => m[(t, i)] += v * p[j],
            }
        }
        m
    }
}

/// Unit vector minimizing `|Mv|`, with its first significant component made
/// positive so restarts are reproducible.
fn least_singular_vector(m: &DMatrix<f64>) -> DVector<f64> {
    let gram = m.transpose() * m;
    let eig = SymmetricEigen::new(gram);
    let mut best = 0;
    for i in 1..eig.eigenvalues.len() {
        if eig.eigenvalues[i] < eig.eigenvalues[best] {
            best = i;
        }
    }
    let mut v = eig.eigenvectors.column(best).into_owned();
    v /= v.norm();
    if let Some(first) = v.iter().find(|c| c.abs() > 1e-12) {
        if *first < 0.0 {
            v = -v;
        }
    }
    v
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..=1.0));
        let norm = v.norm();
        if norm > 1e-3 {
            return v / norm;
        }
    }
}

/// Estimates `min |f(x, y)|` over the product of unit spheres by alternating
/// least-singular-vector steps from seeded random starts. The result is an
/// upper bound on the true margin.
pub fn margin_estimate(
    map: &BilinearMap,
    restarts: u64,
    max_iters: u64,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    if restarts == 0 {
        return Err(Error::NonPositive("restarts"));
    }
    if !(tol > 0.0) {
        return Err(Error::NonPositive("tol"));
    }
    let ft = FloatTensor::new(map);
    let runs: Vec<(f64, DVector<f64>)> = (0..restarts)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let mut x = random_unit(&mut rng, ft.r);
            let mut value = f64::INFINITY;
            for _ in 0..max_iters.max(1) {
                let left = ft.frozen(Side::Left, &x);
                let y = least_singular_vector(&left);
                let right = ft.frozen(Side::Right, &y);
                x = least_singular_vector(&right);
                let next = (&right * &x).norm();
                let stalled = value - next < tol;
                value = value.min(next);
                if stalled {
                    break;
                }
            }
            (value, x)
        })
        .collect();
    let (best_idx, (value, x)) = runs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0).then(a.0.cmp(&b.0)))
        .expect("at least one restart");

    let mut report = VerificationReport::new(map, Mode::Margin, restarts, seed, 0);
    report.margin_value = Some(*value);
    report.max_iters = Some(max_iters);
    report.tol = Some(tol);
    let mut failures = Vec::new();
    if *value <= tol {
        if let Some(w) = exact_witness_near(map, x, best_idx as u64) {
            failures.push(w);
        }
    }
    report.record(failures);
    report.passed = report.passed && *value > tol;
    report.claim = if report.passed {
        "estimated margin is positive (upper bound on the true margin)".into()
    } else {
        "margin estimate below tolerance".into()
    };
    Ok(report)
}

/// Rounds `x` to a rational grid and looks for an exact kernel vector there.
fn exact_witness_near(map: &BilinearMap, x: &DVector<f64>, index: u64) -> Option<Witness> {
    const GRID: f64 = 1e6;
    let xr: Vec<Scalar> = x
        .iter()
        .map(|v| scalar::ratio((v * GRID).round() as i64, GRID as i64))
        .collect();
    if scalar::is_zero_vec(&xr) {
        return None;
    }
    let xr = scalar::clear_denominators(&xr);
    let ns = map.fixed_left_matrix(&xr).ok()?.nullspace();
    let y = scalar::clear_denominators(ns.first()?);
    Some(Witness {
        stage: Stage::Kernel,
        index,
        x: xr,
        y,
    })
}

/// Runs a fuzz campaign and both rank profiles; passes if all three pass.
pub fn certify(map: &Arc<BilinearMap>, trials: u64, samples: u64, seed: u64, bound: i64) -> Result<bool> {
    let fuzz = fuzz_nonsingularity(map, trials, seed, bound)?;
    let left = rank_profile(map, Side::Left, samples, seed, bound)?;
    let right = rank_profile(map, Side::Right, samples, seed, bound)?;
    Ok(fuzz.passed && left.passed && right.passed)
}
