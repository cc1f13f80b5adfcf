//! Seeded verification suites: each suite generates random instances,
//! runs a construction and an independent oracle side by side, and
//! reports every disagreement with the per-case seed that reproduces it.
//!
//! Each case gets its own RNG seeded from `master_seed ^ (index * phi)`,
//! so a reported failure can be replayed in isolation without rerunning
//! the whole suite.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{self, UnionSumExpr};
use crate::limits::Limits;
use crate::linsets::{
    check_promise, containment_bounded, LinearSetDesc, PromiseContainmentInstance,
    SpanMembership,
};
use crate::natvec::NatVec;
use crate::onedim::{
    containment_1d_bounded, containment_1d_poly, frobenius_number, OneDimLinearSet,
};
use crate::qbf::{forall_exists_false, DnfFormula};
use crate::reduce::{
    aggregate_system, aggregate_two, aggregation_conditions_hold, reduce_expr_to_linear,
    reduce_multidim_to_1d, reduce_qbf_to_expr, AggregationResult,
};

/// One failed case: the seed that reproduces it and what went wrong.
#[derive(Debug, Clone)]
pub struct CaseFailure {
    pub seed: u64,
    pub message: String,
}

/// Outcome of a whole suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub cases: usize,
    pub failures: Vec<CaseFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let pass = self.cases - self.failures.len();
        match self.failures.first() {
            None => format!("{}: {}/{} pass", self.suite, pass, self.cases),
            Some(first) => format!(
                "{}: {}/{} pass; first failing seed {}: {}",
                self.suite, pass, self.cases, first.seed, first.message
            ),
        }
    }
}

type CaseResult = std::result::Result<(), String>;

fn lift<T>(r: crate::error::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn case_seed(master_seed: u64, index: u64) -> u64 {
    master_seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn run_suite(
    suite: &'static str,
    count: usize,
    master_seed: u64,
    mut case: impl FnMut(&mut ChaCha8Rng) -> CaseResult,
) -> SuiteReport {
    let mut failures = Vec::new();
    for index in 0..count {
        let seed = case_seed(master_seed, index as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Err(message) = case(&mut rng) {
            failures.push(CaseFailure { seed, message });
        }
    }
    SuiteReport {
        suite,
        cases: count,
        failures,
    }
}

/// Call `f` on every vector with `0 <= v[i] <= bounds[i]`, last index
/// varying fastest. Stops at the first error.
fn for_each_vector(
    bounds: &[u64],
    mut f: impl FnMut(&[u64]) -> CaseResult,
) -> CaseResult {
    let mut digits = vec![0u64; bounds.len()];
    loop {
        f(&digits)?;
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if digits[i] < bounds[i] {
                digits[i] += 1;
                for d in &mut digits[i + 1..] {
                    *d = 0;
                }
                break;
            }
            digits[i] = 0;
        }
    }
}

fn combine(constant: &NatVec, periods: &[NatVec], coeffs: &[u64]) -> NatVec {
    let mut v = constant.clone();
    for (p, &x) in periods.iter().zip(coeffs) {
        if x > 0 {
            v = v
                .checked_add(&p.scaled(&BigUint::from(x)))
                .expect("dimensions agree by construction");
        }
    }
    v
}

// ------------------------------------------------------------- aggregation

/// Random systems of `rows_per_system` equations: aggregate them, re-check
/// the multiplier conditions, and verify that the system and the aggregate
/// have *identical* solution sets over the naturals — by exhaustively
/// enumerating the system's solutions, checking each against the
/// aggregate, and matching the aggregate's exact solution count.
pub fn suite_aggregation(count: usize, master_seed: u64, rows_per_system: usize) -> SuiteReport {
    let suite = match rows_per_system {
        2 => "aggregation-pairs",
        3 => "aggregation-triples",
        _ => "aggregation",
    };
    run_suite(suite, count, master_seed, |rng| {
        let width = rng.random_range(1..=4usize);
        let mut matrix: Vec<Vec<u64>> = Vec::with_capacity(rows_per_system);
        for _ in 0..rows_per_system {
            let row = loop {
                let row: Vec<u64> = (0..width).map(|_| rng.random_range(0..=5)).collect();
                if row.iter().any(|&v| v > 0) {
                    break row;
                }
            };
            matrix.push(row);
        }
        let rhs: Vec<u64> = (0..rows_per_system).map(|_| rng.random_range(1..=8)).collect();

        let big_matrix: Vec<Vec<BigUint>> = matrix
            .iter()
            .map(|row| row.iter().map(|&v| BigUint::from(v)).collect())
            .collect();
        let big_rhs: Vec<BigUint> = rhs.iter().map(|&v| BigUint::from(v)).collect();

        let aggregated = lift(aggregate_system(&big_matrix, &big_rhs))?;
        if rows_per_system == 2 {
            let pairwise = lift(aggregate_two(
                &big_matrix[0],
                &big_matrix[1],
                &big_rhs[0],
                &big_rhs[1],
            ))?;
            if pairwise != aggregated {
                return Err("two-row fold differs from direct pairwise aggregation".into());
            }
            if !aggregation_conditions_hold(
                &big_matrix[0],
                &big_matrix[1],
                &big_rhs[0],
                &big_rhs[1],
                &aggregated.multipliers[0],
                &aggregated.multipliers[1],
            ) {
                return Err(format!(
                    "multiplier conditions do not hold for t = {:?}",
                    aggregated.multipliers
                ));
            }
        }
        solution_sets_match(&matrix, &rhs, &aggregated)
    })
}

/// System solution set == aggregate solution set, exactly:
/// 1. columns that are all-zero in the system must have a zero aggregated
///    coefficient (both sides then ignore that variable; it is pinned to 0);
/// 2. every enumerated system solution solves the aggregate (inclusion);
/// 3. the aggregate's solutions are *counted* exactly by a dynamic program,
///    and the count must equal the number of system solutions — inclusion
///    plus equal finite cardinality forces set equality.
fn solution_sets_match(matrix: &[Vec<u64>], rhs: &[u64], aggregated: &AggregationResult) -> CaseResult {
    let width = matrix[0].len();
    let agg_row: Vec<u64> = aggregated
        .row
        .iter()
        .map(|v| u64::try_from(v).expect("desk-scale aggregates fit u64"))
        .collect();
    let agg_rhs = u64::try_from(&aggregated.rhs).expect("desk-scale aggregates fit u64");

    let mut bounds = vec![0u64; width];
    let mut constrained = vec![false; width];
    for j in 0..width {
        let mut bound: Option<u64> = None;
        for (row, &b) in matrix.iter().zip(rhs) {
            if row[j] > 0 {
                let this = b / row[j];
                bound = Some(bound.map_or(this, |cur| cur.min(this)));
            }
        }
        match bound {
            Some(b) => {
                bounds[j] = b;
                constrained[j] = true;
            }
            None => {
                if agg_row[j] != 0 {
                    return Err(format!(
                        "column {} is free in the system but weighted in the aggregate",
                        j + 1
                    ));
                }
            }
        }
    }

    let mut system_solutions = 0u128;
    let mut inclusion_error = None;
    for_each_vector(&bounds, |x| {
        let solves_system = matrix
            .iter()
            .zip(rhs)
            .all(|(row, &b)| row.iter().zip(x).map(|(&a, &v)| a * v).sum::<u64>() == b);
        if solves_system {
            system_solutions += 1;
            let agg_value: u64 = agg_row.iter().zip(x).map(|(&a, &v)| a * v).sum();
            if agg_value != agg_rhs && inclusion_error.is_none() {
                inclusion_error = Some(format!(
                    "system solution {x:?} does not solve the aggregate"
                ));
            }
        }
        Ok(())
    })?;
    if let Some(message) = inclusion_error {
        return Err(message);
    }

    // Count aggregate solutions (free columns pinned to zero on both sides).
    let cap = agg_rhs as usize;
    let mut ways = vec![0u128; cap + 1];
    ways[0] = 1;
    for (j, &a) in agg_row.iter().enumerate() {
        if !constrained[j] || a == 0 {
            continue;
        }
        let a = a as usize;
        for v in a..=cap {
            ways[v] += ways[v - a];
        }
    }
    if ways[cap] != system_solutions {
        return Err(format!(
            "aggregate has {} solutions, system has {}",
            ways[cap], system_solutions
        ));
    }
    Ok(())
}

// --------------------------------------------------- formula <-> expressions

/// Random small formulas: the brute-force quantifier oracle must agree
/// with language containment of the encoded expression pair, the lhs
/// language must fit the predicted coordinate window, and the unit-frame
/// prefix of the rhs must generate the full predicted grid.
pub fn suite_qbf_expr(count: usize, master_seed: u64) -> SuiteReport {
    run_suite("qbf-expr", count, master_seed, |rng| {
        let n = rng.random_range(1..=2usize);
        let m = rng.random_range(1..=3usize);
        let f = lift(DnfFormula::random(n, m, 4, rng))?;
        let limits = Limits::default();

        let oracle = lift(forall_exists_false(&f, &limits))?;
        let (e1, e2) = lift(reduce_qbf_to_expr(&f))?;
        let containment = lift(expr::containment_by_language(&e1, &e2, &limits))?;
        if oracle != containment {
            return Err(format!(
                "oracle says {oracle}, encoded containment says {containment} for {f:?}"
            ));
        }

        let low = BigUint::from(n);
        let high = BigUint::from(2 * n);
        for v in lift(e1.enumerate_language(&limits))? {
            for j in 0..m {
                if v.entry(j) < &low || v.entry(j) > &high {
                    return Err(format!(
                        "lhs language vector {v} leaves the window [{n}, {}]",
                        2 * n
                    ));
                }
            }
        }

        let frame_terms = m * (2 * n - 1);
        let frame = lift(UnionSumExpr::new(m, e2.terms()[..frame_terms].to_vec()))?;
        let got = lift(frame.enumerate_language(&limits))?;
        let mut expected = BTreeSet::new();
        for_each_vector(&vec![2 * n as u64 - 1; m], |digits| {
            expected.insert(NatVec::from_u64s(digits));
            Ok(())
        })?;
        if got != expected {
            return Err(format!(
                "unit-frame language has {} vectors, expected the full {} grid",
                got.len(),
                expected.len()
            ));
        }
        Ok(())
    })
}

// ------------------------------------------------ expressions -> linear sets

/// Random expression pairs: language containment must equal bounded
/// containment of the encoded instance, the promise must verify, and the
/// vectors reachable within the bound must classify correctly — vectors
/// with the untouched control pattern stand or fall with the match
/// periods, all others are absorbed by the slack periods.
pub fn suite_expr_lin(count: usize, master_seed: u64) -> SuiteReport {
    run_suite("expr-lin", count, master_seed, |rng| {
        let m = rng.random_range(1..=3usize);
        let lhs = lift(UnionSumExpr::random(m, rng.random_range(1..=3), rng))?;
        let rhs = lift(UnionSumExpr::random(m, rng.random_range(1..=3), rng))?;
        let limits = Limits::default();

        let expected = lift(expr::containment_by_language(&lhs, &rhs, &limits))?;
        let red = lift(reduce_expr_to_linear(&lhs, &rhs))?;
        let inst = &red.instance;
        let s = red.padded_terms;
        let n = red.counter_bound;

        if red.choice_periods.len() != 2 * s
            || red.match_periods.len() != 2 * s
            || red.slack_periods.len() != 3 * s + m * (n + 1)
        {
            return Err(format!(
                "period group sizes {}/{}/{} do not match 2s/2s/3s+m(n+1) for s={s}, n={n}",
                red.choice_periods.len(),
                red.match_periods.len(),
                red.slack_periods.len()
            ));
        }

        if !lift(check_promise(inst, 2, &limits))? {
            return Err("promise fails within coefficient bound 2".into());
        }
        let got = lift(containment_bounded(inst.lhs(), inst.rhs(), 2, &limits))?;
        if got != expected {
            return Err(format!(
                "language containment says {expected}, encoded instance says {got}"
            ));
        }

        // Classification sweep within coefficient bound 2.
        let three = BigUint::from(3u32);
        let one = BigUint::from(1u32);
        let mut match_span = SpanMembership::new(&red.match_periods);
        let mut slack_span = SpanMembership::new(&red.slack_periods);
        let mut full_span = SpanMembership::new(inst.rhs().periods());
        let bounds = vec![2u64; inst.lhs().periods().len()];
        for_each_vector(&bounds, |coeffs| {
            let v = combine(inst.lhs().constant(), inst.lhs().periods(), coeffs);
            let essential = (m..m + s).all(|i| v.entry(i) == &three)
                && (m + s..m + 2 * s).all(|i| v.entry(i) == &one)
                && (m + 2 * s..2 * m + 2 * s).all(|i| v.entry(i) == &one);
            if essential {
                let in_full = full_span.contains(&v);
                let in_match = match_span.contains(&v);
                if in_full != in_match {
                    return Err(format!(
                        "control-pattern vector {v} is covered ({in_full}) but not by the match periods alone ({in_match})"
                    ));
                }
            } else if !slack_span.contains(&v) {
                return Err(format!(
                    "vector {v} breaks the control pattern but is not absorbed by the slack periods"
                ));
            }
            Ok(())
        })
    })
}

// ------------------------------------------------- linear sets -> one dim

/// Random promise instances (verified up to coefficient bound 3, aggregated
/// right-hand side capped): bounded containment of the original must equal
/// the polynomial decision on the 1-D collapse.
///
/// Three sub-families keep both verdicts populated: a unit-vector-rich rhs
/// (contained for sure), raw random instances (whatever survives the
/// promise filter), and a doubling family with rhs periods {2p, 3p} — every
/// lhs coefficient other than exactly 1 lands in the rhs because any count
/// >= 2 is a sum of 2s and 3s, so the promise holds while the selection
/// point itself usually escapes.
pub fn suite_lin_1d(count: usize, master_seed: u64) -> SuiteReport {
    run_suite("lin-1d", count, master_seed, |rng| {
        let limits = Limits::with_dp_budget(1 << 31);
        let cap = BigUint::from(1_000_000u64);
        let mut attempts = 0;
        let (inst, red) = loop {
            attempts += 1;
            if attempts > 20_000 {
                return Err("could not generate a promise instance in 20000 attempts".into());
            }
            let dim = rng.random_range(2..=3usize);
            let rand_vec = |rng: &mut ChaCha8Rng| {
                NatVec::new((0..dim).map(|_| BigUint::from(rng.random_range(0..=3u64))).collect())
                    .expect("dim >= 2")
            };

            let family = rng.random_range(0..10u32);
            let (constant, lhs_periods, rhs_periods, s) = if family < 2 {
                // Doubling family: p is 0/1 and nonzero, so 2p and 3p stay
                // within the entry bound.
                let p = loop {
                    let p = NatVec::new(
                        (0..dim)
                            .map(|_| BigUint::from(rng.random_range(0..=1u64)))
                            .collect(),
                    )
                    .expect("dim >= 2");
                    if !p.is_zero() {
                        break p;
                    }
                };
                let two_p = p.scaled(&BigUint::from(2u32));
                let constant = if rng.random_bool(0.5) {
                    NatVec::zeros(dim)
                } else {
                    two_p.clone()
                };
                let mut lhs_periods = vec![p.clone()];
                if rng.random_bool(0.5) {
                    lhs_periods.push(two_p.clone());
                }
                let mut rhs_periods = vec![two_p, p.scaled(&BigUint::from(3u32))];
                if rng.random_bool(0.5) {
                    rhs_periods.push(rand_vec(rng));
                }
                (constant, lhs_periods, rhs_periods, 1)
            } else {
                let k = rng.random_range(1..=3usize);
                let l = rng.random_range(1..=3usize);
                let s = rng.random_range(1..=k);
                let constant = rand_vec(rng);
                let lhs_periods: Vec<NatVec> = (0..k).map(|_| rand_vec(rng)).collect();
                let rhs_periods: Vec<NatVec> = if family < 6 {
                    let mut qs: Vec<NatVec> = (0..dim).map(|i| NatVec::unit(i, dim)).collect();
                    while qs.len() < l.max(dim) {
                        qs.push(rand_vec(rng));
                    }
                    qs
                } else {
                    (0..l).map(|_| rand_vec(rng)).collect()
                };
                (constant, lhs_periods, rhs_periods, s)
            };
            if lhs_periods.iter().all(|p| p.is_zero())
                || rhs_periods.iter().all(|q| q.is_zero())
            {
                continue;
            }

            let inst = lift(PromiseContainmentInstance::new(
                lift(LinearSetDesc::new(constant, lhs_periods))?,
                lift(LinearSetDesc::new(NatVec::zeros(dim), rhs_periods))?,
                s,
            ))?;
            if !lift(check_promise(&inst, 3, &limits))? {
                continue;
            }
            let red = lift(reduce_multidim_to_1d(&inst))?;
            if red.aggregated_rhs > cap {
                continue;
            }
            break (inst, red);
        };

        let expected = lift(containment_bounded(inst.lhs(), inst.rhs(), 3, &limits))?;
        let got = lift(containment_1d_poly(&red.lhs, &red.rhs, &limits))?;
        if got != expected {
            return Err(format!(
                "bounded containment says {expected}, 1-D collapse says {got} for {inst:?}"
            ));
        }
        Ok(())
    })
}

/// Random valid equations: pick x and y first, let the constant make
/// `constant + (lhs periods) x = (rhs periods) y` hold, and check that the
/// collapsed scalar equation holds with the full (zero-including)
/// coefficient lists. Aggregating valid equations must stay valid.
pub fn suite_aggregation_soundness(count: usize, master_seed: u64) -> SuiteReport {
    run_suite("aggregation-soundness", count, master_seed, |rng| {
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > 20_000 {
                return Err("could not construct a valid equation in 20000 attempts".into());
            }
            let dim = rng.random_range(1..=3usize);
            let k = rng.random_range(1..=3usize);
            let l = rng.random_range(1..=3usize);
            let s = rng.random_range(1..=k);

            let rand_vec = |rng: &mut ChaCha8Rng| {
                NatVec::new((0..dim).map(|_| BigUint::from(rng.random_range(0..=3u64))).collect())
                    .expect("dim >= 1")
            };
            let lhs_periods: Vec<NatVec> = (0..k).map(|_| rand_vec(rng)).collect();
            let rhs_periods: Vec<NatVec> = (0..l).map(|_| rand_vec(rng)).collect();
            let x: Vec<u64> = (0..k).map(|_| rng.random_range(0..=3)).collect();
            let y: Vec<u64> = (0..l).map(|_| rng.random_range(0..=3)).collect();

            let lhs_sum = combine(&NatVec::zeros(dim), &lhs_periods, &x);
            let rhs_sum = combine(&NatVec::zeros(dim), &rhs_periods, &y);
            let Some(constant) = rhs_sum.checked_sub(&lhs_sum) else {
                continue;
            };

            let Ok(inst) = PromiseContainmentInstance::new(
                lift(LinearSetDesc::new(constant, lhs_periods))?,
                lift(LinearSetDesc::new(NatVec::zeros(dim), rhs_periods))?,
                s,
            ) else {
                continue;
            };
            let Ok(red) = reduce_multidim_to_1d(&inst) else {
                continue;
            };

            let dot = |cs: &[BigUint], vs: &[u64]| -> BigUint {
                cs.iter().zip(vs).map(|(c, &v)| c * v).sum()
            };
            let left = &red.scalar_constant + dot(&red.lhs_coefficients, &x);
            let right = dot(&red.rhs_coefficients, &y);
            if left != right {
                return Err(format!(
                    "valid equation collapsed to {left} = {right} with x={x:?}, y={y:?}"
                ));
            }
            return Ok(());
        }
    })
}

// --------------------------------------------------------- 1-D oracle sweeps

fn onedim_case(lhs: &OneDimLinearSet, rhs: &OneDimLinearSet, limits: &Limits) -> CaseResult {
    let poly = lift(containment_1d_poly(lhs, rhs, limits))?;
    let brute = lift(containment_1d_bounded(lhs, rhs, 200, limits))?;
    if poly != brute {
        return Err(format!(
            "polynomial procedure says {poly}, value sweep to 200 says {brute}, for L({}, {:?}) vs L({}, {:?})",
            lhs.constant(),
            lhs.periods(),
            rhs.constant(),
            rhs.periods()
        ));
    }
    Ok(())
}

/// Every instance with constants at most 6 and periods nonempty subsets of
/// {1..8} of size at most 3, on both sides: the polynomial decision must
/// match a full value sweep. The sweep bound 200 exceeds every reachable
/// disagreement: offsets are at most 6 and the normalized tables close
/// before (8-1)*(8-1), so any violation shows up under 200.
pub fn suite_onedim_oracle_exhaustive() -> SuiteReport {
    let limits = Limits::default();
    let subsets: Vec<Vec<u64>> = (1u32..256)
        .filter(|mask| mask.count_ones() <= 3)
        .map(|mask| (0..8).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect())
        .collect();

    let mut failures = Vec::new();
    let mut cases = 0usize;
    for c_lhs in 0..=6u64 {
        for p_lhs in &subsets {
            let lhs = OneDimLinearSet::from_u64s(c_lhs, p_lhs).expect("periods are positive");
            for c_rhs in 0..=6u64 {
                for p_rhs in &subsets {
                    cases += 1;
                    let rhs =
                        OneDimLinearSet::from_u64s(c_rhs, p_rhs).expect("periods are positive");
                    if let Err(message) = onedim_case(&lhs, &rhs, &limits) {
                        failures.push(CaseFailure {
                            seed: cases as u64, // ordinal in the fixed sweep order
                            message,
                        });
                    }
                }
            }
        }
    }
    SuiteReport {
        suite: "onedim-oracle-exhaustive",
        cases,
        failures,
    }
}

/// Seeded random sample from the same family as the exhaustive sweep.
pub fn suite_onedim_oracle_random(count: usize, master_seed: u64) -> SuiteReport {
    run_suite("onedim-oracle", count, master_seed, |rng| {
        let limits = Limits::default();
        let random_set = |rng: &mut ChaCha8Rng| {
            let size = rng.random_range(1..=3usize);
            let periods: Vec<u64> = rand::seq::index::sample(rng, 8, size)
                .iter()
                .map(|i| i as u64 + 1)
                .collect();
            OneDimLinearSet::from_u64s(rng.random_range(0..=6), &periods)
                .expect("periods are positive")
        };
        let lhs = random_set(rng);
        let rhs = random_set(rng);
        onedim_case(&lhs, &rhs, &limits)
    })
}

// ------------------------------------------------------------ Frobenius gaps

/// Independent reference: scan representability with a direct per-value
/// loop (no shared machinery with the production table) and return the
/// largest non-representable value below (max-1)(min-1).
fn frobenius_by_scan(periods: &[u64]) -> Option<u64> {
    let min = *periods.iter().min().expect("nonempty");
    let max = *periods.iter().max().expect("nonempty");
    if min == 1 {
        return None;
    }
    let bound = ((max - 1) * (min - 1)) as usize;
    let mut representable = vec![false; bound];
    representable[0] = true;
    for v in 1..bound {
        representable[v] = periods
            .iter()
            .any(|&p| (p as usize) <= v && representable[v - p as usize]);
    }
    (0..bound).rev().find(|&v| !representable[v]).map(|v| v as u64)
}

/// Fixed known gap values plus seeded random coprime period sets: the
/// table-based computation must match the independent scan, and the result
/// must respect the (max-1)(min-1) bound.
pub fn suite_frobenius(count: usize, master_seed: u64) -> SuiteReport {
    let limits = Limits::default();
    let mut report = run_suite("frobenius", count, master_seed, |rng| {
        let periods: Vec<u64> = loop {
            let size = rng.random_range(2..=4usize);
            let mut values: Vec<u64> = (0..size).map(|_| rng.random_range(2..=60)).collect();
            values.sort_unstable();
            values.dedup();
            if values.len() >= 2 && values.iter().fold(0u64, |g, &v| g.gcd(&v)) == 1 {
                break values;
            }
        };
        let big: Vec<BigUint> = periods.iter().map(|&v| BigUint::from(v)).collect();
        let computed = lift(frobenius_number(&big, &limits))?
            .map(|f| u64::try_from(&f).expect("small by the bound"));
        let scanned = frobenius_by_scan(&periods);
        if computed != scanned {
            return Err(format!(
                "table computation gives {computed:?}, independent scan gives {scanned:?} for {periods:?}"
            ));
        }
        let f = computed.expect("gcd 1 and min >= 2 leave a gap");
        let bound = (periods.iter().max().unwrap() - 1) * (periods.iter().min().unwrap() - 1);
        if f >= bound {
            return Err(format!(
                "gap {f} violates the bound {bound} for {periods:?}"
            ));
        }
        Ok(())
    });

    // Two pinned instances with well-known values.
    report.cases += 2;
    for (periods, expected) in [(vec![3u64, 5], 7u64), (vec![6, 9, 20], 43)] {
        let big: Vec<BigUint> = periods.iter().map(|&v| BigUint::from(v)).collect();
        let ok = matches!(
            frobenius_number(&big, &limits),
            Ok(Some(ref f)) if u64::try_from(f) == Ok(expected)
        ) && frobenius_by_scan(&periods) == Some(expected);
        if !ok {
            report.failures.push(CaseFailure {
                seed: 0,
                message: format!("fixed instance {periods:?} must have gap {expected}"),
            });
        }
    }
    report
}
