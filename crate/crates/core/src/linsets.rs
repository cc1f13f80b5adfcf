//! Multidimensional linear sets and their brute-force containment oracles.
//!
//! A linear set is described by a constant vector and a list of period
//! vectors; it contains every `constant + sum of periods with repetition`.
//! Containment of two such sets is undecidable to do cleverly at this
//! level of generality within this crate's scope — the procedures here are
//! honest bounded searches used as ground truth for the reductions, plus
//! the promise check that the polynomial 1-D pipeline relies on.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::natvec::NatVec;

/// `constant + <periods>`: all sums of the constant and any multiset of
/// period vectors. Zero period vectors are tolerated (they generate
/// nothing); membership and containment drop them internally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSetDesc {
    constant: NatVec,
    periods: Vec<NatVec>,
}

impl LinearSetDesc {
    pub fn new(constant: NatVec, periods: Vec<NatVec>) -> Result<Self> {
        let dim = constant.dim();
        for (i, p) in periods.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::invalid(format!(
                    "period {} has dimension {}, expected {}",
                    i + 1,
                    p.dim(),
                    dim
                )));
            }
        }
        Ok(LinearSetDesc { constant, periods })
    }

    pub fn dim(&self) -> usize {
        self.constant.dim()
    }

    pub fn constant(&self) -> &NatVec {
        &self.constant
    }

    pub fn periods(&self) -> &[NatVec] {
        &self.periods
    }
}

/// A containment question `lhs ⊆ rhs` between linear sets of equal
/// dimension, where the rhs constant is the zero vector, together with the
/// promise parameter `s`: coefficient vectors of the lhs periods that are
/// *not* 0/1-vectors with exactly `s` ones are promised (and checked, up to
/// a bound) to land in the rhs regardless.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromiseContainmentInstance {
    lhs: LinearSetDesc,
    rhs: LinearSetDesc,
    s: usize,
}

impl PromiseContainmentInstance {
    pub fn new(lhs: LinearSetDesc, rhs: LinearSetDesc, s: usize) -> Result<Self> {
        if lhs.dim() != rhs.dim() {
            return Err(Error::invalid(format!(
                "containment needs equal dimensions, got {} and {}",
                lhs.dim(),
                rhs.dim()
            )));
        }
        if !rhs.constant().is_zero() {
            return Err(Error::Unsupported(
                "containment target must have a zero constant vector".into(),
            ));
        }
        if s == 0 || s > lhs.periods().len() {
            return Err(Error::invalid(format!(
                "selection size s={} must satisfy 1 <= s <= {} (number of lhs periods)",
                s,
                lhs.periods().len()
            )));
        }
        Ok(PromiseContainmentInstance { lhs, rhs, s })
    }

    pub fn lhs(&self) -> &LinearSetDesc {
        &self.lhs
    }

    pub fn rhs(&self) -> &LinearSetDesc {
        &self.rhs
    }

    pub fn s(&self) -> usize {
        self.s
    }
}

/// Exact membership in the span of a period list, with memoization on the
/// residual vector. Every period is nonzero here, so each subtraction
/// strictly shrinks the component sum and the search space is finite: this
/// decides membership exactly, the "bounded" part being the implied bound
/// on each coefficient, not an approximation.
///
/// The memo is shared across queries, so callers that test many points
/// against the same span should reuse one value of this type.
pub struct SpanMembership {
    periods: Vec<NatVec>,
    memo: HashMap<NatVec, bool>,
}

impl SpanMembership {
    pub fn new(periods: &[NatVec]) -> Self {
        let mut periods: Vec<NatVec> = periods.iter().filter(|p| !p.is_zero()).cloned().collect();
        // Largest first: greedy descent reaches zero (or exhausts) sooner.
        periods.sort_by(|a, b| b.component_sum().cmp(&a.component_sum()));
        periods.dedup();
        SpanMembership {
            periods,
            memo: HashMap::new(),
        }
    }

    pub fn contains(&mut self, v: &NatVec) -> bool {
        fn go(periods: &[NatVec], memo: &mut HashMap<NatVec, bool>, v: &NatVec) -> bool {
            if v.is_zero() {
                return true;
            }
            if let Some(&known) = memo.get(v) {
                return known;
            }
            let found = periods.iter().any(|p| match v.checked_sub(p) {
                Some(rest) => go(periods, memo, &rest),
                None => false,
            });
            memo.insert(v.clone(), found);
            found
        }
        go(&self.periods, &mut self.memo, v)
    }
}

/// Is `v` in the linear set? Exact: the search over coefficient vectors is
/// finite because each nonzero period consumes at least one unit of some
/// coordinate of the residual.
pub fn member_bounded(v: &NatVec, set: &LinearSetDesc) -> Result<bool> {
    if v.dim() != set.dim() {
        return Err(Error::invalid(format!(
            "point has dimension {}, set has dimension {}",
            v.dim(),
            set.dim()
        )));
    }
    match v.checked_sub(set.constant()) {
        None => Ok(false),
        Some(residual) => Ok(SpanMembership::new(set.periods()).contains(&residual)),
    }
}

/// A counterexample to bounded containment: the lhs coefficients tried and
/// the point they generate, which is not in the rhs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedWitness {
    pub coefficients: Vec<u64>,
    pub point: NatVec,
}

/// Odometer over coefficient vectors with per-position inclusive bounds.
/// The last position varies fastest, so enumeration order (and therefore
/// every reported witness) is deterministic.
struct Odometer {
    digits: Vec<u64>,
    bounds: Vec<u64>,
}

impl Odometer {
    fn new(bounds: Vec<u64>) -> Self {
        Odometer {
            digits: vec![0; bounds.len()],
            bounds,
        }
    }

    fn states(bounds: &[u64]) -> u128 {
        bounds
            .iter()
            .fold(1u128, |acc, &b| acc.saturating_mul(b as u128 + 1))
    }

    fn advance(&mut self) -> bool {
        for i in (0..self.digits.len()).rev() {
            if self.digits[i] < self.bounds[i] {
                self.digits[i] += 1;
                for d in &mut self.digits[i + 1..] {
                    *d = 0;
                }
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }
}

fn combination(constant: &NatVec, periods: &[NatVec], coeffs: &[u64]) -> NatVec {
    let mut point = constant.clone();
    for (p, &x) in periods.iter().zip(coeffs) {
        if x > 0 {
            point = point
                .checked_add(&p.scaled(&BigUint::from(x)))
                .expect("dims validated at construction");
        }
    }
    point
}

/// First coefficient vector (odometer order, bound `coeff_bound` per lhs
/// period) whose generated point is outside the rhs, or None if all such
/// points are inside. Zero lhs periods are pinned to coefficient 0.
pub fn containment_bounded_witness(
    lhs: &LinearSetDesc,
    rhs: &LinearSetDesc,
    coeff_bound: u64,
    limits: &Limits,
) -> Result<Option<BoundedWitness>> {
    if lhs.dim() != rhs.dim() {
        return Err(Error::invalid(format!(
            "containment needs equal dimensions, got {} and {}",
            lhs.dim(),
            rhs.dim()
        )));
    }
    let bounds: Vec<u64> = lhs
        .periods()
        .iter()
        .map(|p| if p.is_zero() { 0 } else { coeff_bound })
        .collect();
    let states = Odometer::states(&bounds);
    if states > limits.enum_budget as u128 {
        return Err(Error::budget("coefficient vectors", states, limits.enum_budget));
    }

    let mut rhs_membership = SpanMembership::new(rhs.periods());
    let mut odo = Odometer::new(bounds);
    loop {
        let point = combination(lhs.constant(), lhs.periods(), &odo.digits);
        let inside = match point.checked_sub(rhs.constant()) {
            None => false,
            Some(residual) => rhs_membership.contains(&residual),
        };
        if !inside {
            return Ok(Some(BoundedWitness {
                coefficients: odo.digits.clone(),
                point,
            }));
        }
        if !odo.advance() {
            return Ok(None);
        }
    }
}

/// True iff every lhs point generated with coefficients up to `coeff_bound`
/// lies in the rhs.
pub fn containment_bounded(
    lhs: &LinearSetDesc,
    rhs: &LinearSetDesc,
    coeff_bound: u64,
    limits: &Limits,
) -> Result<bool> {
    Ok(containment_bounded_witness(lhs, rhs, coeff_bound, limits)?.is_none())
}

/// Is `x` a 0/1 vector with exactly `s` ones?
pub fn is_selection_vector(x: &[u64], s: usize) -> bool {
    x.iter().all(|&d| d <= 1) && x.iter().filter(|&&d| d == 1).count() == s
}

/// Verify the instance's promise up to a coefficient bound: every lhs
/// combination whose coefficient vector is NOT a 0/1 vector with exactly
/// `s` ones must land in the rhs span. Enumerates all coefficient vectors
/// including those of zero periods, because "exactly s ones" counts
/// positions, not values.
pub fn check_promise(
    inst: &PromiseContainmentInstance,
    coeff_bound: u64,
    limits: &Limits,
) -> Result<bool> {
    let k = inst.lhs().periods().len();
    let bounds = vec![coeff_bound; k];
    let states = Odometer::states(&bounds);
    if states > limits.enum_budget as u128 {
        return Err(Error::budget("coefficient vectors", states, limits.enum_budget));
    }

    let mut rhs_membership = SpanMembership::new(inst.rhs().periods());
    let mut odo = Odometer::new(bounds);
    loop {
        if !is_selection_vector(&odo.digits, inst.s()) {
            let point = combination(inst.lhs().constant(), inst.lhs().periods(), &odo.digits);
            if !rhs_membership.contains(&point) {
                return Ok(false);
            }
        }
        if !odo.advance() {
            return Ok(true);
        }
    }
}
