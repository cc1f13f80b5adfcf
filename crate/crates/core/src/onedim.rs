//! One-dimensional linear sets: `constant + <periods>` over the naturals.
//!
//! This is the level where containment stops being brute force. The key
//! fact: when the target periods have gcd 1, every value at least
//! `(max-1)(min-1)` is representable, so containment only needs a finite
//! scan after some gcd bookkeeping. [`containment_1d_poly`] implements
//! that; [`containment_1d_bounded`] is the independent slow oracle it is
//! tested against.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// `constant + <periods>` in one dimension. Periods are strictly positive;
/// a zero period is rejected at construction. An empty period list is
/// representable (the singleton {constant}) but the containment procedures
/// require both lists nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneDimLinearSet {
    constant: BigUint,
    periods: Vec<BigUint>,
}

impl OneDimLinearSet {
    pub fn new(constant: BigUint, periods: Vec<BigUint>) -> Result<Self> {
        if periods.iter().any(|p| p.is_zero()) {
            return Err(Error::invalid("1-D periods must be strictly positive"));
        }
        Ok(OneDimLinearSet { constant, periods })
    }

    pub fn from_u64s(constant: u64, periods: &[u64]) -> Result<Self> {
        OneDimLinearSet::new(
            BigUint::from(constant),
            periods.iter().map(|&p| BigUint::from(p)).collect(),
        )
    }

    pub fn constant(&self) -> &BigUint {
        &self.constant
    }

    pub fn periods(&self) -> &[BigUint] {
        &self.periods
    }

    /// Every number scaled by `k` (for scale-invariance checks).
    pub fn scaled(&self, k: &BigUint) -> Result<OneDimLinearSet> {
        if k.is_zero() {
            return Err(Error::invalid("scale factor must be positive"));
        }
        OneDimLinearSet::new(
            &self.constant * k,
            self.periods.iter().map(|p| p * k).collect(),
        )
    }

    pub fn max_bits(&self) -> u64 {
        self.periods
            .iter()
            .map(|p| p.bits())
            .chain([self.constant.bits()])
            .max()
            .unwrap_or(0)
    }
}

/// Gcd of a nonempty list.
pub fn gcd_of_set(values: &[BigUint]) -> Result<BigUint> {
    let mut iter = values.iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::invalid("gcd of an empty list"))?;
    Ok(iter.fold(first.clone(), |acc, v| acc.gcd(v)))
}

/// Bit x is set iff x is a sum of periods (with repetition). Packed in
/// 64-bit words; indices beyond `limit` read as false.
pub struct MembershipTable {
    limit: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for MembershipTable {
    // Tables reach hundreds of millions of bits; print a summary, not bits.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MembershipTable")
            .field("limit", &self.limit)
            .finish_non_exhaustive()
    }
}

impl MembershipTable {
    fn new_empty(limit: usize) -> Self {
        MembershipTable {
            limit,
            words: vec![0u64; limit / 64 + 1],
        }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn get(&self, x: usize) -> bool {
        x <= self.limit && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    fn set(&mut self, x: usize) {
        self.words[x / 64] |= 1u64 << (x % 64);
    }

    /// Close the table under +p: bits |= bits shifted by p, chained until
    /// fixpoint. For p >= 64 one ascending word pass suffices (sources lie
    /// in strictly earlier words, so chains propagate within the pass).
    /// For p < 64 source and destination share a word; in-word closure by
    /// doubling shifts, with the single-step carry into the next word.
    fn close_under(&mut self, p: usize) {
        debug_assert!(p >= 1);
        let n = self.words.len();
        if p >= 64 {
            let q = p / 64;
            let r = p % 64;
            for i in q..n {
                let mut src = self.words[i - q] << r;
                if r > 0 && i > q {
                    src |= self.words[i - q - 1] >> (64 - r);
                }
                self.words[i] |= src;
            }
        } else {
            let r = p;
            for i in 0..n {
                let mut w = self.words[i];
                if i > 0 {
                    w |= self.words[i - 1] >> (64 - r);
                }
                let mut shift = r;
                while shift < 64 {
                    w |= w << shift;
                    shift <<= 1;
                }
                self.words[i] = w;
            }
        }
        self.mask_tail();
    }

    fn mask_tail(&mut self) {
        let used = self.limit % 64 + 1;
        if used < 64 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << used) - 1;
        }
    }

    /// Indices of set bits (small tables only; used by tests and reports).
    pub fn ones(&self) -> Vec<usize> {
        (0..=self.limit).filter(|&x| self.get(x)).collect()
    }
}

/// Build the representability table of `<periods>` on [0, limit].
/// Periods larger than `limit` cannot contribute and are skipped;
/// zero periods are rejected; `limit` is checked against the DP budget.
pub fn membership_table(
    periods: &[BigUint],
    limit: usize,
    limits: &Limits,
) -> Result<MembershipTable> {
    if limit as u64 > limits.dp_budget {
        return Err(Error::budget("membership table size", limit, limits.dp_budget));
    }
    if periods.iter().any(|p| p.is_zero()) {
        return Err(Error::invalid("periods must be strictly positive"));
    }
    let mut table = MembershipTable::new_empty(limit);
    table.set(0);
    let mut small: Vec<usize> = periods
        .iter()
        .filter(|p| **p <= BigUint::from(limit))
        .map(|p| usize::try_from(p).expect("bounded by limit"))
        .collect();
    small.sort_unstable();
    small.dedup();
    for p in small {
        table.close_under(p);
    }
    Ok(table)
}

/// Largest non-representable number for a gcd-1 period set, or None when 1
/// is a period (then everything is representable). Requires gcd exactly 1.
pub fn frobenius_number(periods: &[BigUint], limits: &Limits) -> Result<Option<BigUint>> {
    if periods.is_empty() {
        return Err(Error::invalid("period list must be nonempty"));
    }
    if !gcd_of_set(periods)?.is_one() {
        return Err(Error::invalid("frobenius number needs gcd exactly 1"));
    }
    if periods.iter().any(|p| p.is_one()) {
        return Ok(None);
    }
    let max = periods.iter().max().unwrap();
    let min = periods.iter().min().unwrap();
    // Everything >= (max-1)(min-1) is representable, so the scan can stop
    // one below that product. min >= 2 here, so 1 is never representable
    // and the scan always finds something.
    let bound = (max - 1u32) * (min - 1u32);
    let top = &bound - 1u32;
    let top = usize::try_from(&top)
        .map_err(|_| Error::budget("membership table size", &top, limits.dp_budget))?;
    let table = membership_table(periods, top, limits)?;
    let witness = (0..=top)
        .rev()
        .find(|&x| !table.get(x))
        .expect("1 is not representable when every period is >= 2");
    Ok(Some(BigUint::from(witness)))
}

/// Outcome of a containment check with an optional counterexample: a value
/// in the lhs set but not the rhs set.
type Witness = Option<BigUint>;

fn to_table_index(v: &BigUint, limits: &Limits) -> Result<usize> {
    match usize::try_from(v) {
        Ok(x) if x as u64 <= limits.dp_budget => Ok(x),
        _ => Err(Error::budget(
            "membership table size",
            crate::error::approx_count(v),
            limits.dp_budget,
        )),
    }
}

/// Polynomial containment test for `lhs ⊆ rhs`.
///
/// 1. Necessary arithmetic: rhs constant at most lhs constant, rhs period
///    gcd divides both the lhs gcd and the constants' difference.
/// 2. Divide everything by the rhs gcd.
/// 3. If the rhs now has period 1 it covers every large enough value.
/// 4. Otherwise every value at least `(max-1)(min-1)` of the reduced rhs
///    periods is representable, so only the finite prefix below that needs
///    the table scan.
pub fn containment_1d_poly(
    lhs: &OneDimLinearSet,
    rhs: &OneDimLinearSet,
    limits: &Limits,
) -> Result<bool> {
    Ok(poly_impl(lhs, rhs, limits, false)?.is_none())
}

/// Same procedure, but on non-containment produces a member of lhs \ rhs.
/// May need an extra Frobenius computation in the gcd-failure branch, which
/// the plain boolean test skips.
pub fn containment_1d_poly_witness(
    lhs: &OneDimLinearSet,
    rhs: &OneDimLinearSet,
    limits: &Limits,
) -> Result<Witness> {
    poly_impl(lhs, rhs, limits, true)
}

/// None = contained. Some(w) = not contained; `w` is a real counterexample
/// when `want_witness`, or a placeholder zero when the caller only needs
/// the boolean (saves a Frobenius computation in one branch).
fn poly_impl(
    lhs: &OneDimLinearSet,
    rhs: &OneDimLinearSet,
    limits: &Limits,
    want_witness: bool,
) -> Result<Witness> {
    if lhs.periods().is_empty() || rhs.periods().is_empty() {
        return Err(Error::invalid("containment requires nonempty period lists"));
    }
    let c = lhs.constant();
    let c_rhs = rhs.constant();
    let g = gcd_of_set(lhs.periods())?;
    let g_rhs = gcd_of_set(rhs.periods())?;

    // The smallest rhs element is its constant; every rhs element is
    // congruent to the constant modulo the rhs gcd.
    if c < c_rhs {
        return Ok(Some(c.clone()));
    }
    let offset = c - c_rhs;
    if !(&offset % &g_rhs).is_zero() {
        return Ok(Some(c.clone()));
    }
    if !(&g % &g_rhs).is_zero() {
        if !want_witness {
            return Ok(Some(BigUint::ZERO));
        }
        return Ok(Some(gcd_failure_witness(lhs, c_rhs, &g, &g_rhs, limits)?));
    }

    // Normalize by the rhs gcd. It divides every number still in play.
    let offset = &offset / &g_rhs;
    let lhs_periods: Vec<BigUint> = lhs.periods().iter().map(|p| p / &g_rhs).collect();
    let rhs_periods: Vec<BigUint> = rhs.periods().iter().map(|p| p / &g_rhs).collect();

    if rhs_periods.iter().any(|p| p.is_one()) {
        return Ok(None);
    }

    let max = rhs_periods.iter().max().unwrap();
    let min = rhs_periods.iter().min().unwrap();
    let bound = (max - 1u32) * (min - 1u32);
    if offset > bound {
        // Every lhs element already clears the representability threshold.
        return Ok(None);
    }
    let top = to_table_index(&bound, limits)?;
    let offset = usize::try_from(&offset).expect("bounded by table top");

    let rhs_table = membership_table(&rhs_periods, top, limits)?;
    let lhs_table = membership_table(&lhs_periods, top - offset, limits)?;
    for x in 0..=(top - offset) {
        if lhs_table.get(x) && !rhs_table.get(offset + x) {
            let witness = (BigUint::from(offset + x)) * &g_rhs + c_rhs;
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// Counterexample for the branch where the rhs gcd does not divide the lhs
/// gcd. Two consecutive representable multiples of the lhs gcd (consecutive
/// above the Frobenius number of the gcd-reduced lhs periods, so both are
/// really in the lhs set) differ by the lhs gcd; the rhs gcd cannot divide
/// both offsets, and an offset it does not divide is outside the rhs.
fn gcd_failure_witness(
    lhs: &OneDimLinearSet,
    rhs_constant: &BigUint,
    g: &BigUint,
    g_rhs: &BigUint,
    limits: &Limits,
) -> Result<BigUint> {
    let reduced: Vec<BigUint> = lhs.periods().iter().map(|p| p / g).collect();
    let candidates: Vec<BigUint> = if reduced.iter().any(|p| p.is_one()) {
        vec![lhs.constant() + g, lhs.constant() + g * 2u32]
    } else {
        let f = frobenius_number(&reduced, limits)?
            .expect("no period 1 in the reduced list");
        vec![
            lhs.constant() + g * (&f + 1u32),
            lhs.constant() + g * (&f + 2u32),
        ]
    };
    Ok(candidates
        .into_iter()
        .find(|v| !((v - rhs_constant) % g_rhs).is_zero())
        .expect("the candidates differ by g, which g_rhs does not divide"))
}

/// Slow reference oracle: check every value up to `value_bound` directly
/// against membership tables of both sides.
pub fn containment_1d_bounded(
    lhs: &OneDimLinearSet,
    rhs: &OneDimLinearSet,
    value_bound: u64,
    limits: &Limits,
) -> Result<bool> {
    Ok(containment_1d_bounded_witness(lhs, rhs, value_bound, limits)?.is_none())
}

/// Smallest value at most `value_bound` in lhs but not rhs, if any.
pub fn containment_1d_bounded_witness(
    lhs: &OneDimLinearSet,
    rhs: &OneDimLinearSet,
    value_bound: u64,
    limits: &Limits,
) -> Result<Witness> {
    if lhs.periods().is_empty() || rhs.periods().is_empty() {
        return Err(Error::invalid("containment requires nonempty period lists"));
    }
    if value_bound > limits.dp_budget {
        return Err(Error::budget("membership table size", value_bound, limits.dp_budget));
    }
    let bound = usize::try_from(value_bound).expect("dp budgets fit usize");
    let big_bound = BigUint::from(value_bound);

    if lhs.constant() > &big_bound {
        return Ok(None); // nothing from lhs in range
    }
    let lhs_base = usize::try_from(lhs.constant()).expect("bounded");
    let lhs_table = membership_table(lhs.periods(), bound - lhs_base, limits)?;

    let rhs_in_range = rhs.constant() <= &big_bound;
    let rhs_base = if rhs_in_range {
        usize::try_from(rhs.constant()).expect("bounded")
    } else {
        0
    };
    let rhs_table = if rhs_in_range {
        Some(membership_table(rhs.periods(), bound - rhs_base, limits)?)
    } else {
        None
    };

    for x in lhs_base..=bound {
        if !lhs_table.get(x - lhs_base) {
            continue;
        }
        let inside = match &rhs_table {
            Some(table) => x >= rhs_base && table.get(x - rhs_base),
            None => false,
        };
        if !inside {
            return Ok(Some(BigUint::from(x)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn bv(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| b(x)).collect()
    }

    /// Independent per-bit DP, no word tricks.
    fn naive_table(periods: &[u64], limit: usize) -> Vec<bool> {
        let mut dp = vec![false; limit + 1];
        dp[0] = true;
        for x in 1..=limit {
            dp[x] = periods
                .iter()
                .any(|&p| p as usize <= x && dp[x - p as usize]);
        }
        dp
    }

    #[test]
    fn table_for_three_and_five() {
        let t = membership_table(&bv(&[3, 5]), 8, &Limits::default()).unwrap();
        assert_eq!(t.ones(), vec![0, 3, 5, 6, 8]);
    }

    #[test]
    fn word_parallel_table_matches_naive_dp() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7ab1e);
        let limits = Limits::default();
        for _ in 0..200 {
            let k = rng.random_range(1..=3);
            let periods: Vec<u64> = (0..k).map(|_| rng.random_range(1..=150)).collect();
            let limit = rng.random_range(0..=400);
            let table = membership_table(&bv(&periods), limit, &limits).unwrap();
            let naive = naive_table(&periods, limit);
            for (x, &want) in naive.iter().enumerate() {
                assert_eq!(table.get(x), want, "P={periods:?} limit={limit} x={x}");
            }
        }
    }

    #[test]
    fn adding_a_period_only_adds_members() {
        let limits = Limits::default();
        let small = membership_table(&bv(&[4, 9]), 60, &limits).unwrap();
        let large = membership_table(&bv(&[4, 9, 7]), 60, &limits).unwrap();
        for x in 0..=60 {
            assert!(!small.get(x) || large.get(x));
        }
    }

    #[test]
    fn table_rejects_zero_period() {
        assert!(membership_table(&bv(&[0, 3]), 10, &Limits::default()).is_err());
    }

    #[test]
    fn table_budget_enforced() {
        let limits = Limits { dp_budget: 100, ..Limits::default() };
        assert!(membership_table(&bv(&[3]), 101, &limits).unwrap_err().is_budget());
    }

    #[test]
    fn gcds() {
        assert_eq!(gcd_of_set(&bv(&[6, 9, 20])).unwrap(), b(1));
        assert_eq!(gcd_of_set(&bv(&[4, 6])).unwrap(), b(2));
        assert!(gcd_of_set(&[]).is_err());
    }

    #[test]
    fn frobenius_values() {
        let limits = Limits::default();
        assert_eq!(frobenius_number(&bv(&[3, 5]), &limits).unwrap(), Some(b(7)));
        assert_eq!(frobenius_number(&bv(&[6, 9, 20]), &limits).unwrap(), Some(b(43)));
        assert_eq!(frobenius_number(&bv(&[2, 3]), &limits).unwrap(), Some(b(1)));
        assert_eq!(frobenius_number(&bv(&[1, 7]), &limits).unwrap(), None);
        assert!(frobenius_number(&bv(&[4, 6]), &limits).is_err());
    }

    #[test]
    fn poly_containment_same_semigroup() {
        let limits = Limits::default();
        let lhs = OneDimLinearSet::from_u64s(8, &[3, 5]).unwrap();
        let rhs = OneDimLinearSet::from_u64s(0, &[3, 5]).unwrap();
        assert!(containment_1d_poly(&lhs, &rhs, &limits).unwrap());
    }

    #[test]
    fn poly_containment_witness_below_frobenius() {
        let limits = Limits::default();
        let lhs = OneDimLinearSet::from_u64s(4, &[3, 5]).unwrap();
        let rhs = OneDimLinearSet::from_u64s(0, &[3, 5]).unwrap();
        assert!(!containment_1d_poly(&lhs, &rhs, &limits).unwrap());
        assert_eq!(
            containment_1d_poly_witness(&lhs, &rhs, &limits).unwrap(),
            Some(b(4))
        );
    }

    #[test]
    fn poly_containment_congruence_failure() {
        let limits = Limits::default();
        let lhs = OneDimLinearSet::from_u64s(1, &[2]).unwrap();
        let rhs = OneDimLinearSet::from_u64s(0, &[2]).unwrap();
        assert_eq!(
            containment_1d_poly_witness(&lhs, &rhs, &limits).unwrap(),
            Some(b(1))
        );
    }

    #[test]
    fn poly_containment_rhs_contains_one() {
        let limits = Limits::default();
        let lhs = OneDimLinearSet::from_u64s(0, &[2, 3]).unwrap();
        let rhs = OneDimLinearSet::from_u64s(0, &[1]).unwrap();
        assert!(containment_1d_poly(&lhs, &rhs, &limits).unwrap());
    }

    #[test]
    fn poly_containment_common_divisor() {
        let limits = Limits::default();
        let lhs = OneDimLinearSet::from_u64s(0, &[4, 6]).unwrap();
        let rhs = OneDimLinearSet::from_u64s(0, &[2]).unwrap();
        assert!(containment_1d_poly(&lhs, &rhs, &limits).unwrap());
        // and not the other way around: 2 is in <2> but not <4,6>
        assert_eq!(
            containment_1d_poly_witness(&rhs, &lhs, &limits).unwrap(),
            Some(b(2))
        );
    }

    #[test]
    fn poly_containment_gcd_failure_witness() {
        let limits = Limits::default();
        let lhs = OneDimLinearSet::from_u64s(0, &[4, 6]).unwrap();
        let rhs = OneDimLinearSet::from_u64s(0, &[3]).unwrap();
        let w = containment_1d_poly_witness(&lhs, &rhs, &limits)
            .unwrap()
            .unwrap();
        assert_eq!(w, b(4));
        // and it really separates the sets
        let x = usize::try_from(&w).unwrap();
        assert!(membership_table(lhs.periods(), x, &limits).unwrap().get(x));
        assert!(!membership_table(rhs.periods(), x, &limits).unwrap().get(x));
    }

    #[test]
    fn bounded_agrees_on_named_cases() {
        let limits = Limits::default();
        let cases: &[(u64, &[u64], u64, &[u64], bool)] = &[
            (8, &[3, 5], 0, &[3, 5], true),
            (4, &[3, 5], 0, &[3, 5], false),
            (1, &[2], 0, &[2], false),
            (0, &[4, 6], 0, &[2], true),
            (0, &[2, 3], 0, &[1], true),
        ];
        for &(cl, pl, cr, pr, want) in cases {
            let lhs = OneDimLinearSet::from_u64s(cl, pl).unwrap();
            let rhs = OneDimLinearSet::from_u64s(cr, pr).unwrap();
            assert_eq!(containment_1d_bounded(&lhs, &rhs, 200, &limits).unwrap(), want);
            assert_eq!(containment_1d_poly(&lhs, &rhs, &limits).unwrap(), want);
        }
    }

    #[test]
    fn bounded_witness_is_smallest() {
        let limits = Limits::default();
        let lhs = OneDimLinearSet::from_u64s(4, &[3, 5]).unwrap();
        let rhs = OneDimLinearSet::from_u64s(0, &[3, 5]).unwrap();
        assert_eq!(
            containment_1d_bounded_witness(&lhs, &rhs, 200, &limits).unwrap(),
            Some(b(4))
        );
    }

    #[test]
    fn scale_invariance() {
        let limits = Limits::default();
        let lhs = OneDimLinearSet::from_u64s(4, &[3, 5]).unwrap();
        let rhs = OneDimLinearSet::from_u64s(0, &[3, 7]).unwrap();
        let k = b(5);
        assert_eq!(
            containment_1d_poly(&lhs, &rhs, &limits).unwrap(),
            containment_1d_poly(&lhs.scaled(&k).unwrap(), &rhs.scaled(&k).unwrap(), &limits)
                .unwrap()
        );
    }

    #[test]
    fn empty_period_lists_rejected() {
        let limits = Limits::default();
        let empty = OneDimLinearSet::new(b(3), vec![]).unwrap();
        let full = OneDimLinearSet::from_u64s(0, &[2]).unwrap();
        assert!(containment_1d_poly(&empty, &full, &limits).is_err());
        assert!(containment_1d_poly(&full, &empty, &limits).is_err());
        assert!(containment_1d_bounded(&full, &empty, 10, &limits).is_err());
    }

    #[test]
    fn zero_period_rejected_at_construction() {
        assert!(OneDimLinearSet::from_u64s(1, &[0, 2]).is_err());
    }
}
