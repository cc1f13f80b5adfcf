//! The constructive reduction chain.
//!
//! Four stages, each preserving the answer of the previous one:
//!
//! 1. a two-block DNF formula becomes a pair of sum-of-choices expressions
//!    whose language containment matches the forall-exists-false oracle;
//! 2. an expression containment question becomes a promise containment
//!    question between multidimensional linear sets;
//! 3. a system of linear equations over the naturals is aggregated, two
//!    rows at a time, into a single equation with the same solution set;
//! 4. using that aggregation, the multidimensional promise instance
//!    becomes a one-dimensional containment question, which the
//!    polynomial procedure in [`crate::onedim`] decides.
//!
//! Every constructor here returns a trace carrying the intermediate
//! objects, so tests and the command-line tool can re-derive and verify
//! each claimed identity instead of trusting the chain.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::{self, UnionSumExpr};
use crate::limits::Limits;
use crate::linsets::{containment_bounded, LinearSetDesc, PromiseContainmentInstance};
use crate::natvec::NatVec;
use crate::onedim::{containment_1d_poly, OneDimLinearSet};
use crate::qbf::{forall_exists_false, Block, DnfFormula};

/// Marker used whenever a stage's decision procedure was not run because
/// the numbers outgrew the configured desk-scale budgets.
pub const UNDECIDED_MARKER: &str = "UNDECIDED-AT-DESK-SCALE";

// --------------------------------------------------- formula -> expressions

/// Build the expression pair whose language containment holds iff for
/// every block-1 assignment some block-2 assignment falsifies `f`.
///
/// With n variables per block and m monomials:
/// - the lhs sums n all-ones choice pairs and, per block-1 variable, the
///   complements of its positive/negative occurrence indicators — so every
///   lhs vector counts, per monomial, how many of the n block-1 variable
///   slots failed to kill that monomial, offset by n;
/// - the rhs can reach any value in {0..2n-1} per coordinate via unit
///   choices, topped up with the block-2 occurrence indicators — exactly
///   the counts that block-2 assignments can realize when they finish
///   killing every monomial.
pub fn reduce_qbf_to_expr(f: &DnfFormula) -> Result<(UnionSumExpr, UnionSumExpr)> {
    let n = f.vars_per_block();
    let m = f.monomials().len();

    // Occurrence indicators: per variable and block, one bit per monomial.
    let mut pos_bits = vec![[vec![false; m], vec![false; m]]; n]; // [var][block][monomial]
    let mut neg_bits = vec![[vec![false; m], vec![false; m]]; n];
    for (j, monomial) in f.monomials().iter().enumerate() {
        for lit in monomial {
            let b = if lit.block == Block::First { 0 } else { 1 };
            if lit.negated {
                neg_bits[lit.index - 1][b][j] = true;
            } else {
                pos_bits[lit.index - 1][b][j] = true;
            }
        }
    }
    let to_vec = |bits: &[bool]| {
        NatVec::new(
            bits.iter()
                .map(|&b| BigUint::from(u8::from(b)))
                .collect(),
        )
        .expect("m >= 1")
    };

    let ones = NatVec::repeated(1, m);
    let zero = NatVec::zeros(m);

    let mut lhs_terms = Vec::with_capacity(2 * n);
    for _ in 0..n {
        lhs_terms.push((ones.clone(), ones.clone()));
    }
    for var in 0..n {
        lhs_terms.push((
            to_vec(&pos_bits[var][0]).binary_complement(),
            to_vec(&neg_bits[var][0]).binary_complement(),
        ));
    }

    let mut rhs_terms = Vec::with_capacity(m * (2 * n - 1) + n);
    for j in 0..m {
        for _ in 0..(2 * n - 1) {
            rhs_terms.push((NatVec::unit(j, m), zero.clone()));
        }
    }
    for var in 0..n {
        rhs_terms.push((to_vec(&pos_bits[var][1]), to_vec(&neg_bits[var][1])));
    }

    Ok((
        UnionSumExpr::new(m, lhs_terms)?,
        UnionSumExpr::new(m, rhs_terms)?,
    ))
}

// ------------------------------------------------ expressions -> linear sets

/// The linear-set encoding of an expression containment question, with all
/// construction pieces exposed.
///
/// The instance lives in dimension `2m + 2s` laid out as four sections:
/// the m base coordinates, two control sections of s coordinates each, and
/// m counter coordinates. The lhs periods encode "pick atom 1 or atom 2 of
/// term i"; the first rhs group encodes the same picks for the target
/// expression (and completes the control pattern); the second rhs group
/// exists so that every coefficient vector that is NOT a one-pick-per-term
/// selection still lands inside the rhs span.
#[derive(Debug, Clone)]
pub struct ExprToLinearReduction {
    pub instance: PromiseContainmentInstance,
    /// lhs periods: one per (term, atom) of the padded lhs expression.
    pub choice_periods: Vec<NatVec>,
    /// rhs periods encoding the target expression's picks.
    pub match_periods: Vec<NatVec>,
    /// rhs periods absorbing non-selection combinations.
    pub slack_periods: Vec<NatVec>,
    /// Number of terms after padding (the promise parameter).
    pub padded_terms: usize,
    /// One more than the largest coordinate value in the lhs language.
    pub counter_bound: usize,
}

pub fn reduce_expr_to_linear(
    lhs: &UnionSumExpr,
    rhs: &UnionSumExpr,
) -> Result<ExprToLinearReduction> {
    let (lhs, rhs) = expr::pad_to_equal_terms(lhs, rhs)?;
    let s = lhs.term_count();
    if s == 0 {
        return Err(Error::invalid(
            "expressions must have at least one term to encode",
        ));
    }
    let m = lhs.dim();

    // Section builders over the 2m + 2s layout.
    let zero_m = NatVec::zeros(m);
    let zero_s = NatVec::zeros(s);
    let ones_m = NatVec::repeated(1, m);
    let ones_s = NatVec::repeated(1, s);
    let assemble = |b: &NatVec, c1: &NatVec, c2: &NatVec, counter: &NatVec| {
        NatVec::concat(&[b, c1, c2, counter])
    };

    let constant = assemble(&zero_m, &NatVec::repeated(2, s), &ones_s, &ones_m);

    let mut choice_periods = Vec::with_capacity(2 * s);
    for (i, (a, b)) in lhs.terms().iter().enumerate() {
        for atom in [a, b] {
            choice_periods.push(assemble(atom, &NatVec::unit(i, s), &zero_s, &zero_m));
        }
    }

    let mut match_periods = Vec::with_capacity(2 * s);
    for (i, (a, b)) in rhs.terms().iter().enumerate() {
        let counter = if i == s - 1 { &ones_m } else { &zero_m };
        for atom in [a, b] {
            match_periods.push(assemble(
                atom,
                &NatVec::scaled_unit(3, i, s),
                &NatVec::unit(i, s),
                counter,
            ));
        }
    }

    // One more than any coordinate the lhs language can reach.
    let counter_bound = usize::try_from(lhs.component_max().max_entry())
        .map_err(|_| Error::invalid("lhs expression coordinates out of range"))?
        + 1;

    let mut slack_periods = Vec::with_capacity(3 * s + m * (counter_bound + 1));
    for i in 0..s {
        slack_periods.push(assemble(&zero_m, &NatVec::scaled_unit(2, i, s), &ones_s, &zero_m));
        slack_periods.push(assemble(&zero_m, &NatVec::scaled_unit(2, i, s), &zero_s, &zero_m));
        slack_periods.push(assemble(&zero_m, &NatVec::scaled_unit(3, i, s), &zero_s, &zero_m));
    }
    for j in 0..m {
        for r in 0..counter_bound {
            slack_periods.push(assemble(
                &NatVec::scaled_unit(r as u64, j, m),
                &zero_s,
                &zero_s,
                &NatVec::unit(j, m),
            ));
        }
        slack_periods.push(assemble(
            &NatVec::scaled_unit(counter_bound as u64, j, m),
            &zero_s,
            &zero_s,
            &zero_m,
        ));
    }

    let mut rhs_periods = match_periods.clone();
    rhs_periods.extend(slack_periods.iter().cloned());
    let instance = PromiseContainmentInstance::new(
        LinearSetDesc::new(constant, choice_periods.clone())?,
        LinearSetDesc::new(NatVec::zeros(2 * m + 2 * s), rhs_periods)?,
        s,
    )?;

    Ok(ExprToLinearReduction {
        instance,
        choice_periods,
        match_periods,
        slack_periods,
        padded_terms: s,
        counter_bound,
    })
}

// ----------------------------------------------------------- row aggregation

/// Result of collapsing equation rows into one row: the multiplier chosen
/// for each original row, the aggregated coefficients, and the aggregated
/// right-hand side. Solution sets over the naturals coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregationResult {
    pub multipliers: Vec<BigUint>,
    pub row: Vec<BigUint>,
    pub rhs: BigUint,
}

fn smallest_nonzero(row: &[BigUint]) -> Option<&BigUint> {
    row.iter().filter(|v| !v.is_zero()).min()
}

/// The three conditions that make `t1*row1 + t2*row2 = t1*b1 + t2*b2`
/// equivalent (over the naturals) to the two-equation system:
/// coprime multipliers, neither multiplier divides the other equation's
/// right-hand side, and each multiplier exceeds that right-hand side minus
/// the other row's smallest nonzero coefficient.
pub fn aggregation_conditions_hold(
    row1: &[BigUint],
    row2: &[BigUint],
    b1: &BigUint,
    b2: &BigUint,
    t1: &BigUint,
    t2: &BigUint,
) -> bool {
    let (Some(a1), Some(a2)) = (smallest_nonzero(row1), smallest_nonzero(row2)) else {
        return false;
    };
    t1.gcd(t2).is_one()
        && !(b2 % t1).is_zero()
        && !(b1 % t2).is_zero()
        && t1 + a2 > *b2
        && t2 + a1 > *b1
}

/// Aggregate two equations `row1 . x = b1`, `row2 . x = b2` into one with
/// the same solutions over the naturals, using the multipliers
/// `t1 = 1 + max(b1, b2)` and `t2 = t1 + 1`.
pub fn aggregate_two(
    row1: &[BigUint],
    row2: &[BigUint],
    b1: &BigUint,
    b2: &BigUint,
) -> Result<AggregationResult> {
    if row1.len() != row2.len() {
        return Err(Error::invalid(format!(
            "rows have different lengths {} and {}",
            row1.len(),
            row2.len()
        )));
    }
    if row1.is_empty() {
        return Err(Error::invalid("rows must have at least one coefficient"));
    }
    if b1.is_zero() || b2.is_zero() {
        return Err(Error::invalid("right-hand sides must be at least 1"));
    }
    if smallest_nonzero(row1).is_none() || smallest_nonzero(row2).is_none() {
        return Err(Error::invalid("rows must each have a nonzero coefficient"));
    }

    let t1 = b1.max(b2) + 1u32;
    let t2 = &t1 + 1u32;
    assert!(
        aggregation_conditions_hold(row1, row2, b1, b2, &t1, &t2),
        "multiplier conditions must hold for t1 = 1 + max(b1, b2), t2 = t1 + 1"
    );

    let row: Vec<BigUint> = row1
        .iter()
        .zip(row2)
        .map(|(x, y)| x * &t1 + y * &t2)
        .collect();
    let rhs = b1 * &t1 + b2 * &t2;
    Ok(AggregationResult {
        multipliers: vec![t1, t2],
        row,
        rhs,
    })
}

/// Left-fold [`aggregate_two`] over the rows of a system, tracking the
/// effective multiplier of every original row (the product of the pairwise
/// multipliers applied to it along the fold).
pub fn aggregate_system(rows: &[Vec<BigUint>], rhs: &[BigUint]) -> Result<AggregationResult> {
    if rows.is_empty() {
        return Err(Error::invalid("system must have at least one row"));
    }
    if rows.len() != rhs.len() {
        return Err(Error::invalid(format!(
            "{} rows but {} right-hand sides",
            rows.len(),
            rhs.len()
        )));
    }
    let width = rows[0].len();
    for row in rows {
        if row.len() != width {
            return Err(Error::invalid("rows have different lengths"));
        }
        if smallest_nonzero(row).is_none() {
            return Err(Error::invalid("rows must each have a nonzero coefficient"));
        }
    }
    if width == 0 {
        return Err(Error::invalid("rows must have at least one coefficient"));
    }
    if rhs.iter().any(|b| b.is_zero()) {
        return Err(Error::invalid("right-hand sides must be at least 1"));
    }

    let mut multipliers = vec![BigUint::one()];
    let mut row = rows[0].clone();
    let mut acc_rhs = rhs[0].clone();
    for i in 1..rows.len() {
        let step = aggregate_two(&row, &rows[i], &acc_rhs, &rhs[i])?;
        let [t1, t2] = &step.multipliers[..] else {
            unreachable!("aggregate_two returns two multipliers")
        };
        for t in &mut multipliers {
            *t *= t1;
        }
        multipliers.push(t2.clone());
        row = step.row;
        acc_rhs = step.rhs;
    }

    // The tracked multipliers must recompose the fold's output exactly.
    for (j, value) in row.iter().enumerate() {
        let recomputed: BigUint = multipliers
            .iter()
            .zip(rows)
            .map(|(t, r)| t * &r[j])
            .sum();
        assert_eq!(*value, recomputed, "multiplier bookkeeping broke at column {j}");
    }
    let recomputed_rhs: BigUint = multipliers.iter().zip(rhs).map(|(t, b)| t * b).sum();
    assert_eq!(acc_rhs, recomputed_rhs, "multiplier bookkeeping broke on the rhs");

    Ok(AggregationResult {
        multipliers,
        row,
        rhs: acc_rhs,
    })
}

// ------------------------------------------------- linear sets -> 1 dimension

/// The 1-D image of a promise containment instance, with the matrices and
/// multipliers that produced it. `lhs_coefficients` / `rhs_coefficients`
/// keep one entry per original period (zero entries included); the emitted
/// 1-D sets drop the zeros, which changes neither set.
#[derive(Debug, Clone)]
pub struct MultidimTo1dReduction {
    pub lhs: OneDimLinearSet,
    pub rhs: OneDimLinearSet,
    /// Row-major lhs period matrix: `lhs_matrix[i][j]` is coordinate i of
    /// lhs period j.
    pub lhs_matrix: Vec<Vec<BigUint>>,
    pub rhs_matrix: Vec<Vec<BigUint>>,
    /// Largest entry across the lhs period matrix.
    pub max_entry: BigUint,
    /// Effective multiplier per dimension from the row aggregation.
    pub multipliers: Vec<BigUint>,
    /// Right-hand side of the aggregated equation (a size proxy for the
    /// whole 1-D instance: every emitted coefficient is bounded by a small
    /// multiple of it).
    pub aggregated_rhs: BigUint,
    pub scalar_constant: BigUint,
    pub lhs_coefficients: Vec<BigUint>,
    pub rhs_coefficients: Vec<BigUint>,
}

/// Collapse a multidimensional promise instance to one dimension.
///
/// Let A have the lhs periods as columns and B the rhs periods. Solutions
/// of `c + Ax = By` with x a selection of exactly s periods are exactly
/// witnesses of membership of an lhs selection point in the rhs. Replacing
/// A by `u - A` entry-wise (u the largest A entry) and the right-hand side
/// by `c + s*u` keeps those witnesses (for selection vectors the added
/// `u * (number of picks)` is the same constant on both sides), makes every
/// coefficient nonnegative, and every right-hand side positive — which is
/// what the row aggregation needs. The aggregated multipliers then turn
/// the original columns into the 1-D instance.
pub fn reduce_multidim_to_1d(inst: &PromiseContainmentInstance) -> Result<MultidimTo1dReduction> {
    let m = inst.lhs().dim();
    let s = inst.s();
    let lhs_periods = inst.lhs().periods();
    let rhs_periods = inst.rhs().periods();

    if rhs_periods.iter().all(|q| q.is_zero()) {
        return Err(Error::invalid(
            "containment target needs at least one nonzero period",
        ));
    }
    if lhs_periods.iter().all(|p| p.is_zero()) {
        return Err(Error::invalid(
            "left-hand set needs at least one nonzero period",
        ));
    }

    let max_entry = lhs_periods
        .iter()
        .map(|p| p.max_entry().clone())
        .max()
        .expect("nonzero period exists");
    let shift = BigUint::from(s as u32) * &max_entry;

    let lhs_matrix: Vec<Vec<BigUint>> = (0..m)
        .map(|i| lhs_periods.iter().map(|p| p.entry(i).clone()).collect())
        .collect();
    let rhs_matrix: Vec<Vec<BigUint>> = (0..m)
        .map(|i| rhs_periods.iter().map(|q| q.entry(i).clone()).collect())
        .collect();

    let mut rows = Vec::with_capacity(m);
    let mut rhs_values = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<BigUint> = lhs_matrix[i].iter().map(|a| &max_entry - a).collect();
        row.extend(rhs_matrix[i].iter().cloned());
        if smallest_nonzero(&row).is_none() {
            return Err(Error::invalid(format!(
                "transformed row {} is all zero; the aggregation multipliers are undefined for it",
                i + 1
            )));
        }
        let b = inst.lhs().constant().entry(i) + &shift;
        if b.is_zero() {
            return Err(Error::invalid(format!(
                "transformed right-hand side is zero in row {}",
                i + 1
            )));
        }
        rows.push(row);
        rhs_values.push(b);
    }

    let aggregated = aggregate_system(&rows, &rhs_values)?;
    let multipliers = aggregated.multipliers.clone();
    let aggregated_rhs = aggregated.rhs.clone();

    let weigh = |column_of: &dyn Fn(usize) -> BigUint| -> BigUint {
        multipliers
            .iter()
            .enumerate()
            .map(|(i, t)| t * column_of(i))
            .sum()
    };
    let scalar_constant = weigh(&|i| inst.lhs().constant().entry(i).clone());
    let lhs_coefficients: Vec<BigUint> = (0..lhs_periods.len())
        .map(|j| weigh(&|i| lhs_matrix[i][j].clone()))
        .collect();
    let rhs_coefficients: Vec<BigUint> = (0..rhs_periods.len())
        .map(|j| weigh(&|i| rhs_matrix[i][j].clone()))
        .collect();

    let lhs = OneDimLinearSet::new(
        scalar_constant.clone(),
        lhs_coefficients
            .iter()
            .filter(|p| !p.is_zero())
            .cloned()
            .collect(),
    )?;
    let rhs = OneDimLinearSet::new(
        BigUint::ZERO,
        rhs_coefficients
            .iter()
            .filter(|q| !q.is_zero())
            .cloned()
            .collect(),
    )?;

    Ok(MultidimTo1dReduction {
        lhs,
        rhs,
        lhs_matrix,
        rhs_matrix,
        max_entry,
        multipliers,
        aggregated_rhs,
        scalar_constant,
        lhs_coefficients,
        rhs_coefficients,
    })
}

// -------------------------------------------------------------- whole chain

/// Outcome of one stage of the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Undecided(String),
}

impl Verdict {
    fn from_result(r: Result<bool>) -> Result<Verdict> {
        match r {
            Ok(true) => Ok(Verdict::Yes),
            Ok(false) => Ok(Verdict::No),
            Err(e) if e.is_budget() => Ok(Verdict::Undecided(format!("{UNDECIDED_MARKER}: {e}"))),
            Err(e) => Err(e),
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::Undecided(_) => None,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Yes => write!(f, "YES"),
            Verdict::No => write!(f, "NO"),
            Verdict::Undecided(reason) => write!(f, "{reason}"),
        }
    }
}

/// Everything the chain produced: artifacts of every stage, the verdict
/// each stage's decision procedure reached (or why it was skipped), and
/// the growth of the numbers involved.
#[derive(Debug, Clone)]
pub struct ChainReport {
    pub exprs: (UnionSumExpr, UnionSumExpr),
    pub formula_verdict: Verdict,
    pub expr_verdict: Verdict,
    pub to_linear: ExprToLinearReduction,
    pub linear_verdict: Verdict,
    pub coeff_bound: u64,
    pub to_onedim: MultidimTo1dReduction,
    pub onedim_verdict: Verdict,
    /// Largest bit length of any number, per stage.
    pub expr_bits: u64,
    pub linear_bits: u64,
    pub onedim_bits: u64,
}

/// Run every reduction stage on a formula and decide whatever fits the
/// budgets. The 1-D stage is attempted only when the product of the
/// largest and smallest rhs period is within the DP budget; otherwise it
/// is reported as undecided at desk scale.
pub fn run_full_chain(f: &DnfFormula, coeff_bound: u64, limits: &Limits) -> Result<ChainReport> {
    let formula_verdict = Verdict::from_result(forall_exists_false(f, limits))?;

    let (e1, e2) = reduce_qbf_to_expr(f)?;
    let expr_verdict =
        Verdict::from_result(expr::containment_by_language(&e1, &e2, limits))?;

    let to_linear = reduce_expr_to_linear(&e1, &e2)?;
    let linear_verdict = Verdict::from_result(containment_bounded(
        to_linear.instance.lhs(),
        to_linear.instance.rhs(),
        coeff_bound,
        limits,
    ))?;

    let to_onedim = reduce_multidim_to_1d(&to_linear.instance)?;
    let rhs_periods = to_onedim.rhs.periods();
    let scan_size = rhs_periods.iter().max().unwrap().clone()
        * rhs_periods.iter().min().unwrap();
    let onedim_verdict = if scan_size <= BigUint::from(limits.dp_budget) {
        Verdict::from_result(containment_1d_poly(&to_onedim.lhs, &to_onedim.rhs, limits))?
    } else {
        Verdict::Undecided(format!(
            "{UNDECIDED_MARKER}: deciding needs a table of {} entries, budget is {}",
            crate::error::approx_count(&scan_size),
            limits.dp_budget
        ))
    };

    let linear_bits = {
        let inst = &to_linear.instance;
        inst.lhs()
            .periods()
            .iter()
            .chain(inst.rhs().periods())
            .map(|p| p.max_bits())
            .chain([inst.lhs().constant().max_bits()])
            .max()
            .unwrap_or(0)
    };
    let onedim_bits = to_onedim.lhs.max_bits().max(to_onedim.rhs.max_bits());

    Ok(ChainReport {
        exprs: (e1, e2),
        formula_verdict,
        expr_verdict,
        to_linear,
        linear_verdict,
        coeff_bound,
        to_onedim,
        onedim_verdict,
        expr_bits: 1,
        linear_bits,
        onedim_bits,
    })
}

impl ChainReport {
    /// Human-readable per-stage summary (what `reduce chain` writes).
    pub fn render(&self) -> String {
        let (e1, e2) = &self.exprs;
        let inst = &self.to_linear.instance;
        let mut out = String::new();
        out.push_str(&format!(
            "stage 0  formula oracle (falsifiable for every block-1 assignment): {}\n",
            self.formula_verdict
        ));
        out.push_str(&format!(
            "stage 1  expression containment ({} vs {} terms, dim {}): {}\n",
            e1.term_count(),
            e2.term_count(),
            e1.dim(),
            self.expr_verdict
        ));
        out.push_str(&format!(
            "stage 2  linear-set containment (dim {}, |P|={}, |Q|={}, coefficient bound {}): {}\n",
            inst.lhs().dim(),
            inst.lhs().periods().len(),
            inst.rhs().periods().len(),
            self.coeff_bound,
            self.linear_verdict
        ));
        out.push_str(&format!(
            "stage 3  one-dimensional containment (|p|={}, |q|={}): {}\n",
            self.to_onedim.lhs.periods().len(),
            self.to_onedim.rhs.periods().len(),
            self.onedim_verdict
        ));
        out.push_str(&format!(
            "max bit length per stage: expressions {}, linear sets {}, one-dimensional {}\n",
            self.expr_bits, self.linear_bits, self.onedim_bits
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linsets::{check_promise, containment_bounded_witness, member_bounded};
    use crate::qbf::Literal;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn bigs(vs: &[u64]) -> Vec<BigUint> {
        vs.iter().copied().map(BigUint::from).collect()
    }

    fn lit(block: Block, index: usize, negated: bool) -> Literal {
        Literal {
            block,
            index,
            negated,
        }
    }

    fn vecd(entries: &[u64]) -> NatVec {
        NatVec::from_u64s(entries)
    }

    fn atoms(pairs: &[(&[u64], &[u64])]) -> Vec<(NatVec, NatVec)> {
        pairs.iter().map(|(a, b)| (vecd(a), vecd(b))).collect()
    }

    // ---- formula -> expressions

    #[test]
    fn conjunction_across_blocks_encodes_to_expected_terms() {
        // x1.1 AND x2.1: one monomial, one variable per block.
        let f = DnfFormula::new(
            1,
            vec![vec![lit(Block::First, 1, false), lit(Block::Second, 1, false)]],
        )
        .unwrap();
        let (e1, e2) = reduce_qbf_to_expr(&f).unwrap();
        assert_eq!(e1.terms(), &atoms(&[(&[1], &[1]), (&[0], &[1])])[..]);
        assert_eq!(e2.terms(), &atoms(&[(&[1], &[0]), (&[1], &[0])])[..]);

        let limits = Limits::default();
        assert!(forall_exists_false(&f, &limits).unwrap());
        assert!(expr::containment_by_language(&e1, &e2, &limits).unwrap());
    }

    #[test]
    fn block_one_tautology_encodes_to_a_non_contained_pair() {
        // x1.1 OR (NOT x1.1): true whatever block 2 does.
        let f = DnfFormula::new(
            1,
            vec![
                vec![lit(Block::First, 1, false)],
                vec![lit(Block::First, 1, true)],
            ],
        )
        .unwrap();
        let (e1, e2) = reduce_qbf_to_expr(&f).unwrap();
        assert_eq!(e1.terms(), &atoms(&[(&[1, 1], &[1, 1]), (&[0, 1], &[1, 0])])[..]);
        assert_eq!(
            e2.terms(),
            &atoms(&[(&[1, 0], &[0, 0]), (&[0, 1], &[0, 0]), (&[0, 0], &[0, 0])])[..]
        );

        let limits = Limits::default();
        let lang: Vec<NatVec> = e1.enumerate_language(&limits).unwrap().into_iter().collect();
        assert_eq!(lang, vec![vecd(&[1, 2]), vecd(&[2, 1])]);

        assert!(!forall_exists_false(&f, &limits).unwrap());
        assert!(!expr::containment_by_language(&e1, &e2, &limits).unwrap());
    }

    #[test]
    fn encoding_matches_oracle_on_random_formulas() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let limits = Limits::default();
        for _ in 0..40 {
            let f = DnfFormula::random(2, 2, 3, &mut rng).unwrap();
            let (e1, e2) = reduce_qbf_to_expr(&f).unwrap();
            assert_eq!(e1.term_count(), 2 * f.vars_per_block());
            assert_eq!(
                e2.term_count(),
                f.monomials().len() * (2 * f.vars_per_block() - 1) + f.vars_per_block()
            );
            assert_eq!(
                forall_exists_false(&f, &limits).unwrap(),
                expr::containment_by_language(&e1, &e2, &limits).unwrap(),
                "encoding diverged from the oracle on {f:?}"
            );
        }
    }

    // ---- expressions -> linear sets

    fn worked_pair() -> (UnionSumExpr, UnionSumExpr) {
        let lhs = UnionSumExpr::new(1, atoms(&[(&[1], &[0])])).unwrap();
        let rhs = UnionSumExpr::new(1, atoms(&[(&[1], &[1])])).unwrap();
        (lhs, rhs)
    }

    #[test]
    fn linear_encoding_of_one_term_expressions_is_exactly_as_expected() {
        let (lhs, rhs) = worked_pair();
        let red = reduce_expr_to_linear(&lhs, &rhs).unwrap();

        assert_eq!(red.padded_terms, 1);
        assert_eq!(red.counter_bound, 2);
        assert_eq!(red.instance.lhs().constant(), &vecd(&[0, 2, 1, 1]));
        assert_eq!(
            red.choice_periods,
            vec![vecd(&[1, 1, 0, 0]), vecd(&[0, 1, 0, 0])]
        );
        assert_eq!(
            red.match_periods,
            vec![vecd(&[1, 3, 1, 1]), vecd(&[1, 3, 1, 1])]
        );
        assert_eq!(
            red.slack_periods,
            vec![
                vecd(&[0, 2, 1, 0]),
                vecd(&[0, 2, 0, 0]),
                vecd(&[0, 3, 0, 0]),
                vecd(&[0, 0, 0, 1]),
                vecd(&[1, 0, 0, 1]),
                vecd(&[2, 0, 0, 0]),
            ]
        );
        assert_eq!(red.instance.lhs().periods(), &red.choice_periods[..]);
        let mut expected_rhs = red.match_periods.clone();
        expected_rhs.extend(red.slack_periods.iter().cloned());
        assert_eq!(red.instance.rhs().periods(), &expected_rhs[..]);
    }

    #[test]
    fn linear_encoding_finds_the_uncovered_choice() {
        // 0 is reachable on the left but not on the right, so the point
        // that encodes picking the 0 atom must fall outside the rhs.
        let (lhs, rhs) = worked_pair();
        let red = reduce_expr_to_linear(&lhs, &rhs).unwrap();
        let limits = Limits::default();

        assert!(check_promise(&red.instance, 2, &limits).unwrap());
        let witness = containment_bounded_witness(
            red.instance.lhs(),
            red.instance.rhs(),
            2,
            &limits,
        )
        .unwrap()
        .expect("containment must fail");
        assert_eq!(witness.coefficients, vec![0, 1]);
        assert_eq!(witness.point, vecd(&[0, 3, 1, 1]));
        assert!(!member_bounded(&witness.point, red.instance.rhs()).unwrap());
    }

    #[test]
    fn linear_encoding_accepts_a_contained_pair() {
        let e = UnionSumExpr::new(1, atoms(&[(&[1], &[0])])).unwrap();
        let red = reduce_expr_to_linear(&e, &e).unwrap();
        let limits = Limits::default();
        assert!(check_promise(&red.instance, 2, &limits).unwrap());
        assert!(
            containment_bounded(red.instance.lhs(), red.instance.rhs(), 2, &limits).unwrap()
        );
    }

    #[test]
    fn linear_encoding_agrees_with_expression_containment() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let limits = Limits::default();
        for round in 0..25 {
            let lhs = UnionSumExpr::random(2, 2, &mut rng).unwrap();
            let rhs = UnionSumExpr::random(2, 2, &mut rng).unwrap();
            let expected = expr::containment_by_language(&lhs, &rhs, &limits).unwrap();
            let red = reduce_expr_to_linear(&lhs, &rhs).unwrap();
            assert!(check_promise(&red.instance, 2, &limits).unwrap());
            let got =
                containment_bounded(red.instance.lhs(), red.instance.rhs(), 2, &limits).unwrap();
            assert_eq!(got, expected, "round {round}: {lhs:?} vs {rhs:?}");
        }
    }

    // ---- aggregation

    #[test]
    fn aggregating_two_small_equations_gives_the_expected_multipliers() {
        // x + 2y = 3 and 2x + y = 3 have the single solution (1, 1).
        let got = aggregate_two(&bigs(&[1, 2]), &bigs(&[2, 1]), &big(3), &big(3)).unwrap();
        assert_eq!(got.multipliers, bigs(&[4, 5]));
        assert_eq!(got.row, bigs(&[14, 13]));
        assert_eq!(got.rhs, big(27));
        // (1, 1) still solves the aggregate, and small perturbations do not.
        assert_eq!(&got.row[0] + &got.row[1], got.rhs);
        assert_ne!(got.row[0].clone() * 2u32, got.rhs);
        assert_ne!(got.row[1].clone() * 2u32, got.rhs);
    }

    #[test]
    fn aggregating_identical_one_variable_equations_works() {
        let got = aggregate_two(&bigs(&[1]), &bigs(&[1]), &big(1), &big(1)).unwrap();
        assert_eq!(got.multipliers, bigs(&[2, 3]));
        assert_eq!(got.row, bigs(&[5]));
        assert_eq!(got.rhs, big(5));
    }

    #[test]
    fn aggregation_rejects_degenerate_input() {
        assert!(aggregate_two(&bigs(&[1]), &bigs(&[1, 2]), &big(1), &big(1)).is_err());
        assert!(aggregate_two(&bigs(&[1]), &bigs(&[1]), &big(0), &big(1)).is_err());
        assert!(aggregate_two(&bigs(&[0]), &bigs(&[1]), &big(1), &big(1)).is_err());
        assert!(aggregate_system(&[], &[]).is_err());
        assert!(aggregate_system(&[bigs(&[1, 0])], &bigs(&[1, 2])).is_err());
    }

    #[test]
    fn aggregating_one_row_is_the_identity() {
        let got = aggregate_system(&[bigs(&[3, 0, 7])], &bigs(&[5])).unwrap();
        assert_eq!(got.multipliers, bigs(&[1]));
        assert_eq!(got.row, bigs(&[3, 0, 7]));
        assert_eq!(got.rhs, big(5));
    }

    #[test]
    fn folding_three_rows_tracks_effective_multipliers() {
        let rows = vec![bigs(&[1, 2]), bigs(&[2, 1]), bigs(&[1, 1])];
        let rhs = bigs(&[3, 3, 2]);
        let got = aggregate_system(&rows, &rhs).unwrap();

        // Recompute by hand: first fold is the (4, 5) example above, the
        // second folds (14,13;27) with (1,1;2) using t1 = 28, t2 = 29.
        assert_eq!(got.multipliers, bigs(&[4 * 28, 5 * 28, 29]));
        assert_eq!(
            got.row,
            bigs(&[14 * 28 + 29, 13 * 28 + 29])
        );
        assert_eq!(got.rhs, big(27 * 28 + 2 * 29));
        // (1, 1) solves all three rows and the aggregate.
        assert_eq!(&got.row[0] + &got.row[1], got.rhs);
    }

    // ---- linear sets -> one dimension

    #[test]
    fn unit_period_instance_collapses_to_the_expected_scalars() {
        let inst = PromiseContainmentInstance::new(
            LinearSetDesc::new(vecd(&[1, 1]), vec![vecd(&[1, 0]), vecd(&[0, 1])]).unwrap(),
            LinearSetDesc::new(vecd(&[0, 0]), vec![vecd(&[1, 0]), vecd(&[0, 1])]).unwrap(),
            1,
        )
        .unwrap();
        let red = reduce_multidim_to_1d(&inst).unwrap();

        assert_eq!(red.max_entry, big(1));
        assert_eq!(red.multipliers, bigs(&[3, 4]));
        assert_eq!(red.scalar_constant, big(7));
        assert_eq!(red.lhs_coefficients, bigs(&[3, 4]));
        assert_eq!(red.rhs_coefficients, bigs(&[3, 4]));
        assert_eq!(red.lhs.constant(), &big(7));
        assert_eq!(red.lhs.periods(), &bigs(&[3, 4])[..]);
        assert_eq!(red.rhs.constant(), &big(0));
        assert_eq!(red.rhs.periods(), &bigs(&[3, 4])[..]);

        let limits = Limits::default();
        assert!(containment_1d_poly(&red.lhs, &red.rhs, &limits).unwrap());
    }

    #[test]
    fn zero_coefficient_columns_are_dropped_from_the_emitted_sets() {
        let inst = PromiseContainmentInstance::new(
            LinearSetDesc::new(vecd(&[1]), vec![vecd(&[2]), vecd(&[0])]).unwrap(),
            LinearSetDesc::new(vecd(&[0]), vec![vecd(&[0]), vecd(&[1])]).unwrap(),
            1,
        )
        .unwrap();
        let red = reduce_multidim_to_1d(&inst).unwrap();
        assert_eq!(red.lhs_coefficients, bigs(&[2, 0]));
        assert_eq!(red.rhs_coefficients, bigs(&[0, 1]));
        assert_eq!(red.lhs.periods(), &bigs(&[2])[..]);
        assert_eq!(red.rhs.periods(), &bigs(&[1])[..]);
    }

    #[test]
    fn collapse_keeps_a_non_contained_instance_non_contained() {
        // Q reaches exactly the diagonal multiples 2,3,4,... of (1,1); the
        // single lhs period steps along the diagonal one unit at a time.
        // Every coefficient other than 1 is a sum of 2s and 3s, so the
        // promise holds outright, but the selection point (1,1) escapes.
        let inst = PromiseContainmentInstance::new(
            LinearSetDesc::new(vecd(&[0, 0]), vec![vecd(&[1, 1])]).unwrap(),
            LinearSetDesc::new(vecd(&[0, 0]), vec![vecd(&[2, 2]), vecd(&[3, 3])]).unwrap(),
            1,
        )
        .unwrap();
        let limits = Limits::default();
        assert!(check_promise(&inst, 6, &limits).unwrap());
        assert!(!containment_bounded(inst.lhs(), inst.rhs(), 3, &limits).unwrap());

        let red = reduce_multidim_to_1d(&inst).unwrap();
        assert_eq!(red.multipliers, bigs(&[2, 3]));
        assert_eq!(red.scalar_constant, big(0));
        assert_eq!(red.lhs_coefficients, bigs(&[5]));
        assert_eq!(red.rhs_coefficients, bigs(&[10, 15]));
        assert!(!containment_1d_poly(&red.lhs, &red.rhs, &limits).unwrap());
    }

    #[test]
    fn collapse_rejects_period_lists_without_nonzero_periods() {
        let all_zero_rhs = PromiseContainmentInstance::new(
            LinearSetDesc::new(vecd(&[1]), vec![vecd(&[1])]).unwrap(),
            LinearSetDesc::new(vecd(&[0]), vec![vecd(&[0])]).unwrap(),
            1,
        )
        .unwrap();
        assert!(reduce_multidim_to_1d(&all_zero_rhs).is_err());

        let all_zero_lhs = PromiseContainmentInstance::new(
            LinearSetDesc::new(vecd(&[1]), vec![vecd(&[0])]).unwrap(),
            LinearSetDesc::new(vecd(&[0]), vec![vecd(&[1])]).unwrap(),
            1,
        )
        .unwrap();
        assert!(reduce_multidim_to_1d(&all_zero_lhs).is_err());
    }

    #[test]
    fn collapse_preserves_bounded_containment_on_random_promise_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        let limits = Limits::with_dp_budget(1 << 31);
        let mut checked = 0;
        'outer: for _ in 0..200 {
            if checked >= 12 {
                break;
            }
            let dim = rng.random_range(1..=2usize);
            let k = rng.random_range(1..=2usize);
            let l = rng.random_range(1..=3usize);
            let s = rng.random_range(1..=k);
            let rand_vec = |rng: &mut rand_chacha::ChaCha8Rng| {
                NatVec::new((0..dim).map(|_| big(rng.random_range(0..=2))).collect()).unwrap()
            };
            let lhs = LinearSetDesc::new(
                rand_vec(&mut rng),
                (0..k).map(|_| rand_vec(&mut rng)).collect(),
            )
            .unwrap();
            let rhs = LinearSetDesc::new(
                NatVec::zeros(dim),
                (0..l).map(|_| rand_vec(&mut rng)).collect(),
            )
            .unwrap();
            if lhs.periods().iter().all(|p| p.is_zero())
                || rhs.periods().iter().all(|q| q.is_zero())
            {
                continue 'outer;
            }
            let inst = PromiseContainmentInstance::new(lhs, rhs, s).unwrap();
            if !check_promise(&inst, 3, &limits).unwrap() {
                continue 'outer;
            }
            checked += 1;

            let expected = containment_bounded(inst.lhs(), inst.rhs(), 3, &limits).unwrap();
            let red = reduce_multidim_to_1d(&inst).unwrap();
            let got = containment_1d_poly(&red.lhs, &red.rhs, &limits).unwrap();
            assert_eq!(got, expected, "collapse changed the answer on {inst:?}");
        }
        assert!(checked >= 8, "too few instances satisfied the promise");
    }

    // ---- the whole chain

    #[test]
    fn chain_reports_every_stage_for_a_contained_formula() {
        let f = DnfFormula::new(
            1,
            vec![vec![lit(Block::First, 1, false), lit(Block::Second, 1, false)]],
        )
        .unwrap();
        let report = run_full_chain(&f, 2, &Limits::default()).unwrap();
        assert_eq!(report.formula_verdict, Verdict::Yes);
        assert_eq!(report.expr_verdict, Verdict::Yes);
        assert_eq!(report.linear_verdict, Verdict::Yes);
        assert!(matches!(report.onedim_verdict, Verdict::Undecided(_)));
        assert!(report.render().contains(UNDECIDED_MARKER));
        assert!(report.expr_bits <= report.linear_bits);
        assert!(report.linear_bits <= report.onedim_bits);
    }

    #[test]
    fn chain_reports_every_stage_for_a_non_contained_formula() {
        let f = DnfFormula::new(
            1,
            vec![
                vec![lit(Block::First, 1, false)],
                vec![lit(Block::First, 1, true)],
            ],
        )
        .unwrap();
        let report = run_full_chain(&f, 2, &Limits::default()).unwrap();
        assert_eq!(report.formula_verdict, Verdict::No);
        assert_eq!(report.expr_verdict, Verdict::No);
        assert_eq!(report.linear_verdict, Verdict::No);
        assert!(matches!(report.onedim_verdict, Verdict::Undecided(_)));
    }
}
