//! DNF formulas over two variable blocks, and the two-quantifier oracle.
//!
//! A formula has `n` variables in each of two blocks, written `x1.i` and
//! `x2.i`. The oracle question, decided here by brute force, is:
//!
//! > for every assignment of block 1 is there an assignment of block 2
//! > making the formula false?
//!
//! Enumeration is 2^(2n) evaluations, so [`forall_exists_false`] refuses to
//! run above `Limits::qbf_max_vars` variables per block.

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Which of the two quantifier blocks a variable belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    First,
    Second,
}

/// One literal: a possibly negated variable `x<block>.<index>`.
/// Indices are 1-based, matching the text format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub block: Block,
    pub index: usize,
    pub negated: bool,
}

/// A DNF formula: a disjunction of monomials, each monomial a conjunction
/// of literals. An empty monomial is a valid conjunction and evaluates to
/// true (which makes the whole formula constantly true).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfFormula {
    vars_per_block: usize,
    monomials: Vec<Vec<Literal>>,
}

impl DnfFormula {
    pub fn new(vars_per_block: usize, monomials: Vec<Vec<Literal>>) -> Result<Self> {
        if vars_per_block == 0 {
            return Err(Error::invalid("formula needs at least one variable per block"));
        }
        if monomials.is_empty() {
            return Err(Error::invalid("formula needs at least one monomial"));
        }
        for (j, monomial) in monomials.iter().enumerate() {
            let mut seen = Vec::new();
            for lit in monomial {
                if lit.index == 0 || lit.index > vars_per_block {
                    return Err(Error::invalid(format!(
                        "monomial {}: variable index {} out of range 1..={}",
                        j + 1,
                        lit.index,
                        vars_per_block
                    )));
                }
                let var = (lit.block, lit.index);
                if seen.contains(&var) {
                    return Err(Error::invalid(format!(
                        "monomial {}: repeated variable x{}.{}",
                        j + 1,
                        if lit.block == Block::First { 1 } else { 2 },
                        lit.index
                    )));
                }
                seen.push(var);
            }
        }
        Ok(DnfFormula {
            vars_per_block,
            monomials,
        })
    }

    pub fn vars_per_block(&self) -> usize {
        self.vars_per_block
    }

    pub fn monomials(&self) -> &[Vec<Literal>] {
        &self.monomials
    }

    /// Evaluate under an assignment, one bool slice per block.
    pub fn eval(&self, block1: &[bool], block2: &[bool]) -> Result<bool> {
        if block1.len() != self.vars_per_block || block2.len() != self.vars_per_block {
            return Err(Error::invalid(format!(
                "assignment length mismatch: formula has {} variables per block, got {} and {}",
                self.vars_per_block,
                block1.len(),
                block2.len()
            )));
        }
        Ok(self.monomials.iter().any(|monomial| {
            monomial.iter().all(|lit| {
                let value = match lit.block {
                    Block::First => block1[lit.index - 1],
                    Block::Second => block2[lit.index - 1],
                };
                value != lit.negated
            })
        }))
    }

    /// Seeded random formula: `monomials` monomials, each with at most
    /// `max_literals` literals over distinct variables. Deterministic for a
    /// fixed RNG state.
    pub fn random<R: Rng>(
        vars_per_block: usize,
        monomials: usize,
        max_literals: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if vars_per_block == 0 || monomials == 0 {
            return Err(Error::invalid(
                "random formula needs at least one variable and one monomial",
            ));
        }
        let pool = 2 * vars_per_block;
        let mut out = Vec::with_capacity(monomials);
        for _ in 0..monomials {
            let count = rng.random_range(0..=max_literals.min(pool));
            let vars = sample(rng, pool, count);
            let monomial = vars
                .iter()
                .map(|v| Literal {
                    block: if v < vars_per_block {
                        Block::First
                    } else {
                        Block::Second
                    },
                    index: v % vars_per_block + 1,
                    negated: rng.random_bool(0.5),
                })
                .collect();
            out.push(monomial);
        }
        DnfFormula::new(vars_per_block, out)
    }
}

/// Per-monomial bitmasks over one block: which variables must be 1
/// (`positive`) and which must be 0 (`negative`).
#[derive(Clone, Copy, Default)]
struct BlockMasks {
    positive: u32,
    negative: u32,
}

impl BlockMasks {
    fn satisfied_by(&self, assignment: u32) -> bool {
        assignment & self.positive == self.positive && assignment & self.negative == 0
    }
}

/// True iff for every assignment of block 1 there is an assignment of
/// block 2 under which the formula is false.
///
/// Brute force over 2^(2n) assignment pairs via per-monomial bitmasks;
/// errors if the formula has more than `limits.qbf_max_vars` variables
/// per block.
pub fn forall_exists_false(f: &DnfFormula, limits: &Limits) -> Result<bool> {
    let n = f.vars_per_block;
    if n > limits.qbf_max_vars {
        return Err(Error::budget("qbf variables per block", n, limits.qbf_max_vars));
    }

    let masks: Vec<(BlockMasks, BlockMasks)> = f
        .monomials
        .iter()
        .map(|monomial| {
            let mut m1 = BlockMasks::default();
            let mut m2 = BlockMasks::default();
            for lit in monomial {
                let bit = 1u32 << (lit.index - 1);
                let m = match lit.block {
                    Block::First => &mut m1,
                    Block::Second => &mut m2,
                };
                if lit.negated {
                    m.negative |= bit;
                } else {
                    m.positive |= bit;
                }
            }
            (m1, m2)
        })
        .collect();

    let all = 1u32 << n;
    Ok((0..all).all(|a1| {
        (0..all).any(|a2| {
            masks
                .iter()
                .all(|(m1, m2)| !(m1.satisfied_by(a1) && m2.satisfied_by(a2)))
        })
    }))
}
