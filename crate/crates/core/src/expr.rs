//! Sum-of-binary-choices expressions.
//!
//! An expression is a sum of `s` terms, each term a union of exactly two
//! atoms from {0,1}^m. Its language is every vector obtainable by picking
//! one atom per term and adding the picks: at most 2^s vectors. Containment
//! of the languages of two such expressions is the middle rung of the
//! reduction chain, decided here by brute force in two deliberately
//! different ways so each can serve as the other's oracle.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::natvec::NatVec;

/// A union of exactly two binary atoms.
pub type Term = (NatVec, NatVec);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionSumExpr {
    dim: usize,
    terms: Vec<Term>,
}

impl UnionSumExpr {
    pub fn new(dim: usize, terms: Vec<Term>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("expression dimension must be at least 1"));
        }
        for (i, (a, b)) in terms.iter().enumerate() {
            for atom in [a, b] {
                if atom.dim() != dim {
                    return Err(Error::invalid(format!(
                        "term {}: atom dimension {} does not match expression dimension {}",
                        i + 1,
                        atom.dim(),
                        dim
                    )));
                }
                if !atom.is_binary() {
                    return Err(Error::invalid(format!(
                        "term {}: atom {} has an entry outside {{0,1}}",
                        i + 1,
                        atom
                    )));
                }
            }
        }
        Ok(UnionSumExpr { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Append `(0^m | 0^m)` terms until the expression has `target` terms.
    /// The zero atom is the only padding that leaves the language unchanged.
    pub fn padded_to(&self, target: usize) -> UnionSumExpr {
        assert!(target >= self.terms.len());
        let zero = NatVec::zeros(self.dim);
        let mut terms = self.terms.clone();
        terms.resize(target, (zero.clone(), zero));
        UnionSumExpr {
            dim: self.dim,
            terms,
        }
    }

    /// Per coordinate, the sum over terms of the larger atom entry.
    ///
    /// Coordinate j of a language vector depends only on coordinate j of
    /// the picked atoms, so maximizing one coordinate at a time is a free
    /// choice per term: this equals the component-wise maximum of the
    /// language without enumerating it.
    pub fn component_max(&self) -> NatVec {
        let mut out = vec![BigUint::ZERO; self.dim];
        for (a, b) in &self.terms {
            for (j, slot) in out.iter_mut().enumerate() {
                *slot += a.entry(j).max(b.entry(j));
            }
        }
        NatVec::new(out).expect("dim >= 1")
    }

    /// Every vector in the language, sorted lexicographically, deduplicated.
    /// Errors above `limits.expr_max_terms` terms (the walk is 2^s sums).
    pub fn enumerate_language(&self, limits: &Limits) -> Result<BTreeSet<NatVec>> {
        if self.terms.len() > limits.expr_max_terms {
            return Err(Error::budget(
                "expression terms",
                self.terms.len(),
                limits.expr_max_terms,
            ));
        }
        let mut language = BTreeSet::new();
        let mut acc = NatVec::zeros(self.dim);
        collect_sums(&self.terms, 0, &mut acc, &mut language);
        Ok(language)
    }

    /// Seeded random expression with the given shape.
    pub fn random<R: Rng>(dim: usize, terms: usize, rng: &mut R) -> Result<Self> {
        if dim == 0 || terms == 0 {
            return Err(Error::invalid(
                "random expression needs at least one dimension and one term",
            ));
        }
        let mut out = Vec::with_capacity(terms);
        for _ in 0..terms {
            let mut atom = || {
                let entries: Vec<u64> = (0..dim).map(|_| rng.random_range(0..=1)).collect();
                NatVec::new(entries.iter().map(|&e| BigUint::from(e)).collect()).unwrap()
            };
            let a = atom();
            let b = atom();
            out.push((a, b));
        }
        UnionSumExpr::new(dim, out)
    }
}

fn collect_sums(terms: &[Term], depth: usize, acc: &mut NatVec, out: &mut BTreeSet<NatVec>) {
    if depth == terms.len() {
        out.insert(acc.clone());
        return;
    }
    let (a, b) = &terms[depth];
    for atom in [a, b] {
        let next = acc.checked_add(atom).expect("dims validated at construction");
        let saved = std::mem::replace(acc, next);
        collect_sums(terms, depth + 1, acc, out);
        *acc = saved;
    }
    // Identical atoms would just walk the same branch twice; harmless for a
    // set but wasteful. Skipping the duplicate branch would be an easy win,
    // kept simple here because s <= 20 bounds the whole walk anyway.
}

/// Pad the shorter expression with zero-union terms so both have the same
/// term count. Languages are unchanged.
pub fn pad_to_equal_terms(
    lhs: &UnionSumExpr,
    rhs: &UnionSumExpr,
) -> Result<(UnionSumExpr, UnionSumExpr)> {
    if lhs.dim() != rhs.dim() {
        return Err(Error::invalid(format!(
            "cannot pad expressions of different dimensions {} and {}",
            lhs.dim(),
            rhs.dim()
        )));
    }
    let s = lhs.term_count().max(rhs.term_count());
    Ok((lhs.padded_to(s), rhs.padded_to(s)))
}

/// Language inclusion via full enumeration of both sides.
pub fn containment_by_language(
    lhs: &UnionSumExpr,
    rhs: &UnionSumExpr,
    limits: &Limits,
) -> Result<bool> {
    Ok(containment_counterexample(lhs, rhs, limits)?.is_none())
}

/// Smallest (lexicographically) vector in L(lhs) \ L(rhs), if any.
pub fn containment_counterexample(
    lhs: &UnionSumExpr,
    rhs: &UnionSumExpr,
    limits: &Limits,
) -> Result<Option<NatVec>> {
    if lhs.dim() != rhs.dim() {
        return Err(Error::invalid(format!(
            "containment needs equal dimensions, got {} and {}",
            lhs.dim(),
            rhs.dim()
        )));
    }
    let left = lhs.enumerate_language(limits)?;
    let right = rhs.enumerate_language(limits)?;
    Ok(left.into_iter().find(|v| !right.contains(v)))
}

/// Language inclusion phrased the other way: walk every choice of one atom
/// per lhs term (without deduplication) and ask for a matching rhs choice.
/// Same answer as [`containment_by_language`]; different machinery, used as
/// its cross-check.
pub fn containment_by_choices(
    lhs: &UnionSumExpr,
    rhs: &UnionSumExpr,
    limits: &Limits,
) -> Result<bool> {
    if lhs.dim() != rhs.dim() {
        return Err(Error::invalid(format!(
            "containment needs equal dimensions, got {} and {}",
            lhs.dim(),
            rhs.dim()
        )));
    }
    if lhs.term_count() > limits.expr_max_terms {
        return Err(Error::budget(
            "expression terms",
            lhs.term_count(),
            limits.expr_max_terms,
        ));
    }
    let right = rhs.enumerate_language(limits)?;
    let mut acc = NatVec::zeros(lhs.dim());
    Ok(all_choice_sums_in(lhs.terms(), 0, &mut acc, &right))
}

fn all_choice_sums_in(
    terms: &[Term],
    depth: usize,
    acc: &mut NatVec,
    target: &BTreeSet<NatVec>,
) -> bool {
    if depth == terms.len() {
        return target.contains(acc);
    }
    let (a, b) = &terms[depth];
    for atom in [a, b] {
        let next = acc.checked_add(atom).expect("dims validated at construction");
        let saved = std::mem::replace(acc, next);
        let ok = all_choice_sums_in(terms, depth + 1, acc, target);
        *acc = saved;
        if !ok {
            return false;
        }
    }
    true
}
