//! Containment of linear sets and of unary sum-of-choices expressions.
//!
//! The crate has three layers:
//!
//! - **deciders** — a polynomial containment procedure for one-dimensional
//!   linear sets ([`onedim`]), plus honest brute-force oracles for
//!   expressions ([`expr`]), multidimensional linear sets ([`linsets`]),
//!   and two-block quantified formulas ([`qbf`]);
//! - **reductions** ([`reduce`]) — constructive translations from formulas
//!   to expressions, expressions to multidimensional promise containment,
//!   and multidimensional instances down to one dimension by aggregating
//!   equation rows;
//! - **verification** ([`harness`]) — seeded suites that run each
//!   construction against an independent oracle and report reproducible
//!   per-case seeds for any disagreement.
//!
//! Text formats for all instance types live in [`parse`]; every search
//! that could blow up takes a [`Limits`] and refuses over-budget work
//! with a distinguishable error.

pub mod error;
pub mod expr;
pub mod harness;
pub mod limits;
pub mod linsets;
pub mod natvec;
pub mod onedim;
pub mod parse;
pub mod qbf;
pub mod reduce;

pub use error::{Error, Result};
pub use expr::UnionSumExpr;
pub use limits::Limits;
pub use linsets::{LinearSetDesc, PromiseContainmentInstance};
pub use natvec::NatVec;
pub use onedim::OneDimLinearSet;
pub use qbf::DnfFormula;
