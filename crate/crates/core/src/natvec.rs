//! Vectors over the naturals.
//!
//! [`NatVec`] is the shared coordinate type for expression atoms, linear-set
//! constants and periods, and reduction traces. Entries are arbitrary
//! precision: the diophantine aggregation step roughly squares the numbers
//! involved on every fold, so fixed-width entries would overflow after two
//! or three folds on perfectly reasonable inputs.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A fixed-dimension vector of naturals. Dimension is always >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatVec {
    entries: Vec<BigUint>,
}

impl NatVec {
    pub fn new(entries: Vec<BigUint>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("vector dimension must be at least 1"));
        }
        Ok(NatVec { entries })
    }

    /// Convenience constructor for tests and small literals.
    pub fn from_u64s(entries: &[u64]) -> Self {
        assert!(!entries.is_empty(), "vector dimension must be at least 1");
        NatVec {
            entries: entries.iter().map(|&e| BigUint::from(e)).collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1);
        NatVec {
            entries: vec![BigUint::zero(); dim],
        }
    }

    /// The vector a^dim, every coordinate equal to `value`.
    pub fn repeated(value: u64, dim: usize) -> Self {
        assert!(dim >= 1);
        NatVec {
            entries: vec![BigUint::from(value); dim],
        }
    }

    /// `value` at 0-based coordinate `i`, zero elsewhere.
    pub fn scaled_unit(value: u64, i: usize, dim: usize) -> Self {
        assert!(i < dim);
        let mut v = NatVec::zeros(dim);
        v.entries[i] = BigUint::from(value);
        v
    }

    pub fn unit(i: usize, dim: usize) -> Self {
        NatVec::scaled_unit(1, i, dim)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &BigUint {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// All entries in {0, 1}.
    pub fn is_binary(&self) -> bool {
        let one = BigUint::from(1u32);
        self.entries.iter().all(|e| e.is_zero() || *e == one)
    }

    pub fn component_sum(&self) -> BigUint {
        self.entries.iter().sum()
    }

    pub fn max_entry(&self) -> &BigUint {
        self.entries.iter().max().expect("dimension >= 1")
    }

    /// Component-wise <=.
    pub fn le(&self, other: &NatVec) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &NatVec) -> Result<NatVec> {
        if self.dim() != other.dim() {
            return Err(Error::invalid(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(NatVec {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Component-wise subtraction; None if any coordinate would go negative.
    pub fn checked_sub(&self, other: &NatVec) -> Option<NatVec> {
        debug_assert_eq!(self.dim(), other.dim());
        if !other.le(self) {
            return None;
        }
        Some(NatVec {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scaled(&self, k: &BigUint) -> NatVec {
        NatVec {
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    /// Concatenate sections into one vector (used to assemble the
    /// base/control layout of reduction outputs).
    pub fn concat(sections: &[&NatVec]) -> NatVec {
        let entries: Vec<BigUint> = sections
            .iter()
            .flat_map(|s| s.entries.iter().cloned())
            .collect();
        assert!(!entries.is_empty());
        NatVec { entries }
    }

    /// 1 - e per coordinate; requires a binary vector.
    pub fn binary_complement(&self) -> NatVec {
        assert!(self.is_binary(), "complement requires a 0/1 vector");
        let one = BigUint::from(1u32);
        NatVec {
            entries: self.entries.iter().map(|e| &one - e).collect(),
        }
    }

    pub fn max_bits(&self) -> u64 {
        self.entries.iter().map(|e| e.bits()).max().unwrap_or(0)
    }
}

impl fmt::Display for NatVec {
    /// Comma-separated decimal entries: the form used by all text formats.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty() {
        assert!(NatVec::new(vec![]).is_err());
    }

    #[test]
    fn add_and_sub() {
        let a = NatVec::from_u64s(&[1, 2, 3]);
        let b = NatVec::from_u64s(&[0, 1, 5]);
        assert_eq!(a.checked_add(&b).unwrap(), NatVec::from_u64s(&[1, 3, 8]));
        assert_eq!(b.checked_sub(&a), None);
        assert_eq!(
            a.checked_sub(&NatVec::from_u64s(&[1, 0, 3])).unwrap(),
            NatVec::from_u64s(&[0, 2, 0])
        );
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = NatVec::from_u64s(&[1]);
        let b = NatVec::from_u64s(&[1, 2]);
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn ordering_is_lexicographic() {
        let a = NatVec::from_u64s(&[1, 9]);
        let b = NatVec::from_u64s(&[2, 0]);
        assert!(a < b);
    }

    #[test]
    fn complement_flips_bits() {
        let v = NatVec::from_u64s(&[1, 0, 1]);
        assert_eq!(v.binary_complement(), NatVec::from_u64s(&[0, 1, 0]));
    }

    #[test]
    fn display_is_comma_separated() {
        assert_eq!(NatVec::from_u64s(&[3, 0, 12]).to_string(), "3,0,12");
    }
}
