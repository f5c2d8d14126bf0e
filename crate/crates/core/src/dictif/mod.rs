//! Dictifs as hereditarily finite sets, their Ackermann indices, the
//! P-ladder and container schedules.

mod hfset;
mod schedule;

pub use hfset::{hf_compare, p_level, HfSet, INDEX_BIT_CAP, POWERSET_ELEMENT_CAP};
pub use schedule::{ContainerSchedule, P_LADDER_CAP};

use num_bigint::BigUint;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DictifError {
    #[error("Ackermann index does not fit in {cap_bits} bits; use structural operations")]
    IndexOverflow { cap_bits: u64 },
    #[error("{what} {value} exceeds cap {cap}")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },
    #[error("invalid container schedule: {0}")]
    InvalidSchedule(String),
}

pub fn from_index(n: &BigUint) -> HfSet {
    HfSet::from_index(n)
}

pub fn to_index(s: &HfSet) -> Result<BigUint, DictifError> {
    s.to_index()
}

/// `x ∈ z`.
pub fn member(x: &HfSet, z: &HfSet) -> bool {
    z.contains(x)
}
