//! Tower-type part-count bounds.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::Result;
use crate::rational::{iteration_budget, Rational};

/// Default refusal threshold for [`tower_bound`], in decimal digits.
pub const DEFAULT_DIGIT_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TowerBound {
    Exact(BigUint),
    /// The iteration left the digit limit after `steps` of `total` steps.
    TooLarge { digit_limit: usize, steps: u64, total: u64 },
}

impl TowerBound {
    /// Whether a partition with `parts` parts is within the bound. A bound
    /// that outgrew the digit limit exceeds every machine-sized count.
    pub fn admits(&self, parts: usize) -> bool {
        match self {
            TowerBound::Exact(m) => BigUint::from(parts) <= *m,
            TowerBound::TooLarge { .. } => true,
        }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            TowerBound::Exact(m) => Some(m),
            TowerBound::TooLarge { .. } => None,
        }
    }
}

/// One refinement round's growth: `k ↦ k · 2^(k+1)`.
pub fn refinement_growth(k: &BigUint) -> Option<BigUint> {
    let shift = k.to_u64()?.checked_add(1)?;
    Some(k << shift)
}

/// The map `k ↦ k·2^(k+1)` applied `⌈ε⁻⁵⌉` times from `k = 1`.
pub fn tower_bound(eps: &Rational) -> Result<TowerBound> {
    tower_bound_from(1, eps, DEFAULT_DIGIT_LIMIT)
}

/// As [`tower_bound`], starting from `start` parts and giving up once the
/// value has more than `digit_limit` decimal digits.
pub fn tower_bound_from(start: usize, eps: &Rational, digit_limit: usize) -> Result<TowerBound> {
    let total = iteration_budget(eps)?;
    let too_large = |steps| TowerBound::TooLarge { digit_limit, steps, total };
    // 2^b has more than `digit_limit` digits once b·log10(2) ≥ digit_limit.
    let max_bits = (digit_limit as f64 / std::f64::consts::LOG10_2).ceil() as u64 + 1;
    let mut k = BigUint::from(start);
    for step in 0..total {
        if k.bits() > 64 || k.to_u64().is_none_or(|v| v >= max_bits) {
            return Ok(too_large(step));
        }
        k = refinement_growth(&k).expect("shift fits in u64");
        if k.bits() > max_bits {
            return Ok(too_large(step + 1));
        }
    }
    if k.to_str_radix(10).len() > digit_limit {
        return Ok(too_large(total));
    }
    Ok(TowerBound::Exact(k))
}

/// `k · 2^(k+1) ≤ 2^(2^k)`.
pub fn le_tower_check(k: u32) -> bool {
    let lhs = BigUint::from(k) << (k as u64 + 1);
    le_power_of_power_of_two(&lhs, k)
}

/// The erroneous variant `k · 2^(2k) ≤ 2^(2^k)`, false at `k = 2`.
pub fn wrong_tower_check(k: u32) -> bool {
    let lhs = BigUint::from(k) << (2 * k as u64);
    le_power_of_power_of_two(&lhs, k)
}

// value ≤ 2^(2^k), materialising the right side only while it is small.
fn le_power_of_power_of_two(value: &BigUint, k: u32) -> bool {
    if k <= 20 {
        return *value <= BigUint::one() << (1u64 << k);
    }
    // value < 2^bits(value) ≤ 2^(2^k) whenever bits(value) ≤ 2^k.
    k >= 64 || value.bits() <= 1u64 << k
}

pub fn digit_count(n: &BigUint) -> usize {
    n.to_str_radix(10).len()
}
