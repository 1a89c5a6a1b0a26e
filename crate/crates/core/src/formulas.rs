//! Closed-form saturation numbers, tree-order constants and bounds.
//!
//! Every function checks its stated range and refuses to extrapolate.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("k = {k} is outside the valid range (k >= {min})")]
    KOutOfRange { k: usize, min: usize },
    #[error("n = {n} is below the threshold {min}")]
    NTooSmall { n: usize, min: usize },
    #[error("path orders must be nonempty and sorted in descending order")]
    UnsortedOrders,
    #[error("smallest path order {0} is unsupported (need 4 or at least 6)")]
    UnsupportedSmallestOrder(usize),
    #[error("arithmetic overflow")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OrderKind {
    /// `a_k = |T_k|`
    A,
    /// `a⁰_k = |T⁰_k|`
    A0,
    /// `a¹_k = |T¹_k|`
    A1,
}

impl OrderKind {
    /// Smallest `k` for which the constant is defined.
    pub fn min_k(self, k: usize) -> usize {
        match self {
            OrderKind::A | OrderKind::A0 => 6,
            OrderKind::A1 if k.is_multiple_of(2) => 8,
            OrderKind::A1 => 9,
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::A => "a",
            OrderKind::A0 => "a0",
            OrderKind::A1 => "a1",
        })
    }
}

impl FromStr for OrderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(OrderKind::A),
            "a0" => Ok(OrderKind::A0),
            "a1" => Ok(OrderKind::A1),
            _ => Err(format!("unknown order constant `{s}` (expected a, a0 or a1)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SatBounds {
    pub lower: usize,
    pub upper: usize,
}

/// `c · 2^e + d` with `d` possibly negative.
fn scaled_pow2(c: usize, e: usize, d: isize) -> Result<usize, FormulaError> {
    let p = u32::try_from(e)
        .ok()
        .and_then(|e| 1usize.checked_shl(e))
        .filter(|&p| p != 0 && e < usize::BITS as usize)
        .ok_or(FormulaError::Overflow)?;
    c.checked_mul(p).and_then(|x| x.checked_add_signed(d)).ok_or(FormulaError::Overflow)
}

pub fn order_constant(kind: OrderKind, k: usize) -> Result<usize, FormulaError> {
    let min = kind.min_k(k);
    if k < min {
        return Err(FormulaError::KOutOfRange { k, min });
    }
    let t = k / 2;
    let even = k.is_multiple_of(2);
    match (kind, even) {
        (OrderKind::A, true) => scaled_pow2(3, t - 1, -2),
        (OrderKind::A, false) => scaled_pow2(4, t - 1, -2),
        (OrderKind::A0, true) => scaled_pow2(3, t - 2, -2),
        (OrderKind::A0, false) => scaled_pow2(9, t - 3, -2),
        (OrderKind::A1, true) => scaled_pow2(9, t - 4, 2),
        (OrderKind::A1, false) => scaled_pow2(3, t - 2, 4),
    }
}

fn at_least(n: usize, min: usize) -> Result<(), FormulaError> {
    if n < min {
        Err(FormulaError::NTooSmall { n, min })
    } else {
        Ok(())
    }
}

/// `sat(n, P_k) = n − ⌊n/a_k⌋` for `k ≥ 6`, `n ≥ a_k`.
pub fn sat_pk(n: usize, k: usize) -> Result<usize, FormulaError> {
    let a = order_constant(OrderKind::A, k)?;
    at_least(n, a)?;
    Ok(n - n / a)
}

/// `sat(n, {K_3, P_k}) = n − ⌊n/a¹_k⌋` for `k ≥ 10`, `n ≥ a¹_k`.
pub fn sat_k3_pk(n: usize, k: usize) -> Result<usize, FormulaError> {
    if k < 10 {
        return Err(FormulaError::KOutOfRange { k, min: 10 });
    }
    let a1 = order_constant(OrderKind::A1, k)?;
    at_least(n, a1)?;
    Ok(n - n / a1)
}

/// `sat(n, K_p) = (p−2)(n−p+2) + C(p−2, 2)` for `n ≥ p ≥ 3`.
pub fn sat_kp(n: usize, p: usize) -> Result<usize, FormulaError> {
    if p < 3 {
        return Err(FormulaError::KOutOfRange { k: p, min: 3 });
    }
    at_least(n, p)?;
    let s = p - 2;
    s.checked_mul(n - s).and_then(|x| x.checked_add(s * (s.saturating_sub(1)) / 2)).ok_or(FormulaError::Overflow)
}

/// Bracket for `sat(n, K_3 ∪ P_k)`: `2 + sat(n,{K_3,P_k})` to
/// `6 + sat(n,{K_3,P_k})`. Requires `n ≥ 6·a¹_k`.
pub fn sat_k3_cup_pk_bounds(n: usize, k: usize) -> Result<SatBounds, FormulaError> {
    if k < 10 {
        return Err(FormulaError::KOutOfRange { k, min: 10 });
    }
    let a1 = order_constant(OrderKind::A1, k)?;
    at_least(n, a1.checked_mul(6).ok_or(FormulaError::Overflow)?)?;
    let s = sat_k3_pk(n, k)?;
    Ok(SatBounds { lower: s + 2, upper: s + 6 })
}

/// `(n − 1) + sat(n − 1, F)`, the edge count of `K_1 ∨ H` for a minimum
/// `F`-saturated `H` on `n − 1` vertices.
pub fn sat_join_k1(n: usize, sat_f_at_n_minus_1: usize) -> Result<usize, FormulaError> {
    at_least(n, 2)?;
    (n - 1).checked_add(sat_f_at_n_minus_1).ok_or(FormulaError::Overflow)
}

/// Bounds for a linear forest `P_{k_1} ∪ … ∪ P_{k_t}` (orders descending):
/// `n − ⌊n/d⌋ + c(n)` with `0 ≤ c(n) ≤ C(q,2) − q + ⌈q/d⌉`, where
/// `q = Σ k_i − 1` and `d = a_{k_t}` (or `2` when `k_t = 4`).
/// Requires `n ≥ max(d, Σ k_i)`.
pub fn linear_forest_sat_bounds(n: usize, orders: &[usize]) -> Result<SatBounds, FormulaError> {
    if orders.is_empty() || orders.windows(2).any(|w| w[0] < w[1]) {
        return Err(FormulaError::UnsortedOrders);
    }
    let kt = *orders.last().unwrap();
    let d = match kt {
        4 => 2,
        k if k >= 6 => order_constant(OrderKind::A, k)?,
        k => return Err(FormulaError::UnsupportedSmallestOrder(k)),
    };
    let total = orders.iter().try_fold(0usize, |acc, &k| acc.checked_add(k)).ok_or(FormulaError::Overflow)?;
    at_least(n, d.max(total))?;
    let q = total - 1;
    let base = n - n / d;
    let cap = (q.checked_mul(q - 1).ok_or(FormulaError::Overflow)? / 2 - q) + q.div_ceil(d);
    Ok(SatBounds { lower: base, upper: base.checked_add(cap).ok_or(FormulaError::Overflow)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_constants() {
        assert_eq!(order_constant(OrderKind::A1, 10), Ok(20));
        assert_eq!(order_constant(OrderKind::A1, 9), Ok(16));
        assert_eq!(order_constant(OrderKind::A1, 11), Ok(28));
        assert_eq!(order_constant(OrderKind::A1, 12), Ok(38));
        assert_eq!(order_constant(OrderKind::A1, 8), Ok(11));
        assert_eq!(order_constant(OrderKind::A0, 9), Ok(16));
        assert_eq!(order_constant(OrderKind::A0, 10), Ok(22));
        assert_eq!(order_constant(OrderKind::A0, 7), Ok(7));
        assert_eq!(order_constant(OrderKind::A, 10), Ok(46));
        assert_eq!(order_constant(OrderKind::A, 9), Ok(30));
        assert_eq!(order_constant(OrderKind::A, 6), Ok(10));
        assert_eq!(order_constant(OrderKind::A1, 7), Err(FormulaError::KOutOfRange { k: 7, min: 9 }));
        assert_eq!(order_constant(OrderKind::A, 5), Err(FormulaError::KOutOfRange { k: 5, min: 6 }));
        assert_eq!(order_constant(OrderKind::A, 200), Err(FormulaError::Overflow));
    }

    #[test]
    fn saturation_numbers() {
        assert_eq!(sat_pk(46, 10), Ok(45));
        assert_eq!(sat_pk(92, 10), Ok(90));
        assert!(sat_pk(10, 5).is_err());
        assert_eq!(sat_k3_pk(40, 10), Ok(38));
        assert_eq!(sat_k3_pk(20, 10), Ok(19));
        assert_eq!(sat_k3_pk(100, 11), Ok(97));
        assert_eq!(sat_k3_pk(19, 10), Err(FormulaError::NTooSmall { n: 19, min: 20 }));
        assert_eq!(sat_kp(5, 3), Ok(4));
        assert_eq!(sat_kp(6, 4), Ok(9));
        assert_eq!(sat_kp(5, 4), Ok(7));
        assert!(sat_kp(3, 4).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(sat_k3_cup_pk_bounds(200, 10), Ok(SatBounds { lower: 192, upper: 196 }));
        assert_eq!(sat_k3_cup_pk_bounds(120, 10), Ok(SatBounds { lower: 116, upper: 120 }));
        assert!(sat_k3_cup_pk_bounds(119, 10).is_err());
        assert_eq!(sat_join_k1(7, 3), Ok(9));
        assert_eq!(sat_join_k1(21, 19), Ok(39));
        assert_eq!(linear_forest_sat_bounds(46, &[10]), Ok(SatBounds { lower: 45, upper: 45 + 28 }));
        assert_eq!(linear_forest_sat_bounds(100, &[10]).unwrap().lower, sat_pk(100, 10).unwrap());
        // k_t = 4 divides by 2: q = 3 gives cap 3 − 3 + 2, q = 8 gives 28 − 8 + 4.
        assert_eq!(linear_forest_sat_bounds(20, &[4]), Ok(SatBounds { lower: 10, upper: 10 + 2 }));
        assert_eq!(linear_forest_sat_bounds(20, &[5, 4]), Ok(SatBounds { lower: 10, upper: 10 + 24 }));
        assert_eq!(linear_forest_sat_bounds(20, &[3]), Err(FormulaError::UnsupportedSmallestOrder(3)));
        assert_eq!(linear_forest_sat_bounds(20, &[4, 5]), Err(FormulaError::UnsortedOrders));
    }
}
