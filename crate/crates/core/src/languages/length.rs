//! Double-logarithmic length windows.

use serde::{Deserialize, Serialize};

/// `TOWER[t] = 2^(2^t)`.
const TOWER: [u128; 7] = [2, 4, 16, 256, 65_536, 1 << 32, 1 << 64];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LengthClass {
    Even,
    Odd,
    /// `n = 2`: `log log n = 0` falls in neither window.
    Boundary,
}

/// Where the boundary length goes when a two-way split is required.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryConvention {
    #[default]
    Even,
    Odd,
}

/// Classifies a length by the window containing `log log n`:
/// Even iff `2^(2^(2k)) < n ≤ 2^(2^(2k+1))` for some `k`, or `n = 0`;
/// Odd iff `2^(2^(2k+1)) < n ≤ 2^(2^(2k+2))`, or `n = 1`.
pub fn length_class(n: u64) -> LengthClass {
    match n {
        0 => LengthClass::Even,
        1 => LengthClass::Odd,
        2 => LengthClass::Boundary,
        _ => {
            let n = n as u128;
            let t = (0..TOWER.len() - 1)
                .find(|&t| TOWER[t] < n && n <= TOWER[t + 1])
                .expect("every u64 above 2 lies in some window");
            if t % 2 == 0 {
                LengthClass::Even
            } else {
                LengthClass::Odd
            }
        }
    }
}

/// Two-way split of lengths under `conv`.
pub fn is_even_length(n: u64, conv: BoundaryConvention) -> bool {
    match length_class(n) {
        LengthClass::Even => true,
        LengthClass::Odd => false,
        LengthClass::Boundary => conv == BoundaryConvention::Even,
    }
}

/// `⌈log₂ n⌉` for `n ≥ 1`.
pub fn ceil_log2(n: u64) -> u32 {
    debug_assert!(n >= 1);
    64 - (n - 1).leading_zeros()
}

/// The shortcut membership rule for the even window: accept iff
/// `⌈log log n⌉` is odd. Computed as `⌈log₂ ⌈log₂ n⌉⌉`, which is exact
/// because the thresholds are integers. Meaningful for `n ≥ 3`.
pub fn ceil_loglog_is_odd(n: u64) -> bool {
    ceil_log2(ceil_log2(n) as u64) % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_examples() {
        assert_eq!(length_class(3), LengthClass::Even);
        assert_eq!(length_class(4), LengthClass::Even);
        assert_eq!(length_class(5), LengthClass::Odd);
        assert_eq!(length_class(10), LengthClass::Odd);
        assert_eq!(length_class(16), LengthClass::Odd);
        assert_eq!(length_class(17), LengthClass::Even);
        assert_eq!(length_class(100), LengthClass::Even);
        assert_eq!(length_class(256), LengthClass::Even);
        assert_eq!(length_class(257), LengthClass::Odd);
        assert_eq!(length_class(65_537), LengthClass::Even);
        assert_eq!(length_class(u64::MAX), LengthClass::Odd);
    }

    #[test]
    fn corners() {
        assert_eq!(length_class(0), LengthClass::Even);
        assert_eq!(length_class(1), LengthClass::Odd);
        assert_eq!(length_class(2), LengthClass::Boundary);
        assert!(is_even_length(2, BoundaryConvention::Even));
        assert!(!is_even_length(2, BoundaryConvention::Odd));
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(1 << 40), 40);
    }

    #[test]
    fn shortcut_agrees_away_from_corners() {
        for n in 3..=1u64 << 16 {
            assert_eq!(ceil_loglog_is_odd(n), length_class(n) == LengthClass::Even, "n = {n}");
        }
    }
}
