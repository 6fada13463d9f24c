//! Numerical thresholds shared across modules.

/// Moduli below this are treated as an exact zero.
pub const ZERO_MODULUS: f64 = 1e-300;

/// Smallest admissible |Re alpha| for an automorphism exponent.
pub const MIN_REAL_PART: f64 = 1e-12;

/// Relative tolerance for grouping equal moduli in limit sums.
pub const LEVEL_REL: f64 = 1e-9;

/// A modulus level cancels when its phase sum is at most this.
pub const CANCEL_ABS: f64 = 1e-9;

/// `|r - 1|` below this puts a zero-limit sum on the convergent branch.
pub const UNIT_PHASE: f64 = 1e-9;

/// Margin keeping `cos(theta)` away from zero.
pub const DIRECTION_MARGIN: f64 = 1e-9;

/// Default tolerance on `|sum w e^(i phi)| = 1` for limit means.
pub const NORMALIZATION: f64 = 1e-9;

/// Slack used by the line order.
pub const ORDER_SLACK: f64 = 1e-12;

/// Residual-to-input ratio under which Gram-Schmidt declares dependence.
pub const DEPENDENCE_RATIO: f64 = 1e-10;
