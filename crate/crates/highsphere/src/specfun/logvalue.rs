//! Signed log-scale scalar.

/// A real number stored as `sign * exp(ln_abs)`.
///
/// Normalizing constants at dimensions around 10^5 involve factors such as
/// pi^p and (p-1)! whose linear-scale values overflow f64 by hundreds of
/// orders of magnitude; all constant arithmetic therefore stays in log
/// space. The sign is tracked separately so that alternating sums (the
/// complex Bingham partial-fraction weights) can be accumulated without
/// ever materializing linear-scale values.
///
/// Invariant: `sign == 0` if and only if the represented value is exactly
/// zero, in which case `ln_abs` is negative infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub ln_abs: f64,
    pub sign: i8,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        ln_abs: f64::NEG_INFINITY,
        sign: 0,
    };

    /// Positive value given as its natural log.
    pub fn from_ln(ln_abs: f64) -> Self {
        LogValue { ln_abs, sign: 1 }
    }

    pub fn new(ln_abs: f64, sign: i8) -> Self {
        if sign == 0 || ln_abs == f64::NEG_INFINITY {
            LogValue::ZERO
        } else {
            LogValue {
                ln_abs,
                sign: sign.signum(),
            }
        }
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            LogValue::ZERO
        } else {
            LogValue {
                ln_abs: v.abs().ln(),
                sign: if v > 0.0 { 1 } else { -1 },
            }
        }
    }

    /// Linear-scale value; may overflow to +/- infinity.
    pub fn to_f64(self) -> f64 {
        self.sign as f64 * self.ln_abs.exp()
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn mul(self, other: LogValue) -> LogValue {
        if self.sign == 0 || other.sign == 0 {
            return LogValue::ZERO;
        }
        LogValue {
            ln_abs: self.ln_abs + other.ln_abs,
            sign: self.sign * other.sign,
        }
    }
}

/// Sign-tracked log-sum-exp over a list of signed log-scale terms.
///
/// The largest magnitude is factored out, so the result is finite whenever
/// the true sum is representable in log space, regardless of how large the
/// individual terms are.
pub fn signed_log_sum(terms: &[LogValue]) -> LogValue {
    let m = terms
        .iter()
        .filter(|t| t.sign != 0)
        .map(|t| t.ln_abs)
        .fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return LogValue::ZERO;
    }
    let mut acc = 0.0;
    for t in terms {
        if t.sign != 0 {
            acc += t.sign as f64 * (t.ln_abs - m).exp();
        }
    }
    if acc == 0.0 {
        LogValue::ZERO
    } else {
        LogValue {
            ln_abs: m + acc.abs().ln(),
            sign: if acc > 0.0 { 1 } else { -1 },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zero_invariant() {
        assert_eq!(LogValue::from_f64(0.0).sign, 0);
        assert!(LogValue::from_f64(0.0).ln_abs.is_infinite());
        assert_eq!(LogValue::new(3.0, 0), LogValue::ZERO);
    }

    #[test]
    fn roundtrip_and_product() {
        let a = LogValue::from_f64(-2.5);
        let b = LogValue::from_f64(4.0);
        assert_relative_eq!(a.to_f64(), -2.5, max_relative = 1e-14);
        assert_relative_eq!(a.mul(b).to_f64(), -10.0, max_relative = 1e-14);
    }

    #[test]
    fn signed_sum_with_cancellation() {
        // 1e300 + 1 - 1e300 in log space
        let terms = [
            LogValue::from_ln(300.0 * std::f64::consts::LN_10),
            LogValue::from_f64(1.0),
            LogValue::new(300.0 * std::f64::consts::LN_10, -1),
        ];
        let s = signed_log_sum(&terms);
        // the small term is below the representable gap at 1e300: exact zero
        assert!(s.is_zero() || s.ln_abs < 300.0);
    }

    #[test]
    fn signed_sum_huge_terms_stay_in_log_space() {
        let terms = [
            LogValue::from_ln(5000.0),
            LogValue::new(4999.0, -1),
            LogValue::from_ln(4000.0),
        ];
        let s = signed_log_sum(&terms);
        assert_eq!(s.sign, 1);
        // exp(5000) - exp(4999) = exp(5000) * (1 - 1/e)
        assert_relative_eq!(
            s.ln_abs,
            5000.0 + (1.0 - (-1.0f64).exp()).ln(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn exact_cancellation_gives_zero() {
        let terms = [LogValue::from_f64(7.0), LogValue::from_f64(-7.0)];
        assert!(signed_log_sum(&terms).is_zero());
    }
}
