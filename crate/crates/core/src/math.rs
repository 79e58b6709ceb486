//! Thin wrappers over `libm` so the rest of the crate reads like `std` float code.

pub use core::f64::consts::{PI, TAU};

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn acos(x: f64) -> f64 {
    libm::acos(x)
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

/// Maps an angle to `[0, 2π)`.
#[inline]
pub fn wrap_tau(theta: f64) -> f64 {
    let t = theta - TAU * floor(theta / TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Scales `v` to sum to one, then adjusts the last entry so that the
/// left-to-right floating-point sum is exactly `1.0`. Only one rounding
/// follows the last entry, so stepping it by single ulps cannot skip over the
/// target.
pub fn normalize_sum(v: &mut [f64]) {
    let total: f64 = v.iter().sum();
    for x in v.iter_mut() {
        *x /= total;
    }
    let Some((last, head)) = v.split_last_mut() else {
        return;
    };
    let partial: f64 = head.iter().sum();
    *last = 1.0 - partial;
    for _ in 0..64 {
        let sum = partial + *last;
        if sum == 1.0 {
            break;
        }
        *last = if sum < 1.0 {
            last.next_up()
        } else {
            last.next_down()
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_sum_is_exactly_one() {
        // a cheap deterministic spread of magnitudes
        let mut x = 0.123_456_789_f64;
        for n in 2..40 {
            let mut v: alloc::vec::Vec<f64> = (0..n)
                .map(|_| {
                    x = (x * 997.0 + 0.271_828) % 1.0;
                    0.01 + x * x * 50.0
                })
                .collect();
            normalize_sum(&mut v);
            assert_eq!(v.iter().sum::<f64>(), 1.0, "n = {n}");
        }
    }

    #[test]
    fn wrap_into_range() {
        assert_eq!(wrap_tau(0.0), 0.0);
        assert!((wrap_tau(-PI / 2.0) - 1.5 * PI).abs() < 1e-15);
        assert!(wrap_tau(TAU) < 1e-15);
    }
}
