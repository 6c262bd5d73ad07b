//! Arithmetic on `[0, ∞]` with the measure-theoretic conventions
//! `a/∞ = 0` (a finite), `a/0 = ∞` (a > 0) and `0·∞ = 0`.
//!
//! Plain `f64` with `f64::INFINITY` as the distinguished infinite value
//! already satisfies the first two; IEEE `0.0 * inf = NaN` is the one case
//! that must be patched.

/// `a * b` with `0·∞ = 0`.
pub fn mul(a: f64, b: f64) -> f64 {
    if (a == 0.0 && b.is_infinite()) || (b == 0.0 && a.is_infinite()) {
        0.0
    } else {
        a * b
    }
}

/// `a / b` with `a/∞ = 0` for finite `a`, `a/0 = ∞` for `a > 0` and `0/0 = 0`.
pub fn div(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        if a > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    } else if b.is_infinite() {
        if a.is_infinite() {
            f64::NAN
        } else {
            0.0
        }
    } else {
        a / b
    }
}

/// `a^e` for `a ∈ [0, ∞]`, `e ≠ 0`, with `∞^e = ∞` (e > 0), `∞^e = 0` (e < 0).
pub fn powf(a: f64, e: f64) -> f64 {
    if a.is_infinite() {
        if e > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    } else {
        a.powf(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saks_conventions() {
        assert_eq!(mul(0.0, f64::INFINITY), 0.0);
        assert_eq!(mul(f64::INFINITY, 0.0), 0.0);
        assert_eq!(mul(2.0, 3.0), 6.0);
        assert_eq!(div(1.0, f64::INFINITY), 0.0);
        assert_eq!(div(1.0, 0.0), f64::INFINITY);
        assert_eq!(div(0.0, 0.0), 0.0);
        assert_eq!(div(6.0, 3.0), 2.0);
        assert_eq!(powf(f64::INFINITY, -1.5), 0.0);
        assert_eq!(powf(f64::INFINITY, 2.0), f64::INFINITY);
    }
}
