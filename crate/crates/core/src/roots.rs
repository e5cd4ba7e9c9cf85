//! Bracketing root finder used for the elastica constants and the β* search.

use crate::scalar::{lit, Real};

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// Returns `None` if `f(lo)` and `f(hi)` have the same strict sign. Iterates
/// until the bracket is narrower than `tol` or cannot be split further.
pub(crate) fn bisect<T: Real, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T, tol: T) -> Option<T> {
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == T::zero() {
        return Some(lo);
    }
    if fhi == T::zero() {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return None;
    }
    let half = lit::<T>(0.5);
    for _ in 0..400 {
        let mid = (lo + hi) * half;
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some((lo + hi) * half)
}
