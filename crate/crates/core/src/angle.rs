//! Angle helpers. All angle arithmetic in the crate goes through these so
//! that every module agrees on the branch cut.

use num_complex::Complex;

use crate::scalar::Real;

/// Reduces an angle to `(-π, π]`.
pub fn normalize_angle<T: Real>(x: T) -> T {
    let pi = T::PI();
    let two_pi = pi + pi;
    if x > -pi && x <= pi {
        return x;
    }
    let mut r = x % two_pi;
    if r > pi {
        r = r - two_pi;
    } else if r <= -pi {
        r = r + two_pi;
    }
    r
}

/// `arg(a / b)` in `(-π, π]`, computed without forming the quotient.
#[inline]
pub fn arg_ratio<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    let dot = a.re * b.re + a.im * b.im;
    let cross = b.re * a.im - b.im * a.re;
    cross.atan2(dot)
}

/// Planar cross product `u × v = u.re·v.im − u.im·v.re`.
#[inline]
pub fn cross<T: Real>(u: Complex<T>, v: Complex<T>) -> T {
    u.re * v.im - u.im * v.re
}

#[inline]
pub fn degrees<T: Real>(rad: T) -> T {
    rad.to_degrees()
}

#[inline]
pub fn radians<T: Real>(deg: T) -> T {
    deg.to_radians()
}
