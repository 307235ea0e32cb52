//! Float helpers that work with and without `std`.

pub(crate) use core::f64::consts::TAU;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn sin_cos(x: f64) -> (f64, f64) {
    libm::sincos(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// `(cos, sin)` of `2π·k/n` with `k` reduced modulo `n` first, so that table
/// entries are exactly periodic.
#[inline]
pub(crate) fn unit_root(k: i64, n: usize) -> (f64, f64) {
    let k = k.rem_euclid(n as i64) as f64;
    let (s, c) = sin_cos(TAU * k / n as f64);
    (c, s)
}
