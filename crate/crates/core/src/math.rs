//! Thin wrappers over `libm` so the crate stays `no_std`.

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn lgamma(x: f64) -> f64 {
    libm::lgamma(x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// `e^{i phase}`
#[inline]
pub(crate) fn cis(phase: f64) -> num_complex::Complex64 {
    num_complex::Complex64::new(cos(phase), sin(phase))
}

/// Wraps an angle into `[0, 2pi)`.
pub(crate) fn wrap_angle(x: f64) -> f64 {
    let tau = core::f64::consts::TAU;
    let r = x - tau * libm::floor(x / tau);
    if r >= tau {
        0.0
    } else {
        r
    }
}
