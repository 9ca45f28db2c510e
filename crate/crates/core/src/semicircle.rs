//! The semicircle law on [−2, 2].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Density (1/2π)√(4 − x²) on [−2, 2].
pub fn sc_pdf(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        0.0
    } else {
        (4.0 - x * x).sqrt() / (2.0 * PI)
    }
}

/// Closed-form distribution function.
pub fn sc_cdf(x: f64) -> f64 {
    if x <= -2.0 {
        0.0
    } else if x >= 2.0 {
        1.0
    } else {
        0.5 + x * (4.0 - x * x).sqrt() / (4.0 * PI) + (x / 2.0).asin() / PI
    }
}

/// Mass of the interval between `a` and `b` (the law has no atoms, so
/// open and closed ends agree).
pub fn sc_interval(a: f64, b: f64) -> Result<f64> {
    if a > b {
        return Err(Error::Domain(format!("interval [{a}, {b}] is reversed")));
    }
    Ok(sc_cdf(b) - sc_cdf(a))
}

/// Stieltjes transform s(z) = (−z + √(z² − 4))/2, taking the square root
/// with positive imaginary part.
pub fn sc_stieltjes(z: Complex64) -> Result<Complex64> {
    if z.im.is_nan() || z.im <= 0.0 {
        return Err(Error::Domain(format!(
            "Stieltjes transform needs Im z > 0, got {z}"
        )));
    }
    let root = (z * z - 4.0).sqrt();
    let root = if root.im > 0.0 { root } else { -root };
    Ok((-z + root) / 2.0)
}
