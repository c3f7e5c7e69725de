//! Complex square-root branch convention and log-scaled complex values.
//!
//! Opaque-barrier transmission amplitudes contain `exp(-q L)` with `q L`
//! easily in the hundreds, far below the smallest normal double. Holding a
//! value as `mantissa * exp(log_scale)` keeps both its magnitude (as a log)
//! and its phase exact at any attenuation.

use num_complex::Complex64;

/// Square root with the branch cut on the negative real axis and the root
/// chosen so that `Re(w) >= 0`; on the cut itself (`Re(z) < 0`, `Im(z) = 0`)
/// the root is `+i sqrt(|z|)`, regardless of the sign of the zero in `Im(z)`.
///
/// This keeps `q = sqrt(v0 - E)` continuous across `E = v0` from the
/// tunneling side and keeps `exp(-q x)` decaying for every barrier model in
/// this crate.
pub fn complex_sqrt_branch(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        if z.re < 0.0 {
            return Complex64::new(0.0, (-z.re).sqrt());
        }
        return Complex64::new(z.re.sqrt(), 0.0);
    }
    // Principal square root: r^(1/2) e^(i theta / 2) with theta in (-pi, pi],
    // which already has Re >= 0.
    z.sqrt()
}

/// A complex number stored as `mantissa * exp(log_scale)`.
///
/// The mantissa is kept at magnitude one (zero is the exception) so that the
/// representable dynamic range is limited only by the `f64` range of
/// `log_scale` itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    mantissa: Complex64,
    log_scale: f64,
}

impl ScaledComplex {
    pub fn new(value: Complex64, log_scale: f64) -> Self {
        Self {
            mantissa: value,
            log_scale,
        }
        .normalized()
    }

    pub fn from_complex(value: Complex64) -> Self {
        Self::new(value, 0.0)
    }

    pub const fn zero() -> Self {
        Self {
            mantissa: Complex64::new(0.0, 0.0),
            log_scale: 0.0,
        }
    }

    fn normalized(self) -> Self {
        let r = self.mantissa.norm();
        if r == 0.0 || !r.is_finite() {
            return Self {
                mantissa: self.mantissa,
                log_scale: self.log_scale,
            };
        }
        Self {
            mantissa: self.mantissa / r,
            log_scale: self.log_scale + r.ln(),
        }
    }

    /// Unit-magnitude mantissa carrying the phase.
    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn log_abs(&self) -> f64 {
        if self.mantissa.norm() == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.log_scale
        }
    }

    pub fn abs(&self) -> f64 {
        self.log_abs().exp()
    }

    /// Principal argument, from the mantissa alone.
    pub fn arg(&self) -> f64 {
        self.mantissa.arg()
    }

    /// Collapse to a plain complex number. Underflows to zero (or overflows
    /// to infinity) honestly when the scale is beyond double range.
    pub fn to_complex(&self) -> Complex64 {
        self.mantissa * self.log_scale.exp()
    }

    pub fn mul_complex(&self, rhs: Complex64) -> Self {
        Self::new(self.mantissa * rhs, self.log_scale)
    }

    pub fn div_complex(&self, rhs: Complex64) -> Self {
        Self::new(self.mantissa / rhs, self.log_scale)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.mantissa * rhs.mantissa, self.log_scale + rhs.log_scale)
    }
}

/// The two exponential factors of the barrier transmission denominator after
/// the growing exponential has been cancelled between numerator and
/// denominator.
///
/// The raw closed form reads
/// `a_T = 4i (k/q) e^{-ikL} / [e^{-qL} (1 + ik/q)^2 - e^{qL} (1 - ik/q)^2]`,
/// and `e^{qL}` overflows once `Re(q) L` passes ~700. Multiplying numerator
/// and denominator by `e^{-qL}` leaves every factor bounded:
///
/// * numerator factor `e^{-qL}`, returned log-scaled (first element),
/// * denominator factor `e^{-2qL}`, bounded by one in magnitude (second
///   element), which multiplies the `(1 + ik/q)^2` term while the
///   `(1 - ik/q)^2` term keeps coefficient -1.
///
/// Requires `Re(q) * length >= 0`.
pub fn scaled_exp_pair(q: Complex64, length: f64) -> (ScaledComplex, Complex64) {
    let exponent = -q * length;
    debug_assert!(exponent.re <= 0.0, "growing exponential not cancelled");
    let numerator = ScaledComplex::new(Complex64::new(0.0, exponent.im).exp(), exponent.re);
    let denominator = (2.0 * exponent).exp();
    (numerator, denominator)
}
