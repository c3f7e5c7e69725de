//! Unitary two-channel model: an elastic channel (barrier `v0`) coupled by
//! `v_c` to an inelastic channel (barrier `v_i`, excitation threshold
//! `delta`), all of common width `L`. Solved exactly by matching wave
//! function and derivative at both edges; no complex potential anywhere, so
//! flux is conserved with the velocity weights `k` and `k'`.
//!
//! Diagonalizing the symmetric coupling matrix
//! `[[v0, v_c], [v_c, v_i + delta]]` by the rotation angle
//! `theta = atan2(2 v_c, v0 - v_i - delta)` turns the coupled equations into
//! two independent interior modes with decay constants `alpha` and `beta`.
//! The Hartman plateau in the elastic delay survives exactly when both modes
//! are evanescent, i.e. when `(v_i + delta - E)(v0 - E) > v_c^2`.

use num_complex::Complex64;

use crate::error::Error;
use crate::exec::par_map;
use crate::linsolve::{solve_with_condition, CMatrix};
use crate::numerics;
use crate::scaled::complex_sqrt_branch;
use crate::units::{Energy, Length, PotentialStrength, Time};

/// Parameters of the coupled elastic/inelastic pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoChannelSpec {
    pub(crate) v0: PotentialStrength,
    pub(crate) v_i: PotentialStrength,
    pub(crate) v_c: PotentialStrength,
    pub(crate) delta: Energy,
    pub(crate) length: Length,
    pub(crate) energy: Energy,
}

impl TwoChannelSpec {
    pub fn new(
        v0: PotentialStrength,
        v_i: PotentialStrength,
        v_c: PotentialStrength,
        delta: Energy,
        length: Length,
        energy: Energy,
    ) -> Result<Self, Error> {
        if !(v0 > 0.0) || !v0.is_finite() {
            return Err(Error::invalid(format!("v0 must be positive, got {v0}")));
        }
        if !v_i.is_finite() {
            return Err(Error::invalid("v_i must be finite"));
        }
        if !(v_c >= 0.0) || !v_c.is_finite() {
            return Err(Error::invalid(format!(
                "v_c must be nonnegative, got {v_c}"
            )));
        }
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::invalid(format!(
                "delta must be positive, got {delta}"
            )));
        }
        if !(length >= 0.0) || !length.is_finite() {
            return Err(Error::invalid(format!(
                "length must be nonnegative, got {length}"
            )));
        }
        if !(energy > 0.0) || !energy.is_finite() {
            return Err(Error::invalid(format!(
                "energy must be positive, got {energy}"
            )));
        }
        if energy <= delta {
            return Err(Error::ClosedChannel { energy, delta });
        }
        Ok(Self {
            v0,
            v_i,
            v_c,
            delta,
            length,
            energy,
        })
    }

    pub fn v0(&self) -> PotentialStrength {
        self.v0
    }

    pub fn v_i(&self) -> PotentialStrength {
        self.v_i
    }

    pub fn v_c(&self) -> PotentialStrength {
        self.v_c
    }

    pub fn delta(&self) -> Energy {
        self.delta
    }

    pub fn length(&self) -> Length {
        self.length
    }

    pub fn energy(&self) -> Energy {
        self.energy
    }

    /// Elastic wave number `k = sqrt(E)`.
    pub fn elastic_wave_number(&self) -> f64 {
        self.energy.sqrt()
    }

    /// Inelastic wave number `k' = sqrt(E - delta)`.
    pub fn inelastic_wave_number(&self) -> f64 {
        (self.energy - self.delta).sqrt()
    }

    fn with_energy(&self, energy: Energy) -> Self {
        Self { energy, ..*self }
    }

    pub(crate) fn with_length(&self, length: Length) -> Self {
        Self { length, ..*self }
    }
}

/// Interior mode structure of the diagonalized channel pair.
#[derive(Debug, Clone, Copy)]
pub struct ChannelMixing {
    /// Squared decay constant of the stiffer mode (larger eigenvalue).
    pub alpha_sq: f64,
    /// Squared decay constant of the softer mode.
    pub beta_sq: f64,
    /// Rotation angle diagonalizing the channel coupling matrix.
    pub mixing_angle: f64,
}

impl ChannelMixing {
    /// `alpha` through the crate's square-root branch (real when
    /// evanescent, `i |alpha|` when propagating).
    pub fn alpha(&self) -> Complex64 {
        complex_sqrt_branch(Complex64::new(self.alpha_sq, 0.0))
    }

    pub fn beta(&self) -> Complex64 {
        complex_sqrt_branch(Complex64::new(self.beta_sq, 0.0))
    }

    /// Product `alpha * beta`; real for a surviving plateau, imaginary when
    /// an interior mode propagates.
    pub fn alpha_beta(&self) -> Complex64 {
        self.alpha() * self.beta()
    }
}

/// Mode decomposition of the interior region:
/// `alpha^2, beta^2 = (v0 + v_i + delta - 2E)/2 +- sqrt((v0-v_i-delta)^2/4 + v_c^2)`.
pub fn mixing_of(spec: &TwoChannelSpec) -> ChannelMixing {
    let sum = spec.v0 + spec.v_i + spec.delta - 2.0 * spec.energy;
    let half_gap = 0.5 * (spec.v0 - spec.v_i - spec.delta);
    let radical = (half_gap * half_gap + spec.v_c * spec.v_c).sqrt();
    ChannelMixing {
        alpha_sq: 0.5 * sum + radical,
        beta_sq: 0.5 * sum - radical,
        mixing_angle: (2.0 * spec.v_c).atan2(spec.v0 - spec.v_i - spec.delta),
    }
}

/// Interior coefficients: `b, c` multiply `e^{+-alpha x}` in the stiff mode,
/// `f, g` multiply `e^{+-beta x}` in the soft mode.
#[derive(Debug, Clone, Copy)]
pub struct TwoChannelInterior {
    pub alpha_grow: Complex64,
    pub alpha_decay: Complex64,
    pub beta_grow: Complex64,
    pub beta_decay: Complex64,
}

/// Full solution of the coupled matching problem.
#[derive(Debug, Clone, Copy)]
pub struct TwoChannelSolution {
    pub spec: TwoChannelSpec,
    pub mixing: ChannelMixing,
    pub elastic_reflection: Complex64,
    pub elastic_transmission: Complex64,
    pub inelastic_reflection: Complex64,
    pub inelastic_transmission: Complex64,
    pub interior: TwoChannelInterior,
}

impl TwoChannelSolution {
    /// `|a_R|^2 + |a_T|^2 + (k'/k)(|R|^2 + |T|^2) - 1`; zero by unitarity.
    pub fn flux_defect(&self) -> f64 {
        let k = self.spec.elastic_wave_number();
        let kp = self.spec.inelastic_wave_number();
        self.elastic_reflection.norm_sqr() + self.elastic_transmission.norm_sqr()
            + kp / k
                * (self.inelastic_reflection.norm_sqr() + self.inelastic_transmission.norm_sqr())
            - 1.0
    }

    /// Interior elastic and inelastic wave functions at `x`.
    pub fn interior_wave(&self, x: f64) -> (Complex64, Complex64) {
        let half = 0.5 * self.mixing.mixing_angle;
        let (s2, c2) = (half.sin(), half.cos());
        let alpha = self.mixing.alpha();
        let beta = self.mixing.beta();
        let stiff = self.interior.alpha_grow * (alpha * x).exp()
            + self.interior.alpha_decay * (-alpha * x).exp();
        let soft = self.interior.beta_grow * (beta * x).exp()
            + self.interior.beta_decay * (-beta * x).exp();
        (c2 * stiff - s2 * soft, s2 * stiff + c2 * soft)
    }

    /// Derivatives of the interior wave functions at `x`.
    pub fn interior_slope(&self, x: f64) -> (Complex64, Complex64) {
        let half = 0.5 * self.mixing.mixing_angle;
        let (s2, c2) = (half.sin(), half.cos());
        let alpha = self.mixing.alpha();
        let beta = self.mixing.beta();
        let stiff = alpha
            * (self.interior.alpha_grow * (alpha * x).exp()
                - self.interior.alpha_decay * (-alpha * x).exp());
        let soft = beta
            * (self.interior.beta_grow * (beta * x).exp()
                - self.interior.beta_decay * (-beta * x).exp());
        (c2 * stiff - s2 * soft, s2 * stiff + c2 * soft)
    }
}

/// Solve the coupled pair by matching `psi, psi', phi, phi'` at both edges:
/// an 8x8 complex system in `(a_R, R, B e^{aL}, C, F e^{bL}, G, a_T, T)`.
/// The growing interior columns are pre-scaled so the matrix stays
/// conditioned for opaque barriers.
pub fn solve(spec: &TwoChannelSpec) -> Result<TwoChannelSolution, Error> {
    let mixing = mixing_of(spec);
    let k = Complex64::new(0.0, spec.elastic_wave_number());
    let kp = Complex64::new(0.0, spec.inelastic_wave_number());
    let alpha = mixing.alpha();
    let beta = mixing.beta();
    let half = 0.5 * mixing.mixing_angle;
    let (s2, c2) = (half.sin(), half.cos());
    let l = spec.length;
    let u = (-alpha * l).exp();
    let w = (-beta * l).exp();
    let eikl = (k * l).exp();
    let eikpl = (kp * l).exp();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);

    // Unknowns: 0 a_R, 1 R, 2 B~, 3 C, 4 F~, 5 G, 6 a_T, 7 T.
    let a = CMatrix::from_rows(&[
        // psi continuity at 0: 1 + a_R = c2 (B~u + C) - s2 (F~w + G)
        vec![one, zero, -c2 * u, -c2 * one, s2 * w, s2 * one, zero, zero],
        // psi' at 0: ik (1 - a_R) = alpha c2 (B~u - C) - beta s2 (F~w - G)
        vec![
            -k,
            zero,
            -alpha * c2 * u,
            alpha * c2,
            beta * s2 * w,
            -beta * s2,
            zero,
            zero,
        ],
        // phi at 0: R = s2 (B~u + C) + c2 (F~w + G)
        vec![zero, one, -s2 * u, -s2 * one, -c2 * w, -c2 * one, zero, zero],
        // phi' at 0: -ik' R = alpha s2 (B~u - C) + beta c2 (F~w - G)
        vec![
            zero,
            -kp,
            -alpha * s2 * u,
            alpha * s2,
            -beta * c2 * w,
            beta * c2,
            zero,
            zero,
        ],
        // psi at L: c2 (B~ + Cu) - s2 (F~ + Gw) = a_T e^{ikL}
        vec![zero, zero, c2 * one, c2 * u, -s2 * one, -s2 * w, -eikl, zero],
        // psi' at L
        vec![
            zero,
            zero,
            alpha * c2,
            -alpha * c2 * u,
            -beta * s2,
            beta * s2 * w,
            -k * eikl,
            zero,
        ],
        // phi at L: s2 (B~ + Cu) + c2 (F~ + Gw) = T e^{ik'L}
        vec![zero, zero, s2 * one, s2 * u, c2 * one, c2 * w, zero, -eikpl],
        // phi' at L
        vec![
            zero,
            zero,
            alpha * s2,
            -alpha * s2 * u,
            beta * c2,
            -beta * c2 * w,
            zero,
            -kp * eikpl,
        ],
    ]);
    let rhs = vec![-one, -k, zero, zero, zero, zero, zero, zero];
    let solved = solve_with_condition(&a, &rhs)?;
    Ok(TwoChannelSolution {
        spec: *spec,
        mixing,
        elastic_reflection: solved.x[0],
        inelastic_reflection: solved.x[1],
        interior: TwoChannelInterior {
            alpha_grow: solved.x[2] * u,
            alpha_decay: solved.x[3],
            beta_grow: solved.x[4] * w,
            beta_decay: solved.x[5],
        },
        elastic_transmission: solved.x[6],
        inelastic_transmission: solved.x[7],
    })
}

const THRESHOLD_WINDOW: f64 = 1e-9;

/// Wigner phase time of the elastic channel: energy derivative of the
/// unwrapped phase of `a_T e^{ikL}`.
pub fn elastic_phase_time(spec: &TwoChannelSpec) -> Result<Time, Error> {
    if (spec.energy - spec.delta).abs() < THRESHOLD_WINDOW {
        return Err(Error::DegenerateEnergy {
            energy: spec.energy,
            threshold: spec.delta,
        });
    }
    if (spec.v0 - spec.energy).abs() < THRESHOLD_WINDOW {
        return Err(Error::DegenerateEnergy {
            energy: spec.energy,
            threshold: spec.v0,
        });
    }
    let base = *spec;
    let amp = move |e: f64| -> Complex64 {
        let s = base.with_energy(e);
        match solve(&s) {
            Ok(sol) => {
                let k = Complex64::new(0.0, s.elastic_wave_number());
                sol.elastic_transmission * (k * s.length).exp()
            }
            // Signal failure as a zero amplitude; the phase walker turns it
            // into an UnresolvableJump at this energy.
            Err(_) => Complex64::new(0.0, 0.0),
        }
    };
    let step = numerics::default_step(spec.energy)
        .min(0.2 * (spec.energy - spec.delta))
        .min(0.2 * (spec.v0 - spec.energy).abs())
        .min(0.2 * spec.energy);
    Ok(numerics::phase_derivative(&amp, spec.energy, step)?.value)
}

/// Evanescence criterion for a surviving plateau.
#[derive(Debug, Clone, Copy)]
pub struct CriterionVerdict {
    /// `(v_i + delta - E)(v0 - E) - v_c^2`.
    pub margin: f64,
    /// True when the margin is positive and both interior modes are
    /// evanescent. A zero margin is classified as not holding.
    pub holds: bool,
}

/// Predict whether the elastic delay saturates with width: it does exactly
/// when `(v_i + delta - E)(v0 - E) > v_c^2` and both `alpha^2, beta^2 > 0`.
pub fn hartman_criterion(spec: &TwoChannelSpec) -> CriterionVerdict {
    let margin =
        (spec.v_i + spec.delta - spec.energy) * (spec.v0 - spec.energy) - spec.v_c * spec.v_c;
    let mixing = mixing_of(spec);
    CriterionVerdict {
        margin,
        holds: margin > 0.0 && mixing.alpha_sq > 0.0 && mixing.beta_sq > 0.0,
    }
}

/// Outcome of the operational width-sweep test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaturationVerdict {
    Saturates,
    Grows,
}

#[derive(Debug, Clone, Copy)]
pub struct SaturationReport {
    pub verdict: SaturationVerdict,
    /// Fitted slope of the delay over the width window.
    pub tail_slope: f64,
    /// Slope magnitude below which the delay counts as saturated:
    /// `1e-4 * tau(L_max) / L_max`.
    pub threshold: f64,
    /// The closed-form prediction, for comparison with the verdict.
    pub criterion: CriterionVerdict,
}

/// Number of width samples used by [`saturation_verdict`].
pub const SATURATION_GRID: usize = 33;

/// Measure the elastic delay over `l_window`, fit the tail slope, and call
/// it: `Saturates` if the fitted slope is below the threshold, `Grows`
/// otherwise. Returned together with [`hartman_criterion`]'s prediction.
pub fn saturation_verdict(
    spec_without_length: &TwoChannelSpec,
    l_window: (Length, Length),
) -> Result<SaturationReport, Error> {
    if !(l_window.1 > l_window.0) || !(l_window.0 >= 0.0) {
        return Err(Error::invalid("width window must be increasing"));
    }
    let grid = numerics::linspace(l_window.0, l_window.1, SATURATION_GRID);
    let taus = par_map(&grid, |&l| {
        elastic_phase_time(&spec_without_length.with_length(l))
    });
    let mut samples = Vec::with_capacity(grid.len());
    for (&l, tau) in grid.iter().zip(taus) {
        samples.push((l, tau?));
    }
    let fit = numerics::fit_tail_slope(&samples, l_window)?;
    let (l_max, tau_max) = *samples.last().unwrap();
    let threshold = 1e-4 * tau_max.abs() / l_max;
    let verdict = if fit.slope.abs() < threshold {
        SaturationVerdict::Saturates
    } else {
        SaturationVerdict::Grows
    };
    Ok(SaturationReport {
        verdict,
        tail_slope: fit.slope,
        threshold,
        criterion: hartman_criterion(spec_without_length),
    })
}
