//! Shared numerical machinery: continuous phase unwrapping over parameter
//! grids, adaptive central differences with Richardson extrapolation, linear
//! tail fits, and bracketed maximum search.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Error;
use crate::exec::par_map;

/// Refinement trigger for phase walking. Any adjacent step larger than this
/// gets a midpoint inserted, which guarantees the post-refinement trace
/// never jumps by pi or more between neighbours.
const JUMP_TRIGGER: f64 = PI / 2.0;
/// Midpoint-insertion depth bound near genuine discontinuities.
const MAX_REFINE_LEVELS: u32 = 20;

/// A continuously unwrapped phase sampled on an ordered grid.
#[derive(Debug, Clone)]
pub struct UnwrappedPhaseTrace {
    pub grid: Vec<f64>,
    pub phase: Vec<f64>,
    /// Number of midpoints that had to be inserted while unwrapping.
    pub jumps_resolved: usize,
}

fn principal_delta(from: Complex64, to: Complex64) -> Option<f64> {
    if from.norm() == 0.0 || to.norm() == 0.0 {
        return None;
    }
    Some((to * from.conj()).arg())
}

/// Accumulated continuous phase change of `sampler` from `x0` to `x1`,
/// inserting midpoints until every step is below [`JUMP_TRIGGER`].
fn walk_phase<F>(
    sampler: &F,
    x0: f64,
    z0: Complex64,
    x1: f64,
    z1: Complex64,
    level: u32,
    inserted: &mut usize,
) -> Result<f64, Error>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let delta = principal_delta(z0, z1).ok_or(Error::UnresolvableJump { at: x1 })?;
    if delta.abs() <= JUMP_TRIGGER {
        return Ok(delta);
    }
    if level >= MAX_REFINE_LEVELS {
        return Err(Error::UnresolvableJump { at: x1 });
    }
    let xm = 0.5 * (x0 + x1);
    let zm = sampler(xm);
    *inserted += 1;
    let left = walk_phase(sampler, x0, z0, xm, zm, level + 1, inserted)?;
    let right = walk_phase(sampler, xm, zm, x1, z1, level + 1, inserted)?;
    Ok(left + right)
}

/// Unwrap the phase of `sampler` along `grid` (strictly increasing).
///
/// The first grid point is anchored at its principal value; every later
/// point continues the phase of its predecessor, with automatic midpoint
/// insertion wherever the step exceeds [`JUMP_TRIGGER`]. Fails with
/// [`Error::UnresolvableJump`] if refinement bottoms out, which signals a
/// genuine discontinuity such as a transmission zero.
pub fn unwrap_phase<F>(sampler: &F, grid: &[f64]) -> Result<UnwrappedPhaseTrace, Error>
where
    F: Fn(f64) -> Complex64 + Sync + ?Sized,
{
    if grid.len() < 2 {
        return Err(Error::invalid("grid needs at least two samples"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("grid must be strictly increasing"));
    }
    let samples = par_map(grid, |&x| sampler(x));
    if samples[0].norm() == 0.0 {
        return Err(Error::UnresolvableJump { at: grid[0] });
    }
    let mut phase = Vec::with_capacity(grid.len());
    phase.push(samples[0].arg());
    let mut inserted = 0usize;
    for i in 0..grid.len() - 1 {
        let delta = walk_phase(
            sampler,
            grid[i],
            samples[i],
            grid[i + 1],
            samples[i + 1],
            0,
            &mut inserted,
        )?;
        let prev = *phase.last().unwrap();
        phase.push(prev + delta);
    }
    Ok(UnwrappedPhaseTrace {
        grid: grid.to_vec(),
        phase,
        jumps_resolved: inserted,
    })
}

/// Result of the adaptive differentiator.
#[derive(Debug, Clone, Copy)]
pub struct DerivativeEstimate {
    pub value: f64,
    /// Residual of the last Richardson extrapolation step; on smooth
    /// functions the true error is well below this.
    pub error_estimate: f64,
    pub step_used: f64,
}

/// Default step for differentiation at `x0`: balances truncation against
/// round-off for phases of order unity in double precision.
pub fn default_step(x0: f64) -> f64 {
    1e-4 * x0.abs().max(1.0)
}

const RELATIVE_RESIDUAL_TARGET: f64 = 1e-6;

/// Core differentiator over a fallible function. Central differences with
/// two-level Richardson extrapolation; the step is halved until the
/// extrapolation residual stops decreasing.
pub fn derivative_of<F>(f: &F, x0: f64, initial_step: f64) -> Result<DerivativeEstimate, Error>
where
    F: Fn(f64) -> Result<f64, Error> + ?Sized,
{
    if !(initial_step > 0.0) {
        return Err(Error::invalid("initial_step must be positive"));
    }
    let central = |h: f64| -> Result<f64, Error> { Ok((f(x0 + h)? - f(x0 - h)?) / (2.0 * h)) };

    // Extrapolation tableau, two Richardson levels deep, one row per step
    // halving. The residual of a row is the larger of its difference to the
    // previous column and to the previous row; halving stops once that
    // residual turns around (round-off taking over).
    const MAX_ROWS: usize = 15;
    let mut best_value = f64::NAN;
    let mut best_residual = f64::INFINITY;
    let mut best_step = initial_step;
    let mut prev: Vec<f64> = Vec::new();
    let mut h = initial_step;
    for i in 0..MAX_ROWS {
        let mut row = vec![central(h)?];
        for j in 1..=i.min(2) {
            let weight = 4.0_f64.powi(j as i32);
            let extrapolated = (weight * row[j - 1] - prev[j - 1]) / (weight - 1.0);
            row.push(extrapolated);
        }
        if i >= 1 {
            let j = row.len() - 1;
            let col_err = (row[j] - row[j - 1]).abs();
            let row_err = (row[j] - prev[j.min(prev.len() - 1)]).abs();
            let residual = col_err.max(row_err);
            if residual < best_residual {
                best_residual = residual;
                best_value = row[j];
                best_step = h;
            } else if i >= 3 && residual > 4.0 * best_residual {
                break;
            }
        }
        prev = row;
        h *= 0.5;
    }
    let scale = best_value.abs().max(1.0);
    if !best_residual.is_finite() || best_residual > RELATIVE_RESIDUAL_TARGET * scale {
        return Err(Error::NoisyFunction {
            residual: best_residual / scale,
        });
    }
    Ok(DerivativeEstimate {
        value: best_value,
        error_estimate: best_residual,
        step_used: best_step,
    })
}

/// Adaptive derivative of a plain real function at `x0`.
pub fn derivative<F>(f: F, x0: f64, initial_step: f64) -> Result<DerivativeEstimate, Error>
where
    F: Fn(f64) -> f64,
{
    derivative_of(&|x| Ok(f(x)), x0, initial_step)
}

/// Derivative of the continuously unwrapped phase of a complex-valued
/// sampler at `x0`.
///
/// Each stencil point's phase is taken relative to the sampler's value at
/// `x0` and walked there with midpoint insertion, so branch crossings of the
/// principal argument cannot corrupt the difference quotient.
pub fn phase_derivative<F>(amp: &F, x0: f64, initial_step: f64) -> Result<DerivativeEstimate, Error>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let anchor = amp(x0);
    if anchor.norm() == 0.0 {
        return Err(Error::UnresolvableJump { at: x0 });
    }
    let phase_at = |x: f64| -> Result<f64, Error> {
        let mut inserted = 0usize;
        walk_phase(amp, x0, anchor, x, amp(x), 0, &mut inserted)
    };
    derivative_of(
        &|x| {
            if x == x0 {
                Ok(0.0)
            } else {
                phase_at(x)
            }
        },
        x0,
        initial_step,
    )
}

/// Straight-line fit of windowed `(x, y)` samples.
#[derive(Debug, Clone, Copy)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square deviation of the windowed samples from the line.
    pub residual: f64,
    pub samples_used: usize,
}

/// Ordinary least squares over the samples whose abscissa lies inside
/// `window` (inclusive). Needs at least 8 points in the window.
pub fn fit_tail_slope(samples: &[(f64, f64)], window: (f64, f64)) -> Result<LineFit, Error> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .copied()
        .filter(|&(x, _)| x >= window.0 && x <= window.1)
        .collect();
    if pts.len() < 8 {
        return Err(Error::InsufficientSamples {
            needed: 8,
            got: pts.len(),
        });
    }
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum::<f64>();
    let sxy = pts
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum::<f64>();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss = pts
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum::<f64>();
    Ok(LineFit {
        slope,
        intercept,
        residual: (ss / n).sqrt(),
        samples_used: pts.len(),
    })
}

/// Coefficient of determination of the same windowed linear fit; used by the
/// verification recipes to judge "linear in lambda" claims.
pub fn fit_r_squared(samples: &[(f64, f64)], window: (f64, f64)) -> Result<f64, Error> {
    let fit = fit_tail_slope(samples, window)?;
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .copied()
        .filter(|&(x, _)| x >= window.0 && x <= window.1)
        .collect();
    let n = pts.len() as f64;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let ss_tot = pts.iter().map(|p| (p.1 - mean_y).powi(2)).sum::<f64>();
    let ss_res = n * fit.residual * fit.residual;
    Ok(1.0 - ss_res / ss_tot)
}

const GOLDEN_TOL: f64 = 1e-6;
const COARSE_POINTS: usize = 64;

/// Locate the maximum of a unimodal `f` on `bracket`.
///
/// A coarse scan establishes unimodality first: more than one interior local
/// maximum (beyond a relative prominence of 1e-12) is rejected as
/// [`Error::NotUnimodal`]. If the scan's maximum sits on a bracket edge the
/// edge abscissa is returned as-is (monotone function). Otherwise
/// golden-section search refines the interior maximum to 1e-6.
pub fn find_maximum<F>(f: &F, bracket: (f64, f64)) -> Result<f64, Error>
where
    F: Fn(f64) -> Result<f64, Error> + ?Sized,
{
    let (a, b) = bracket;
    if !(b > a) {
        return Err(Error::invalid("bracket must have positive width"));
    }
    let xs = linspace(a, b, COARSE_POINTS);
    let mut ys = Vec::with_capacity(xs.len());
    for &x in &xs {
        ys.push(f(x)?);
    }
    let y_scale = ys.iter().fold(0.0_f64, |m, &y| m.max(y.abs())).max(1e-300);
    let tol = 1e-12 * y_scale;
    let mut interior_maxima = Vec::new();
    for i in 1..xs.len() - 1 {
        if ys[i] > ys[i - 1] + tol && ys[i] > ys[i + 1] + tol {
            interior_maxima.push(i);
        }
    }
    if interior_maxima.len() > 1 {
        return Err(Error::NotUnimodal);
    }
    let best = (0..xs.len())
        .max_by(|&i, &j| ys[i].total_cmp(&ys[j]))
        .unwrap();
    if interior_maxima.is_empty() {
        if best == 0 || best == xs.len() - 1 {
            return Ok(xs[best]);
        }
        // Flat-topped hump below prominence: still refine around the best.
    }
    let (mut lo, mut hi) = (xs[best - 1], xs[best + 1]);
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > GOLDEN_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `count` evenly spaced values covering `[start, stop]` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2, "linspace needs at least two points");
    let step = (stop - start) / (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i == count - 1 {
                stop
            } else {
                start + step * i as f64
            }
        })
        .collect()
}
