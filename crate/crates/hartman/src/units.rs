//! Unit convention used throughout the crate.
//!
//! All formulas are written in natural units with `hbar = 1` and `2m = 1`
//! (so the particle mass is 1/2). Consequences worth memorising:
//!
//! * wave number:        `k^2 = E`
//! * decay constant:     `q^2 = v0 - E`
//! * group velocity:     `dE/dk = 2k`  (this is `hbar k / m`)
//! * free traversal:     `t = L / (2k)`
//! * times are in units of `hbar / [energy]`.
//!
//! To translate a result to physical units, multiply energies by your energy
//! scale `E0`, lengths by `hbar / sqrt(2 m E0)`, and times by `hbar / E0`.

/// Energy of the incident particle, `E = k^2`. Always strictly positive.
pub type Energy = f64;
/// Wave number `k = sqrt(E)`.
pub type WaveNumber = f64;
/// A distance, in units of `hbar / sqrt(2 m E0)`. Never negative.
pub type Length = f64;
/// A delay, in units of `hbar / E0`.
pub type Time = f64;
/// Barrier or coupling strength; may be negative (attractive).
pub type PotentialStrength = f64;

/// `k = sqrt(E)`.
pub fn wave_number(energy: Energy) -> WaveNumber {
    energy.sqrt()
}

/// Group velocity `hbar k / m = 2k` in natural units.
pub fn group_velocity(k: WaveNumber) -> f64 {
    2.0 * k
}

/// Time a free particle of wave number `k` needs to cross a distance `length`.
pub fn free_traversal_time(length: Length, k: WaveNumber) -> Time {
    length / group_velocity(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convention_identities() {
        let e = 0.37;
        let k = wave_number(e);
        assert!((k * k - e).abs() < 1e-15);
        assert!((group_velocity(k) - 2.0 * k).abs() < 1e-15);
        assert!((free_traversal_time(3.0, k) - 3.0 / (2.0 * k)).abs() < 1e-15);
    }

    #[test]
    fn asymptotic_time_forms_agree() {
        // 1 / sqrt(E (v0 - E)) and 2 (m / (hbar k)) (1 / q) are the same
        // number once hbar = 1, m = 1/2.
        let (e, v0) = (0.2, 1.0);
        let k = wave_number(e);
        let q = (v0 - e).sqrt();
        let direct = 1.0 / (e * (v0 - e)).sqrt();
        let via_velocity = 2.0 * (0.5 / k) / q;
        assert!((direct - via_velocity).abs() < 1e-15);
    }
}
