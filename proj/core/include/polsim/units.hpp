#pragma once

namespace polsim::units {

// Internal coherent unit system: energies in meV, times in ps, lengths in
// nm, areal densities in nm^-2. All rate and threshold formulas then stay
// within a few orders of magnitude of unity. Boundary conversions (cm^-2,
// W/cm^2) happen only in I/O code.

/// hbar [meV ps]
inline constexpr double hbar = 0.6582119569;

/// hbar * c [meV nm]
inline constexpr double hbar_c = 197326.9804;

/// Gaussian-convention squared electron charge e^2 = alpha * hbar * c
/// [meV nm]; equals e^2/(4 pi eps0) in SI.
inline constexpr double e_squared = 1439.9645478;

/// hbar^2 / (2 m_e) [meV nm^2] for the free electron mass.
inline constexpr double hbar_sq_over_2me = 38.09982089;

// --- boundary conversions --------------------------------------------------

// 1 cm^2 = 1e14 nm^2 (exactly representable, so divide/multiply pairs
// round-trip stably).
inline constexpr double nm2_per_cm2 = 1.0e14;

/// 1 W/cm^2 expressed in meV ps^-1 nm^-2.
inline constexpr double w_per_cm2_to_internal = 6.241509074e-5;

inline constexpr double density_from_cm2(double v) { return v / nm2_per_cm2; }
inline constexpr double density_to_cm2(double v) { return v * nm2_per_cm2; }
inline constexpr double intensity_from_w_cm2(double v) {
  return v * w_per_cm2_to_internal;
}
inline constexpr double intensity_to_w_cm2(double v) {
  return v / w_per_cm2_to_internal;
}

}  // namespace polsim::units
