#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace polsim {

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { parse, validation };
  ConfigError(Kind kind, std::string key, const std::string& what)
      : std::runtime_error(what), kind_(kind), key_(std::move(key)) {}
  Kind kind() const { return kind_; }
  const std::string& key() const { return key_; }

 private:
  Kind kind_;
  std::string key_;
};

enum class FormFactorModel { constant, infinite_well };
enum class HopfieldConvention {
  amplitude,  // "0.5" means |beta| = 0.5, i.e. |beta|^2 = 0.25
  squared     // "0.5" means |beta|^2 = 0.5
};

/// Validated device/material parameters in internal units (meV, ps, nm).
/// Immutable after loading; safe to share across worker threads.
struct DeviceConfig {
  double electron_density = 0.0;  // n_s [nm^-2]
  int total_electrons = 0;        // N, simulation-scale Fermi-sea size
  double omega12 = 0.0;           // hbar*omega_12 [meV]
  double rabi_splitting = 0.0;    // 2*hbar*chi*sqrt(N) at q_res [meV]
  double omega_LO = 0.0;          // hbar*omega_LO [meV]
  double phonon_Q = 0.0;          // omega_LO / Gamma_LO
  double well_width = 0.0;        // L_QW [nm]
  FormFactorModel form_factor_model = FormFactorModel::constant;
  double form_factor_constant = 0.0;  // F_0 for the constant model
  double epsilon_r = 0.0;
  double cavity_n_eff = 0.0;
  double cavity_q_z0 = 0.0;                // [nm^-1]
  double cavity_resonance_angle_deg = 0.0;  // only seeds the q_z0 default
  double gamma_loss = 0.0;       // signal loss rate [ps^-1]
  double gamma_loss_pump = 0.0;  // pump loss rate [ps^-1]
  double absorption = 0.0;       // A, polariton absorption at pump frequency
  double effective_mass = 0.0;   // m*/m_e
  int spin_degeneracy = 0;       // g_s
  HopfieldConvention hopfield_convention = HopfieldConvention::amplitude;

  /// Keys that were filled from the GaAs preset rather than the source text.
  std::vector<std::string> defaulted_keys;

  // Derived quantities.
  double gamma_LO() const { return omega_LO / phonon_Q; }  // [meV]
  double rabi_coupling() const { return 0.5 * rabi_splitting; }
  /// Simulation surface S = N / n_s [nm^2].
  double surface() const { return total_electrons / electron_density; }
  /// |beta|^2 target encoded by a "0.5" Hopfield coefficient.
  double hopfield_target_beta_sq() const {
    return hopfield_convention == HopfieldConvention::amplitude ? 0.25 : 0.5;
  }

  /// Physical-field equality (provenance excluded).
  bool same_values(const DeviceConfig& other) const;
};

/// Parse `key = value` text (one pair per line, '#' comments). Unknown keys
/// are rejected; missing keys fall back to the GaAs preset. Densities are
/// read in cm^-2, energies in meV, rates in ps^-1.
DeviceConfig load_config(const std::string& source);
DeviceConfig load_config_file(const std::filesystem::path& path);

/// The full GaAs preset (equivalent to load_config("")).
DeviceConfig gaas_preset();

/// Canonical text form; reparses to an identical config.
std::string serialize(const DeviceConfig& config);

/// FNV-1a hash of the canonical serialization, for provenance headers.
std::uint64_t config_hash(const DeviceConfig& config);

/// Infinite-barrier well width whose 1->2 level spacing equals omega12:
/// solves 3*hbar^2*pi^2 / (2 m* L^2) = omega12 for L [nm].
double derive_well_width(double omega12_mev, double effective_mass);

/// k_F = sqrt(4 pi n_s / g_s) [nm^-1].
double fermi_wavevector(double density_nm2, int spin_degeneracy);

}  // namespace polsim
