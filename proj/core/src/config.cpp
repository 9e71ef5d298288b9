#include "polsim/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "polsim/units.hpp"

namespace polsim {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size())
      throw ConfigError(ConfigError::Kind::parse, key,
                        "trailing characters after number for key '" + key +
                            "': \"" + value + "\"");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError(ConfigError::Kind::parse, key,
                      "cannot parse number for key '" + key + "': \"" + value +
                          "\"");
  }
}

long parse_integer(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size())
      throw ConfigError(ConfigError::Kind::parse, key,
                        "expected integer for key '" + key + "': \"" + value +
                            "\"");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError(ConfigError::Kind::parse, key,
                      "cannot parse integer for key '" + key + "': \"" +
                          value + "\"");
  }
}

void require_positive(const std::string& key, double v) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ConfigError(ConfigError::Kind::validation, key,
                      "key '" + key + "' must be strictly positive, got " +
                          std::to_string(v));
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

bool DeviceConfig::same_values(const DeviceConfig& o) const {
  return electron_density == o.electron_density &&
         total_electrons == o.total_electrons && omega12 == o.omega12 &&
         rabi_splitting == o.rabi_splitting && omega_LO == o.omega_LO &&
         phonon_Q == o.phonon_Q && well_width == o.well_width &&
         form_factor_model == o.form_factor_model &&
         form_factor_constant == o.form_factor_constant &&
         epsilon_r == o.epsilon_r && cavity_n_eff == o.cavity_n_eff &&
         cavity_q_z0 == o.cavity_q_z0 &&
         cavity_resonance_angle_deg == o.cavity_resonance_angle_deg &&
         gamma_loss == o.gamma_loss && gamma_loss_pump == o.gamma_loss_pump &&
         absorption == o.absorption && effective_mass == o.effective_mass &&
         spin_degeneracy == o.spin_degeneracy &&
         hopfield_convention == o.hopfield_convention;
}

double derive_well_width(double omega12_mev, double effective_mass) {
  if (!(omega12_mev > 0.0))
    throw ConfigError(ConfigError::Kind::validation, "omega12",
                      "well width derivation needs omega12 > 0");
  double hbar_sq_over_2m = units::hbar_sq_over_2me / effective_mass;
  return std::sqrt(3.0 * std::numbers::pi * std::numbers::pi *
                   hbar_sq_over_2m / omega12_mev);
}

double fermi_wavevector(double density_nm2, int spin_degeneracy) {
  if (!(density_nm2 > 0.0))
    throw ConfigError(ConfigError::Kind::validation, "electron_density",
                      "Fermi wave vector needs a positive density");
  return std::sqrt(4.0 * std::numbers::pi * density_nm2 / spin_degeneracy);
}

DeviceConfig load_config(const std::string& source) {
  std::map<std::string, std::string> kv;
  std::istringstream in(source);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(ConfigError::Kind::parse, "",
                        "line " + std::to_string(lineno) +
                            ": expected 'key = value', got \"" + line + "\"");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(ConfigError::Kind::parse, key,
                        "line " + std::to_string(lineno) +
                            ": empty key or value");
    if (kv.count(key))
      throw ConfigError(ConfigError::Kind::parse, key,
                        "duplicate key '" + key + "'");
    kv[key] = value;
  }

  DeviceConfig c;
  auto take = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    if (it == kv.end()) {
      c.defaulted_keys.push_back(key);
      return nullptr;
    }
    return &it->second;
  };
  auto number = [&](const char* key, double preset) {
    const std::string* v = take(key);
    return v ? parse_number(key, *v) : preset;
  };
  auto integer = [&](const char* key, long preset) {
    const std::string* v = take(key);
    return v ? parse_integer(key, *v) : preset;
  };

  // GaAs preset; densities cross the boundary in cm^-2. The default
  // splitting 12*sqrt(3) = 20.78 meV puts the symmetric mode pair (both
  // Hopfield amplitudes 0.5) exactly one LO phonon apart.
  c.electron_density =
      units::density_from_cm2(number("electron_density", 1.0e12));
  c.total_electrons = static_cast<int>(integer("total_electrons", 2000));
  c.omega12 = number("omega12", 150.0);
  c.rabi_splitting = number("rabi_splitting", 12.0 * std::sqrt(3.0));
  c.omega_LO = number("omega_LO", 36.0);
  c.phonon_Q = number("phonon_Q", 100.0);
  c.epsilon_r = number("epsilon_r", 12.9);
  c.effective_mass = number("effective_mass", 0.067);
  c.spin_degeneracy = static_cast<int>(integer("spin_degeneracy", 2));
  c.gamma_loss = number("gamma_loss", 5.0);
  c.gamma_loss_pump = number("gamma_loss_pump", 5.0);
  c.absorption = number("absorption", 0.4);
  c.form_factor_constant = number("form_factor_constant", 0.1);
  c.cavity_n_eff = number("cavity_n_eff", 3.3);
  c.cavity_resonance_angle_deg = number("cavity_resonance_angle_deg", 60.0);

  if (const std::string* v = take("form_factor_model")) {
    if (*v == "constant")
      c.form_factor_model = FormFactorModel::constant;
    else if (*v == "infinite_well")
      c.form_factor_model = FormFactorModel::infinite_well;
    else
      throw ConfigError(ConfigError::Kind::parse, "form_factor_model",
                        "form_factor_model must be 'constant' or "
                        "'infinite_well', got \"" +
                            *v + "\"");
  } else {
    c.form_factor_model = FormFactorModel::constant;
  }

  if (const std::string* v = take("hopfield_convention")) {
    if (*v == "amplitude")
      c.hopfield_convention = HopfieldConvention::amplitude;
    else if (*v == "squared")
      c.hopfield_convention = HopfieldConvention::squared;
    else
      throw ConfigError(ConfigError::Kind::parse, "hopfield_convention",
                        "hopfield_convention must be 'amplitude' or "
                        "'squared', got \"" +
                            *v + "\"");
  } else {
    c.hopfield_convention = HopfieldConvention::amplitude;
  }

  // Derived defaults resolve after the primitives they depend on.
  if (const std::string* v = take("well_width")) {
    c.well_width = parse_number("well_width", *v);
  } else {
    c.well_width = derive_well_width(c.omega12, c.effective_mass);
  }
  if (const std::string* v = take("cavity_q_z0")) {
    c.cavity_q_z0 = parse_number("cavity_q_z0", *v);
  } else {
    double angle =
        c.cavity_resonance_angle_deg * std::numbers::pi / 180.0;
    c.cavity_q_z0 =
        c.omega12 * c.cavity_n_eff * std::cos(angle) / units::hbar_c;
  }

  for (const auto& [key, value] : kv) {
    static const char* known[] = {
        "electron_density",  "total_electrons",
        "omega12",           "rabi_splitting",
        "omega_LO",          "phonon_Q",
        "well_width",        "form_factor_model",
        "form_factor_constant", "epsilon_r",
        "cavity_n_eff",      "cavity_q_z0",
        "cavity_resonance_angle_deg", "gamma_loss",
        "gamma_loss_pump",   "absorption",
        "effective_mass",    "spin_degeneracy",
        "hopfield_convention"};
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok)
      throw ConfigError(ConfigError::Kind::parse, key,
                        "unknown key '" + key + "'");
  }

  // Validation.
  require_positive("electron_density", c.electron_density);
  require_positive("omega12", c.omega12);
  require_positive("rabi_splitting", c.rabi_splitting);
  require_positive("omega_LO", c.omega_LO);
  require_positive("well_width", c.well_width);
  require_positive("epsilon_r", c.epsilon_r);
  require_positive("cavity_n_eff", c.cavity_n_eff);
  require_positive("cavity_q_z0", c.cavity_q_z0);
  require_positive("gamma_loss", c.gamma_loss);
  require_positive("gamma_loss_pump", c.gamma_loss_pump);
  require_positive("effective_mass", c.effective_mass);
  require_positive("form_factor_constant", c.form_factor_constant);
  if (c.total_electrons < 2)
    throw ConfigError(ConfigError::Kind::validation, "total_electrons",
                      "total_electrons must be >= 2 (a Fermi sea), got " +
                          std::to_string(c.total_electrons));
  if (!(c.absorption > 0.0 && c.absorption <= 1.0))
    throw ConfigError(ConfigError::Kind::validation, "absorption",
                      "absorption must lie in (0, 1], got " +
                          std::to_string(c.absorption));
  if (!(c.phonon_Q >= 1.0))
    throw ConfigError(ConfigError::Kind::validation, "phonon_Q",
                      "phonon_Q must be >= 1, got " +
                          std::to_string(c.phonon_Q));
  if (c.spin_degeneracy < 1)
    throw ConfigError(ConfigError::Kind::validation, "spin_degeneracy",
                      "spin_degeneracy must be >= 1");
  if (!(c.cavity_resonance_angle_deg > 0.0 &&
        c.cavity_resonance_angle_deg < 90.0))
    throw ConfigError(ConfigError::Kind::validation,
                      "cavity_resonance_angle_deg",
                      "resonance angle must lie in (0, 90) degrees");
  // The cavity cutoff must sit below the intersubband energy or no
  // resonant wave vector exists.
  double cutoff = units::hbar_c * c.cavity_q_z0 / c.cavity_n_eff;
  if (!(cutoff < c.omega12))
    throw ConfigError(ConfigError::Kind::validation, "cavity_q_z0",
                      "cavity cutoff " + std::to_string(cutoff) +
                          " meV is not below omega12; no resonance exists");
  return c;
}

DeviceConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError(ConfigError::Kind::parse, "",
                      "cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

DeviceConfig gaas_preset() { return load_config(""); }

std::string serialize(const DeviceConfig& c) {
  std::ostringstream out;
  out << "electron_density = "
      << fmt(units::density_to_cm2(c.electron_density)) << "\n";
  out << "total_electrons = " << c.total_electrons << "\n";
  out << "omega12 = " << fmt(c.omega12) << "\n";
  out << "rabi_splitting = " << fmt(c.rabi_splitting) << "\n";
  out << "omega_LO = " << fmt(c.omega_LO) << "\n";
  out << "phonon_Q = " << fmt(c.phonon_Q) << "\n";
  out << "well_width = " << fmt(c.well_width) << "\n";
  out << "form_factor_model = "
      << (c.form_factor_model == FormFactorModel::constant ? "constant"
                                                           : "infinite_well")
      << "\n";
  out << "form_factor_constant = " << fmt(c.form_factor_constant) << "\n";
  out << "epsilon_r = " << fmt(c.epsilon_r) << "\n";
  out << "cavity_n_eff = " << fmt(c.cavity_n_eff) << "\n";
  out << "cavity_q_z0 = " << fmt(c.cavity_q_z0) << "\n";
  out << "cavity_resonance_angle_deg = " << fmt(c.cavity_resonance_angle_deg)
      << "\n";
  out << "gamma_loss = " << fmt(c.gamma_loss) << "\n";
  out << "gamma_loss_pump = " << fmt(c.gamma_loss_pump) << "\n";
  out << "absorption = " << fmt(c.absorption) << "\n";
  out << "effective_mass = " << fmt(c.effective_mass) << "\n";
  out << "spin_degeneracy = " << c.spin_degeneracy << "\n";
  out << "hopfield_convention = "
      << (c.hopfield_convention == HopfieldConvention::amplitude ? "amplitude"
                                                                 : "squared")
      << "\n";
  return out.str();
}

std::uint64_t config_hash(const DeviceConfig& c) {
  std::string s = serialize(c);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace polsim
