#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "polsim/config.hpp"
#include "polsim/correlator.hpp"
#include "polsim/dynamics.hpp"
#include "polsim/io.hpp"
#include "polsim/numeric.hpp"
#include "polsim/oracle.hpp"
#include "polsim/polariton.hpp"
#include "polsim/rates.hpp"
#include "polsim/units.hpp"
#include "polsim/worker_pool.hpp"

namespace polsim::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  unsigned threads = default_worker_threads();
  std::vector<std::string> overrides;  // key=value pairs
};

void add_common(CLI::App* cmd, CommonOpts& opts,
                const char* default_format = "csv") {
  opts.format = default_format;
  cmd->add_option("--config", opts.config_path,
                  "Config file (key = value per line); omitted keys fall "
                  "back to the GaAs preset");
  cmd->add_option("--out", opts.out_path,
                  "Output path (stdout when omitted)");
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", opts.threads, "Worker pool size");
  cmd->add_option("--set", opts.overrides,
                  "Config override key=value (repeatable)")
      ->expected(-1);
}

DeviceConfig load(const CommonOpts& opts) {
  std::string text;
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in)
      throw ConfigError(ConfigError::Kind::parse, "",
                        "cannot open config file " + opts.config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  for (const std::string& kv : opts.overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError(ConfigError::Kind::parse, kv,
                        "--set expects key=value, got \"" + kv + "\"");
    text += "\n" + kv.substr(0, eq) + " = " + kv.substr(eq + 1) + "\n";
  }
  return load_config(text);
}

void stamp(ResultTable& table, const DeviceConfig& config,
           const std::string& subcommand) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(config_hash(config)));
  table.add_provenance("tool", std::string("polsim ") + kVersion);
  table.add_provenance("subcommand", subcommand);
  table.add_provenance("config_hash", hash);
  std::string defaulted;
  for (const auto& k : config.defaulted_keys)
    defaulted += defaulted.empty() ? k : "," + k;
  table.add_provenance("defaulted_keys",
                       defaulted.empty() ? "(none)" : defaulted);
}

int emit(const ResultTable& table, const CommonOpts& opts) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!opts.out_path.empty()) {
    file.open(opts.out_path, std::ios::binary);
    if (!file) {
      std::cerr << "polsim: cannot write " << opts.out_path << "\n";
      return kExitUsage;
    }
    out = &file;
  }
  if (opts.format == "json")
    table.write_json(*out);
  else
    table.write_csv(*out);
  return kExitOk;
}

std::string fmt(double v) { return format_double(v); }

// --- dispersion ------------------------------------------------------------

int run_dispersion(const CommonOpts& opts, double qmax_over_qres,
                   int points) {
  DeviceConfig config = load(opts);
  double q_res = resonant_wavevector(config);
  ResultTable table;
  stamp(table, config, "dispersion");
  table.add_provenance("q_res_nm^-1", fmt(q_res));
  table.columns = {"q_over_qres", "omega_LP_mev", "omega_UP_mev",
                   "alpha_LP_sq", "beta_LP_sq", "alpha_UP_sq", "beta_UP_sq"};
  std::function<std::vector<std::string>(std::size_t)> point =
      [&](std::size_t i) {
        double x = qmax_over_qres * static_cast<double>(i) / (points - 1);
        BranchPair p = diagonalize(x * q_res, config);
        return std::vector<std::string>{
            fmt(x),
            fmt(p.lp.energy),
            fmt(p.up.energy),
            fmt(p.lp.alpha_sq()),
            fmt(p.lp.beta_sq()),
            fmt(p.up.alpha_sq()),
            fmt(p.up.beta_sq())};
      };
  table.rows = parallel_map<std::vector<std::string>>(
      static_cast<std::size_t>(points), opts.threads, point);
  return emit(table, opts);
}

// --- correlator ------------------------------------------------------------

NumericMode pick_mode(const std::string& mode, long N, long nm) {
  if (mode == "rational") return NumericMode::exact_rational;
  if (mode == "float") return NumericMode::signed_log_float;
  // auto: exact arithmetic while N*(n+m) stays desk-sized
  return N * nm <= 20000 ? NumericMode::exact_rational
                         : NumericMode::signed_log_float;
}

void push_correlator_row(ResultTable& table, CorrelatorEngine& engine,
                         long n, long m, long s, long r) {
  CorrelatorValue v = engine.K(n, m, s, r);
  table.add_row({std::to_string(n), std::to_string(m), std::to_string(s),
                 std::to_string(r), std::to_string(engine.N()),
                 v.to_string(),
                 v.mode == NumericMode::exact_rational ? "rational"
                                                       : "float"});
}

int run_correlator(const CommonOpts& opts, long N, const std::string& mode,
                   std::vector<long>& key, int table_max) {
  DeviceConfig config = load(opts);
  if (N <= 0) N = config.total_electrons;
  ResultTable table;
  stamp(table, config, "correlator");
  table.columns = {"n", "m", "s", "r", "N", "value", "mode"};
  if (!key.empty()) {
    if (key.size() != 4)
      throw CLI::ValidationError("--key", "expects n,m,s,r");
    CorrelatorEngine engine(
        N, pick_mode(mode, N, key[0] + key[1]));
    push_correlator_row(table, engine, key[0], key[1], key[2], key[3]);
  } else {
    CorrelatorEngine engine(N, pick_mode(mode, N, table_max));
    for (long n = 0; n <= table_max; ++n)
      for (long m = 0; n + m <= table_max; ++m)
        for (long s = 0; s <= n + m - 1; ++s)
          push_correlator_row(table, engine, n, m, s, n + m - 1 - s);
  }
  return emit(table, opts);
}

// --- oracle-check ----------------------------------------------------------

int run_oracle_check(const CommonOpts& opts, int max_nm,
                     std::vector<long>& Ns) {
  DeviceConfig config = load(opts);
  if (Ns.empty()) Ns = {2, 5, 10, 100};
  ResultTable table;
  stamp(table, config, "oracle-check");
  table.columns = {"n", "m", "s", "r", "N", "recurrence", "oracle", "match"};
  bool all_match = true;
  for (int n = 0; n <= max_nm; ++n)
    for (int m = 0; n + m <= max_nm; ++m)
      for (int s = 0; s <= n + m - 1; ++s) {
        int r = n + m - 1 - s;
        RationalPoly poly = oracle::k_oracle_poly(n, m, s, r);
        for (long N : Ns) {
          CorrelatorEngine engine(N, NumericMode::exact_rational);
          BigRational mine = engine.K(n, m, s, r).exact;
          BigRational truth = poly.evaluate_at_inverse(BigInt(N));
          bool match = mine == truth;
          all_match = all_match && match;
          table.add_row({std::to_string(n), std::to_string(m),
                         std::to_string(s), std::to_string(r),
                         std::to_string(N), mine.to_string(),
                         truth.to_string(), match ? "ok" : "MISMATCH"});
        }
      }
  table.add_provenance("all_match", all_match ? "true" : "false");
  int rc = emit(table, opts);
  if (rc != kExitOk) return rc;
  return all_match ? kExitOk : kExitNumeric;
}

// --- bosonicity-sweep ------------------------------------------------------

int run_bosonicity_sweep(const CommonOpts& opts, const std::string& modes,
                         int n_signal, int points, double max_ratio) {
  DeviceConfig config = load(opts);
  RateModel model(config);
  double pump_w = 0.0, signal_w = 0.0;
  if (modes == "geometry") {
    ScatteringGeometry g = default_geometry(config);
    pump_w = g.pump.beta_sq();
    signal_w = g.signal.beta_sq();
  } else if (modes == "matter") {
    pump_w = signal_w = 1.0;
  } else if (modes == "photon") {
    pump_w = signal_w = 0.0;
  } else {  // mixed: equal weights at the configured Hopfield target
    pump_w = signal_w = config.hopfield_target_beta_sq();
  }

  const long N = config.total_electrons;
  std::vector<int> grid;
  for (int i = 0; i < points; ++i) {
    int m = static_cast<int>(
        std::lround(1.0 + (max_ratio * N - 1.0) * i / (points - 1)));
    m = std::max(1, m);
    if (grid.empty() || grid.back() != m) grid.push_back(m);
  }

  ResultTable table;
  stamp(table, config, "bosonicity-sweep");
  table.add_provenance("modes", modes);
  table.add_provenance("pump_beta_sq", fmt(pump_w));
  table.add_provenance("signal_beta_sq", fmt(signal_w));
  table.columns = {"m_over_N", "n", "B", "est_error"};
  std::function<std::vector<std::string>(std::size_t)> point =
      [&](std::size_t i) {
        BosonicityResult b =
            model.bosonicity_weights(grid[i], n_signal, pump_w, signal_w);
        return std::vector<std::string>{
            fmt(static_cast<double>(grid[i]) / N), std::to_string(n_signal),
            fmt(b.B), fmt(b.est_error)};
      };
  table.rows = parallel_map<std::vector<std::string>>(grid.size(),
                                                      opts.threads, point);

  // Linear-regime fit metadata over the (m+n)/N <= 0.1 window.
  std::vector<int> fit_grid;
  for (int m : grid)
    if (m + n_signal <= 0.1 * N) fit_grid.push_back(m);
  if (fit_grid.size() >= 3 && n_signal == 0) {
    ZetaFit fit = model.zeta_fit(pump_w, signal_w, fit_grid, 1.0);
    table.add_provenance("zeta", fmt(fit.zeta));
    table.add_provenance("zeta_max_residual", fmt(fit.max_residual));
  }
  return emit(table, opts);
}

// --- rate-sweep ------------------------------------------------------------

struct SweepSpec {
  std::string variable = "m_density";
  double min = 1e9;
  double max = 2.5e11;
  int points = 50;
  std::string scale = "linear";
};

double sweep_value(const SweepSpec& spec, int i) {
  double t = static_cast<double>(i) / (spec.points - 1);
  if (spec.scale == "log")
    return spec.min * std::pow(spec.max / spec.min, t);
  return spec.min + (spec.max - spec.min) * t;
}

int run_rate_sweep(const CommonOpts& opts, const SweepSpec& spec,
                   double density_cm2, double n_signal,
                   bool detuning_factor) {
  if (!(spec.min < spec.max) || spec.points < 2)
    throw CLI::ValidationError("--min/--max/--points",
                               "need min < max and points >= 2");
  if (spec.scale == "log" && spec.min <= 0.0)
    throw CLI::ValidationError("--scale", "log scale needs min > 0");
  DeviceConfig base = load(opts);

  ResultTable table;
  stamp(table, base, "rate-sweep");
  table.add_provenance("variable", spec.variable);
  table.columns = {spec.variable,  "gamma_sc_ps",     "stimulation",
                   "bosonicity",   "signal_beta_sq",  "pump_beta_sq",
                   "m_density_cm2", "phonon_quality", "prefactor_nm2_ps",
                   "detuning_factor", "sigma",        "form_factor"};

  auto row_from = [&](double x, RateModel& model,
                      const ScatteringGeometry& g, double m_occ,
                      double n_occ, bool detune) {
    RateResult r = model.scattering_rate(m_occ, n_occ, g, detune);
    return std::vector<std::string>{fmt(x),
                                    fmt(r.gamma_sc),
                                    fmt(r.stimulation),
                                    fmt(r.bosonicity),
                                    fmt(r.signal_beta_sq),
                                    fmt(r.pump_beta_sq),
                                    fmt(units::density_to_cm2(r.pump_density)),
                                    fmt(r.phonon_quality),
                                    fmt(r.coupling_prefactor),
                                    fmt(r.detuning_factor),
                                    fmt(r.sigma),
                                    fmt(r.form_factor)};
  };

  std::function<std::vector<std::string>(std::size_t)> point;
  if (spec.variable == "m_density") {
    auto model = std::make_shared<RateModel>(base);
    auto geometry = std::make_shared<ScatteringGeometry>(
        default_geometry(base));
    point = [=, &spec](std::size_t i) {
      double density = sweep_value(spec, static_cast<int>(i));
      double m = units::density_from_cm2(density) * base.surface();
      return row_from(density, *model, *geometry, m, n_signal,
                      detuning_factor);
    };
  } else if (spec.variable == "n") {
    auto model = std::make_shared<RateModel>(base);
    auto geometry = std::make_shared<ScatteringGeometry>(
        default_geometry(base));
    double m = units::density_from_cm2(density_cm2) * base.surface();
    point = [=, &spec](std::size_t i) {
      double n = sweep_value(spec, static_cast<int>(i));
      return row_from(n, *model, *geometry, m, n, detuning_factor);
    };
  } else if (spec.variable == "q" || spec.variable == "detuning") {
    auto model = std::make_shared<RateModel>(base);
    ScatteringGeometry g0 = default_geometry(base);
    double m = units::density_from_cm2(density_cm2) * base.surface();
    point = [=, &spec](std::size_t i) {
      double x = sweep_value(spec, static_cast<int>(i));
      ScatteringGeometry g = g0;
      if (spec.variable == "q") {
        g.signal = mode_at(Branch::LP, x * resonant_wavevector(base), base);
      } else {
        // Move the signal off resonance until the energy mismatch is x.
        double target = g0.pump.energy - base.omega_LO - x;
        auto f = [&](double q) {
          return branch_energy(Branch::LP, q, base) - target;
        };
        double q = numeric::brent_root(f, 0.0,
                                       80.0 * resonant_wavevector(base));
        g.signal = mode_at(Branch::LP, q, base);
      }
      g.momentum_transfer = std::fabs(g.signal.q - g.pump.q);
      g.detuning = g.pump.energy - g.signal.energy - base.omega_LO;
      return row_from(x, *model, g, m, n_signal, detuning_factor);
    };
  } else if (spec.variable == "N" || spec.variable == "rabi_splitting") {
    point = [=, &spec](std::size_t i) {
      double x = sweep_value(spec, static_cast<int>(i));
      CommonOpts modified = opts;
      if (spec.variable == "N")
        modified.overrides.push_back(
            "total_electrons=" + std::to_string(std::lround(x)));
      else
        modified.overrides.push_back("rabi_splitting=" + fmt(x));
      DeviceConfig cfg = load(modified);
      RateModel model(cfg);
      ScatteringGeometry g = default_geometry(cfg);
      double m = units::density_from_cm2(density_cm2) * cfg.surface();
      return row_from(x, model, g, m, n_signal, detuning_factor);
    };
  } else {
    throw CLI::ValidationError(
        "--var", "must be one of m_density, n, q, N, detuning, "
                 "rabi_splitting");
  }
  table.rows = parallel_map<std::vector<std::string>>(
      static_cast<std::size_t>(spec.points), opts.threads, point);
  return emit(table, opts);
}

// --- threshold ---------------------------------------------------------...

int run_threshold(const CommonOpts& opts,
                  std::optional<double> intensity_w_cm2) {
  DeviceConfig config = load(opts);
  RateModel model(config);
  ScatteringGeometry g = default_geometry(config);
  ThresholdResult t = threshold(model, g);

  ResultTable table;
  stamp(table, config, "threshold");
  table.columns = {"key", "value", "provenance"};
  for (const LedgerEntry& e : t.ledger)
    table.add_row({e.key, e.value, e.provenance});
  bool above = false;
  if (intensity_w_cm2) {
    above = *intensity_w_cm2 > t.intensity_thr_w_cm2;
    table.add_provenance("compared_intensity_w_cm2", fmt(*intensity_w_cm2));
    table.add_provenance("regime", above ? "above" : "below");
  }
  int rc = emit(table, opts);
  if (rc != kExitOk) return rc;
  return above ? kExitAboveThreshold : kExitOk;
}

// --- dynamics ----------------------------------------------------------...

int run_dynamics(const CommonOpts& opts, double intensity_w_cm2,
                 double t_end, double m0, double n0, bool linearized,
                 int max_samples) {
  DeviceConfig config = load(opts);
  RateModel model(config);
  ScatteringGeometry g = default_geometry(config);
  IntegrateOptions iopt;
  iopt.full_bosonicity = !linearized;
  iopt.max_samples = static_cast<std::size_t>(max_samples);
  Trajectory traj =
      integrate(RateEquationState{m0, n0, 0.0},
                units::intensity_from_w_cm2(intensity_w_cm2), t_end, model,
                g, iopt);

  ResultTable table;
  stamp(table, config, "dynamics");
  table.add_provenance("intensity_w_cm2", fmt(intensity_w_cm2));
  table.add_provenance("rate_model",
                       linearized ? "linearized" : "full_bosonicity");
  table.add_provenance(
      "regime", traj.regime == TrajectoryRegime::above_threshold_growth
                    ? "above_threshold_growth"
                    : "reached_t_end");
  table.columns = {"t_ps", "m", "n"};
  for (const RateEquationState& p : traj.samples)
    table.add_row({fmt(p.t), fmt(p.m), fmt(p.n)});
  int rc = emit(table, opts);
  if (rc != kExitOk) return rc;
  return traj.regime == TrajectoryRegime::above_threshold_growth
             ? kExitAboveThreshold
             : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{
      "polsim: intersubband cavity polariton scattering toolkit.\n"
      "Computes composite-boson correlators, bosonicity factors,\n"
      "phonon-assisted scattering rates and lasing thresholds.\n"
      "Environment: POLSIM_MEMO_BUDGET caps the correlator cache size."};
  app.require_subcommand(1);

  CommonOpts disp_opts;
  double disp_qmax = 2.0;
  int disp_points = 401;
  CLI::App* disp = app.add_subcommand(
      "dispersion", "Polariton branch energies and Hopfield weights vs q "
                    "(CSV columns q/q_res, omega_LP, omega_UP, |alpha|^2, "
                    "|beta|^2 per branch)");
  add_common(disp, disp_opts);
  disp->add_option("--qmax", disp_qmax, "Upper q in units of q_res");
  disp->add_option("--points", disp_points, "Grid size")
      ->check(CLI::Range(2, 1000000));

  CommonOpts corr_opts;
  long corr_N = 0;
  std::string corr_mode = "auto";
  std::vector<long> corr_key;
  int corr_table_max = 6;
  CLI::App* corr = app.add_subcommand(
      "correlator", "Evaluate one K(n,m,s,r) or dump a table for "
                    "n+m <= bound");
  add_common(corr, corr_opts);
  corr->add_option("--N", corr_N, "Electron number (default: config)");
  corr->add_option("--mode", corr_mode, "Numeric mode")
      ->check(CLI::IsMember({"auto", "float", "rational"}));
  corr->add_option("--key", corr_key, "Single key n,m,s,r")->expected(4);
  corr->add_option("--table-max", corr_table_max,
                   "Dump all valid keys with n+m <= bound")
      ->check(CLI::Range(1, 64));

  CommonOpts ocheck_opts;
  int ocheck_max = 6;
  std::vector<long> ocheck_Ns;
  CLI::App* ocheck = app.add_subcommand(
      "oracle-check", "Recurrence vs brute-force symbolic oracle, exact "
                      "rational agreement matrix");
  add_common(ocheck, ocheck_opts);
  ocheck->add_option("--max-nm", ocheck_max, "Largest n+m")
      ->check(CLI::Range(1, 8));
  ocheck->add_option("--N-list", ocheck_Ns, "Electron numbers to test");

  CommonOpts bos_opts;
  std::string bos_modes = "geometry";
  int bos_n = 0;
  int bos_points = 40;
  double bos_max_ratio = 0.25;
  CLI::App* bos = app.add_subcommand(
      "bosonicity-sweep",
      "B_m^n versus m/N for a mode pair (with zeta-fit metadata)");
  add_common(bos, bos_opts);
  bos->add_option("--modes", bos_modes, "Mode pair")
      ->check(CLI::IsMember({"geometry", "matter", "photon", "mixed"}));
  bos->add_option("--n", bos_n, "Signal occupation")->check(CLI::Range(0, 100000));
  bos->add_option("--points", bos_points, "Grid size")
      ->check(CLI::Range(2, 100000));
  bos->add_option("--max-ratio", bos_max_ratio, "Largest m/N");

  CommonOpts rate_opts;
  SweepSpec rate_spec;
  double rate_density = 1.1e11;
  double rate_n = 0.0;
  bool rate_detune = false;
  CLI::App* rate = app.add_subcommand(
      "rate-sweep", "Scattering rate sweep with factor decomposition");
  add_common(rate, rate_opts);
  rate->add_option("--var", rate_spec.variable, "Sweep variable")
      ->check(CLI::IsMember(
          {"m_density", "n", "q", "N", "detuning", "rabi_splitting"}));
  rate->add_option("--min", rate_spec.min, "Sweep start");
  rate->add_option("--max", rate_spec.max, "Sweep end");
  rate->add_option("--points", rate_spec.points, "Sweep size")
      ->check(CLI::Range(2, 100000));
  rate->add_option("--scale", rate_spec.scale, "Grid spacing")
      ->check(CLI::IsMember({"linear", "log"}));
  rate->add_option("--density", rate_density,
                   "Pump density in cm^-2 when not the sweep variable");
  rate->add_option("--n", rate_n, "Signal occupation when not swept");
  rate->add_flag("--detuning-factor", rate_detune,
                 "Apply the Lorentzian detuning factor (off = the exact "
                 "resonance formula)");

  CommonOpts thr_opts;
  double thr_intensity = -1.0;
  CLI::App* thr = app.add_subcommand(
      "threshold",
      "Threshold density and pump intensity with the parameter ledger");
  add_common(thr, thr_opts, "json");
  thr->add_option("--intensity", thr_intensity,
                  "Pump intensity (W/cm^2) to classify; exit 0 below, 1 "
                  "above threshold");

  CommonOpts dyn_opts;
  double dyn_intensity = 0.0;
  double dyn_t_end = 10.0;
  double dyn_m0 = 0.0, dyn_n0 = 0.0;
  bool dyn_linearized = false;
  int dyn_samples = 100000;
  CLI::App* dyn = app.add_subcommand(
      "dynamics", "Integrate the pump/signal rate equations (CSV t, m, n); "
                  "exit 1 above threshold");
  add_common(dyn, dyn_opts);
  dyn->add_option("--intensity", dyn_intensity, "Pump intensity in W/cm^2")
      ->required();
  dyn->add_option("--t-end", dyn_t_end, "Integration horizon in ps");
  dyn->add_option("--m0", dyn_m0, "Initial pump occupation");
  dyn->add_option("--n0", dyn_n0, "Initial signal occupation");
  dyn->add_flag("--linearized", dyn_linearized,
                "Use the n << m linearized rate instead of the full "
                "B(m,n)");
  dyn->add_option("--max-samples", dyn_samples, "Sample cap");

  std::vector<const char*> argv;
  argv.push_back("polsim");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(disp))
      return run_dispersion(disp_opts, disp_qmax, disp_points);
    if (app.got_subcommand(corr))
      return run_correlator(corr_opts, corr_N, corr_mode, corr_key,
                            corr_table_max);
    if (app.got_subcommand(ocheck))
      return run_oracle_check(ocheck_opts, ocheck_max, ocheck_Ns);
    if (app.got_subcommand(bos))
      return run_bosonicity_sweep(bos_opts, bos_modes, bos_n, bos_points,
                                  bos_max_ratio);
    if (app.got_subcommand(rate))
      return run_rate_sweep(rate_opts, rate_spec, rate_density, rate_n,
                            rate_detune);
    if (app.got_subcommand(thr))
      return run_threshold(thr_opts,
                           thr_intensity >= 0.0
                               ? std::optional<double>(thr_intensity)
                               : std::nullopt);
    if (app.got_subcommand(dyn))
      return run_dynamics(dyn_opts, dyn_intensity, dyn_t_end, dyn_m0,
                          dyn_n0, dyn_linearized, dyn_samples);
  } catch (const ConfigError& e) {
    std::cerr << "polsim: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "polsim: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "polsim: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace polsim::cli
