#include "polsim/rates.hpp"

#include <cmath>
#include <mutex>

#include "polsim/internal_sum.hpp"
#include "polsim/numeric.hpp"
#include "polsim/units.hpp"

namespace polsim {

namespace {

double log_binomial(long n, long k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// (weight)^e in log space; 0^0 = 1, 0^e = 0.
bool log_power(double weight, long e, double& out) {
  if (e == 0) {
    out = 0.0;
    return true;
  }
  if (weight == 0.0) return false;
  out = static_cast<double>(e) * std::log(weight);
  return true;
}

struct FloatWeights {
  double a, b, ap, bp;  // alpha^2, beta^2 (signal); alpha'^2, beta'^2 (pump)
};

// Matter-weighted double sum of the unnormalized matrix element:
// sum_{l,h} C(n,l) C(m-1,h) a^l b^(n-l) ap^h bp^(m-1-h) f^{n-l}_{m-h}.
SignedLog matrix_sum_float(int m, int n, const FloatWeights& w,
                           CorrelatorEngine& eng) {
  std::vector<SignedLog> terms;
  terms.reserve(static_cast<std::size_t>(n + 1) * m);
  for (long l = 0; l <= n; ++l) {
    double pa, pb;
    if (!log_power(w.a, l, pa) || !log_power(w.b, n - l, pb)) continue;
    double base = log_binomial(n, l) + pa + pb;
    for (long h = 0; h <= m - 1; ++h) {
      double pap, pbp;
      if (!log_power(w.ap, h, pap) || !log_power(w.bp, m - 1 - h, pbp))
        continue;
      double lw = base + log_binomial(m - 1, h) + pap + pbp;
      SignedLog fv = eng.f(m - h, n - l).slog;
      if (fv.sign == 0) continue;
      terms.push_back(SignedLog::from_log(lw, 1, 2e-15) * fv);
    }
  }
  return detail::sum_signed_log(terms);
}

// Normalization sum at occupations (nn signal, mm pump):
// sum_{l,h} C(nn,l) C(mm,h) a^l b^(nn-l) ap^h bp^(mm-h) K(nn-l,mm-h,nn-l,mm-h-1).
SignedLog norm_sum_float(int nn, int mm, const FloatWeights& w,
                         CorrelatorEngine& eng) {
  std::vector<SignedLog> terms;
  terms.reserve(static_cast<std::size_t>(nn + 1) * (mm + 1));
  for (long l = 0; l <= nn; ++l) {
    double pa, pb;
    if (!log_power(w.a, l, pa) || !log_power(w.b, nn - l, pb)) continue;
    double base = log_binomial(nn, l) + pa + pb;
    for (long h = 0; h <= mm; ++h) {
      double pap, pbp;
      if (!log_power(w.ap, h, pap) || !log_power(w.bp, mm - h, pbp)) continue;
      double lw = base + log_binomial(mm, h) + pap + pbp;
      SignedLog kv = eng.norm_correlator(nn - l, mm - h).slog;
      if (kv.sign == 0) continue;
      terms.push_back(SignedLog::from_log(lw, 1, 2e-15) * kv);
    }
  }
  return detail::sum_signed_log(terms);
}

BigRational pow_rational(const BigRational& base, long e) {
  BigRational r(1);
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

BigRational binomial_rational(long n, long k) {
  return BigRational(BigInt::factorial(static_cast<unsigned>(n)),
                     BigInt::factorial(static_cast<unsigned>(k)) *
                         BigInt::factorial(static_cast<unsigned>(n - k)));
}

}  // namespace

// ---------------------------------------------------------------------------

RateModel::RateModel(const DeviceConfig& config, double occupation_cap)
    : config_(config), cap_(occupation_cap),
      engine_(std::make_shared<CorrelatorEngine>(
          config.total_electrons, NumericMode::signed_log_float)) {}

BosonicityResult RateModel::bosonicity_weights(int m, int n,
                                               double pump_beta_sq,
                                               double signal_beta_sq) {
  if (m < 1 || n < 0)
    throw std::invalid_argument("bosonicity requires m >= 1, n >= 0");
  if (static_cast<double>(m) + n > cap_ * config_.total_electrons)
    throw OccupationCapError(
        "occupation m+n = " + std::to_string(m + n) +
        " exceeds the configured cap of " +
        std::to_string(cap_ * config_.total_electrons) +
        " (raise total_electrons or the cap)");

  BosonicityResult res;
  res.m = m;
  res.n = n;
  res.N = config_.total_electrons;
  res.mode = NumericMode::signed_log_float;
  res.pump_beta_sq = pump_beta_sq;
  res.pump_alpha_sq = 1.0 - pump_beta_sq;
  res.signal_beta_sq = signal_beta_sq;
  res.signal_alpha_sq = 1.0 - signal_beta_sq;

  if (pump_beta_sq == 0.0 || signal_beta_sq == 0.0) {
    // |V|^2 itself vanishes with beta*beta'; the 0/0 in the B definition
    // has the elementary-boson limit.
    res.B = 1.0;
    res.pure_photon_limit = true;
    return res;
  }

  FloatWeights w{res.signal_alpha_sq, res.signal_beta_sq, res.pump_alpha_sq,
                 res.pump_beta_sq};
  SignedLog s = matrix_sum_float(m, n, w, *engine_);
  SignedLog n1 = norm_sum_float(n, m, w, *engine_);
  SignedLog n2 = norm_sum_float(n + 1, m - 1, w, *engine_);
  if (s.sign == 0 || n1.sign <= 0 || n2.sign <= 0) {
    res.B = 0.0;
    res.out_of_range = true;
    return res;
  }
  double logB = 2.0 * s.logmag - n1.logmag - n2.logmag;
  res.B = std::exp(logB);
  res.est_error = 2.0 * s.relerr + n1.relerr + n2.relerr;
  if (!(res.B > 0.0) ||
      res.B > 1.0 + std::fmax(1e-12, 10.0 * res.est_error))
    res.out_of_range = true;
  return res;
}

BosonicityResult RateModel::bosonicity(int m, int n, const PolaritonMode& pump,
                                       const PolaritonMode& signal) {
  return bosonicity_weights(m, n, pump.beta_sq(), signal.beta_sq());
}

double RateModel::matrix_element_sq_normalized(int m, int n,
                                               const PolaritonMode& pump,
                                               const PolaritonMode& signal) {
  BosonicityResult b = bosonicity(m, n, pump, signal);
  if (b.pure_photon_limit) return 0.0;
  return (n + 1.0) * m * signal.beta_sq() * pump.beta_sq() * b.B;
}

BosonicityResult RateModel::bosonicity_cached(int m, int n,
                                              double pump_beta_sq,
                                              double signal_beta_sq) {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(m)) << 32) |
      static_cast<std::uint32_t>(n);
  {
    std::shared_lock lock(b_cache_mutex_);
    if (pump_beta_sq == cached_pump_beta_sq_ &&
        signal_beta_sq == cached_signal_beta_sq_) {
      auto it = b_cache_.find(key);
      if (it != b_cache_.end()) return it->second;
    }
  }
  BosonicityResult r = bosonicity_weights(m, n, pump_beta_sq, signal_beta_sq);
  {
    std::unique_lock lock(b_cache_mutex_);
    if (pump_beta_sq != cached_pump_beta_sq_ ||
        signal_beta_sq != cached_signal_beta_sq_) {
      b_cache_.clear();
      cached_pump_beta_sq_ = pump_beta_sq;
      cached_signal_beta_sq_ = signal_beta_sq;
    }
    b_cache_.emplace(key, r);
  }
  return r;
}

double RateModel::bosonicity_interpolated(double m, double n,
                                          double pump_beta_sq,
                                          double signal_beta_sq) {
  auto at = [&](int mi, int ni) {
    return bosonicity_cached(std::max(mi, 1), std::max(ni, 0), pump_beta_sq,
                             signal_beta_sq)
        .B;
  };
  int m0 = static_cast<int>(std::floor(m));
  int n0 = static_cast<int>(std::floor(n));
  double fm = m - m0, fn = n - n0;
  if (fm == 0.0 && fn == 0.0) return at(m0, n0);
  double b00 = at(m0, n0);
  double b10 = fm > 0.0 ? at(m0 + 1, n0) : b00;
  double b01 = fn > 0.0 ? at(m0, n0 + 1) : b00;
  double b11 = (fm > 0.0 && fn > 0.0) ? at(m0 + 1, n0 + 1)
                                      : (fm > 0.0 ? b10 : b01);
  return (1 - fm) * (1 - fn) * b00 + fm * (1 - fn) * b10 +
         (1 - fm) * fn * b01 + fm * fn * b11;
}

ZetaFit RateModel::zeta_fit(double pump_beta_sq, double signal_beta_sq,
                            const std::vector<int>& m_grid,
                            double residual_threshold) {
  ZetaFit fit;
  fit.N = config_.total_electrons;
  for (int m : m_grid)
    if (m > 0.1 * fit.N + 1e-9)
      throw std::invalid_argument(
          "zeta_fit: grid point m/N = " +
          std::to_string(static_cast<double>(m) / fit.N) +
          " lies outside the linear-regime window m/N <= 0.1");
  double sxy = 0.0, sxx = 0.0;
  for (int m : m_grid) {
    double x = static_cast<double>(m) / fit.N;
    double B = bosonicity_weights(m, 0, pump_beta_sq, signal_beta_sq).B;
    fit.grid_x.push_back(x);
    fit.grid_B.push_back(B);
    sxy += x * (1.0 - B);
    sxx += x * x;
  }
  fit.zeta = sxx > 0.0 ? sxy / sxx : 0.0;
  for (std::size_t i = 0; i < fit.grid_x.size(); ++i) {
    double resid =
        std::fabs((1.0 - fit.grid_B[i]) - fit.zeta * fit.grid_x[i]);
    fit.max_residual = std::fmax(fit.max_residual, resid);
  }
  if (fit.max_residual > residual_threshold)
    throw ZetaFitError("zeta fit residual " +
                       std::to_string(fit.max_residual) +
                       " exceeds threshold " +
                       std::to_string(residual_threshold) +
                       "; the grid leaves the linear regime");
  return fit;
}

RateResult RateModel::scattering_rate(double m, double n,
                                      const ScatteringGeometry& geometry,
                                      bool apply_detuning_factor) {
  if (m < 0.0 || n < 0.0)
    throw std::invalid_argument("scattering_rate: occupations must be >= 0");
  RateResult r;
  r.stimulation = n + 1.0;
  r.pump_beta_sq = geometry.pump.beta_sq();
  r.signal_beta_sq = geometry.signal.beta_sq();
  r.bosonicity_detail = bosonicity_cached(
      std::max(1, static_cast<int>(std::ceil(m))), 0,
      r.pump_beta_sq, r.signal_beta_sq);  // provenance for the decomposition
  r.bosonicity =
      bosonicity_interpolated(std::fmax(m, 1.0), n, r.pump_beta_sq,
                              r.signal_beta_sq);
  r.pump_density = m / config_.surface();
  r.phonon_quality = config_.phonon_Q;
  r.sigma = config_.well_width * geometry.momentum_transfer;
  r.form_factor = form_factor(r.sigma, config_.form_factor_model,
                              config_.form_factor_constant);
  r.coupling_prefactor = 4.0 * units::e_squared * config_.well_width *
                         r.form_factor /
                         (config_.epsilon_r * units::hbar);
  if (apply_detuning_factor) {
    double g = config_.gamma_LO();
    r.detuning_factor =
        g * g / (geometry.detuning * geometry.detuning + g * g);
  }
  r.gamma_sc = r.stimulation * r.bosonicity * r.signal_beta_sq *
               r.pump_beta_sq * r.pump_density * r.phonon_quality *
               r.coupling_prefactor * r.detuning_factor;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

BigRational matrix_sum_exact(int m, int n, const ExactWeights& pump,
                             const ExactWeights& signal,
                             CorrelatorEngine& eng) {
  BigRational sum;
  for (long l = 0; l <= n; ++l) {
    BigRational wa = pow_rational(signal.alpha_sq, l) *
                     pow_rational(signal.beta_sq, n - l) *
                     binomial_rational(n, l);
    if (wa.is_zero()) continue;
    for (long h = 0; h <= m - 1; ++h) {
      BigRational wb = pow_rational(pump.alpha_sq, h) *
                       pow_rational(pump.beta_sq, m - 1 - h) *
                       binomial_rational(m - 1, h);
      if (wb.is_zero()) continue;
      sum += wa * wb * eng.f(m - h, n - l).exact;
    }
  }
  return sum;
}

BigRational norm_sum_exact(int nn, int mm, const ExactWeights& pump,
                           const ExactWeights& signal,
                           CorrelatorEngine& eng) {
  BigRational sum;
  for (long l = 0; l <= nn; ++l) {
    BigRational wa = pow_rational(signal.alpha_sq, l) *
                     pow_rational(signal.beta_sq, nn - l) *
                     binomial_rational(nn, l);
    if (wa.is_zero()) continue;
    for (long h = 0; h <= mm; ++h) {
      BigRational wb = pow_rational(pump.alpha_sq, h) *
                       pow_rational(pump.beta_sq, mm - h) *
                       binomial_rational(mm, h);
      if (wb.is_zero()) continue;
      sum += wa * wb * eng.norm_correlator(nn - l, mm - h).exact;
    }
  }
  return sum;
}

}  // namespace

BigRational bosonicity_exact(int m, int n, const ExactWeights& pump,
                             const ExactWeights& signal,
                             CorrelatorEngine& eng) {
  if (eng.mode() != NumericMode::exact_rational)
    throw std::invalid_argument("bosonicity_exact needs a rational engine");
  if (m < 1 || n < 0)
    throw std::invalid_argument("bosonicity requires m >= 1, n >= 0");
  if (pump.beta_sq.is_zero() || signal.beta_sq.is_zero())
    return BigRational(1);  // elementary-boson limit of the 0/0
  BigRational s = matrix_sum_exact(m, n, pump, signal, eng);
  BigRational n1 = norm_sum_exact(n, m, pump, signal, eng);
  BigRational n2 = norm_sum_exact(n + 1, m - 1, pump, signal, eng);
  return s * s / (n1 * n2);
}

BigRational matrix_element_sq_normalized_exact(int m, int n,
                                               const ExactWeights& pump,
                                               const ExactWeights& signal,
                                               CorrelatorEngine& eng) {
  BigRational b = bosonicity_exact(m, n, pump, signal, eng);
  if (pump.beta_sq.is_zero() || signal.beta_sq.is_zero()) return {};
  return BigRational(static_cast<std::int64_t>(n) + 1) *
         BigRational(static_cast<std::int64_t>(m)) * signal.beta_sq *
         pump.beta_sq * b;
}

}  // namespace polsim
