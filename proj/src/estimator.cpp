#include "zipfit/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace zipfit {
namespace {

struct Residual {
  double value;       // A/B + mean_log
  double derivative;  // C/B - (A/B)^2
};

Residual residual(double gamma, double mean_log, const SupportSpec& support,
                  const LogTable& logs) {
  const PowerSums s = power_sums(gamma, support, logs);
  const double ratio = s.a / s.b;
  return {ratio + mean_log, s.c / s.b - ratio * ratio};
}

double bisect(double mean_log, double low, double high,
              const SupportSpec& support, const LogTable& logs) {
  // The residual is increasing in gamma (its derivative is a variance).
  const double f_low = residual(low, mean_log, support, logs).value;
  const double f_high = residual(high, mean_log, support, logs).value;
  if (f_low > 0.0 || f_high < 0.0) {
    throw NoRootError("likelihood equation has no root in [" +
                      std::to_string(low) + ", " + std::to_string(high) +
                      "] for mean log " + std::to_string(mean_log) +
                      " on support 1.." + support.label());
  }
  for (int i = 0; i < 200 && high - low > 1e-13; ++i) {
    const double mid = 0.5 * (low + high);
    const double f = residual(mid, mean_log, support, logs).value;
    if (f == 0.0) {
      return mid;
    }
    (f > 0.0 ? high : low) = mid;
  }
  return 0.5 * (low + high);
}

}  // namespace

void MleSettings::validate() const {
  if (!(absolute_tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  if (max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be positive");
  }
  if (!(bracket_low < initial_guess && initial_guess < bracket_high)) {
    throw std::invalid_argument(
        "bracket must satisfy low < initial_guess < high");
  }
}

double log_mean(const Sample& sample) {
  double sum = 0.0;
  for (const std::int64_t v : sample.values()) {
    sum += std::log(static_cast<double>(v));
  }
  if (sum <= 0.0) {
    sum += std::numbers::ln2;
  }
  return sum / static_cast<double>(sample.size());
}

double log_mean(const Sample& sample, const LogTable& logs) {
  double sum = 0.0;
  for (const std::int64_t v : sample.values()) {
    sum += v <= logs.limit() ? logs[v] : std::log(static_cast<double>(v));
  }
  if (sum <= 0.0) {
    sum += std::numbers::ln2;
  }
  return sum / static_cast<double>(sample.size());
}

double mle_gamma_from_log_mean(double mean_log, const SupportSpec& support,
                               const MleSettings& settings,
                               const LogTable& logs) {
  settings.validate();
  if (!(mean_log > 0.0) || !std::isfinite(mean_log)) {
    throw NoRootError("mean log must be positive and finite, got " +
                      std::to_string(mean_log));
  }
  double low = settings.bracket_low;
  const double high = settings.bracket_high;
  if (support.is_unbounded()) {
    low = std::max(low, kMinUnboundedGamma);
  }
  if (!(low < high)) {
    throw std::invalid_argument("empty search bracket");
  }
  if (settings.method == RootMethod::kBisection) {
    return bisect(mean_log, low, high, support, logs);
  }

  double next = std::clamp(settings.initial_guess, low, high);
  for (int iteration = 0; iteration < settings.max_iterations; ++iteration) {
    const double x = next;
    const Residual r = residual(x, mean_log, support, logs);
    next = x - r.value / r.derivative;
    if (!std::isfinite(next) || next < low || next > high) {
      break;
    }
    if (std::abs(x - next) <= settings.absolute_tolerance) {
      return next;
    }
  }
  return bisect(mean_log, low, high, support, logs);
}

double mle_gamma(const Sample& sample, const SupportSpec& support,
                 const MleSettings& settings) {
  if (!support.contains(sample.max())) {
    throw std::domain_error("observation " + std::to_string(sample.max()) +
                            " outside support 1.." + support.label());
  }
  const LogTable logs(support.is_finite() ? support.k() : 1);
  return mle_gamma_from_log_mean(log_mean(sample, logs), support, settings,
                                 logs);
}

double log_likelihood(double gamma, double mean_log, std::int64_t n,
                      const SupportSpec& support) {
  check_exponent(gamma, support);
  const double b = power_sums(gamma, support).b;
  return static_cast<double>(n) * (-gamma * mean_log - std::log(b));
}

}  // namespace zipfit
