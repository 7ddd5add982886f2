#include "zipfit/zipf.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace zipfit {
namespace {

// Unbounded series: direct terms below this index, Euler-Maclaurin above.
constexpr std::int64_t kTailStart = 32;

// Unbounded CDF: direct partial sums up to here, 1 - tail/zeta beyond.
constexpr std::int64_t kDirectCdfLimit = 1024;

constexpr std::int64_t kMaxSamplingHorizon = std::int64_t{1} << 26;

// Value with first and second derivative with respect to the exponent.
struct Jet {
  double v = 0.0;
  double d = 0.0;
  double dd = 0.0;
};

Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
Jet operator+(Jet a, double s) { return {a.v + s, a.d, a.dd}; }
Jet operator*(Jet a, double s) { return {a.v * s, a.d * s, a.dd * s}; }
Jet operator*(Jet a, Jet b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d,
          a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
}
Jet reciprocal(Jet b) {
  const double inv = 1.0 / b.v;
  return {inv, -b.d * inv * inv,
          -b.dd * inv * inv + 2.0 * b.d * b.d * inv * inv * inv};
}
Jet operator/(Jet a, Jet b) { return a * reciprocal(b); }

// Euler-Maclaurin estimate of sum_{k >= m} k^-g (as a function of g), with
// Bernoulli corrections through B10. Remainder is far below 1e-15 relative
// for m >= 32 and g <= 20.
Jet euler_maclaurin_tail(double gamma, std::int64_t m) {
  const Jet g{gamma, 1.0, 0.0};
  const double mm = static_cast<double>(m);
  const double lm = std::log(mm);
  const double p = std::exp(-gamma * lm);
  const Jet pw{p, -lm * p, lm * lm * p};  // m^-g

  Jet sum = pw * mm / (g + -1.0);
  sum = sum + pw * 0.5;

  constexpr double kCoefficients[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                      -1.0 / 1209600.0, 1.0 / 47900160.0};
  const double inv_m2 = 1.0 / (mm * mm);
  Jet rising = g;
  double m_power = 1.0 / mm;
  for (int j = 0; j < 5; ++j) {
    if (j > 0) {
      rising = rising * (g + (2.0 * j - 1.0)) * (g + 2.0 * j);
      m_power *= inv_m2;
    }
    sum = sum + rising * pw * (kCoefficients[j] * m_power);
  }
  return sum;
}

PowerSums unbounded_power_sums(double gamma) {
  PowerSums s;
  for (std::int64_t k = 1; k < kTailStart; ++k) {
    const double lk = std::log(static_cast<double>(k));
    const double p = std::exp(-gamma * lk);
    s.a += -p * lk;
    s.b += p;
    s.c += p * lk * lk;
  }
  const Jet tail = euler_maclaurin_tail(gamma, kTailStart);
  s.b += tail.v;
  s.a += tail.d;
  s.c += tail.dd;
  return s;
}

void check_in_support(const SupportSpec& support, std::int64_t k) {
  if (!support.contains(k)) {
    throw std::domain_error("value " + std::to_string(k) +
                            " outside support 1.." + support.label());
  }
}

}  // namespace

SupportSpec SupportSpec::finite(std::int64_t k) {
  if (k < 2 || k > kMaxFiniteSupport) {
    throw std::invalid_argument("finite support K must lie in [2, " +
                                std::to_string(kMaxFiniteSupport) + "], got " +
                                std::to_string(k));
  }
  return SupportSpec(k);
}

std::int64_t SupportSpec::k() const {
  if (k_ == 0) {
    throw std::logic_error("unbounded support has no upper end");
  }
  return k_;
}

std::string SupportSpec::label() const {
  return k_ == 0 ? std::string("inf") : std::to_string(k_);
}

SupportSpec parse_support(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") {
    return SupportSpec::unbounded();
  }
  std::int64_t k = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, k);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("support must be an integer or 'inf', got '" +
                                text + "'");
  }
  return SupportSpec::finite(k);
}

LogTable::LogTable(std::int64_t limit) {
  if (limit < 1) {
    throw std::invalid_argument("log table limit must be positive");
  }
  logs_.resize(static_cast<std::size_t>(limit) + 1);
  logs_[0] = -HUGE_VAL;
  for (std::int64_t k = 1; k <= limit; ++k) {
    logs_[static_cast<std::size_t>(k)] = std::log(static_cast<double>(k));
  }
}

LogTable build_log_table(std::int64_t limit) {
  if (limit < 1 || limit > kMaxFiniteSupport) {
    throw std::invalid_argument("log table limit must lie in [1, " +
                                std::to_string(kMaxFiniteSupport) + "]");
  }
  return LogTable(limit);
}

void check_exponent(double gamma, const SupportSpec& support) {
  if (!std::isfinite(gamma)) {
    throw std::domain_error("exponent must be finite");
  }
  if (support.is_unbounded() && gamma < kMinUnboundedGamma) {
    throw std::domain_error(
        "unbounded support requires gamma >= 1.05, got " +
        std::to_string(gamma));
  }
}

PowerSums power_sums(double gamma, const SupportSpec& support,
                     const LogTable& logs) {
  if (support.is_unbounded()) {
    return unbounded_power_sums(gamma);
  }
  const std::int64_t k_max = support.k();
  if (logs.limit() < k_max) {
    throw std::invalid_argument("log table shorter than the support");
  }
  PowerSums s;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const double lk = logs[k];
    const double p = std::exp(-gamma * lk);
    s.a += -p * lk;
    s.b += p;
    s.c += p * lk * lk;
  }
  return s;
}

PowerSums power_sums(double gamma, const SupportSpec& support) {
  if (support.is_unbounded()) {
    return unbounded_power_sums(gamma);
  }
  return power_sums(gamma, support, LogTable(support.k()));
}

double unbounded_tail(double gamma, std::int64_t from) {
  if (from < 1) {
    throw std::invalid_argument("tail start must be positive");
  }
  if (from >= kTailStart) {
    return euler_maclaurin_tail(gamma, from).v;
  }
  double head = 0.0;
  for (std::int64_t k = from; k < kTailStart; ++k) {
    head += std::exp(-gamma * std::log(static_cast<double>(k)));
  }
  return head + euler_maclaurin_tail(gamma, kTailStart).v;
}

double normalization(double gamma, const SupportSpec& support) {
  check_exponent(gamma, support);
  if (support.is_unbounded()) {
    return unbounded_tail(gamma, 1);
  }
  double sum = 0.0;
  for (std::int64_t k = 1; k <= support.k(); ++k) {
    sum += std::exp(-gamma * std::log(static_cast<double>(k)));
  }
  return sum;
}

ZipfModel::ZipfModel(double gamma, SupportSpec support)
    : gamma_(gamma), support_(support), norm_(normalization(gamma, support)) {}

double pmf(const ZipfModel& model, std::int64_t k) {
  check_in_support(model.support(), k);
  return std::exp(-model.gamma() * std::log(static_cast<double>(k))) /
         model.norm();
}

double cdf(const ZipfModel& model, std::int64_t k) {
  check_in_support(model.support(), k);
  if (model.support().is_unbounded() && k > kDirectCdfLimit) {
    return 1.0 - unbounded_tail(model.gamma(), k + 1) / model.norm();
  }
  double sum = 0.0;
  for (std::int64_t j = 1; j <= k; ++j) {
    sum += pmf(model, j);
  }
  return sum;
}

ZipfSampler::ZipfSampler(const ZipfModel& model, std::int64_t horizon) {
  std::int64_t limit = 0;
  if (model.support().is_finite()) {
    limit = model.support().k();
  } else {
    if (horizon < 2 || horizon > kMaxSamplingHorizon) {
      throw std::invalid_argument("sampling horizon must lie in [2, 2^26]");
    }
    limit = horizon;
  }
  const LogTable logs(limit);
  const double gamma = model.gamma();

  double total = 0.0;
  for (std::int64_t i = 1; i <= limit; ++i) {
    total += std::exp(-gamma * logs[i]);
  }
  const double c = 1.0 / total;

  cumulative_.resize(static_cast<std::size_t>(limit));
  double sum_prob = 0.0;
  for (std::int64_t i = 1; i <= limit; ++i) {
    sum_prob += c * std::exp(-gamma * logs[i]);
    cumulative_[static_cast<std::size_t>(i - 1)] = sum_prob;
  }
}

}  // namespace zipfit
