#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zipfit/random.hpp"
#include "zipfit/sample.hpp"

namespace zipfit {

// Largest finite support accepted (observations are stored as 16-bit values
// in the reference tables).
inline constexpr std::int64_t kMaxFiniteSupport = 32766;

// Smallest exponent accepted for the pure (unbounded) power law.
inline constexpr double kMinUnboundedGamma = 1.05;

// Simulated draws for unbounded support are taken from the law renormalized
// over 1..horizon. 65535 reproduces the published pure power-law cutoffs.
inline constexpr std::int64_t kDefaultSamplingHorizon = 65535;

class SupportSpec {
 public:
  // Throws std::invalid_argument unless 2 <= k <= kMaxFiniteSupport.
  static SupportSpec finite(std::int64_t k);
  static SupportSpec unbounded() { return SupportSpec{}; }

  bool is_finite() const { return k_ != 0; }
  bool is_unbounded() const { return k_ == 0; }

  // Upper end of a finite support. Throws std::logic_error when unbounded.
  std::int64_t k() const;

  bool contains(std::int64_t value) const {
    return value >= 1 && (k_ == 0 || value <= k_);
  }

  // "20", "inf".
  std::string label() const;

  friend bool operator==(const SupportSpec&, const SupportSpec&) = default;

 private:
  SupportSpec() = default;
  explicit SupportSpec(std::int64_t k) : k_(k) {}

  std::int64_t k_ = 0;
};

// Parses "inf" or a decimal integer K.
SupportSpec parse_support(const std::string& text);

// Natural logarithms of 1..limit, entry 0 unused (holds -inf).
class LogTable {
 public:
  explicit LogTable(std::int64_t limit);

  double operator[](std::int64_t k) const {
    return logs_[static_cast<std::size_t>(k)];
  }
  std::int64_t limit() const {
    return static_cast<std::int64_t>(logs_.size()) - 1;
  }
  // Index k holds ln k.
  std::span<const double> values() const { return logs_; }

 private:
  std::vector<double> logs_;
};

// Log table for a finite support; 1 <= limit <= kMaxFiniteSupport.
LogTable build_log_table(std::int64_t limit);

// B = sum k^-g, A = dB/dg = -sum k^-g ln k, C = d2B/dg2 = sum k^-g (ln k)^2
// over the support. Terms are exp(-g ln k).
struct PowerSums {
  double b = 0.0;
  double a = 0.0;
  double c = 0.0;
};

// `logs` must cover 1..K for finite supports. Unbounded supports ignore it.
PowerSums power_sums(double gamma, const SupportSpec& support,
                     const LogTable& logs);
PowerSums power_sums(double gamma, const SupportSpec& support);

// Tail sum_{k >= from} k^-gamma of the unbounded series, gamma > 1.
double unbounded_tail(double gamma, std::int64_t from);

// Sum of k^-gamma over the support. Finite supports accept any real gamma;
// unbounded requires gamma >= kMinUnboundedGamma (std::domain_error otherwise).
double normalization(double gamma, const SupportSpec& support);

// Throws std::domain_error if (gamma, support) cannot define a distribution.
void check_exponent(double gamma, const SupportSpec& support);

// A Zipf law, pure or truncated. Immutable; safe to share between threads.
class ZipfModel {
 public:
  ZipfModel(double gamma, SupportSpec support);

  double gamma() const { return gamma_; }
  const SupportSpec& support() const { return support_; }
  double norm() const { return norm_; }

 private:
  double gamma_;
  SupportSpec support_;
  double norm_;
};

// k^-gamma / norm. std::domain_error when k is outside the support.
double pmf(const ZipfModel& model, std::int64_t k);

// P(X <= k). std::domain_error when k is outside the support.
double cdf(const ZipfModel& model, std::int64_t k);

// Inverse-CDF sampler over a precomputed cumulative table. For finite K the
// table is the paper-style running sum of c * exp(-g ln i); for unbounded
// support it covers 1..horizon, renormalized.
class ZipfSampler {
 public:
  explicit ZipfSampler(const ZipfModel& model,
                       std::int64_t horizon = kDefaultSamplingHorizon);

  // Smallest k with cumulative(k) >= u, clamped to the table end.
  std::int64_t draw(double u) const {
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) {
      return static_cast<std::int64_t>(cumulative_.size());
    }
    return static_cast<std::int64_t>(it - cumulative_.begin()) + 1;
  }

  template <UniformSource Source>
  void fill(std::span<std::int64_t> out, Source& source) const {
    for (auto& value : out) {
      value = draw(source.uniform());
    }
  }

  // Largest value this sampler can emit.
  std::int64_t limit() const {
    return static_cast<std::int64_t>(cumulative_.size());
  }

 private:
  std::vector<double> cumulative_;
};

template <UniformSource Source>
Sample sample(const ZipfSampler& sampler, std::int64_t n, Source& source) {
  std::vector<std::int64_t> values(static_cast<std::size_t>(n));
  sampler.fill(values, source);
  return Sample(std::move(values));
}

template <UniformSource Source>
Sample sample(const ZipfModel& model, std::int64_t n, Source& source) {
  return sample(ZipfSampler(model), n, source);
}

}  // namespace zipfit
