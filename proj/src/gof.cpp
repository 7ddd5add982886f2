#include "zipfit/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace zipfit {
namespace {

// Unbounded model CDFs switch from partial sums to 1 - tail/zeta here.
constexpr std::int64_t kDirectLimit = 1024;

void check_sample(const Sample& sample, const ZipfModel& model) {
  if (!model.support().contains(sample.max())) {
    throw std::domain_error("observation " + std::to_string(sample.max()) +
                            " outside support 1.." + model.support().label());
  }
}

// Walks k = 1..max once; O(N + max).
KsResult ks_by_counting(const Sample& sample, const ZipfModel& model,
                        const LogTable* logs) {
  const std::int64_t top = sample.max();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(top) + 1, 0);
  for (const std::int64_t v : sample.values()) {
    ++counts[static_cast<std::size_t>(v)];
  }
  const double n = static_cast<double>(sample.size());
  const double gamma = model.gamma();
  const double norm = model.norm();

  KsResult result{-1.0, 1};
  double theoretical = 0.0;
  std::int64_t cumulative = 0;
  for (std::int64_t k = 1; k <= top; ++k) {
    const double lk = logs != nullptr && k <= logs->limit()
                          ? (*logs)[k]
                          : std::log(static_cast<double>(k));
    theoretical += std::exp(-gamma * lk) / norm;
    cumulative += counts[static_cast<std::size_t>(k)];
    const double gap =
        std::abs(theoretical - static_cast<double>(cumulative) / n);
    if (gap > result.statistic) {
      result = {gap, k};
    }
  }
  return result;
}

// Unbounded model with large observations: S is a step function, so on each
// run of k where S is constant the gap peaks at one of the run's ends.
KsResult ks_at_breakpoints(const Sample& sample, const ZipfModel& model) {
  std::vector<std::int64_t> sorted(sample.values().begin(),
                                   sample.values().end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const double gamma = model.gamma();
  const double norm = model.norm();

  std::int64_t summed_to = 0;
  double partial = 0.0;
  auto model_cdf = [&](std::int64_t k) {
    if (k > kDirectLimit) {
      return 1.0 - unbounded_tail(gamma, k + 1) / norm;
    }
    while (summed_to < k) {
      ++summed_to;
      partial +=
          std::exp(-gamma * std::log(static_cast<double>(summed_to))) / norm;
    }
    return partial;
  };

  KsResult result{-1.0, 1};
  auto consider = [&](std::int64_t k, double empirical) {
    const double gap = std::abs(model_cdf(k) - empirical);
    if (gap > result.statistic) {
      result = {gap, k};
    }
  };

  std::int64_t previous = 0;
  double empirical = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const std::int64_t value = sorted[i];
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == value) {
      ++j;
    }
    // Run previous+1 .. value-1 carries the old empirical value.
    if (previous + 1 <= value - 1) {
      consider(previous + 1, empirical);
      if (value - 1 > previous + 1) {
        consider(value - 1, empirical);
      }
    }
    empirical = static_cast<double>(j) / n;
    consider(value, empirical);
    previous = value;
    i = j;
  }
  return result;
}

}  // namespace

KsResult ks_statistic(const Sample& sample, const ZipfModel& model,
                      const LogTable& logs) {
  check_sample(sample, model);
  if (model.support().is_unbounded() && sample.max() > kDirectLimit) {
    return ks_at_breakpoints(sample, model);
  }
  return ks_by_counting(sample, model, &logs);
}

KsResult ks_statistic(const Sample& sample, const ZipfModel& model) {
  check_sample(sample, model);
  if (model.support().is_unbounded() && sample.max() > kDirectLimit) {
    return ks_at_breakpoints(sample, model);
  }
  return ks_by_counting(sample, model, nullptr);
}

}  // namespace zipfit
