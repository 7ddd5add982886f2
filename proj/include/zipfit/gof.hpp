#pragma once

#include <cstdint>
#include <span>

#include "zipfit/sample.hpp"
#include "zipfit/zipf.hpp"

namespace zipfit {

struct KsResult {
  double statistic = 0.0;  // sup_k |F*(k) - S(k)|
  std::int64_t argmax_k = 1;
};

// Kolmogorov-Smirnov distance between the sample's empirical CDF and the
// model CDF, taken over integer points 1..max(sample). Beyond the largest
// observation S = 1 and the gap 1 - F* only shrinks. Ties resolve to the
// smallest k. Throws std::domain_error for observations outside the support.
KsResult ks_statistic(const Sample& sample, const ZipfModel& model);

// Same, reusing a log table that covers the observations (finite supports).
KsResult ks_statistic(const Sample& sample, const ZipfModel& model,
                      const LogTable& logs);

struct Verdict {
  double level = 0.0;  // quantile level, e.g. 0.95
  double cutoff = 0.0;
  bool rejected = false;
};

// Rejects only when the statistic strictly exceeds the cutoff.
inline Verdict judge(double statistic, double cutoff, double level) {
  return {level, cutoff, statistic > cutoff};
}

}  // namespace zipfit
