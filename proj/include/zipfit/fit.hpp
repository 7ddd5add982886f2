#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zipfit/estimator.hpp"
#include "zipfit/gof.hpp"
#include "zipfit/montecarlo.hpp"

namespace zipfit {

// No table row within the lookup window; the caller should simulate.
class NoTableMatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lookup window around a tabulated exponent. Cutoffs move by an order of
// magnitude across the exponent range, so no interpolation is done.
inline constexpr double kGammaLookupWindow = 0.005;

struct FitReport {
  std::int64_t n = 0;
  SupportSpec support = SupportSpec::unbounded();
  double gamma_hat = 0.0;
  KsResult ks;
  std::string source;  // "table" or "bespoke"
  double table_gamma = 0.0;  // row used, table mode only
  std::vector<Verdict> verdicts;

  // The 0.9-level verdict (or the lowest level when 0.9 is absent).
  bool rejected_at_primary_level() const;
};

struct FitEstimate {
  double gamma_hat = 0.0;
  KsResult ks;
};

// Estimate the exponent and measure KS against the fitted model.
FitEstimate estimate(const Sample& sample, const SupportSpec& support,
                     const MleSettings& settings = {});

// Cutoffs from the table row matching (n, gamma_hat +- window).
// Throws NoTableMatch or std::invalid_argument (support mismatch).
FitReport fit_with_table(const Sample& sample, const SupportSpec& support,
                         const CutoffTable& table);

// Cutoffs from a fresh simulation at (n, gamma_hat). `engine` supplies
// replicates, repetitions, seed, levels, horizon and workers.
FitReport fit_bespoke(const Sample& sample, const SupportSpec& support,
                      const SimulationConfig& engine);

// Human-readable report, 4 decimals.
void print_report(std::ostream& out, const FitReport& report);

// Flat key=value block, full precision.
void print_machine_report(std::ostream& out, const FitReport& report);

}  // namespace zipfit
