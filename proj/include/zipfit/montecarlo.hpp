#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "zipfit/estimator.hpp"
#include "zipfit/gof.hpp"
#include "zipfit/sample.hpp"
#include "zipfit/zipf.hpp"

namespace zipfit {

inline const std::vector<double> kStandardLevels{0.9, 0.95, 0.99, 0.999};

// One calibration cell: R replicates of sample -> refit -> KS, repeated.
struct SimulationConfig {
  std::int64_t n = 100;
  SupportSpec support = SupportSpec::unbounded();
  double gamma = 2.0;
  std::int64_t replicates = 50000;
  int repetitions = 10;
  std::uint64_t base_seed = 1;
  std::vector<double> quantiles = kStandardLevels;
  std::int64_t sampling_horizon = kDefaultSamplingHorizon;
  MleSettings mle;
  // 0 = hardware concurrency. Never changes results.
  unsigned workers = 0;

  // Throws std::invalid_argument / std::domain_error.
  void validate() const;
};

struct ReplicateOutcome {
  double ks = 0.0;
  double gamma_hat = 0.0;
  std::int64_t replicate_index = 0;
};

// A replicate failed twice (original stream and the retry stream).
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Refits `sample` on `support` and measures KS against the refitted model.
ReplicateOutcome fit_and_test(const Sample& sample, const SupportSpec& support,
                              const MleSettings& settings,
                              const LogTable& logs);

// Index of the order statistic used for level q: floor(R q), zero-based.
std::size_t quantile_index(std::size_t count, double level);

// Sorts a copy ascending and picks element floor(R q) for each level.
std::vector<double> quantiles(std::span<const double> stats,
                              std::span<const double> levels);

// Precomputed, immutable state for one configuration. Thread-safe.
class Simulator {
 public:
  explicit Simulator(SimulationConfig config);

  const SimulationConfig& config() const { return config_; }

  // Draw, refit, test. A NoRootError is retried once on index + 2^32.
  ReplicateOutcome run_replicate(int repetition, std::int64_t index) const;

  // All R KS statistics of one repetition, in replicate order.
  std::vector<double> run_statistics(int repetition) const;

  // Quantile levels of one repetition.
  std::vector<double> run_repetition(int repetition) const;

  // Per-level mean over all repetitions.
  std::vector<double> run() const;

 private:
  ReplicateOutcome attempt(int repetition, std::int64_t stream_index) const;

  SimulationConfig config_;
  ZipfSampler sampler_;
  LogTable logs_;
};

ReplicateOutcome run_replicate(const SimulationConfig& config,
                               std::int64_t index, int repetition = 0);

// Per-level cutoffs averaged over config.repetitions.
std::vector<double> run_simulation(const SimulationConfig& config);

struct CutoffRow {
  double gamma = 0.0;
  std::int64_t n = 0;
  std::vector<double> cutoffs;  // one per level
  double seconds = 0.0;         // wall time, not serialized

  bool operator==(const CutoffRow& other) const {
    return gamma == other.gamma && n == other.n && cutoffs == other.cutoffs;
  }
};

struct CutoffTable {
  SupportSpec support = SupportSpec::unbounded();
  std::vector<double> levels = kStandardLevels;
  std::vector<CutoffRow> rows;
  std::int64_t replicates = 0;
  int repetitions = 0;
  std::uint64_t seed = 0;

  // Row with this n whose gamma is nearest and within `tolerance`.
  const CutoffRow* find(double gamma, std::int64_t n,
                        double tolerance = 0.005) const;

  // Cutoff at an exact (gamma, n, level); std::out_of_range otherwise.
  double lookup(double gamma, std::int64_t n, double level) const;

  bool operator==(const CutoffTable&) const = default;
};

struct TableGrid {
  std::vector<std::int64_t> n_values;
  std::vector<double> gamma_values;
};

// Rows ordered gamma-major, then n, following the input grids. `base` holds
// every setting except n and gamma. `progress` (optional) sees each row.
template <class Progress>
CutoffTable build_table(const TableGrid& grid, const SimulationConfig& base,
                        Progress&& progress);
CutoffTable build_table(const TableGrid& grid, const SimulationConfig& base);

// Sample sizes of the reference tables.
const std::vector<std::int64_t>& reference_sizes();
// Exponents of the reference tables for this support.
std::vector<double> reference_gammas(const SupportSpec& support);

}  // namespace zipfit

#include "zipfit/montecarlo_inl.hpp"
