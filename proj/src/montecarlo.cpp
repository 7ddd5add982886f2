#include "zipfit/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace zipfit {
namespace {

constexpr std::int64_t kRetryOffset = std::int64_t{1} << 32;
constexpr std::int64_t kChunk = 64;

void check_levels(std::span<const double> levels) {
  if (levels.empty()) {
    throw std::invalid_argument("at least one quantile level is required");
  }
  double previous = 0.0;
  for (const double q : levels) {
    if (!(q > 0.0 && q < 1.0)) {
      throw std::invalid_argument("quantile levels must lie in (0, 1)");
    }
    if (!(q > previous)) {
      throw std::invalid_argument("quantile levels must be strictly increasing");
    }
    previous = q;
  }
}

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) {
    return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

void SimulationConfig::validate() const {
  if (n < 1) {
    throw std::invalid_argument("sample size must be positive");
  }
  check_exponent(gamma, support);
  if (replicates < 100) {
    throw std::invalid_argument("at least 100 replicates are required");
  }
  if (repetitions < 1) {
    throw std::invalid_argument("at least one repetition is required");
  }
  check_levels(quantiles);
  for (const double q : quantiles) {
    quantile_index(static_cast<std::size_t>(replicates), q);
  }
  if (support.is_unbounded() && sampling_horizon < 2) {
    throw std::invalid_argument("sampling horizon must be at least 2");
  }
  mle.validate();
}

std::size_t quantile_index(std::size_t count, double level) {
  // floor(R q) for decimal levels, immune to 0.95 * 100 = 94.999...
  const double exact = static_cast<double>(count) * level;
  const double nearest = std::round(exact);
  const double index = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact)
                           ? nearest
                           : std::floor(exact);
  if (!(index >= 0.0) || index >= static_cast<double>(count)) {
    throw std::invalid_argument("quantile level selects an index beyond the "
                                "last order statistic");
  }
  return static_cast<std::size_t>(index);
}

std::vector<double> quantiles(std::span<const double> stats,
                              std::span<const double> levels) {
  if (stats.empty()) {
    throw std::invalid_argument("no statistics to take quantiles of");
  }
  check_levels(levels);
  std::vector<double> sorted(stats.begin(), stats.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  out.reserve(levels.size());
  for (const double q : levels) {
    out.push_back(sorted[quantile_index(sorted.size(), q)]);
  }
  return out;
}

ReplicateOutcome fit_and_test(const Sample& sample, const SupportSpec& support,
                              const MleSettings& settings,
                              const LogTable& logs) {
  const double mean_log = log_mean(sample, logs);
  const double gamma_hat =
      mle_gamma_from_log_mean(mean_log, support, settings, logs);
  const ZipfModel fitted(gamma_hat, support);
  return {ks_statistic(sample, fitted, logs).statistic, gamma_hat, 0};
}

Simulator::Simulator(SimulationConfig config)
    : config_((config.validate(), std::move(config))),
      sampler_(ZipfModel(config_.gamma, config_.support),
               config_.sampling_horizon),
      logs_(config_.support.is_finite() ? config_.support.k()
                                        : sampler_.limit()) {}

ReplicateOutcome Simulator::attempt(int repetition,
                                    std::int64_t stream_index) const {
  RandomStream stream(config_.base_seed, static_cast<std::uint64_t>(repetition),
                      static_cast<std::uint64_t>(stream_index));
  std::vector<std::int64_t> values(static_cast<std::size_t>(config_.n));
  sampler_.fill(values, stream);
  return fit_and_test(Sample(std::move(values)), config_.support, config_.mle,
                      logs_);
}

ReplicateOutcome Simulator::run_replicate(int repetition,
                                          std::int64_t index) const {
  ReplicateOutcome outcome;
  try {
    outcome = attempt(repetition, index);
  } catch (const NoRootError&) {
    try {
      outcome = attempt(repetition, index + kRetryOffset);
    } catch (const NoRootError& e) {
      throw SimulationError(
          "replicate " + std::to_string(index) + " of repetition " +
          std::to_string(repetition) + " (n=" + std::to_string(config_.n) +
          ", gamma=" + std::to_string(config_.gamma) + ", K=" +
          config_.support.label() + ") failed after retry: " + e.what());
    }
  }
  outcome.replicate_index = index;
  return outcome;
}

std::vector<double> Simulator::run_statistics(int repetition) const {
  const std::int64_t total = config_.replicates;
  std::vector<double> stats(static_cast<std::size_t>(total));
  const unsigned workers = std::min<std::int64_t>(
      resolve_workers(config_.workers), (total + kChunk - 1) / kChunk);

  if (workers <= 1) {
    for (std::int64_t i = 0; i < total; ++i) {
      stats[static_cast<std::size_t>(i)] = run_replicate(repetition, i).ks;
    }
    return stats;
  }

  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (!failed.load(std::memory_order_relaxed)) {
          const std::int64_t begin = next.fetch_add(kChunk);
          if (begin >= total) {
            return;
          }
          const std::int64_t end = std::min(total, begin + kChunk);
          try {
            for (std::int64_t i = begin; i < end; ++i) {
              stats[static_cast<std::size_t>(i)] =
                  run_replicate(repetition, i).ks;
            }
          } catch (...) {
            const std::lock_guard lock(error_mutex);
            if (!error) {
              error = std::current_exception();
            }
            failed = true;
            return;
          }
        }
      });
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
  return stats;
}

std::vector<double> Simulator::run_repetition(int repetition) const {
  return quantiles(run_statistics(repetition), config_.quantiles);
}

std::vector<double> Simulator::run() const {
  std::vector<double> sums(config_.quantiles.size(), 0.0);
  for (int r = 0; r < config_.repetitions; ++r) {
    const std::vector<double> levels = run_repetition(r);
    for (std::size_t i = 0; i < sums.size(); ++i) {
      sums[i] += levels[i];
    }
  }
  for (double& s : sums) {
    s /= static_cast<double>(config_.repetitions);
  }
  return sums;
}

ReplicateOutcome run_replicate(const SimulationConfig& config,
                               std::int64_t index, int repetition) {
  if (index < 0 || index >= config.replicates) {
    throw std::invalid_argument("replicate index out of range");
  }
  return Simulator(config).run_replicate(repetition, index);
}

std::vector<double> run_simulation(const SimulationConfig& config) {
  return Simulator(config).run();
}

const CutoffRow* CutoffTable::find(double gamma, std::int64_t n,
                                   double tolerance) const {
  const CutoffRow* best = nullptr;
  for (const CutoffRow& row : rows) {
    if (row.n != n) {
      continue;
    }
    const double distance = std::abs(row.gamma - gamma);
    if (distance <= tolerance + 1e-12 &&
        (best == nullptr || distance < std::abs(best->gamma - gamma))) {
      best = &row;
    }
  }
  return best;
}

double CutoffTable::lookup(double gamma, std::int64_t n, double level) const {
  const CutoffRow* row = find(gamma, n, 1e-9);
  if (row == nullptr) {
    throw std::out_of_range("no table row for gamma=" + std::to_string(gamma) +
                            " n=" + std::to_string(n));
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (std::abs(levels[i] - level) < 1e-12) {
      return row->cutoffs[i];
    }
  }
  throw std::out_of_range("no table column for level " + std::to_string(level));
}

CutoffTable build_table(const TableGrid& grid, const SimulationConfig& base) {
  return build_table(grid, base, [](const CutoffRow&) {});
}

const std::vector<std::int64_t>& reference_sizes() {
  static const std::vector<std::int64_t> sizes{
      10, 20, 30, 40, 50, 100, 500, 1000, 2000, 3000, 4000, 5000, 10000,
      20000, 50000};
  return sizes;
}

std::vector<double> reference_gammas(const SupportSpec& support) {
  std::vector<double> gammas;
  if (support.is_finite()) {
    gammas = {0.25, 0.5, 0.75, 1.0};
  }
  for (const double g : {1.25, 1.5, 1.75, 2.0, 2.5, 3.0, 3.5, 4.0}) {
    gammas.push_back(g);
  }
  return gammas;
}

}  // namespace zipfit
