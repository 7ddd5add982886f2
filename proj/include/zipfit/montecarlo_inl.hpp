#pragma once

#include <chrono>
#include <exception>
#include <sstream>

namespace zipfit {

template <class Progress>
CutoffTable build_table(const TableGrid& grid, const SimulationConfig& base,
                        Progress&& progress) {
  if (grid.n_values.empty() || grid.gamma_values.empty()) {
    throw std::invalid_argument("table grid must be nonempty");
  }
  CutoffTable table;
  table.support = base.support;
  table.levels = base.quantiles;
  table.replicates = base.replicates;
  table.repetitions = base.repetitions;
  table.seed = base.base_seed;

  for (const double gamma : grid.gamma_values) {
    for (const std::int64_t n : grid.n_values) {
      SimulationConfig config = base;
      config.gamma = gamma;
      config.n = n;
      const auto start = std::chrono::steady_clock::now();
      CutoffRow row{gamma, n, {}, 0.0};
      try {
        row.cutoffs = run_simulation(config);
      } catch (const std::exception& e) {
        std::ostringstream message;
        message << "cell gamma=" << gamma << " n=" << n << " K="
                << base.support.label() << " failed: " << e.what();
        throw SimulationError(message.str());
      }
      row.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      progress(row);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace zipfit
