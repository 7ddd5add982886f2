#include "zipfit/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zipfit/fit.hpp"
#include "zipfit/io.hpp"
#include "zipfit/montecarlo.hpp"

namespace zipfit {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flags shared by every command that runs simulations.
struct EngineFlags {
  std::int64_t replicates = 50000;
  int repetitions = 10;
  std::optional<std::uint64_t> seed;
  std::vector<double> quantiles = kStandardLevels;
  unsigned workers = 0;
  std::int64_t horizon = kDefaultSamplingHorizon;

  void attach(CLI::App& app) {
    app.add_option("--replicates", replicates, "Replicates per repetition")
        ->capture_default_str();
    app.add_option("--reps", repetitions, "Repetitions averaged per cell")
        ->capture_default_str();
    app.add_option("--seed", seed,
                   "Base seed (time-derived with a warning when omitted)");
    app.add_option("--workers", workers,
                   "Worker threads, 0 = all cores; results do not depend on it")
        ->capture_default_str();
    app.add_option("--horizon", horizon,
                   "Largest value drawn when simulating unbounded support")
        ->capture_default_str();
  }

  SimulationConfig config(const SupportSpec& support, std::ostream& err) {
    SimulationConfig c;
    c.support = support;
    c.replicates = replicates;
    c.repetitions = repetitions;
    c.quantiles = quantiles;
    c.workers = workers;
    c.sampling_horizon = horizon;
    if (seed) {
      c.base_seed = *seed;
    } else {
      c.base_seed = static_cast<std::uint64_t>(
          std::chrono::system_clock::now().time_since_epoch().count());
      err << "warning: no --seed given, using " << c.base_seed
          << "; pass --seed for reproducible output\n";
    }
    return c;
  }
};

SupportSpec support_flag(const std::string& text) {
  try {
    return parse_support(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--k: ") + e.what());
  }
}

void check_gammas(const std::vector<double>& gammas,
                  const SupportSpec& support) {
  for (const double g : gammas) {
    try {
      check_exponent(g, support);
    } catch (const std::domain_error& e) {
      throw UsageError(std::string("--gamma: ") + e.what());
    }
  }
}

void print_row(std::ostream& out, const CutoffTable& table,
               const CutoffRow& row) {
  const auto flags = out.flags();
  out << "K=" << table.support.label() << " gamma=" << format_number(row.gamma)
      << " n=" << row.n << " ";
  out << std::fixed << std::setprecision(4);
  for (std::size_t i = 0; i < table.levels.size(); ++i) {
    out << ' ' << level_column(table.levels[i]) << '=' << row.cutoffs[i];
  }
  out << std::setprecision(2) << "  (" << row.seconds << " s)\n";
  out.flags(flags);
}

int simulate_grid(const TableGrid& grid, const SimulationConfig& base,
                  const std::string& out_path, std::ostream& out) {
  try {
    base.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw UsageError("cannot write " + out_path);
  }
  CutoffTable header_only;
  header_only.support = base.support;
  header_only.levels = base.quantiles;
  // Validate the column names before spending time on simulation.
  for (const double level : base.quantiles) {
    level_column(level);
  }
  const CutoffTable table =
      build_table(grid, base, [&](const CutoffRow& row) {
        print_row(out, header_only, row);
        out.flush();
      });
  write_table(file, table);
  if (!file) {
    throw std::runtime_error("failed writing " + out_path);
  }
  out << "wrote " << table.rows.size() << " rows to " << out_path << '\n';
  return kExitAccepted;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Discrete power-law (Zipf) fitting with Monte Carlo "
               "Kolmogorov-Smirnov cutoffs",
               "zipfit"};
  app.require_subcommand(1);

  // simulate
  CLI::App* simulate =
      app.add_subcommand("simulate", "Simulate KS cutoffs for a grid of cells");
  std::vector<std::int64_t> sim_n;
  std::vector<double> sim_gamma;
  std::string sim_k;
  std::string sim_out;
  EngineFlags sim_engine;
  simulate->add_option("--n", sim_n, "Sample sizes")
      ->required()
      ->delimiter(',');
  simulate->add_option("--gamma", sim_gamma, "Generating exponents")
      ->required()
      ->delimiter(',');
  simulate->add_option("--k", sim_k, "Support: integer K or 'inf'")->required();
  simulate->add_option("--quantiles", sim_engine.quantiles, "Quantile levels")
      ->delimiter(',');
  simulate->add_option("--out", sim_out, "Output CSV path")->required();
  sim_engine.attach(*simulate);

  // fit
  CLI::App* fit = app.add_subcommand("fit", "Fit data and judge the fit");
  std::string fit_input;
  std::string fit_k;
  std::string fit_table;
  bool fit_bespoke_flag = false;
  bool fit_machine = false;
  EngineFlags fit_engine;
  fit->add_option("--input", fit_input, "Observation file")->required();
  fit->add_option("--k", fit_k, "Support: integer K or 'inf'")->required();
  auto* table_opt =
      fit->add_option("--table", fit_table, "Cutoff table CSV to look up");
  auto* bespoke_opt = fit->add_flag(
      "--bespoke", fit_bespoke_flag,
      "Simulate cutoffs at the fitted exponent and exact sample size");
  table_opt->excludes(bespoke_opt);
  bespoke_opt->excludes(table_opt);
  fit->add_flag("--machine", fit_machine,
                "Also print a key=value block after the report");
  fit_engine.attach(*fit);

  // tables
  CLI::App* tables = app.add_subcommand(
      "tables", "Simulate the full reference grid (15 sizes x all exponents)");
  std::string tab_k;
  std::string tab_out;
  EngineFlags tab_engine;
  tables->add_option("--k", tab_k, "Support: integer K or 'inf'")->required();
  tables->add_option("--out", tab_out, "Output CSV path")->required();
  tab_engine.attach(*tables);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      const SupportSpec support = support_flag(sim_k);
      check_gammas(sim_gamma, support);
      SimulationConfig base = sim_engine.config(support, err);
      base.gamma = sim_gamma.front();
      base.n = sim_n.front();
      return simulate_grid({sim_n, sim_gamma}, base, sim_out, out);
    }

    if (tables->parsed()) {
      const SupportSpec support = support_flag(tab_k);
      SimulationConfig base = tab_engine.config(support, err);
      const TableGrid grid{reference_sizes(), reference_gammas(support)};
      base.gamma = grid.gamma_values.front();
      base.n = grid.n_values.front();
      return simulate_grid(grid, base, tab_out, out);
    }

    // fit
    if (fit_table.empty() == !fit_bespoke_flag) {
      throw UsageError("fit needs exactly one of --table or --bespoke");
    }
    const SupportSpec support = support_flag(fit_k);
    Sample sample = parse_observations(fit_input);
    if (!support.contains(sample.max())) {
      throw UsageError("observation " + std::to_string(sample.max()) +
                       " exceeds the declared support 1.." + support.label());
    }
    FitReport report;
    if (fit_bespoke_flag) {
      SimulationConfig engine = fit_engine.config(support, err);
      report = fit_bespoke(sample, support, engine);
    } else {
      report = fit_with_table(sample, support, load_table(fit_table));
    }
    print_report(out, report);
    if (fit_machine) {
      out << '\n';
      print_machine_report(out, report);
    }
    return report.rejected_at_primary_level() ? kExitRejected : kExitAccepted;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace zipfit
