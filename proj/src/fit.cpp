#include "zipfit/fit.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "zipfit/io.hpp"

namespace zipfit {
namespace {

std::vector<Verdict> verdicts_for(double statistic,
                                  const std::vector<double>& levels,
                                  const std::vector<double>& cutoffs) {
  std::vector<Verdict> verdicts;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    verdicts.push_back(judge(statistic, cutoffs[i], levels[i]));
  }
  return verdicts;
}

std::string level_label(double level) {
  return level_column(level).substr(1);
}

}  // namespace

bool FitReport::rejected_at_primary_level() const {
  if (verdicts.empty()) {
    return false;
  }
  for (const Verdict& v : verdicts) {
    if (std::abs(v.level - 0.9) < 1e-12) {
      return v.rejected;
    }
  }
  return verdicts.front().rejected;
}

FitEstimate estimate(const Sample& sample, const SupportSpec& support,
                     const MleSettings& settings) {
  const double gamma_hat = mle_gamma(sample, support, settings);
  return {gamma_hat, ks_statistic(sample, ZipfModel(gamma_hat, support))};
}

FitReport fit_with_table(const Sample& sample, const SupportSpec& support,
                         const CutoffTable& table) {
  if (!(table.support == support)) {
    throw std::invalid_argument("table is for K=" + table.support.label() +
                                " but the data declare K=" + support.label());
  }
  const FitEstimate fit = estimate(sample, support);
  const CutoffRow* row = table.find(fit.gamma_hat, sample.size(),
                                    kGammaLookupWindow);
  if (row == nullptr) {
    std::ostringstream message;
    message << "no table row with n=" << sample.size() << " and gamma within "
            << kGammaLookupWindow << " of " << std::fixed
            << std::setprecision(4) << fit.gamma_hat
            << "; run a bespoke simulation instead (--bespoke)";
    throw NoTableMatch(message.str());
  }
  FitReport report;
  report.n = sample.size();
  report.support = support;
  report.gamma_hat = fit.gamma_hat;
  report.ks = fit.ks;
  report.source = "table";
  report.table_gamma = row->gamma;
  report.verdicts = verdicts_for(fit.ks.statistic, table.levels, row->cutoffs);
  return report;
}

FitReport fit_bespoke(const Sample& sample, const SupportSpec& support,
                      const SimulationConfig& engine) {
  const FitEstimate fit = estimate(sample, support, engine.mle);
  SimulationConfig config = engine;
  config.n = sample.size();
  config.support = support;
  config.gamma = fit.gamma_hat;
  const std::vector<double> cutoffs = run_simulation(config);

  FitReport report;
  report.n = sample.size();
  report.support = support;
  report.gamma_hat = fit.gamma_hat;
  report.ks = fit.ks;
  report.source = "bespoke";
  report.verdicts = verdicts_for(fit.ks.statistic, config.quantiles, cutoffs);
  return report;
}

void print_report(std::ostream& out, const FitReport& report) {
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(4);
  out << "observations:  " << report.n << '\n';
  out << "support:       1.." << report.support.label() << '\n';
  out << "gamma_hat:     " << report.gamma_hat << '\n';
  out << "ks statistic:  " << report.ks.statistic << " (at k="
      << report.ks.argmax_k << ")\n";
  out << "cutoffs from:  " << report.source;
  if (report.source == "table") {
    out << " row gamma=" << report.table_gamma;
  }
  out << '\n';
  out << "level   cutoff   verdict\n";
  for (const Verdict& v : report.verdicts) {
    out << std::left << std::setw(8) << format_number(v.level) << std::right
        << v.cutoff << "   " << (v.rejected ? "rejected" : "not rejected")
        << '\n';
  }
  out.flags(flags);
}

void print_machine_report(std::ostream& out, const FitReport& report) {
  out << "n=" << report.n << '\n';
  out << "k_support=" << report.support.label() << '\n';
  out << "gamma_hat=" << format_number(report.gamma_hat) << '\n';
  out << "ks=" << format_number(report.ks.statistic) << '\n';
  out << "ks_argmax=" << report.ks.argmax_k << '\n';
  out << "source=" << report.source << '\n';
  for (const Verdict& v : report.verdicts) {
    const std::string label = level_label(v.level);
    out << "cutoff_q" << label << '=' << format_number(v.cutoff) << '\n';
    out << "rejected_q" << label << '=' << (v.rejected ? 1 : 0) << '\n';
  }
}

}  // namespace zipfit
