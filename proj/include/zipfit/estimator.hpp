#pragma once

#include <stdexcept>

#include "zipfit/sample.hpp"
#include "zipfit/zipf.hpp"

namespace zipfit {

// The likelihood equation has no root inside the search bracket.
class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RootMethod {
  kNewton,     // Newton-Raphson, bisection if it misbehaves
  kBisection,  // bisection only
};

struct MleSettings {
  double initial_guess = 0.5;
  double absolute_tolerance = 1e-5;
  int max_iterations = 200;
  // Finite supports admit exponents <= 0; unbounded searches are further
  // restricted to [kMinUnboundedGamma, bracket_high].
  double bracket_low = -20.0;
  double bracket_high = 20.0;
  RootMethod method = RootMethod::kNewton;

  // Throws std::invalid_argument.
  void validate() const;
};

// Mean of ln x_i. An all-ones sample (log-sum <= 0) is scored as if one
// observation were 2, i.e. ln(2)/N, which keeps the estimate finite.
double log_mean(const Sample& sample);
double log_mean(const Sample& sample, const LogTable& logs);

// Root of A(g)/B(g) + mean_log = 0 over the support. `logs` must cover
// 1..K for finite supports.
double mle_gamma_from_log_mean(double mean_log, const SupportSpec& support,
                               const MleSettings& settings,
                               const LogTable& logs);

// Maximum-likelihood exponent. Throws NoRootError or std::domain_error (an
// observation outside the support).
double mle_gamma(const Sample& sample, const SupportSpec& support,
                 const MleSettings& settings = {});

// N * (-g * mean_log - ln B(g)).
double log_likelihood(double gamma, double mean_log, std::int64_t n,
                      const SupportSpec& support);

}  // namespace zipfit
