#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "expfam/dataset.hpp"
#include "expfam/family.hpp"
#include "expfam/params.hpp"

namespace expfam {

enum class InitKind { Zeros, Random };

/// Initial iterate for fit. Random draws are Gaussian with the given scale,
/// deterministic for a fixed seed.
struct InitSpec {
  InitKind kind = InitKind::Zeros;
  double scale = 0.01;
  std::uint64_t seed = 42;
};

struct FitOptions {
  double tol_grad_inf = 1e-8;
  int max_iters = 5000;
  /// Unset means the variant default: random for families with hidden
  /// variables (whose likelihood has symmetric stationary points at zero),
  /// zeros otherwise.
  std::optional<InitSpec> init;
  double ls_initial_step = 1.0;
  double ls_backtrack = 0.5;
  double ls_sufficient_decrease = 1e-4;
};

enum class FitStatus { Converged, MaxIters, Diverging };

std::string_view to_string(FitStatus s);

/// The two sides of the generalized moment-matching condition at theta, each
/// a stat_dim vector, and the infinity norm of their difference. data_side
/// averages the expectation of T with the data clamped in; model_side
/// averages it with only the conditioning variables clamped. At a maximum of
/// the likelihood the two sides agree.
struct MomentReport {
  std::vector<double> data_side;
  std::vector<double> model_side;
  double residual_inf = 0.0;
};

struct FitResult {
  ParamVector theta_hat;
  FitStatus status = FitStatus::MaxIters;
  std::vector<double> loglik_trace;
  double grad_inf_final = 0.0;
  double mm_residual_inf = 0.0;
  MomentReport moment_report;
  int iterations = 0;

  double loglik_final() const { return loglik_trace.back(); }
};

/// Mean log probability of the dataset rows; -infinity if any row is
/// structurally forbidden.
double log_likelihood(const FamilySpec& spec, const Dataset& data,
                      const ParamVector& theta);

/// Gradient of log_likelihood, assembled row by row as the clamped-in
/// expectation of T minus the conditioning-only expectation. Equals
/// data_side - model_side of moment_report.
std::vector<double> grad_log_likelihood(const FamilySpec& spec,
                                        const Dataset& data,
                                        const ParamVector& theta);

MomentReport moment_report(const FamilySpec& spec, const Dataset& data,
                           const ParamVector& theta);

/// Maximizes log_likelihood by gradient ascent with a backtracking line
/// search. Stops with Converged when the gradient infinity norm reaches
/// tol_grad_inf at a settled iterate, with Diverging when the iterate runs
/// away (no finite maximizer, the empirical moments sit on the boundary of
/// the achievable set), and with MaxIters when the iteration budget ends.
FitResult fit(const FamilySpec& spec, const Dataset& data,
              const FitOptions& options = {});

/// Max over coordinates of |analytic - central difference| / max(1,
/// |analytic|) for grad_log_likelihood at theta.
double gradient_check(const FamilySpec& spec, const Dataset& data,
                      const ParamVector& theta, double eps = 1e-5);

}  // namespace expfam
