#include "expfam/learning.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "expfam/error.hpp"
#include "expfam/inference.hpp"

namespace expfam {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Iterates whose infinity norm passes this bound have left the region where
// a finite maximizer could plausibly live; the fit is chasing a supremum on
// the boundary of the achievable moment set.
constexpr double kThetaGuardInf = 1e3;

// A gradient below tolerance only certifies an interior maximum when the
// iterate has settled. When the tolerance is met while the line search is
// still taking order-one steps at a large iterate, the objective has gone
// flat along an escape ray and the fit is classified as diverging instead.
constexpr double kEscapeStepInf = 1e-2;
constexpr double kEscapeThetaInf = 10.0;

constexpr double kMinLineSearchStep = 1e-18;

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Per-theta memo of clamped log-partition values and gradients. Keys are the
// clamp slot vectors; repeated rows therefore cost one evaluation. Reusing a
// cached value is bit-identical to recomputing it, so summing over rows in
// their fixed order keeps results reproducible.
class ClampValueCache {
 public:
  ClampValueCache(const FamilySpec& spec, const ParamVector& theta)
      : spec_(spec), theta_(theta) {}

  double at(const Configuration& clamp) {
    auto [it, fresh] = memo_.try_emplace(clamp.slots(), 0.0);
    if (fresh) it->second = log_partition(spec_, clamp, theta_);
    return it->second;
  }

 private:
  const FamilySpec& spec_;
  const ParamVector& theta_;
  std::map<std::vector<int>, double> memo_;
};

class ClampGradCache {
 public:
  ClampGradCache(const FamilySpec& spec, const ParamVector& theta)
      : spec_(spec), theta_(theta) {}

  const std::vector<double>& at(const Configuration& clamp) {
    auto [it, fresh] = memo_.try_emplace(clamp.slots());
    if (fresh) it->second = grad_log_partition(spec_, clamp, theta_);
    return it->second;
  }

 private:
  const FamilySpec& spec_;
  const ParamVector& theta_;
  std::map<std::vector<int>, std::vector<double>> memo_;
};

InitSpec default_init(Variant variant) {
  InitSpec init;
  init.kind = (variant == Variant::Hidden ||
               variant == Variant::ConditionalHidden)
                  ? InitKind::Random
                  : InitKind::Zeros;
  return init;
}

std::vector<double> initial_theta(const FamilySpec& spec,
                                  const InitSpec& init) {
  std::vector<double> theta(spec.stat_dim(), 0.0);
  if (init.kind == InitKind::Random && init.scale > 0.0) {
    std::mt19937_64 rng(init.seed);
    std::normal_distribution<double> draw(0.0, init.scale);
    for (double& t : theta) t = draw(rng);
  }
  return theta;
}

}  // namespace

std::string_view to_string(FitStatus s) {
  switch (s) {
    case FitStatus::Converged:
      return "converged";
    case FitStatus::MaxIters:
      return "max_iters";
    case FitStatus::Diverging:
      return "diverging";
  }
  return "?";
}

double log_likelihood(const FamilySpec& spec, const Dataset& data,
                      const ParamVector& theta) {
  ClampValueCache values(spec, theta);
  double sum = 0.0;
  for (const Configuration& row : data.rows()) {
    const double clamped = values.at(row);
    if (clamped == kNegInf) return kNegInf;
    sum += clamped - values.at(spec.restricted_to(row, Role::Cond));
  }
  return sum / static_cast<double>(data.size());
}

std::vector<double> grad_log_likelihood(const FamilySpec& spec,
                                        const Dataset& data,
                                        const ParamVector& theta) {
  ClampGradCache grads(spec, theta);
  std::vector<double> g(spec.stat_dim(), 0.0);
  for (const Configuration& row : data.rows()) {
    const std::vector<double>& in = grads.at(row);
    const std::vector<double>& out =
        grads.at(spec.restricted_to(row, Role::Cond));
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += in[j] - out[j];
  }
  const double n = static_cast<double>(data.size());
  for (double& gj : g) gj /= n;
  return g;
}

MomentReport moment_report(const FamilySpec& spec, const Dataset& data,
                           const ParamVector& theta) {
  ClampGradCache grads(spec, theta);
  const double n = static_cast<double>(data.size());
  MomentReport report;

  report.data_side.assign(spec.stat_dim(), 0.0);
  for (const Configuration& row : data.rows()) {
    const std::vector<double>& in = grads.at(row);
    for (std::size_t j = 0; j < in.size(); ++j) report.data_side[j] += in[j];
  }
  for (double& x : report.data_side) x /= n;

  if (spec.has_role(Role::Cond)) {
    report.model_side.assign(spec.stat_dim(), 0.0);
    for (const Configuration& row : data.rows()) {
      const std::vector<double>& out =
          grads.at(spec.restricted_to(row, Role::Cond));
      for (std::size_t j = 0; j < out.size(); ++j) {
        report.model_side[j] += out[j];
      }
    }
    for (double& x : report.model_side) x /= n;
  } else {
    // Without conditioning variables every row shares one model expectation;
    // compute it once rather than averaging n identical copies.
    report.model_side = grads.at(spec.empty_clamp());
  }

  double residual = 0.0;
  for (std::size_t j = 0; j < report.data_side.size(); ++j) {
    residual = std::max(residual,
                        std::abs(report.data_side[j] - report.model_side[j]));
  }
  report.residual_inf = residual;
  return report;
}

FitResult fit(const FamilySpec& spec, const Dataset& data,
              const FitOptions& options) {
  if (!(options.tol_grad_inf > 0.0)) throw SpecError("tol_grad_inf must be positive");
  if (options.max_iters < 1) throw SpecError("max_iters must be at least 1");
  if (!(options.ls_initial_step > 0.0) || !(options.ls_backtrack > 0.0) ||
      options.ls_backtrack >= 1.0 || !(options.ls_sufficient_decrease > 0.0)) {
    throw SpecError("invalid line-search options");
  }
  if (data.size() == 0) throw EmptyDatasetError("dataset has no rows");

  const std::size_t d = static_cast<std::size_t>(spec.stat_dim());
  std::vector<double> theta =
      initial_theta(spec, options.init.value_or(default_init(spec.variant())));

  double loglik = log_likelihood(spec, data, ParamVector(theta));
  std::vector<double> grad = grad_log_likelihood(spec, data, ParamVector(theta));

  FitResult result;
  result.loglik_trace.push_back(loglik);

  double next_step = options.ls_initial_step;
  double last_move_inf = 0.0;
  FitStatus status = FitStatus::MaxIters;

  for (;;) {
    const double grad_inf = inf_norm(grad);
    if (grad_inf <= options.tol_grad_inf) {
      const bool escaping = last_move_inf > kEscapeStepInf &&
                            inf_norm(theta) > kEscapeThetaInf;
      status = escaping ? FitStatus::Diverging : FitStatus::Converged;
      break;
    }
    if (inf_norm(theta) > kThetaGuardInf) {
      status = FitStatus::Diverging;
      break;
    }
    if (result.iterations >= options.max_iters) {
      status = FitStatus::MaxIters;
      break;
    }

    // Backtracking line search along the gradient. An accepted first trial
    // doubles the next starting step; a backtracked search restarts from the
    // step it accepted.
    const double gg = [&] {
      double s = 0.0;
      for (double gj : grad) s += gj * gj;
      return s;
    }();
    double step = next_step;
    bool first_trial = true;
    bool accepted = false;
    std::vector<double> candidate(d);
    double candidate_loglik = kNegInf;
    while (step >= kMinLineSearchStep) {
      for (std::size_t j = 0; j < d; ++j) {
        candidate[j] = theta[j] + step * grad[j];
      }
      candidate_loglik = log_likelihood(spec, data, ParamVector(candidate));
      if (std::isfinite(candidate_loglik) &&
          candidate_loglik >=
              loglik + options.ls_sufficient_decrease * step * gg) {
        accepted = true;
        break;
      }
      step *= options.ls_backtrack;
      first_trial = false;
    }
    if (!accepted) {
      // No step of any size improves the objective at double precision;
      // treat the budget as exhausted rather than claim convergence.
      status = FitStatus::MaxIters;
      break;
    }

    theta.swap(candidate);
    loglik = candidate_loglik;
    last_move_inf = step * inf_norm(grad);
    result.loglik_trace.push_back(loglik);
    ++result.iterations;
    grad = grad_log_likelihood(spec, data, ParamVector(theta));
    next_step = first_trial ? step * 2.0 : step;
  }

  result.theta_hat = ParamVector(theta);
  result.status = status;
  result.grad_inf_final = inf_norm(grad);
  result.moment_report = moment_report(spec, data, result.theta_hat);
  result.mm_residual_inf = result.moment_report.residual_inf;
  return result;
}

double gradient_check(const FamilySpec& spec, const Dataset& data,
                      const ParamVector& theta, double eps) {
  if (!(eps > 0.0)) throw SpecError("eps must be positive");
  const std::vector<double> analytic = grad_log_likelihood(spec, data, theta);
  std::vector<double> probe = theta.values();
  double worst = 0.0;
  for (std::size_t j = 0; j < probe.size(); ++j) {
    const double saved = probe[j];
    probe[j] = saved + eps;
    const double up = log_likelihood(spec, data, ParamVector(probe));
    probe[j] = saved - eps;
    const double down = log_likelihood(spec, data, ParamVector(probe));
    probe[j] = saved;
    const double numeric = (up - down) / (2.0 * eps);
    const double rel = std::abs(analytic[j] - numeric) /
                       std::max(1.0, std::abs(analytic[j]));
    worst = std::max(worst, rel);
  }
  return worst;
}

}  // namespace expfam
