#include "expfam/oracle.hpp"

#include <cmath>
#include <limits>

#include "expfam/error.hpp"

// Reference implementations, written against the definitions rather than the
// production code: sums of exponentials in plain double arithmetic, with no
// max-subtraction and no sharing of the stabilized summation path.

namespace expfam::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_theta(const FamilySpec& spec, const ParamVector& theta) {
  if (theta.size() != static_cast<std::size_t>(spec.stat_dim())) {
    throw SpecError("theta length does not match stat_dim");
  }
}

double weight(const FamilySpec& spec, const Configuration& config,
              const ParamVector& theta) {
  const double h = std::exp(spec.log_h(config));
  if (h == 0.0) return 0.0;
  double dot = 0.0;
  const std::span<const double> t = spec.stats(config);
  for (std::size_t j = 0; j < t.size(); ++j) dot += theta[j] * t[j];
  return h * std::exp(dot);
}

double mean_log_likelihood(const FamilySpec& spec, const Dataset& data,
                           const ParamVector& theta) {
  double sum = 0.0;
  for (const Configuration& row : data.rows()) {
    const double clamped = naive_log_partition(spec, row, theta);
    const double normalizer = naive_log_partition(
        spec, spec.restricted_to(row, Role::Cond), theta);
    sum += clamped - normalizer;
  }
  return sum / static_cast<double>(data.size());
}

double scalar_gradient(const FamilySpec& spec, const Dataset& data,
                       const ParamVector& theta) {
  const auto stat = [&](const Configuration& c) {
    const std::span<const double> t = spec.stats(c);
    return std::vector<double>(t.begin(), t.end());
  };
  double sum = 0.0;
  for (const Configuration& row : data.rows()) {
    const double in = brute_force_expectation(spec, row, theta, stat)[0];
    const double out = brute_force_expectation(
        spec, spec.restricted_to(row, Role::Cond), theta, stat)[0];
    sum += in - out;
  }
  return sum / static_cast<double>(data.size());
}

}  // namespace

double naive_log_partition(const FamilySpec& spec, const Configuration& clamp,
                           const ParamVector& theta) {
  check_theta(spec, theta);
  double sum = 0.0;
  for (const Configuration& config : enumerate(spec, clamp)) {
    sum += weight(spec, config, theta);
  }
  return std::log(sum);
}

std::vector<double> brute_force_expectation(
    const FamilySpec& spec, const Configuration& clamp,
    const ParamVector& theta,
    const std::function<std::vector<double>(const Configuration&)>& f) {
  check_theta(spec, theta);
  double total = 0.0;
  std::vector<double> accum;
  for (const Configuration& config : enumerate(spec, clamp)) {
    const double w = weight(spec, config, theta);
    if (w == 0.0) continue;
    const std::vector<double> value = f(config);
    if (accum.empty()) accum.assign(value.size(), 0.0);
    if (value.size() != accum.size()) {
      throw SpecError("f returned vectors of differing lengths");
    }
    for (std::size_t j = 0; j < value.size(); ++j) {
      accum[j] += w * value[j];
    }
    total += w;
  }
  if (total == 0.0) {
    throw DegenerateClampError(
        "every configuration compatible with the clamp has zero weight");
  }
  if (!std::isfinite(total)) {
    throw SpecError("weights overflowed; the naive oracle does not apply");
  }
  for (double& a : accum) a /= total;
  return accum;
}

double mle_oracle_1d(const FamilySpec& spec, const Dataset& data,
                     const GridSpec& grid) {
  if (spec.stat_dim() != 1) {
    throw SpecError("the 1-d reference maximizer needs stat_dim 1");
  }
  if (grid.n_points < 3 || !(grid.hi > grid.lo)) {
    throw SpecError("grid needs at least 3 points and hi > lo");
  }

  const auto loglik = [&](double t) {
    return mean_log_likelihood(spec, data, ParamVector({t}));
  };
  const auto gradient = [&](double t) {
    return scalar_gradient(spec, data, ParamVector({t}));
  };

  const double width = (grid.hi - grid.lo) / (grid.n_points - 1);
  int best = 0;
  double best_value = -kInf;
  for (int i = 0; i < grid.n_points; ++i) {
    const double value = loglik(grid.lo + i * width);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  if (best == 0 || best == grid.n_points - 1) {
    throw NoInteriorMaximumError(
        "best grid point sits on the grid edge; no interior maximum");
  }

  double lo = grid.lo + (best - 1) * width;
  double hi = grid.lo + (best + 1) * width;
  double g_lo = gradient(lo);
  double g_hi = gradient(hi);
  if (!(g_lo >= 0.0 && g_hi <= 0.0)) {
    // The bracket around the best grid point should straddle the root of a
    // decreasing gradient; scan the whole grid before giving up.
    bool found = false;
    for (int i = 0; i + 1 < grid.n_points && !found; ++i) {
      const double a = grid.lo + i * width;
      const double b = a + width;
      const double ga = gradient(a);
      const double gb = gradient(b);
      if (ga >= 0.0 && gb <= 0.0) {
        lo = a;
        hi = b;
        g_lo = ga;
        g_hi = gb;
        found = true;
      }
    }
    if (!found) {
      throw NoInteriorMaximumError("gradient has no sign change on the grid");
    }
  }

  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double g_mid = gradient(mid);
    if (std::abs(g_mid) <= 1e-10) return mid;
    if (g_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-14 * std::max(1.0, std::abs(mid))) break;
  }
  return mid;
}

}  // namespace expfam::oracle
