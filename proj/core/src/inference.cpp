#include "expfam/inference.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "expfam/error.hpp"

namespace expfam {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_theta(const FamilySpec& spec, const ParamVector& theta) {
  if (theta.size() != static_cast<std::size_t>(spec.stat_dim())) {
    throw SpecError("theta length does not match stat_dim");
  }
}

// One pass over the configurations compatible with a clamp: the unnormalized
// log weight s = log h + theta . T of every allowed one, in enumeration
// order, plus the log partition value from max-subtracted summation. Both
// distribution() and grad_log_partition() normalize with exactly these
// values, which keeps their outputs consistent term for term.
struct ClampScan {
  double log_partition = kNegInf;
  std::vector<std::pair<std::size_t, double>> terms;  // (flat rank, s)
};

ClampScan scan(const FamilySpec& spec, const Configuration& clamp,
               const ParamVector& theta) {
  check_theta(spec, theta);
  ClampScan out;
  double max_s = kNegInf;
  for_each_compatible(spec, clamp, [&](std::size_t flat) {
    const double lh = spec.log_h(flat);
    if (lh == kNegInf) return;
    const double s = lh + dot(theta.span(), spec.stats(flat));
    out.terms.emplace_back(flat, s);
    if (s > max_s) max_s = s;
  });
  if (out.terms.empty()) return out;
  double sum = 0.0;
  for (const auto& [flat, s] : out.terms) sum += std::exp(s - max_s);
  out.log_partition = max_s + std::log(sum);
  return out;
}

}  // namespace

double log_partition(const FamilySpec& spec, const Configuration& clamp,
                     const ParamVector& theta) {
  return scan(spec, clamp, theta).log_partition;
}

std::vector<double> grad_log_partition(const FamilySpec& spec,
                                       const Configuration& clamp,
                                       const ParamVector& theta) {
  const ClampScan sc = scan(spec, clamp, theta);
  if (sc.log_partition == kNegInf) {
    throw DegenerateClampError(
        "every configuration compatible with the clamp is forbidden");
  }
  std::vector<double> grad(spec.stat_dim(), 0.0);
  for (const auto& [flat, s] : sc.terms) {
    const double p = std::exp(s - sc.log_partition);
    const std::span<const double> t = spec.stats(flat);
    for (std::size_t j = 0; j < grad.size(); ++j) grad[j] += p * t[j];
  }
  return grad;
}

DiscreteDistribution distribution(const FamilySpec& spec,
                                  const Configuration& clamp,
                                  const ParamVector& theta) {
  const ClampScan sc = scan(spec, clamp, theta);
  if (sc.log_partition == kNegInf) {
    throw DegenerateClampError(
        "every configuration compatible with the clamp is forbidden");
  }
  DiscreteDistribution dist;
  dist.support.reserve(sc.terms.size());
  dist.log_probs.reserve(sc.terms.size());
  for (const auto& [flat, s] : sc.terms) {
    dist.support.push_back(spec.configuration_at(flat));
    dist.log_probs.push_back(s - sc.log_partition);
  }
  return dist;
}

double log_prob_datum(const FamilySpec& spec, const Configuration& row,
                      const ParamVector& theta) {
  spec.validate_row(row);
  // Numerator: everything the row fixes stays clamped, hidden variables are
  // summed out. Denominator: only the conditioning variables stay clamped.
  // Each variant's textbook objective is this difference.
  const double clamped = log_partition(spec, row, theta);
  if (clamped == kNegInf) return kNegInf;
  const double normalizer =
      log_partition(spec, spec.restricted_to(row, Role::Cond), theta);
  return clamped - normalizer;
}

}  // namespace expfam
