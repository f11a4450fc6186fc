#pragma once

#include <vector>

#include "expfam/configuration.hpp"
#include "expfam/family.hpp"
#include "expfam/params.hpp"

namespace expfam {

/// A finite distribution over the full configurations compatible with some
/// clamp. Forbidden configurations (log h = -infinity) are excluded from the
/// support, so every stored log probability is finite.
struct DiscreteDistribution {
  std::vector<Configuration> support;
  std::vector<double> log_probs;

  std::size_t size() const { return support.size(); }
};

/// Clamped log partition function: log sum over the full configurations that
/// agree with clamp of h(c) exp(theta . T(c)), computed with max-subtraction
/// so it stays finite for any finite theta. Returns -infinity when every
/// compatible configuration is forbidden; that is a value, not an error.
double log_partition(const FamilySpec& spec, const Configuration& clamp,
                     const ParamVector& theta);

/// Gradient of log_partition in theta: the expectation of T under the
/// clamped conditional distribution. Throws DegenerateClampError when the
/// clamped distribution does not exist.
std::vector<double> grad_log_partition(const FamilySpec& spec,
                                       const Configuration& clamp,
                                       const ParamVector& theta);

/// The clamped conditional distribution itself. Throws DegenerateClampError
/// when every compatible configuration is forbidden.
DiscreteDistribution distribution(const FamilySpec& spec,
                                  const Configuration& clamp,
                                  const ParamVector& theta);

/// Log probability of one dataset row under the family's variant: the
/// fully-clamped log partition minus the log partition clamped at the
/// conditioning variables alone. Hidden variables are summed out by the
/// clamps themselves. Returns -infinity for a structurally forbidden row.
double log_prob_datum(const FamilySpec& spec, const Configuration& row,
                      const ParamVector& theta);

}  // namespace expfam
