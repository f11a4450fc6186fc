#pragma once

#include <functional>
#include <vector>

#include "expfam/configuration.hpp"
#include "expfam/dataset.hpp"
#include "expfam/family.hpp"
#include "expfam/params.hpp"

namespace expfam::oracle {

/// Literal log of the sum of h(c) exp(theta . T(c)) over the configurations
/// agreeing with clamp, accumulated in plain double arithmetic with no
/// stabilization. Overflow yields +infinity, which callers must treat as
/// "oracle not applicable here". Kept deliberately independent of the
/// stabilized routines so it can arbitrate them.
double naive_log_partition(const FamilySpec& spec, const Configuration& clamp,
                           const ParamVector& theta);

/// Expectation of an arbitrary vector function f under the clamped
/// conditional distribution, by direct weighted enumeration.
std::vector<double> brute_force_expectation(
    const FamilySpec& spec, const Configuration& clamp,
    const ParamVector& theta,
    const std::function<std::vector<double>(const Configuration&)>& f);

struct GridSpec {
  double lo = -10.0;
  double hi = 10.0;
  int n_points = 2001;
};

/// Reference maximizer for families with stat_dim 1: grid-scans the mean log
/// likelihood, then bisects the scalar gradient inside the bracket around the
/// best grid point until |gradient| <= 1e-10. Throws NoInteriorMaximumError
/// when the gradient never changes sign on the grid (boundary maximizer).
double mle_oracle_1d(const FamilySpec& spec, const Dataset& data,
                     const GridSpec& grid = {});

}  // namespace expfam::oracle
