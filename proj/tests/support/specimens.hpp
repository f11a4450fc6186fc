#pragma once

// Small hand-built families reused across the test suites, together with the
// canonical datasets that exercise them.  Everything here is tabulated from
// closed-form statistics so expected values can be derived independently.

#include <cmath>
#include <vector>

#include "expfam/expfam.hpp"

namespace specimens {

using namespace expfam;

/// One binary variable, T(x) = [x].  A(theta) = log(1 + e^theta).
inline FamilySpec bernoulli() {
  return FamilySpec::tabulate(
      {{"x", Role::Obs, {"0", "1"}}}, 1,
      [](const Configuration& c) { return std::vector<double>{double(c.get(0))}; },
      {}, "bernoulli");
}

/// Binary logistic regression: x conditioning, y observed, T = [x*y, y].
inline FamilySpec logistic() {
  return FamilySpec::tabulate(
      {{"x", Role::Cond, {"0", "1"}}, {"y", Role::Obs, {"0", "1"}}}, 2,
      [](const Configuration& c) {
        double x = c.get(0), y = c.get(1);
        return std::vector<double>{x * y, y};
      },
      {}, "logistic");
}

/// Two-component mixture: x observed, u hidden, T = [u, x*u, x*(1-u)].
inline FamilySpec mixture() {
  return FamilySpec::tabulate(
      {{"x", Role::Obs, {"0", "1"}}, {"u", Role::Hid, {"0", "1"}}}, 3,
      [](const Configuration& c) {
        double x = c.get(0), u = c.get(1);
        return std::vector<double>{u, x * u, x * (1 - u)};
      },
      {}, "mixture");
}

/// All three roles at once: z conditioning, x observed, u hidden,
/// T = [z*x, x*u, u].
inline FamilySpec cond_hidden() {
  return FamilySpec::tabulate(
      {{"z", Role::Cond, {"0", "1"}},
       {"x", Role::Obs, {"0", "1"}},
       {"u", Role::Hid, {"0", "1"}}},
      3,
      [](const Configuration& c) {
        double z = c.get(0), x = c.get(1), u = c.get(2);
        return std::vector<double>{z * x, x * u, u};
      },
      {}, "cond_hidden");
}

/// Bernoulli with the second symbol forbidden outright (h(x=1) = 0).
inline FamilySpec forbidden_one() {
  return FamilySpec::tabulate(
      {{"x", Role::Obs, {"0", "1"}}}, 1,
      [](const Configuration& c) { return std::vector<double>{double(c.get(0))}; },
      [](const Configuration& c) {
        return c.get(0) == 1 ? -std::numeric_limits<double>::infinity() : 0.0;
      },
      "forbidden_one");
}

/// Three heads, one tail.  MLE for bernoulli() is theta = ln 3.
inline Dataset coin_dataset(const FamilySpec& spec) {
  return Dataset(spec, {make_clamp(spec, {{"x", "1"}}),
                        make_clamp(spec, {{"x", "1"}}),
                        make_clamp(spec, {{"x", "1"}}),
                        make_clamp(spec, {{"x", "0"}})});
}

/// Every observation is heads; the likelihood has no interior maximum.
inline Dataset all_ones_dataset(const FamilySpec& spec) {
  return Dataset(spec, {make_clamp(spec, {{"x", "1"}}),
                        make_clamp(spec, {{"x", "1"}}),
                        make_clamp(spec, {{"x", "1"}})});
}

/// (x, y) pairs whose conditional MLE is theta = [ln 3, 0].
inline Dataset logistic_dataset(const FamilySpec& spec) {
  auto row = [&](const char* x, const char* y) {
    return make_clamp(spec, {{"x", x}, {"y", y}});
  };
  return Dataset(spec, {row("0", "0"), row("0", "1"), row("1", "1"),
                        row("1", "1"), row("1", "1"), row("1", "0")});
}

/// One observation of each symbol; theta = 0 is a stationary point.
inline Dataset mixture_dataset(const FamilySpec& spec) {
  return Dataset(spec, {make_clamp(spec, {{"x", "0"}}),
                        make_clamp(spec, {{"x", "1"}})});
}

/// Rows covering all four (z, x) cells, biased toward x = z.
inline Dataset cond_hidden_dataset(const FamilySpec& spec) {
  auto row = [&](const char* z, const char* x) {
    return make_clamp(spec, {{"z", z}, {"x", x}});
  };
  return Dataset(spec, {row("0", "0"), row("0", "0"), row("0", "1"),
                        row("1", "1"), row("1", "1"), row("1", "0")});
}

}  // namespace specimens
