#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "expfam/expfam.hpp"
#include "support/random_instances.hpp"
#include "support/specimens.hpp"

using namespace expfam;
using doctest::Approx;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

const Variant kAllVariants[] = {Variant::Plain, Variant::Conditional,
                                Variant::Hidden, Variant::ConditionalHidden};

std::function<std::vector<double>(const Configuration&)> stats_of(
    const FamilySpec& spec) {
  return [&spec](const Configuration& c) {
    auto t = spec.stats(c);
    return std::vector<double>(t.begin(), t.end());
  };
}

}  // namespace

TEST_CASE("naive log partition on the binary family") {
  auto spec = specimens::bernoulli();
  CHECK(oracle::naive_log_partition(spec, spec.empty_clamp(),
                                    ParamVector::zeros(1)) ==
        Approx(0.69314718055994529).epsilon(1e-15));
  CHECK(oracle::naive_log_partition(spec, spec.empty_clamp(),
                                    ParamVector(std::vector<double>{1.0})) ==
        Approx(1.3132616875182228).epsilon(1e-15));
  CHECK(oracle::naive_log_partition(spec, make_clamp(spec, {{"x", "1"}}),
                                    ParamVector(std::vector<double>{2.0})) ==
        Approx(2.0).epsilon(1e-15));
}

TEST_CASE("the naive evaluator overflows where the stabilized one cannot") {
  auto spec = specimens::bernoulli();
  auto theta = ParamVector(std::vector<double>{1000.0});
  CHECK(oracle::naive_log_partition(spec, spec.empty_clamp(), theta) == kInf);
  CHECK(log_partition(spec, spec.empty_clamp(), theta) == 1000.0);
}

TEST_CASE("naive and stabilized log partitions agree at moderate weights") {
  for (Variant variant : kAllVariants) {
    for (unsigned seed = 1; seed <= 8; ++seed) {
      auto spec = random_instances::random_family(variant, seed);
      auto theta = random_instances::random_theta(spec.stat_dim(), seed + 5);
      auto data = random_instances::random_dataset(spec, 3, seed + 9);
      auto clamps = std::vector<Configuration>{spec.empty_clamp()};
      for (size_t i = 0; i < data.size(); ++i) clamps.push_back(data.row(i));
      for (const auto& clamp : clamps) {
        double a = oracle::naive_log_partition(spec, clamp, theta);
        double b = log_partition(spec, clamp, theta);
        CHECK(a == Approx(b).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("brute-force expectations of the sufficient statistic") {
  auto bern = specimens::bernoulli();
  auto e0 = oracle::brute_force_expectation(bern, bern.empty_clamp(),
                                            ParamVector::zeros(1),
                                            stats_of(bern));
  CHECK(e0[0] == Approx(0.5).epsilon(1e-15));

  auto e1 = oracle::brute_force_expectation(
      bern, bern.empty_clamp(), ParamVector(std::vector<double>{std::log(3.0)}),
      stats_of(bern));
  CHECK(e1[0] == Approx(0.75).epsilon(1e-14));

  auto mix = specimens::mixture();
  auto em = oracle::brute_force_expectation(mix, make_clamp(mix, {{"x", "1"}}),
                                            ParamVector::zeros(3),
                                            stats_of(mix));
  REQUIRE(em.size() == 3);
  CHECK(em[0] == Approx(0.5).epsilon(1e-15));
  CHECK(em[1] == Approx(0.5).epsilon(1e-15));
  CHECK(em[2] == Approx(0.5).epsilon(1e-15));

  auto logi = specimens::logistic();
  auto el = oracle::brute_force_expectation(
      logi, make_clamp(logi, {{"x", "0"}}),
      ParamVector(std::vector<double>{1.0, 0.0}), stats_of(logi));
  CHECK(el[0] == 0.0);
  CHECK(el[1] == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("brute-force expectations arbitrate the analytic gradient") {
  for (Variant variant : kAllVariants) {
    for (unsigned seed = 2; seed <= 7; ++seed) {
      auto spec = random_instances::random_family(variant, seed);
      auto theta = random_instances::random_theta(spec.stat_dim(), seed + 23);
      auto expected = oracle::brute_force_expectation(
          spec, spec.empty_clamp(), theta, stats_of(spec));
      auto grad = grad_log_partition(spec, spec.empty_clamp(), theta);
      REQUIRE(expected.size() == grad.size());
      for (size_t j = 0; j < grad.size(); ++j) {
        CHECK(grad[j] == Approx(expected[j]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("the brute-force oracle rejects a degenerate clamp") {
  auto spec = specimens::forbidden_one();
  CHECK_THROWS_AS(
      oracle::brute_force_expectation(spec, make_clamp(spec, {{"x", "1"}}),
                                      ParamVector::zeros(1), stats_of(spec)),
      DegenerateClampError);
}

TEST_CASE("the scalar reference maximizer lands on the closed form") {
  auto spec = specimens::bernoulli();
  auto data = specimens::coin_dataset(spec);
  double theta_star = oracle::mle_oracle_1d(spec, data);
  CHECK(std::abs(theta_star - std::log(3.0)) <= 1e-8);
}

TEST_CASE("the reference maximizer and fit agree") {
  auto spec = specimens::bernoulli();
  auto data = specimens::coin_dataset(spec);
  double theta_star = oracle::mle_oracle_1d(spec, data);
  auto result = fit(spec, data);
  REQUIRE(result.status == FitStatus::Converged);
  CHECK(std::abs(result.theta_hat[0] - theta_star) <= 1e-5);
}

TEST_CASE("a boundary maximizer is refused by the reference maximizer") {
  auto spec = specimens::bernoulli();
  auto data = specimens::all_ones_dataset(spec);
  CHECK_THROWS_AS(oracle::mle_oracle_1d(spec, data), NoInteriorMaximumError);
}

TEST_CASE("the reference maximizer validates its inputs") {
  auto logi = specimens::logistic();
  auto data = specimens::logistic_dataset(logi);
  CHECK_THROWS_AS(oracle::mle_oracle_1d(logi, data), SpecError);

  auto bern = specimens::bernoulli();
  auto coin = specimens::coin_dataset(bern);
  CHECK_THROWS_AS(oracle::mle_oracle_1d(bern, coin, {0.0, 10.0, 2}), SpecError);
  CHECK_THROWS_AS(oracle::mle_oracle_1d(bern, coin, {5.0, -5.0, 101}),
                  SpecError);
}
