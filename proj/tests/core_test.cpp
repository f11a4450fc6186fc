#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "expfam/expfam.hpp"
#include "support/specimens.hpp"

using namespace expfam;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("roles round-trip through their names") {
  for (Role r : {Role::Cond, Role::Obs, Role::Hid}) {
    CHECK(role_from_string(to_string(r)) == r);
  }
  CHECK_FALSE(role_from_string("latent").has_value());
}

TEST_CASE("variable spec reports cardinality and symbol indices") {
  VariableSpec v{"x", Role::Obs, {"a", "b", "c"}};
  CHECK(v.cardinality() == 3);
  CHECK(v.symbol_index("b") == 1);
  CHECK_FALSE(v.symbol_index("d").has_value());
}

TEST_CASE("configuration slots, agreement, and comparison") {
  Configuration c(3);
  CHECK(c.num_variables() == 3);
  CHECK(c.assigned_count() == 0);
  CHECK_FALSE(c.is_full());

  c.set(0, 1);
  c.set(2, 0);
  CHECK(c.has(0));
  CHECK_FALSE(c.has(1));
  CHECK(c.get(2) == 0);
  CHECK(c.assigned_count() == 2);

  Configuration clamp(3);
  clamp.set(0, 1);
  CHECK(c.agrees_with(clamp));
  clamp.set(0, 0);
  CHECK_FALSE(c.agrees_with(clamp));

  c.set(1, 2);
  CHECK(c.is_full());
  c.unset(1);
  CHECK_FALSE(c.is_full());

  CHECK(Configuration(std::vector<int>{1, 0}) ==
        Configuration(std::vector<int>{1, 0}));
  CHECK(Configuration(std::vector<int>{0, 0}) <
        Configuration(std::vector<int>{0, 1}));
}

TEST_CASE("variant follows the roles present") {
  CHECK(specimens::bernoulli().variant() == Variant::Plain);
  CHECK(specimens::logistic().variant() == Variant::Conditional);
  CHECK(specimens::mixture().variant() == Variant::Hidden);
  CHECK(specimens::cond_hidden().variant() == Variant::ConditionalHidden);
}

TEST_CASE("enumeration runs lexicographically with the last variable fastest") {
  auto spec = specimens::logistic();
  REQUIRE(spec.num_configurations() == 4);

  auto all = enumerate(spec);
  REQUIRE(all.size() == 4);
  CHECK(all[0].slots() == std::vector<int>{0, 0});
  CHECK(all[1].slots() == std::vector<int>{0, 1});
  CHECK(all[2].slots() == std::vector<int>{1, 0});
  CHECK(all[3].slots() == std::vector<int>{1, 1});

  for (size_t flat = 0; flat < spec.num_configurations(); ++flat) {
    CHECK(spec.flat_index(spec.configuration_at(flat)) == flat);
  }
}

TEST_CASE("enumerate honours clamps and preserves order") {
  auto spec = specimens::cond_hidden();
  auto clamp = make_clamp(spec, {{"x", "1"}});
  auto subset = enumerate(spec, clamp);
  REQUIRE(subset.size() == 4);
  for (const auto& config : subset) {
    CHECK(config.agrees_with(clamp));
    CHECK(config.is_full());
  }
  // Same configurations, in the same order, as filtering the full list.
  size_t k = 0;
  for (const auto& config : enumerate(spec)) {
    if (!config.agrees_with(clamp)) continue;
    CHECK(config == subset[k]);
    ++k;
  }
  CHECK(k == subset.size());
}

TEST_CASE("for_each_compatible visits exactly the flat indices of enumerate") {
  auto spec = specimens::mixture();
  auto clamp = make_clamp(spec, {{"u", "0"}});
  std::vector<size_t> visited;
  for_each_compatible(spec, clamp, [&](size_t flat) { visited.push_back(flat); });
  auto listed = enumerate(spec, clamp);
  REQUIRE(visited.size() == listed.size());
  for (size_t i = 0; i < visited.size(); ++i) {
    CHECK(spec.configuration_at(visited[i]) == listed[i]);
  }
}

TEST_CASE("restricted_to keeps only the requested role") {
  auto spec = specimens::cond_hidden();
  auto row = make_clamp(spec, {{"z", "1"}, {"x", "0"}});
  auto cond = spec.restricted_to(row, Role::Cond);
  CHECK(cond.has(0));
  CHECK(cond.get(0) == 1);
  CHECK_FALSE(cond.has(1));
  CHECK_FALSE(cond.has(2));
  auto obs = spec.restricted_to(row, Role::Obs);
  CHECK_FALSE(obs.has(0));
  CHECK(obs.get(1) == 0);
}

TEST_CASE("make_clamp rejects unknown names and symbols") {
  auto spec = specimens::bernoulli();
  CHECK_THROWS_AS(make_clamp(spec, {{"y", "1"}}), SpecError);
  CHECK_THROWS_AS(make_clamp(spec, {{"x", "2"}}), SpecError);
  CHECK_THROWS_WITH_AS(make_clamp(spec, {{"x", "1"}, {"x", "0"}}),
                       doctest::Contains("x"), SpecError);
}

TEST_CASE("validate_clamp checks arity and symbol range") {
  auto spec = specimens::logistic();
  CHECK_THROWS_AS(spec.validate_clamp(Configuration(1)), SpecError);
  Configuration bad(2);
  bad.set(0, 5);
  CHECK_THROWS_AS(spec.validate_clamp(bad), SpecError);
  CHECK_NOTHROW(spec.validate_clamp(spec.empty_clamp()));
}

TEST_CASE("validate_row wants conditioning and observed assigned, hidden not") {
  auto spec = specimens::cond_hidden();

  auto good = make_clamp(spec, {{"z", "0"}, {"x", "1"}});
  CHECK_NOTHROW(spec.validate_row(good));

  auto missing_obs = make_clamp(spec, {{"z", "0"}});
  CHECK_THROWS_AS(spec.validate_row(missing_obs), RowSchemaError);

  auto hidden_set = make_clamp(spec, {{"z", "0"}, {"x", "1"}, {"u", "0"}});
  CHECK_THROWS_AS(spec.validate_row(hidden_set), RowSchemaError);
}

TEST_CASE("family construction validates its inputs") {
  std::vector<VariableSpec> vars{{"x", Role::Obs, {"0", "1"}}};
  std::vector<double> stats{0.0, 1.0};

  CHECK_THROWS_AS(FamilySpec({}, 1, {}, {}), SpecError);
  CHECK_THROWS_AS(FamilySpec(vars, 0, {}, {}), SpecError);
  CHECK_THROWS_AS(FamilySpec(vars, 1, {0.0}, {}), SpecError);
  CHECK_THROWS_AS(FamilySpec(vars, 1, {0.0, kInf}, {}), SpecError);
  CHECK_THROWS_AS(FamilySpec(vars, 1, stats, {0.0}), SpecError);
  CHECK_THROWS_AS(FamilySpec(vars, 1, stats, {0.0, kInf}), SpecError);
  CHECK_THROWS_AS(FamilySpec(vars, 1, stats, {0.0, std::nan("")}), SpecError);
  CHECK_THROWS_AS(FamilySpec(vars, 1, stats, {-kInf, -kInf}), SpecError);
  CHECK_NOTHROW(FamilySpec(vars, 1, stats, {-kInf, 0.0}));

  std::vector<VariableSpec> dup_names{{"x", Role::Obs, {"0", "1"}},
                                      {"x", Role::Obs, {"0", "1"}}};
  CHECK_THROWS_AS(FamilySpec(dup_names, 1, std::vector<double>(4, 0.0), {}),
                  SpecError);

  std::vector<VariableSpec> dup_symbols{{"x", Role::Obs, {"a", "a"}}};
  CHECK_THROWS_AS(FamilySpec(dup_symbols, 1, stats, {}), SpecError);

  std::vector<VariableSpec> no_obs{{"x", Role::Cond, {"0", "1"}}};
  CHECK_THROWS_AS(FamilySpec(no_obs, 1, stats, {}), SpecError);

  std::vector<VariableSpec> empty_symbols{{"x", Role::Obs, {}}};
  CHECK_THROWS_AS(FamilySpec(empty_symbols, 1, stats, {}), SpecError);
}

TEST_CASE("tabulate matches hand-built dense tables") {
  auto spec = specimens::logistic();
  // Enumeration order (x, y): (0,0), (0,1), (1,0), (1,1).
  std::vector<double> expected{0, 0, 0, 1, 0, 0, 1, 1};
  for (size_t flat = 0; flat < spec.num_configurations(); ++flat) {
    auto t = spec.stats(flat);
    CHECK(t[0] == expected[2 * flat]);
    CHECK(t[1] == expected[2 * flat + 1]);
    CHECK(spec.log_h(flat) == 0.0);
  }
}

TEST_CASE("forbidden configurations carry log h of -infinity") {
  auto spec = specimens::forbidden_one();
  CHECK(spec.log_h(0) == 0.0);
  CHECK(spec.log_h(1) == -kInf);
}

TEST_CASE("parameter vectors must be finite") {
  CHECK_THROWS_AS(ParamVector(std::vector<double>{1.0, kInf}), SpecError);
  CHECK_THROWS_AS(ParamVector(std::vector<double>{std::nan("")}), SpecError);
  auto zeros = ParamVector::zeros(3);
  CHECK(zeros.size() == 3);
  CHECK(zeros[2] == 0.0);
}

TEST_CASE("datasets refuse to be empty or malformed") {
  auto spec = specimens::bernoulli();
  CHECK_THROWS_AS(Dataset(spec, {}), EmptyDatasetError);
  CHECK_THROWS_AS(Dataset(spec, {spec.empty_clamp()}), RowSchemaError);
  auto data = specimens::coin_dataset(spec);
  CHECK(data.size() == 4);
  CHECK(data.row(3).get(0) == 0);
}
