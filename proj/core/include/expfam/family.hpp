#pragma once

#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "expfam/configuration.hpp"
#include "expfam/variable.hpp"

namespace expfam {

/// Which learning problem a family poses, determined by the roles present.
enum class Variant { Plain, Conditional, Hidden, ConditionalHidden };

std::string_view to_string(Variant v);

/// A discrete exponential family p(c) proportional to h(c) exp(theta . T(c))
/// over the full configurations of a finite variable set. The sufficient
/// statistic T and the base measure term log h are stored as dense tables in
/// enumeration order. log h may be -infinity, which forbids a configuration;
/// +infinity and NaN are rejected.
class FamilySpec {
 public:
  /// stats holds num_configurations() * stat_dim reals, row-major in
  /// enumeration order; log_h holds one value per configuration, or is empty
  /// for log h identically zero.
  FamilySpec(std::vector<VariableSpec> variables, int stat_dim,
             std::vector<double> stats, std::vector<double> log_h,
             std::string name = {});

  /// Builds the dense tables by evaluating callables on every full
  /// configuration. A missing log_h_fn means log h identically zero.
  static FamilySpec tabulate(
      std::vector<VariableSpec> variables, int stat_dim,
      const std::function<std::vector<double>(const Configuration&)>& stat_fn,
      const std::function<double(const Configuration&)>& log_h_fn = {},
      std::string name = {});

  std::size_t num_variables() const { return variables_.size(); }
  const VariableSpec& variable(std::size_t i) const { return variables_[i]; }
  const std::vector<VariableSpec>& variables() const { return variables_; }
  std::optional<std::size_t> variable_index(std::string_view name) const;
  std::size_t cardinality(std::size_t var) const {
    return variables_[var].cardinality();
  }

  int stat_dim() const { return stat_dim_; }
  std::size_t num_configurations() const { return num_configs_; }
  const std::string& name() const { return name_; }

  Variant variant() const;
  bool has_role(Role r) const;
  const std::vector<std::size_t>& variables_with_role(Role r) const;

  /// Mixed-radix rank of a full configuration. The first declared variable is
  /// the most significant digit, so ranks run in lexicographic order.
  std::size_t flat_index(const Configuration& full) const;
  Configuration configuration_at(std::size_t flat) const;
  std::size_t stride(std::size_t var) const { return strides_[var]; }

  std::span<const double> stats(std::size_t flat) const {
    return {stats_.data() + flat * static_cast<std::size_t>(stat_dim_),
            static_cast<std::size_t>(stat_dim_)};
  }
  std::span<const double> stats(const Configuration& full) const {
    return stats(flat_index(full));
  }
  double log_h(std::size_t flat) const { return log_h_[flat]; }
  double log_h(const Configuration& full) const {
    return log_h_[flat_index(full)];
  }

  Configuration empty_clamp() const { return Configuration(num_variables()); }

  /// Copy of config keeping only the slots of variables with role r.
  Configuration restricted_to(const Configuration& config, Role r) const;

  /// Throws SpecError unless clamp has one slot per variable and every
  /// assigned slot is in range.
  void validate_clamp(const Configuration& clamp) const;

  /// Throws RowSchemaError unless row assigns exactly the conditioning and
  /// observed variables (and no hidden ones).
  void validate_row(const Configuration& row) const;

 private:
  std::vector<VariableSpec> variables_;
  int stat_dim_ = 0;
  std::vector<double> stats_;
  std::vector<double> log_h_;
  std::string name_;
  std::vector<std::size_t> strides_;
  std::size_t num_configs_ = 0;
  std::vector<std::size_t> cond_vars_, obs_vars_, hid_vars_;
};

/// Builds a (partial) configuration from {variable, symbol} label pairs.
/// Throws SpecError on an unknown variable name or symbol label.
Configuration make_clamp(
    const FamilySpec& spec,
    std::initializer_list<std::pair<std::string_view, std::string_view>>
        assignments);
Configuration make_clamp(
    const FamilySpec& spec,
    const std::vector<std::pair<std::string_view, std::string_view>>&
        assignments);

/// Full configurations agreeing with clamp, in enumeration order.
std::vector<Configuration> enumerate(const FamilySpec& spec,
                                     const Configuration& clamp);
std::vector<Configuration> enumerate(const FamilySpec& spec);

/// Visits the flat index of every full configuration agreeing with clamp,
/// in enumeration order. This is the iteration primitive behind enumerate
/// and the inference routines.
template <typename Fn>
void for_each_compatible(const FamilySpec& spec, const Configuration& clamp,
                         Fn&& fn) {
  spec.validate_clamp(clamp);
  const std::size_t n = spec.num_variables();
  std::size_t base = 0;
  std::vector<std::size_t> free_vars;
  for (std::size_t v = 0; v < n; ++v) {
    if (clamp.has(v)) {
      base += static_cast<std::size_t>(clamp.get(v)) * spec.stride(v);
    } else {
      free_vars.push_back(v);
    }
  }
  std::vector<std::size_t> digits(free_vars.size(), 0);
  std::size_t flat = base;
  for (;;) {
    fn(flat);
    std::size_t k = free_vars.size();
    for (;;) {
      if (k == 0) return;
      --k;
      const std::size_t v = free_vars[k];
      if (digits[k] + 1 < spec.cardinality(v)) {
        ++digits[k];
        flat += spec.stride(v);
        break;
      }
      flat -= spec.stride(v) * digits[k];
      digits[k] = 0;
    }
  }
}

}  // namespace expfam
