#include "expfam/family.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "expfam/error.hpp"

namespace expfam {

namespace {

constexpr std::size_t kMaxConfigurations = 10'000'000;
constexpr std::size_t kMaxTableEntries = 50'000'000;

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Plain:
      return "plain";
    case Variant::Conditional:
      return "conditional";
    case Variant::Hidden:
      return "hidden";
    case Variant::ConditionalHidden:
      return "conditional_hidden";
  }
  return "?";
}

FamilySpec::FamilySpec(std::vector<VariableSpec> variables, int stat_dim,
                       std::vector<double> stats, std::vector<double> log_h,
                       std::string name)
    : variables_(std::move(variables)),
      stat_dim_(stat_dim),
      stats_(std::move(stats)),
      log_h_(std::move(log_h)),
      name_(std::move(name)) {
  if (variables_.empty()) throw SpecError("family needs at least one variable");
  if (stat_dim_ < 1) throw SpecError("stat_dim must be at least 1");

  std::set<std::string> names;
  for (const VariableSpec& var : variables_) {
    if (var.name.empty()) throw SpecError("variable with empty name");
    if (!names.insert(var.name).second) {
      throw SpecError("duplicate variable name '" + var.name + "'");
    }
    if (var.symbols.empty()) {
      throw SpecError("variable '" + var.name + "' has no symbols");
    }
    std::set<std::string> labels;
    for (const std::string& s : var.symbols) {
      if (!labels.insert(s).second) {
        throw SpecError("variable '" + var.name + "' repeats symbol '" + s +
                        "'");
      }
    }
  }

  num_configs_ = 1;
  for (const VariableSpec& var : variables_) {
    if (num_configs_ > kMaxConfigurations / var.cardinality()) {
      throw SpecError("configuration space too large for exact enumeration");
    }
    num_configs_ *= var.cardinality();
  }
  if (num_configs_ * static_cast<std::size_t>(stat_dim_) > kMaxTableEntries) {
    throw SpecError("statistic table too large for exact enumeration");
  }

  strides_.assign(variables_.size(), 1);
  for (std::size_t v = variables_.size(); v-- > 1;) {
    strides_[v - 1] = strides_[v] * variables_[v].cardinality();
  }

  for (std::size_t v = 0; v < variables_.size(); ++v) {
    switch (variables_[v].role) {
      case Role::Cond:
        cond_vars_.push_back(v);
        break;
      case Role::Obs:
        obs_vars_.push_back(v);
        break;
      case Role::Hid:
        hid_vars_.push_back(v);
        break;
    }
  }
  if (obs_vars_.empty()) {
    throw SpecError("family needs at least one observed variable");
  }

  if (stats_.size() != num_configs_ * static_cast<std::size_t>(stat_dim_)) {
    throw SpecError("statistic table has wrong size");
  }
  if (log_h_.empty()) log_h_.assign(num_configs_, 0.0);
  if (log_h_.size() != num_configs_) {
    throw SpecError("log_h table has wrong size");
  }
  for (double t : stats_) {
    if (!std::isfinite(t)) {
      throw SpecError("statistic table holds a non-finite entry");
    }
  }
  bool any_allowed = false;
  for (double lh : log_h_) {
    if (std::isnan(lh) || lh == std::numeric_limits<double>::infinity()) {
      throw SpecError("log_h entries must be finite or -infinity");
    }
    if (lh != -std::numeric_limits<double>::infinity()) any_allowed = true;
  }
  if (!any_allowed) {
    throw SpecError("every configuration is forbidden by log_h");
  }
}

FamilySpec FamilySpec::tabulate(
    std::vector<VariableSpec> variables, int stat_dim,
    const std::function<std::vector<double>(const Configuration&)>& stat_fn,
    const std::function<double(const Configuration&)>& log_h_fn,
    std::string name) {
  if (variables.empty()) throw SpecError("family needs at least one variable");
  if (stat_dim < 1) throw SpecError("stat_dim must be at least 1");
  std::size_t num_configs = 1;
  for (const VariableSpec& var : variables) {
    if (var.symbols.empty()) {
      throw SpecError("variable '" + var.name + "' has no symbols");
    }
    if (num_configs > kMaxConfigurations / var.cardinality()) {
      throw SpecError("configuration space too large for exact enumeration");
    }
    num_configs *= var.cardinality();
  }

  std::vector<double> stats;
  stats.reserve(num_configs * static_cast<std::size_t>(stat_dim));
  std::vector<double> log_h;
  log_h.reserve(num_configs);

  // Odometer over all variables, least significant last, matching the
  // enumeration order the tables are indexed by.
  std::vector<int> digits(variables.size(), 0);
  for (;;) {
    Configuration config{digits};
    std::vector<double> t = stat_fn(config);
    if (t.size() != static_cast<std::size_t>(stat_dim)) {
      throw SpecError("stat_fn returned a vector of wrong length");
    }
    stats.insert(stats.end(), t.begin(), t.end());
    log_h.push_back(log_h_fn ? log_h_fn(config) : 0.0);

    std::size_t k = variables.size();
    for (;;) {
      if (k == 0) {
        return FamilySpec(std::move(variables), stat_dim, std::move(stats),
                          std::move(log_h), std::move(name));
      }
      --k;
      if (digits[k] + 1 < static_cast<int>(variables[k].cardinality())) {
        ++digits[k];
        break;
      }
      digits[k] = 0;
    }
  }
}

std::optional<std::size_t> FamilySpec::variable_index(
    std::string_view name) const {
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    if (variables_[v].name == name) return v;
  }
  return std::nullopt;
}

Variant FamilySpec::variant() const {
  const bool cond = !cond_vars_.empty();
  const bool hid = !hid_vars_.empty();
  if (cond && hid) return Variant::ConditionalHidden;
  if (cond) return Variant::Conditional;
  if (hid) return Variant::Hidden;
  return Variant::Plain;
}

bool FamilySpec::has_role(Role r) const {
  return !variables_with_role(r).empty();
}

const std::vector<std::size_t>& FamilySpec::variables_with_role(Role r) const {
  switch (r) {
    case Role::Cond:
      return cond_vars_;
    case Role::Hid:
      return hid_vars_;
    case Role::Obs:
    default:
      return obs_vars_;
  }
}

std::size_t FamilySpec::flat_index(const Configuration& full) const {
  validate_clamp(full);
  if (!full.is_full()) {
    throw SpecError("flat_index needs a full configuration");
  }
  std::size_t flat = 0;
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    flat += static_cast<std::size_t>(full.get(v)) * strides_[v];
  }
  return flat;
}

Configuration FamilySpec::configuration_at(std::size_t flat) const {
  if (flat >= num_configs_) throw SpecError("configuration rank out of range");
  Configuration config(num_variables());
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    config.set(v, static_cast<int>(flat / strides_[v]));
    flat %= strides_[v];
  }
  return config;
}

Configuration FamilySpec::restricted_to(const Configuration& config,
                                        Role r) const {
  Configuration out(num_variables());
  for (std::size_t v : variables_with_role(r)) {
    if (config.has(v)) out.set(v, config.get(v));
  }
  return out;
}

void FamilySpec::validate_clamp(const Configuration& clamp) const {
  if (clamp.num_variables() != num_variables()) {
    throw SpecError("clamp refers to a different variable set");
  }
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    if (!clamp.has(v)) continue;
    const int s = clamp.get(v);
    if (s < 0 || s >= static_cast<int>(variables_[v].cardinality())) {
      throw SpecError("clamp assigns variable '" + variables_[v].name +
                      "' an out-of-range symbol index");
    }
  }
}

void FamilySpec::validate_row(const Configuration& row) const {
  validate_clamp(row);
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    const bool assigned = row.has(v);
    if (variables_[v].role == Role::Hid) {
      if (assigned) {
        throw RowSchemaError("row assigns hidden variable '" +
                             variables_[v].name + "'");
      }
    } else if (!assigned) {
      throw RowSchemaError("row misses variable '" + variables_[v].name + "'");
    }
  }
}

Configuration make_clamp(
    const FamilySpec& spec,
    const std::vector<std::pair<std::string_view, std::string_view>>&
        assignments) {
  Configuration clamp(spec.num_variables());
  for (const auto& [var_name, label] : assignments) {
    const auto v = spec.variable_index(var_name);
    if (!v) {
      throw SpecError("unknown variable '" + std::string(var_name) + "'");
    }
    const auto s = spec.variable(*v).symbol_index(label);
    if (!s) {
      throw SpecError("variable '" + std::string(var_name) +
                      "' has no symbol '" + std::string(label) + "'");
    }
    if (clamp.has(*v)) {
      throw SpecError("variable '" + std::string(var_name) +
                      "' assigned twice");
    }
    clamp.set(*v, *s);
  }
  return clamp;
}

Configuration make_clamp(
    const FamilySpec& spec,
    std::initializer_list<std::pair<std::string_view, std::string_view>>
        assignments) {
  return make_clamp(
      spec, std::vector<std::pair<std::string_view, std::string_view>>(
                assignments));
}

std::vector<Configuration> enumerate(const FamilySpec& spec,
                                     const Configuration& clamp) {
  std::vector<Configuration> out;
  for_each_compatible(spec, clamp, [&](std::size_t flat) {
    out.push_back(spec.configuration_at(flat));
  });
  return out;
}

std::vector<Configuration> enumerate(const FamilySpec& spec) {
  return enumerate(spec, spec.empty_clamp());
}

}  // namespace expfam
