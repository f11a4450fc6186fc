#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace expfam {

/// Modeling role of a variable. Conditioning variables are given on both
/// sides of every probability, observed variables appear in the data, and
/// hidden variables are never observed and are summed out.
enum class Role { Cond, Obs, Hid };

std::string_view to_string(Role role);
std::optional<Role> role_from_string(std::string_view text);

/// A named finite variable with an ordered list of symbol labels.
/// Symbols are referred to by index everywhere inside the library; labels
/// only matter at the text boundary.
struct VariableSpec {
  std::string name;
  Role role = Role::Obs;
  std::vector<std::string> symbols;

  std::size_t cardinality() const { return symbols.size(); }
  std::optional<int> symbol_index(std::string_view label) const;
};

}  // namespace expfam
