#include "expfam/variable.hpp"

namespace expfam {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Cond:
      return "cond";
    case Role::Obs:
      return "obs";
    case Role::Hid:
      return "hid";
  }
  return "?";
}

std::optional<Role> role_from_string(std::string_view text) {
  if (text == "cond") return Role::Cond;
  if (text == "obs") return Role::Obs;
  if (text == "hid") return Role::Hid;
  return std::nullopt;
}

std::optional<int> VariableSpec::symbol_index(std::string_view label) const {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

}  // namespace expfam
