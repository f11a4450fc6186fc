#pragma once

#include <compare>
#include <cstddef>
#include <vector>

namespace expfam {

/// An assignment of symbol indices to variables, by variable position.
/// A slot holding kUnset marks an unassigned variable. A configuration with
/// every slot assigned is full; anything else is partial and acts as a clamp.
class Configuration {
 public:
  static constexpr int kUnset = -1;

  Configuration() = default;
  explicit Configuration(std::size_t num_variables)
      : slots_(num_variables, kUnset) {}
  explicit Configuration(std::vector<int> slots) : slots_(std::move(slots)) {}

  std::size_t num_variables() const { return slots_.size(); }
  bool has(std::size_t var) const { return slots_[var] != kUnset; }
  int get(std::size_t var) const { return slots_[var]; }
  void set(std::size_t var, int symbol) { slots_[var] = symbol; }
  void unset(std::size_t var) { slots_[var] = kUnset; }

  bool is_full() const;
  std::size_t assigned_count() const;

  /// True when every slot assigned in clamp holds the same value here.
  bool agrees_with(const Configuration& clamp) const;

  const std::vector<int>& slots() const { return slots_; }

  friend auto operator<=>(const Configuration&, const Configuration&) = default;

 private:
  std::vector<int> slots_;
};

}  // namespace expfam
