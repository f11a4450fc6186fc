#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace expfam {

/// Natural parameter vector. Construction rejects non-finite entries, so a
/// ParamVector is always usable in the log-domain arithmetic downstream.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::vector<double> values);

  static ParamVector zeros(std::size_t d) {
    return ParamVector(std::vector<double>(d, 0.0));
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::span<const double> span() const { return values_; }

  friend bool operator==(const ParamVector&, const ParamVector&) = default;

 private:
  std::vector<double> values_;
};

}  // namespace expfam
