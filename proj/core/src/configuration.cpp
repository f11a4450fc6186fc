#include "expfam/configuration.hpp"

namespace expfam {

bool Configuration::is_full() const {
  for (int s : slots_) {
    if (s == kUnset) return false;
  }
  return true;
}

std::size_t Configuration::assigned_count() const {
  std::size_t n = 0;
  for (int s : slots_) {
    if (s != kUnset) ++n;
  }
  return n;
}

bool Configuration::agrees_with(const Configuration& clamp) const {
  for (std::size_t v = 0; v < slots_.size(); ++v) {
    if (clamp.has(v) && slots_[v] != clamp.get(v)) return false;
  }
  return true;
}

}  // namespace expfam
