#include "expfam/params.hpp"

#include <cmath>

#include "expfam/error.hpp"

namespace expfam {

ParamVector::ParamVector(std::vector<double> values)
    : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw SpecError("parameter vector holds a non-finite entry");
    }
  }
}

}  // namespace expfam
