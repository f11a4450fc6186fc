#include "expfam/dataset.hpp"

#include "expfam/error.hpp"

namespace expfam {

Dataset::Dataset(const FamilySpec& spec, std::vector<Configuration> rows)
    : rows_(std::move(rows)) {
  if (rows_.empty()) throw EmptyDatasetError("dataset has no rows");
  for (const Configuration& row : rows_) {
    spec.validate_row(row);
  }
}

}  // namespace expfam
