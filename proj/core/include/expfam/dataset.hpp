#pragma once

#include <cstddef>
#include <vector>

#include "expfam/configuration.hpp"
#include "expfam/family.hpp"

namespace expfam {

/// An ordered collection of observation rows. Every row assigns exactly the
/// conditioning and observed variables of the family it was validated
/// against; hidden variables stay unassigned. At least one row is required.
class Dataset {
 public:
  /// Throws RowSchemaError on a malformed row and EmptyDatasetError when
  /// rows is empty.
  Dataset(const FamilySpec& spec, std::vector<Configuration> rows);

  std::size_t size() const { return rows_.size(); }
  const Configuration& row(std::size_t i) const { return rows_[i]; }
  const std::vector<Configuration>& rows() const { return rows_; }

 private:
  std::vector<Configuration> rows_;
};

}  // namespace expfam
