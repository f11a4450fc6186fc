#pragma once

#include <stdexcept>

namespace expfam {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid family specification, clamp, or parameter vector.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Every configuration compatible with a clamp is forbidden, so the
/// clamped distribution does not exist.
class DegenerateClampError : public Error {
 public:
  using Error::Error;
};

/// A dataset row assigns a hidden variable or misses an observed or
/// conditioning variable.
class RowSchemaError : public Error {
 public:
  using Error::Error;
};

/// A dataset with zero rows was supplied where at least one is required.
class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

/// The 1-d reference maximizer found no gradient sign change on its grid.
class NoInteriorMaximumError : public Error {
 public:
  using Error::Error;
};

/// Input text is not syntactically valid.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input is syntactically valid but violates the document schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A well-formed field holds an unusable value (for example an unknown
/// symbol label in a dataset row).
class ValueError : public Error {
 public:
  using Error::Error;
};

}  // namespace expfam
