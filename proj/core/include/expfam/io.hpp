#pragma once

#include <string>
#include <string_view>

#include "expfam/dataset.hpp"
#include "expfam/family.hpp"
#include "expfam/learning.hpp"

namespace expfam::io {

/// Reads a model document (JSON). Throws ParseError on malformed text and
/// SchemaError on a well-formed document that violates the model schema;
/// messages name the offending key path or configuration.
FamilySpec parse_model(std::string_view text);

/// Writes a model document that parse_model maps back to an identical
/// family (same tables, bit for bit).
std::string serialize_model(const FamilySpec& spec);

/// Reads an observation table (CSV). The header must name exactly the
/// conditioning and observed variables, in any order. Errors carry
/// one-based line numbers.
Dataset parse_dataset(std::string_view text, const FamilySpec& spec);

/// Writes a fit-result document (JSON) with reals at 17 significant digits,
/// so every number re-parses to the same double.
std::string write_fit_result(const FitResult& result);

std::string write_moment_report(const MomentReport& report);

/// 17-significant-digit decimal form of a double; round-trip exact.
std::string format_real(double value);

/// format_real wrapped for a JSON value position: finite values print bare,
/// non-finite ones print as the strings "inf", "-inf", "nan".
std::string format_real_json(double value);

}  // namespace expfam::io
