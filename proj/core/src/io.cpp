#include "expfam/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "expfam/error.hpp"

namespace expfam::io {

namespace {

using nlohmann::json;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool valid_label(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' &&
        c != '.' && c != '-') {
      return false;
    }
  }
  return true;
}

std::string json_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (char c : text) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string describe(const std::vector<VariableSpec>& vars,
                     const Configuration& config) {
  std::string out = "{";
  bool first = true;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (!config.has(v)) continue;
    if (!first) out += ", ";
    first = false;
    out += vars[v].name + "=" + vars[v].symbols[config.get(v)];
  }
  return out + "}";
}

const json& require_key(const json& obj, const std::string& key,
                        const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaError(where + ": missing key '" + key + "'");
  }
  return *it;
}

void reject_unknown_keys(const json& obj,
                         std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) {
      if (key == a) known = true;
    }
    if (!known) throw SchemaError(where + ": unknown key '" + key + "'");
  }
}

std::vector<VariableSpec> parse_variables(const json& node) {
  if (!node.is_array() || node.empty()) {
    throw SchemaError("variables: must be a non-empty array");
  }
  std::vector<VariableSpec> vars;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string where = "variables[" + std::to_string(i) + "]";
    const json& entry = node[i];
    if (!entry.is_object()) throw SchemaError(where + ": must be an object");
    reject_unknown_keys(entry, {"name", "role", "symbols"}, where);

    VariableSpec var;
    const json& name = require_key(entry, "name", where);
    if (!name.is_string() || !valid_label(name.get<std::string>())) {
      throw SchemaError(where + ".name: must match [A-Za-z0-9_.-]+");
    }
    var.name = name.get<std::string>();

    const json& role = require_key(entry, "role", where);
    const auto parsed_role =
        role.is_string() ? role_from_string(role.get<std::string>())
                         : std::nullopt;
    if (!parsed_role) {
      throw SchemaError(where + ".role: expected \"cond\", \"obs\" or \"hid\"");
    }
    var.role = *parsed_role;

    const json& symbols = require_key(entry, "symbols", where);
    if (!symbols.is_array() || symbols.empty()) {
      throw SchemaError(where + ".symbols: must be a non-empty array");
    }
    for (const json& s : symbols) {
      if (!s.is_string() || !valid_label(s.get<std::string>())) {
        throw SchemaError(where + ".symbols: labels must match [A-Za-z0-9_.-]+");
      }
      var.symbols.push_back(s.get<std::string>());
    }
    vars.push_back(std::move(var));
  }
  return vars;
}

Configuration parse_assign(const json& node,
                           const std::vector<VariableSpec>& vars,
                           const std::string& where) {
  if (!node.is_object()) throw SchemaError(where + ": must be an object");
  Configuration config(vars.size());
  for (const auto& [key, value] : node.items()) {
    std::size_t v = vars.size();
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i].name == key) v = i;
    }
    if (v == vars.size()) {
      throw SchemaError(where + ": unknown variable '" + key + "'");
    }
    if (!value.is_string()) {
      throw SchemaError(where + ": symbol for '" + key + "' must be a string");
    }
    const auto s = vars[v].symbol_index(value.get<std::string>());
    if (!s) {
      throw SchemaError(where + ": variable '" + key + "' has no symbol '" +
                        value.get<std::string>() + "'");
    }
    config.set(v, *s);
  }
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (!config.has(v)) {
      throw SchemaError(where + ": misses variable '" + vars[v].name + "'");
    }
  }
  return config;
}

std::size_t rank_of(const Configuration& full,
                    const std::vector<std::size_t>& strides) {
  std::size_t flat = 0;
  for (std::size_t v = 0; v < strides.size(); ++v) {
    flat += static_cast<std::size_t>(full.get(v)) * strides[v];
  }
  return flat;
}

std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
  while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t' ||
                   text[e - 1] == '\r')) {
    --e;
  }
  return std::string(text.substr(b, e - b));
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return fields;
}

}  // namespace

FamilySpec parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("model: top level must be an object");
  reject_unknown_keys(doc, {"name", "variables", "stat_dim", "statistics",
                            "log_h"},
                      "model");

  std::string name;
  if (const auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw SchemaError("name: must be a string");
    name = it->get<std::string>();
  }

  const std::vector<VariableSpec> vars =
      parse_variables(require_key(doc, "variables", "model"));

  const json& sd = require_key(doc, "stat_dim", "model");
  if (!sd.is_number_integer() || sd.get<long long>() < 1) {
    throw SchemaError("stat_dim: must be a positive integer");
  }
  const int stat_dim = sd.get<int>();

  std::size_t num_configs = 1;
  for (const VariableSpec& var : vars) {
    if (num_configs > 10'000'000 / var.cardinality()) {
      throw SchemaError("model: configuration space too large for exact enumeration");
    }
    num_configs *= var.cardinality();
  }
  std::vector<std::size_t> strides(vars.size(), 1);
  for (std::size_t v = vars.size(); v-- > 1;) {
    strides[v - 1] = strides[v] * vars[v].cardinality();
  }

  std::vector<double> stats(num_configs * static_cast<std::size_t>(stat_dim),
                            0.0);
  std::vector<char> seen(num_configs, 0);

  const json& statistics = require_key(doc, "statistics", "model");
  if (!statistics.is_array()) {
    throw SchemaError("statistics: must be an array");
  }
  for (std::size_t i = 0; i < statistics.size(); ++i) {
    const std::string where = "statistics[" + std::to_string(i) + "]";
    const json& entry = statistics[i];
    if (!entry.is_object()) throw SchemaError(where + ": must be an object");
    reject_unknown_keys(entry, {"assign", "t"}, where);
    const Configuration config =
        parse_assign(require_key(entry, "assign", where + ".assign"), vars,
                     where + ".assign");
    const std::size_t flat = rank_of(config, strides);
    if (seen[flat]) {
      throw SchemaError(where + ": duplicate entry for " +
                        describe(vars, config));
    }
    seen[flat] = 1;
    const json& t = require_key(entry, "t", where);
    if (!t.is_array() || t.size() != static_cast<std::size_t>(stat_dim)) {
      throw SchemaError(where + ".t: expected " + std::to_string(stat_dim) +
                        " entries");
    }
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (!t[j].is_number() || !std::isfinite(t[j].get<double>())) {
        throw SchemaError(where + ".t: entries must be finite numbers");
      }
      stats[flat * static_cast<std::size_t>(stat_dim) + j] =
          t[j].get<double>();
    }
  }
  for (std::size_t flat = 0; flat < num_configs; ++flat) {
    if (!seen[flat]) {
      Configuration config(vars.size());
      std::size_t rest = flat;
      for (std::size_t v = 0; v < vars.size(); ++v) {
        config.set(v, static_cast<int>(rest / strides[v]));
        rest %= strides[v];
      }
      throw SchemaError("statistics: missing entry for " +
                        describe(vars, config));
    }
  }

  std::vector<double> log_h(num_configs, 0.0);
  if (const auto it = doc.find("log_h"); it != doc.end()) {
    if (!it->is_array()) throw SchemaError("log_h: must be an array");
    std::vector<char> seen_h(num_configs, 0);
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "log_h[" + std::to_string(i) + "]";
      const json& entry = (*it)[i];
      if (!entry.is_object()) throw SchemaError(where + ": must be an object");
      reject_unknown_keys(entry, {"assign", "value"}, where);
      const Configuration config =
          parse_assign(require_key(entry, "assign", where + ".assign"), vars,
                       where + ".assign");
      const std::size_t flat = rank_of(config, strides);
      if (seen_h[flat]) {
        throw SchemaError(where + ": duplicate entry for " +
                          describe(vars, config));
      }
      seen_h[flat] = 1;
      const json& value = require_key(entry, "value", where);
      if (value.is_string() && value.get<std::string>() == "-inf") {
        log_h[flat] = kNegInf;
      } else if (value.is_number() && std::isfinite(value.get<double>())) {
        log_h[flat] = value.get<double>();
      } else {
        throw SchemaError(where +
                          ".value: must be a finite number or \"-inf\"");
      }
    }
  }

  try {
    return FamilySpec(vars, stat_dim, std::move(stats), std::move(log_h),
                      std::move(name));
  } catch (const SpecError& e) {
    throw SchemaError(std::string("model: ") + e.what());
  }
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string format_real_json(double value) {
  if (std::isnan(value)) return "\"nan\"";
  if (value == std::numeric_limits<double>::infinity()) return "\"inf\"";
  if (value == kNegInf) return "\"-inf\"";
  return format_real(value);
}

std::string serialize_model(const FamilySpec& spec) {
  std::ostringstream out;
  out << "{\n";
  if (!spec.name().empty()) {
    out << "  \"name\": \"" << json_escape(spec.name()) << "\",\n";
  }
  out << "  \"variables\": [\n";
  for (std::size_t v = 0; v < spec.num_variables(); ++v) {
    const VariableSpec& var = spec.variable(v);
    out << "    {\"name\": \"" << json_escape(var.name) << "\", \"role\": \""
        << to_string(var.role) << "\", \"symbols\": [";
    for (std::size_t s = 0; s < var.symbols.size(); ++s) {
      if (s > 0) out << ", ";
      out << "\"" << json_escape(var.symbols[s]) << "\"";
    }
    out << "]}" << (v + 1 < spec.num_variables() ? "," : "") << "\n";
  }
  out << "  ],\n";
  out << "  \"stat_dim\": " << spec.stat_dim() << ",\n";

  const auto write_assign = [&](const Configuration& config) {
    out << "{";
    for (std::size_t v = 0; v < spec.num_variables(); ++v) {
      if (v > 0) out << ", ";
      out << "\"" << json_escape(spec.variable(v).name) << "\": \""
          << json_escape(spec.variable(v).symbols[config.get(v)]) << "\"";
    }
    out << "}";
  };

  out << "  \"statistics\": [\n";
  const std::size_t n = spec.num_configurations();
  for (std::size_t flat = 0; flat < n; ++flat) {
    const Configuration config = spec.configuration_at(flat);
    out << "    {\"assign\": ";
    write_assign(config);
    out << ", \"t\": [";
    const std::span<const double> t = spec.stats(flat);
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (j > 0) out << ", ";
      out << format_real(t[j]);
    }
    out << "]}" << (flat + 1 < n ? "," : "") << "\n";
  }
  out << "  ]";

  bool any_log_h = false;
  for (std::size_t flat = 0; flat < n; ++flat) {
    if (spec.log_h(flat) != 0.0) any_log_h = true;
  }
  if (any_log_h) {
    out << ",\n  \"log_h\": [\n";
    bool first = true;
    for (std::size_t flat = 0; flat < n; ++flat) {
      if (spec.log_h(flat) == 0.0) continue;
      if (!first) out << ",\n";
      first = false;
      out << "    {\"assign\": ";
      write_assign(spec.configuration_at(flat));
      out << ", \"value\": " << format_real_json(spec.log_h(flat)) << "}";
    }
    out << "\n  ]";
  }
  out << "\n}\n";
  return out.str();
}

Dataset parse_dataset(std::string_view text, const FamilySpec& spec) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      lines.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }

  std::size_t header_line = 0;
  while (header_line < lines.size() && trim(lines[header_line]).empty()) {
    ++header_line;
  }
  if (header_line == lines.size()) {
    throw SchemaError("dataset: missing header line");
  }

  const std::vector<std::string> header = split_fields(lines[header_line]);
  std::vector<std::size_t> columns;
  std::vector<char> covered(spec.num_variables(), 0);
  for (const std::string& field : header) {
    const auto v = spec.variable_index(field);
    if (!v) {
      throw SchemaError("dataset header names unknown variable '" + field +
                        "'");
    }
    if (spec.variable(*v).role == Role::Hid) {
      throw SchemaError("dataset header names hidden variable '" + field +
                        "'");
    }
    if (covered[*v]) {
      throw SchemaError("dataset header repeats variable '" + field + "'");
    }
    covered[*v] = 1;
    columns.push_back(*v);
  }
  for (std::size_t v = 0; v < spec.num_variables(); ++v) {
    if (spec.variable(v).role != Role::Hid && !covered[v]) {
      throw SchemaError("dataset header misses variable '" +
                        spec.variable(v).name + "'");
    }
  }

  std::vector<Configuration> rows;
  for (std::size_t i = header_line + 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const std::string line_no = std::to_string(i + 1);
    const std::vector<std::string> fields = split_fields(lines[i]);
    if (fields.size() != columns.size()) {
      throw ValueError("line " + line_no + ": expected " +
                       std::to_string(columns.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    Configuration row(spec.num_variables());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const VariableSpec& var = spec.variable(columns[c]);
      const auto s = var.symbol_index(fields[c]);
      if (!s) {
        throw ValueError("line " + line_no + ": unknown symbol '" + fields[c] +
                         "' for variable '" + var.name + "'");
      }
      row.set(columns[c], *s);
    }
    rows.push_back(std::move(row));
  }
  return Dataset(spec, std::move(rows));
}

namespace {

void write_vector(std::ostringstream& out, const std::vector<double>& values) {
  out << "[";
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (j > 0) out << ", ";
    out << format_real_json(values[j]);
  }
  out << "]";
}

void write_report_body(std::ostringstream& out, const MomentReport& report,
                       const std::string& indent) {
  out << indent << "\"data_side\": ";
  write_vector(out, report.data_side);
  out << ",\n" << indent << "\"model_side\": ";
  write_vector(out, report.model_side);
  out << ",\n"
      << indent << "\"residual_inf\": " << format_real_json(report.residual_inf)
      << "\n";
}

}  // namespace

std::string write_fit_result(const FitResult& result) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"status\": \"" << to_string(result.status) << "\",\n";
  out << "  \"theta_hat\": ";
  write_vector(out, result.theta_hat.values());
  out << ",\n";
  out << "  \"iterations\": " << result.iterations << ",\n";
  out << "  \"loglik_final\": " << format_real_json(result.loglik_final())
      << ",\n";
  out << "  \"grad_inf_final\": " << format_real_json(result.grad_inf_final)
      << ",\n";
  out << "  \"mm_residual_inf\": " << format_real_json(result.mm_residual_inf)
      << ",\n";
  out << "  \"moment_report\": {\n";
  write_report_body(out, result.moment_report, "    ");
  out << "  }\n";
  out << "}\n";
  return out.str();
}

std::string write_moment_report(const MomentReport& report) {
  std::ostringstream out;
  out << "{\n";
  write_report_body(out, report, "  ");
  out << "}\n";
  return out.str();
}

}  // namespace expfam::io
