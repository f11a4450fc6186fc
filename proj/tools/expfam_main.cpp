#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "expfam/expfam.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw expfam::Error("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& out_path, const std::string& doc) {
  if (out_path.empty()) {
    std::cout << doc;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw expfam::Error("cannot write file '" + out_path + "'");
  out << doc;
}

expfam::ParamVector parse_theta(const std::string& arg, std::size_t d) {
  if (arg.empty()) return expfam::ParamVector::zeros(d);
  std::vector<double> values;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= arg.size(); ++i) {
    if (i != arg.size() && arg[i] != ',') continue;
    const std::string field = arg.substr(start, i - start);
    start = i + 1;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size()) {
      throw expfam::ValueError("--theta: '" + field + "' is not a number");
    }
    values.push_back(v);
  }
  if (values.size() != d) {
    throw expfam::ValueError("--theta: expected " + std::to_string(d) +
                             " entries, got " + std::to_string(values.size()));
  }
  return expfam::ParamVector(std::move(values));
}

std::string brief(double value) {
  std::ostringstream out;
  out.precision(6);
  out << value;
  return out.str();
}

struct ThetaArgs {
  std::string model, data, out, theta;
};

void add_theta_flags(CLI::App* cmd, ThetaArgs* args, bool with_data = true) {
  cmd->add_option("--model", args->model, "Model document (JSON)")->required();
  if (with_data) {
    cmd->add_option("--data", args->data, "Observation table (CSV)")
        ->required();
  }
  cmd->add_option("--out", args->out, "Output path (default: stdout)");
}

int run(int argc, char** argv) {
  CLI::App app{
      "Exact maximum-likelihood learning in discrete exponential families"};
  app.require_subcommand(1);

  auto* fit_cmd =
      app.add_subcommand("fit", "Maximize the dataset log-likelihood");
  ThetaArgs fit_args;
  double fit_tol = 1e-8;
  int fit_max_iters = 5000;
  std::uint64_t fit_seed = 42;
  std::string fit_init;
  add_theta_flags(fit_cmd, &fit_args);
  fit_cmd->add_option("--tol", fit_tol, "Gradient infinity-norm tolerance")
      ->capture_default_str();
  fit_cmd->add_option("--max-iters", fit_max_iters, "Iteration budget")
      ->capture_default_str();
  fit_cmd->add_option("--seed", fit_seed, "Seed for random initialization")
      ->capture_default_str();
  fit_cmd
      ->add_option("--init", fit_init,
                   "Initial iterate (default: random for families with "
                   "hidden variables, zeros otherwise)")
      ->check(CLI::IsMember({"zeros", "random"}));

  auto* eval_cmd = app.add_subcommand(
      "eval", "Per-row and mean log-likelihood at a fixed theta");
  ThetaArgs eval_args;
  add_theta_flags(eval_cmd, &eval_args);
  eval_cmd->add_option("--theta", eval_args.theta,
                       "Comma-separated parameter values (default: zeros)");

  auto* mm_cmd = app.add_subcommand(
      "check-mm", "Both sides of the moment-matching condition at theta");
  ThetaArgs mm_args;
  add_theta_flags(mm_cmd, &mm_args);
  mm_cmd->add_option("--theta", mm_args.theta,
                     "Comma-separated parameter values (default: zeros)");

  auto* gc_cmd = app.add_subcommand(
      "gradcheck", "Analytic gradient against central differences at theta");
  ThetaArgs gc_args;
  double gc_eps = 1e-5;
  add_theta_flags(gc_cmd, &gc_args);
  gc_cmd->add_option("--theta", gc_args.theta,
                     "Comma-separated parameter values (default: zeros)");
  gc_cmd->add_option("--eps", gc_eps, "Central-difference step")
      ->capture_default_str();

  auto* info_cmd = app.add_subcommand("info", "Describe a model document");
  ThetaArgs info_args;
  add_theta_flags(info_cmd, &info_args, /*with_data=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (fit_cmd->parsed()) {
    const expfam::FamilySpec spec =
        expfam::io::parse_model(read_file(fit_args.model));
    const expfam::Dataset data =
        expfam::io::parse_dataset(read_file(fit_args.data), spec);

    expfam::FitOptions options;
    options.tol_grad_inf = fit_tol;
    options.max_iters = fit_max_iters;
    expfam::InitSpec init;
    const bool random_default = spec.has_role(expfam::Role::Hid);
    const bool random = fit_init.empty() ? random_default
                                         : fit_init == "random";
    init.kind = random ? expfam::InitKind::Random : expfam::InitKind::Zeros;
    init.seed = fit_seed;
    options.init = init;

    const expfam::FitResult result = expfam::fit(spec, data, options);
    emit(fit_args.out, expfam::io::write_fit_result(result));
    std::cerr << "fit: " << to_string(result.status) << " after "
              << result.iterations << " steps, loglik "
              << brief(result.loglik_final()) << ", |grad|_inf "
              << brief(result.grad_inf_final) << ", mm residual "
              << brief(result.mm_residual_inf) << "\n";
    return result.status == expfam::FitStatus::Diverging ? 2 : 0;
  }

  if (eval_cmd->parsed()) {
    const expfam::FamilySpec spec =
        expfam::io::parse_model(read_file(eval_args.model));
    const expfam::Dataset data =
        expfam::io::parse_dataset(read_file(eval_args.data), spec);
    const expfam::ParamVector theta =
        parse_theta(eval_args.theta, spec.stat_dim());

    std::ostringstream doc;
    doc << "{\n  \"per_row\": [\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double lp = expfam::log_prob_datum(spec, data.row(i), theta);
      doc << "    {\"row\": " << (i + 1)
          << ", \"log_prob\": " << expfam::io::format_real_json(lp) << "}"
          << (i + 1 < data.size() ? "," : "") << "\n";
    }
    const double mean = expfam::log_likelihood(spec, data, theta);
    doc << "  ],\n  \"mean_log_likelihood\": "
        << expfam::io::format_real_json(mean) << "\n}\n";
    emit(eval_args.out, doc.str());
    std::cerr << "eval: " << data.size() << " rows, mean log-likelihood "
              << brief(mean) << "\n";
    return 0;
  }

  if (mm_cmd->parsed()) {
    const expfam::FamilySpec spec =
        expfam::io::parse_model(read_file(mm_args.model));
    const expfam::Dataset data =
        expfam::io::parse_dataset(read_file(mm_args.data), spec);
    const expfam::ParamVector theta =
        parse_theta(mm_args.theta, spec.stat_dim());
    const expfam::MomentReport report =
        expfam::moment_report(spec, data, theta);
    emit(mm_args.out, expfam::io::write_moment_report(report));
    std::cerr << "check-mm: residual_inf " << brief(report.residual_inf)
              << "\n";
    return 0;
  }

  if (gc_cmd->parsed()) {
    const expfam::FamilySpec spec =
        expfam::io::parse_model(read_file(gc_args.model));
    const expfam::Dataset data =
        expfam::io::parse_dataset(read_file(gc_args.data), spec);
    const expfam::ParamVector theta =
        parse_theta(gc_args.theta, spec.stat_dim());
    const double worst = expfam::gradient_check(spec, data, theta, gc_eps);

    std::ostringstream doc;
    doc << "{\n  \"eps\": " << expfam::io::format_real_json(gc_eps)
        << ",\n  \"max_rel_error\": " << expfam::io::format_real_json(worst)
        << "\n}\n";
    emit(gc_args.out, doc.str());
    std::cerr << "gradcheck: max relative error " << brief(worst) << "\n";
    return 0;
  }

  // info
  const expfam::FamilySpec spec =
      expfam::io::parse_model(read_file(info_args.model));
  std::ostringstream doc;
  doc << "{\n";
  doc << "  \"name\": \"" << spec.name() << "\",\n";
  doc << "  \"variant\": \"" << to_string(spec.variant()) << "\",\n";
  doc << "  \"stat_dim\": " << spec.stat_dim() << ",\n";
  doc << "  \"num_variables\": " << spec.num_variables() << ",\n";
  doc << "  \"num_configurations\": " << spec.num_configurations() << ",\n";
  doc << "  \"variables\": [\n";
  for (std::size_t v = 0; v < spec.num_variables(); ++v) {
    const expfam::VariableSpec& var = spec.variable(v);
    doc << "    {\"name\": \"" << var.name << "\", \"role\": \""
        << to_string(var.role) << "\", \"cardinality\": " << var.cardinality()
        << "}" << (v + 1 < spec.num_variables() ? "," : "") << "\n";
  }
  doc << "  ]\n}\n";
  emit(info_args.out, doc.str());
  std::cerr << "info: " << to_string(spec.variant()) << " family, "
            << spec.num_configurations() << " configurations\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const expfam::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
