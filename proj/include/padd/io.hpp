#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "padd/bundle.hpp"
#include "padd/concave_pricing.hpp"
#include "padd/equilibrium.hpp"
#include "padd/funcs.hpp"

namespace padd {

struct ProblemConfig {
  FunctionExpr value;
  FunctionExpr cost;
  BoxDomain domain;
  SolverConfig solver;
  /// seeds the sampled checks
  std::uint64_t seed = 0;
};

/// Missing "solver" or "seed" fall back to defaults; unknown keys are rejected.
/// Throws ParseError on malformed JSON, PreconditionError on invalid values.
ProblemConfig config_from_json(const Json& j);
Json to_json(const ProblemConfig& cfg);
ProblemConfig read_config(const std::filesystem::path& path);
/// Canonical text form: two-space indent plus trailing newline.
std::string dump_config(const ProblemConfig& cfg);

Json to_json(const EquilibriumOutcome& out);
EquilibriumOutcome outcome_from_json(const Json& j);
std::string outcome_csv_header(std::size_t dim);
std::string outcome_csv_row(const EquilibriumOutcome& out);

Json to_json(const OverfitReport& r);
/// header plus one row for the linear class and one for the augmented class
std::string overfit_csv(const OverfitReport& r);

/// 6 significant digits; -0 prints as 0.
std::string fmt(double x);
std::string fmt(std::span<const double> x);

/// Comma separated list of numbers, e.g. "1,2.5,3".
Vector parse_number_list(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace padd
