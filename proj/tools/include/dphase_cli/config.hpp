#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dphase/rayleigh_solver.hpp"
#include "dphase/weight_optimizer.hpp"

namespace dphase::cli {

/// Either `const <number>` or `expr "<expression>"`. A bare number is read as
/// a constant.
struct FieldValue {
  bool is_expression = false;
  double constant = 0.0;
  std::string expression;

  std::string describe() const;
};

/// A built-in kernel name or `expr "<expression in x, y, xi, p>"`.
struct KernelValue {
  std::string builtin;  // empty for expression kernels
  std::string expression;

  std::string describe() const;
};

struct RunConfig {
  std::vector<double> domain{0.0, 1.0};
  int mesh_x = 0;  // 0 picks the per-dimension default
  int mesh_y = 0;
  KernelValue phi{"power", {}};
  KernelValue psi{"power", {}};
  KernelValue theta{"power", {}};
  FieldValue p1{false, 2.0, {}};
  FieldValue p2{false, 5.0, {}};
  FieldValue p3{false, 3.5, {}};
  double r = 3.0;
  double s = 4.0;
  FieldValue weight{false, 0.0, {}};
  QuotientConfig solver;
  std::string label = "default";

  /// Resolved `key = value` lines, sorted by key.
  std::vector<std::string> echo() const;
};

/// Parses the line-based `section.key = value` format. Throws ParseError with
/// the line number on anything it does not understand.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Applies a `--mesh n[,m]` override.
void apply_mesh_override(RunConfig& cfg, const std::string& spec);

/// Pieces of the problem built from a config.
struct Problem {
  Domain domain;
  MeshPtr mesh;
  KernelSpec phi;
  KernelSpec psi;
  KernelSpec theta;
  GridFunction weight;
  PowerPair rs;

  /// ProblemSpec::create; throws DomainError when validation fails.
  ProblemSpec spec() const;
};

Problem build_problem(const RunConfig& cfg);

ExponentField make_field(const Domain& domain, const FieldValue& v);
GridFunction make_weight(const MeshPtr& mesh, const FieldValue& v);

/// One `name = const v` or `name = expr "..."` per line; `#` starts a comment.
std::vector<std::pair<std::string, FieldValue>> parse_weight_file(const std::string& text);
WeightFamily load_weight_family(const std::filesystem::path& path, const MeshPtr& mesh);

}  // namespace dphase::cli
