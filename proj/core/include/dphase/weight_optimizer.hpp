#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dphase/rayleigh_solver.hpp"

namespace dphase {

struct NamedWeight {
  std::string name;
  GridFunction weight;
};

/// Finite, bounded family of weights on a common mesh.
class WeightFamily {
 public:
  /// Throws DomainError when empty, when a weight is not finite or when the
  /// meshes differ.
  explicit WeightFamily(std::vector<NamedWeight> members);

  const std::vector<NamedWeight>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  /// max over the family of max |nodal value|.
  double bound() const { return bound_; }

 private:
  std::vector<NamedWeight> members_;
  double bound_ = 0.0;
};

/// lambda*(w): minimize_r1 with `w` substituted into the template.
QuotientResult lambda_star_of(const GridFunction& w, const ProblemSpec& spec_template,
                              const QuotientConfig& cfg,
                              const std::optional<GridFunction>& warm_start = std::nullopt);

struct WeightRow {
  std::string name;
  double lambda_star;
  int iterations;
  int restarts_used;
};

struct WeightOptimum {
  std::string name;
  double value;
  std::size_t index;
  std::vector<WeightRow> table;  // family order
};

/// Evaluates lambda* on every member and returns the argmin (first listed on
/// ties). Each solve is warm-started from the previous member's minimizer.
WeightOptimum optimize(const WeightFamily& family, const ProblemSpec& spec_template,
                       const QuotientConfig& cfg, bool warm_start = true);

/// Writes `weight_name,lambda_star,iterations,restarts_used`.
void write_weight_table_csv(std::ostream& out, const std::vector<WeightRow>& table);

}  // namespace dphase
