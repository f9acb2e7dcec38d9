#include "dphase/weight_optimizer.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "dphase/csv.hpp"
#include "dphase/errors.hpp"

namespace dphase {

WeightFamily::WeightFamily(std::vector<NamedWeight> members) : members_(std::move(members)) {
  if (members_.empty()) throw DomainError("weight family must not be empty");
  for (const auto& m : members_) {
    if (m.weight.mesh_ptr() != members_.front().weight.mesh_ptr())
      throw DomainError("weight " + m.name + " lives on a different mesh");
    const double b = m.weight.max_abs();
    if (!std::isfinite(b)) throw DomainError("weight " + m.name + " is not bounded");
    bound_ = std::max(bound_, b);
  }
}

QuotientResult lambda_star_of(const GridFunction& w, const ProblemSpec& spec_template,
                              const QuotientConfig& cfg,
                              const std::optional<GridFunction>& warm_start) {
  return minimize_r1(spec_template.with_weight(w), cfg, warm_start);
}

WeightOptimum optimize(const WeightFamily& family, const ProblemSpec& spec_template,
                       const QuotientConfig& cfg, bool warm_start) {
  WeightOptimum best{"", std::numeric_limits<double>::infinity(), 0, {}};
  std::optional<GridFunction> previous;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& m = family.members()[i];
    auto res = lambda_star_of(m.weight, spec_template, cfg, warm_start ? previous : std::nullopt);
    best.table.push_back({m.name, res.value, res.iterations, res.restarts_used});
    if (res.value < best.value) {
      best.value = res.value;
      best.name = m.name;
      best.index = i;
    }
    previous = res.minimizer;
  }
  return best;
}

void write_weight_table_csv(std::ostream& out, const std::vector<WeightRow>& table) {
  out << "weight_name,lambda_star,iterations,restarts_used\n";
  for (const auto& row : table)
    out << row.name << ',' << format_double(row.lambda_star) << ',' << row.iterations << ','
        << row.restarts_used << '\n';
}

}  // namespace dphase
