#include "dphase_cli/commands.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dphase/csv.hpp"
#include "dphase/errors.hpp"

namespace dphase::cli {
namespace fs = std::filesystem;
namespace {

// Collects files in memory and writes them together at the end.
class OutputSet {
 public:
  OutputSet(const Options& opt, const std::string& command, const RunConfig& cfg)
      : dir_(opt.out / command / cfg.label) {
    std::ostringstream m;
    m << "command = " << command << "\n";
    m << "config = " << opt.config.generic_string() << "\n";
    manifest_ = m.str();
  }

  void note(const std::string& key, const std::string& value) {
    manifest_ += key + " = " + value + "\n";
  }

  std::ostream& file(const std::string& name) {
    files_.emplace_back(name, std::ostringstream{});
    return files_.back().second;
  }

  fs::path commit(const RunConfig& cfg) {
    std::string names;
    for (const auto& f : files_) names += f.first + " ";
    names += "manifest.txt";
    auto& m = file("manifest.txt");
    m << manifest_;
    for (const auto& line : cfg.echo()) m << line << "\n";
    m << "files = " << names << "\n";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    for (const auto& [name, body] : files_) {
      std::ofstream f(dir_ / name, std::ios::binary);
      f << body.str();
      if (!f) throw Error("cannot write " + (dir_ / name).string());
    }
    return dir_;
  }

 private:
  fs::path dir_;
  std::string manifest_;
  // deque: file() hands out references that must survive later insertions
  std::deque<std::pair<std::string, std::ostringstream>> files_;
};

void write_histories(OutputSet& out, const std::string& prefix,
                     const std::vector<History>& histories) {
  for (std::size_t k = 0; k < histories.size(); ++k)
    write_history_csv(out.file(prefix + std::to_string(k) + ".csv"), histories[k]);
}

std::string describe_growth(const GrowthReport& g) {
  std::ostringstream s;
  s << (g.pass ? "pass" : "FAIL") << " (b = " << format_double(g.b_estimate)
    << ", a = " << format_double(g.a_estimate) << ")";
  if (g.approximate) s << " [derivative by finite differences]";
  return s.str();
}

std::string describe_ellipticity(const GrowthReport& g) {
  std::ostringstream s;
  s << (g.pass ? "pass" : "FAIL") << " (c = " << format_double(g.c_estimate) << ")";
  if (g.approximate) s << " [derivative by finite differences]";
  return s.str();
}

}  // namespace

RunConfig resolve(const Options& opt) {
  auto cfg = load_config(opt.config);
  if (opt.seed) cfg.solver.seed = *opt.seed;
  if (opt.mesh) apply_mesh_override(cfg, *opt.mesh);
  return cfg;
}

int cmd_validate(const Options& opt, std::ostream& log) {
  const auto cfg = resolve(opt);
  const auto prob = build_problem(cfg);
  bool ok = true;

  const auto structural = validate_problem(prob.phi, prob.psi, prob.theta, prob.weight, prob.rs);
  for (const auto& f : structural.failures) log << "FAIL " << f << "\n";
  for (const auto& n : structural.notes) log << "note " << n << "\n";
  if (structural.pass) log << "ordering, subcriticality, powers, weight: pass\n";
  ok = ok && structural.pass;

  const auto grid = SampleGrid::make(prob.domain);
  const std::pair<const char*, const KernelSpec*> kernels[] = {
      {"phi", &prob.phi}, {"psi", &prob.psi}, {"theta", &prob.theta}};
  for (const auto& [name, k] : kernels) {
    const auto g = validate_growth(*k, grid);
    const auto mode = k == &prob.theta ? EllipticityMode::value_only
                                       : EllipticityMode::value_and_derivative;
    const auto e = validate_ellipticity(*k, grid, mode);
    log << "growth " << name << ": " << describe_growth(g) << "\n";
    log << "ellipticity " << name << ": " << describe_ellipticity(e) << "\n";
    ok = ok && g.pass && e.pass;
  }

  // Not mandatory: the literal bound uses p1+, the variant p2+.
  const double p1_plus = prob.phi.exponent().p_plus();
  const double p2_plus = prob.psi.exponent().p_plus();
  for (const auto& [label, bound] :
       {std::pair{"p1+", p1_plus}, std::pair{"p2+", p2_plus}}) {
    const auto h = validate_h4(prob.phi, prob.psi, bound, grid);
    log << "energy bound with " << label << " = " << format_double(bound) << ": "
        << (h.pass ? "pass" : "warning") << " (margin " << format_double(h.h4_margin) << ")\n";
  }

  log << "result: " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? kOk : kFailure;
}

int cmd_thresholds(const Options& opt, std::ostream& log) {
  const auto cfg = resolve(opt);
  const auto spec = build_problem(cfg).spec();
  const auto star = minimize_r1(spec, cfg.solver);
  const auto lower = minimize_r2(spec, cfg.solver);

  OutputSet out(opt, "thresholds", cfg);
  auto& t = out.file("thresholds.csv");
  t << "lambda_star,lambda_lower,residual_star,residual_lower,iterations_star,iterations_lower\n";
  t << format_double(star.value) << ',' << format_double(lower.value) << ','
    << format_double(star.residual_norm) << ',' << format_double(lower.residual_norm) << ','
    << star.iterations << ',' << lower.iterations << "\n";
  write_csv(out.file("minimizer_star.csv"), star.minimizer);
  write_csv(out.file("minimizer_lower.csv"), lower.minimizer);
  write_histories(out, "history_star_", star.histories);
  write_histories(out, "history_lower_", lower.histories);
  const auto dir = out.commit(cfg);

  log << "lambda_star = " << format_double(star.value) << "\n";
  log << "lambda_lower = " << format_double(lower.value) << "\n";
  log << "written to " << dir.generic_string() << "\n";
  return kOk;
}

int cmd_solve(const Options& opt, double lambda, std::ostream& log) {
  if (!std::isfinite(lambda)) throw ParseError("--lambda must be finite");
  const auto cfg = resolve(opt);
  const auto spec = build_problem(cfg).spec();
  const auto star = minimize_r1(spec, cfg.solver);
  const auto lower = minimize_r2(spec, cfg.solver);
  const auto res = solve_at(lambda, spec, cfg.solver, star.minimizer);

  std::string region;
  bool consistent = true;
  std::optional<CertificateReport> cert;
  if (lambda < lower.value) {
    region = "below_lower";
    cert = certify_nonexistence(lambda, spec, cfg.solver, lower.value);
    // A converged nontrivial solution here would break lambda = r2(u) >= lambda_lower.
    consistent = res.status != EigenStatus::converged && cert->certified;
  } else if (lambda < star.value) {
    region = "indeterminate";
  } else {
    region = "eigenpair_expected";
    consistent = res.status == EigenStatus::converged;
  }

  OutputSet out(opt, "solve", cfg);
  out.note("lambda", format_double(lambda));
  auto& s = out.file("summary.csv");
  s << "lambda,status,region,residual_norm,r1,r2,objective,iterations,restarts_used,"
       "lambda_star,lambda_lower\n";
  s << format_double(lambda) << ',' << to_string(res.status) << ',' << region << ','
    << format_double(res.residual_norm) << ',' << format_double(res.r1_value) << ','
    << format_double(res.r2_value) << ',' << format_double(res.objective) << ','
    << res.iterations << ',' << res.restarts_used << ',' << format_double(star.value) << ','
    << format_double(lower.value) << "\n";
  write_csv(out.file("eigenfunction.csv"), res.u);
  write_energy_csv(out.file("energy.csv"), energies(res.u, spec), lambda);
  write_histories(out, "history_", res.histories);
  if (cert) out.file("certificate.txt") << cert->summary() << "\n";
  const auto dir = out.commit(cfg);

  log << "lambda = " << format_double(lambda) << " (" << region << ")\n";
  log << "lambda_star = " << format_double(star.value)
      << ", lambda_lower = " << format_double(lower.value) << "\n";
  log << "status = " << to_string(res.status) << ", residual = "
      << format_double(res.residual_norm) << "\n";
  if (cert) log << cert->summary() << "\n";
  log << "written to " << dir.generic_string() << "\n";
  if (!consistent) log << "status contradicts the region\n";
  return consistent ? kOk : kFailure;
}

int cmd_optimize_weight(const Options& opt, const fs::path& weights, std::ostream& log) {
  const auto cfg = resolve(opt);
  const auto spec = build_problem(cfg).spec();
  const auto family = load_weight_family(weights, spec.mesh_ptr());
  const auto best = optimize(family, spec, cfg.solver);

  OutputSet out(opt, "optimize-weight", cfg);
  out.note("weights", weights.generic_string());
  write_weight_table_csv(out.file("weights.csv"), best.table);
  out.file("winner.txt") << best.name << "\n";
  const auto dir = out.commit(cfg);

  for (const auto& row : best.table)
    log << row.name << ": lambda_star = " << format_double(row.lambda_star) << "\n";
  log << "winner: " << best.name << " (" << format_double(best.value) << ")\n";
  log << "written to " << dir.generic_string() << "\n";
  return kOk;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace dphase::cli
