#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dphase/errors.hpp"
#include "dphase_cli/commands.hpp"

using namespace dphase;
using namespace dphase::cli;
namespace fs = std::filesystem;

namespace {
const fs::path configs = DPHASE_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("dphase_test_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write(const fs::path& dir, const std::string& name, const std::string& body) {
  std::ofstream(dir / name) << body;
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(DPHASE_CLI_EXE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(R"cfg(
# comment
problem.domain = 0 2     # trailing comment
problem.mesh = 64
problem.phi = mean_curvature
problem.psi = expr "xi ^ (p - 2) * (1 + 0 * x)"
problem.p1 = expr "2 + 0.5 * x"
problem.p2 = 6
problem.weight = const -0.5
solver.seed = 7
solver.restarts = 3
solver.residual_tol = 1e-9
output.label = trial
)cfg");
  CHECK(c.domain == std::vector<double>{0.0, 2.0});
  CHECK(c.mesh_x == 64);
  CHECK(c.phi.builtin == "mean_curvature");
  CHECK(c.psi.builtin.empty());
  CHECK(c.psi.expression == "xi ^ (p - 2) * (1 + 0 * x)");
  CHECK(c.p1.is_expression);
  CHECK(c.p2.constant == 6.0);
  CHECK(c.weight.constant == -0.5);
  CHECK(c.solver.seed == 7);
  CHECK(c.solver.restarts == 3);
  CHECK(c.solver.residual_tol == 1e-9);
  CHECK(c.label == "trial");
  CHECK(c.p3.constant == 3.5);  // default

  const auto d = parse_config("problem.domain = 0 1 0 1\n");
  CHECK(d.mesh_x == 64);
  CHECK(d.mesh_y == 64);
  CHECK(parse_config("").mesh_x == 256);

  for (const char* bad : {"problem.r 3", "problem.q = 1", "problem.r = abc", "problem.r = 3\nproblem.r = 4",
                          "problem.p1 = expr 2 + x", "problem.p1 = expr \"xi\"", "problem.phi = laplace",
                          "problem.domain = 0 1 2", "solver.restarts = -1", "solver.restarts = 0",
                          "output.label = a/b", "problem.mesh = 3.5", "= 4", "problem.r ="})
    CHECK_THROWS_AS(parse_config(bad), ParseError);
}

TEST_CASE("echo and overrides") {
  auto c = parse_config("problem.domain = 0 1 0 2\nproblem.r = 3.25\n");
  apply_mesh_override(c, "12,7");
  CHECK(c.mesh_x == 12);
  CHECK(c.mesh_y == 7);
  CHECK_THROWS_AS(apply_mesh_override(c, "x"), ParseError);
  const auto lines = c.echo();
  CHECK(std::is_sorted(lines.begin(), lines.end()));
  CHECK(std::find(lines.begin(), lines.end(), "problem.r = 3.25") != lines.end());
  CHECK(std::find(lines.begin(), lines.end(), "problem.mesh = 12,7") != lines.end());

  auto one = parse_config("problem.mesh = 40\n");
  const auto l1 = one.echo();
  CHECK(std::find(l1.begin(), l1.end(), "problem.mesh = 40") != l1.end());
}

TEST_CASE("weight files") {
  const auto w = parse_weight_file("a = const 1\n# skip\nb = expr \"sin(pi * x)\"\nc = -2\n");
  REQUIRE(w.size() == 3);
  CHECK(w[0].first == "a");
  CHECK(w[1].second.is_expression);
  CHECK(w[2].second.constant == -2.0);
  CHECK_THROWS_AS(parse_weight_file(""), ParseError);
  CHECK_THROWS_AS(parse_weight_file("a = 1\na = 2\n"), ParseError);
  CHECK_THROWS_AS(parse_weight_file("a = expr \"xi\"\n"), ParseError);
}

TEST_CASE("building the default problem") {
  const auto p = build_problem(load_config(configs / "default_1d.conf"));
  CHECK(p.mesh->element_count() == 256);
  CHECK(p.phi.name() == "power");
  CHECK(p.weight.is_zero());
  CHECK_NOTHROW(p.spec());
  const auto q = build_problem(load_config(configs / "variable_2d.conf"));
  CHECK(q.mesh->dimension() == 2);
  CHECK(q.phi.exponent().p_plus() == doctest::Approx(1.9));
}

TEST_CASE("validate through the library") {
  const auto dir = scratch("validate");
  Options opt;
  opt.config = configs / "default_1d.conf";
  opt.out = dir / "out";
  std::ostringstream log;
  CHECK(cmd_validate(opt, log) == kOk);
  CHECK(log.str().find("result: pass") != std::string::npos);
  CHECK(log.str().find("warning") != std::string::npos);  // literal energy bound
  CHECK_FALSE(fs::exists(opt.out));

  opt.config = write(dir, "bad.conf", "problem.r = 2\n");
  std::ostringstream bad;
  CHECK(cmd_validate(opt, bad) == kFailure);
  CHECK(bad.str().find("p1+ < r violated") != std::string::npos);

  opt.config = dir / "missing.conf";
  std::ostringstream err;
  CHECK(guarded([&] { return cmd_validate(opt, err); }, err) == kUsage);
}

TEST_CASE("exit codes of the executable") {
  const auto dir = scratch("exit");
  const auto def = (configs / "default_1d.conf").string();
  CHECK(run("validate --config " + def) == 0);
  CHECK(run("validate --config " + write(dir, "r.conf", "problem.r = 2\n").string()) == 1);
  CHECK(run("validate --config " + write(dir, "m.conf", "problem.r 2\n").string()) == 2);
  CHECK(run("validate") == 2);
  CHECK(run("frobnicate --config " + def) == 2);
  CHECK(run("solve --config " + def) == 2);
  CHECK(run("solve --config " + def + " --lambda abc") == 2);
  CHECK(run("validate --config " + def + " --mesh 1,x") == 2);
  // a config that parses but fails validation cannot be solved
  CHECK(run("thresholds --config " + (dir / "r.conf").string() + " --out " + (dir / "o").string()) == 1);
}

TEST_CASE("thresholds and solve outputs") {
  const auto dir = scratch("outputs");
  const auto cfg = write(dir, "small.conf",
                         "problem.mesh = 64\nsolver.restarts = 3\noutput.label = small\n");
  Options opt;
  opt.config = cfg;
  opt.out = dir / "out";
  std::ostringstream log;
  REQUIRE(cmd_thresholds(opt, log) == kOk);
  const auto t = opt.out / "thresholds" / "small";
  for (const char* f : {"thresholds.csv", "minimizer_star.csv", "minimizer_lower.csv",
                        "history_star_0.csv", "history_lower_2.csv", "manifest.txt"})
    CHECK(fs::exists(t / f));
  const auto csv = slurp(t / "thresholds.csv");
  CHECK(csv.rfind("lambda_star,lambda_lower,", 0) == 0);
  const auto manifest = slurp(t / "manifest.txt");
  CHECK(manifest.find("solver.restarts = 3") != std::string::npos);
  CHECK(manifest.find("problem.mesh = 64\n") != std::string::npos);
  CHECK(manifest.find("files = thresholds.csv ") != std::string::npos);
  CHECK(manifest.find(" manifest.txt\n") != std::string::npos);

  std::istringstream rows(csv);
  std::string header, row;
  std::getline(rows, header);
  std::getline(rows, row);
  const double star = std::stod(row.substr(0, row.find(',')));
  const double lower = std::stod(row.substr(row.find(',') + 1));
  CHECK(star > 0.0);
  CHECK(lower > 0.0);

  std::ostringstream a, b, c;
  CHECK(cmd_solve(opt, 2 * star, a) == kOk);
  const auto s = opt.out / "solve" / "small";
  CHECK(slurp(s / "summary.csv").find(",converged,eigenpair_expected,") != std::string::npos);
  CHECK(fs::exists(s / "eigenfunction.csv"));
  CHECK(slurp(s / "energy.csv").rfind("phi,psi,theta,e2,total,lambda\n", 0) == 0);
  CHECK_FALSE(fs::exists(s / "certificate.txt"));

  CHECK(cmd_solve(opt, 0.5 * lower, b) == kOk);
  CHECK(slurp(s / "summary.csv").find(",trivial_only,below_lower,") != std::string::npos);
  CHECK(slurp(s / "certificate.txt").rfind("certified", 0) == 0);

  CHECK(cmd_solve(opt, 0.5 * (star + lower), c) == kOk);
  CHECK(slurp(s / "summary.csv").find(",indeterminate,") != std::string::npos);

  // 17 significant digits in numeric fields
  CHECK(csv.find(std::to_string(star).substr(0, 6)) != std::string::npos);
}

TEST_CASE("optimize-weight outputs") {
  const auto dir = scratch("optimize");
  Options opt;
  opt.config = write(dir, "small.conf",
                     "problem.mesh = 48\nsolver.restarts = 3\nproblem.theta = capillarity\n");
  opt.out = dir / "out";
  const auto weights = write(dir, "w.conf", "w0 = const 0\nw1 = const 1\n");
  std::ostringstream log;
  REQUIRE(cmd_optimize_weight(opt, weights, log) == kOk);
  const auto o = opt.out / "optimize-weight" / "default";
  CHECK(slurp(o / "winner.txt") == "w0\n");
  CHECK(slurp(o / "weights.csv").rfind("weight_name,lambda_star,iterations,restarts_used\nw0,", 0) == 0);
  CHECK(slurp(o / "manifest.txt").find("weights = ") != std::string::npos);
}
