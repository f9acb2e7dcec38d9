#include <iostream>

#include "CLI11.hpp"
#include "dphase_cli/commands.hpp"

using namespace dphase::cli;

int main(int argc, char** argv) {
  CLI::App app{"dphase: double phase eigenvalue problems"};
  app.require_subcommand(1);

  Options opt;
  std::string out = "out";
  std::uint64_t seed = 0;
  std::string mesh;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "problem config file")->required();
    sub->add_option("--out", out, "output root")->capture_default_str();
    sub->add_option("--seed", seed, "overrides solver.seed");
    sub->add_option("--mesh", mesh, "overrides problem.mesh, n or n,m");
  };

  auto* validate = app.add_subcommand("validate", "check the structural hypotheses");
  auto* thresholds = app.add_subcommand("thresholds", "compute lambda_star and lambda_lower");
  auto* solve = app.add_subcommand("solve", "look for an eigenpair at a given lambda");
  auto* optimize = app.add_subcommand("optimize-weight", "minimize lambda_star over weights");
  for (auto* sub : {validate, thresholds, solve, optimize}) add_common(sub);

  double lambda = 0.0;
  solve->add_option("--lambda", lambda, "eigenvalue parameter")->required();
  std::string weights;
  optimize->add_option("--weights", weights, "weight family file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  opt.out = out;
  for (auto* sub : {validate, thresholds, solve, optimize}) {
    if (sub->count("--seed")) opt.seed = seed;
    if (sub->count("--mesh")) opt.mesh = mesh;
  }

  return guarded(
      [&] {
        if (*validate) return cmd_validate(opt, std::cout);
        if (*thresholds) return cmd_thresholds(opt, std::cout);
        if (*solve) return cmd_solve(opt, lambda, std::cout);
        return cmd_optimize_weight(opt, weights, std::cout);
      },
      std::cerr);
}
