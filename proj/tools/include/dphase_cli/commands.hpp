#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "dphase_cli/config.hpp"

namespace dphase::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

struct Options {
  std::filesystem::path config;
  std::filesystem::path out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mesh;
};

/// Config with the command-line overrides applied.
RunConfig resolve(const Options& opt);

/// Checks only; writes nothing to disk.
int cmd_validate(const Options& opt, std::ostream& log);
/// <out>/thresholds/<label>/: thresholds.csv, minimizer_{star,lower}.csv,
/// history_{star,lower}_<restart>.csv, manifest.txt.
int cmd_thresholds(const Options& opt, std::ostream& log);
/// <out>/solve/<label>/: summary.csv, eigenfunction.csv, energy.csv,
/// history_<restart>.csv, certificate.txt below lambda_lower, manifest.txt.
int cmd_solve(const Options& opt, double lambda, std::ostream& log);
/// <out>/optimize-weight/<label>/: weights.csv, winner.txt, manifest.txt.
int cmd_optimize_weight(const Options& opt, const std::filesystem::path& weights,
                        std::ostream& log);

/// Runs `body`, mapping ParseError to 2 and every other library or I/O error
/// to 1. The message goes to `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace dphase::cli
