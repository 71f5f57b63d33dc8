#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wcert/config.hpp"
#include "wcert/report.hpp"

namespace wcert {

struct RunOptions {
  std::string out_dir;  // empty: no files written
  bool strict = false;  // inconclusive verdicts fail the run
  std::optional<std::vector<std::string>> suite;
};

struct RunResult {
  Report report;
  int exit_code = 0;  // 0 ok, 1 a certificate failed
};

/// Builds domain, family, radii, cover and partition, then runs the selected
/// certificate groups in dependency order and writes the requested files.
RunResult run(const RunConfig& config, const RunOptions& options = {});

/// Certificate for one weight condition check.
Certificate omega_certificate(const ConditionCheckResult& r);

}  // namespace wcert
