#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wcert/cover.hpp"
#include "wcert/report.hpp"
#include "wcert/weights.hpp"

namespace wcert {

/// Certificate groups, in dependency order.
const std::vector<std::string>& suite_names();

struct Resolutions {
  double oracle = 1e-3;      // base lattice step; radii tables live here
  double candidate = 1e-2;   // cover candidates, an integer multiple of oracle
  double check = 1e-3;       // sample grids, an integer multiple of oracle
  double quadrature = 1e-3;  // midpoint cell size, refined once by 2
};

struct NegativeControl {
  std::optional<int> drop_center;          // remove this center after building the cover
  std::optional<double> shrink_separation; // build with this separation factor instead of 1/2
  std::optional<double> deflate_A1;        // multiply the claimed A_1 by this factor for the weight checks
  bool any() const { return drop_center || shrink_separation || deflate_A1; }
};

struct Outputs {
  std::string report = "report.json";
  std::string cover_csv;
  std::string cutoff_csv;
  std::string pullback_csv;
};

struct RunConfig {
  std::string name;
  int dim = 1;
  json domain;
  json family;
  int n = 1;
  int m = 1;
  Box truncation;
  Resolutions res;
  int order = 0;  // smoothness budget M; 0 picks the smallest admissible
  int alpha_max = 3;
  double tolerance = 1e-9;
  double quadrature_stability = 0.01;
  CoverStrategy strategy = CoverStrategy::Bucket;
  std::vector<std::string> suite;
  std::vector<std::string> test_functions;
  NegativeControl negative;
  Outputs outputs;
  json raw;

  /// M actually used: the configured order, or the smallest admissible one.
  int smoothness_order() const;
  /// Stride of the check grid on the oracle lattice.
  long check_stride() const;
};

/// Parses and validates. Throws ConfigError on schema violations and
/// OrderError when m or alpha_max exceed the smoothness budget.
RunConfig parse_config(const json& j);
RunConfig load_config(const std::string& path);

std::shared_ptr<const ExhaustionDomain> build_domain(const RunConfig& cfg);
WeightFamily build_family(const RunConfig& cfg, std::shared_ptr<const ExhaustionDomain> domain);

}  // namespace wcert
