#pragma once

#include <string>

#include "wcert/config.hpp"

namespace wcert::testing {

/// A parsed configuration together with its domain and weight family.
struct Setup {
  RunConfig cfg;
  std::shared_ptr<const ExhaustionDomain> domain;
  WeightFamily family;

  explicit Setup(const json& j) : cfg(parse_config(j)), domain(build_domain(cfg)), family(build_family(cfg, domain)) {}
};

/// Minimal configuration around a domain and family descriptor.
inline json minimal_config(int dim, json domain, json family, double lo, double hi, double res, int n = 1, int m = 1) {
  json j;
  j["dimension"] = dim;
  j["domain"] = std::move(domain);
  j["family"] = std::move(family);
  j["n"] = n;
  j["m"] = m;
  j["truncation"] = {{"lo", std::vector<double>(dim, lo)}, {"hi", std::vector<double>(dim, hi)}};
  j["resolutions"] = {{"oracle", res}};
  return j;
}

inline std::string config_path(const std::string& file) { return std::string(WCERT_CONFIG_DIR) + "/" + file; }

}  // namespace wcert::testing
