#include "wcert/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "wcert/bumps.hpp"
#include "wcert/errors.hpp"
#include "wcert/test_functions.hpp"

namespace wcert {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"weights", "radii", "cover", "partition", "chain"};
  return names;
}

namespace {

const std::set<std::string> kTopKeys{"name",      "dimension", "domain",         "family",     "n",
                                     "m",         "truncation", "resolutions",   "order",      "alpha_max",
                                     "tolerance", "quadrature_stability", "cover_strategy", "suite",
                                     "test_functions", "negative_control", "outputs"};

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": '" + key + "' has the wrong type");
  }
}

template <class T>
T get_or(const json& j, const std::string& key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

Point point_from(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ConfigError(where + ": expected an array of " + std::to_string(dim) + " numbers");
  Point p(dim);
  for (int i = 0; i < dim; ++i) {
    if (!j[i].is_number()) throw ConfigError(where + ": expected numbers");
    p[i] = j[i].get<double>();
  }
  return p;
}

Box box_from(const json& j, int dim, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object with lo and hi");
  reject_unknown(j, {"lo", "hi"}, where);
  if (!j.contains("lo") || !j.contains("hi")) throw ConfigError(where + ": needs lo and hi");
  Box b{point_from(j["lo"], dim, where + ".lo"), point_from(j["hi"], dim, where + ".hi")};
  if (!b.bounded() || b.empty()) throw ConfigError(where + ": box must be bounded and nonempty");
  return b;
}

bool multiple_of(double value, double base) {
  const double q = value / base;
  return std::abs(q - std::round(q)) < 1e-9 * std::max(1.0, q) && std::round(q) >= 1;
}

ASequence sequence_from(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const auto kind = get<std::string>(j, "kind", where);
  if (kind == "linear") {
    reject_unknown(j, {"kind", "slope", "offset"}, where);
    return ASequence::linear(get_or<double>(j, "slope", 1.0, where), get_or<double>(j, "offset", 0.0, where));
  }
  if (kind == "neg_reciprocal") {
    reject_unknown(j, {"kind", "scale"}, where);
    return ASequence::neg_reciprocal(get_or<double>(j, "scale", 1.0, where));
  }
  if (kind == "explicit") {
    reject_unknown(j, {"kind", "values"}, where);
    return ASequence::explicit_values(get<std::vector<double>>(j, "values", where));
  }
  throw ConfigError(where + ": unknown sequence kind '" + kind + "'");
}

}  // namespace

int RunConfig::smoothness_order() const {
  return order > 0 ? order : required_order(m + 1, std::max(alpha_max, dim * (m + 1)));
}

long RunConfig::check_stride() const { return std::lround(res.check / res.oracle); }

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(j, kTopKeys, "config");
  RunConfig c;
  c.raw = j;
  c.name = get_or<std::string>(j, "name", "run", "config");
  c.dim = get<int>(j, "dimension", "config");
  if (c.dim < 1 || c.dim > kMaxDim) throw ConfigError("config: dimension must lie in 1.." + std::to_string(kMaxDim));
  c.domain = get<json>(j, "domain", "config");
  c.family = get<json>(j, "family", "config");
  c.n = get<int>(j, "n", "config");
  c.m = get<int>(j, "m", "config");
  if (c.n < 1) throw ConfigError("config: n must be at least 1");
  if (c.m < 0) throw ConfigError("config: m must be nonnegative");
  c.truncation = box_from(get<json>(j, "truncation", "config"), c.dim, "truncation");

  const json r = get<json>(j, "resolutions", "config");
  reject_unknown(r, {"oracle", "candidate", "check", "quadrature"}, "resolutions");
  c.res.oracle = get<double>(r, "oracle", "resolutions");
  c.res.candidate = get_or<double>(r, "candidate", c.res.oracle, "resolutions");
  c.res.check = get_or<double>(r, "check", c.res.oracle, "resolutions");
  c.res.quadrature = get_or<double>(r, "quadrature", c.res.check, "resolutions");
  for (double v : {c.res.oracle, c.res.candidate, c.res.check, c.res.quadrature})
    if (!(v > 0) || !std::isfinite(v)) throw ConfigError("resolutions: all resolutions must be positive");
  if (!multiple_of(c.res.candidate, c.res.oracle))
    throw ConfigError("resolutions: candidate must be an integer multiple of oracle");
  if (!multiple_of(c.res.check, c.res.oracle))
    throw ConfigError("resolutions: check must be an integer multiple of oracle");

  c.order = get_or<int>(j, "order", 0, "config");
  c.alpha_max = get_or<int>(j, "alpha_max", c.dim == 1 ? 3 : 2, "config");
  c.tolerance = get_or<double>(j, "tolerance", 1e-9, "config");
  c.quadrature_stability = get_or<double>(j, "quadrature_stability", 0.01, "config");
  if (c.alpha_max < 0) throw ConfigError("config: alpha_max must be nonnegative");
  if (!(c.tolerance >= 0) || !(c.quadrature_stability > 0)) throw ConfigError("config: tolerances must be positive");
  if (c.order < 0) throw ConfigError("config: order must be positive");
  if (c.order > 0) {
    if (c.m + 1 > c.order - 1)
      throw OrderError("m = " + std::to_string(c.m) + " needs derivatives of order m + 1 = " + std::to_string(c.m + 1) +
                       " per coordinate, beyond the smoothness budget M - 1 = " + std::to_string(c.order - 1));
    if (std::max(c.alpha_max, c.dim * (c.m + 1)) > c.order)
      throw OrderError("derivative bounds up to order " + std::to_string(std::max(c.alpha_max, c.dim * (c.m + 1))) +
                       " need weights w_1..w_|alpha|, beyond M = " + std::to_string(c.order));
  }

  const auto strategy = get_or<std::string>(j, "cover_strategy", "bucket", "config");
  if (strategy == "bucket") c.strategy = CoverStrategy::Bucket;
  else if (strategy == "naive") c.strategy = CoverStrategy::Naive;
  else throw ConfigError("config: cover_strategy must be bucket or naive");

  c.suite = get_or<std::vector<std::string>>(j, "suite", suite_names(), "config");
  for (const auto& s : c.suite)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw ConfigError("config: unknown suite '" + s + "'");
  c.test_functions =
      get_or<std::vector<std::string>>(j, "test_functions", {"gaussian", "x1_gaussian", "spline_bump"}, "config");
  for (const auto& name : c.test_functions) {
    const TestFunction f = make_test_function(name, c.dim);
    if (c.dim * (c.m + 1) > f.max_order)
      throw OrderError("test function " + name + " has partials up to order " + std::to_string(f.max_order) +
                       ", fewer than d(m+1) = " + std::to_string(c.dim * (c.m + 1)));
  }

  if (j.contains("negative_control")) {
    const json& nc = j["negative_control"];
    reject_unknown(nc, {"drop_center", "shrink_separation", "deflate_A1"}, "negative_control");
    if (nc.contains("drop_center")) c.negative.drop_center = get<int>(nc, "drop_center", "negative_control");
    if (nc.contains("shrink_separation")) {
      c.negative.shrink_separation = get<double>(nc, "shrink_separation", "negative_control");
      if (!(*c.negative.shrink_separation > 0)) throw ConfigError("negative_control: shrink_separation must be positive");
    }
    if (nc.contains("deflate_A1")) {
      c.negative.deflate_A1 = get<double>(nc, "deflate_A1", "negative_control");
      if (!(*c.negative.deflate_A1 > 0)) throw ConfigError("negative_control: deflate_A1 must be positive");
    }
  }
  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    reject_unknown(o, {"report", "cover_csv", "cutoff_csv", "pullback_csv"}, "outputs");
    c.outputs.report = get_or<std::string>(o, "report", c.outputs.report, "outputs");
    c.outputs.cover_csv = get_or<std::string>(o, "cover_csv", "", "outputs");
    c.outputs.cutoff_csv = get_or<std::string>(o, "cutoff_csv", "", "outputs");
    c.outputs.pullback_csv = get_or<std::string>(o, "pullback_csv", "", "outputs");
  }
  // Validate the descriptors now so that errors surface before any work.
  build_family(c, build_domain(c));
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

std::shared_ptr<const ExhaustionDomain> build_domain(const RunConfig& cfg) {
  const json& j = cfg.domain;
  if (!j.is_object()) throw ConfigError("domain: expected an object");
  const auto kind = get<std::string>(j, "kind", "domain");
  const bool closure = get_or<bool>(j, "closure", false, "domain");
  ExhaustionDomain dom = ExhaustionDomain::full_space(cfg.dim);
  try {
    if (kind == "full_space") {
      reject_unknown(j, {"kind", "closure"}, "domain");
    } else if (kind == "growing_box") {
      reject_unknown(j, {"kind", "closure", "scale"}, "domain");
      dom = ExhaustionDomain::growing_box(cfg.dim, get_or<double>(j, "scale", 1.0, "domain"));
    } else if (kind == "slab") {
      reject_unknown(j, {"kind", "closure", "scale", "axes"}, "domain");
      dom = ExhaustionDomain::slab(cfg.dim, get<std::vector<int>>(j, "axes", "domain"),
                                   get_or<double>(j, "scale", 1.0, "domain"));
    } else if (kind == "bounded_box") {
      reject_unknown(j, {"kind", "closure", "lo", "hi"}, "domain");
      dom = ExhaustionDomain::bounded_set(Region::box(box_from({{"lo", j.value("lo", json())}, {"hi", j.value("hi", json())}},
                                                               cfg.dim, "domain")));
    } else if (kind == "compact_exhaustion") {
      reject_unknown(j, {"kind", "closure", "lo", "hi"}, "domain");
      dom = ExhaustionDomain::compact_exhaustion(
          box_from({{"lo", j.value("lo", json())}, {"hi", j.value("hi", json())}}, cfg.dim, "domain"));
    } else {
      throw ConfigError("domain: unknown kind '" + kind + "'");
    }
  } catch (const ConstructionError& e) {
    throw ConfigError(std::string("domain: ") + e.what());
  }
  if (closure) dom = dom.closure();
  return std::make_shared<const ExhaustionDomain>(std::move(dom));
}

WeightFamily build_family(const RunConfig& cfg, std::shared_ptr<const ExhaustionDomain> domain) {
  const json& j = cfg.family;
  if (!j.is_object()) throw ConfigError("family: expected an object");
  const auto kind = get<std::string>(j, "case", "family");
  auto seq = [&](ASequence fallback) { return j.contains("a") ? sequence_from(j["a"], "family.a") : fallback; };
  try {
    if (kind == "schwartz") {
      reject_unknown(j, {"case"}, "family");
      return make_exp_family(MuSpec::log_one_plus_sq(), ASequence::linear(0.5), domain);
    }
    if (kind == "boundary") {
      reject_unknown(j, {"case"}, "family");
      return make_boundary_family(domain);
    }
    if (kind == "constant") {
      reject_unknown(j, {"case"}, "family");
      return make_exp_family(MuSpec::zero(), ASequence::linear(1.0), domain);
    }
    if (kind == "uniformly_continuous") {
      reject_unknown(j, {"case", "delta", "a"}, "family");
      return make_exp_family(MuSpec::uniformly_continuous(get_or<double>(j, "delta", 1.0, "family")),
                             seq(ASequence::linear(1.0)), domain);
    }
    if (kind == "power_abs") {
      reject_unknown(j, {"case", "exponent", "variant", "a"}, "family");
      const auto variant = get_or<std::string>(j, "variant", "iii.1", "family");
      if (variant != "iii.1" && variant != "iii.2") throw ConfigError("family: variant must be iii.1 or iii.2");
      return make_exp_family(MuSpec::power_abs(get_or<int>(j, "exponent", 1, "family"), variant == "iii.2"),
                             seq(ASequence::linear(1.0)), domain);
    }
    if (kind == "holder_block") {
      reject_unknown(j, {"case", "block", "gamma", "a"}, "family");
      return make_exp_family(
          MuSpec::holder_block(get<std::vector<int>>(j, "block", "family"), get_or<double>(j, "gamma", 1.0, "family")),
          seq(ASequence::linear(1.0)), domain);
    }
  } catch (const ConstructionError& e) {
    throw ConfigError(std::string("family: ") + e.what());
  }
  throw ConfigError("family: unknown case '" + kind + "'");
}

}  // namespace wcert
