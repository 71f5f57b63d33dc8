#include <doctest.h>

#include "fixtures.hpp"
#include "wcert/errors.hpp"
#include "wcert/runner.hpp"

using namespace wcert;
using wcert::testing::config_path;
using wcert::testing::minimal_config;

namespace {

json base() { return minimal_config(1, {{"kind", "full_space"}}, {{"case", "schwartz"}}, -1, 1, 0.01); }

}  // namespace

TEST_CASE("defaults") {
  const RunConfig c = parse_config(base());
  CHECK(c.res.candidate == 0.01);
  CHECK(c.res.quadrature == 0.01);
  CHECK(c.alpha_max == 3);
  CHECK(c.suite == suite_names());
  // m + 1 = 2 per coordinate, |alpha| <= max(3, 2)
  CHECK(c.smoothness_order() == 4);
  CHECK(c.check_stride() == 1);
}

TEST_CASE("malformed configurations are rejected") {
  auto rejects = [](json j) { CHECK_THROWS_AS(parse_config(j), ConfigError); };
  json j = base();
  j["colour"] = "blue";
  rejects(j);
  j = base();
  j.erase("n");
  rejects(j);
  j = base();
  j["resolutions"]["candidate"] = 0.015;
  rejects(j);
  j = base();
  j["resolutions"]["check"] = -1.0;
  rejects(j);
  j = base();
  j["family"] = {{"case", "cubic"}};
  rejects(j);
  j = base();
  j["domain"] = {{"kind", "bounded_box"}, {"lo", {0.0}}};
  rejects(j);
  j = base();
  j["suite"] = {"cover", "everything"};
  rejects(j);
  j = base();
  j["dimension"] = 4;
  rejects(j);
  j = base();
  j["negative_control"] = {{"shrink_separation", 0.0}};
  rejects(j);
  j = base();
  j["family"] = {{"case", "power_abs"}, {"variant", "iii.2"}, {"a", {{"kind", "explicit"}, {"values", {1.0, 1.5}}}}};
  rejects(j);
  CHECK_THROWS_AS(load_config(config_path("missing.json")), ConfigError);
}

TEST_CASE("derivative orders beyond the smoothness budget") {
  CHECK_THROWS_AS(load_config(config_path("order_too_high.json")), OrderError);
  json j = base();
  j["order"] = 3;
  j["alpha_max"] = 4;
  CHECK_THROWS_AS(parse_config(j), OrderError);
  j["alpha_max"] = 2;
  CHECK_NOTHROW(parse_config(j));
}

TEST_CASE("every shipped configuration except the order error parses") {
  for (const char* name : {"schwartz_d1.json", "schwartz_d2.json", "schwartz_d2_chain.json", "boundary_d1.json",
                           "boundary_d2.json", "boundary_d2_chain.json", "constant_box_d1.json",
                           "negative_separation.json", "negative_drop_center.json", "negative_deflate_A1.json"})
    CHECK_NOTHROW(load_config(config_path(name)));
}

TEST_CASE("runs are deterministic") {
  const RunConfig c = load_config(config_path("constant_box_d1.json"));
  const RunResult a = run(c), b = run(c);
  CHECK(a.exit_code == 0);
  CHECK(a.report.canonical_dump() == b.report.canonical_dump());
  CHECK(a.report.count(Verdict::Fail) == 0);
}

TEST_CASE("suite selection keeps dependency order") {
  RunConfig c = load_config(config_path("schwartz_d1.json"));
  RunOptions o;
  o.suite = std::vector<std::string>{"cover"};
  const RunResult r = run(c, o);
  CHECK(r.report.find("cover.separation") != nullptr);
  CHECK(r.report.find("weights.omega1") == nullptr);
  CHECK(r.report.find("partition.sum_to_one") == nullptr);
  o.suite = std::vector<std::string>{"bogus"};
  CHECK_THROWS_AS(run(c, o), ConfigError);
}
