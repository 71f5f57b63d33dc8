#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "wcert/errors.hpp"
#include "wcert/weights.hpp"

using namespace wcert;
using wcert::testing::minimal_config;
using wcert::testing::Setup;

namespace {

std::vector<Point> line_grid(double lo, double hi, int count) {
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) out.push_back(Point{lo + (hi - lo) * (i + 0.5) / count});
  return out;
}

}  // namespace

TEST_CASE("schwartz weights satisfy the first condition with the closed-form constant") {
  Setup s(minimal_config(1, {{"kind", "full_space"}}, {{"case", "schwartz"}}, -3, 3, 1e-3));
  const auto& fam = s.family;
  for (int n = 1; n <= 4; ++n) CHECK(fam.A(1, n, n) == doctest::Approx(std::pow(9.0, n / 2.0)));
  // nu_n(x) = (1 + x^2)^{n/2}
  CHECK(fam.log_nu(2, Point{2.0}) == doctest::Approx(std::log(5.0)));

  const auto grid = line_grid(-3, 3, 300);
  const auto r = check_omega(fam, OmegaCondition::W1, 2, 2, grid);
  CHECK(r.pass);
  CHECK(r.sample_pairs >= 10000);
  CHECK(r.worst_ratio <= fam.A(1, 2, 2));
  CHECK(r.worst_ratio > 1.0);
}

TEST_CASE("boundary weights: constants and sampled conditions") {
  Setup s(minimal_config(1, {{"kind", "bounded_box"}, {"lo", {0.0}}, {"hi", {1.0}}}, {{"case", "boundary"}}, 0.05,
                         0.95, 1e-3));
  const auto& fam = s.family;
  CHECK(fam.A(1, 2, 2) == doctest::Approx(9.0));
  CHECK(fam.A(3, 1, 1) == doctest::Approx(2.0));
  CHECK(fam.I(3, 4) == 5);
  CHECK(fam.I(1, 4) == 4);
  // nu_2(0.25) = max(4, 16)
  CHECK(fam.nu(2, Point{0.25}) == doctest::Approx(16.0));

  const auto grid = line_grid(0.05, 0.95, 250);
  for (auto w : {OmegaCondition::W1, OmegaCondition::W2, OmegaCondition::W3}) {
    if (!fam.claims_condition(w)) continue;
    const auto r = check_omega(fam, w, 2, 2, grid);
    CHECK_MESSAGE(r.pass, to_string(w));
  }
  const auto w3 = check_omega(fam, OmegaCondition::W3, 1, 1, grid);
  CHECK(w3.pass);
  CHECK(w3.target_index == 2);
}

TEST_CASE("a deflated constant is caught with a witness") {
  Setup s(minimal_config(1, {{"kind", "full_space"}}, {{"case", "schwartz"}}, -3, 3, 1e-3));
  const WeightFamily bad = s.family.with_scaled_constant(1, 0.5);
  const auto r = check_omega(bad, OmegaCondition::W1, 1, 1, line_grid(-3, 3, 200));
  CHECK_FALSE(r.pass);
  CHECK(r.worst_ratio > r.bound);
  CHECK(std::abs(r.witness[0]) <= 3.0);
}

TEST_CASE("power family variants") {
  const json dom = {{"kind", "full_space"}};
  Setup def(minimal_config(1, dom, {{"case", "power_abs"}, {"exponent", 1}}, -1, 1, 1e-3));
  CHECK(def.family.case_label == "iii.1");
  Setup lim(minimal_config(1, dom, {{"case", "power_abs"}, {"exponent", 1}, {"variant", "iii.2"}}, -1, 1, 1e-3));
  CHECK(lim.family.case_label == "iii.2");
  CHECK(lim.family.radius_constant);
  // a_n = -1/n tends to 0 from below; a_n = 2 - 1/n is positive but bounded
  CHECK_NOTHROW(Setup(minimal_config(
      1, dom, {{"case", "power_abs"}, {"variant", "iii.2"}, {"a", {{"kind", "neg_reciprocal"}}}}, -1, 1, 1e-3)));
  CHECK_THROWS_AS(
      make_exp_family(MuSpec::power_abs(1, true), ASequence::explicit_values({1.0, 1.5, 1.75, 1.875}),
                      std::make_shared<const ExhaustionDomain>(ExhaustionDomain::full_space(1))),
      ConstructionError);
}

TEST_CASE("profile supremum") {
  // sup_t t e^{-t} = 1/e at t = 1
  CHECK(log_sup_profile([](double t) { return std::log(t) - t; }) == doctest::Approx(-1.0).epsilon(1e-9));
  // sup_t (1 + t^2) e^{-t^2} = 1 at t = 0
  CHECK(log_sup_profile([](double t) { return std::log1p(t * t) - t * t; }) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK_THROWS_AS(log_sup_profile([](double t) { return t; }), ConstructionError);
}

TEST_CASE("sequence limit property") {
  CHECK(ASequence::linear(1.0).has_limit_property());
  CHECK(ASequence::neg_reciprocal(2.0).has_limit_property());
  CHECK(ASequence::neg_reciprocal(2.0)(4) == doctest::Approx(-0.5));
}
