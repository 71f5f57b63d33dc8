#include <doctest.h>

#include "wcert/domains.hpp"
#include "wcert/errors.hpp"

using namespace wcert;

TEST_CASE("growing box levels and gap") {
  const auto dom = ExhaustionDomain::growing_box(1, 1.0);
  CHECK(dom.in_level(1, Point{0.99}));
  CHECK_FALSE(dom.in_level(1, Point{1.0}));
  CHECK(dom.in_level(2, Point{1.5}));
  // Omega_1 = (-1, 1), boundary of Omega_2 at +-2
  const GapEstimate g = exhaustion_gap(dom, 1, 0.01);
  CHECK(g.exact);
  CHECK(g.value == doctest::Approx(1.0));
  CHECK(ring_distance(dom, 1, Point{0.5}) == doctest::Approx(1.5));
}

TEST_CASE("boundary distance of a bounded box") {
  const auto dom = ExhaustionDomain::bounded_set(Region::box(Box::cube(2, 0.0, 1.0)));
  CHECK(dist_inf_boundary(dom, Point{0.3, 0.6}) == doctest::Approx(0.3));
  CHECK(dist_inf_boundary(dom, Point{0.5, 0.5}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(dist_inf_boundary(dom, Point{1.5, 0.5}), DomainMembershipError);
  CHECK(dom.stationary());
}

TEST_CASE("full space has no boundary") {
  const auto dom = ExhaustionDomain::full_space(2);
  CHECK(std::isinf(dist_inf_boundary(dom, Point{100.0, -3.0})));
  CHECK(dom.full_space());
  const auto g = exhaustion_gap(dom, 3, 0.1);
  CHECK(g.full_space);
}

TEST_CASE("sampled levels stay inside the level and the truncation box") {
  const auto dom = ExhaustionDomain::growing_box(2, 0.5);
  const Box tr = Box::cube(2, -1.0, 1.0);
  const auto pts = sample_level(dom, 1, tr, Lattice(2, 0.05));
  CHECK_FALSE(pts.empty());
  for (const Point& p : pts) {
    CHECK(dom.in_level(1, p));
    CHECK(tr.contains_closed(p));
  }
}

TEST_CASE("compact exhaustion levels increase") {
  const auto dom = ExhaustionDomain::compact_exhaustion(Box::cube(1, 0.0, 1.0));
  CHECK_FALSE(dom.in_level(1, Point{0.3}));  // (1/3, 2/3)
  CHECK(dom.in_level(2, Point{0.3}));        // (1/4, 3/4)
}
