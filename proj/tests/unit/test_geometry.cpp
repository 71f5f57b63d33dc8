#include <doctest.h>

#include "wcert/geometry.hpp"

using namespace wcert;

TEST_CASE("multi-index arithmetic") {
  const MultiIndex a{2, 3};
  CHECK(a.order() == 5);
  CHECK(a.max_component() == 3);
  CHECK(factorial(a) == doctest::Approx(12.0));
  CHECK(binomial(a, MultiIndex{1, 2}) == doctest::Approx(6.0));
  CHECK(binomial(5, 2) == doctest::Approx(10.0));
  CHECK(indices_below(a).size() == 12);
  CHECK(indices_below(a).back() == a);
}

TEST_CASE("indices of bounded total order") {
  // number of alpha in N_0^d with |alpha| <= m is binom(m + d, d)
  for (int d = 1; d <= 3; ++d)
    for (int m = 0; m <= 4; ++m)
      CHECK(indices_of_order_at_most(d, m).size() == static_cast<std::size_t>(binomial(m + d, d) + 0.5));
}

TEST_CASE("lattice strides select subsets of the base lattice") {
  const Lattice lat(2, 0.01);
  const Box b = Box::cube(2, -0.1, 0.1);
  const auto all = lat.points(b, [](const Point&) { return true; });
  const auto coarse = lat.points(b, [](const Point&) { return true; }, 5);
  CHECK(all.size() == 21 * 21);
  CHECK(coarse.size() == 5 * 5);
  for (const Point& p : coarse) CHECK(std::find(all.begin(), all.end(), p) != all.end());
  std::array<long, kMaxDim> idx{};
  CHECK(lat.snap(coarse[7], idx));
  CHECK(lat.point(idx) == coarse[7]);
}

TEST_CASE("sup-norm distance") {
  CHECK(dist_inf(Point{0.0, 0.0}, Point{0.3, -0.5}) == doctest::Approx(0.5));
  CHECK(norm2(Point{3.0, 4.0}) == doctest::Approx(5.0));
}
