#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "wcert/bumps.hpp"
#include "wcert/errors.hpp"

using namespace wcert;
using wcert::testing::minimal_config;
using wcert::testing::Setup;

namespace {

// (1/w) int_{x-w/2}^{x+w/2} f by composite Simpson.
template <class F>
double box_average(F f, double x, double w, int panels = 2000) {
  const double a = x - w / 2, h = w / panels;
  double s = f(a) + f(a + w);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3 / w;
}

}  // namespace

TEST_CASE("box convolution matches numerical averaging") {
  const PiecewisePoly ind = PiecewisePoly::indicator(0.3);
  const PiecewisePoly once = ind.convolve_box(0.1);
  const PiecewisePoly twice = once.convolve_box(0.05);
  CHECK(once.integral() == doctest::Approx(0.6));
  CHECK(twice.integral() == doctest::Approx(0.6));
  for (double x : {-0.37, -0.33, -0.26, 0.0, 0.28, 0.31, 0.349}) {
    CHECK(once(x) == doctest::Approx(box_average([&](double t) { return ind(t); }, x, 0.1, 20000)).epsilon(1e-3));
    CHECK(twice(x) == doctest::Approx(box_average([&](double t) { return once(t); }, x, 0.05)).epsilon(1e-6));
  }
}

TEST_CASE("polynomial helpers") {
  const Poly p{1.0, -3.0, 0.0, 1.0};  // 1 - 3u + u^3
  CHECK(horner(p, 2.0) == doctest::Approx(3.0));
  CHECK(derivative(p) == Poly{-3.0, 0.0, 3.0});
  CHECK(horner(shift(p, 1.0), 0.0) == doctest::Approx(horner(p, 1.0)));
  // critical point at u = 1 gives -1, endpoint u = 0 gives 1, u = 1.5 gives -0.125
  CHECK(max_abs(p, 1.5) == doctest::Approx(1.0));
  CHECK(max_abs(Poly{0.0, 0.0, -2.0}, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("profile plateau, support and derivative bounds") {
  const BumpProfile1D P(0.5, 3, default_weights(3));
  CHECK(P(0.0) == 1.0);
  CHECK(P(7 * 0.5 / 12) == 1.0);
  CHECK(P(11 * 0.5 / 12) == 0.0);
  CHECK(P.support_half_width() <= 11 * 0.5 / 12 + 1e-12);
  const double sups[] = {1.0, 10.5, 220.5};
  const double bounds[] = {1.0, 21.0, 882.0};
  for (int j = 0; j < 3; ++j) {
    CHECK(P.derivative(j).sup_abs() == doctest::Approx(sups[j]).epsilon(1e-9));
    CHECK(P.derivative_bound(j) == doctest::Approx(bounds[j]).epsilon(1e-9));
  }
  CHECK(certify_profile(P).passed());
  CHECK_THROWS_AS(P(0.1, 3), OrderError);
}

TEST_CASE("profile derivatives agree with central differences") {
  const BumpProfile1D P(0.4, 4, default_weights(4));
  const double h = 1e-5;
  for (double t : {-0.33, -0.27, 0.255, 0.3123, 0.341}) {
    for (int j = 0; j < 3; ++j) {
      const double fd = (P(t + h, j) - P(t - h, j)) / (2 * h);
      CHECK(fd == doctest::Approx(P(t, j + 1)).epsilon(1e-4).scale(P.derivative_bound(j + 1) * 1e-6));
    }
  }
}

TEST_CASE("leibniz plan against the two-factor product rule") {
  // f = e^{2x + 3y}, g = e^{-x + y}; d^beta (fg) = (1)^b1 (4)^b2 e^{x + 4y} at the origin
  const MultiIndex A{3, 2};
  const LeibnizPlan& plan = LeibnizPlan::get(A);
  std::vector<double> f(plan.size()), g(plan.size()), out(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    f[i] = std::pow(2.0, plan.betas[i][0]) * std::pow(3.0, plan.betas[i][1]);
    g[i] = std::pow(-1.0, plan.betas[i][0]) * std::pow(1.0, plan.betas[i][1]);
  }
  plan.apply(f.data(), g.data(), out.data());
  for (std::size_t i = 0; i < plan.size(); ++i)
    CHECK(out[i] == doctest::Approx(std::pow(4.0, plan.betas[i][1])));
  CHECK(&LeibnizPlan::get(A) == &plan);
  CHECK_THROWS_AS(LeibnizPlan(MultiIndex{16}), OrderError);
}

TEST_CASE("partition of unity on a constant radius cover") {
  Setup s(minimal_config(1, {{"kind", "growing_box"}}, {{"case", "constant"}}, -1, 1, 0.01));
  const IteratedRadius r(s.family, 1, {0.01, s.cfg.truncation, 3});
  CoverOptions co;
  co.candidate_resolution = 0.01;
  co.truncation = s.cfg.truncation;
  const Cover c = build_cover(s.family, r, co);
  const Partition part(c, 4, default_weights(4));
  const auto grid = sample_level(*s.domain, 1, s.cfg.truncation, Lattice(1, 0.01));
  for (const Point& x : grid) CHECK(part.sum(x) == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& cert : certify_partition(part, r, 3, grid)) CHECK_MESSAGE(cert.passed(), cert.name);

  // derivatives of h_k against central differences at off-knot points
  const double h = 1e-5;
  for (int k = 2; k < 5; ++k) {
    for (double t : {-0.013, 0.107, 0.2213}) {
      const Point x{c.centers[k][0] + t};
      for (int j = 0; j < 2; ++j) {
        const double fd =
            (part.eval_partial(k, Point{x[0] + h}, MultiIndex{j}) - part.eval_partial(k, Point{x[0] - h}, MultiIndex{j})) /
            (2 * h);
        CHECK(fd == doctest::Approx(part.eval_partial(k, x, MultiIndex{j + 1})).scale(1.0).epsilon(1e-5));
      }
    }
  }
  CHECK_THROWS_AS(part.eval_partial(0, Point{0.0}, MultiIndex{4}), OrderError);
}

TEST_CASE("required smoothness order") {
  // classical derivatives up to c need M - 1 >= c + 1; |alpha| <= o needs M >= o
  CHECK(required_order(2, 3) == 4);
  CHECK(required_order(2, 5) == 5);
  CHECK(required_order(4, 2) == 6);
}
