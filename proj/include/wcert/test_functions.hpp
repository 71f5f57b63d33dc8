#pragma once

#include <functional>
#include <memory>
#include <string>

#include "wcert/geometry.hpp"

namespace wcert {

/// Smooth function with closed-form partial derivatives up to max_order per coordinate.
struct TestFunction {
  std::string name;
  int dim = 1;
  int max_order = 0;
  std::function<double(const Point&, const MultiIndex&)> partial_fn;

  double operator()(const Point& x) const { return partial(x, MultiIndex(dim)); }
  /// Throws OrderError beyond max_order.
  double partial(const Point& x, const MultiIndex& alpha) const;

  static TestFunction zero(int dim);
  static TestFunction constant(int dim, double c);
  /// exp(-|x|^2)
  static TestFunction gaussian(int dim);
  /// x_1 exp(-|x|^2)
  static TestFunction x1_gaussian(int dim);
  /// Tensor product of a box-convolution profile of radius `radius`, C^7.
  static TestFunction spline_bump(int dim, double radius = 1.0);
  /// a f + b g
  static TestFunction combination(double a, const TestFunction& f, double b, const TestFunction& g);
};

/// j-th derivative of exp(-t^2): (-1)^j H_j(t) exp(-t^2), H_j physicists' Hermite.
double gaussian_derivative(double t, int j);

TestFunction make_test_function(const std::string& name, int dim);

}  // namespace wcert
