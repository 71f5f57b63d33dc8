#pragma once

#include <vector>

namespace wcert {

/// Polynomial in a local coordinate u, coefficients c[0] + c[1] u + ...
using Poly = std::vector<double>;

double horner(const Poly& p, double u);
Poly derivative(const Poly& p);
/// Antiderivative vanishing at u = 0.
Poly antiderivative(const Poly& p);
/// q(v) = p(v + s).
Poly shift(const Poly& p, double s);
/// max |p(u)| for u in [0, len], from endpoints and real critical points.
double max_abs(const Poly& p, double len);

/// Piecewise polynomial on [knots.front(), knots.back()], zero outside.
/// Piece i lives on [knots[i], knots[i+1]] in the local coordinate x - knots[i].
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(std::vector<double> knots, std::vector<Poly> pieces);
  /// Indicator of [-a, a].
  static PiecewisePoly indicator(double a);

  double operator()(double x) const;
  PiecewisePoly derivative() const;
  /// (f * box_w)(x) = (1/w) int_{x-w/2}^{x+w/2} f, computed exactly.
  PiecewisePoly convolve_box(double w) const;
  double integral() const;
  /// sup |f| over the support, exact up to root-finding tolerance.
  double sup_abs() const;
  int degree() const;

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<Poly>& pieces() const { return pieces_; }
  double support_lo() const { return knots_.empty() ? 0.0 : knots_.front(); }
  double support_hi() const { return knots_.empty() ? 0.0 : knots_.back(); }
  /// Replaces pieces within tol of a constant c by exactly c.
  void snap_constant_pieces(double c, double tol);

 private:
  int piece_at(double x) const;

  std::vector<double> knots_;
  std::vector<Poly> pieces_;
};

}  // namespace wcert
