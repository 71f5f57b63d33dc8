#include "wcert/piecewise_poly.hpp"

#include <algorithm>
#include <cmath>

#include "wcert/errors.hpp"
#include "wcert/geometry.hpp"

namespace wcert {

double horner(const Poly& p, double u) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * u + *it;
  return v;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly q(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) q[i - 1] = p[i] * static_cast<double>(i);
  return q;
}

Poly antiderivative(const Poly& p) {
  Poly q(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) q[i + 1] = p[i] / static_cast<double>(i + 1);
  return q;
}

Poly shift(const Poly& p, double s) {
  // Taylor expansion at s: q_j = sum_{i>=j} binom(i, j) p_i s^(i-j).
  const std::size_t n = p.size();
  Poly q(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0, spow = 1.0;
    for (std::size_t i = j; i < n; ++i) {
      acc += binomial(static_cast<int>(i), static_cast<int>(j)) * p[i] * spow;
      spow *= s;
    }
    q[j] = acc;
  }
  return q;
}

namespace {

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
}

// Real roots of p in [lo, hi], via the sign changes between consecutive
// critical points (roots of p'), each refined by bisection.
std::vector<double> roots_in(Poly p, double lo, double hi) {
  trim(p);
  std::vector<double> out;
  if (p.size() <= 1) return out;
  if (p.size() == 2) {
    const double r = -p[0] / p[1];
    if (r >= lo && r <= hi) out.push_back(r);
    return out;
  }
  std::vector<double> pts{lo};
  for (double c : roots_in(derivative(p), lo, hi)) pts.push_back(c);
  pts.push_back(hi);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double a = pts[i], b = pts[i + 1];
    double fa = horner(p, a), fb = horner(p, b);
    if (fa == 0.0) {
      out.push_back(a);
      continue;
    }
    if ((fa < 0) == (fb < 0)) continue;
    for (int it = 0; it < 200 && b - a > 0; ++it) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      const double fm = horner(p, m);
      if ((fm < 0) == (fa < 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    out.push_back(0.5 * (a + b));
  }
  if (horner(p, hi) == 0.0) out.push_back(hi);
  return out;
}

}  // namespace

double max_abs(const Poly& p, double len) {
  double m = std::max(std::abs(horner(p, 0.0)), std::abs(horner(p, len)));
  for (double c : roots_in(derivative(p), 0.0, len)) m = std::max(m, std::abs(horner(p, c)));
  return m;
}

PiecewisePoly::PiecewisePoly(std::vector<double> knots, std::vector<Poly> pieces)
    : knots_(std::move(knots)), pieces_(std::move(pieces)) {
  if (knots_.size() != pieces_.size() + 1) throw ArgumentError("piecewise polynomial: knot/piece mismatch");
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
    if (!(knots_[i] < knots_[i + 1])) throw ArgumentError("piecewise polynomial: knots must increase");
}

PiecewisePoly PiecewisePoly::indicator(double a) {
  if (!(a > 0)) throw ArgumentError("indicator half-width must be positive");
  return PiecewisePoly({-a, a}, {{1.0}});
}

int PiecewisePoly::piece_at(double x) const {
  if (knots_.empty() || x < knots_.front() || x > knots_.back()) return -1;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  int i = static_cast<int>(it - knots_.begin()) - 1;
  return std::min(i, static_cast<int>(pieces_.size()) - 1);
}

double PiecewisePoly::operator()(double x) const {
  // Outside the open support the function is exactly zero; at the end knots
  // the pieces of a continuous spline vanish anyway.
  if (knots_.empty() || !(x > knots_.front() && x < knots_.back())) return 0.0;
  const int i = piece_at(x);
  return horner(pieces_[i], x - knots_[i]);
}

PiecewisePoly PiecewisePoly::derivative() const {
  std::vector<Poly> d;
  d.reserve(pieces_.size());
  for (const auto& p : pieces_) d.push_back(wcert::derivative(p));
  return PiecewisePoly(knots_, d);
}

int PiecewisePoly::degree() const {
  std::size_t m = 1;
  for (const auto& p : pieces_) m = std::max(m, p.size());
  return static_cast<int>(m) - 1;
}

double PiecewisePoly::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    s += horner(antiderivative(pieces_[i]), knots_[i + 1] - knots_[i]);
  return s;
}

double PiecewisePoly::sup_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) m = std::max(m, max_abs(pieces_[i], knots_[i + 1] - knots_[i]));
  return m;
}

PiecewisePoly PiecewisePoly::convolve_box(double w) const {
  if (!(w > 0)) throw ArgumentError("box width must be positive");
  if (knots_.empty()) return *this;
  // Antiderivative F, continuous, constant beyond the last knot.
  std::vector<Poly> F;
  std::vector<double> base;  // F at the left end of each piece
  double acc = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    Poly a = antiderivative(pieces_[i]);
    a[0] = acc;
    acc = horner(a, knots_[i + 1] - knots_[i]);
    F.push_back(std::move(a));
  }
  const double total = acc;
  const double half = w / 2;

  std::vector<double> nk;
  for (double t : knots_) {
    nk.push_back(t - half);
    nk.push_back(t + half);
  }
  std::sort(nk.begin(), nk.end());
  // Merge knots that differ only by rounding.
  const double scale = std::max(std::abs(nk.front()), std::abs(nk.back()));
  std::vector<double> merged;
  for (double t : nk)
    if (merged.empty() || t - merged.back() > 1e-13 * scale) merged.push_back(t);

  // F(y) as a polynomial in v = x - s for x in the piece starting at s, y = x + off.
  auto F_local = [&](double mid, double s, double off) -> Poly {
    const double y = mid + off;
    if (y <= knots_.front()) return {0.0};
    if (y >= knots_.back()) return {total};
    const int i = piece_at(y);
    return wcert::shift(F[i], s + off - knots_[i]);
  };

  std::vector<Poly> np;
  for (std::size_t j = 0; j + 1 < merged.size(); ++j) {
    const double s = merged[j], mid = 0.5 * (merged[j] + merged[j + 1]);
    Poly hi = F_local(mid, s, half), lo = F_local(mid, s, -half);
    Poly g(std::max(hi.size(), lo.size()), 0.0);
    for (std::size_t i = 0; i < hi.size(); ++i) g[i] += hi[i];
    for (std::size_t i = 0; i < lo.size(); ++i) g[i] -= lo[i];
    for (double& c : g) c /= w;
    np.push_back(std::move(g));
  }
  return PiecewisePoly(std::move(merged), std::move(np));
}

void PiecewisePoly::snap_constant_pieces(double c, double tol) {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double len = knots_[i + 1] - knots_[i];
    Poly diff = pieces_[i];
    diff[0] -= c;
    if (max_abs(diff, len) <= tol) pieces_[i] = {c};
  }
}

}  // namespace wcert
