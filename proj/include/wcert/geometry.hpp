#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace wcert {

inline constexpr int kMaxDim = 3;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Point in R^d for 1 <= d <= kMaxDim. Unused trailing coordinates stay zero.
class Point {
 public:
  Point() = default;
  explicit Point(int dim) : dim_(dim) { assert(dim >= 1 && dim <= kMaxDim); }
  Point(std::initializer_list<double> xs) : dim_(static_cast<int>(xs.size())) {
    assert(dim_ >= 1 && dim_ <= kMaxDim);
    std::copy(xs.begin(), xs.end(), x_.begin());
  }
  static Point filled(int dim, double v) {
    Point p(dim);
    for (int i = 0; i < dim; ++i) p.x_[i] = v;
    return p;
  }

  int dim() const { return dim_; }
  double operator[](int i) const { return x_[i]; }
  double& operator[](int i) { return x_[i]; }

  friend Point operator+(Point a, const Point& b) {
    for (int i = 0; i < a.dim_; ++i) a.x_[i] += b.x_[i];
    return a;
  }
  friend Point operator-(Point a, const Point& b) {
    for (int i = 0; i < a.dim_; ++i) a.x_[i] -= b.x_[i];
    return a;
  }
  friend Point operator*(double s, Point a) {
    for (int i = 0; i < a.dim_; ++i) a.x_[i] *= s;
    return a;
  }
  friend bool operator==(const Point& a, const Point& b) {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
      if (a.x_[i] != b.x_[i]) return false;
    return true;
  }
  /// Lexicographic order, first coordinate most significant.
  friend bool operator<(const Point& a, const Point& b) {
    for (int i = 0; i < a.dim_; ++i) {
      if (a.x_[i] < b.x_[i]) return true;
      if (b.x_[i] < a.x_[i]) return false;
    }
    return false;
  }

  std::string str() const;

 private:
  std::array<double, kMaxDim> x_{};
  int dim_ = 1;
};

inline double norm_inf(const Point& p) {
  double m = 0.0;
  for (int i = 0; i < p.dim(); ++i) m = std::max(m, std::abs(p[i]));
  return m;
}

inline double norm2_sq(const Point& p) {
  double s = 0.0;
  for (int i = 0; i < p.dim(); ++i) s += p[i] * p[i];
  return s;
}

inline double norm2(const Point& p) { return std::sqrt(norm2_sq(p)); }

inline double dist_inf(const Point& a, const Point& b) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Axis-aligned box; bounds may be infinite per axis.
struct Box {
  Point lo;
  Point hi;

  int dim() const { return lo.dim(); }
  static Box cube(int dim, double lo, double hi) {
    return Box{Point::filled(dim, lo), Point::filled(dim, hi)};
  }
  static Box around(const Point& c, double radius) {
    Box b{c, c};
    for (int i = 0; i < c.dim(); ++i) {
      b.lo[i] -= radius;
      b.hi[i] += radius;
    }
    return b;
  }
  bool contains_closed(const Point& p) const {
    for (int i = 0; i < dim(); ++i)
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
  }
  bool bounded() const {
    for (int i = 0; i < dim(); ++i)
      if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) return false;
    return true;
  }
  Box intersect(const Box& o) const {
    Box b = *this;
    for (int i = 0; i < dim(); ++i) {
      b.lo[i] = std::max(lo[i], o.lo[i]);
      b.hi[i] = std::min(hi[i], o.hi[i]);
    }
    return b;
  }
  bool empty() const {
    for (int i = 0; i < dim(); ++i)
      if (!(lo[i] < hi[i])) return true;
    return false;
  }
  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= hi[i] - lo[i];
    return v;
  }
};

/// Multi-index alpha in N_0^d.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim) : dim_(dim) {}
  MultiIndex(std::initializer_list<int> as) : dim_(static_cast<int>(as.size())) {
    std::copy(as.begin(), as.end(), a_.begin());
  }
  static MultiIndex filled(int dim, int v) {
    MultiIndex m(dim);
    for (int i = 0; i < dim; ++i) m.a_[i] = v;
    return m;
  }

  int dim() const { return dim_; }
  int operator[](int i) const { return a_[i]; }
  int& operator[](int i) { return a_[i]; }
  int order() const {
    int s = 0;
    for (int i = 0; i < dim_; ++i) s += a_[i];
    return s;
  }
  int max_component() const {
    int m = 0;
    for (int i = 0; i < dim_; ++i) m = std::max(m, a_[i]);
    return m;
  }
  bool leq(const MultiIndex& o) const {
    for (int i = 0; i < dim_; ++i)
      if (a_[i] > o.a_[i]) return false;
    return true;
  }
  friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) {
    for (int i = 0; i < a.dim_; ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
      if (a.a_[i] != b.a_[i]) return false;
    return true;
  }
  std::string str() const;

 private:
  std::array<int, kMaxDim> a_{};
  int dim_ = 1;
};

/// alpha! = prod alpha_i!
double factorial(const MultiIndex& a);
/// binom(alpha, gamma) = prod binom(alpha_i, gamma_i)
double binomial(const MultiIndex& a, const MultiIndex& g);
double binomial(int n, int k);

/// All multi-indices gamma with gamma <= bound componentwise, in row-major order.
std::vector<MultiIndex> indices_below(const MultiIndex& bound);
/// All multi-indices of total order <= order.
std::vector<MultiIndex> indices_of_order_at_most(int dim, int order);

/// Axis-aligned point lattice {i * h : i in Z^d}. Every sampled point set in the
/// library is a subset of such a lattice, so coordinates computed at different
/// strides of the same base step agree bit for bit.
class Lattice {
 public:
  Lattice(int dim, double step) : dim_(dim), h_(step) {}
  int dim() const { return dim_; }
  double step() const { return h_; }

  Point point(const std::array<long, kMaxDim>& idx) const {
    Point p(dim_);
    for (int i = 0; i < dim_; ++i) p[i] = static_cast<double>(idx[i]) * h_;
    return p;
  }
  /// Index range [first, last] of lattice coordinates inside the closed box.
  std::array<std::array<long, 2>, kMaxDim> index_range(const Box& b) const;
  /// Lattice index of p if p is exactly a lattice point.
  bool snap(const Point& p, std::array<long, kMaxDim>& idx) const;

  /// Lattice points in the closed box satisfying keep, lexicographic order,
  /// taking every stride-th lattice coordinate (stride anchored at index 0).
  template <class Pred>
  std::vector<Point> points(const Box& b, Pred keep, long stride = 1) const {
    std::vector<Point> out;
    auto r = index_range(b);
    std::array<long, kMaxDim> idx{};
    for (int i = 0; i < dim_; ++i) {
      long f = r[i][0];
      long rem = ((f % stride) + stride) % stride;
      if (rem != 0) f += stride - rem;
      r[i][0] = f;
      if (r[i][0] > r[i][1]) return out;
      idx[i] = r[i][0];
    }
    while (true) {
      Point p = point(idx);
      if (keep(p)) out.push_back(p);
      int ax = dim_ - 1;
      while (ax >= 0) {
        idx[ax] += stride;
        if (idx[ax] <= r[ax][1]) break;
        idx[ax] = r[ax][0];
        --ax;
      }
      if (ax < 0) break;
    }
    return out;
  }

 private:
  int dim_;
  double h_;
};

}  // namespace wcert
