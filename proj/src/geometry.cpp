#include "wcert/geometry.hpp"

#include <sstream>

namespace wcert {

std::string Point::str() const {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (int i = 0; i < dim_; ++i) {
    if (i) os << ", ";
    os << x_[i];
  }
  os << ')';
  return os.str();
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < dim_; ++i) {
    if (i) os << ',';
    os << a_[i];
  }
  os << ')';
  return os.str();
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double factorial(const MultiIndex& a) {
  double f = 1.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 2; j <= a[i]; ++j) f *= j;
  return f;
}

double binomial(const MultiIndex& a, const MultiIndex& g) {
  double b = 1.0;
  for (int i = 0; i < a.dim(); ++i) b *= binomial(a[i], g[i]);
  return b;
}

std::vector<MultiIndex> indices_below(const MultiIndex& bound) {
  std::vector<MultiIndex> out;
  const int d = bound.dim();
  MultiIndex cur(d);
  while (true) {
    out.push_back(cur);
    int ax = d - 1;
    while (ax >= 0) {
      if (++cur[ax] <= bound[ax]) break;
      cur[ax] = 0;
      --ax;
    }
    if (ax < 0) break;
  }
  return out;
}

std::vector<MultiIndex> indices_of_order_at_most(int dim, int order) {
  std::vector<MultiIndex> out;
  for (const auto& a : indices_below(MultiIndex::filled(dim, order)))
    if (a.order() <= order) out.push_back(a);
  return out;
}

std::array<std::array<long, 2>, kMaxDim> Lattice::index_range(const Box& b) const {
  std::array<std::array<long, 2>, kMaxDim> r{};
  for (int i = 0; i < dim_; ++i) {
    long f = static_cast<long>(std::ceil(b.lo[i] / h_));
    long l = static_cast<long>(std::floor(b.hi[i] / h_));
    // ceil/floor of a rounded quotient can land one step outside the box.
    while (static_cast<double>(f) * h_ < b.lo[i]) ++f;
    while (static_cast<double>(f - 1) * h_ >= b.lo[i]) --f;
    while (static_cast<double>(l) * h_ > b.hi[i]) --l;
    while (static_cast<double>(l + 1) * h_ <= b.hi[i]) ++l;
    r[i] = {f, l};
  }
  return r;
}

bool Lattice::snap(const Point& p, std::array<long, kMaxDim>& idx) const {
  for (int i = 0; i < dim_; ++i) {
    idx[i] = std::lround(p[i] / h_);
    if (static_cast<double>(idx[i]) * h_ != p[i]) return false;
  }
  return true;
}

}  // namespace wcert
