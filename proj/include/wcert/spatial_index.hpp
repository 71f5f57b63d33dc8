#pragma once

#include <unordered_map>
#include <vector>

#include "wcert/geometry.hpp"

namespace wcert {

/// Uniform bucket grid over R^d for sup-norm range queries. Buckets are
/// hashed, so the grid needs no bounding box and grows with insertions.
class BucketGrid {
 public:
  BucketGrid(int dim, double cell);

  void insert(int id, const Point& p);
  std::size_t size() const { return points_.size(); }
  double cell() const { return cell_; }
  const Point& point(int id) const { return points_[static_cast<std::size_t>(id)]; }

  /// Calls fn(id) for every stored point in the closed box [x - radius, x + radius].
  /// Return false from fn to stop early. Returns false if stopped early.
  template <class Fn>
  bool visit(const Point& x, double radius, Fn&& fn) const {
    std::array<long, kMaxDim> lo{}, hi{}, c{};
    for (int i = 0; i < dim_; ++i) {
      lo[i] = key_of(x[i] - radius);
      hi[i] = key_of(x[i] + radius);
      c[i] = lo[i];
    }
    while (true) {
      auto it = buckets_.find(hash(c));
      if (it != buckets_.end()) {
        for (int id : it->second) {
          const Point& p = points_[static_cast<std::size_t>(id)];
          if (dist_inf(p, x) <= radius && !fn(id)) return false;
        }
      }
      int ax = dim_ - 1;
      while (ax >= 0) {
        if (++c[ax] <= hi[ax]) break;
        c[ax] = lo[ax];
        --ax;
      }
      if (ax < 0) break;
    }
    return true;
  }

  /// Ids within sup-distance radius of x, ascending.
  std::vector<int> query(const Point& x, double radius) const;

 private:
  long key_of(double v) const { return static_cast<long>(std::floor(v / cell_)); }
  std::uint64_t hash(const std::array<long, kMaxDim>& c) const;

  int dim_;
  double cell_;
  std::vector<Point> points_;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
};

}  // namespace wcert
