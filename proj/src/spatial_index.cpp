#include "wcert/spatial_index.hpp"

#include "wcert/errors.hpp"

namespace wcert {

BucketGrid::BucketGrid(int dim, double cell) : dim_(dim), cell_(cell) {
  if (!(cell > 0) || !std::isfinite(cell)) throw ArgumentError("bucket grid: cell size must be positive");
}

std::uint64_t BucketGrid::hash(const std::array<long, kMaxDim>& c) const {
  // 21 bits per axis, offset so negative keys stay distinct.
  std::uint64_t h = 0;
  for (int i = 0; i < dim_; ++i) h = (h << 21) | (static_cast<std::uint64_t>(c[i] + (1L << 20)) & 0x1FFFFF);
  return h;
}

void BucketGrid::insert(int id, const Point& p) {
  if (id != static_cast<int>(points_.size())) throw ArgumentError("bucket grid: ids must be inserted in order");
  std::array<long, kMaxDim> c{};
  for (int i = 0; i < dim_; ++i) {
    c[i] = key_of(p[i]);
    if (c[i] < -(1L << 20) || c[i] >= (1L << 20)) throw ArgumentError("bucket grid: point too far from origin");
  }
  points_.push_back(p);
  buckets_[hash(c)].push_back(id);
}

std::vector<int> BucketGrid::query(const Point& x, double radius) const {
  std::vector<int> out;
  visit(x, radius, [&](int id) {
    out.push_back(id);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace wcert
