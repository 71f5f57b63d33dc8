#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wcert/geometry.hpp"

namespace wcert {

enum class Norm { Inf, Euclid };

/// A subset of R^d: membership, bounding box, boundary distance.
///
/// Boxes (with possibly infinite bounds per axis) are handled analytically.
/// Custom regions carry caller-supplied membership and boundary-distance
/// callbacks and are only ever sampled.
class Region {
 public:
  using Membership = std::function<bool(const Point&)>;
  using BoundaryDistance = std::function<double(const Point&, Norm)>;

  static Region full_space(int dim);
  static Region box(const Box& b, bool closed = false);
  static Region custom(const Box& bbox, Membership member, BoundaryDistance dist,
                       bool closed = false);

  int dim() const { return bbox_.dim(); }
  bool contains(const Point& x) const;
  /// inf{|x - zeta| : zeta in boundary}; +inf when the boundary is empty.
  /// Only meaningful for x in the closure of the region.
  double boundary_distance(const Point& x, Norm norm = Norm::Inf) const;
  const Box& bounding_box() const { return bbox_; }
  bool is_full_space() const { return kind_ == Kind::FullSpace; }
  bool is_box() const { return kind_ != Kind::Custom; }
  bool closed() const { return closed_; }
  bool bounded() const { return bbox_.bounded(); }
  Region closure() const;
  /// Points on the boundary inside `window`: face grids for boxes, none for
  /// full space, lattice points within `resolution` of the boundary for
  /// custom regions.
  std::vector<Point> boundary_samples(double resolution, const Box& window) const;

 private:
  enum class Kind { FullSpace, Box, Custom };
  Kind kind_ = Kind::FullSpace;
  Box bbox_;
  bool closed_ = false;
  Membership member_;
  BoundaryDistance dist_;
};

enum class RegionKind {
  FullSpace,             // Omega_n = Omega = R^d
  OpenBox,               // Omega_n = (-s n, s n)^d, Omega = R^d
  BoundedOpenSet,        // Omega_n = Omega, Omega bounded
  SlabTruncation,        // Omega_n = {|x_i| < s n for i in I}, Omega = R^d
  CompactExhaustion,     // Omega_n = interior of K_n inside a bounded box Omega
};

std::string to_string(RegionKind k);

/// Omega together with its exhaustion (Omega_n).
class ExhaustionDomain {
 public:
  static ExhaustionDomain full_space(int dim);
  static ExhaustionDomain growing_box(int dim, double scale = 1.0);
  static ExhaustionDomain slab(int dim, std::vector<int> bounded_axes, double scale = 1.0);
  static ExhaustionDomain bounded_set(const Region& omega);
  /// Omega = open box, Omega_n = prod (a_i + 1/(n+2), b_i - 1/(n+2)).
  static ExhaustionDomain compact_exhaustion(const Box& omega);
  /// Generic exhaustion given by a level rule. Sampled queries only.
  static ExhaustionDomain custom(RegionKind kind, const Region& omega,
                                 std::function<Region(int)> level);

  /// The same family with every Omega_n replaced by its closure.
  ExhaustionDomain closure() const;

  int dim() const { return omega_.dim(); }
  RegionKind kind() const { return kind_; }
  bool closure_flag() const { return closure_; }
  const Region& omega() const { return omega_; }
  Region level(int n) const;
  bool in_level(int n, const Point& x) const { return level(n).contains(x); }
  /// Omega_n = Omega for all n.
  bool stationary() const { return kind_ == RegionKind::FullSpace || kind_ == RegionKind::BoundedOpenSet; }
  /// Omega_n = R^d for all n.
  bool full_space() const { return kind_ == RegionKind::FullSpace; }
  /// Every Omega_n is an axis-aligned box (bounded or not).
  bool analytic() const { return level_ == nullptr; }
  std::string describe() const;

 private:
  RegionKind kind_ = RegionKind::FullSpace;
  Region omega_;
  bool closure_ = false;
  double scale_ = 1.0;
  std::vector<int> axes_;
  std::function<Region(int)> level_;
};

/// inf{|x - zeta|_inf : zeta in boundary of Omega}; +inf when Omega = R^d.
/// Throws DomainMembershipError for x outside Omega.
double dist_inf_boundary(const ExhaustionDomain& domain, const Point& x,
                         Norm norm = Norm::Inf);

/// Distance from x in Omega_n to the boundary of Omega_{n+1}.
double ring_distance(const ExhaustionDomain& domain, int n, const Point& x);

struct GapEstimate {
  double value = kInf;
  bool exact = true;
  bool full_space = false;
  double resolution = 0.0;  // 0 when exact
};

/// D_{n+1} = inf{|x - zeta|_inf : x in Omega_n, zeta in boundary of Omega_{n+1}}.
/// Exact for box levels; for custom levels a lower estimate from lattice
/// samples at the given resolution.
GapEstimate exhaustion_gap(const ExhaustionDomain& domain, int n, double sample_resolution);

/// Lattice points of Omega_n inside the truncation box.
std::vector<Point> sample_level(const ExhaustionDomain& domain, int n, const Box& truncation,
                                const Lattice& lattice, long stride = 1);

}  // namespace wcert
