#pragma once

#include <string>
#include <vector>

#include "wcert/report.hpp"
#include "wcert/weights.hpp"

namespace wcert {

/// Iterated radii r_{n,k}:
///   r_{n,0} = r_n,
///   r_{n,k}(z) = inf{ r_{n,k-1}(eta) : eta in Omega_n,
///                     |eta - z|_inf <= r_n(eta) or |eta - z|_inf <= r_n(z) }.
///
/// Constant radii use the closed form. Otherwise every depth is tabulated on
/// the lattice points of Omega_n around the query window; each table entry is
/// the exact minimum over lattice points, hence an upper bound of the true
/// infimum. All values are mutually consistent on the lattice, which is what
/// the cover and partition certificates rely on.
class IteratedRadius {
 public:
  struct Options {
    double resolution = 1e-3;
    Box window;         // query region; tables extend max_depth beyond it
    int max_depth = 3;
  };

  IteratedRadius(const WeightFamily& family, int n, const Options& options);

  /// r_{n,k}(z). Lattice points inside the window are table lookups; other
  /// points of the window fall back to a direct minimum over the depth k-1 table.
  double operator()(int k, const Point& z) const;

  bool closed_form() const { return closed_form_; }
  std::string strategy() const;
  double resolution() const { return lattice_.step(); }
  const Lattice& lattice() const { return lattice_; }
  const Box& window() const { return window_; }
  int level() const { return n_; }
  int max_depth() const { return depth_; }
  long table_size() const { return static_cast<long>(tables_.empty() ? 0 : tables_[0].size()); }
  const WeightFamily& family() const { return family_; }

 private:
  long flat(const std::array<long, kMaxDim>& idx) const;
  bool table_index(const Point& z, long& flat_index) const;
  std::array<long, 2> axis_range(long gi, double radius, int axis) const;
  void build_tables();
  double brute(int k, const Point& z) const;

  WeightFamily family_;
  int n_;
  int depth_;
  Lattice lattice_;
  Box window_;
  Region level_region_;
  bool closed_form_ = false;
  std::array<long, kMaxDim> origin_{};
  std::array<long, kMaxDim> extent_{};
  double r_max_ = 0.0;
  std::vector<std::vector<double>> tables_;  // tables_[k][flat], +inf off Omega_n
};

/// min r_{n,k} over the grid for k = 0..k_max; fails if a minimum is not
/// positive, reports not-certified when no structural condition applies.
Certificate positivity_certificate(const IteratedRadius& radii, int k_max,
                                   const std::vector<Point>& grid);

/// Local lower bound r_n(x) >= nu_n(x) / (A_3(n) nu_{I_3(n)}(x)) at the grid.
Certificate radius_lower_bound_certificate(const WeightFamily& family, int n,
                                           const std::vector<Point>& grid, double tolerance = 1e-9);

}  // namespace wcert
