#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wcert/radii.hpp"
#include "wcert/report.hpp"
#include "wcert/spatial_index.hpp"
#include "wcert/weights.hpp"

namespace wcert {

enum class CoverStrategy { Bucket, Naive };

struct CoverOptions {
  double candidate_resolution = 1e-2;  // an integer multiple of the oracle resolution
  Box truncation;
  CoverStrategy strategy = CoverStrategy::Bucket;
  /// Centers keep |z_k - z_j|_inf >= factor * max(r_{n,1}(z_k), r_{n,1}(z_j)).
  double separation_factor = 0.5;
};

/// Centers z_k with outer radii rho_k = r_n(z_k):
///   b_k = {|x - z_k|_inf < rho_k / 2},  B_k = {|x - z_k|_inf < rho_k},
///   Q_k = {|x - z_k|_inf < r_{n,1}(z_k) / 8}.
struct Cover {
  int n = 1;
  int dim = 1;
  std::vector<Point> centers;
  std::vector<double> rho;
  std::vector<double> r1;
  std::vector<std::vector<int>> neighbors;  // M_k, ascending, contains k
  double candidate_resolution = 0.0;
  double oracle_resolution = 0.0;
  Box truncation;
  long candidates = 0;
  long separation_tests = 0;
  double separation_factor = 0.5;
  double rho_max = 0.0;
  double r1_max = 0.0;
  std::shared_ptr<BucketGrid> index;

  int size() const { return static_cast<int>(centers.size()); }
  bool in_inner(int k, const Point& x) const { return dist_inf(x, centers[k]) < rho[k] / 2; }
  bool in_outer(int k, const Point& x) const { return dist_inf(x, centers[k]) < rho[k]; }
  bool in_core(int k, const Point& x) const { return dist_inf(x, centers[k]) < r1[k] / 8; }
  /// {k : x in B_k}, ascending.
  std::vector<int> containing(const Point& x) const;
  /// {k : x in Q_k}, ascending (at most one element for a valid cover).
  std::vector<int> cores_containing(const Point& x) const;
  /// Rebuilds the bucket index (cell = min rho / 2) and the neighbor sets.
  void finalize();
  /// Copy with center k removed (negative control).
  Cover without_center(int k) const;
};

/// Greedy maximal separated centers on the candidate lattice of Omega_n inside
/// the truncation box, visited in lexicographic order.
Cover build_cover(const WeightFamily& family, const IteratedRadius& radii, const CoverOptions& options);

/// Separation |z_k - z_j| >= factor max(r_{n,1}(z_k), r_{n,1}(z_j)) for all pairs.
Certificate verify_separation(const Cover& cover);
/// Every grid point lies in some b_k; every corner of every B_k lies in Omega_{n+1}.
Certificate verify_covering(const Cover& cover, const WeightFamily& family, const std::vector<Point>& grid);
/// |{k : x in B_k}| <= (8 / r_{n,2}(x))^d at every grid point.
Certificate overlap_profile(const Cover& cover, const std::vector<Point>& grid, const IteratedRadius& radii);
/// |M_k| <= (8 / r_{n,3}(z_k))^d, M_k symmetric and k in M_k.
Certificate neighbor_sets(const Cover& cover, const IteratedRadius& radii);
/// r_n(z_m) >= r_{n,1}(x) >= r_{n,2}(z_k) >= r_{n,3}(z_k) for grid x in B_m and B_k.
Certificate chain_inequality(const Cover& cover, const std::vector<Point>& grid, const IteratedRadius& radii);

/// CSV: k, z_k coordinates, rho_k, r_{n,1}(z_k).
void write_cover_csv(const Cover& cover, const std::string& path);

}  // namespace wcert
