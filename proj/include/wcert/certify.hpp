#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wcert/bumps.hpp"
#include "wcert/report.hpp"
#include "wcert/test_functions.hpp"

namespace wcert {

/// Compositions of the index maps I_1, I_2, I_3 with a cap on every value.
class IndexCalculus {
 public:
  explicit IndexCalculus(const WeightFamily& family, long cap = 1'000'000);

  /// I_j applied `times` times.
  int apply(int j, int n, int times = 1) const;
  /// Word of (j, times) letters, written left to right and applied right to left.
  int word(const std::vector<std::pair<int, int>>& letters, int n) const;
  /// p = I_{11} D_3 I_{11}(n), D_3 the d-fold I_3.
  int p_index(int n) const;
  /// q = I_{1111} G_3 I_{11112}(p), G_3 the d(m+2)-fold I_3.
  int q_index(int p, int m) const;
  long cap() const { return cap_; }

 private:
  const WeightFamily& family_;
  long cap_;
};

/// Constant D and target index of nu_m(x) <= D r_{n,j}(z_k)^p nu_target(z_k), x in B_k,
/// assembled by replaying the induction factor by factor.
struct TransferConstant {
  double log_D = 0.0;
  int target = 0;
  json factors = json::array();  // {"factor": "A_1", "index": i, "value": v}
  double D() const { return std::exp(log_D); }
};

TransferConstant assemble_transfer(const WeightFamily& family, const IndexCalculus& calc, int m, int j, int p,
                                   int level);

/// sup over grid and |alpha| <= m of |d^alpha f| nu_n. A lower bound of the true supremum.
double seminorm(const TestFunction& f, const WeightFamily& family, int n, int m, const std::vector<Point>& grid);

/// Phi(zeta) = z + lambda (zeta - z), lambda = 8 r_n(z) / r_{n,1}(z).
struct RescaleMap {
  Point center;
  double lambda = 1.0;
  Point forward(const Point& zeta) const { return center + lambda * (zeta - center); }
  Point inverse(const Point& x) const { return center + (1.0 / lambda) * (x - center); }
  double jacobian() const { return std::pow(lambda, center.dim()); }
  static RescaleMap for_center(const Cover& cover, int k);
};

/// Table of d^beta (h_k f)(x) for beta <= A, row-major over indices_below(A).
std::vector<double> product_partials(const Partition& part, int k, const TestFunction& f, const Point& x,
                                     const MultiIndex& A);

/// zeta -> J(zeta)[f] = sum_k d^{m~}(h_k f)(Phi_k(zeta)) nu_{I_2(p)}(zeta).
class JFunctional {
 public:
  JFunctional(const Partition& part, const TestFunction& f, const WeightFamily& family, int m);
  double operator()(const Point& zeta) const;
  /// Number of k with Phi_k(zeta) in supp h_k.
  int support_count(const Point& zeta) const;
  int p() const { return p_; }
  int weight_index() const { return i2p_; }
  const MultiIndex& m_tilde() const { return mt_; }

 private:
  const Partition& part_;
  const TestFunction& f_;
  const WeightFamily& family_;
  int p_, i2p_;
  MultiIndex mt_;
  std::vector<RescaleMap> maps_;
};

struct QuadratureOptions {
  double resolution = 1e-3;
  double stability = 0.01;  // relative agreement required between h and h/2
  int max_samples_per_axis = 11;
};

/// |d^alpha (h_k f)(x)| <= 2^{dm} int_{B_k} |d^{m~}(h_k f)|, x in b_k, |alpha| <= m.
Certificate verify_local_integral(const TestFunction& f, const Partition& part, int m, const QuadratureOptions& q);

/// nu_m(x) <= D r_{n,j}(z_k)^p nu_target(z_k) at sampled x in B_k.
Certificate verify_transfer(const WeightFamily& family, const Partition& part, const IteratedRadius& radii, int m,
                            int j, int p, int samples_per_axis = 9, double tolerance = 1e-9);

/// Q_k pairwise disjoint and Phi_k^{-1}(supp h_k) in Q_k.
Certificate verify_disjoint_supports(const Partition& part);

struct DominationResult {
  Certificate seminorm_domination;
  Certificate functional_bound;
};

/// |f|_{n,m} <= C_0 A_2(p) int_U |J(zeta)[f]| psi_p(zeta) dzeta and
/// |J(zeta)[f]| <= C_1 D_1 A_1 |f|_{q+1, d(m+1)}.
DominationResult domination_certificate(const TestFunction& f, const WeightFamily& family, const Partition& part,
                                        const IteratedRadius& radii, int m,
                                        const std::vector<Point>& seminorm_grid,
                                        const std::vector<Point>& outer_grid_q1, const QuadratureOptions& q,
                                        double tolerance = 1e-9);

}  // namespace wcert
