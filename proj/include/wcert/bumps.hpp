#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wcert/cover.hpp"
#include "wcert/piecewise_poly.hpp"
#include "wcert/report.hpp"

namespace wcert {

/// First M terms of w_j = 2^-j, renormalized to sum to one.
std::vector<double> default_weights(int M);

/// Indicator of [-a, a], a = 3r/4, convolved with M centered unit-mass boxes
/// of widths d_j = w_j r / 3. Equal to 1 on |t| <= 7r/12, zero for |t| >= 11r/12.
class BumpProfile1D {
 public:
  BumpProfile1D(double r, int M, std::vector<double> w);

  double r() const { return r_; }
  int order() const { return M_; }
  double half_width() const { return a_; }
  double spread() const { return s_; }
  const std::vector<double>& widths() const { return d_; }
  const std::vector<double>& weights() const { return w_; }
  /// j-th derivative at t, j <= M - 1.
  double operator()(double t, int j = 0) const;
  const PiecewisePoly& derivative(int j) const { return derivs_.at(j); }
  /// 2^j / (d_1 ... d_j)
  double derivative_bound(int j) const;
  double support_half_width() const { return derivs_[0].support_hi(); }

 private:
  double r_;
  int M_;
  double a_, s_;
  std::vector<double> w_, d_;
  std::vector<PiecewisePoly> derivs_;
};

/// Product rule over the flat row-major table of beta <= bound:
/// out[beta] = sum_{gamma <= beta} binom(beta, gamma) f[gamma] g[beta - gamma].
struct LeibnizPlan {
  struct Term {
    int out, left, right;
    double coeff;
  };
  MultiIndex bound;
  std::vector<MultiIndex> betas;
  std::vector<Term> terms;

  explicit LeibnizPlan(const MultiIndex& bound);
  std::size_t size() const { return betas.size(); }
  int flat(const MultiIndex& b) const;
  void apply(const double* f, const double* g, double* out) const;
  /// Per-thread cached plan for this bound.
  static const LeibnizPlan& get(const MultiIndex& bound);
};

/// phi_k(x) = prod_i P(x_i - z_{k,i}) for the profile P of radius rho_k.
struct Cutoff {
  Point center;
  std::shared_ptr<const BumpProfile1D> profile;

  double operator()(const Point& x) const;
  double partial(const Point& x, const MultiIndex& alpha) const;
  /// sup-distance beyond which phi and all derivatives vanish.
  double support_radius() const { return profile->support_half_width(); }
};

/// h_k = phi_k prod_{m in M_k, m < k} (1 - phi_m).
struct PartitionFn {
  int k = 0;
  std::vector<int> factors;  // the indices m
};

class Partition {
 public:
  Partition(const Cover& cover, int M, std::vector<double> w);

  int order() const { return M_; }
  const std::vector<double>& weights() const { return w_; }
  const Cover& cover() const { return *cover_; }
  const Cutoff& cutoff(int k) const { return cutoffs_[k]; }
  const PartitionFn& fn(int k) const { return fns_[k]; }
  int size() const { return static_cast<int>(fns_.size()); }

  /// d^alpha h_k(x), exact. Throws OrderError if some alpha_i > M - 1.
  double eval_partial(int k, const Point& x, const MultiIndex& alpha) const;
  /// Table of d^beta h_k(x) for all beta <= alpha (row-major over indices_below(alpha)).
  std::vector<double> partial_table(int k, const Point& x, const MultiIndex& alpha) const;
  /// sum_k h_k(x)
  double sum(const Point& x) const;
  /// C~_alpha = 8^d (sum_i d^alpha_i) alpha! (3c)^|alpha| / (w_1 ... w_|alpha|), c = 2.
  double c_tilde(const MultiIndex& alpha) const;
  void check_order(const MultiIndex& alpha) const;

 private:
  std::shared_ptr<const Cover> cover_;
  int M_;
  std::vector<double> w_;
  std::vector<Cutoff> cutoffs_;
  std::vector<PartitionFn> fns_;
};

/// Smallest M giving classical derivatives up to max_component and weights
/// w_1..w_|alpha| for every |alpha| <= max_order.
int required_order(int max_component, int max_order);

/// Partition of unity checks: sum to one, range, support, derivative bounds.
std::vector<Certificate> certify_partition(const Partition& partition, const IteratedRadius& radii,
                                           int alpha_max_order, const std::vector<Point>& grid);

/// 1-D profile derivative bounds sup |P^(j)| <= 2^j / (d_1 ... d_j), exact.
Certificate certify_profile(const BumpProfile1D& profile);

/// CSV rows k, z_k, rho_k, support half-width of phi_k (cutoff supports).
void write_cutoff_csv(const Partition& partition, const std::string& path);
/// CSV rows k, z_k, half-width of Phi_k^{-1}(supp h_k), r_{n,1}(z_k)/8.
void write_pullback_csv(const Partition& partition, const std::string& path);

}  // namespace wcert
