#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wcert/domains.hpp"
#include "wcert/geometry.hpp"

namespace wcert {

enum class OmegaCondition { W1 = 0, W2 = 1, W3 = 2 };
enum class SCondition { S1, S2, S3, None };

std::string to_string(OmegaCondition c);
std::string to_string(SCondition s);

/// Index map I_j : N -> N with I_j(n) >= n, kept together with its formula.
struct IndexMap {
  std::function<int(int)> fn;
  std::string formula;
  int operator()(int n) const { return fn(n); }
};

/// Constant A_j(n) (possibly depending on the exhaustion level k), stored as
/// a closed-form rule in log space.
struct Constant {
  std::function<double(int n, int level)> log_fn;
  std::string formula;
  double log(int n, int level) const { return log_fn(n, level); }
  double operator()(int n, int level) const;
};

/// Coefficient sequence (a_n) of an exponential family nu_n = exp(a_n mu).
struct ASequence {
  enum class Kind { Linear, NegReciprocal, Explicit };
  Kind kind = Kind::Linear;
  double slope = 1.0;   // Linear: a_n = slope n + offset
  double offset = 0.0;
  double scale = 1.0;   // NegReciprocal: a_n = -scale / n
  std::vector<double> values;  // Explicit: a_1, a_2, ...

  static ASequence linear(double slope, double offset = 0.0);
  static ASequence neg_reciprocal(double scale);
  static ASequence explicit_values(std::vector<double> values);

  double operator()(int n) const;
  /// Largest index at which the sequence is defined (INT_MAX for formulas).
  int max_index() const;
  /// a_n -> infinity with a_n >= 0, or a_n -> 0 with a_n <= 0.
  bool has_limit_property() const;
  std::string formula() const;
};

/// Exponent function mu of an exponential family.
struct MuSpec {
  enum class Kind { UniformlyContinuous, PowerAbs, LogOnePlusSq, HolderBlock, Zero };
  Kind kind = Kind::Zero;
  double delta = 1.0;  // UniformlyContinuous: |x-y|_inf <= delta => |mu(x)-mu(y)| <= 1
  std::function<double(const Point&)> mu;  // UniformlyContinuous: optional custom mu
  int m = 1;                                // PowerAbs
  bool limit_variant = false;               // PowerAbs: constant radii, needs the limit property of (a_n)
  std::vector<int> block;                   // HolderBlock: coordinates I_0
  double gamma = 1.0;                       // HolderBlock / growth exponent
  std::function<double(int)> c_seq;         // growth offsets c_n with |x|^gamma <= mu + c_n on Omega_n
  std::string c_formula;

  static MuSpec uniformly_continuous(double delta);
  static MuSpec power_abs(int m, bool limit_variant = false);
  static MuSpec log_one_plus_sq();
  static MuSpec holder_block(std::vector<int> block, double gamma);
  static MuSpec zero();

  double evaluate(const Point& x) const;
  std::string describe() const;
};

/// A directed weight family together with the witness data of the weight conditions.
struct WeightFamily {
  std::string name;
  std::string case_label;
  std::shared_ptr<const ExhaustionDomain> domain;
  std::function<double(int n, const Point&)> log_nu;
  std::function<double(int k, const Point&)> radius;
  std::function<double(int n, const Point&)> psi;
  std::array<IndexMap, 3> index;
  std::array<Constant, 3> constant;
  std::array<bool, 3> claims{false, false, false};
  SCondition s_condition = SCondition::None;
  std::optional<MuSpec> mu;
  std::optional<ASequence> a_seq;
  std::string radius_formula;
  std::string psi_formula;
  bool radius_constant = false;   // r_k independent of x for every k
  bool radius_continuous = true;
  std::string witness_note;

  int dim() const { return domain->dim(); }
  double nu(int n, const Point& x) const { return std::exp(log_nu(n, x)); }
  int I(int j, int n) const { return index.at(j - 1)(n); }
  double A(int j, int n, int level) const { return constant.at(j - 1)(n, level); }
  double log_A(int j, int n, int level) const { return constant.at(j - 1).log(n, level); }
  bool claims_condition(OmegaCondition c) const { return claims[static_cast<int>(c)]; }

  /// Copy with A_j multiplied by factor (negative controls).
  WeightFamily with_scaled_constant(int j, double factor) const;
};

/// nu_n = exp(a_n mu) with the witnesses of the matching construction case.
WeightFamily make_exp_family(const MuSpec& mu, const ASequence& a_seq,
                             std::shared_ptr<const ExhaustionDomain> domain,
                             int hypothesis_levels = 8);

/// nu_n(x) = max_{1<=j<=n} d_inf(x, boundary)^{-j} on a bounded open set.
WeightFamily make_boundary_family(std::shared_ptr<const ExhaustionDomain> domain);

/// Pointwise product of a family with (w1)-(w3) and one with (w1),(w3).
WeightFamily product_family(const WeightFamily& left, const WeightFamily& right);

struct ConditionCheckResult {
  OmegaCondition condition = OmegaCondition::W1;
  int n = 1;
  int level = 1;
  double worst_ratio = 0.0;
  double bound = 0.0;
  int target_index = 0;
  std::string bound_formula;
  long sample_points = 0;
  long sample_pairs = 0;
  double resolution = 0.0;
  double tolerance = 1e-9;
  Point witness;
  bool pass = false;
};

struct OmegaCheckOptions {
  int offsets_per_axis = 7;
  double tolerance = 1e-9;
  double grid_resolution = 0.0;  // recorded only
};

/// Samples one of the weight conditions on grid points of Omega_k.
ConditionCheckResult check_omega(const WeightFamily& family, OmegaCondition which, int n, int level,
                                 const std::vector<Point>& grid,
                                 const OmegaCheckOptions& options = {});

/// Which structural condition guarantees positivity of the iterated radii.
SCondition classify_s(const WeightFamily& family, const ExhaustionDomain& domain);

/// sup_{t >= 0} of exp(g(t)) given log-profile g, computed by a log-spaced
/// scan plus golden-section refinement. Returns the log of the supremum.
double log_sup_profile(const std::function<double(double)>& g);

}  // namespace wcert
