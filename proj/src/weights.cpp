#include "wcert/weights.hpp"

#include <climits>
#include <sstream>

#include "wcert/errors.hpp"

namespace wcert {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double log1p_sq(const Point& x) { return std::log1p(norm2_sq(x)); }

double gap_at(const ExhaustionDomain& d, int k) { return exhaustion_gap(d, k, 1e-3).value; }

IndexMap identity_map() { return {[](int n) { return n; }, "n"}; }
IndexMap shift_map(int s) {
  return {[s](int n) { return n + s; }, "n + " + std::to_string(s)};
}

Constant constant_value(double v, std::string formula) {
  const double lv = std::log(v);
  return {[lv](int, int) { return lv; }, std::move(formula)};
}

// Smallest p with d <= 2p - 1 and m <= 2p + 1.
int minimal_p(int d, int m) {
  int p = 1;
  while (!(d <= 2 * p - 1 && m <= 2 * p + 1)) ++p;
  return p;
}

}  // namespace

std::string to_string(OmegaCondition c) {
  switch (c) {
    case OmegaCondition::W1: return "w1";
    case OmegaCondition::W2: return "w2";
    case OmegaCondition::W3: return "w3";
  }
  return "?";
}

std::string to_string(SCondition s) {
  switch (s) {
    case SCondition::S1: return "s1";
    case SCondition::S2: return "s2";
    case SCondition::S3: return "s3";
    case SCondition::None: return "none";
  }
  return "?";
}

double Constant::operator()(int n, int level) const { return std::exp(log_fn(n, level)); }

ASequence ASequence::linear(double slope, double offset) {
  ASequence a;
  a.kind = Kind::Linear;
  a.slope = slope;
  a.offset = offset;
  return a;
}

ASequence ASequence::neg_reciprocal(double scale) {
  ASequence a;
  a.kind = Kind::NegReciprocal;
  a.scale = scale;
  return a;
}

ASequence ASequence::explicit_values(std::vector<double> values) {
  ASequence a;
  a.kind = Kind::Explicit;
  a.values = std::move(values);
  return a;
}

double ASequence::operator()(int n) const {
  switch (kind) {
    case Kind::Linear: return slope * n + offset;
    case Kind::NegReciprocal: return -scale / n;
    case Kind::Explicit:
      if (n < 1 || n > static_cast<int>(values.size()))
        throw IndexCapError("coefficient sequence undefined at index " + std::to_string(n));
      return values[n - 1];
  }
  return 0.0;
}

int ASequence::max_index() const {
  return kind == Kind::Explicit ? static_cast<int>(values.size()) : INT_MAX;
}

bool ASequence::has_limit_property() const {
  switch (kind) {
    case Kind::Linear: return slope > 0 && slope + offset >= 0;
    case Kind::NegReciprocal: return scale > 0;
    case Kind::Explicit: return false;
  }
  return false;
}

std::string ASequence::formula() const {
  switch (kind) {
    case Kind::Linear: return fmt(slope) + "*n + " + fmt(offset);
    case Kind::NegReciprocal: return "-" + fmt(scale) + "/n";
    case Kind::Explicit: return "explicit[" + std::to_string(values.size()) + "]";
  }
  return "?";
}

MuSpec MuSpec::uniformly_continuous(double delta) {
  MuSpec m;
  m.kind = Kind::UniformlyContinuous;
  m.delta = delta;
  return m;
}

MuSpec MuSpec::power_abs(int m, bool limit_variant) {
  MuSpec s;
  s.kind = Kind::PowerAbs;
  s.m = m;
  s.limit_variant = limit_variant;
  return s;
}

MuSpec MuSpec::log_one_plus_sq() {
  MuSpec s;
  s.kind = Kind::LogOnePlusSq;
  return s;
}

MuSpec MuSpec::holder_block(std::vector<int> block, double gamma) {
  MuSpec s;
  s.kind = Kind::HolderBlock;
  s.block = std::move(block);
  s.gamma = gamma;
  return s;
}

MuSpec MuSpec::zero() { return MuSpec{}; }

double MuSpec::evaluate(const Point& x) const {
  switch (kind) {
    case Kind::UniformlyContinuous:
      if (mu) return mu(x);
      // |x|_2 / (sqrt(d) delta): a step of sup-norm delta moves it by at most 1.
      return norm2(x) / (std::sqrt(static_cast<double>(x.dim())) * delta);
    case Kind::PowerAbs: return std::pow(norm2(x), m);
    case Kind::LogOnePlusSq: return log1p_sq(x);
    case Kind::HolderBlock: {
      double s = 0.0;
      for (int i : block) s += x[i] * x[i];
      return std::pow(std::sqrt(s), gamma);
    }
    case Kind::Zero: return 0.0;
  }
  return 0.0;
}

std::string MuSpec::describe() const {
  switch (kind) {
    case Kind::UniformlyContinuous: return "uniformly_continuous(delta=" + fmt(delta) + ")";
    case Kind::PowerAbs: return "|x|^" + std::to_string(m) + (limit_variant ? " (constant radii)" : "");
    case Kind::LogOnePlusSq: return "ln(1+|x|^2)";
    case Kind::HolderBlock: return "|x_I0|^" + fmt(gamma);
    case Kind::Zero: return "0";
  }
  return "?";
}

WeightFamily WeightFamily::with_scaled_constant(int j, double factor) const {
  WeightFamily f = *this;
  auto old = constant.at(j - 1).log_fn;
  const double lf = std::log(factor);
  f.constant.at(j - 1).log_fn = [old, lf](int n, int k) { return old(n, k) + lf; };
  f.constant.at(j - 1).formula = fmt(factor) + " * (" + constant.at(j - 1).formula + ")";
  f.name = name + " [A" + std::to_string(j) + " scaled by " + fmt(factor) + "]";
  return f;
}

double log_sup_profile(const std::function<double(double)>& g) {
  constexpr int kScan = 4000;
  const double lo = -8.0, hi = 10.0;  // log10 of t
  double best = g(0.0);
  double best_t = 0.0;
  int best_i = -1;
  for (int i = 0; i <= kScan; ++i) {
    const double t = std::pow(10.0, lo + (hi - lo) * i / kScan);
    const double v = g(t);
    if (v > best) {
      best = v;
      best_t = t;
      best_i = i;
    }
  }
  if (best_i == kScan) throw ConstructionError("profile supremum is not attained (unbounded growth)");
  if (best_i < 0) return best;
  double a = best_i == 0 ? 0.0 : std::pow(10.0, lo + (hi - lo) * (best_i - 1) / kScan);
  double b = std::pow(10.0, lo + (hi - lo) * (best_i + 1) / kScan);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double c = b - phi * (b - a), d = a + phi * (b - a);
    if (g(c) > g(d)) b = d; else a = c;
  }
  const double mid = 0.5 * (a + b);
  best = std::max({best, g(mid), g(best_t)});
  // Golden section leaves a relative error far below this; add it so the
  // constant is an upper bound of the supremum.
  return best + 1e-9 * std::max(1.0, std::abs(best));
}

WeightFamily make_exp_family(const MuSpec& mu, const ASequence& a,
                             std::shared_ptr<const ExhaustionDomain> domain,
                             int hypothesis_levels) {
  if (!domain) throw ConstructionError("exp family: missing domain");
  const int d = domain->dim();
  const ExhaustionDomain& dom = *domain;

  // Coefficients: strictly increasing, single sign.
  const int check_to = std::min(hypothesis_levels + 1, a.max_index());
  bool all_nonneg = true, all_nonpos = true;
  for (int n = 1; n <= check_to; ++n) {
    const double an = a(n);
    all_nonneg = all_nonneg && an >= 0;
    all_nonpos = all_nonpos && an <= 0;
    if (n > 1 && !(an > a(n - 1)))
      throw ConstructionError("exp family: coefficients a_n are not strictly increasing at n=" +
                              std::to_string(n));
  }
  if (mu.kind != MuSpec::Kind::Zero && !all_nonneg && !all_nonpos)
    throw ConstructionError("exp family: coefficients a_n change sign (need a_n >= 0 for all n or a_n <= 0 for all n)");

  // Domain: Omega_n = R^d for all n, or 0 < D_{n+1} < inf for all n.
  const bool full = dom.full_space();
  if (!full) {
    for (int n = 1; n <= hypothesis_levels; ++n) {
      const GapEstimate g = exhaustion_gap(dom, n, 1e-3);
      if (g.full_space || !(g.value > 0) || !std::isfinite(g.value))
        throw ConstructionError("exp family: need Omega_n = R^d for all n or 0 < D_{n+1} < inf; fails at n=" +
                                std::to_string(n));
    }
  }

  WeightFamily f;
  f.domain = domain;
  f.mu = mu;
  f.a_seq = a;
  f.name = "exp(a_n mu), mu = " + mu.describe() + ", a_n = " + a.formula();
  f.log_nu = [mu, a](int n, const Point& x) { return a(n) * mu.evaluate(x); };
  f.index = {identity_map(), identity_map(), identity_map()};
  auto dptr = domain;
  auto psi_pow = [](int p) {
    return [p](int, const Point& x) { return std::exp(-p * log1p_sq(x)); };
  };

  switch (mu.kind) {
    case MuSpec::Kind::UniformlyContinuous:
    case MuSpec::Kind::HolderBlock: {
      double delta = mu.delta;
      if (mu.kind == MuSpec::Kind::HolderBlock) {
        if (!(mu.gamma > 0 && mu.gamma <= 1)) throw ConstructionError("holder block: need 0 < gamma <= 1");
        if (mu.block.empty()) throw ConstructionError("holder block: empty coordinate block");
        // |a|^g - |b|^g <= |a-b|^g <= 1 once the block distance is <= 1.
        delta = 1.0 / std::sqrt(static_cast<double>(mu.block.size()));
      }
      if (!(delta > 0)) throw ConstructionError("uniform continuity modulus delta must be positive");
      f.case_label = mu.c_seq ? "ii" : "i";
      if (full) {
        const double r = std::min(delta, 1.0);
        f.radius = [r](int, const Point&) { return r; };
        f.radius_formula = "min(delta, 1) = " + fmt(r);
        f.constant[2] = {[r](int, int) { return -std::log(r); }, "1 / r_k = " + fmt(1.0 / r)};
      } else {
        f.radius = [dptr, delta](int k, const Point&) { return std::min(delta, gap_at(*dptr, k)) / 2; };
        f.radius_formula = "min(delta, D_{k+1}) / 2, delta = " + fmt(delta);
        f.constant[2] = {[dptr, delta](int, int k) { return -std::log(std::min(delta, gap_at(*dptr, k)) / 2); },
                         "1 / r_k"};
      }
      f.radius_constant = true;
      f.constant[0] = {[a](int n, int) { return 2.0 * std::abs(a(n)); }, "exp(2 |a_n|)"};
      f.claims = {true, false, true};
      if (mu.c_seq) {
        const double gamma = mu.gamma;
        auto c = mu.c_seq;
        f.psi = psi_pow(d);
        f.psi_formula = "(1+|x|^2)^-" + std::to_string(d);
        f.index[1] = shift_map(1);
        f.constant[1] = {[a, gamma, c, d](int n, int k) {
                           const double da = a(n + 1) - a(n);
                           const double c0 = log_sup_profile([&](double t) {
                             return d * std::log1p(t * t) - da * std::pow(t, gamma);
                           });
                           return c0 + da * c(k);
                         },
                         "sup_t (1+t^2)^d exp(-(a_{n+1}-a_n) t^gamma) * exp((a_{n+1}-a_n) c_k)"};
        f.claims[1] = true;
      }
      f.s_condition = SCondition::S1;
      break;
    }
    case MuSpec::Kind::PowerAbs: {
      const int m = mu.m;
      if (m < 1) throw ConstructionError("power mu: exponent m must be a positive integer");
      if (mu.limit_variant) {
        if (!a.has_limit_property())
          throw ConstructionError("constant-radius power family needs a_n -> inf with a_n >= 0 or a_n -> 0 with a_n <= 0");
        // Constant radii, growth index found by search.
        f.case_label = "iii.2";
        const bool pos = all_nonneg;
        const double growth = std::pow(1.0 + 2.0 * d, m);
        auto J = [a, pos, growth](int n) {
          const double target = pos ? a(n) * growth : a(n) / growth;
          const int cap = std::min(a.max_index(), n + 1000000);
          for (int j = n; j <= cap; ++j)
            if (target <= a(j)) return j;
          throw IndexCapError("growth index search exceeded cap at n=" + std::to_string(n));
        };
        f.index[0] = {J, pos ? "min{j : a_n (1+2d)^m <= a_j}" : "min{j : a_n / (1+2d)^m <= a_j}"};
        if (pos)
          f.constant[0] = {[a, J](int n, int) { return a(J(n)); }, "exp(a_{J_1(n)})"};
        else
          f.constant[0] = {[a](int n, int) { return std::abs(a(n)); }, "exp(|a_n|)"};
        if (full) {
          f.radius = [](int, const Point&) { return 1.0; };
          f.radius_formula = "1";
          f.constant[2] = constant_value(1.0, "1 / r_k = 1");
        } else {
          f.radius = [dptr](int k, const Point&) { return std::min(1.0, gap_at(*dptr, k)) / 2; };
          f.radius_formula = "min(1, D_{k+1}) / 2";
          f.constant[2] = {[dptr](int, int k) { return -std::log(std::min(1.0, gap_at(*dptr, k)) / 2); },
                           "1 / r_k"};
        }
        f.radius_constant = true;
        int p = 1;
        while (!(d <= 2 * p - 1)) ++p;
        f.psi = psi_pow(p);
        f.psi_formula = "(1+|x|^2)^-" + std::to_string(p);
        f.index[1] = shift_map(1);
        f.constant[1] = {[a, p, m](int n, int) {
                           const double da = a(n + 1) - a(n);
                           return log_sup_profile([&](double t) {
                             return p * std::log1p(t * t) - da * std::pow(t, m);
                           });
                         },
                         "sup_t (1+t^2)^p exp((a_n - a_{n+1}) t^m)"};
        f.s_condition = SCondition::S1;
      } else {
        f.case_label = "iii.1";
        const int p = minimal_p(d, m);
        const double sd = std::sqrt(static_cast<double>(d));
        double cmu = 0.0;
        for (int j = 1; j <= m; ++j)
          cmu += binomial(m, j) * std::pow(2.0, j) * std::pow(sd, j) * std::pow(1.0 + sd, m - j);
        f.constant[0] = {[a, cmu](int n, int) { return std::abs(a(n)) * cmu; },
                         "exp(|a_n| C_mu), C_mu = " + fmt(cmu)};
        if (full) {
          f.radius = [p](int, const Point& x) { return std::exp(-p * log1p_sq(x)); };
          f.radius_formula = "(1+|x|^2)^-" + std::to_string(p);
          f.constant[2] = {[a, p, m](int n, int) {
                             const double da = a(n + 1) - a(n);
                             return log_sup_profile([&](double t) {
                               return p * std::log1p(t * t) - da * std::pow(t, m);
                             });
                           },
                           "sup_t (1+t^2)^p exp((a_n - a_{n+1}) t^m)"};
        } else {
          f.radius = [dptr, p](int k, const Point& x) {
            return std::min(std::exp(-p * log1p_sq(x)), gap_at(*dptr, k)) / 2;
          };
          f.radius_formula = "min((1+|x|^2)^-" + std::to_string(p) + ", D_{k+1}) / 2";
          f.constant[2] = {[a, p, m, dptr](int n, int k) {
                             const double da = a(n + 1) - a(n);
                             const double inv_gap = 1.0 / gap_at(*dptr, k);
                             return std::log(2.0) + log_sup_profile([&](double t) {
                                      return std::log(inv_gap + std::pow(1.0 + t * t, p)) - da * std::pow(t, m);
                                    });
                           },
                           "sup_t 2 (1/D_{k+1} + (1+t^2)^p) exp((a_n - a_{n+1}) t^m)"};
        }
        f.index[2] = shift_map(1);
        // r_k <= psi_{n,p} pointwise, so the radius witness also bounds psi.
        f.psi = psi_pow(p);
        f.psi_formula = "(1+|x|^2)^-" + std::to_string(p);
        f.index[1] = shift_map(1);
        f.constant[1] = f.constant[2];
        f.radius_constant = false;
        f.s_condition = SCondition::S3;
      }
      f.claims = {true, true, true};
      break;
    }
    case MuSpec::Kind::LogOnePlusSq: {
      if (!full) throw ConstructionError("ln(1+|x|^2) family requires Omega_n = R^d for all n");
      for (int n = 1; n <= check_to; ++n)
        if (std::abs(a(n) - n / 2.0) > 1e-12)
          throw ConstructionError("ln(1+|x|^2) family requires a_n = n/2");
      f.case_label = "iv";
      f.name = "Schwartz (1+|x|^2)^{n/2}";
      f.radius = [](int, const Point&) { return 1.0; };
      f.radius_formula = "1";
      f.radius_constant = true;
      f.psi = psi_pow(d);
      f.psi_formula = "(1+|x|^2)^-" + std::to_string(d);
      const double base = 1.0 + 8.0 * d;
      f.constant[0] = {[base](int n, int) { return 0.5 * n * std::log(base); },
                       "(1+8d)^{n/2}, d = " + std::to_string(d)};
      f.constant[1] = constant_value(1.0, "1");
      f.constant[2] = constant_value(1.0, "1");
      f.index[1] = shift_map(2 * d);
      f.index[2] = shift_map(2 * d);
      f.claims = {true, true, true};
      f.s_condition = SCondition::S1;
      break;
    }
    case MuSpec::Kind::Zero: {
      for (int n = 1; n <= hypothesis_levels; ++n)
        if (!dom.level(n).bounded())
          throw ConstructionError("mu = 0 family requires every Omega_n to be bounded");
      f.case_label = "v";
      f.name = "constant weights nu_n = 1";
      f.log_nu = [](int, const Point&) { return 0.0; };
      f.radius = [dptr](int k, const Point&) { return std::min(gap_at(*dptr, k), 1.0) / 2; };
      f.radius_formula = "min(D_{k+1}, 1) / 2";
      f.radius_constant = true;
      f.psi = [](int, const Point&) { return 1.0; };
      f.psi_formula = "1";
      f.constant[0] = constant_value(1.0, "1");
      f.constant[1] = constant_value(1.0, "1");
      f.constant[2] = {[dptr](int, int k) { return -std::log(std::min(gap_at(*dptr, k), 1.0) / 2); },
                       "1 / r_k"};
      f.claims = {true, true, true};
      f.s_condition = SCondition::S1;
      break;
    }
  }
  if (f.s_condition == SCondition::S3 && !dom.stationary()) f.s_condition = classify_s(f, dom);
  return f;
}

WeightFamily make_boundary_family(std::shared_ptr<const ExhaustionDomain> domain) {
  if (!domain) throw ConstructionError("boundary family: missing domain");
  if (domain->kind() != RegionKind::BoundedOpenSet || !domain->omega().bounded())
    throw ConstructionError("boundary family requires a bounded open set with Omega_n = Omega");
  auto dptr = domain;
  WeightFamily f;
  f.domain = domain;
  f.case_label = "boundary";
  f.name = "max_{j<=n} d_inf(x, boundary)^-j";
  f.log_nu = [dptr](int n, const Point& x) {
    const double dist = dist_inf_boundary(*dptr, x);
    // max_j dist^-j is dist^-n below 1 and dist^-1 above.
    return dist < 1.0 ? -n * std::log(dist) : -std::log(dist);
  };
  f.radius = [dptr](int, const Point& x) { return std::min(dist_inf_boundary(*dptr, x) / 2, 1.0); };
  f.radius_formula = "min(d_inf(x, boundary) / 2, 1)";
  f.psi = [dptr](int, const Point& x) { return std::min(dist_inf_boundary(*dptr, x) / 2, 1.0); };
  f.psi_formula = "r(x)";
  f.index = {identity_map(), shift_map(1), shift_map(1)};
  f.constant[0] = {[](int n, int) { return n * std::log(3.0); }, "3^n"};
  f.constant[1] = constant_value(2.0, "2");
  f.constant[2] = constant_value(2.0, "2");
  f.claims = {true, true, true};
  f.radius_constant = false;
  f.radius_continuous = true;
  f.s_condition = SCondition::S3;
  return f;
}

WeightFamily product_family(const WeightFamily& left, const WeightFamily& right) {
  if (!left.domain || !right.domain || left.domain->describe() != right.domain->describe() ||
      !(left.domain->omega().bounding_box().lo == right.domain->omega().bounding_box().lo) ||
      !(left.domain->omega().bounding_box().hi == right.domain->omega().bounding_box().hi))
    throw ConstructionError("product family: factors live on different domains");
  if (!left.claims[0] || !left.claims[1] || !left.claims[2])
    throw ConstructionError("product family: left factor must fulfil all three weight conditions");
  if (!right.claims[0] || !right.claims[2])
    throw ConstructionError("product family: right factor must fulfil the first and third weight conditions");

  WeightFamily f;
  f.domain = left.domain;
  f.case_label = "product";
  f.name = "(" + left.name + ") * (" + right.name + ")";
  auto ln = left.log_nu, rn = right.log_nu;
  f.log_nu = [ln, rn](int n, const Point& x) { return ln(n, x) + rn(n, x); };
  auto lr = left.radius, rr = right.radius;
  f.radius = [lr, rr](int k, const Point& x) { return std::min(lr(k, x), rr(k, x)); };
  f.radius_formula = "min(" + left.radius_formula + ", " + right.radius_formula + ")";
  f.psi = left.psi;
  f.psi_formula = left.psi_formula;
  auto max_map = [](const IndexMap& a, const IndexMap& b) {
    auto fa = a.fn, fb = b.fn;
    return IndexMap{[fa, fb](int n) { return std::max(fa(n), fb(n)); },
                    "max(" + a.formula + ", " + b.formula + ")"};
  };
  auto prod_const = [](const Constant& a, const Constant& b) {
    auto fa = a.log_fn, fb = b.log_fn;
    return Constant{[fa, fb](int n, int k) { return fa(n, k) + fb(n, k); },
                    "(" + a.formula + ") * (" + b.formula + ")"};
  };
  f.index[0] = max_map(left.index[0], right.index[0]);
  f.index[1] = left.index[1];
  f.index[2] = max_map(left.index[2], right.index[2]);
  f.constant[0] = prod_const(left.constant[0], right.constant[0]);
  f.constant[1] = left.constant[1];
  f.constant[2] = prod_const(left.constant[2], right.constant[2]);
  f.claims = {true, true, true};
  f.radius_constant = left.radius_constant && right.radius_constant;
  f.radius_continuous = left.radius_continuous && right.radius_continuous;
  f.s_condition = classify_s(f, *f.domain);
  return f;
}

ConditionCheckResult check_omega(const WeightFamily& family, OmegaCondition which, int n, int level,
                                 const std::vector<Point>& grid, const OmegaCheckOptions& opt) {
  if (grid.empty()) throw ArgumentError("check_omega: empty grid");
  const Region lvl = family.domain->level(level);
  const int j = static_cast<int>(which) + 1;
  ConditionCheckResult res;
  res.condition = which;
  res.n = n;
  res.level = level;
  res.target_index = family.I(j, n);
  res.bound = family.A(j, n, level);
  res.bound_formula = family.constant[j - 1].formula;
  res.tolerance = opt.tolerance;
  res.resolution = opt.grid_resolution;
  res.witness = grid.front();
  const double log_bound = family.log_A(j, n, level) + std::log1p(opt.tolerance);
  double worst_log = -kInf;
  const int d = family.dim();

  for (const Point& x : grid) {
    if (!lvl.contains(x))
      throw DomainMembershipError("check_omega: grid point " + x.str() + " is not in level " +
                                  std::to_string(level));
    double lr = 0.0;
    switch (which) {
      case OmegaCondition::W1: {
        const double r = family.radius(level, x);
        const int s = std::max(2, opt.offsets_per_axis);
        double sup_log = -kInf, inf_log = kInf;
        std::array<int, kMaxDim> c{};
        long count = 0;
        while (true) {
          Point z = x;
          for (int i = 0; i < d; ++i) z[i] += r * (-1.0 + 2.0 * c[i] / (s - 1));
          sup_log = std::max(sup_log, family.log_nu(n, z));
          inf_log = std::min(inf_log, family.log_nu(res.target_index, z));
          ++count;
          int ax = d - 1;
          while (ax >= 0) {
            if (++c[ax] < s) break;
            c[ax] = 0;
            --ax;
          }
          if (ax < 0) break;
        }
        res.sample_pairs += count * count;
        lr = sup_log - inf_log;
        break;
      }
      case OmegaCondition::W2:
        lr = family.log_nu(n, x) - std::log(family.psi(n, x)) - family.log_nu(res.target_index, x);
        res.sample_pairs += 1;
        break;
      case OmegaCondition::W3:
        lr = family.log_nu(n, x) - std::log(family.radius(level, x)) - family.log_nu(res.target_index, x);
        res.sample_pairs += 1;
        break;
    }
    ++res.sample_points;
    if (lr > worst_log) {
      worst_log = lr;
      res.witness = x;
    }
  }
  res.worst_ratio = std::exp(worst_log);
  res.pass = worst_log <= log_bound;
  return res;
}

SCondition classify_s(const WeightFamily& family, const ExhaustionDomain& domain) {
  if (family.radius_constant) return SCondition::S1;
  if (domain.full_space() || domain.closure_flag()) return SCondition::S2;
  if (domain.stationary() && family.radius_continuous) return SCondition::S3;
  return SCondition::None;
}

}  // namespace wcert
