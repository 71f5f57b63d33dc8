#include "wcert/bumps.hpp"

#include <algorithm>
#include <fstream>

#include "wcert/errors.hpp"

namespace wcert {

std::vector<double> default_weights(int M) {
  if (M < 1) throw ArgumentError("weight count must be positive");
  std::vector<double> w(M);
  double s = 0.0;
  for (int j = 0; j < M; ++j) s += (w[j] = std::ldexp(1.0, -(j + 1)));
  for (double& x : w) x /= s;
  return w;
}

BumpProfile1D::BumpProfile1D(double r, int M, std::vector<double> w) : r_(r), M_(M) {
  if (M < 1) throw ArgumentError("bump profile: order M must be at least 1");
  if (!(r > 0 && r <= 1)) throw ArgumentError("bump profile: radius must lie in (0, 1]");
  if (static_cast<int>(w.size()) < M) throw ArgumentError("bump profile: need M weights");
  w.resize(M);
  double sum = 0.0;
  for (int j = 0; j < M; ++j) {
    if (!(w[j] > 0)) throw ArgumentError("bump profile: weights must be positive");
    if (j > 0 && w[j] > w[j - 1]) throw ArgumentError("bump profile: weights must be decreasing");
    sum += w[j];
  }
  for (double& x : w) x /= sum;
  w_ = std::move(w);
  a_ = 0.75 * r;
  double total = 0.0;
  for (double wj : w_) {
    d_.push_back(wj * r / 3);
    total += d_.back();
  }
  s_ = total / 2;
  PiecewisePoly p = PiecewisePoly::indicator(a_);
  for (double dj : d_) p = p.convolve_box(dj);
  // The middle piece is identically one; remove the rounding noise there.
  p.snap_constant_pieces(1.0, 1e-12);
  derivs_.push_back(p);
  for (int j = 1; j < M; ++j) derivs_.push_back(derivs_.back().derivative());
}

double BumpProfile1D::operator()(double t, int j) const {
  if (j < 0 || j > M_ - 1)
    throw OrderError("derivative order " + std::to_string(j) + " exceeds the smoothness budget M - 1 = " +
                     std::to_string(M_ - 1));
  if (j > 0) return derivs_[j](t);
  // An average of an indicator lies in [0, 1]; clamp away the rounding.
  return std::clamp(derivs_[0](t), 0.0, 1.0);
}

double BumpProfile1D::derivative_bound(int j) const {
  double b = 1.0;
  for (int i = 0; i < j; ++i) b *= 2.0 / d_.at(i);
  return b;
}

double Cutoff::operator()(const Point& x) const {
  double v = 1.0;
  for (int i = 0; i < x.dim() && v != 0.0; ++i) v *= (*profile)(x[i] - center[i], 0);
  return v;
}

double Cutoff::partial(const Point& x, const MultiIndex& alpha) const {
  double v = 1.0;
  for (int i = 0; i < x.dim() && v != 0.0; ++i) v *= (*profile)(x[i] - center[i], alpha[i]);
  return v;
}

int required_order(int max_component, int max_order) { return std::max(max_component + 2, max_order); }

Partition::Partition(const Cover& cover, int M, std::vector<double> w)
    : cover_(std::make_shared<const Cover>(cover)), M_(M), w_(std::move(w)) {
  if (M < 1) throw ArgumentError("partition: order M must be at least 1");
  if (static_cast<int>(w_.size()) < M) throw ArgumentError("partition: need M weights");
  w_.resize(M);
  double s = 0.0;
  for (double x : w_) s += x;
  for (double& x : w_) x /= s;
  std::map<double, std::shared_ptr<const BumpProfile1D>> cache;
  for (int k = 0; k < cover.size(); ++k) {
    auto& prof = cache[cover.rho[k]];
    if (!prof) prof = std::make_shared<const BumpProfile1D>(cover.rho[k], M, w_);
    cutoffs_.push_back({cover.centers[k], prof});
    PartitionFn f;
    f.k = k;
    for (int m : cover.neighbors[k])
      if (m < k) f.factors.push_back(m);
    fns_.push_back(std::move(f));
  }
}

LeibnizPlan::LeibnizPlan(const MultiIndex& A) : bound(A), betas(indices_below(A)) {
  if (A.max_component() >= 16) throw OrderError("derivative tables are limited to order 15 per coordinate");
  for (std::size_t b = 0; b < betas.size(); ++b)
    for (const MultiIndex& g : indices_below(betas[b]))
      terms.push_back({static_cast<int>(b), flat(g), flat(betas[b] - g), binomial(betas[b], g)});
}

int LeibnizPlan::flat(const MultiIndex& b) const {
  int f = 0;
  for (int i = 0; i < bound.dim(); ++i) f = f * (bound[i] + 1) + b[i];
  return f;
}

void LeibnizPlan::apply(const double* f, const double* g, double* out) const {
  std::fill(out, out + size(), 0.0);
  for (const Term& t : terms) out[t.out] += t.coeff * f[t.left] * g[t.right];
}

const LeibnizPlan& LeibnizPlan::get(const MultiIndex& A) {
  thread_local std::map<std::array<int, kMaxDim + 1>, std::unique_ptr<LeibnizPlan>> cache;
  std::array<int, kMaxDim + 1> key{};
  key[0] = A.dim();
  for (int i = 0; i < A.dim(); ++i) key[i + 1] = A[i];
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<LeibnizPlan>(A);
  return *slot;
}

void Partition::check_order(const MultiIndex& alpha) const {
  if (alpha.max_component() > M_ - 1)
    throw OrderError("multi-index " + alpha.str() + " exceeds the smoothness budget M - 1 = " +
                     std::to_string(M_ - 1) + " per coordinate");
}

namespace {

std::vector<double> cutoff_table(const Cutoff& c, const Point& x, const LeibnizPlan& plan) {
  const int d = plan.bound.dim();
  // Per-axis derivative values, then tensor products.
  std::array<std::array<double, 16>, kMaxDim> axis{};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= plan.bound[i]; ++j) axis[i][j] = (*c.profile)(x[i] - c.center[i], j);
  std::vector<double> t(plan.size());
  for (std::size_t b = 0; b < plan.size(); ++b) {
    double v = 1.0;
    for (int i = 0; i < d; ++i) v *= axis[i][plan.betas[b][i]];
    t[b] = v;
  }
  return t;
}

}  // namespace

std::vector<double> Partition::partial_table(int k, const Point& x, const MultiIndex& alpha) const {
  check_order(alpha);
  const LeibnizPlan& plan = LeibnizPlan::get(alpha);
  const Cutoff& ck = cutoffs_[k];
  if (dist_inf(x, ck.center) >= ck.support_radius()) return std::vector<double>(plan.size(), 0.0);
  std::vector<double> t = cutoff_table(ck, x, plan);
  std::vector<double> tmp(plan.size());
  for (int m : fns_[k].factors) {
    const Cutoff& cm = cutoffs_[m];
    if (dist_inf(x, cm.center) >= cm.support_radius()) continue;  // factor is 1 near x
    std::vector<double> e = cutoff_table(cm, x, plan);
    for (double& v : e) v = -v;
    e[0] += 1.0;
    plan.apply(t.data(), e.data(), tmp.data());
    t.swap(tmp);
  }
  return t;
}

double Partition::eval_partial(int k, const Point& x, const MultiIndex& alpha) const {
  const auto t = partial_table(k, x, alpha);
  return t.back();
}

double Partition::sum(const Point& x) const {
  double s = 0.0;
  const MultiIndex zero(x.dim());
  for (int k : cover_->containing(x)) s += eval_partial(k, x, zero);
  return s;
}

double Partition::c_tilde(const MultiIndex& alpha) const {
  const int order = alpha.order();
  if (order == 0) return 1.0;
  if (order > M_) throw OrderError("C~_alpha needs w_1..w_|alpha| with |alpha| <= M");
  const int d = alpha.dim();
  double sd = 0.0;
  for (int i = 0; i < d; ++i) sd += std::pow(static_cast<double>(d), alpha[i]);
  double wprod = 1.0;
  for (int j = 0; j < order; ++j) wprod *= w_[j];
  const double c = 2.0;
  return std::pow(8.0, d) * sd * factorial(alpha) * std::pow(3.0 * c, order) / wprod;
}

Certificate certify_profile(const BumpProfile1D& p) {
  Certificate c;
  c.name = "partition.profile_bounds";
  c.anchor = "sup |P^(j)| <= 2^j / (d_1 ... d_j), P = 1 on |t| <= r/2, supp P in [-r, r]";
  c.constants["r"] = p.r();
  c.constants["M"] = p.order();
  c.constants["a"] = p.half_width();
  c.constants["s"] = p.spread();
  c.constants["widths"] = p.widths();
  json per = json::array();
  double worst = 0.0;
  for (int j = 0; j < p.order(); ++j) {
    const double sup = p.derivative(j).sup_abs();
    const double bound = p.derivative_bound(j);
    worst = std::max(worst, sup / bound);
    per.push_back({{"j", j}, {"sup", sup}, {"bound", bound}});
    if (sup > bound * (1 + 1e-12)) c.fail_at(Point{0.0}, "derivative order " + std::to_string(j) + " above bound");
  }
  c.details["derivatives"] = per;
  if (!(p.support_half_width() < p.r())) c.fail_at(Point{p.support_half_width()}, "support reaches |t| = r");
  if (p(0.5 * p.r()) != 1.0 || p(-0.5 * p.r()) != 1.0) c.fail_at(Point{0.5 * p.r()}, "profile not 1 at |t| = r/2");
  const double mass = p.derivative(0).integral();
  c.details["integral"] = mass;
  c.details["expected_integral"] = 2 * p.half_width();
  if (std::abs(mass - 2 * p.half_width()) > 1e-12 * p.r()) c.fail_at(Point{0.0}, "mass not preserved");
  c.measured = worst;
  c.bound = 1.0;
  c.details["quantity"] = "max_j sup|P^(j)| / bound_j";
  return c;
}

std::vector<Certificate> certify_partition(const Partition& part, const IteratedRadius& radii, int alpha_max_order,
                                           const std::vector<Point>& grid) {
  const Cover& cover = part.cover();
  const int d = cover.dim;
  std::vector<Certificate> out;

  Certificate sum;
  sum.name = "partition.sum_to_one";
  sum.anchor = "sum_k h_k = 1 on Omega_n, 0 <= h_k <= phi_k <= 1";
  sum.resolutions["check_points"] = grid.size();
  sum.bound = 1e-9;

  Certificate supp;
  supp.name = "partition.support";
  supp.anchor = "supp h_k in supp phi_k in B_k, phi_k = 1 on closed b_k";
  supp.bound = 0.0;

  Certificate der;
  der.name = "partition.derivative_bound";
  der.anchor = "|d^alpha h_k| <= C~_alpha (1 / r_{n,3}(z_k))^{d + |alpha|}";
  der.resolutions["check_points"] = grid.size();
  der.constants["c"] = 2.0;
  der.constants["M"] = part.order();
  der.constants["w"] = part.weights();
  der.constants["alpha_max_order"] = alpha_max_order;
  const auto alphas = indices_of_order_at_most(d, alpha_max_order);
  json ct = json::array();
  for (const auto& a : alphas) ct.push_back({{"alpha", a.str()}, {"C_tilde", part.c_tilde(a)}});
  der.constants["C_tilde"] = ct;
  der.bound = 1.0;

  // Support and plateau, exact from the profiles.
  long support_bad = 0;
  for (int k = 0; k < part.size(); ++k) {
    const Cutoff& c = part.cutoff(k);
    if (!(c.support_radius() < cover.rho[k])) {
      ++support_bad;
      supp.fail_at(c.center, "cutoff support reaches the boundary of B_k");
    }
    if ((*c.profile)(cover.rho[k] / 2) != 1.0 || (*c.profile)(-cover.rho[k] / 2) != 1.0) {
      ++support_bad;
      supp.fail_at(c.center, "cutoff not equal to one on the closed inner box");
    }
  }

  std::vector<double> r3(cover.size(), -1.0);
  const MultiIndex A = MultiIndex::filled(d, alpha_max_order);
  const LeibnizPlan& plan = LeibnizPlan::get(A);
  double max_dev = 0.0, worst_ratio = 0.0, max_sum = 0.0;
  long evaluations = 0;
  for (const Point& x : grid) {
    const auto ks = cover.containing(x);
    double s = 0.0;
    for (int k : ks) {
      const auto t = part.partial_table(k, x, A);
      const double hk = t[0], phik = part.cutoff(k)(x);
      s += hk;
      if (hk < 0 || hk > phik + 1e-15 || phik > 1.0) sum.fail_at(x, "h_k outside [0, phi_k]");
      if (cover.in_inner(k, x) && phik != 1.0) {
        ++support_bad;
        supp.fail_at(x, "phi_k != 1 inside b_k");
      }
      if (r3[k] < 0) r3[k] = radii(3, cover.centers[k]);
      for (const auto& a : alphas) {
        const double v = std::abs(t[plan.flat(a)]);
        const double bound = part.c_tilde(a) * std::pow(1.0 / r3[k], d + a.order());
        ++evaluations;
        worst_ratio = std::max(worst_ratio, v / bound);
        if (v > bound) der.fail_at(x, "alpha = " + a.str() + ", k = " + std::to_string(k));
      }
    }
    max_sum = std::max(max_sum, s);
    max_dev = std::max(max_dev, std::abs(s - 1.0));
    if (std::abs(s - 1.0) > sum.bound) sum.fail_at(x, "sum of h_k differs from one");
  }
  sum.measured = max_dev;
  sum.details["max_sum"] = max_sum;
  supp.measured = static_cast<double>(support_bad);
  der.measured = worst_ratio;
  der.details["evaluations"] = evaluations;
  der.details["quantity"] = "max |d^alpha h_k| / bound";
  der.notes.push_back("sampled r_{n,3} is an upper bound, which makes the bound used the stricter one");
  out.push_back(std::move(sum));
  out.push_back(std::move(supp));
  out.push_back(std::move(der));
  return out;
}

void write_cutoff_csv(const Partition& part, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path);
  out.precision(17);
  const Cover& c = part.cover();
  out << "k";
  for (int i = 0; i < c.dim; ++i) out << ",z" << i + 1;
  out << ",rho,support_half_width,plateau_half_width\n";
  for (int k = 0; k < c.size(); ++k) {
    const auto& p = *part.cutoff(k).profile;
    out << k + 1;
    for (int i = 0; i < c.dim; ++i) out << ',' << c.centers[k][i];
    out << ',' << c.rho[k] << ',' << p.support_half_width() << ',' << p.half_width() - p.spread() << '\n';
  }
}

void write_pullback_csv(const Partition& part, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path);
  out.precision(17);
  const Cover& c = part.cover();
  out << "k";
  for (int i = 0; i < c.dim; ++i) out << ",z" << i + 1;
  out << ",pullback_support_half_width,core_half_width\n";
  for (int k = 0; k < c.size(); ++k) {
    const double lambda = 8 * c.rho[k] / c.r1[k];
    out << k + 1;
    for (int i = 0; i < c.dim; ++i) out << ',' << c.centers[k][i];
    out << ',' << part.cutoff(k).support_radius() / lambda << ',' << c.r1[k] / 8 << '\n';
  }
}

}  // namespace wcert
