#include "wcert/radii.hpp"

#include <sstream>

#include "wcert/errors.hpp"

namespace wcert {

namespace {

int floor_log2(long v) {
  int j = 0;
  while ((2L << j) <= v) ++j;
  return j;
}

// Range-minimum tables over rows of a dense array (last axis contiguous).
struct RowSparseTable {
  long row_len = 0;
  std::vector<std::vector<double>> level;

  RowSparseTable(const std::vector<double>& base, long len) : row_len(len) {
    level.push_back(base);
    const long rows = static_cast<long>(base.size()) / len;
    for (int j = 1; (1L << j) <= len; ++j) {
      const long half = 1L << (j - 1);
      std::vector<double> next(base.size(), kInf);
      const auto& prev = level.back();
      for (long r = 0; r < rows; ++r)
        for (long i = 0; i + (1L << j) <= len; ++i)
          next[r * len + i] = std::min(prev[r * len + i], prev[r * len + i + half]);
      level.push_back(std::move(next));
    }
  }

  double query(long row, long a, long b) const {
    const int j = floor_log2(b - a + 1);
    const auto& t = level[j];
    return std::min(t[row * row_len + a], t[row * row_len + b - (1L << j) + 1]);
  }
};

// Range-chmin updates with point reads after a final push-down.
struct RowScatter {
  long row_len = 0;
  std::vector<std::vector<double>> level;

  RowScatter(long size, long len) : row_len(len) {
    for (int j = 0; (1L << j) <= len; ++j) level.emplace_back(size, kInf);
  }

  void update(long row, long a, long b, double v) {
    const int j = floor_log2(b - a + 1);
    auto& t = level[j];
    double& x = t[row * row_len + a];
    double& y = t[row * row_len + b - (1L << j) + 1];
    x = std::min(x, v);
    y = std::min(y, v);
  }

  const std::vector<double>& resolve() {
    const long rows = static_cast<long>(level[0].size()) / row_len;
    for (int j = static_cast<int>(level.size()) - 1; j >= 1; --j) {
      const long half = 1L << (j - 1);
      for (long r = 0; r < rows; ++r)
        for (long i = 0; i + (1L << j) <= row_len; ++i) {
          const double v = level[j][r * row_len + i];
          if (v == kInf) continue;
          double& lo = level[j - 1][r * row_len + i];
          double& hi = level[j - 1][r * row_len + i + half];
          lo = std::min(lo, v);
          hi = std::min(hi, v);
        }
    }
    return level[0];
  }
};

}  // namespace

IteratedRadius::IteratedRadius(const WeightFamily& family, int n, const Options& opt)
    : family_(family), n_(n), depth_(opt.max_depth), lattice_(family.dim(), opt.resolution),
      window_(opt.window), level_region_(family.domain->level(n)) {
  if (!(opt.resolution > 0)) throw ArgumentError("radius oracle: resolution must be positive");
  if (depth_ < 0) throw ArgumentError("radius oracle: negative depth");
  closed_form_ = family.radius_constant;
  if (closed_form_) return;
  if (!window_.bounded()) throw TruncationBoxError("radius oracle needs a bounded query window");
  build_tables();
}

std::string IteratedRadius::strategy() const {
  if (closed_form_) return "closed_form_constant";
  std::ostringstream os;
  os << "grid_oracle(" << lattice_.step() << ")";
  return os.str();
}

long IteratedRadius::flat(const std::array<long, kMaxDim>& idx) const {
  long f = 0;
  for (int i = 0; i < lattice_.dim(); ++i) f = f * extent_[i] + (idx[i] - origin_[i]);
  return f;
}

bool IteratedRadius::table_index(const Point& z, long& flat_index) const {
  std::array<long, kMaxDim> idx{};
  if (!lattice_.snap(z, idx)) return false;
  for (int i = 0; i < lattice_.dim(); ++i)
    if (idx[i] < origin_[i] || idx[i] >= origin_[i] + extent_[i]) return false;
  flat_index = flat(idx);
  return true;
}

std::array<long, 2> IteratedRadius::axis_range(long gi, double radius, int axis) const {
  const double h = lattice_.step();
  const double xg = static_cast<double>(gi) * h;
  const long w = static_cast<long>(std::floor(radius / h)) + 1;
  long a = gi - w, b = gi + w;
  while (std::abs(static_cast<double>(a) * h - xg) > radius) ++a;
  while (std::abs(static_cast<double>(b) * h - xg) > radius) --b;
  a = std::max(a, origin_[axis]);
  b = std::min(b, origin_[axis] + extent_[axis] - 1);
  return {a, b};
}

void IteratedRadius::build_tables() {
  const int d = lattice_.dim();
  // r_n <= 1, so depth k at the window only sees points within k of it.
  Box region = window_;
  for (int i = 0; i < d; ++i) {
    region.lo[i] -= depth_;
    region.hi[i] += depth_;
  }
  region = region.intersect(level_region_.bounding_box());
  const auto range = lattice_.index_range(region);
  long size = 1;
  for (int i = 0; i < d; ++i) {
    origin_[i] = range[i][0];
    extent_[i] = range[i][1] - range[i][0] + 1;
    if (extent_[i] <= 0) throw ConstructionError("radius oracle: empty sampling region");
    size *= extent_[i];
  }
  if (size > 50'000'000) throw RefinementRequired("radius oracle: table too large, coarsen the resolution");

  std::vector<double> base(size, kInf);
  std::vector<std::array<long, kMaxDim>> members;
  std::vector<long> member_flat;
  double r_min = kInf;
  {
    std::array<long, kMaxDim> idx{};
    for (int i = 0; i < d; ++i) idx[i] = origin_[i];
    while (true) {
      const Point p = lattice_.point(idx);
      if (level_region_.contains(p)) {
        const double r = family_.radius(n_, p);
        if (!(r > 0) || r > 1.0)
          throw ConstructionError("radius r_n outside (0,1] at " + p.str());
        const long f = flat(idx);
        base[f] = r;
        members.push_back(idx);
        member_flat.push_back(f);
        r_min = std::min(r_min, r);
        r_max_ = std::max(r_max_, r);
      }
      int ax = d - 1;
      while (ax >= 0) {
        if (++idx[ax] < origin_[ax] + extent_[ax]) break;
        idx[ax] = origin_[ax];
        --ax;
      }
      if (ax < 0) break;
    }
  }
  if (members.empty()) throw ConstructionError("radius oracle: no lattice points in Omega_n");

  tables_.push_back(base);
  const long len = extent_[d - 1];

  // Visits every row segment of the box window around idx with the given radius.
  auto for_window = [&](const std::array<long, kMaxDim>& idx, double radius, auto&& fn) {
    std::array<std::array<long, 2>, kMaxDim> rg{};
    for (int i = 0; i < d; ++i) rg[i] = axis_range(idx[i], radius, i);
    std::array<long, kMaxDim> o{};
    for (int i = 0; i < d - 1; ++i) o[i] = rg[i][0];
    while (true) {
      long row = 0;
      for (int i = 0; i < d - 1; ++i) row = row * extent_[i] + (o[i] - origin_[i]);
      fn(row, rg[d - 1][0] - origin_[d - 1], rg[d - 1][1] - origin_[d - 1]);
      int ax = d - 2;
      while (ax >= 0) {
        if (++o[ax] <= rg[ax][1]) break;
        o[ax] = rg[ax][0];
        --ax;
      }
      if (ax < 0) break;
    }
  };

  // Points that window values depend on within depth_ steps. The
  // resolution only has to resolve r_n there.
  {
    std::vector<double> need(size, kInf);
    for (std::size_t m = 0; m < members.size(); ++m)
      if (window_.contains_closed(lattice_.point(members[m]))) need[member_flat[m]] = 0.0;
    for (int k = 1; k <= depth_; ++k) {
      RowSparseTable near(need, len);
      RowScatter spread(size, len);
      for (std::size_t m = 0; m < members.size(); ++m) {
        const long f = member_flat[m];
        if (need[f] == 0.0)
          for_window(members[m], base[f], [&](long row, long a, long b) { spread.update(row, a, b, 0.0); });
      }
      const std::vector<double>& spread_mask = spread.resolve();
      std::vector<double> next = need;
      for (std::size_t m = 0; m < members.size(); ++m) {
        const long f = member_flat[m];
        if (next[f] == 0.0 || spread_mask[f] == 0.0) {
          next[f] = 0.0;
          continue;
        }
        for_window(members[m], base[f], [&](long row, long a, long b) {
          if (near.query(row, a, b) == 0.0) next[f] = 0.0;
        });
      }
      need = std::move(next);
    }
    r_min = kInf;
    for (std::size_t m = 0; m < members.size(); ++m)
      if (need[member_flat[m]] == 0.0) r_min = std::min(r_min, base[member_flat[m]]);
    if (lattice_.step() >= r_min)
      throw RefinementRequired("radius oracle: resolution " + std::to_string(lattice_.step()) +
                               " is not below min r_n = " + std::to_string(r_min) +
                               " on the points the window depends on");
  }

  for (int k = 1; k <= depth_; ++k) {
    const std::vector<double>& prev = tables_.back();
    RowSparseTable gather(prev, len);
    RowScatter scatter(size, len);
    for (std::size_t m = 0; m < members.size(); ++m) {
      const double r = base[member_flat[m]];
      const double v = prev[member_flat[m]];
      for_window(members[m], r, [&](long row, long a, long b) { scatter.update(row, a, b, v); });
    }
    const std::vector<double>& scattered = scatter.resolve();
    std::vector<double> next(size, kInf);
    for (std::size_t m = 0; m < members.size(); ++m) {
      const long f = member_flat[m];
      double best = std::min(prev[f], scattered[f]);
      for_window(members[m], base[f], [&](long row, long a, long b) {
        best = std::min(best, gather.query(row, a, b));
      });
      next[f] = best;
    }
    tables_.push_back(std::move(next));
  }
}

double IteratedRadius::brute(int k, const Point& z) const {
  const double rz = family_.radius(n_, z);
  double best = (*this)(k - 1, z);  // eta = z is always admissible
  const double reach = std::max(rz, r_max_);
  Box b = Box::around(z, reach);
  for (const Point& eta : lattice_.points(b, [](const Point&) { return true; })) {
    long f = 0;
    if (!table_index(eta, f)) continue;
    const double r_eta = tables_[0][f];
    if (r_eta == kInf) continue;
    const double dist = dist_inf(eta, z);
    if (dist <= rz || dist <= r_eta) best = std::min(best, tables_[k - 1][f]);
  }
  return best;
}

double IteratedRadius::operator()(int k, const Point& z) const {
  if (k < 0) throw ArgumentError("radius depth must be nonnegative");
  if (!level_region_.contains(z))
    throw DomainMembershipError("iterated radius: point " + z.str() + " is not in Omega_" +
                                std::to_string(n_));
  if (k == 0 || closed_form_) return family_.radius(n_, z);
  if (k > depth_) throw ArgumentError("iterated radius: depth beyond the tabulated maximum");
  if (!window_.contains_closed(z))
    throw ArgumentError("iterated radius: point " + z.str() + " outside the oracle window");
  long f = 0;
  if (table_index(z, f)) return tables_[k][f];
  return brute(k, z);
}

Certificate positivity_certificate(const IteratedRadius& radii, int k_max, const std::vector<Point>& grid) {
  Certificate c;
  c.name = "radii.positivity";
  c.anchor = "r_{n,k} > 0 on Omega_n, k = 0..k_max";
  const SCondition s = radii.family().s_condition;
  c.constants["s_condition"] = to_string(s);
  c.constants["k_max"] = k_max;
  c.resolutions["oracle"] = radii.resolution();
  c.resolutions["grid_points"] = grid.size();
  c.details["strategy"] = radii.strategy();
  c.notes.push_back("sampled r_{n,k} are minima over lattice points, i.e. upper bounds of the true infima");
  json minima = json::array();
  bool monotone = true;
  double overall = kInf;
  std::vector<double> prev;
  for (int k = 0; k <= k_max; ++k) {
    double mn = kInf;
    Point arg = grid.empty() ? Point(radii.family().dim()) : grid.front();
    std::vector<double> cur;
    cur.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = radii(k, grid[i]);
      cur.push_back(v);
      if (v < mn) {
        mn = v;
        arg = grid[i];
      }
      if (!prev.empty() && v > prev[i]) {
        monotone = false;
        c.fail_at(grid[i], "r_{n,k+1} > r_{n,k} at depth " + std::to_string(k));
      }
    }
    prev = std::move(cur);
    minima.push_back({{"k", k}, {"min", mn}, {"argmin", point_json(arg)}});
    overall = std::min(overall, mn);
    if (!(mn > 0)) c.fail_at(arg, "r_{n," + std::to_string(k) + "} not positive");
  }
  c.details["minima"] = minima;
  c.details["depth_monotone"] = monotone;
  c.measured = overall;
  c.bound = 0.0;
  if (s == SCondition::None && c.verdict == Verdict::Pass) {
    c.verdict = Verdict::NotCertified;
    c.notes.push_back("no structural condition (s1)-(s3) applies; positivity is reported but not certified");
  }
  return c;
}

Certificate radius_lower_bound_certificate(const WeightFamily& family, int n, const std::vector<Point>& grid,
                                           double tolerance) {
  Certificate c;
  c.name = "radii.local_lower_bound";
  c.anchor = "r_n(x) >= nu_n(x) / (A_3(n) nu_{I_3(n)}(x))";
  const int target = family.I(3, n);
  c.constants["A_3"] = family.A(3, n, n);
  c.constants["A_3_formula"] = family.constant[2].formula;
  c.constants["I_3(n)"] = target;
  c.resolutions["grid_points"] = grid.size();
  double worst = -kInf;
  for (const Point& x : grid) {
    // log of lower bound / r_n, must stay <= 0
    const double lg = family.log_nu(n, x) - family.log_A(3, n, n) - family.log_nu(target, x) -
                      std::log(family.radius(n, x));
    if (lg > worst) worst = lg;
    if (lg > std::log1p(tolerance)) c.fail_at(x, "r_n below nu_n / (A_3 nu_{I_3})");
  }
  c.measured = std::exp(worst);
  c.bound = 1.0;
  c.details["quantity"] = "max over grid of (nu_n / (A_3 nu_{I_3})) / r_n";
  return c;
}

}  // namespace wcert
