#include "wcert/cover.hpp"

#include <fstream>

#include "wcert/errors.hpp"

namespace wcert {

std::vector<int> Cover::containing(const Point& x) const {
  std::vector<int> out;
  index->visit(x, rho_max, [&](int k) {
    if (in_outer(k, x)) out.push_back(k);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Cover::cores_containing(const Point& x) const {
  std::vector<int> out;
  index->visit(x, r1_max / 8, [&](int k) {
    if (in_core(k, x)) out.push_back(k);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

void Cover::finalize() {
  rho_max = r1_max = 0.0;
  double rho_min = kInf;
  for (int k = 0; k < size(); ++k) {
    rho_max = std::max(rho_max, rho[k]);
    rho_min = std::min(rho_min, rho[k]);
    r1_max = std::max(r1_max, r1[k]);
  }
  index = std::make_shared<BucketGrid>(dim, size() ? rho_min / 2 : 1.0);
  for (int k = 0; k < size(); ++k) index->insert(k, centers[k]);
  neighbors.assign(size(), {});
  for (int k = 0; k < size(); ++k) {
    // Open boxes intersect iff the center distance is below the radius sum.
    index->visit(centers[k], rho[k] + rho_max, [&](int m) {
      if (dist_inf(centers[k], centers[m]) < rho[k] + rho[m]) neighbors[k].push_back(m);
      return true;
    });
    std::sort(neighbors[k].begin(), neighbors[k].end());
  }
}

Cover Cover::without_center(int k) const {
  if (k < 0 || k >= size()) throw ArgumentError("without_center: index out of range");
  Cover c = *this;
  c.centers.erase(c.centers.begin() + k);
  c.rho.erase(c.rho.begin() + k);
  c.r1.erase(c.r1.begin() + k);
  c.finalize();
  return c;
}

Cover build_cover(const WeightFamily& family, const IteratedRadius& radii, const CoverOptions& opt) {
  const int d = family.dim();
  const int n = radii.level();
  const double h0 = radii.resolution();
  const long stride = std::lround(opt.candidate_resolution / h0);
  if (stride < 1 || std::abs(static_cast<double>(stride) * h0 - opt.candidate_resolution) >
                        1e-9 * opt.candidate_resolution)
    throw ArgumentError("candidate resolution must be an integer multiple of the oracle resolution");
  if (!opt.truncation.bounded()) throw TruncationBoxError("cover needs a bounded truncation box");
  if (!(opt.separation_factor > 0)) throw ArgumentError("separation factor must be positive");

  const Region level = family.domain->level(n);
  const Lattice lat(d, h0);
  std::vector<Point> cand = lat.points(
      level.bounding_box().intersect(opt.truncation), [&](const Point& p) { return level.contains(p); }, stride);
  if (cand.empty()) throw ConstructionError("cover: no candidate lattice points in Omega_n");

  std::vector<double> cr1(cand.size());
  double r1_min = kInf;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    cr1[i] = radii(1, cand[i]);
    r1_min = std::min(r1_min, cr1[i]);
  }
  if (!(r1_min > 0)) throw ConstructionError("cover: r_{n,1} is not positive on the candidates");
  if (!(opt.candidate_resolution < r1_min / 4))
    throw RefinementRequired("cover: candidate resolution must be below min r_{n,1} / 4 = " +
                             std::to_string(r1_min / 4));

  Cover c;
  c.n = n;
  c.dim = d;
  c.candidate_resolution = opt.candidate_resolution;
  c.oracle_resolution = h0;
  c.truncation = opt.truncation;
  c.candidates = static_cast<long>(cand.size());
  c.separation_factor = opt.separation_factor;
  const double f = opt.separation_factor;
  long tests = 0;

  if (opt.strategy == CoverStrategy::Naive) {
    for (std::size_t i = 0; i < cand.size(); ++i) {
      bool ok = true;
      for (int k = 0; k < c.size(); ++k) {
        ++tests;
        if (dist_inf(cand[i], c.centers[k]) < f * std::max(cr1[i], c.r1[k])) {
          ok = false;
          break;
        }
      }
      if (ok) {
        c.centers.push_back(cand[i]);
        c.r1.push_back(cr1[i]);
      }
    }
  } else {
    BucketGrid grid(d, f * r1_min);
    double accepted_max = 0.0;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      const double reach = f * std::max(cr1[i], accepted_max);
      const bool ok = grid.visit(cand[i], reach, [&](int k) {
        ++tests;
        return !(dist_inf(cand[i], c.centers[k]) < f * std::max(cr1[i], c.r1[k]));
      });
      if (ok) {
        grid.insert(c.size(), cand[i]);
        c.centers.push_back(cand[i]);
        c.r1.push_back(cr1[i]);
        accepted_max = std::max(accepted_max, cr1[i]);
      }
    }
  }
  c.separation_tests = tests;
  c.rho.reserve(c.centers.size());
  for (const Point& z : c.centers) c.rho.push_back(family.radius(n, z));
  c.finalize();
  return c;
}

namespace {

Certificate base_cert(const Cover& cover, std::string name, std::string anchor) {
  Certificate c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.resolutions["candidate"] = cover.candidate_resolution;
  c.resolutions["oracle"] = cover.oracle_resolution;
  c.details["centers"] = cover.size();
  return c;
}

}  // namespace

Certificate verify_separation(const Cover& cover) {
  Certificate c = base_cert(cover, "cover.separation",
                            "|z_k - z_j|_inf >= max(r_{n,1}(z_k), r_{n,1}(z_j)) / 2, k != j");
  c.constants["factor"] = cover.separation_factor;
  double worst = 0.0;
  long pairs = 0;
  for (int k = 0; k < cover.size(); ++k) {
    cover.index->visit(cover.centers[k], 0.5 * cover.r1_max, [&](int j) {
      if (j == k) return true;
      ++pairs;
      const double need = 0.5 * std::max(cover.r1[k], cover.r1[j]);
      const double dist = dist_inf(cover.centers[k], cover.centers[j]);
      worst = std::max(worst, need / dist);
      if (dist < need)
        c.fail_at(cover.centers[k], "center " + std::to_string(k) + " too close to center " + std::to_string(j));
      return true;
    });
  }
  c.measured = worst;
  c.bound = 1.0;
  c.details["quantity"] = "max over near pairs of (max r_{n,1} / 2) / |z_k - z_j|";
  c.details["near_pairs"] = pairs;
  return c;
}

Certificate verify_covering(const Cover& cover, const WeightFamily& family, const std::vector<Point>& grid) {
  Certificate c = base_cert(cover, "cover.coverage",
                            "Omega_n in union b_k, union B_k in Omega_{n+1}");
  c.resolutions["check_points"] = grid.size();
  long uncovered = 0;
  for (const Point& x : grid) {
    bool hit = !cover.index->visit(x, cover.rho_max / 2, [&](int k) { return !cover.in_inner(k, x); });
    if (!hit) {
      ++uncovered;
      c.fail_at(x, "grid point not in any inner box b_k");
    }
  }
  const Region next = family.domain->level(cover.n + 1);
  long bad_corners = 0;
  const int d = cover.dim;
  for (int k = 0; k < cover.size(); ++k) {
    for (int mask = 0; mask < (1 << d); ++mask) {
      Point q = cover.centers[k];
      for (int i = 0; i < d; ++i) q[i] += (mask >> i & 1) ? cover.rho[k] : -cover.rho[k];
      if (!next.contains(q)) {
        ++bad_corners;
        c.fail_at(q, "corner of B_" + std::to_string(k) + " outside Omega_{n+1}");
      }
    }
  }
  c.measured = static_cast<double>(uncovered + bad_corners);
  c.bound = 0.0;
  c.details["uncovered_points"] = uncovered;
  c.details["corners_outside"] = bad_corners;
  c.notes.push_back("coverage is certified at the check grid points inside the truncation box only");
  return c;
}

Certificate overlap_profile(const Cover& cover, const std::vector<Point>& grid, const IteratedRadius& radii) {
  Certificate c = base_cert(cover, "cover.overlap", "|{k : x in B_k}| <= (8 / r_{n,2}(x))^d");
  c.resolutions["check_points"] = grid.size();
  int max_count = 0;
  double min_bound = kInf, worst_ratio = 0.0;
  for (const Point& x : grid) {
    const int cnt = static_cast<int>(cover.containing(x).size());
    const double bound = std::pow(8.0 / radii(2, x), cover.dim);
    max_count = std::max(max_count, cnt);
    min_bound = std::min(min_bound, bound);
    worst_ratio = std::max(worst_ratio, cnt / bound);
    if (cnt > bound) c.fail_at(x, std::to_string(cnt) + " outer boxes exceed the bound");
  }
  c.measured = max_count;
  c.bound = min_bound;
  c.details["max_count_over_bound"] = worst_ratio;
  c.notes.push_back("sampled r_{n,2} is an upper bound, so the bound used is the smaller (stricter) one");
  return c;
}

Certificate neighbor_sets(const Cover& cover, const IteratedRadius& radii) {
  Certificate c = base_cert(cover, "cover.neighbors", "|M_k| <= (8 / r_{n,3}(z_k))^d");
  int max_size = 0;
  double min_bound = kInf, worst_ratio = 0.0;
  bool symmetric = true;
  for (int k = 0; k < cover.size(); ++k) {
    const auto& mk = cover.neighbors[k];
    if (!std::binary_search(mk.begin(), mk.end(), k)) c.fail_at(cover.centers[k], "k not in M_k");
    for (int m : mk) {
      const auto& mm = cover.neighbors[m];
      if (!std::binary_search(mm.begin(), mm.end(), k)) {
        symmetric = false;
        c.fail_at(cover.centers[k], "neighbor relation not symmetric");
      }
    }
    const double bound = std::pow(8.0 / radii(3, cover.centers[k]), cover.dim);
    const int sz = static_cast<int>(mk.size());
    max_size = std::max(max_size, sz);
    min_bound = std::min(min_bound, bound);
    worst_ratio = std::max(worst_ratio, sz / bound);
    if (sz > bound) c.fail_at(cover.centers[k], "|M_k| = " + std::to_string(sz) + " exceeds the bound");
  }
  c.measured = max_size;
  c.bound = min_bound;
  c.details["max_size_over_bound"] = worst_ratio;
  c.details["symmetric"] = symmetric;
  return c;
}

Certificate chain_inequality(const Cover& cover, const std::vector<Point>& grid, const IteratedRadius& radii) {
  Certificate c = base_cert(cover, "radii.chain",
                            "r_n(z_m) >= r_{n,1}(x) >= r_{n,2}(z_k) >= r_{n,3}(z_k), x in B_m and B_k");
  c.resolutions["check_points"] = grid.size();
  double worst = 0.0;  // largest violation amount
  long tested = 0;
  auto check = [&](double big, double small, const Point& at, const std::string& what) {
    ++tested;
    if (small > big) {
      worst = std::max(worst, small - big);
      c.fail_at(at, what);
    }
  };
  for (const Point& x : grid) {
    const auto ks = cover.containing(x);
    if (ks.empty()) continue;
    const double r1x = radii(1, x);
    for (int k : ks) {
      check(cover.rho[k], r1x, x, "r_n(z_m) < r_{n,1}(x) for m = " + std::to_string(k));
      const double r2 = radii(2, cover.centers[k]);
      check(r1x, r2, x, "r_{n,1}(x) < r_{n,2}(z_k) for k = " + std::to_string(k));
      check(r2, radii(3, cover.centers[k]), cover.centers[k], "r_{n,2}(z_k) < r_{n,3}(z_k)");
    }
  }
  c.measured = worst;
  c.bound = 0.0;
  c.details["comparisons"] = tested;
  c.details["quantity"] = "largest violation of the chain";
  return c;
}

void write_cover_csv(const Cover& cover, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path);
  out.precision(17);
  out << "k";
  for (int i = 0; i < cover.dim; ++i) out << ",z" << i + 1;
  out << ",rho,r1\n";
  for (int k = 0; k < cover.size(); ++k) {
    out << k + 1;
    for (int i = 0; i < cover.dim; ++i) out << ',' << cover.centers[k][i];
    out << ',' << cover.rho[k] << ',' << cover.r1[k] << '\n';
  }
}

}  // namespace wcert
