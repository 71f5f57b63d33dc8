// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wcert/certify.hpp"
#include "wcert/config.hpp"
#include "wcert/errors.hpp"
#include "wcert/runner.hpp"

using namespace wcert;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

RunConfig load(const std::string& file) { return load_config(std::string(WCERT_CONFIG_DIR) + "/" + file); }

struct Outcome {
  bool pass = true;
  std::ostringstream log;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      log << " [failed: " << what << "]";
    }
  }
};

Report run_suite(const RunConfig& cfg, std::vector<std::string> suite, int* exit_code = nullptr) {
  RunOptions o;
  o.suite = std::move(suite);
  RunResult r = run(cfg, o);
  if (exit_code) *exit_code = r.exit_code;
  return std::move(r.report);
}

// Every certificate whose name starts with prefix passed; returns how many there were.
int all_passed(const Report& rep, const std::string& prefix, Outcome& out, const std::string& label) {
  int count = 0;
  for (const auto& c : rep.certificates) {
    if (c.name.rfind(prefix, 0) != 0) continue;
    ++count;
    out.require(c.passed(), label + ": " + c.name + " " + to_string(c.verdict));
  }
  out.require(count > 0, label + ": no " + prefix + " certificates");
  return count;
}

const Certificate& expect(const Report& rep, const std::string& name, Outcome& out) {
  static const Certificate missing;
  const Certificate* c = rep.find(name);
  out.require(c != nullptr, "missing " + name);
  return c ? *c : missing;
}

// Domain, family, radii, cover and partition of a configuration, built the way a run builds them.
struct Built {
  RunConfig cfg;
  std::shared_ptr<const ExhaustionDomain> domain;
  WeightFamily family;
  IteratedRadius radii;
  Cover cover;
  Partition part;

  explicit Built(RunConfig c)
      : cfg(std::move(c)),
        domain(build_domain(cfg)),
        family(build_family(cfg, domain)),
        radii(family, cfg.n, {cfg.res.oracle, cfg.truncation, 3}),
        cover(make_cover()),
        part(cover, cfg.smoothness_order(), default_weights(cfg.smoothness_order())) {}

  Cover make_cover() const {
    CoverOptions co;
    co.candidate_resolution = cfg.res.candidate;
    co.truncation = cfg.truncation;
    return build_cover(family, radii, co);
  }
};

const std::vector<std::string> kCoverConfigs{"schwartz_d1.json", "schwartz_d2.json", "boundary_d1.json",
                                             "boundary_d2.json"};

void cover_certificates(Outcome& out) {
  for (const auto& file : kCoverConfigs) {
    const RunConfig cfg = load(file);
    const auto t0 = Clock::now();
    const Report rep = run_suite(cfg, {"cover"});
    const double secs = seconds_since(t0);
    const double res_needed = cfg.dim == 1 ? 1e-3 : 1e-2;
    out.require(cfg.res.check <= res_needed * (1 + 1e-12), file + ": coverage grid coarser than required");
    for (const char* name : {"cover.separation", "cover.coverage", "cover.overlap", "cover.neighbors"})
      out.require(expect(rep, name, out).passed(), file + ": " + name);
    out.require(secs <= 60.0, file + ": cover run over 60 s");
    out.log << ' ' << cfg.name << ": " << rep.summary["centers"].get<int>() << " centers, "
            << rep.summary["check_points"].get<long>() << " points, " << secs << " s;";
  }
}

void partition_certificates(Outcome& out) {
  for (const auto& file : kCoverConfigs) {
    const RunConfig cfg = load(file);
    const Report rep = run_suite(cfg, {"partition"});
    const long points = rep.summary["check_points"].get<long>();
    out.require(points >= (cfg.dim == 1 ? 1000 : 10000), file + ": too few check points");
    out.require(cfg.alpha_max >= (cfg.dim == 1 ? 3 : 2), file + ": derivative order below the required one");
    const Certificate& sum = expect(rep, "partition.sum_to_one", out);
    out.require(sum.passed() && sum.measured <= 1e-9, file + ": sum to one");
    out.require(expect(rep, "partition.support", out).passed(), file + ": support");
    out.require(expect(rep, "partition.derivative_bound", out).passed(), file + ": derivative bound");
    out.require(expect(rep, "partition.profile_bounds", out).passed(), file + ": profile bounds");
    out.log << ' ' << cfg.name << ": max|sum-1| = " << sum.measured << " over " << points << ";";
  }
}

// Least-squares slope of log e against log h over the usable step sizes.
double convergence_order(const std::vector<double>& hs, const std::vector<double>& errs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double x = std::log10(hs[i]), y = std::log10(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void derivative_soundness(Outcome& out) {
  const std::vector<double> steps{1e-3, 1e-4, 1e-5};
  const double eps = std::numeric_limits<double>::epsilon();
  std::mt19937_64 rng(20240611);
  for (const char* file : {"schwartz_d1.json", "schwartz_d2_chain.json"}) {
    const Built b(load(file));
    const int d = b.cfg.dim, M = b.part.order();
    std::uniform_int_distribution<int> pick_k(0, b.cover.size() - 1), pick_axis(0, d - 1);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> orders;
    long attempts = 0, on_knots = 0, negligible = 0;
    while (orders.size() < 50 && attempts < 100000) {
      ++attempts;
      const int k = pick_k(rng), axis = pick_axis(rng);
      Point x = b.cover.centers[k];
      for (int i = 0; i < d; ++i) x[i] += unit(rng) * b.cover.rho[k];
      MultiIndex alpha(d);
      for (int i = 0; i < d; ++i) alpha[i] = std::uniform_int_distribution<int>(0, i == axis ? M - 2 : M - 1)(rng);

      // Off-knot: no knot of any factor of h_k within the widest stencil along the axis.
      bool near_knot = false;
      std::vector<int> factors = b.part.fn(k).factors;
      factors.push_back(k);
      for (int j : factors) {
        const Cutoff& c = b.part.cutoff(j);
        for (double t : c.profile->derivative(0).knots())
          if (std::abs(x[axis] - c.center[axis] - t) <= 2 * steps.front()) near_knot = true;
      }
      if (near_knot) {
        ++on_knots;
        continue;
      }

      MultiIndex up = alpha;
      ++up[axis];
      const double exact = b.part.eval_partial(k, x, up);
      std::vector<double> hs, errs;
      double scale = std::abs(exact);
      for (double h : steps) {
        Point xp = x, xm = x;
        xp[axis] += h;
        xm[axis] -= h;
        const double fp = b.part.eval_partial(k, xp, alpha), fm = b.part.eval_partial(k, xm, alpha);
        scale = std::max({scale, std::abs(fp), std::abs(fm)});
        const double err = std::abs((fp - fm) / (2 * h) - exact);
        // Keep the step only while truncation error dominates rounding.
        if (err > 100 * eps * scale / h) {
          hs.push_back(h);
          errs.push_back(err);
        }
      }
      if (hs.size() < 2 || hs.front() != steps.front()) {
        ++negligible;  // locally a polynomial of degree <= 2 along the axis: the difference is exact
        continue;
      }
      orders.push_back(convergence_order(hs, errs));
    }
    out.require(orders.size() == 50, std::string(file) + ": fewer than 50 usable off-knot points");
    if (orders.empty()) continue;
    std::sort(orders.begin(), orders.end());
    out.require(orders.front() >= 1.9, std::string(file) + ": convergence order below 1.9");
    out.log << " d=" << d << ": order min " << orders.front() << ", median " << orders[orders.size() / 2] << " over "
            << orders.size() << " points (" << on_knots << " near knots, " << negligible << " exact);";
  }
}

std::vector<Point> lattice_grid(const ExhaustionDomain& dom, int n, double lo, double hi, double h) {
  return sample_level(dom, n, Box::cube(dom.dim(), lo, hi), Lattice(dom.dim(), h));
}

void omega_witnesses(Outcome& out) {
  OmegaCheckOptions oo;
  oo.tolerance = 1e-9;
  for (int d = 1; d <= 2; ++d) {
    RunConfig cfg = load(d == 1 ? "schwartz_d1.json" : "schwartz_d2.json");
    const auto dom = build_domain(cfg);
    const WeightFamily fam = build_family(cfg, dom);
    const auto grid = lattice_grid(*dom, 1, -3, 3, d == 1 ? 0.001 : 0.05);
    for (int n = 1; n <= 3; ++n) {
      const auto r = check_omega(fam, OmegaCondition::W1, n, n, grid, oo);
      const double closed = std::pow(1.0 + 8.0 * d, n / 2.0);
      out.require(std::abs(r.bound - closed) <= 1e-12 * closed, "schwartz A_1 differs from (1+8d)^{n/2}");
      out.require(r.pass && r.worst_ratio <= closed * (1 + 1e-9), "schwartz omega1 d=" + std::to_string(d));
      out.require(r.sample_pairs >= 10000, "schwartz omega1 with fewer than 1e4 pairs");
      if (n == 3)
        out.log << " schwartz d=" << d << " n=3 ratio " << r.worst_ratio << " <= " << closed << " (" << r.sample_pairs
                << " pairs);";
    }
  }
  for (int d = 1; d <= 2; ++d) {
    RunConfig cfg = load(d == 1 ? "boundary_d1.json" : "boundary_d2.json");
    const auto dom = build_domain(cfg);
    const WeightFamily fam = build_family(cfg, dom);
    const auto grid = lattice_grid(*dom, 1, 0.02, 0.98, d == 1 ? 0.001 : 0.01);
    for (int n = 1; n <= 3; ++n) {
      const auto w1 = check_omega(fam, OmegaCondition::W1, n, n, grid, oo);
      out.require(std::abs(w1.bound - std::pow(3.0, n)) <= 1e-12 * w1.bound, "boundary A_1 differs from 3^n");
      out.require(w1.pass && w1.worst_ratio <= std::pow(3.0, n) * (1 + 1e-9), "boundary omega1 d=" + std::to_string(d));
      out.require(w1.sample_pairs >= 10000, "boundary omega1 with fewer than 1e4 pairs");
      const auto w3 = check_omega(fam, OmegaCondition::W3, n, n, grid, oo);
      out.require(w3.bound == 2.0 && w3.target_index == n + 1, "boundary omega3 constants");
      out.require(w3.pass, "boundary omega3 d=" + std::to_string(d));
      if (n == 3)
        out.log << " boundary d=" << d << " n=3 omega1 " << w1.worst_ratio << " <= 27, omega3 " << w3.worst_ratio
                << " <= 2;";
    }
  }
}

void iterated_radii(Outcome& out) {
  {
    const RunConfig cfg = load("schwartz_d2.json");
    const auto dom = build_domain(cfg);
    const WeightFamily fam = build_family(cfg, dom);
    const IteratedRadius r(fam, 1, {cfg.res.oracle, cfg.truncation, 3});
    out.require(r.closed_form(), "schwartz radii not in closed form");
    long evals = 0;
    for (const Point& z : lattice_grid(*dom, 1, -2, 2, 0.1))
      for (int k = 0; k <= 3; ++k, ++evals) out.require(r(k, z) == fam.radius(1, z), "closed form not exact");
    out.log << " closed form exact at " << evals << " evaluations;";
  }
  for (int n = 1; n <= 3; ++n) {
    json j = load("schwartz_d1.json").raw;
    j["family"] = {{"case", "power_abs"}, {"exponent", 1}};
    j["n"] = n;
    j["truncation"] = {{"lo", {-1.0}}, {"hi", {1.0}}};
    const RunConfig cfg = parse_config(j);
    const WeightFamily fam = build_family(cfg, build_domain(cfg));
    const IteratedRadius r(fam, n, {cfg.res.oracle, cfg.truncation, 1});
    const double v = r(1, Point{0.0});
    out.require(std::abs(v - 0.5) <= 2 * cfg.res.oracle, "power family r_{n,1}(0) not 0.5");
    if (n == 1) out.log << " power family r_{n,1}(0) = " << v << ";";
  }
  for (const char* file : {"boundary_d1.json", "boundary_d2.json"}) {
    const RunConfig cfg = load(file);
    const auto dom = build_domain(cfg);
    const WeightFamily fam = build_family(cfg, dom);
    const IteratedRadius r(fam, cfg.n, {cfg.res.oracle, cfg.truncation, 3});
    long evals = 0, violations = 0;
    for (const Point& z : sample_level(*dom, cfg.n, cfg.truncation, Lattice(cfg.dim, cfg.res.oracle),
                                       cfg.dim == 1 ? 1 : 4)) {
      double prev = r(0, z);
      for (int k = 1; k <= 3; ++k) {
        const double cur = r(k, z);
        ++evals;
        if (!(cur <= prev)) ++violations;
        prev = cur;
      }
    }
    out.require(violations == 0, std::string(file) + ": depth monotonicity violated");
    out.log << ' ' << cfg.name << ": monotone at " << evals << " evaluations;";
  }
}

void inequality_chain(Outcome& out) {
  const auto t0 = Clock::now();
  for (const char* file : {"schwartz_d1.json", "constant_box_d1.json"}) {
    const RunConfig cfg = load(file);
    const Report rep = run_suite(cfg, {"chain"});
    const int count = all_passed(rep, "chain.", out, cfg.name);
    expect(rep, "chain.disjoint_supports", out);
    expect(rep, "chain.weight_transfer.seminorm", out);
    expect(rep, "chain.weight_transfer.functional", out);
    double drift = 0.0;
    for (const char* f : {"gaussian", "x1_gaussian", "spline_bump"}) {
      const std::string tf(f);
      const Certificate& local = expect(rep, "chain.local_integral_bound." + tf, out);
      const Certificate& dom = expect(rep, "chain.seminorm_domination." + tf, out);
      expect(rep, "chain.functional_bound." + tf, out);
      if (local.details.contains("max_relative_quadrature_drift"))
        drift = std::max(drift, local.details["max_relative_quadrature_drift"].get<double>());
      if (dom.details.contains("rhs_at_quadrature")) {
        const double a = dom.details["rhs_at_quadrature"].get<double>(), b = dom.details["rhs_at_refined"].get<double>();
        drift = std::max(drift, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
      }
    }
    out.require(drift <= 0.01, cfg.name + ": quadrature drift above 1%");
    out.log << ' ' << cfg.name << ": " << count << " chain certificates, max drift " << drift << ";";
  }
  const double secs = seconds_since(t0);
  out.require(secs <= 300.0, "chain runs over 5 min");
  out.log << " total " << secs << " s;";
}

void negative_controls(Outcome& out) {
  const struct {
    const char* file;
    const char* suite;
    const char* cert;
  } cases[] = {{"negative_drop_center.json", "cover", "cover.coverage"},
               {"negative_separation.json", "chain", "chain.disjoint_supports"},
               {"negative_deflate_A1.json", "weights", "weights.omega1"}};
  for (const auto& c : cases) {
    int code = 0;
    const Report rep = run_suite(load(c.file), {c.suite}, &code);
    const Certificate& cert = expect(rep, c.cert, out);
    out.require(cert.failed(), std::string(c.file) + ": " + c.cert + " did not fail");
    out.require(cert.witness.has_value(), std::string(c.file) + ": no witness");
    out.require(code == 1, std::string(c.file) + ": exit code not 1");
    out.log << ' ' << c.cert << " fails at " << (cert.witness ? cert.witness->str() : "?") << ';';
  }
}

void determinism_and_speed(Outcome& out) {
  for (const char* file : {"schwartz_d1.json", "boundary_d1.json"}) {
    const RunConfig cfg = load(file);
    const std::string a = run(cfg).report.canonical_dump(), b = run(cfg).report.canonical_dump();
    out.require(a == b, std::string(file) + ": reports differ");
  }
  out.log << " repeated reports identical;";

  // Uniformly continuous exponent, r = min(delta, 1) = 0.025, 321^2 candidates.
  json j = load("schwartz_d2.json").raw;
  j["family"] = {{"case", "uniformly_continuous"}, {"delta", 0.025}};
  j["truncation"] = {{"lo", {-0.8, -0.8}}, {"hi", {0.8, 0.8}}};
  j["resolutions"] = {{"oracle", 0.005}};
  const RunConfig cfg = parse_config(j);
  const WeightFamily fam = build_family(cfg, build_domain(cfg));
  const IteratedRadius r(fam, 1, {0.005, cfg.truncation, 3});
  CoverOptions co;
  co.candidate_resolution = 0.005;
  co.truncation = cfg.truncation;
  co.strategy = CoverStrategy::Bucket;
  auto t0 = Clock::now();
  const Cover bucket = build_cover(fam, r, co);
  const double t_bucket = seconds_since(t0);
  co.strategy = CoverStrategy::Naive;
  t0 = Clock::now();
  const Cover naive = build_cover(fam, r, co);
  const double t_naive = seconds_since(t0);
  out.require(bucket.candidates >= 100000, "fewer than 1e5 candidates");
  out.require(bucket.centers == naive.centers && bucket.rho == naive.rho && bucket.r1 == naive.r1 &&
                  bucket.neighbors == naive.neighbors,
              "bucket and naive covers differ");
  out.require(t_naive >= 5 * t_bucket, "bucket index less than 5x faster");
  out.log << " " << bucket.candidates << " candidates, " << bucket.size() << " centers, bucket " << t_bucket
          << " s vs naive " << t_naive << " s (" << t_naive / t_bucket << "x);";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"1 cover certificates", cover_certificates},
      {"2 partition certificates", partition_certificates},
      {"3 exact derivatives vs central differences", derivative_soundness},
      {"4 weight condition witnesses", omega_witnesses},
      {"5 iterated radii", iterated_radii},
      {"6 inequality chain", inequality_chain},
      {"7 negative controls", negative_controls},
      {"8 determinism and bucket index speed", determinism_and_speed},
  };
  int failed = 0;
  for (const auto& [title, check] : criteria) {
    Outcome out;
    const auto t0 = Clock::now();
    try {
      check(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    std::printf("%s  criterion %s (%.1f s):%s\n", out.pass ? "PASS" : "FAIL", title.c_str(), secs,
                out.log.str().c_str());
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
