#include "wcert/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "wcert/bumps.hpp"
#include "wcert/certify.hpp"
#include "wcert/errors.hpp"
#include "wcert/test_functions.hpp"

namespace wcert {

Certificate omega_certificate(const ConditionCheckResult& r) {
  Certificate c;
  const int j = static_cast<int>(r.condition) + 1;
  c.name = "weights.omega" + std::to_string(j);
  switch (r.condition) {
    case OmegaCondition::W1:
      c.anchor = "sup_{|zeta| <= r_k(x)} nu_n(x + zeta) <= A_1(n) inf_{|zeta| <= r_k(x)} nu_{I_1(n)}(x + zeta)";
      break;
    case OmegaCondition::W2: c.anchor = "nu_n(x) <= A_2(n) psi_n(x) nu_{I_2(n)}(x)"; break;
    case OmegaCondition::W3: c.anchor = "nu_n(x) <= A_3(n) r_k(x) nu_{I_3(n)}(x)"; break;
  }
  c.constants["n"] = r.n;
  c.constants["level"] = r.level;
  c.constants["A"] = r.bound;
  c.constants["A_formula"] = r.bound_formula;
  c.constants["target_index"] = r.target_index;
  c.resolutions["grid"] = r.resolution;
  c.resolutions["sample_points"] = r.sample_points;
  c.resolutions["sample_pairs"] = r.sample_pairs;
  c.details["tolerance"] = r.tolerance;
  c.details["worst_point"] = point_json(r.witness);
  c.measured = r.worst_ratio;
  c.bound = r.bound;
  if (!r.pass) c.fail_at(r.witness, "ratio above the claimed constant");
  return c;
}

namespace {

bool selected(const std::vector<std::string>& suite, const std::string& name) {
  return std::find(suite.begin(), suite.end(), name) != suite.end();
}

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

Box expanded(const Box& b, double by) {
  Box out = b;
  for (int i = 0; i < b.dim(); ++i) {
    out.lo[i] -= by;
    out.hi[i] += by;
  }
  return out;
}

void collect(const RunConfig& cfg, const RunOptions& opt, Report& rep) {
  const std::vector<std::string> suite = opt.suite ? *opt.suite : cfg.suite;
  for (const auto& s : suite)
    if (!selected(suite_names(), s)) throw ConfigError("unknown suite '" + s + "'");
  const auto wants = [&](const std::string& s) { return selected(suite, s); };
  const auto needs_from = [&](const std::string& s) {
    // A group is built when it or any later group is selected.
    const auto& all = suite_names();
    for (auto it = std::find(all.begin(), all.end(), s); it != all.end(); ++it)
      if (wants(*it)) return true;
    return false;
  };

  rep.config = cfg.raw;
  rep.summary["name"] = cfg.name;
  rep.summary["suite"] = suite;

  const int d = cfg.dim, n = cfg.n, m = cfg.m;
  auto domain = build_domain(cfg);
  const WeightFamily family = build_family(cfg, domain);
  rep.summary["domain"] = domain->describe();
  rep.summary["family"] = family.name;
  rep.summary["case"] = family.case_label;
  rep.summary["s_condition"] = to_string(family.s_condition);

  const Lattice lattice(d, cfg.res.oracle);
  const std::vector<Point> grid = sample_level(*domain, n, cfg.truncation, lattice, cfg.check_stride());
  if (grid.empty()) throw ConfigError("truncation box contains no check points of Omega_n");
  rep.summary["check_points"] = grid.size();

  if (wants("weights")) {
    const WeightFamily checked =
        cfg.negative.deflate_A1 ? family.with_scaled_constant(1, *cfg.negative.deflate_A1) : family;
    OmegaCheckOptions oo;
    oo.tolerance = cfg.tolerance;
    oo.grid_resolution = cfg.res.check;
    for (auto w : {OmegaCondition::W1, OmegaCondition::W2, OmegaCondition::W3}) {
      if (!checked.claims_condition(w)) continue;
      rep.add(omega_certificate(check_omega(checked, w, n, n, grid, oo)));
    }
  }

  if (!needs_from("radii")) return;
  const IteratedRadius radii(family, n, {cfg.res.oracle, cfg.truncation, 3});
  rep.summary["radii"] = radii.strategy();
  if (wants("radii")) {
    rep.add(positivity_certificate(radii, 3, grid));
    rep.add(radius_lower_bound_certificate(family, n, grid, cfg.tolerance));
  }

  if (!needs_from("cover")) return;
  CoverOptions co;
  co.candidate_resolution = cfg.res.candidate;
  co.truncation = cfg.truncation;
  co.strategy = cfg.strategy;
  if (cfg.negative.shrink_separation) co.separation_factor = *cfg.negative.shrink_separation;
  Cover cover = build_cover(family, radii, co);
  if (cfg.negative.drop_center) {
    const int k = *cfg.negative.drop_center;
    if (k < 0 || k >= cover.size())
      throw ConfigError("negative_control.drop_center: no center " + std::to_string(k));
    cover = cover.without_center(k);
  }
  rep.summary["centers"] = cover.size();
  if (wants("cover")) {
    rep.add(verify_separation(cover));
    rep.add(verify_covering(cover, family, grid));
    rep.add(overlap_profile(cover, grid, radii));
    rep.add(neighbor_sets(cover, radii));
    rep.add(chain_inequality(cover, grid, radii));
  }
  if (!opt.out_dir.empty() && !cfg.outputs.cover_csv.empty())
    write_cover_csv(cover, join(opt.out_dir, cfg.outputs.cover_csv));

  if (!needs_from("partition")) return;
  const int M = cfg.smoothness_order();
  const Partition part(cover, M, default_weights(M));
  rep.summary["M"] = M;
  if (wants("partition")) {
    const auto smallest = std::min_element(cover.rho.begin(), cover.rho.end()) - cover.rho.begin();
    rep.add(certify_profile(*part.cutoff(static_cast<int>(smallest)).profile));
    for (auto& c : certify_partition(part, radii, cfg.alpha_max, grid)) rep.add(std::move(c));
  }
  if (!opt.out_dir.empty()) {
    if (!cfg.outputs.cutoff_csv.empty()) write_cutoff_csv(part, join(opt.out_dir, cfg.outputs.cutoff_csv));
    if (!cfg.outputs.pullback_csv.empty()) write_pullback_csv(part, join(opt.out_dir, cfg.outputs.pullback_csv));
  }

  if (wants("chain")) {
    const IndexCalculus calc(family);
    const int p = calc.p_index(n);
    const int q = calc.q_index(p, m);
    rep.summary["p"] = p;
    rep.summary["q"] = q;
    rep.add(verify_disjoint_supports(part));
    Certificate outer_transfer = verify_transfer(family, part, radii, n, 1, d, 9, cfg.tolerance);
    outer_transfer.name += ".seminorm";
    rep.add(std::move(outer_transfer));
    Certificate inner_transfer = verify_transfer(family, part, radii, family.I(2, p), 3, d * (m + 2), 9, cfg.tolerance);
    inner_transfer.name += ".functional";
    rep.add(std::move(inner_transfer));

    const std::vector<Point> outer_grid =
        sample_level(*domain, q + 1, expanded(cfg.truncation, cover.rho_max), lattice, cfg.check_stride());
    QuadratureOptions qo;
    qo.resolution = cfg.res.quadrature;
    qo.stability = cfg.quadrature_stability;
    for (const auto& name : cfg.test_functions) {
      const TestFunction f = make_test_function(name, d);
      Certificate local = verify_local_integral(f, part, m, qo);
      local.name += "." + name;
      rep.add(std::move(local));
      DominationResult dom = domination_certificate(f, family, part, radii, m, grid, outer_grid, qo, cfg.tolerance);
      dom.seminorm_domination.name += "." + name;
      dom.functional_bound.name += "." + name;
      rep.add(std::move(dom.seminorm_domination));
      rep.add(std::move(dom.functional_bound));
    }
  }
}

}  // namespace

RunResult run(const RunConfig& cfg, const RunOptions& opt) {
  RunResult out;
  out.report.timestamp = utc_timestamp();
  if (!opt.out_dir.empty()) std::filesystem::create_directories(opt.out_dir);
  collect(cfg, opt, out.report);
  const Report& rep = out.report;
  if (rep.count(Verdict::Fail) > 0 || (opt.strict && rep.count(Verdict::Inconclusive) > 0)) out.exit_code = 1;
  out.report.summary["exit_code"] = out.exit_code;
  if (!opt.out_dir.empty()) {
    std::ofstream f(join(opt.out_dir, cfg.outputs.report));
    if (!f) throw ArgumentError("cannot write the report into " + opt.out_dir);
    f << rep.to_json().dump(2) << '\n';
  }
  return out;
}

}  // namespace wcert
