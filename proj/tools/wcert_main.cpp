#include <chrono>
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "wcert/errors.hpp"
#include "wcert/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Certify covers, partitions of unity and weighted seminorm bounds"};
  std::string config_path, out_dir = "out";
  bool strict = false;
  std::vector<std::string> suite;
  long seed = 0;
  app.add_option("--config", config_path, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
  app.add_flag("--strict", strict, "treat inconclusive verdicts as failures");
  app.add_option("--out", out_dir, "directory for the report and CSV files");
  app.add_option("--suite", suite, "certificate groups to run: weights, radii, cover, partition, chain")
      ->delimiter(',');
  app.add_option("--seed", seed, "reserved; runs are deterministic");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const wcert::RunConfig cfg = wcert::load_config(config_path);
    wcert::RunOptions opt;
    opt.out_dir = out_dir;
    opt.strict = strict;
    if (!suite.empty()) opt.suite = suite;
    const auto t0 = std::chrono::steady_clock::now();
    const wcert::RunResult res = wcert::run(cfg, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& c : res.report.certificates)
      std::printf("%-14s %-48s measured=%-12.6g bound=%.6g\n", wcert::to_string(c.verdict).c_str(), c.name.c_str(),
                  c.measured, c.bound);
    std::printf("%d pass, %d fail, %d inconclusive, %d not-certified in %.2f s; report in %s\n",
                res.report.count(wcert::Verdict::Pass), res.report.count(wcert::Verdict::Fail),
                res.report.count(wcert::Verdict::Inconclusive), res.report.count(wcert::Verdict::NotCertified), secs,
                out_dir.c_str());
    return res.exit_code;
  } catch (const wcert::OrderError& e) {
    std::cerr << "order error: " << e.what() << '\n';
    return 2;
  } catch (const wcert::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const wcert::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
