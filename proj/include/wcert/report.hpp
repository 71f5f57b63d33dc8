#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wcert/geometry.hpp"

namespace wcert {

using json = nlohmann::ordered_json;

enum class Verdict { Pass, Fail, Inconclusive, NotCertified };

std::string to_string(Verdict v);

/// One checked inequality: what was measured, the bound it is compared to,
/// the constants entering the bound and the sampling that produced it.
struct Certificate {
  std::string name;
  std::string anchor;  // the inequality in formula form
  Verdict verdict = Verdict::Pass;
  double measured = 0.0;
  double bound = 0.0;
  json constants = json::object();
  json resolutions = json::object();
  json details = json::object();
  std::optional<Point> witness;
  std::string witness_note;
  std::vector<std::string> notes;

  bool passed() const { return verdict == Verdict::Pass; }
  bool failed() const { return verdict == Verdict::Fail; }
  /// bound - measured
  double slack() const { return bound - measured; }
  /// Records a counterexample and sets the verdict to fail.
  void fail_at(const Point& p, std::string note);
};

json point_json(const Point& p);
json to_json(const Certificate& c);

struct Report {
  std::string schema_version = "1.0";
  std::string timestamp;
  json config = json::object();
  json summary = json::object();
  std::vector<Certificate> certificates;

  void add(Certificate c) { certificates.push_back(std::move(c)); }
  int count(Verdict v) const;
  const Certificate* find(const std::string& name) const;
  json to_json() const;
  /// The report without the timestamp, for determinism comparisons.
  std::string canonical_dump() const;
};

std::string utc_timestamp();

}  // namespace wcert
