#include "wcert/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

namespace wcert {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::NotCertified: return "not-certified";
  }
  return "?";
}

void Certificate::fail_at(const Point& p, std::string note) {
  verdict = Verdict::Fail;
  if (!witness) {
    witness = p;
    witness_note = std::move(note);
  }
}

namespace {

// JSON has no infinities; encode them as strings.
json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

json point_json(const Point& p) {
  json a = json::array();
  for (int i = 0; i < p.dim(); ++i) a.push_back(number(p[i]));
  return a;
}

json to_json(const Certificate& c) {
  json j;
  j["name"] = c.name;
  j["anchor"] = c.anchor;
  j["verdict"] = to_string(c.verdict);
  j["measured"] = number(c.measured);
  j["bound"] = number(c.bound);
  j["slack"] = number(c.slack());
  j["constants"] = c.constants;
  j["resolutions"] = c.resolutions;
  j["details"] = c.details;
  if (c.witness) {
    j["witness"] = {{"point", point_json(*c.witness)}, {"note", c.witness_note}};
  } else {
    j["witness"] = nullptr;
  }
  j["notes"] = c.notes;
  return j;
}

int Report::count(Verdict v) const {
  int n = 0;
  for (const auto& c : certificates) n += c.verdict == v;
  return n;
}

const Certificate* Report::find(const std::string& name) const {
  for (const auto& c : certificates)
    if (c.name == name) return &c;
  return nullptr;
}

json Report::to_json() const {
  json j;
  j["schema_version"] = schema_version;
  j["timestamp"] = timestamp;
  j["config"] = config;
  json s = summary;
  s["pass"] = count(Verdict::Pass);
  s["fail"] = count(Verdict::Fail);
  s["inconclusive"] = count(Verdict::Inconclusive);
  s["not_certified"] = count(Verdict::NotCertified);
  j["summary"] = s;
  json cs = json::array();
  for (const auto& c : certificates) cs.push_back(wcert::to_json(c));
  j["certificates"] = cs;
  return j;
}

std::string Report::canonical_dump() const {
  json j = to_json();
  j.erase("timestamp");
  return j.dump(2);
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace wcert
