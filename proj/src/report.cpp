#include "bkit/report.hpp"

namespace bkit {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify_defect(double defect, const Thresholds& thresholds) {
  if (defect < thresholds.pass_below) return Verdict::pass;
  if (defect > thresholds.fail_above) return Verdict::fail;
  return Verdict::inconclusive;
}

nlohmann::json to_json(const ReportRecord& record) {
  return nlohmann::json{{"theorem", record.theorem},
                        {"params", record.params},
                        {"defect", record.defect},
                        {"verdict", to_string(record.verdict)},
                        {"runtime_ms", record.runtime_ms}};
}

nlohmann::json report_to_json(std::uint64_t seed, const std::vector<ReportRecord>& records) {
  nlohmann::json out;
  out["seed"] = seed;
  out["records"] = nlohmann::json::array();
  bool all_pass = true;
  for (const ReportRecord& r : records) {
    out["records"].push_back(to_json(r));
    all_pass = all_pass && r.verdict == Verdict::pass;
  }
  out["overall"] = all_pass ? "pass" : "fail";
  return out;
}

}  // namespace bkit
