#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bkit/operators.hpp"

namespace bkit {

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

struct Thresholds {
  double pass_below = kDefectPassBelow;
  double fail_above = kDefectFailAbove;
};

// Defect classification: below the pass band is a certification, above the
// fail band is a refutation, in between stays inconclusive.
Verdict classify_defect(double defect, const Thresholds& thresholds = {});

struct ReportRecord {
  std::string theorem;
  nlohmann::json params;
  double defect = 0.0;
  Verdict verdict = Verdict::inconclusive;
  double runtime_ms = 0.0;
};

nlohmann::json to_json(const ReportRecord& record);

// Full report: seed + records + overall verdict (pass iff every record passes).
nlohmann::json report_to_json(std::uint64_t seed, const std::vector<ReportRecord>& records);

}  // namespace bkit
