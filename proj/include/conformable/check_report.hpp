#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace conformable {

/// Outcome of one named verification.
///
/// `passed` is always `residual <= tolerance`; `status` refines it for
/// informational checks ("condition_not_met") and `label` marks heuristic ones.
struct CheckReport {
  std::string check_id;
  std::map<std::string, std::string> params;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double wall_time = 0.0;
  std::uint64_t seed = 0;
  std::string status;
  std::string label;
};

CheckReport make_report(std::string check_id, double residual, double tolerance);

/// Shortest decimal form that round-trips to the same double.
std::string format_param(double value);

}  // namespace conformable
