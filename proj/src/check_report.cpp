#include "conformable/check_report.hpp"

#include <charconv>

namespace conformable {

CheckReport make_report(std::string check_id, double residual, double tolerance) {
  CheckReport report;
  report.check_id = std::move(check_id);
  report.residual = residual;
  report.tolerance = tolerance;
  report.passed = residual <= tolerance;
  report.status = report.passed ? "pass" : "fail";
  return report;
}

std::string format_param(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

}  // namespace conformable
