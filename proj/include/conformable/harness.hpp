#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "conformable/check_report.hpp"

namespace conformable {

struct Tolerances {
  double isometry = 1e-10;
  double unitarity = 1e-10;
  double fundamental = 1e-8;
  double limit = 1e-6;
  double clock = 1e-13;
  double law = 1e-11;
  double generator = 1e-6;
  double ode = 1e-6;
  double dissipativity = 1e-12;
  double resolvent = 1e-10;
  double contraction = 1e-10;
  double continuity = 0.1;
  double conjugacy_order = 1.5;
  double transfer = 1e-14;
  double transport = 1e-12;
  double pde = 1e-6;
  double analyticity = 1e-8;
  double gram = 1e-10;
  double decay = 1e-12;
  double xinf = 1e-12;
  double periodic = 1e-9;
  double correspondence = 5.0;
};

struct SweepGrid {
  std::vector<double> deltas;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<int> n;
};

/// Everything a run or sweep reads from its configuration file.
struct RunConfig {
  std::string suite = "all";
  std::uint64_t seed = 20240601;
  std::filesystem::path out = "out";
  bool timing = false;

  std::vector<double> deltas{0.3, 0.5, 0.9};
  std::vector<double> semigroup_deltas{0.3, 0.5, 0.7, 1.0};
  double a = 1.0;
  double b = 1.0;
  double c = 0.4;
  double delta = 0.5;
  std::vector<double> alphas{0.3, 0.5, 1.0};
  std::string weight = "exp_decay";

  std::vector<int> n_list{64, 128, 256};
  int operator_n = 128;
  int eigen_n = 256;
  int correspondence_n = 64;

  Tolerances tol;
  SweepGrid sweep{{0.3, 0.5, 0.9}, {1.0}, {1.0}, {0.4}, {64, 128}};
};

/// Suites accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Parses an INI file (sections [run], [model], [grid], [tolerances],
/// [sweep]). Unknown sections or keys, malformed values, nonpositive
/// tolerances and grid sizes below 16 raise ConfigError.
RunConfig parse_config_file(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text);

/// Runs one suite (or "all"). Check ids are unique within the result.
std::vector<CheckReport> run_suite(const RunConfig& config);

/// report.json (array of CheckReport) and summary.csv in `dir`.
void write_reports(const std::vector<CheckReport>& reports, const std::filesystem::path& dir, bool timing);
std::string reports_to_json(const std::vector<CheckReport>& reports, bool timing);

struct SweepRow {
  double delta = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  int n = 0;
  double conjugacy_residual = 0.0;
  double law_residual = 0.0;
  double correspondence_residual = 0.0;
};

/// Cartesian product δ × a × b × c × n, cells evaluated concurrently, rows
/// sorted lexicographically by (δ, a, b, c, n). Empty grid raises ConfigError.
std::vector<SweepRow> run_sweep(const RunConfig& config);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// 0 when every report passed, 1 otherwise.
int exit_code_for(const std::vector<CheckReport>& reports);

}  // namespace conformable
