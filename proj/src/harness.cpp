#include "conformable/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <future>
#include <json.hpp>
#include <sstream>
#include <thread>
#include <tuple>

#include "conformable/drift_diffusion.hpp"
#include "conformable/errors.hpp"
#include "conformable/random.hpp"
#include "conformable/semigroup.hpp"

namespace conformable {

namespace {

nlohmann::ordered_json to_json(const CheckReport& r, bool timing) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  nlohmann::ordered_json j;
  j["check_id"] = r.check_id;
  j["params"] = params;
  j["residual"] = std::isfinite(r.residual) ? nlohmann::ordered_json(r.residual) : nlohmann::ordered_json("inf");
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["wall_time"] = timing ? r.wall_time : 0.0;
  j["seed"] = r.seed;
  j["status"] = r.status;
  j["label"] = r.label;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

SweepRow run_cell(SweepRow row, std::uint64_t seed) {
  const DriftDiffusionParams p(row.a, row.b, row.c, Order(row.delta));
  const int sizes[] = {row.n};
  row.conjugacy_residual = conjugacy_residual(p, sizes).front().second;

  const GridPair grid(row.n, p.delta);
  const ConformableSemigroup cs(build_conformable_operator(p, grid, RightBoundary::kDirichlet), p.delta);
  SeededRng rng(seed);
  const Vector x = random_vector(grid.n(), rng);
  double law = 0.0;
  for (int k = 0; k < 5; ++k) {
    const double r = rng.uniform(0.0, 0.5);
    const double q = rng.uniform(0.0, 0.5);
    law = std::max(law, delta_law_residual(cs, r, q, x) / cs.generator().norm(x));
  }
  row.law_residual = law;
  row.correspondence_residual = mild_solution_correspondence(p, row.n).gap_at_one;
  return row;
}

}  // namespace

std::string reports_to_json(const std::vector<CheckReport>& reports, bool timing) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r, timing));
  return arr.dump(2) + "\n";
}

void write_reports(const std::vector<CheckReport>& reports, const std::filesystem::path& dir, bool timing) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  write_file(dir / "report.json", reports_to_json(reports, timing));

  std::ostringstream csv;
  csv << "check_id,params,residual,tolerance,passed,status,label\n";
  for (const auto& r : reports) {
    std::string params;
    for (const auto& [k, v] : r.params) params += (params.empty() ? "" : ";") + k + "=" + v;
    csv << csv_field(r.check_id) << ',' << csv_field(params) << ',' << format_param(r.residual) << ','
        << format_param(r.tolerance) << ',' << (r.passed ? "true" : "false") << ',' << csv_field(r.status) << ','
        << csv_field(r.label) << '\n';
  }
  write_file(dir / "summary.csv", csv.str());
}

std::vector<SweepRow> run_sweep(const RunConfig& config) {
  const SweepGrid& g = config.sweep;
  if (g.deltas.empty() || g.a.empty() || g.b.empty() || g.c.empty() || g.n.empty()) {
    throw ConfigError("sweep grid is empty");
  }
  std::vector<SweepRow> cells;
  for (double d : g.deltas)
    for (double a : g.a)
      for (double b : g.b)
        for (double c : g.c)
          for (int n : g.n) cells.push_back({d, a, b, c, n, 0.0, 0.0, 0.0});

  // Bounded worker pool; results land in their own slots, so order is fixed.
  std::vector<SweepRow> rows(cells.size());
  const std::size_t workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = run_cell(cells[i], config.seed);
    }));
  }
  for (auto& f : pool) f.get();

  std::sort(rows.begin(), rows.end(), [](const SweepRow& l, const SweepRow& r) {
    return std::tie(l.delta, l.a, l.b, l.c, l.n) < std::tie(r.delta, r.a, r.b, r.c, r.n);
  });
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream csv;
  csv << "delta,a,b,c,n,conjugacy_residual,law_residual,correspondence_residual\n";
  for (const auto& r : rows) {
    csv << format_param(r.delta) << ',' << format_param(r.a) << ',' << format_param(r.b) << ','
        << format_param(r.c) << ',' << r.n << ',' << format_param(r.conjugacy_residual) << ','
        << format_param(r.law_residual) << ',' << format_param(r.correspondence_residual) << '\n';
  }
  return csv.str();
}

int exit_code_for(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; }) ? 0 : 1;
}

}  // namespace conformable
