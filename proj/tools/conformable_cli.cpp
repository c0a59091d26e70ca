// Command-line driver: `run` executes a verification suite, `sweep` a
// parameter grid over the drift-diffusion model.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "conformable/errors.hpp"
#include "conformable/harness.hpp"

namespace {

constexpr int kUsageError = 2;

int do_run(conformable::RunConfig config, bool quiet) {
  const auto reports = conformable::run_suite(config);
  conformable::write_reports(reports, config.out, config.timing);
  int failed = 0;
  for (const auto& r : reports) {
    if (!r.passed) ++failed;
    if (!quiet || !r.passed) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.check_id << "  residual=" << conformable::format_param(r.residual)
                << " tol=" << conformable::format_param(r.tolerance);
      if (r.status != "pass" && r.status != "fail") std::cout << " [" << r.status << "]";
      if (!r.label.empty()) std::cout << " {" << r.label << "}";
      std::cout << '\n';
    }
  }
  std::cout << reports.size() - failed << "/" << reports.size() << " checks passed; reports in " << config.out.string()
            << '\n';
  return conformable::exit_code_for(reports);
}

int do_sweep(const conformable::RunConfig& config) {
  const auto rows = conformable::run_sweep(config);
  std::error_code ec;
  std::filesystem::create_directories(config.out, ec);
  if (ec) throw conformable::ConfigError("cannot create output directory '" + config.out.string() + "'");
  const auto path = config.out / "sweep.csv";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw conformable::ConfigError("cannot write '" + path.string() + "'");
  out << conformable::sweep_to_csv(rows);
  std::cout << rows.size() << " sweep rows written to " << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformable semigroup verification harness"};
  app.require_subcommand(1);

  std::string suite;
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "Run a verification suite");
  run->add_option("--suite", suite, "calculus | spaces | clock | semigroup | drift-diffusion | transport | dynamics | all")
      ->required();
  run->add_option("--config", config_path, "INI configuration file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides run.out)");
  run->add_option("--seed", seed, "Random seed (overrides run.seed)")->check(CLI::NonNegativeNumber);
  run->add_flag("--quiet", quiet, "Print failing checks only");

  std::string sweep_config;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over the drift-diffusion model");
  sweep->add_option("--config", sweep_config, "INI configuration file")->required();
  sweep->add_option("--out", sweep_out, "Output directory (overrides run.out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*run) {
      conformable::RunConfig config = conformable::parse_config_file(config_path);
      config.suite = suite;
      const auto& names = conformable::suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw conformable::ConfigError("unknown suite '" + suite + "'");
      }
      if (!out_dir.empty()) config.out = out_dir;
      if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
      return do_run(std::move(config), quiet);
    }
    conformable::RunConfig config = conformable::parse_config_file(sweep_config);
    if (!sweep_out.empty()) config.out = sweep_out;
    return do_sweep(config);
  } catch (const conformable::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
}
