// Experiment runner: tec_cli run --config <ini> --out <path> [--format json|csv] [--workers N] [--seed S]
#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>

#include "tec/config.hpp"
#include "tec/errors.hpp"
#include "tec/runner.hpp"

namespace {

constexpr int kAllPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsageError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor inequality verification runner"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  tec::ReportFormat format = tec::ReportFormat::json;
  std::optional<std::size_t> workers;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "Run the suite named in a config file");
  run->add_option("--config", config_path, "INI config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_path, "Report destination")->required();
  const std::map<std::string, tec::ReportFormat> formats{{"json", tec::ReportFormat::json},
                                                         {"csv", tec::ReportFormat::csv}};
  run->add_option("--format", format, "json (full report) or csv (tail table)")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  run->add_option("--workers", workers, "Worker threads (overrides run.workers)")->check(CLI::Range(1, 256));
  run->add_option("--seed", seed, "Master seed (overrides run.seed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kAllPass : kUsageError;
  }

  tec::ExperimentConfig cfg;
  try {
    cfg = tec::load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (workers) cfg.workers = *workers;
    tec::validate(cfg);
  } catch (const tec::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    const tec::Report report = tec::run(cfg, cfg.workers);
    tec::emit(report, format, out_path);
    std::size_t failed = 0, skipped = 0;
    for (const auto& c : report.checks) {
      if (c.skipped) ++skipped;
      else if (!c.pass) {
        ++failed;
        std::cerr << "FAIL " << c.name << ": lhs=" << c.lhs << " rhs=" << c.rhs
                  << (c.reason.empty() ? "" : " (" + c.reason + ")") << '\n';
      }
    }
    std::cout << report.suite << ": " << report.checks.size() << " checks, " << failed << " failed, " << skipped
              << " skipped -> " << out_path << '\n';
    return failed == 0 ? kAllPass : kCheckFailure;
  } catch (const tec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const tec::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailure;
  }
}
