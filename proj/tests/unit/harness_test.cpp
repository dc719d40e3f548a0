#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "tec/config.hpp"
#include "tec/errors.hpp"
#include "tec/report.hpp"
#include "tec/runner.hpp"

using namespace tec;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is, "test.ini");
}

std::string config_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

Report sample_report() {
  Report r;
  r.suite = "chernoff_sweep";
  r.config = {{"run.seed", "3"}, {"graph.kind", "complete"}};
  r.seed = 3;
  r.checks = {make_check("a.first", 0.25, 1.0), make_check("b.second", 2.0, 1.0), make_skip("c.skip", "capacity: big")};
  r.checks.push_back(make_check("d.inf", std::numeric_limits<double>::infinity(), 1.0));
  r.tail_table = {{50, 0.5, 0.01, 2.5, true, 0}, {100, 0.0, 0.0, 1e-30, false, 3}};
  return r;
}

}  // namespace

TEST(Config, DefaultsAndOverrides) {
  const ExperimentConfig cfg = parse(
      "[run]\nsuite = expander\nseed = 42\n"
      "[graph]\nkind = cycle\nn = 7\n"
      "[assignment]\ndims = 2, 3\nradius = 0.5\n"
      "[poly]\ncoefficients = 1 0 2\npower = 2\n"
      "[expander]\nt_values = 0.1 0.2\n");
  EXPECT_EQ(cfg.suite, Suite::expander);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.graph.kind, "cycle");
  EXPECT_EQ(cfg.graph.n, 7u);
  EXPECT_EQ(cfg.assignment.dims, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(cfg.poly.coefficients, (std::vector<double>{1, 0, 2}));
  EXPECT_EQ(cfg.expander.t_values, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(cfg.quadrature.node_count, 256u);
  EXPECT_EQ(build_graph(cfg.graph).n(), 7u);
}

TEST(Config, ThetaGrid) {
  ExperimentConfig cfg = parse("[chernoff]\ntheta_min = 10\ntheta_max = 40\ntheta_count = 4\n");
  EXPECT_EQ(cfg.theta_grid(), (std::vector<double>{10, 20, 30, 40}));
  cfg = parse("[chernoff]\nthetas = 5, 7\n");
  EXPECT_EQ(cfg.theta_grid(), (std::vector<double>{5, 7}));
  EXPECT_EQ(cfg.echo().at("chernoff.thetas"), "5 7");
}

TEST(Config, SigmaGridIsGeometric) {
  DominationSpec d;
  d.sigma_min = 1;
  d.sigma_max = 8;
  d.sigma_count = 4;
  const auto g = d.sigma_grid();
  ASSERT_EQ(g.size(), 4u);
  EXPECT_DOUBLE_EQ(g[0], 1);
  EXPECT_NEAR(g[1], 2, 1e-12);
  EXPECT_DOUBLE_EQ(g[3], 8);
}

TEST(Config, ErrorsNameFieldAndValue) {
  EXPECT_NE(config_error("[run]\nsuite = bogus\n").find("test.ini: run.suite: 'bogus'"), std::string::npos);
  EXPECT_NE(config_error("[graph]\nn = -3\n").find("graph.n"), std::string::npos);
  EXPECT_NE(config_error("[graph]\ncolour = red\n").find("graph.colour: unknown key"), std::string::npos);
  EXPECT_NE(config_error("[run]\nworkers = 0\n").find("run.workers"), std::string::npos);
  EXPECT_NE(config_error("[assignment]\ndims = 8 16\n").find("assignment.dims"), std::string::npos);
  EXPECT_NE(config_error("[graph]\nkind = file\npath = /nonexistent/g.txt\n").find("file not found"),
            std::string::npos);
  EXPECT_NE(config_error("[poly]\npower = 0.5\n").find("poly"), std::string::npos);
}

TEST(Config, SyntaxErrorsCarryLine) {
  const std::string msg = config_error("[run]\nseed = 1\n[broken\n");
  EXPECT_NE(msg.find("test.ini:3"), std::string::npos) << msg;
}

TEST(Config, RelativePathsResolveAgainstTheConfigFile) {
  const auto dir = std::filesystem::temp_directory_path() / "tec_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream g(dir / "tri.txt");
    g << "3 2\n0 1 1\n1 2 1\n0 2 1\n";
    std::ofstream c(dir / "exp.ini");
    c << "[run]\nsuite = expander\n[graph]\nkind = file\npath = tri.txt\n";
  }
  const ExperimentConfig cfg = load_config(dir / "exp.ini");
  EXPECT_EQ(build_graph(cfg.graph).n(), 3u);
  EXPECT_THROW(load_config(dir / "missing.ini"), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(Report, ChecksAndSkips) {
  const auto c = make_check("x", 1.0, 3.0);
  EXPECT_TRUE(c.pass);
  EXPECT_DOUBLE_EQ(c.margin, 2.0);
  EXPECT_FALSE(make_check("y", 3.0, 1.0).pass);
  EXPECT_FALSE(make_check("z", std::nan(""), 1.0).pass);
  const auto s = make_skip("w", "why");
  EXPECT_TRUE(s.pass);
  EXPECT_TRUE(s.skipped);
  EXPECT_FALSE(sample_report().all_pass());
}

TEST(Report, JsonRoundTrip) {
  const Report r = sample_report();
  const std::string text = to_json(r);
  EXPECT_EQ(report_from_json(text), r);
  EXPECT_EQ(to_json(report_from_json(text)), text);
  EXPECT_NE(text.find("\"schema\": \"tec-report/1\""), std::string::npos);
  EXPECT_NE(text.find("\"inf\""), std::string::npos);
}

TEST(Report, CsvRoundTripAndHeader) {
  EXPECT_EQ(tail_to_csv({}), std::string(kCsvHeader) + "\n");
  const Report r = sample_report();
  const std::string csv = tail_to_csv(r.tail_table);
  EXPECT_EQ(tail_from_csv(csv), r.tail_table);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_THROW(tail_from_csv("theta\n1\n"), ConfigError);
}

TEST(Report, EmitWritesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "tec_emit_test";
  std::filesystem::create_directories(dir);
  const Report r = sample_report();
  emit(r, ReportFormat::json, dir / "r.json");
  emit(r, ReportFormat::csv, dir / "r.csv");
  std::ifstream j(dir / "r.json"), c(dir / "r.csv");
  std::stringstream js, cs;
  js << j.rdbuf();
  cs << c.rdbuf();
  EXPECT_EQ(report_from_json(js.str()), r);
  EXPECT_EQ(tail_from_csv(cs.str()), r.tail_table);
  EXPECT_THROW(emit(r, ReportFormat::json, dir / "no" / "such" / "dir.json"), Error);
  std::filesystem::remove_all(dir);
}

TEST(Runner, TensorPropsDefaultsPass) {
  ExperimentConfig cfg;
  cfg.tensor_props.algebra_trials = 50;
  const Report r = run(cfg, 1);
  EXPECT_TRUE(r.all_pass());
  EXPECT_TRUE(std::is_sorted(r.checks.begin(), r.checks.end(),
                             [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; }));
  EXPECT_EQ(r.config.count("run.workers"), 0u);
}

TEST(Runner, ChernoffSweepTableAndMonotoneBound) {
  ExperimentConfig cfg = parse(
      "[run]\nsuite = chernoff_sweep\n[assignment]\ndims = 2\n"
      "[chernoff]\nkappa = 4\ntheta_min = 20\ntheta_max = 200\ntheta_count = 10\nwalks = 2000\n");
  const Report r = run(cfg, 1);
  ASSERT_EQ(r.tail_table.size(), 10u);
  EXPECT_TRUE(r.all_pass());
  for (std::size_t i = 1; i < r.tail_table.size(); ++i)
    EXPECT_LE(r.tail_table[i].bound, r.tail_table[i - 1].bound * (1 + 1e-9));
}

TEST(Runner, CapacityProblemsBecomeSkippedChecks) {
  ExperimentConfig cfg = parse("[run]\nsuite = expander\n[graph]\nkind = complete\nn = 300\n"
                               "[assignment]\ndims = 4\n[expander]\nmc_walks = 10\nstationarity_walks = 10\n");
  const Report r = run(cfg, 1);
  bool saw_capacity = false;
  for (const auto& c : r.checks)
    if (c.skipped && c.reason.rfind("capacity:", 0) == 0) saw_capacity = true;
  EXPECT_TRUE(saw_capacity);
}

TEST(Runner, DeterministicAcrossWorkers) {
  for (const char* suite : {"tensor_props", "inequalities", "expander", "chernoff_sweep"}) {
    const ExperimentConfig cfg = parse(std::string("[run]\nsuite = ") + suite +
                                       "\n[tensor_props]\nalgebra_trials = 20\ncompound_trials = 4\n"
                                       "[inequalities]\ninterpolation_trials = 3\ndiscrete_trials = 40\n"
                                       "kyfan_sum_trials = 20\nholder_trials = 20\n"
                                       "[expander]\nmc_walks = 500\nstationarity_walks = 500\n"
                                       "[chernoff]\nwalks = 500\ntheta_count = 4\n");
    const std::string one = to_json(run(cfg, 1));
    EXPECT_EQ(to_json(run(cfg, 3)), one) << suite;
    EXPECT_EQ(to_json(run(cfg, 1)), one) << suite;
  }
}

TEST(Runner, AgreementSurvivesUnderflow) {
  // Both closed forms underflow to 0 here; the comparison must still pass.
  const ExperimentConfig cfg = parse("[run]\nsuite = chernoff_sweep\n[chernoff]\nthetas = 4000\nwalks = 200\n");
  const Report r = run(cfg, 1);
  ASSERT_EQ(r.tail_table.size(), 1u);
  EXPECT_EQ(r.tail_table[0].bound, 0.0);
  for (const auto& c : r.checks)
    if (c.name.rfind("agreement.", 0) == 0) EXPECT_TRUE(c.pass) << c.lhs;
}
