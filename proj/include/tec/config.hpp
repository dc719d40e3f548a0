#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tec/chernoff.hpp"
#include "tec/quadrature.hpp"

namespace tec {

enum class Suite { tensor_props, inequalities, expander, chernoff_sweep };

const char* to_string(Suite s);

struct GraphSpec {
  std::string kind = "complete";  // complete | cycle | hypercube | random | file
  std::size_t n = 4;              // complete, cycle, random
  std::size_t degree = 3;         // random
  std::size_t dim = 3;            // hypercube
  std::uint64_t seed = 1;         // random
  std::filesystem::path path;     // file
};

struct AssignmentSpec {
  std::string kind = "random";  // random | manifest
  std::vector<std::size_t> dims{2, 2};
  double radius = 1.0;
  std::uint64_t seed = 7;
  bool real = false;
  std::filesystem::path manifest;
};

struct TensorPropsSpec {
  std::size_t algebra_trials = 200;
  std::size_t compound_trials = 20;
  std::size_t lie_trotter_pairs = 5;
};

struct InequalitiesSpec {
  std::size_t interpolation_trials = 20;
  std::size_t discrete_trials = 400;
  std::size_t kyfan_sum_trials = 200;
  std::size_t holder_trials = 200;
};

struct ExpanderSpec {
  std::vector<double> t_values{0.02, 0.05, 0.1};
  double a = 1.0;
  double b = 0.5;
  std::size_t kappa = 4;
  std::size_t test_vectors = 100;
  std::size_t mc_walks = 20000;
  std::size_t stationarity_walks = 20000;
};

struct SweepSpec {
  std::size_t kappa = 8;
  std::size_t k = 1;
  std::vector<double> thetas;  // explicit list, or built from the range below
  double theta_min = 50;
  double theta_max = 500;
  std::size_t theta_count = 10;
  std::size_t walks = 20000;
};

struct DominationSpec {
  double window = 6.0;
  double sigma_min = 0.25;
  double sigma_max = 4.0;
  std::size_t sigma_count = 64;

  /// Geometric grid from sigma_min to sigma_max.
  std::vector<double> sigma_grid() const;
};

struct ExperimentConfig {
  Suite suite = Suite::tensor_props;
  std::uint64_t seed = 1;
  std::size_t workers = 1;

  GraphSpec graph;
  AssignmentSpec assignment;
  PolynomialSpec poly;
  QuadratureSpec quadrature;
  DominationSpec domination;
  TensorPropsSpec tensor_props;
  InequalitiesSpec inequalities;
  ExpanderSpec expander;
  SweepSpec chernoff;

  /// Threshold grid of the sweep (explicit list or linear range).
  std::vector<double> theta_grid() const;

  /// Flat "section.key" -> canonical value, for the report echo. Worker
  /// count is omitted: it must not change the report.
  std::map<std::string, std::string> echo() const;
};

/// Parses the INI grammar documented in the README. Relative paths resolve
/// against `base_dir`. Throws ConfigError with file and field on any problem.
ExperimentConfig parse_config(std::istream& is, const std::string& source_name,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

void validate(const ExperimentConfig& cfg);

RegularGraph build_graph(const GraphSpec& spec);
VertexTensorAssignment build_assignment(const ExperimentConfig& cfg);

}  // namespace tec
