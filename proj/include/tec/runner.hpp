#pragma once

#include <cstddef>
#include <string>

#include "tec/config.hpp"
#include "tec/inequalities.hpp"
#include "tec/report.hpp"
#include "tec/rng.hpp"

namespace tec {

/// Runs the configured suite. Output depends only on the config (seed
/// included), never on `workers`.
Report run(const ExperimentConfig& cfg, std::size_t workers);

/// Randomized instance whose averaged-majorization premise holds by
/// construction: lambda(C) is a doubly stochastic image of the averaged
/// spectrum, minus a nonnegative slack in the weak modes.
struct DiscreteInstance {
  HermitianTensor c;
  DiscreteMeasure measure;
  RealFunction f;
  std::string f_name;
  std::size_t k = 1;
};

DiscreteInstance sample_discrete_instance(Rng& rng, AverageMode mode);

/// Pearson statistic of vertex counts against the uniform distribution.
double chi_square_uniform(const std::vector<std::size_t>& counts);
/// Upper quantile of chi-square with `df` degrees of freedom at standard
/// normal score z (Wilson-Hilferty).
double chi_square_quantile(std::size_t df, double z = 4.75);

}  // namespace tec
