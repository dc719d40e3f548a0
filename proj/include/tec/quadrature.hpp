#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tec {

/// beta_0(t) = pi / (2 (cosh(pi t) + 1)), a probability density on R.
double beta0_density(double t);

/// Hirschman kernel beta_theta(t) = sin(pi theta) / (2 theta (cosh(pi t) + cos(pi theta)))
/// for theta in (0, 1]. At theta = 1 the kernel degenerates to a point mass
/// at t = 0: returns 0 for t != 0 and +inf at t = 0.
double beta_density(double theta, double t);

/// Closed-form antiderivative of beta_0: (1/2) tanh(pi t / 2).
double beta0_antiderivative(double t);
/// Mass of beta_0 on [-T, T], i.e. tanh(pi T / 2).
double beta0_mass(double truncation);
/// Mass of beta_0 outside [-T, T], 1 - tanh(pi T / 2), without cancellation.
double beta0_tail(double truncation);

/// Truncated quadrature on [-T, T].
struct QuadratureSpec {
  double truncation = 6.0;
  std::size_t node_count = 256;
  /// Relative cap on (truncation bound + quadrature error) before the
  /// interpolation evaluators raise QuadratureError.
  double tolerance = 1e-3;

  void validate() const;
};

/// Nodes and weights of a fixed rule on [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  double integrate(const std::function<double(double)>& f) const;
};

/// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

/// Gauss-Legendre rule on [-T, T] for a spec.
QuadratureRule make_rule(const QuadratureSpec& spec);

}  // namespace tec
